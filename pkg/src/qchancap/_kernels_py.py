"""Pure-numpy implementations of the hot kernels.

This is the fallback lane selected when the compiled extension is missing;
both lanes expose identical signatures and semantics (see backends.py).
"""
from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .linalg import ENTROPY_CUTOFF, PSD_FLOOR

NAME = "python"


def kraus_apply(kraus: np.ndarray, m: np.ndarray) -> np.ndarray:
    """sum_k K[k] @ m @ K[k]^dag for a stacked (K, dout, din) Kraus array."""
    t = kraus @ m
    return np.einsum("kij,klj->il", t, kraus.conj())


def hermitian_eigenvalues(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, ascending."""
    return np.linalg.eigvalsh(m)


def _entropy_from_eigenvalues(values: np.ndarray) -> float:
    low = float(values.min())
    if low < PSD_FLOOR:
        raise ValidationError(f"matrix is not PSD: eigenvalue {low:.3e} below {PSD_FLOOR:.1e}")
    positive = values[values > ENTROPY_CUTOFF]
    if positive.size == 0:
        return 0.0
    return float(-(positive * np.log2(positive)).sum())


def entropy_bits(m: np.ndarray) -> float:
    """Von Neumann entropy in bits of a Hermitian PSD matrix."""
    return _entropy_from_eigenvalues(np.linalg.eigvalsh(m))


def coherent_info_values(kraus: np.ndarray, rho: np.ndarray) -> tuple[float, float]:
    """(output entropy, joint output/reference entropy) for one channel use.

    The joint state is built by purifying ``rho`` in its eigenbasis and acting
    with the channel on the first factor.
    """
    s_out = entropy_bits(kraus_apply(kraus, rho))

    p, u = np.linalg.eigh(rho)
    low = float(p.min())
    if low < PSD_FLOOR:
        raise ValidationError(f"matrix is not PSD: eigenvalue {low:.3e} below {PSD_FLOOR:.1e}")
    p = np.where(p < 0.0, 0.0, p)
    # Purification amplitude matrix V[a, b] = sum_i sqrt(p_i) u[a, i] u[b, i].
    v = (u * np.sqrt(p)) @ u.T
    w = (kraus @ v).reshape(kraus.shape[0], -1)
    joint = np.einsum("ka,kb->ab", w, w.conj())
    s_joint = entropy_bits(joint)
    return s_out, s_joint
