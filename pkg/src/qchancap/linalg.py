"""Dense complex-matrix kernels: Kronecker products, partial traces and
Hermitian eigendecompositions.

Everything below operates on row-major ``complex128`` numpy arrays.  Matrices
are small by design (joint states up to dimension 4096), so there is no sparse
path and no attempt at structure exploitation.
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatchError, SizeCapError, ValidationError

# Tolerances used across the package.
TAU_HERM = 1e-9     # max-norm Hermiticity tolerance
TAU_RECON = 1e-8    # eigendecomposition reconstruction tolerance
PSD_FLOOR = -1e-10  # eigenvalues above this are clamped to 0, below raise
ENTROPY_CUTOFF = 1e-12  # eigenvalues below this count as exact zeros in logs

_EINSUM_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def as_matrix(values, *, square: bool = False) -> np.ndarray:
    """Coerce to a C-contiguous complex128 2-D array and check finiteness."""
    m = np.ascontiguousarray(values, dtype=np.complex128)
    if m.ndim != 2:
        raise ValidationError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if m.size == 0:
        raise ValidationError("empty matrix")
    if not np.all(np.isfinite(m.view(np.float64))):
        raise ValidationError("matrix entries must be finite (no NaN/Inf)")
    if square and m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    return m


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return m.conj().T


def is_hermitian(m: np.ndarray, tol: float = TAU_HERM) -> bool:
    """Max-norm Hermiticity test."""
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def tensor(*matrices: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more matrices, left to right.

    Entry ``((i*br + k), (j*bc + l))`` of ``tensor(a, b)`` is ``a[i, j] * b[k, l]``.
    """
    if not matrices:
        raise ValidationError("tensor() needs at least one matrix")
    out = as_matrix(matrices[0])
    for m in matrices[1:]:
        out = np.kron(out, as_matrix(m))
    return out


def tensor_power(m: np.ndarray, n: int) -> np.ndarray:
    """n-fold Kronecker power of ``m`` (n >= 1)."""
    if n < 1:
        raise ValidationError("tensor_power requires n >= 1")
    return tensor(*([m] * n))


def partial_trace(m, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Trace out all tensor factors not listed in ``keep``.

    ``m`` must be square with dimension ``prod(dims)``; the result acts on the
    kept factors in their original relative order.  Tracing out every factor
    returns the ordinary trace as a 1x1 matrix.
    """
    m = as_matrix(m, square=True)
    dims = [int(d) for d in dims]
    if any(d < 1 for d in dims):
        raise DimensionMismatchError("factor dimensions must be positive")
    if math.prod(dims) != m.shape[0]:
        raise DimensionMismatchError(
            f"factor dimensions {dims} do not multiply to matrix dimension {m.shape[0]}"
        )
    nf = len(dims)
    if nf > len(_EINSUM_LETTERS):
        raise SizeCapError(f"too many tensor factors ({nf})")
    keep = sorted(set(int(i) for i in keep))
    if any(i < 0 or i >= nf for i in keep):
        raise DimensionMismatchError(f"keep indices {keep} out of range for {nf} factors")

    if not keep:
        return np.array([[np.trace(m)]], dtype=np.complex128)

    t = m.reshape(dims + dims)
    row = list(_EINSUM_LETTERS[:nf])
    col = [row[i].upper() if i in keep else row[i] for i in range(nf)]
    out = "".join(row[i] for i in keep) + "".join(col[i] for i in keep)
    reduced = np.einsum("".join(row) + "".join(col) + "->" + out, t)
    d_keep = math.prod(dims[i] for i in keep)
    return np.ascontiguousarray(reduced.reshape(d_keep, d_keep))


def eig_hermitian(m, tol: float = TAU_HERM) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(values, vectors)`` with real eigenvalues in ascending order and
    eigenvectors as the columns of a unitary matrix, so that
    ``m == vectors @ diag(values) @ vectors.conj().T`` within TAU_RECON.
    """
    m = as_matrix(m, square=True)
    dev = float(np.max(np.abs(m - m.conj().T)))
    if dev > tol:
        raise ValidationError(f"matrix is not Hermitian: max |m - m^dag| = {dev:.3e} > {tol:.1e}")
    values, vectors = np.linalg.eigh(m)
    return values, vectors


def clamp_psd_eigenvalues(values: np.ndarray, floor: float = PSD_FLOOR) -> np.ndarray:
    """Zero out slightly negative eigenvalues of a nominally PSD matrix.

    Values in ``[floor, 0)`` are rounding noise and become 0; anything below
    ``floor`` indicates genuine negativity and raises.
    """
    values = np.asarray(values, dtype=np.float64)
    low = float(values.min()) if values.size else 0.0
    if low < floor:
        raise ValidationError(f"matrix is not PSD: eigenvalue {low:.3e} below {floor:.1e}")
    return np.where(values < 0.0, 0.0, values)
