"""Quantum states: pure states, density matrices, ensembles and purification.

An ensemble is a list of (amplitude vector, probability) pairs.  Member
vectors need not be orthogonal, and need not be individually normalized: only
the global normalization sum_i p_i <psi_i|psi_i> = 1 is required, so the same
density matrix can arise from many distinct ensembles.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import backends
from .errors import DimensionMismatchError, ValidationError
from .linalg import (
    TAU_HERM,
    as_matrix,
    clamp_psd_eigenvalues,
    eig_hermitian,
    partial_trace,
)

NORM_TOL = 1e-10


def _as_vector(values) -> np.ndarray:
    v = np.ascontiguousarray(values, dtype=np.complex128)
    if v.ndim != 1 or v.size == 0:
        raise ValidationError(f"expected a nonempty 1-D amplitude vector, got shape {v.shape}")
    if not np.all(np.isfinite(v.view(np.float64))):
        raise ValidationError("amplitudes must be finite")
    return v


@dataclass(frozen=True)
class PureState:
    """A normalized state vector."""

    amplitudes: np.ndarray

    def __post_init__(self):
        v = _as_vector(self.amplitudes)
        norm_sq = float(np.real(np.vdot(v, v)))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValidationError(f"state not normalized: <psi|psi> = {norm_sq!r}")
        v.flags.writeable = False
        object.__setattr__(self, "amplitudes", v)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def density(self) -> "DensityMatrix":
        return DensityMatrix(self.projector())


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace state."""

    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix, square=True)
        dev = float(np.max(np.abs(m - m.conj().T)))
        if dev > TAU_HERM:
            raise ValidationError(f"density matrix not Hermitian: deviation {dev:.3e}")
        tr = float(np.real(np.trace(m)))
        if abs(tr - 1.0) > NORM_TOL:
            raise ValidationError(f"density matrix trace {tr!r} != 1")
        clamp_psd_eigenvalues(np.linalg.eigvalsh(m))  # raises if genuinely negative
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigensystem(self) -> tuple[np.ndarray, np.ndarray]:
        """Clamped-PSD eigenvalues (ascending) and eigenvector columns."""
        values, vectors = eig_hermitian(self.matrix)
        return clamp_psd_eigenvalues(values), vectors

    def entropy_bits(self) -> float:
        return backends.entropy_bits(self.matrix)


def maximally_mixed(dim: int) -> DensityMatrix:
    """I/d."""
    if dim < 1:
        raise ValidationError("dimension must be positive")
    return DensityMatrix(np.eye(dim, dtype=np.complex128) / dim)


@dataclass(frozen=True)
class Ensemble:
    """States with probabilities; globally normalized, see module docstring."""

    members: tuple[tuple[np.ndarray, float], ...] = field()

    def __post_init__(self):
        if not self.members:
            raise ValidationError("ensemble needs at least one member")
        packed = []
        dim = None
        total = 0.0
        for state, prob in self.members:
            v = _as_vector(state.amplitudes if isinstance(state, PureState) else state)
            p = float(prob)
            if p < 0.0:
                raise ValidationError(f"negative probability {p!r}")
            if dim is None:
                dim = v.size
            elif v.size != dim:
                raise DimensionMismatchError("ensemble members live in different dimensions")
            v.flags.writeable = False
            packed.append((v, p))
            total += p * float(np.real(np.vdot(v, v)))
        if abs(total - 1.0) > NORM_TOL:
            raise ValidationError(
                f"ensemble not normalized: sum_i p_i <psi_i|psi_i> = {total!r}"
            )
        object.__setattr__(self, "members", tuple(packed))

    @property
    def dim(self) -> int:
        return self.members[0][0].size

    def __len__(self) -> int:
        return len(self.members)

    def probabilities(self) -> np.ndarray:
        return np.array([p for _, p in self.members])


def from_ensemble(ensemble: Ensemble) -> DensityMatrix:
    """sum_i p_i |psi_i><psi_i|; the statistics every measurement sees."""
    dim = ensemble.dim
    rho = np.zeros((dim, dim), dtype=np.complex128)
    for v, p in ensemble.members:
        rho += p * np.outer(v, v.conj())
    return DensityMatrix(rho)


def ensemble_inner(a: Ensemble, b: Ensemble) -> complex:
    """Scalar product sum_j sqrt(p_j q_j) <psi_j|phi_j> over matched members."""
    if len(a) != len(b):
        raise DimensionMismatchError(
            f"ensembles have different member counts: {len(a)} vs {len(b)}"
        )
    if a.dim != b.dim:
        raise DimensionMismatchError("ensembles live in different dimensions")
    total = 0.0 + 0.0j
    for (va, pa), (vb, pb) in zip(a.members, b.members):
        total += np.sqrt(pa * pb) * np.vdot(va, vb)
    return complex(total)


def superpose_ensembles(coeffs: Sequence[complex], ensembles: Sequence[Ensemble]) -> Ensemble:
    """Member-wise superposition sum_i c_i |psi_{i,j}> with the shared p_j.

    All inputs must have matched member counts and one shared probability
    list (the equal-probability case).  The result must again be globally
    normalized, which holds in every use here because corresponding members
    of distinct ensembles are orthogonal or the coefficients are trivial.
    """
    if len(coeffs) != len(ensembles):
        raise DimensionMismatchError("need exactly one coefficient per ensemble")
    if not ensembles:
        raise ValidationError("need at least one ensemble")
    first = ensembles[0]
    probs = first.probabilities()
    for e in ensembles[1:]:
        if len(e) != len(first):
            raise DimensionMismatchError("ensembles have different member counts")
        if e.dim != first.dim:
            raise DimensionMismatchError("ensembles live in different dimensions")
        if np.max(np.abs(e.probabilities() - probs)) > 1e-12:
            raise ValidationError("ensembles do not share one probability list")
    members = []
    for j in range(len(first)):
        vec = np.zeros(first.dim, dtype=np.complex128)
        for c, e in zip(coeffs, ensembles):
            vec += complex(c) * e.members[j][0]
        members.append((vec, float(probs[j])))
    return Ensemble(tuple(members))


def purify(rho: DensityMatrix) -> PureState:
    """Entangled state sum_i sqrt(p_i) |phi_i>|phi_i> over the eigensystem of rho.

    Lives on dim^2; tracing out either factor returns ``rho`` itself.
    """
    p, u = rho.eigensystem()
    v = (u * np.sqrt(p)) @ u.T  # V[a, b] = sum_i sqrt(p_i) u[a, i] u[b, i]
    return PureState(v.reshape(-1))


def purification_marginals(state: PureState, dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Both single-factor marginals of a dim*dim pure state, for checking."""
    proj = state.projector()
    return (
        partial_trace(proj, [dim, dim], keep={0}),
        partial_trace(proj, [dim, dim], keep={1}),
    )
