"""Block-coding experiments: random entangled codewords, transmission through
independent channel uses, output-overlap diagnostics, a projection decoder,
and the sampled block-purity identity check.

Randomness is counter-based (see seeding.py): any routine taking a seed is
bit-reproducible, and per-trial streams do not depend on scheduling.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channels import MAX_PRODUCT_DIM, QuantumChannel, apply_product, product_action
from .errors import DimensionMismatchError, SizeCapError, ValidationError
from .info import matrix_purity, purity_identity_rhs
from .seeding import spawned_rng
from .states import DensityMatrix, PureState, maximally_mixed

GRAM_TOL = 1e-10


@dataclass(frozen=True)
class Code:
    """k orthonormal codewords on n copies of a dim-dimensional symbol."""

    n: int
    k: int
    dim: int
    codewords: tuple[PureState, ...]
    seed: int
    kind: str

    def __post_init__(self):
        if self.k != len(self.codewords):
            raise ValidationError("codeword count does not match k")
        block_dim = self.dim**self.n
        if self.k > block_dim:
            raise ValidationError(f"cannot fit {self.k} orthogonal codewords in dimension {block_dim}")
        g = self.gram()
        if float(np.max(np.abs(g - np.eye(self.k)))) > GRAM_TOL:
            raise ValidationError("codewords are not orthonormal")

    def gram(self) -> np.ndarray:
        mat = np.stack([c.amplitudes for c in self.codewords])
        return mat.conj() @ mat.T


def _gram_schmidt(columns: np.ndarray) -> list[np.ndarray]:
    """Orthonormalize columns with a second re-orthogonalization pass."""
    out: list[np.ndarray] = []
    for j in range(columns.shape[1]):
        v = columns[:, j].copy()
        for _ in range(2):
            for u in out:
                v -= u * np.vdot(u, v)
        norm = np.linalg.norm(v)
        if norm < 1e-12:
            raise ValidationError("random draw was rank deficient; use another seed")
        out.append(v / norm)
    return out


def random_code(
    n: int, k: int, dim: int, seed: int, support: Sequence[int] | None = None
) -> Code:
    """Haar-style random orthonormal codewords from seeded complex Gaussians.

    ``support`` optionally restricts the span to the given product-basis
    indices (e.g. a typical-subspace basis); by default the full block space
    is used.
    """
    if n < 1 or k < 1 or dim < 2:
        raise ValidationError("need n >= 1, k >= 1, dim >= 2")
    block_dim = dim**n
    if block_dim > MAX_PRODUCT_DIM:
        raise SizeCapError(f"block dimension {block_dim} exceeds cap {MAX_PRODUCT_DIM}")
    if k > block_dim:
        raise ValidationError(f"cannot fit {k} orthogonal codewords in dimension {block_dim}")
    rows = np.arange(block_dim) if support is None else np.asarray(sorted(support), dtype=np.intp)
    if k > rows.size:
        raise ValidationError(f"cannot fit {k} orthogonal codewords in a {rows.size}-dim subspace")
    rng = spawned_rng(seed)
    g = rng.standard_normal((rows.size, k)) + 1j * rng.standard_normal((rows.size, k))
    full = np.zeros((block_dim, k), dtype=np.complex128)
    full[rows, :] = g
    vecs = _gram_schmidt(full)
    return Code(
        n=n, k=k, dim=dim, codewords=tuple(PureState(v) for v in vecs), seed=seed, kind="random"
    )


def bell_code(n: int) -> Code:
    """The 2^n phase/parity-indexed entangled qubit codewords
    (|b> +/- |b-complement>)/sqrt(2) over n-bit strings b.

    For n = 2 these are exactly the four two-qubit entangled states, ordered
    singlet-like first: (|01>-|10>), (|01>+|10>), (|00>-|11>), (|00>+|11>),
    all over sqrt(2).
    """
    if n < 1:
        raise ValidationError("n must be >= 1")
    block_dim = 2**n
    if block_dim > MAX_PRODUCT_DIM:
        raise SizeCapError(f"block dimension {block_dim} exceeds cap {MAX_PRODUCT_DIM}")
    mask = block_dim - 1
    vecs = []
    for b in range(2 ** (n - 1) - 1, -1, -1):
        partner = b ^ mask
        for sign in (-1.0, 1.0):
            v = np.zeros(block_dim, dtype=np.complex128)
            v[b] = 1.0 / math.sqrt(2.0)
            v[partner] = sign / math.sqrt(2.0)
            vecs.append(v)
    return Code(
        n=n, k=block_dim, dim=2, codewords=tuple(PureState(v) for v in vecs), seed=0, kind="bell"
    )


def basis_code(n: int, k: int, dim: int = 2) -> Code:
    """The first k computational product-basis states (a classical code)."""
    if n < 1 or k < 1 or dim < 2:
        raise ValidationError("need n >= 1, k >= 1, dim >= 2")
    block_dim = dim**n
    if block_dim > MAX_PRODUCT_DIM:
        raise SizeCapError(f"block dimension {block_dim} exceeds cap {MAX_PRODUCT_DIM}")
    if k > block_dim:
        raise ValidationError(f"cannot fit {k} basis codewords in dimension {block_dim}")
    vecs = []
    for i in range(k):
        v = np.zeros(block_dim, dtype=np.complex128)
        v[i] = 1.0
        vecs.append(v)
    return Code(
        n=n, k=k, dim=dim, codewords=tuple(PureState(v) for v in vecs), seed=0, kind="basis"
    )


def transmit(code: Code, channel: QuantumChannel) -> list[DensityMatrix]:
    """Send each codeword through n independent channel uses."""
    if channel.dim_in != code.dim:
        raise DimensionMismatchError(
            f"channel input dimension {channel.dim_in} != code symbol dimension {code.dim}"
        )
    return [apply_product(channel, cw.density(), code.n) for cw in code.codewords]


@dataclass(frozen=True)
class OverlapReport:
    """Pairwise Hilbert-Schmidt overlaps of the transmitted codeword outputs,
    with the asymptotic log-overlap prediction -n * c_q for comparison."""

    n: int
    purities: np.ndarray
    overlaps: np.ndarray
    normalized_overlaps: np.ndarray
    predicted_log2_overlap: float

    def median_offdiagonal(self) -> float:
        k = self.normalized_overlaps.shape[0]
        mask = ~np.eye(k, dtype=bool)
        return float(np.median(self.normalized_overlaps[mask]))


def overlap_report(outputs: Sequence[DensityMatrix], c_q: float, n: int) -> OverlapReport:
    """Purities tr rho_i^2, overlaps tr rho_i rho_j, and normalized overlaps
    tr rho_i rho_j / sqrt(tr rho_i^2 tr rho_j^2) for one transmitted code."""
    if not outputs:
        raise ValidationError("need at least one output state")
    k = len(outputs)
    mats = [o.matrix for o in outputs]
    overlaps = np.zeros((k, k), dtype=np.float64)
    for i in range(k):
        for j in range(i, k):
            val = float(np.real(np.vdot(mats[j], mats[i])))
            overlaps[i, j] = val
            overlaps[j, i] = val
    purities = np.diag(overlaps).copy()
    normalized = overlaps / np.sqrt(np.outer(purities, purities))
    return OverlapReport(
        n=n,
        purities=purities,
        overlaps=overlaps,
        normalized_overlaps=normalized,
        predicted_log2_overlap=-float(n) * float(c_q),
    )


@dataclass(frozen=True)
class DecodingReport:
    trials: int
    correct: int
    misidentification_rate: float
    projector_rank_used: tuple[int, ...]
    seed: int


def projection_decode(
    code: Code,
    channel: QuantumChannel,
    trials: int,
    weight: float = 0.99,
    seed: int = 0,
) -> DecodingReport:
    """Dominant-eigenspace projection decoding of eigen-sampled outputs.

    For each codeword i, P_i projects onto the fewest leading eigenvectors of
    the transmitted rho_i whose eigenvalues capture at least ``weight`` of its
    trace.  Each trial picks a codeword uniformly, draws an eigenvector of its
    output with probability equal to the eigenvalue, and decodes as
    argmax_j <out|P_j|out> with lowest-index tie-break.
    """
    if trials < 1:
        raise ValidationError("trials must be >= 1")
    if not 0.0 < weight < 1.0:
        raise ValidationError(f"weight must lie in (0, 1), got {weight!r}")
    outputs = transmit(code, channel)

    spectra: list[tuple[np.ndarray, np.ndarray]] = []
    projector_bases: list[np.ndarray] = []
    ranks: list[int] = []
    for rho in outputs:
        values, vectors = rho.eigensystem()
        order = np.argsort(values)[::-1]
        values = values[order]
        vectors = vectors[:, order]
        total = float(values.sum())
        values = values / total
        rank = int(np.searchsorted(np.cumsum(values), weight) + 1)
        rank = min(rank, values.size)
        spectra.append((values, vectors))
        projector_bases.append(np.ascontiguousarray(vectors[:, :rank]))
        ranks.append(rank)

    correct = 0
    for t in range(trials):
        rng = spawned_rng(seed, t)
        i = int(rng.integers(code.k))
        values, vectors = spectra[i]
        draw = int(np.searchsorted(np.cumsum(values), rng.random()))
        draw = min(draw, values.size - 1)
        out = vectors[:, draw]
        scores = np.array([np.linalg.norm(basis.conj().T @ out) ** 2 for basis in projector_bases])
        if int(np.argmax(scores)) == i:
            correct += 1
    return DecodingReport(
        trials=trials,
        correct=correct,
        misidentification_rate=1.0 - correct / trials,
        projector_rank_used=tuple(ranks),
        seed=seed,
    )


@dataclass(frozen=True)
class PurityExperiment:
    """Sampled block purity vs the closed-form identity right-hand side."""

    mc_mean: float
    rhs: float
    rel_err: float
    std_error: float
    tolerance: float
    passed: bool
    trials: int
    n: int
    seed: int


def purity_average_experiment(
    channel: QuantumChannel,
    rho_in: DensityMatrix,
    n: int,
    trials: int,
    seed: int = 0,
) -> PurityExperiment:
    """Average tr rho_alpha^2 over Haar-random block inputs against the exact
    identity purity(out)^n + purity(joint)^n - purity(io)^n.

    Only the maximally mixed input is accepted: there the high-probability
    subspace is the whole block space, so the sampled trace and the exact
    trace coincide.  The pass tolerance is 3 * (standard error + 2/dim^n *
    rhs): the identity uses second moments only, and Haar fourth-moment
    corrections are O(1/dim^n).
    """
    if trials < 1:
        raise ValidationError("trials must be >= 1")
    d = channel.dim_in
    mixed = maximally_mixed(d)
    if rho_in.dim != d:
        raise DimensionMismatchError(
            f"channel input dimension {d} != state dimension {rho_in.dim}"
        )
    if float(np.max(np.abs(rho_in.matrix - mixed.matrix))) > 1e-12:
        raise ValidationError("only the maximally mixed input is supported")
    block_dim = d**n
    if block_dim > MAX_PRODUCT_DIM or channel.dim_out**n > MAX_PRODUCT_DIM:
        raise SizeCapError(f"block dimension exceeds cap {MAX_PRODUCT_DIM}")

    values = np.empty(trials, dtype=np.float64)
    for t in range(trials):
        rng = spawned_rng(seed, t)
        v = rng.standard_normal(block_dim) + 1j * rng.standard_normal(block_dim)
        v /= np.linalg.norm(v)
        rho_alpha = product_action(channel.kraus, np.outer(v, v.conj()), n)
        values[t] = matrix_purity(rho_alpha)

    mc_mean = float(math.fsum(values) / trials)
    std_error = float(values.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    rhs = purity_identity_rhs(channel, rho_in, n)
    rel_err = abs(mc_mean - rhs) / rhs
    tolerance = 3.0 * (std_error + (2.0 / block_dim) * rhs)
    return PurityExperiment(
        mc_mean=mc_mean,
        rhs=rhs,
        rel_err=rel_err,
        std_error=std_error,
        tolerance=tolerance,
        passed=bool(abs(mc_mean - rhs) <= tolerance),
        trials=trials,
        n=n,
        seed=seed,
    )
