"""Entropy-typical sequence sets by exact type-class enumeration.

A length-N sequence over symbols with probabilities p is typical (tolerance
delta, in bits per symbol) when |(-log2 P)/N - S| <= delta with S the Shannon
entropy.  Sequences sharing a symbol-count vector have equal probability, so
the whole set is enumerated through compositions of N with exact big-integer
multinomial multiplicities; N = 64 over a binary alphabet is 65 classes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .errors import SizeCapError, ValidationError

MAX_SYMBOLS = 8
MAX_BLOCK = 64
MAX_CLASSES = 2_000_000
MAX_PROJECTOR_DIM = 256

PROB_SUM_TOL = 1e-12


@dataclass(frozen=True)
class TypeClass:
    """All sequences with one symbol-count vector."""

    counts: tuple[int, ...]
    log2_prob_per_sequence: float
    multiplicity: int


@dataclass(frozen=True)
class TypicalSet:
    probs: tuple[float, ...]
    n: int
    delta: float
    classes: tuple[TypeClass, ...]
    total_mass: float
    log2_dimension: float

    @property
    def entropy(self) -> float:
        return shannon_entropy(self.probs)


def shannon_entropy(probs: Sequence[float]) -> float:
    """-sum p log2 p in bits, skipping zero entries."""
    return float(-sum(p * math.log2(p) for p in probs if p > 0.0))


def _check_probs(probs: Sequence[float]) -> tuple[float, ...]:
    probs = tuple(float(p) for p in probs)
    if not probs:
        raise ValidationError("need at least one symbol probability")
    if any(p < 0.0 for p in probs):
        raise ValidationError("probabilities must be non-negative")
    if abs(sum(probs) - 1.0) > PROB_SUM_TOL:
        raise ValidationError(f"probabilities sum to {sum(probs)!r}, not 1")
    return probs


def _check_caps(k: int, n: int) -> None:
    if k > MAX_SYMBOLS:
        raise SizeCapError(f"symbol count {k} exceeds cap {MAX_SYMBOLS}")
    if n > MAX_BLOCK:
        raise SizeCapError(f"block length {n} exceeds cap {MAX_BLOCK}")
    n_classes = math.comb(n + k - 1, k - 1)
    if n_classes > MAX_CLASSES:
        raise SizeCapError(f"{n_classes} type classes exceed enumeration cap {MAX_CLASSES}")


def _compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All count vectors of k non-negative integers summing to n, in
    lexicographic bar-placement order."""
    for bars in combinations(range(n + k - 1), k - 1):
        prev = -1
        counts = []
        for b in bars:
            counts.append(b - prev - 1)
            prev = b
        counts.append(n + k - 2 - prev)
        yield tuple(counts)


def multinomial(counts: Sequence[int]) -> int:
    """Exact N! / prod(counts_i!)."""
    total = sum(counts)
    result = math.factorial(total)
    for c in counts:
        result //= math.factorial(c)
    return result


def _class_log2_prob(counts: Sequence[int], probs: Sequence[float]) -> float:
    """log2 of one sequence's probability; -inf when impossible symbols occur."""
    total = 0.0
    for c, p in zip(counts, probs):
        if c == 0:
            continue
        if p == 0.0:
            return -math.inf
        total += c * math.log2(p)
    return total


def typical_set(probs: Sequence[float], n: int, delta: float) -> TypicalSet:
    """Enumerate every type class of length n and keep the typical ones.

    total_mass is the exact probability of the typical set under the product
    distribution; log2_dimension is log2 of the exact number of typical
    sequences (-inf when the set is empty).
    """
    probs = _check_probs(probs)
    if n < 1:
        raise ValidationError("block length must be >= 1")
    if delta <= 0.0:
        raise ValidationError("delta must be positive")
    _check_caps(len(probs), n)
    entropy = shannon_entropy(probs)

    kept: list[TypeClass] = []
    mass = 0.0
    dimension = 0
    for counts in _compositions(n, len(probs)):
        log2_prob = _class_log2_prob(counts, probs)
        if log2_prob == -math.inf:
            continue
        if abs(-log2_prob / n - entropy) <= delta:
            mult = multinomial(counts)
            kept.append(
                TypeClass(counts=counts, log2_prob_per_sequence=log2_prob, multiplicity=mult)
            )
            mass += mult * 2.0**log2_prob
            dimension += mult
    log2_dim = math.log2(dimension) if dimension > 0 else -math.inf
    return TypicalSet(
        probs=probs,
        n=n,
        delta=float(delta),
        classes=tuple(kept),
        total_mass=mass,
        log2_dimension=log2_dim,
    )


def full_partition_mass(probs: Sequence[float], n: int) -> float:
    """Probability summed over ALL type classes; equals 1 up to rounding.

    Kept separate from typical_set as the exactness check on the enumeration.
    """
    probs = _check_probs(probs)
    _check_caps(len(probs), n)
    total = 0.0
    for counts in _compositions(n, len(probs)):
        log2_prob = _class_log2_prob(counts, probs)
        if log2_prob == -math.inf:
            continue
        total += multinomial(counts) * 2.0**log2_prob
    return total


def typical_mass_convergence(
    probs: Sequence[float], delta: float, n_list: Sequence[int]
) -> list[tuple[int, float]]:
    """Typical-set mass for each block length, in the given order."""
    return [(n, typical_set(probs, n, delta).total_mass) for n in n_list]


def hp_purity(probs: Sequence[float], n: int, delta: float) -> float:
    """Sum of squared sequence probabilities over the typical set."""
    ts = typical_set(probs, n, delta)
    return float(
        sum(c.multiplicity * 2.0 ** (2.0 * c.log2_prob_per_sequence) for c in ts.classes)
    )


def typical_sequence_indices(probs: Sequence[float], n: int, delta: float) -> np.ndarray:
    """Flat product-basis indices (base-k digit strings) of typical sequences.

    Only available when k^n fits the dense projector cap.
    """
    probs = _check_probs(probs)
    k = len(probs)
    if k**n > MAX_PROJECTOR_DIM:
        raise SizeCapError(f"k^n = {k**n} exceeds projector cap {MAX_PROJECTOR_DIM}")
    ts = typical_set(probs, n, delta)
    typical_counts = {c.counts for c in ts.classes}
    indices = []
    for flat in range(k**n):
        digits = []
        x = flat
        for _ in range(n):
            digits.append(x % k)
            x //= k
        counts = tuple(digits.count(s) for s in range(k))
        if counts in typical_counts:
            indices.append(flat)
    return np.array(indices, dtype=np.intp)


def typical_projector(probs: Sequence[float], n: int, delta: float) -> np.ndarray:
    """Dense diagonal projector onto typical basis sequences (k^n <= 256).

    Expressed in the product of the single-symbol eigenbasis, where a product
    state is diagonal; rotate with the eigenvector unitary for other bases.
    """
    probs = _check_probs(probs)
    k = len(probs)
    dim = k**n
    if dim > MAX_PROJECTOR_DIM:
        raise SizeCapError(f"k^n = {dim} exceeds projector cap {MAX_PROJECTOR_DIM}")
    proj = np.zeros((dim, dim), dtype=np.complex128)
    idx = typical_sequence_indices(probs, n, delta)
    proj[idx, idx] = 1.0
    return proj
