"""Trace-preserving completely positive maps in Kraus form.

A channel acts as rho -> sum_k K_k rho K_k^dag.  The Kraus list is the ground
truth; two channels are considered equal when their Choi matrices agree.
Built-in families: identity, complete dephasing, partial dephasing (qubit),
depolarizing (qubit).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import backends
from .errors import DimensionMismatchError, SizeCapError, ValidationError
from .linalg import as_matrix, partial_trace
from .states import DensityMatrix, purify

# Dense desk-scale caps: block-product states and joint output/reference states.
MAX_PRODUCT_DIM = 256
MAX_JOINT_DIM = 4096

TRACE_PRESERVATION_TOL = 1e-9

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    """A CPTP map given by a stacked (K, dim_out, dim_in) Kraus array."""

    kraus: np.ndarray

    def __post_init__(self):
        ops = self.kraus
        if not isinstance(ops, np.ndarray) or ops.ndim != 3:
            ops = np.stack([as_matrix(k) for k in ops])
        ops = np.ascontiguousarray(ops, dtype=np.complex128)
        if ops.shape[0] == 0:
            raise ValidationError("channel needs at least one Kraus operator")
        if not np.all(np.isfinite(ops.view(np.float64))):
            raise ValidationError("Kraus entries must be finite")
        total = np.einsum("kij,kil->jl", ops.conj(), ops)
        dev = float(np.max(np.abs(total - np.eye(ops.shape[2]))))
        if dev > TRACE_PRESERVATION_TOL:
            raise ValidationError(
                f"Kraus set is not trace preserving: max |sum K^dag K - I| = {dev:.3e}"
            )
        ops.flags.writeable = False
        object.__setattr__(self, "kraus", ops)

    @property
    def dim_in(self) -> int:
        return self.kraus.shape[2]

    @property
    def dim_out(self) -> int:
        return self.kraus.shape[1]

    def kraus_operators(self) -> list[np.ndarray]:
        return [self.kraus[k] for k in range(self.kraus.shape[0])]


def identity_channel(dim: int = 2) -> QuantumChannel:
    """The noiseless, distortion-free channel."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    return QuantumChannel(np.eye(dim, dtype=np.complex128)[None, :, :])


def complete_dephasing(dim: int = 2) -> QuantumChannel:
    """Destroys all off-diagonal terms: Kraus set {|i><i|}."""
    if dim < 2:
        raise ValueError("dim must be >= 2")
    ops = np.zeros((dim, dim, dim), dtype=np.complex128)
    for i in range(dim):
        ops[i, i, i] = 1.0
    return QuantumChannel(ops)


def dephasing(eps: float) -> QuantumChannel:
    """Qubit channel attenuating coherences: |0><1| -> (1 - eps)|0><1|.

    Kraus set {sqrt(1-eps) I, sqrt(eps)|0><0|, sqrt(eps)|1><1|}; populations
    are untouched.  eps=0 is the identity, eps=1 complete dephasing.
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"dephasing strength must be in [0, 1], got {eps!r}")
    ops = np.zeros((3, 2, 2), dtype=np.complex128)
    ops[0] = math.sqrt(1.0 - eps) * np.eye(2)
    ops[1, 0, 0] = math.sqrt(eps)
    ops[2, 1, 1] = math.sqrt(eps)
    return QuantumChannel(ops)


def depolarizing(eta: float) -> QuantumChannel:
    """Qubit channel replacing the state by I/2 with probability eta.

    Kraus set {sqrt(1-3eta/4) I, sqrt(eta/4) X, sqrt(eta/4) Y, sqrt(eta/4) Z},
    i.e. rho -> (1-eta) rho + eta I/2.
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"depolarizing probability must be in [0, 1], got {eta!r}")
    return QuantumChannel(
        np.stack(
            [
                math.sqrt(1.0 - 0.75 * eta) * np.eye(2, dtype=np.complex128),
                math.sqrt(0.25 * eta) * PAULI_X,
                math.sqrt(0.25 * eta) * PAULI_Y,
                math.sqrt(0.25 * eta) * PAULI_Z,
            ]
        )
    )


def apply(channel: QuantumChannel, m) -> np.ndarray:
    """Linear action sum_k K m K^dag on an arbitrary dim_in x dim_in matrix.

    ``m`` need not be a density matrix; the linear extension to dyads is what
    joint states are built from.
    """
    m = as_matrix(m, square=True)
    if m.shape[0] != channel.dim_in:
        raise DimensionMismatchError(
            f"matrix dimension {m.shape[0]} != channel input dimension {channel.dim_in}"
        )
    return backends.kraus_apply(channel.kraus, m)


def apply_density(channel: QuantumChannel, rho: DensityMatrix) -> DensityMatrix:
    """Channel action on a state, revalidated."""
    return DensityMatrix(apply(channel, rho.matrix))


def joint_state(channel: QuantumChannel, rho_in: DensityMatrix) -> DensityMatrix:
    """Output/reference state after sending half an entangled pair.

    Purify rho_in as sum_i sqrt(p_i)|phi_i>|phi_i>, send the first factor
    through the channel, keep the second untouched:

        sum_{i,i'} sqrt(p_i p_i') S(|phi_i><phi_i'|) (x) |phi_i><phi_i'|

    Tracing out the reference gives the channel output; tracing out the output
    gives rho_in back.
    """
    d = rho_in.dim
    if channel.dim_in != d:
        raise DimensionMismatchError(
            f"channel input dimension {channel.dim_in} != state dimension {d}"
        )
    joint_dim = channel.dim_out * d
    if joint_dim > MAX_JOINT_DIM:
        raise SizeCapError(f"joint dimension {joint_dim} exceeds cap {MAX_JOINT_DIM}")
    v = purify(rho_in).amplitudes.reshape(d, d)
    w = (channel.kraus @ v).reshape(channel.kraus.shape[0], joint_dim)
    joint = np.einsum("ka,kb->ab", w, w.conj())
    return DensityMatrix(joint)


def io_state(channel: QuantumChannel, rho_in: DensityMatrix) -> DensityMatrix:
    """Classically correlated output/reference state over the input eigensystem:

        sum_i p_i S(|phi_i><phi_i|) (x) |phi_i><phi_i|

    Equals the joint state after completely dephasing the reference factor in
    the rho_in eigenbasis.
    """
    d = rho_in.dim
    if channel.dim_in != d:
        raise DimensionMismatchError(
            f"channel input dimension {channel.dim_in} != state dimension {d}"
        )
    joint_dim = channel.dim_out * d
    if joint_dim > MAX_JOINT_DIM:
        raise SizeCapError(f"joint dimension {joint_dim} exceeds cap {MAX_JOINT_DIM}")
    p, u = rho_in.eigensystem()
    out = np.zeros((joint_dim, joint_dim), dtype=np.complex128)
    for i in range(d):
        if p[i] == 0.0:
            continue
        phi = u[:, i]
        proj = np.outer(phi, phi.conj())
        out += p[i] * np.kron(backends.kraus_apply(channel.kraus, proj), proj)
    return DensityMatrix(out)


def apply_product(channel: QuantumChannel, rho_n: DensityMatrix, n: int) -> DensityMatrix:
    """Memoryless block action: the channel acts independently on each of the
    n tensor factors of rho_n."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    din = channel.dim_in
    if din**n != rho_n.dim:
        raise DimensionMismatchError(
            f"state dimension {rho_n.dim} is not {din}^{n}"
        )
    if din**n > MAX_PRODUCT_DIM or channel.dim_out**n > MAX_PRODUCT_DIM:
        raise SizeCapError(f"block dimension exceeds cap {MAX_PRODUCT_DIM}")
    return DensityMatrix(product_action(channel.kraus, rho_n.matrix, n))


def product_action(kraus: np.ndarray, m: np.ndarray, n: int) -> np.ndarray:
    """Array-level n-fold memoryless action; no state validation."""
    din = kraus.shape[2]
    dout = kraus.shape[1]
    for site in range(n):
        dl = dout**site
        dr = din ** (n - site - 1)
        t = m.reshape(dl, din, dr, dl, din, dr)
        acc = None
        for k in range(kraus.shape[0]):
            op = kraus[k]
            t1 = np.tensordot(op, t, axes=(1, 1))          # (a, dl, dr, dl, j, dr)
            t2 = np.tensordot(t1, op.conj(), axes=(4, 1))  # (a, dl, dr, dl, dr, b)
            term = t2.transpose(1, 0, 2, 3, 5, 4)
            acc = term if acc is None else acc + term
        m = acc.reshape(dl * dout * dr, dl * dout * dr)
    return m


def choi_matrix(channel: QuantumChannel) -> np.ndarray:
    """Choi matrix sum_k vec(K_k) vec(K_k)^dag (row-major vec, output first).

    Channel equality is defined as Choi matrices agreeing entrywise.
    """
    w = channel.kraus.reshape(channel.kraus.shape[0], -1)
    return np.einsum("ka,kb->ab", w, w.conj())


# ---------------------------------------------------------------------------
# Channel specification wire format (JSON-compatible dicts).
# ---------------------------------------------------------------------------

_BUILTIN_NAMES = ("identity", "complete_dephasing", "dephasing", "depolarizing")


def channel_from_spec(spec: dict) -> QuantumChannel:
    """Build a channel from its wire-format dict.

    Either {"builtin": name, "dim": int, "param": float} or
    {"kraus": [matrix, ...]} with each matrix a list of rows of [re, im] pairs.
    Raises ValueError for malformed specs and ValidationError when the
    resulting Kraus set fails trace preservation.
    """
    if not isinstance(spec, dict):
        raise ValueError("channel spec must be a JSON object")
    if "builtin" in spec:
        name = spec["builtin"]
        if name not in _BUILTIN_NAMES:
            raise ValueError(f"unknown builtin channel {name!r}; expected one of {_BUILTIN_NAMES}")
        dim = int(spec.get("dim", 2))
        param = spec.get("param")
        if name == "identity":
            return identity_channel(dim)
        if name == "complete_dephasing":
            return complete_dephasing(dim)
        if param is None:
            raise ValueError(f"builtin {name!r} needs a 'param' field")
        if dim != 2:
            raise ValueError(f"builtin {name!r} is a qubit channel; 'dim' must be 2")
        if name == "dephasing":
            return dephasing(float(param))
        return depolarizing(float(param))
    if "kraus" in spec:
        raw = spec["kraus"]
        if not isinstance(raw, list) or not raw:
            raise ValueError("'kraus' must be a nonempty list of matrices")
        ops = []
        for idx, mat in enumerate(raw):
            try:
                arr = np.array(
                    [[complex(entry[0], entry[1]) for entry in row] for row in mat],
                    dtype=np.complex128,
                )
            except (TypeError, ValueError, IndexError) as exc:
                raise ValueError(f"kraus[{idx}] is not a matrix of [re, im] pairs: {exc}") from exc
            ops.append(arr)
        return QuantumChannel(np.stack(ops))
    raise ValueError("channel spec needs either a 'builtin' or a 'kraus' field")


def channel_to_spec(channel: QuantumChannel) -> dict:
    """Serialize to the explicit-Kraus wire format."""
    return {
        "kraus": [
            [[[float(entry.real), float(entry.imag)] for entry in row] for row in op]
            for op in channel.kraus_operators()
        ]
    }
