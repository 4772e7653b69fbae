"""Entropies, purity, and coherent information.

All entropies are in bits (log base 2), so one maximally mixed qubit carries
exactly 1 bit and the coherent information of a channel reads in qubits.
Natural-log values differ by a factor ln 2.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backends
from .channels import QuantumChannel, apply, io_state, joint_state
from .errors import DimensionMismatchError
from .states import DensityMatrix


@dataclass(frozen=True)
class InfoReport:
    """Entropy bookkeeping for one (channel, input) pair, all in bits.

    i_q is the coherent information S_out - S_joint clamped at zero; the
    unclamped difference is recoverable from s_out and s_joint.
    """

    s_in: float
    s_out: float
    s_joint: float
    i_q: float


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """-tr rho log2 rho, with 0 log 0 = 0.  Lies in [0, log2 dim]."""
    return backends.entropy_bits(rho.matrix)


def purity(rho: DensityMatrix) -> float:
    """tr rho^2, in [1/dim, 1]."""
    return matrix_purity(rho.matrix)


def matrix_purity(m: np.ndarray) -> float:
    """tr m^2 for Hermitian m, computed as the squared Frobenius norm."""
    return float(np.real(np.vdot(m, m)))


def coherent_information(channel: QuantumChannel, rho_in: DensityMatrix) -> InfoReport:
    """Entropies of the input, the output, and the joint output/reference
    state, plus the clamped coherent information."""
    if channel.dim_in != rho_in.dim:
        raise DimensionMismatchError(
            f"channel input dimension {channel.dim_in} != state dimension {rho_in.dim}"
        )
    s_in = von_neumann_entropy(rho_in)
    s_out = backends.entropy_bits(apply(channel, rho_in.matrix))
    s_joint = von_neumann_entropy(joint_state(channel, rho_in))
    return InfoReport(s_in=s_in, s_out=s_out, s_joint=s_joint, i_q=max(0.0, s_out - s_joint))


def coherent_information_value(channel: QuantumChannel, rho_matrix: np.ndarray) -> float:
    """Fast-path i_q for an unvalidated density-matrix array (optimizer loop)."""
    s_out, s_joint = backends.coherent_info_values(channel.kraus, rho_matrix)
    return max(0.0, s_out - s_joint)


def purity_identity_rhs(channel: QuantumChannel, rho_in: DensityMatrix, n: int) -> float:
    """purity(out)^n + purity(joint)^n - purity(io)^n for n block uses.

    This is the exact-trace analog of the averaged block-purity identity the
    coding experiments sample; n = 0 degenerates to 1.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 1.0
    p_out = matrix_purity(apply(channel, rho_in.matrix))
    p_joint = purity(joint_state(channel, rho_in))
    p_io = purity(io_state(channel, rho_in))
    return p_out**n + p_joint**n - p_io**n
