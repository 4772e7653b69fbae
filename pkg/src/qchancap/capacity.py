"""Channel capacity: maximize coherent information over input states.

The search space is the full density-matrix manifold, reached through the
unconstrained embedding params -> A -> A A^dag / tr(A A^dag) with the real and
imaginary parts of A interleaved in the parameter vector.  Coherent
information is not concave in general, so a multi-restart simplex search
(standard Nelder-Mead coefficients) is used and the best restart wins; the
fixed start at I/d guarantees the optimizer never loses to the symmetric
input.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .channels import QuantumChannel, depolarizing, joint_state
from .errors import ValidationError
from .info import coherent_information, coherent_information_value, von_neumann_entropy
from .seeding import spawned_rng
from .states import DensityMatrix, maximally_mixed

# Restarts whose best value lies within this of the winner count as agreeing.
AGREE_TOL = 1e-6


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 16
    max_iters: int = 2000
    tol: float = 1e-8
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1:
            raise ValidationError("restarts must be >= 1")
        if self.max_iters < 1:
            raise ValidationError("max_iters must be >= 1")
        if not self.tol > 0:
            raise ValidationError("tol must be positive")


@dataclass(frozen=True)
class CapacityResult:
    c_q: float
    rho_star: DensityMatrix
    restarts_agreeing: int
    objective_trace: tuple[tuple[int, float], ...] = field(repr=False)


def parameterize_density(params: np.ndarray) -> DensityMatrix:
    """Map a real vector of length 2 d^2 to a valid d x d density matrix."""
    return DensityMatrix(_density_from_params(np.asarray(params, dtype=np.float64)))


def _density_from_params(params: np.ndarray) -> np.ndarray:
    if params.ndim != 1 or params.size == 0 or params.size % 2 != 0:
        raise ValidationError(f"parameter vector must have even positive length, got {params.shape}")
    d = int(round(np.sqrt(params.size / 2)))
    if 2 * d * d != params.size:
        raise ValidationError(f"parameter length {params.size} is not 2*d^2 for integer d")
    if not np.all(np.isfinite(params)):
        raise ValidationError("parameters must be finite")
    a = (params[0::2] + 1j * params[1::2]).reshape(d, d)
    g = a @ a.conj().T
    tr = float(np.real(np.trace(g)))
    if tr <= 0.0:
        raise ValidationError("all-zero parameter vector")
    return g / tr


def _params_from_matrix(a: np.ndarray) -> np.ndarray:
    flat = a.reshape(-1)
    params = np.empty(2 * flat.size, dtype=np.float64)
    params[0::2] = flat.real
    params[1::2] = flat.imag
    return params


def _run_restart(channel: QuantumChannel, x0: np.ndarray, cfg: OptimizerConfig):
    trace: list[tuple[int, float]] = []

    def negative_iq(params: np.ndarray) -> float:
        if not np.all(np.isfinite(params)):
            return np.inf
        a = (params[0::2] + 1j * params[1::2]).reshape(channel.dim_in, channel.dim_in)
        g = a @ a.conj().T
        tr = float(np.real(np.trace(g)))
        if tr <= 0.0 or not np.isfinite(tr):
            return np.inf
        return -coherent_information_value(channel, g / tr)

    def record(xk: np.ndarray) -> None:
        trace.append((len(trace), -float(negative_iq(xk))))

    result = optimize.minimize(
        negative_iq,
        x0,
        method="Nelder-Mead",
        callback=record,
        options={
            "maxiter": cfg.max_iters,
            "fatol": cfg.tol,
            "xatol": 1e-6,
            "adaptive": False,
        },
    )
    best_value = -float(result.fun)
    return best_value, np.asarray(result.x, dtype=np.float64), tuple(trace)


def channel_capacity(
    channel: QuantumChannel,
    cfg: OptimizerConfig = OptimizerConfig(),
    threads: int = 1,
) -> CapacityResult:
    """Best coherent information over cfg.restarts random starts plus the
    fixed start at I/d.

    Deterministic for fixed (channel, cfg) regardless of thread count:
    restart r draws its start from a Philox stream keyed by (cfg.seed, r), and
    the winner is the highest value with lowest restart index on ties.
    """
    d = channel.dim_in
    nparams = 2 * d * d
    starts = [(0, _params_from_matrix(np.eye(d, dtype=np.complex128)))]
    for r in range(1, cfg.restarts + 1):
        rng = spawned_rng(cfg.seed, r)
        starts.append((r, rng.standard_normal(nparams)))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(lambda s: (s[0], *_run_restart(channel, s[1], cfg)), starts))
    else:
        outcomes = [(idx, *_run_restart(channel, x0, cfg)) for idx, x0 in starts]

    outcomes.sort(key=lambda o: o[0])
    best_idx, best_value, best_x, best_trace = max(
        outcomes, key=lambda o: (o[1], -o[0])
    )
    agreeing = sum(1 for o in outcomes if o[1] >= best_value - AGREE_TOL)

    rho_star = parameterize_density(best_x)
    c_q = coherent_information(channel, rho_star).i_q
    return CapacityResult(
        c_q=c_q,
        rho_star=rho_star,
        restarts_agreeing=agreeing,
        objective_trace=best_trace,
    )


def depolarizing_joint_entropy(eta: float) -> float:
    """Joint output/reference entropy of the depolarizing channel at the
    maximally mixed input, computed through the library path."""
    return von_neumann_entropy(joint_state(depolarizing(eta), maximally_mixed(2)))


def depolarizing_threshold(tol: float = 1e-6) -> float:
    """The noise probability where the symmetric-input coherent information
    of the depolarizing channel hits zero, by bisection.

    The joint entropy is strictly increasing in eta, from near 0 to 2 bits, so
    S_joint(eta) = 1 brackets and bisects cleanly; the result sits just above
    1/4.
    """
    if not 0.0 < tol < 0.1:
        raise ValidationError(f"tol must lie in (0, 0.1), got {tol!r}")
    lo, hi = 0.01, 0.99
    f_lo = depolarizing_joint_entropy(lo) - 1.0
    f_hi = depolarizing_joint_entropy(hi) - 1.0
    if not (f_lo < 0.0 < f_hi):
        raise ValidationError("bisection bracket does not straddle the threshold")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if depolarizing_joint_entropy(mid) - 1.0 < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
