"""Coherent information and capacity of noisy quantum channels.

Dense, desk-scale toolkit: Kraus-form channels, entropies and coherent
information, capacity search over input states, exact typical-set
enumeration, and seeded random-code transmission experiments.  Hot kernels
run on a compiled extension when available, with a pure-numpy fallback
(see qchancap.backends).
"""
from .backends import available_backends, backend_name, use_backend
from .capacity import (
    CapacityResult,
    OptimizerConfig,
    channel_capacity,
    depolarizing_joint_entropy,
    depolarizing_threshold,
    parameterize_density,
)
from .channels import (
    QuantumChannel,
    apply,
    apply_density,
    apply_product,
    channel_from_spec,
    channel_to_spec,
    choi_matrix,
    complete_dephasing,
    dephasing,
    depolarizing,
    identity_channel,
    io_state,
    joint_state,
)
from .coding import (
    Code,
    DecodingReport,
    OverlapReport,
    PurityExperiment,
    basis_code,
    bell_code,
    overlap_report,
    projection_decode,
    purity_average_experiment,
    random_code,
    transmit,
)
from .errors import DimensionMismatchError, SizeCapError, ValidationError
from .info import (
    InfoReport,
    coherent_information,
    purity,
    purity_identity_rhs,
    von_neumann_entropy,
)
from .linalg import eig_hermitian, partial_trace, tensor, tensor_power
from .states import (
    DensityMatrix,
    Ensemble,
    PureState,
    ensemble_inner,
    from_ensemble,
    maximally_mixed,
    purify,
    superpose_ensembles,
)
from .typical import (
    TypeClass,
    TypicalSet,
    hp_purity,
    shannon_entropy,
    typical_mass_convergence,
    typical_projector,
    typical_sequence_indices,
    typical_set,
)

__version__ = "0.1.0"

__all__ = [
    "available_backends",
    "backend_name",
    "use_backend",
    "CapacityResult",
    "OptimizerConfig",
    "channel_capacity",
    "depolarizing_joint_entropy",
    "depolarizing_threshold",
    "parameterize_density",
    "QuantumChannel",
    "apply",
    "apply_density",
    "apply_product",
    "channel_from_spec",
    "channel_to_spec",
    "choi_matrix",
    "complete_dephasing",
    "dephasing",
    "depolarizing",
    "identity_channel",
    "io_state",
    "joint_state",
    "Code",
    "DecodingReport",
    "OverlapReport",
    "PurityExperiment",
    "basis_code",
    "bell_code",
    "overlap_report",
    "projection_decode",
    "purity_average_experiment",
    "random_code",
    "transmit",
    "DimensionMismatchError",
    "SizeCapError",
    "ValidationError",
    "InfoReport",
    "coherent_information",
    "purity",
    "purity_identity_rhs",
    "von_neumann_entropy",
    "eig_hermitian",
    "partial_trace",
    "tensor",
    "tensor_power",
    "DensityMatrix",
    "Ensemble",
    "PureState",
    "ensemble_inner",
    "from_ensemble",
    "maximally_mixed",
    "purify",
    "superpose_ensembles",
    "TypeClass",
    "TypicalSet",
    "hp_purity",
    "shannon_entropy",
    "typical_mass_convergence",
    "typical_projector",
    "typical_sequence_indices",
    "typical_set",
    "__version__",
]
