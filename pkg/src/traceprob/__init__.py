"""Trace-rule probability calculus for deterministic cycles and their
Hermitian generalization: diagonal projectors and densities from classical
schedules, f(S) = tr(P(S) rho), superselection dephasing, positive-operator
measures, and seeded Monte Carlo sampling.
"""

from .classical import (
    ClassicalCycle,
    FractionVector,
    PerceptionSet,
    char_and,
    char_or,
    classical_density,
    classical_prob,
    diag_projector,
    dwell_fractions,
    indicator_matrix,
    time_average_indicator,
)
from .errors import (
    DimensionMismatchError,
    NonCommutingError,
    NonFiniteError,
    NotAPartitionError,
    NotHermitianError,
    NotRealError,
    NotSubsetError,
    NotUnitaryError,
    NumericalIntegrityError,
    SpecParseError,
    TraceProbError,
    UnknownLabelError,
    ValidationError,
    ZeroConditionMeasureError,
    ZeroTotalMeasureError,
)
from .matcore import (
    DEFAULT_TOL,
    EigenDecomposition,
    adjoint,
    as_matrix,
    hermitian_eig,
    is_density,
    is_hermitian,
    is_projector,
    mat_mul,
    matrix_from_rows,
    matrix_to_rows,
    max_abs,
    random_orthogonal,
    random_unitary,
    trace,
)
from .measure import (
    PerceptionAlgebra,
    PovOperator,
    algebra_from_obj,
    algebra_to_obj,
    conditional_prob,
    measure_of,
    normalized_prob,
    total_measure,
    union_operator,
)
from .quantum import (
    DensityMatrix,
    Projector,
    RealityMode,
    check_invariance,
    commutes,
    enforce_reality,
    is_pure,
    projector_meet,
    trace_prob,
    unitary_conjugate,
)
from .sampler import SampleReport, deviation_check, sample_classical, sample_measurement
from .specfile import LabeledProjector, SystemSpec, load_system_spec
from .superselect import (
    EnergyBlocks,
    Hamiltonian,
    default_cluster_tol,
    dephase,
    energy_blocks,
    evolve,
    is_superselection_compliant,
)

__version__ = "0.1.0"

__all__ = [
    "ClassicalCycle",
    "FractionVector",
    "PerceptionSet",
    "char_and",
    "char_or",
    "classical_density",
    "classical_prob",
    "diag_projector",
    "dwell_fractions",
    "indicator_matrix",
    "time_average_indicator",
    "DimensionMismatchError",
    "NonCommutingError",
    "NonFiniteError",
    "NotAPartitionError",
    "NotHermitianError",
    "NotRealError",
    "NotSubsetError",
    "NotUnitaryError",
    "NumericalIntegrityError",
    "SpecParseError",
    "TraceProbError",
    "UnknownLabelError",
    "ValidationError",
    "ZeroConditionMeasureError",
    "ZeroTotalMeasureError",
    "DEFAULT_TOL",
    "EigenDecomposition",
    "adjoint",
    "as_matrix",
    "hermitian_eig",
    "is_density",
    "is_hermitian",
    "is_projector",
    "mat_mul",
    "matrix_from_rows",
    "matrix_to_rows",
    "max_abs",
    "random_orthogonal",
    "random_unitary",
    "trace",
    "PerceptionAlgebra",
    "PovOperator",
    "algebra_from_obj",
    "algebra_to_obj",
    "conditional_prob",
    "measure_of",
    "normalized_prob",
    "total_measure",
    "union_operator",
    "DensityMatrix",
    "Projector",
    "RealityMode",
    "check_invariance",
    "commutes",
    "enforce_reality",
    "is_pure",
    "projector_meet",
    "trace_prob",
    "unitary_conjugate",
    "SampleReport",
    "deviation_check",
    "sample_classical",
    "sample_measurement",
    "LabeledProjector",
    "SystemSpec",
    "load_system_spec",
    "EnergyBlocks",
    "Hamiltonian",
    "default_cluster_tol",
    "dephase",
    "energy_blocks",
    "evolve",
    "is_superselection_compliant",
    "__version__",
]
