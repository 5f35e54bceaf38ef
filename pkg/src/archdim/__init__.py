"""Accessible-dimension analysis of quantum circuit architectures.

The package models architectures as DAGs of two-qubit gate slots, finds
causal slices, constructs all-Clifford witness points whose Jacobian rank
grows linearly with the slice count, estimates the accessible dimension
numerically at Haar-random points, and evaluates the matching closed-form
bounds.
"""

__version__ = "0.1.0"

from .architecture import (
    Architecture,
    LightCone,
    StaircaseSliceReport,
    brickwork,
    detect_staircase_slices,
    from_gate_sequence,
    is_causal_slice,
    random_adjacent,
    slice_light_cone,
    staircase,
)
from .bounds import (
    BoundSheet,
    complexity_lower_bound,
    dimension_upper_bound,
    make_bound_sheet,
    randomized_bound_probability,
    saturation_threshold,
    staircase_slice_probability,
)
from .clifford import (
    CliffordCircuit,
    CliffordTableau,
    clifford_to_unitary,
    conjugate_pauli_by_gate,
    routing_clifford_2q,
)
from .contraction import (
    GateAssignment,
    RankEstimate,
    RankReport,
    TangentFrame,
    accessible_dimension,
    contract,
    contract_state,
    gauge_redundancy_check,
    haar_su4,
    haar_u4,
    numerical_rank,
    pauli_coefficients,
    perturbation_operator,
    subseed,
    tangent_frame,
)
from .errors import (
    AlphaOutOfRange,
    ArchdimError,
    CertificateMismatch,
    CountMismatch,
    DimensionMismatch,
    InvalidBoundary,
    InvalidQubit,
    NoInternalWire,
    NotCausal,
    NotOnSlice,
    OddQubitCount,
    PhasedPauli,
    SizeLimit,
    TooManySlices,
    TrivialPauli,
    ValidationError,
    VerdictError,
)
from .experiments import (
    MonteCarloSummary,
    SweepRow,
    WitnessComparison,
    growth_sweep,
    randomized_architecture_experiment,
    rows_to_csv,
    witness_vs_haar,
)
from .pauli import PauliString, nontrivial_strings, pauli_multiply
from .witness import (
    PathTree,
    WitnessCertificate,
    build_path_tree,
    route_pauli_through_slice,
    verify_certificate,
    witness_point,
)
