"""Selective phase rotation gate entanglers for multi-qubit states."""

__version__ = "0.1.0"

from .core import (
    InvalidSizeError,
    InvalidStateError,
    ShapeError,
    StateVector,
    apply_matrix,
    dagger,
    is_unitary,
    kron,
    matrix_product,
    max_abs_diff,
    plus_product_state,
)
from .entangler import EntanglerR, GeneralizedSwap, apply_R_to_plus, build_P, build_R, r_unitarity_check, tau
from .separability import (
    QuadricIndex,
    SegreReport,
    consistency_experiment,
    entangles,
    enumerate_quadrics,
    flattening,
    is_fully_product,
    oracle_is_product,
    phase_condition,
    segre_minor,
)
from .synthesis import (
    CircuitDescription,
    ControlledPhaseBlock,
    block_matrix,
    compose_circuit,
    decompose,
    emit_circuit,
    parse_circuit,
)
from .transform import (
    NotInvertibleError,
    PhaseProfile,
    SelectivePhaseKernel,
    apply_selective,
    dit_apply,
    dit_invert,
    make_selective_kernel,
)
