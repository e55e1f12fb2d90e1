"""qlpoly: exact correlation polytopes for finite event structures,
complex-operator decompositions, and parameter-cheat probability laws.

The library is organized around five parts: event structures (logics),
two-valued state enumeration (states), the exact hull problem (polytope),
finite-dimensional operator tools (quantum), and the joint-probability laws
with their cheat transforms (cheats).  The qlpoly command wires them together.
"""

from .cheats import (
    CheatTransform,
    CHResult,
    CurveTable,
    DomainError,
    NonMonotoneError,
    ProbabilityLaw,
    ScanResult,
    ch_value,
    cheated,
    classical,
    classical_cheat,
    fold_angle,
    law_eval,
    quantum,
    quantum_cheat,
    sample_curves,
    scan_ch,
    step,
    stq,
    stq_cheat,
    transform_forward,
    transform_inverse,
)
from .logics import (
    InvalidPartitionError,
    Logic,
    LogicDiagnostics,
    LogicParseError,
    PartitionLogic,
    UnknownBuiltinError,
    builtin,
    builtin_logic,
    from_partitions,
    logic_to_json,
    parse_logic,
    parse_partitions,
    partitions_to_json,
    validate_logic,
    validate_partitions,
)
from .polytope import (
    HRep,
    TermList,
    VRep,
    affine_hull_dim,
    build_vertices,
    certify,
    check_relation,
    classical_polytope,
    double_description,
    hrep_text,
    hrep_to_json,
    membership,
    parse_terms,
    vrep_from_json,
    vrep_to_json,
)
from .quantum import (
    ContextOperatorResult,
    DensityOperator,
    InvalidDensityOperatorError,
    NotCommutingError,
    NotInvertibleError,
    NotSelfAdjointError,
    cartesian,
    context_operator,
    eigh_jacobi,
    gen_prob,
    interpolating_polynomial,
    is_normal,
    matrix_from_json,
    matrix_to_json,
    polar,
)
from .states import (
    StateSet,
    block_states,
    boolean_embedding,
    builtin_states,
    enumerate_states,
    is_separating,
    is_unital,
    model_states,
    stateset_to_json,
    truth_table,
)

__version__ = "0.1.0"
