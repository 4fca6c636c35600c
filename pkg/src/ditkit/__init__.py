"""ditkit: exact set-partition algebra, logical entropy, partition
density matrices, observables, and GF(2) skeletal dynamics."""

from .density import (
    DensityMatrix,
    ProjectionMask,
    SqrtRational,
    consistency_h,
    luders_mixture,
    luders_outcomes,
    luders_rule,
    quantum_logical_entropy,
    rho,
    state_reduction_audit,
    theorem_entropy_increase,
    theorem_join,
    verify_block_eigenvectors,
)
from .entropy import (
    CompoundLogical,
    CompoundShannon,
    block_probs,
    compound_logical,
    compound_shannon,
    dit_to_bit_check,
    logical_entropy,
    logical_entropy_ditsum,
    shannon_entropy,
)
from .errors import (
    BoundExceeded,
    BudgetExceeded,
    DegenerateDSD,
    DimensionMismatch,
    DitkitError,
    DuplicateEigenvalue,
    EmptyBlock,
    EmptyState,
    FormulaSyntaxError,
    GroundMismatch,
    NotCommuting,
    NotExhaustive,
    OverlappingBlocks,
    UnboundVariable,
    UnknownLabel,
    ZeroProbabilityOutcome,
)
from .lattice import (
    covering_pairs,
    double_slit_dot,
    hasse_dot,
    hasse_json,
    lattice_nodes,
    superposition_partition,
)
from .logic import (
    DEFAULT_BUDGET,
    Bottom,
    Counterexample,
    Formula,
    Implies,
    Join,
    Meet,
    Top,
    ValidityReport,
    Var,
    boolean_tautology,
    check_validity,
    evaluate,
    parse,
    pretty_print,
    variables,
)
from .observables import (
    DSD,
    Attribute,
    Compatibility,
    Operator,
    classify,
    commutator,
    csca_complete,
    csco_complete,
    dsd_from_attribute,
    inverse_image_partition,
    kernel,
    operator_from_attribute,
    operator_from_dsd,
    set_spectral_check,
    simultaneous_eigenspace,
    theorem_se_equals_kernel,
)
from .partitions import (
    GroundSet,
    PairRelation,
    Partition,
    ProbGroundSet,
    bell_number,
    choice_reduce,
    discrete_partition,
    ditset,
    enumerate_partitions,
    implication,
    indiscrete_partition,
    inditset,
    join,
    make_partition,
    meet,
    notation,
    parse_partition,
    refines,
)
from .z2dyn import (
    Detect,
    Evolve,
    GF2Map,
    Measure,
    StateMixture,
    SubsetVector,
    double_slit,
    double_slit_setup,
    double_slit_steps,
    evolve,
    is_nonsingular,
    run_pipeline,
    sample_pipeline,
)

__version__ = "0.1.0"
