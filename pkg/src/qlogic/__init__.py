"""Truth values of quantum propositions over subspace lattices.

Computes truth values of propositional formulas whose atoms are closed
subspaces of a finite-dimensional complex Hilbert space, under four
semantics: eigenstate bivalent, Born degree, Kleene/Lukasiewicz table
driven, and supervaluationist. Includes a which-way interference simulator
and projector commutator diagnostics.
"""

from .errors import (
    ConfigInvalid,
    DimensionMismatch,
    IllegalValueForSystem,
    IndexOutOfRange,
    NoState,
    NotHermitian,
    ParseError,
    PreconditionViolation,
    QLogicError,
    RankAmbiguous,
    UnboundAtom,
    ZeroProbabilityBranch,
)
from .linalg import (
    DEFAULT_TOLERANCE,
    HermitianOperator,
    Projector,
    StateVector,
    Tolerance,
    commutator,
    expectation,
    frobenius_norm,
    identity_projector,
    measure_update,
    projector_from_span,
    spectral_decompose,
    tensor_product,
    zero_projector,
)
from .lattice import (
    LatticeContext,
    Subspace,
    check_orthomodular,
    compatible,
    join,
    leq,
    meet,
    orthocomplement,
    subspace_equal,
)
from .mvl import (
    UNDEFINED,
    LogicSystem,
    TruthValue,
    conj,
    disj,
    is_bivalent,
    neg,
    xor_compound,
)
from .valuation import (
    AgreementReport,
    AlternativesReport,
    CoincidenceReport,
    Policy,
    TableDriven,
    Valuation,
    agreement_report,
    law_of_alternatives_check,
    lukasiewicz_coincidence_check,
)
from .formula import (
    And,
    Atom,
    Formula,
    Not,
    Or,
    Xor,
    formula_atoms,
    formula_depth,
    parse_formula,
    print_formula,
)
from .scenario import (
    EvalResult,
    Scenario,
    bind_and_evaluate,
    load_scenario,
    scenario_from_dict,
)
from .experiment import (
    ExperimentConfig,
    PatternReport,
    Region,
    RegionProbs,
    SpectralIdentityReport,
    SweepFamily,
    SweepRow,
    WhichWayReport,
    build_state,
    commutator_sweep,
    conditional_pattern,
    experiment_from_dict,
    load_experiment,
    run_patterns,
    simulate_which_way,
    verify_spectral_commutator_identity,
)

__version__ = "0.1.0"
