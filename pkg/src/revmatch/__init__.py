"""Boolean matching of black-box reversible circuits.

The package recovers input/output negation and permutation correspondences
between two reversible circuits accessed only through queries, measures the
query cost of doing so, and compiles CNF formulas into matching instances
whose witnesses encode satisfying assignments.
"""
from .circuit import (
    BitVec,
    Circuit,
    ControlLine,
    MctGate,
    NegationMap,
    PermutationMap,
    Rewire,
    cnot,
    commute_neg_perm,
    compose,
    identity,
    mct,
    neg_circuit,
    not_gate,
    perm_circuit,
    random_circuit,
)
from .errors import (
    AmbiguityError,
    DimacsError,
    InverseUnavailable,
    MissingKeyError,
    NoAlgorithmError,
    NoPartnerError,
    RealFormatError,
    RevMatchError,
    StateTooLarge,
    WidthLimitExceeded,
    WidthMismatch,
    WitnessShapeError,
)
from .harness import (
    BenchRecord,
    CollisionStats,
    Instance,
    collision_bench,
    collision_trial,
    gen_instance,
    report,
    run_match,
    select_algorithm,
)
from .matchers import (
    ALL_EQUIVS,
    EquivType,
    HARD_EQUIVS,
    MatchConfig,
    MatchWitness,
    Side,
    TRACTABLE_EQUIVS,
    brute_force_match,
    match_i_n,
    match_i_np_inv,
    match_i_np_rand,
    match_i_p_inv,
    match_i_p_rand,
    match_n_i_inv,
    match_n_i_quantum,
    match_n_p_inv,
    match_np_i_inv,
    match_np_i_quantum,
    match_p_i_inv,
    match_p_i_onehot,
    match_p_n,
    verify_witness,
    witness_circuit,
)
from .oracle import Oracle, QueryCounts
from .qsim import SparseState, WireInit, basis_state, inner_product, prepare, swap_test
from .realio import parse_real, write_real
from .reductions import (
    Cnf,
    ReductionLayout,
    build_nn_instance,
    build_pp_instance,
    build_u_phi,
    clause_encoder,
    count_satisfying,
    dual_rail,
    extract_assignment_nn,
    extract_assignment_pp,
    parse_dimacs,
    satisfying_assignments,
    verify_encoding,
    write_dimacs,
)

__version__ = "0.1.0"
