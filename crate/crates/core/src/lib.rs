//! Ground first-order workbench: superposition under the model-operator
//! strategy, SCL clause learning under the strategy that simulates it, and
//! a lockstep checker relating the two runs.
//!
//! ```
//! use sclsim::{parse_problem, run_sup_mo, run_scl_sup, SupOutcome, SclSupOutcome};
//!
//! let p = parse_problem("prec: a < b < P < Q\nclause: P(a) | P(a)\nclause: -P(a) | Q(b)\nclause: -Q(b)").unwrap();
//! let sup = run_sup_mo(&p, 100);
//! assert!(matches!(sup.outcome, SupOutcome::Unsatisfiable));
//! let scl = run_scl_sup(&p, 100).unwrap();
//! assert!(matches!(scl.outcome, SclSupOutcome::Unsatisfiable));
//! ```

pub mod clause;
pub mod harness;
pub mod ordering;
pub mod problem;
pub mod scl;
pub mod semantics;
pub mod simulation;
pub mod superposition;
pub mod term;

pub use clause::{AtomId, Clause, ClauseId, ClauseSet, Lit};
pub use harness::oracle::{brute_force_sat, entails, is_redundant, OracleError, SatResult};
pub use ordering::{
    compare_atoms, compare_clauses, compare_clauses_gamma, compare_literals, compare_terms,
    AtomTable, GammaMap, OrderKind, OrderingConfig, OrderingError,
};
pub use problem::{
    parse_problem, validate_ordering, ParseError, ParseErrorKind, Problem, ProblemError,
};
pub use scl::{
    audit_regular, Justification, SclError, SclState, SclStatus, SclStep, Trail, TrailEntry,
};
pub use semantics::{atoms_of, eval_herbrand, status_under_assignment, PartialAssignment, Truth};
pub use simulation::{
    check_invariants, lockstep_verify, run_scl_sup, AnnotatedState, Annotation, AtomicSequence,
    InvariantReport, SclSupOutcome, SclSupRun, SeqKind, VerifyReport,
};
pub use superposition::{
    construct_model, factoring_step, minimal_false_clause, run_sup_mo, sup_mo_step,
    superposition_left, ModelConstruction, SupInference, SupOutcome, SupRule, SupRun, SupStep,
};
pub use term::{Atom, GroundTerm, Literal};
