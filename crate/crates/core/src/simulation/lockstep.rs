use std::collections::BTreeSet;

use super::{
    check_invariants, run_scl_sup, AnnotatedState, InvariantReport, SclSupOutcome, SclSupRun,
    SimError,
};
use crate::clause::Clause;
use crate::harness::oracle::entails;
use crate::problem::Problem;
use crate::scl::{audit_regular, RegularityViolation, SclStatus};
use crate::superposition::{run_sup_mo, SupOutcome, SupRun};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyEvent {
    /// Number of atomic sequences executed; 0 is the start state.
    pub after_seq: usize,
    pub invariants: InvariantReport,
    /// Progress relative to the previous state; `None` for the start state.
    pub progress: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FailureKind {
    /// A strategy run aborted or hit its cap.
    Run,
    Invariant,
    Progress,
    Regularity,
    Verdict,
    Dichotomy,
    Coincidence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub kind: FailureKind,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub sup: SupRun,
    pub scl: Result<SclSupRun, SimError>,
    pub events: Vec<VerifyEvent>,
    pub regularity: Vec<RegularityViolation>,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn count(&self, kind: FailureKind) -> usize {
        self.failures.iter().filter(|f| f.kind == kind).count()
    }

    pub fn invariant_failures(&self) -> usize {
        self.events
            .iter()
            .map(|e| e.invariants.failures().count())
            .sum()
    }
}

fn fail(kind: FailureKind, detail: String) -> Failure {
    Failure { kind, detail }
}

/// `j > i`, or `j = i` with γ unchanged and a strictly larger aid.
fn progressed(a: &AnnotatedState, b: &AnnotatedState) -> bool {
    let (x, y) = (&a.ann, &b.ann);
    y.i > x.i || (y.i == x.i && y.gamma == x.gamma && x.gamma.get(&x.aid) < x.gamma.get(&y.aid))
}

/// Runs both strategies independently and checks the simulation relation
/// after every atomic sequence, plus progress, regularity, the final-state
/// dichotomy, verdict agreement and clause coincidence.
pub fn lockstep_verify(problem: &Problem, cap: usize) -> VerifyReport {
    let sup = run_sup_mo(problem, cap);
    let scl = run_scl_sup(problem, cap);
    let mut failures = Vec::new();
    let mut events = Vec::new();
    let mut regularity = Vec::new();
    let name = |c: &Clause| problem.clause_name(c);

    match &sup.outcome {
        SupOutcome::CapExceeded => failures.push(fail(
            FailureKind::Run,
            format!("SUP-MO exceeded {cap} inferences"),
        )),
        SupOutcome::Internal(e) => failures.push(fail(
            FailureKind::Run,
            format!("SUP-MO internal error: {e}"),
        )),
        _ => {}
    }
    let run = match &scl {
        Ok(run) => run,
        Err(e) => {
            failures.push(fail(FailureKind::Run, format!("SCL-SUP failed: {e}")));
            return VerifyReport {
                sup,
                scl,
                events,
                regularity,
                failures,
            };
        }
    };

    let states = std::iter::once(&run.initial).chain(run.sequences.iter().map(|q| &q.after));
    let mut prev: Option<&AnnotatedState> = None;
    for (k, s) in states.enumerate() {
        let progress = prev.map(|p| progressed(p, s));
        if progress == Some(false) {
            failures.push(fail(
                FailureKind::Progress,
                format!("no progress in atomic sequence {k}"),
            ));
        }
        match check_invariants(s, &sup, problem) {
            Ok(report) => {
                for (inv, witness) in report.failures() {
                    failures.push(fail(
                        FailureKind::Invariant,
                        format!("after sequence {k}: ({inv}) {witness}"),
                    ));
                }
                events.push(VerifyEvent {
                    after_seq: k,
                    invariants: report,
                    progress,
                });
            }
            Err(e) => failures.push(fail(
                FailureKind::Invariant,
                format!("after sequence {k}: {e}"),
            )),
        }
        prev = Some(s);
    }

    let steps: Vec<_> = run.steps().cloned().collect();
    regularity = audit_regular(&run.initial.scl, &steps);
    if !regularity.is_empty() {
        failures.push(fail(
            FailureKind::Regularity,
            format!("run is not regular: {regularity:?}"),
        ));
    }

    // Verdicts.
    let fin = run.final_state();
    match (&sup.outcome, &run.outcome) {
        (SupOutcome::Unsatisfiable, SclSupOutcome::Unsatisfiable) => {}
        (SupOutcome::Satisfiable(m), SclSupOutcome::Satisfiable(t)) => {
            for c in problem.clauses().iter() {
                if !crate::semantics::eval_herbrand(m, c) {
                    failures.push(fail(
                        FailureKind::Verdict,
                        format!("N_I falsifies {}", name(c)),
                    ));
                }
                if !crate::semantics::eval_herbrand(t, c) {
                    failures.push(fail(
                        FailureKind::Verdict,
                        format!("trail model falsifies {}", name(c)),
                    ));
                }
            }
        }
        (a, b) => failures.push(fail(
            FailureKind::Verdict,
            format!("verdicts differ: SUP-MO {a:?}, SCL-SUP {b:?}"),
        )),
    }

    // Final-state dichotomy.
    let t = fin.scl.trail();
    let refuted = fin.scl.status() == &SclStatus::Bottom
        && t.is_empty()
        && fin.ann.i < sup.num_states()
        && sup.state(fin.ann.i).contains(&Clause::bottom());
    let satisfied = problem.clauses().iter().all(|c| t.satisfies(c));
    if !refuted && !satisfied {
        failures.push(fail(
            FailureKind::Dichotomy,
            "final state is neither a refutation nor a model of N^0".into(),
        ));
    }
    if fin.ann.i + 1 != sup.num_states() {
        failures.push(fail(
            FailureKind::Dichotomy,
            format!(
                "final annotation index {} but SUP-MO performed {} inferences",
                fin.ann.i,
                sup.inferences.len()
            ),
        ));
    }

    // Coincidence.
    let sup_final: BTreeSet<Clause> = sup.final_state().iter().map(Clause::sfac).collect();
    let learned = run.learned();
    for c in &learned {
        if !sup_final.contains(&c.sfac()) {
            failures.push(fail(
                FailureKind::Coincidence,
                format!("learned {} has no SUP-MO counterpart", name(c)),
            ));
        }
    }
    let derived_bottom = sup.final_state().iter().any(Clause::is_bottom);
    let learned_bottom = learned.iter().any(Clause::is_bottom);
    if derived_bottom != learned_bottom {
        failures.push(fail(
            FailureKind::Coincidence,
            format!("⊥ derived by SUP-MO: {derived_bottom}, by SCL-SUP: {learned_bottom}"),
        ));
    }
    let gamma = &fin.ann.gamma;
    let fin_e = match fin.scl.status() {
        SclStatus::Top => None,
        SclStatus::Bottom => Some(Clause::bottom()),
        SclStatus::Conflict(c) => Some(c.clone()),
    };
    let covers: Vec<&Clause> = fin.scl.clauses().chain(fin_e.as_ref()).collect();
    for c in sup.conclusions() {
        let ok = covers
            .iter()
            .any(|c2| gamma.get(c2) <= c && entails(std::slice::from_ref(*c2), c).unwrap_or(false));
        if !ok {
            failures.push(fail(
                FailureKind::Coincidence,
                format!("SUP-MO conclusion {} is not covered by SCL-SUP", name(c)),
            ));
        }
    }

    VerifyReport {
        sup,
        scl,
        events,
        regularity,
        failures,
    }
}
