//! Machine-readable run traces as JSON documents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::generate::GenParams;
use crate::clause::{Clause, ClauseId};
use crate::ordering::OrderKind;
use crate::problem::Problem;
use crate::scl::{Justification, SclStatus};
use crate::simulation::{SclSupOutcome, SclSupRun, SimError, VerifyReport, INVARIANT_NAMES};
use crate::superposition::{SupOutcome, SupRule, SupRun};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseRef {
    pub id: ClauseId,
    pub literals: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemDoc {
    pub text: String,
    pub clauses: Vec<ClauseRef>,
    pub atoms: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gen: Option<GenParams>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingDoc {
    pub kind: OrderKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub precedence: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub weights: BTreeMap<String, u32>,
    /// All atoms of the problem, ascending.
    pub atom_order: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupEvent {
    pub step: usize,
    pub rule: SupRule,
    pub premises: Vec<ClauseId>,
    pub conclusion: ClauseRef,
    pub minimal_false: Option<ClauseRef>,
    /// Candidate model `N_I` of the state the inference was drawn from.
    pub model: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrailItem {
    pub lit: String,
    /// `decision:<level>` or the literals of the propagating clause.
    pub just: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotationDoc {
    pub i: usize,
    pub aid: Vec<String>,
    pub gamma: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SclEvent {
    pub seq_kind: String,
    pub rules: Vec<String>,
    pub trail: Vec<TrailItem>,
    pub status: String,
    pub annotation: AnnotationDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyEventDoc {
    pub after_seq: usize,
    pub invariants: BTreeMap<String, bool>,
    pub progress: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sup: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scl: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<Vec<String>>,
    pub sup_inferences: usize,
    pub scl_sequences: usize,
    pub learned: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clean: Option<bool>,
    #[serde(default)]
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub problem: ProblemDoc,
    pub ordering: OrderingDoc,
    pub sup_events: Vec<SupEvent>,
    pub scl_events: Vec<SclEvent>,
    pub verify_events: Vec<VerifyEventDoc>,
    pub outcome: OutcomeDoc,
}

impl TraceDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace documents always serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// What to put in a trace. Any subset of the parts may be present.
#[derive(Default, Clone, Copy)]
pub struct TraceParts<'a> {
    pub gen: Option<&'a GenParams>,
    pub sup: Option<&'a SupRun>,
    pub scl: Option<&'a Result<SclSupRun, SimError>>,
    pub verify: Option<&'a VerifyReport>,
}

pub fn sup_verdict(o: &SupOutcome) -> String {
    match o {
        SupOutcome::Satisfiable(_) => "sat".into(),
        SupOutcome::Unsatisfiable => "unsat".into(),
        SupOutcome::CapExceeded => "cap".into(),
        SupOutcome::Internal(e) => format!("error: {e}"),
    }
}

pub fn scl_verdict(r: &Result<SclSupRun, SimError>) -> String {
    match r {
        Ok(run) => match run.outcome {
            SclSupOutcome::Satisfiable(_) => "sat".into(),
            SclSupOutcome::Unsatisfiable => "unsat".into(),
        },
        Err(e) => format!("error: {e}"),
    }
}

pub fn build_trace(problem: &Problem, parts: TraceParts<'_>) -> TraceDocument {
    let table = problem.atoms();
    let lits = |c: &Clause| table.clause_literals(c);
    let cref = |id: ClauseId, c: &Clause| ClauseRef {
        id,
        literals: lits(c),
    };
    let atom_names = |s: &std::collections::BTreeSet<crate::clause::AtomId>| -> Vec<String> {
        s.iter().map(|&a| table.atom_name(a)).collect()
    };

    let cfg = problem.ordering();
    let ordering = OrderingDoc {
        kind: cfg.kind(),
        precedence: cfg.precedence().to_vec(),
        weights: cfg.explicit_weights().clone(),
        atom_order: table.ids().map(|a| table.atom_name(a)).collect(),
    };
    let problem_doc = ProblemDoc {
        text: problem.to_string(),
        clauses: problem
            .clauses()
            .iter()
            .enumerate()
            .map(|(id, c)| cref(id, c))
            .collect(),
        atoms: ordering.atom_order.clone(),
        gen: parts.gen.cloned(),
    };

    let (sup, scl) = match parts.verify {
        Some(v) => (Some(&v.sup), Some(&v.scl)),
        None => (parts.sup, parts.scl),
    };

    let sup_events = sup.map_or_else(Vec::new, |run| {
        run.inferences
            .iter()
            .enumerate()
            .map(|(k, inf)| {
                let state = run.clauses.as_slice();
                SupEvent {
                    step: k + 1,
                    rule: inf.rule,
                    premises: inf.premises.clone(),
                    conclusion: cref(run.initial_len + k, &inf.conclusion),
                    minimal_false: run.minimal_false(k).map(|c| {
                        let id = state
                            .iter()
                            .position(|x| x == c)
                            .expect("clause of the run");
                        cref(id, c)
                    }),
                    model: atom_names(&run.construction(k).model()),
                }
            })
            .collect()
    });

    let scl_events = match scl {
        Some(Ok(run)) => run
            .sequences
            .iter()
            .map(|q| {
                let s = &q.after;
                SclEvent {
                    seq_kind: q.kind.label().to_string(),
                    rules: q.steps.iter().map(|st| st.render(table)).collect(),
                    trail: s
                        .scl
                        .trail()
                        .entries()
                        .iter()
                        .map(|e| TrailItem {
                            lit: table.lit_name(e.lit),
                            just: match &e.just {
                                Justification::Decision(l) => format!("decision:{l}"),
                                Justification::Propagation(c) => table.clause_name(c),
                            },
                        })
                        .collect(),
                    status: match s.scl.status() {
                        SclStatus::Top => "top".into(),
                        SclStatus::Bottom => "bottom".into(),
                        SclStatus::Conflict(c) => format!("conflict: {}", table.clause_name(c)),
                    },
                    annotation: AnnotationDoc {
                        i: s.ann.i,
                        aid: lits(&s.ann.aid),
                        gamma: s
                            .ann
                            .gamma
                            .entries()
                            .map(|(c, img)| [table.clause_name(c), table.clause_name(img)])
                            .collect(),
                    },
                }
            })
            .collect(),
        _ => Vec::new(),
    };

    let verify_events = parts.verify.map_or_else(Vec::new, |v| {
        v.events
            .iter()
            .map(|e| VerifyEventDoc {
                after_seq: e.after_seq,
                invariants: INVARIANT_NAMES
                    .iter()
                    .enumerate()
                    .map(|(k, n)| (n.to_string(), e.invariants.passed(k)))
                    .collect(),
                progress: e.progress,
            })
            .collect()
    });

    let model = match (sup.map(|r| &r.outcome), scl) {
        (Some(SupOutcome::Satisfiable(m)), _) => Some(atom_names(m)),
        (
            _,
            Some(Ok(SclSupRun {
                outcome: SclSupOutcome::Satisfiable(m),
                ..
            })),
        ) => Some(atom_names(m)),
        _ => None,
    };
    let outcome = OutcomeDoc {
        sup: sup.map(|r| sup_verdict(&r.outcome)),
        scl: scl.map(scl_verdict),
        model,
        sup_inferences: sup.map_or(0, |r| r.inferences.len()),
        scl_sequences: scl_events.len(),
        learned: match scl {
            Some(Ok(run)) => run.learned().iter().map(lits).collect(),
            _ => Vec::new(),
        },
        clean: parts.verify.map(VerifyReport::is_clean),
        failures: parts.verify.map_or_else(Vec::new, |v| {
            v.failures
                .iter()
                .map(|f| format!("{:?}: {}", f.kind, f.detail))
                .collect()
        }),
    };

    TraceDocument {
        problem: problem_doc,
        ordering,
        sup_events,
        scl_events,
        verify_events,
        outcome,
    }
}
