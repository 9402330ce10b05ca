use std::collections::BTreeSet;
use std::sync::Arc;

use super::{AnnotatedState, Annotation, AtomicSequence, SeqKind, SimError};
use crate::clause::{AtomId, Clause, Lit};
use crate::ordering::GammaMap;
use crate::problem::Problem;
use crate::scl::{Justification, SclState, SclStatus, SclStep};
use crate::semantics::{status_under_assignment, Truth};

/// `(ε; N^0; ∅; β; 0; ⊤)` annotated with `(0, ⊥, γ0)`, where γ0 maps a
/// clause to its factorized form when that form is itself an input clause.
pub fn initial_state(problem: &Problem) -> AnnotatedState {
    let n = problem.clauses();
    let mut gamma = GammaMap::identity();
    for c in n.iter() {
        let f = c.sfac();
        if f != *c && n.contains(&f) {
            gamma.factorize(c);
        }
    }
    AnnotatedState {
        scl: SclState::new(Arc::new(n.clone()), problem.atoms().beta()),
        ann: Annotation {
            i: 0,
            aid: Clause::bottom(),
            gamma,
        },
    }
}

/// `≺_γ` with ties between distinct clauses of equal γ-image broken by the
/// clause order, so that selections are deterministic.
fn gamma_key<'a>(gamma: &'a GammaMap, c: &'a Clause) -> (&'a Clause, &'a Clause) {
    (gamma.get(c), c)
}

/// The `≺_γ`-smallest clause of `N^0 ∪ U` strictly above the current aid.
pub fn next_decision_aid(s: &AnnotatedState) -> Option<Clause> {
    let g = &s.ann.gamma;
    let floor = g.get(&s.ann.aid);
    s.scl
        .clauses()
        .filter(|d| g.get(d) > floor)
        .min_by(|a, b| gamma_key(g, a).cmp(&gamma_key(g, b)))
        .cloned()
}

/// `¬A` for every undefined atom `A` of `N^0 ∪ U` with `A ≺ l`, ascending.
pub fn pending_negative_decisions(s: &AnnotatedState, l: Lit) -> Vec<Lit> {
    let atoms: BTreeSet<AtomId> = s
        .scl
        .clauses()
        .flat_map(|c| c.literals().iter().map(|x| x.atom()))
        .collect();
    atoms
        .into_iter()
        .filter(|&a| Lit::pos(a) < l && !s.scl.trail().is_defined(a))
        .map(Lit::neg)
        .collect()
}

/// Applies steps to a state and records them.
struct Recorder<'a> {
    s: &'a mut AnnotatedState,
    steps: Vec<SclStep>,
}

impl Recorder<'_> {
    fn apply(&mut self, step: SclStep) -> Result<(), SimError> {
        self.s.scl.apply(&step).map_err(|error| SimError::Rule {
            rule: step.name(),
            error,
        })?;
        self.steps.push(step);
        Ok(())
    }

    fn scl(&self) -> &SclState {
        &self.s.scl
    }

    /// The `≺_γ`-smallest clause of `N^0 ∪ U` false once `extra` is added
    /// to the trail.
    fn smallest_false_with(&self, extra: Lit, gamma: &GammaMap) -> Option<Clause> {
        let mut a = self.scl().trail().assignment().clone();
        a.assign(extra);
        self.scl()
            .clauses()
            .filter(|c| status_under_assignment(&a, c) == Truth::False)
            .min_by(|x, y| gamma_key(gamma, x).cmp(&gamma_key(gamma, y)))
            .cloned()
    }

    fn smallest_false(&self, gamma: &GammaMap) -> Option<Clause> {
        let t = self.scl().trail();
        self.scl()
            .clauses()
            .filter(|c| t.falsifies(c))
            .min_by(|x, y| gamma_key(gamma, x).cmp(&gamma_key(gamma, y)))
            .cloned()
    }
}

fn precondition(ok: bool, msg: impl FnOnce() -> String) -> Result<(), SimError> {
    if ok {
        Ok(())
    } else {
        Err(SimError::Precondition(msg()))
    }
}

/// Part 1: extend the trail to mirror the model construction up to the
/// next decision aid.
pub fn atomic_part1(s: &mut AnnotatedState) -> Result<AtomicSequence, SimError> {
    precondition(s.scl.status() == &SclStatus::Top, || {
        "part 1 needs status ⊤".into()
    })?;
    let d = next_decision_aid(s).ok_or(SimError::NoDecisionAid)?;
    let l = d.max_literal().expect("⊥ is never a decision aid");
    let before = s.clone();
    let mut r = Recorder {
        s,
        steps: Vec::new(),
    };
    for lit in pending_negative_decisions(r.s, l) {
        r.apply(SclStep::Decide { lit })?;
    }
    let gamma = r.s.ann.gamma.clone();
    let kind = if l.is_positive() && !r.scl().trail().satisfies(&d) {
        let j0 = gamma.get(&d).count(l) - 1;
        let gamma2 = gamma.with_factorized(&d);
        let kind = match r.smallest_false_with(l, &gamma2) {
            None => {
                r.apply(SclStep::Decide { lit: l })?;
                SeqKind::P1Decide
            }
            Some(e) => {
                r.apply(SclStep::Propagate {
                    clause: d.clone(),
                    lit: l,
                })?;
                r.apply(SclStep::Conflict { clause: e })?;
                SeqKind::P1PropagateConflict
            }
        };
        r.s.ann = Annotation {
            i: r.s.ann.i + j0,
            aid: d,
            gamma: gamma2,
        };
        kind
    } else {
        r.s.ann.aid = d;
        SeqKind::P1NoRule
    };
    let steps = r.steps;
    Ok(AtomicSequence {
        kind,
        steps,
        before,
        after: s.clone(),
    })
}

/// Part 2: resolve the conflict on its maximal literal, then either finish
/// with ⊥ or backtrack, learn, and re-establish the model on the trail.
pub fn atomic_part2(s: &mut AnnotatedState) -> Result<AtomicSequence, SimError> {
    let SclStatus::Conflict(e) = s.scl.status().clone() else {
        return Err(SimError::Precondition(
            "part 2 needs a conflict clause".into(),
        ));
    };
    let entries = s.scl.trail().entries();
    let (top, rest) = entries
        .split_last()
        .ok_or_else(|| SimError::Precondition("empty trail in conflict".into()))?;
    precondition(
        matches!(top.just, Justification::Propagation(_)) && top.lit.is_positive(),
        || "topmost literal is not a positive propagation".into(),
    )?;
    let b = top.lit;
    let l = e.max_literal().expect("conflict clause is not ⊥");
    precondition(l == b.complement(), || {
        "conflict clause's maximal literal is not the complement of the topmost literal".into()
    })?;
    precondition(rest.iter().all(|x| x.is_decision()), || {
        "trail below the topmost literal holds a propagation".into()
    })?;
    precondition(
        rest.windows(2).all(|w| w[0].lit.atom() < w[1].lit.atom()),
        || "trail atoms are not ascending".into(),
    )?;

    let before = s.clone();
    let j0 = e.count(l);
    let mut r = Recorder {
        s,
        steps: Vec::new(),
    };
    for _ in 0..j0 {
        r.apply(SclStep::Resolve)?;
    }
    let j = r.s.ann.i + j0;
    let gamma = r.s.ann.gamma.clone();

    let kind = match r.scl().status().clone() {
        SclStatus::Bottom => {
            while !r.scl().trail().is_empty() {
                r.apply(SclStep::Skip)?;
            }
            r.s.ann = Annotation {
                i: j,
                aid: Clause::bottom(),
                gamma,
            };
            SeqKind::P2Refutation
        }
        SclStatus::Conflict(e2) => {
            let l1 = e2.max_literal().expect("nonempty");
            while r.scl().trail().top().map(|t| t.lit) != Some(l1.complement()) {
                r.apply(SclStep::Skip)?;
            }
            r.apply(SclStep::Backtrack)?;
            let b1 = Lit::pos(l1.atom());
            if l1.is_negative() {
                let d = r
                    .scl()
                    .clauses()
                    .filter(|c| c.max_literal() == Some(b1) && !r.scl().trail().satisfies(c))
                    .min_by(|x, y| gamma_key(&gamma, x).cmp(&gamma_key(&gamma, y)))
                    .cloned()
                    .ok_or_else(|| {
                        SimError::Precondition(
                            "no clause can propagate the backtracked atom".into(),
                        )
                    })?;
                r.apply(SclStep::Propagate {
                    clause: d.clone(),
                    lit: b1,
                })?;
                r.apply(SclStep::Conflict { clause: e2 })?;
                r.s.ann = Annotation {
                    i: j,
                    aid: d,
                    gamma,
                };
                SeqKind::P2Propagate
            } else {
                let j1 = e2.count(b1) - 1;
                let gamma2 = gamma.with_factorized(&e2);
                let kind = match r.smallest_false_with(b1, &gamma2) {
                    None => {
                        r.apply(SclStep::Decide { lit: b1 })?;
                        SeqKind::P2Decide
                    }
                    Some(_) => {
                        r.apply(SclStep::Propagate {
                            clause: e2.clone(),
                            lit: b1,
                        })?;
                        let e3 = r.smallest_false(&gamma2).expect("probed false clause");
                        r.apply(SclStep::Conflict { clause: e3 })?;
                        SeqKind::P2PropagateConflict
                    }
                };
                r.s.ann = Annotation {
                    i: j + j1,
                    aid: e2,
                    gamma: gamma2,
                };
                kind
            }
        }
        SclStatus::Top => unreachable!("Resolve keeps a conflict"),
    };
    let steps = r.steps;
    Ok(AtomicSequence {
        kind,
        steps,
        before,
        after: s.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SclSupOutcome {
    /// True atoms of a trail satisfying `N^0`.
    Satisfiable(BTreeSet<AtomId>),
    Unsatisfiable,
}

#[derive(Debug, Clone)]
pub struct SclSupRun {
    pub initial: AnnotatedState,
    pub sequences: Vec<AtomicSequence>,
    pub outcome: SclSupOutcome,
}

impl SclSupRun {
    pub fn final_state(&self) -> &AnnotatedState {
        self.sequences.last().map_or(&self.initial, |q| &q.after)
    }

    /// Learned clauses in order, followed by ⊥ when the run refuted `N^0`.
    pub fn learned(&self) -> Vec<Clause> {
        let mut out: Vec<Clause> = self.final_state().scl.u().iter().cloned().collect();
        if self.outcome == SclSupOutcome::Unsatisfiable {
            out.push(Clause::bottom());
        }
        out
    }

    pub fn steps(&self) -> impl Iterator<Item = &SclStep> {
        self.sequences.iter().flat_map(|q| q.steps.iter())
    }
}

/// Runs SCL-SUP from the start state until a final state. `cap` bounds the
/// number of atomic sequences.
pub fn run_scl_sup(problem: &Problem, cap: usize) -> Result<SclSupRun, SimError> {
    let initial = initial_state(problem);
    let mut s = initial.clone();
    let mut sequences = Vec::new();
    let outcome = loop {
        let seq = match s.scl.status() {
            SclStatus::Bottom => break SclSupOutcome::Unsatisfiable,
            SclStatus::Conflict(_) => atomic_part2(&mut s)?,
            SclStatus::Top => {
                if next_decision_aid(&s).is_some() {
                    atomic_part1(&mut s)?
                } else if problem.clauses().iter().all(|c| s.scl.trail().satisfies(c)) {
                    break SclSupOutcome::Satisfiable(s.scl.trail().assignment().true_atoms());
                } else {
                    return Err(SimError::Stuck(
                        "no decision aid left but the trail does not satisfy N^0".into(),
                    ));
                }
            }
        };
        sequences.push(seq);
        if sequences.len() > cap {
            return Err(SimError::CapExceeded(cap));
        }
    };
    Ok(SclSupRun {
        initial,
        sequences,
        outcome,
    })
}
