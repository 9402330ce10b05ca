//! Ground superposition without equality: Factoring, Superposition Left,
//! the model operator and the model-operator-driven strategy (SUP-MO).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clause::{AtomId, Clause, ClauseId, ClauseSet};
use crate::problem::Problem;
use crate::semantics::eval_herbrand_with;

pub const DEFAULT_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SupError {
    #[error("Factoring needs a positive maximal literal occurring at least twice")]
    NotFactorable,
    #[error("the maximal literal of the negative premise is not negative")]
    NegativeNotMaximal,
    #[error("the positive premise has no strictly maximal positive literal")]
    PositiveNotStrictlyMaximal,
    #[error("maximal literals are not complementary")]
    NoComplementaryPair,
    #[error("minimal false clause has a negative maximal literal but no producer")]
    NoProducer,
    #[error("conclusion {0:?} is already in the clause set")]
    DuplicateConclusion(Clause),
}

/// The ground instance of Factoring: drops one occurrence of the positive,
/// duplicated maximal literal.
pub fn factoring_step(c: &Clause) -> Result<Clause, SupError> {
    match c.literals() {
        [a, b, ..] if a == b && a.is_positive() => Ok(c.remove_one(*a).expect("present")),
        _ => Err(SupError::NotFactorable),
    }
}

/// Superposition Left between a clause `c` with maximal literal `¬B` and a
/// clause `d` with strictly maximal literal `B`.
pub fn superposition_left(c: &Clause, d: &Clause) -> Result<Clause, SupError> {
    let l = c.max_literal().ok_or(SupError::NegativeNotMaximal)?;
    if !l.is_negative() {
        return Err(SupError::NegativeNotMaximal);
    }
    let b = d
        .max_literal()
        .ok_or(SupError::PositiveNotStrictlyMaximal)?;
    if !b.is_positive() || !d.max_is_strict() {
        return Err(SupError::PositiveNotStrictlyMaximal);
    }
    if b != l.complement() {
        return Err(SupError::NoComplementaryPair);
    }
    Ok(c.remove_one(l)
        .expect("present")
        .union(&d.remove_one(b).expect("present")))
}

/// The model operator run over a clause set in ascending clause order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelConstruction {
    /// Clauses in ascending order.
    clauses: Vec<Clause>,
    /// Produced atom per clause.
    delta: Vec<Option<AtomId>>,
    /// Produced atoms in production order, which is also ascending.
    produced: Vec<AtomId>,
    /// `produced[..produced_before[p]]` is `N_C` for the clause at `p`.
    produced_before: Vec<usize>,
    minimal_false: Option<usize>,
}

impl ModelConstruction {
    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn position(&self, c: &Clause) -> Option<usize> {
        self.clauses.binary_search(c).ok()
    }

    /// `δ_C` for the clause at `pos`.
    pub fn delta_at(&self, pos: usize) -> Option<AtomId> {
        self.delta[pos]
    }

    /// `δ_C`, empty for clauses outside the set.
    pub fn delta(&self, c: &Clause) -> Option<AtomId> {
        self.position(c).and_then(|p| self.delta[p])
    }

    /// Number of produced atoms from clauses strictly below `c`; `c` need
    /// not belong to the set.
    fn produced_below(&self, c: &Clause) -> usize {
        let p = self.clauses.partition_point(|x| x < c);
        if p < self.clauses.len() {
            self.produced_before[p]
        } else {
            self.produced.len()
        }
    }

    /// `N_C`: atoms produced by clauses strictly below `c`.
    pub fn prefix_model(&self, c: &Clause) -> BTreeSet<AtomId> {
        self.produced[..self.produced_below(c)]
            .iter()
            .copied()
            .collect()
    }

    /// `N_C ∪ δ_C`.
    pub fn model_upto(&self, c: &Clause) -> BTreeSet<AtomId> {
        let mut m = self.prefix_model(c);
        m.extend(self.delta(c));
        m
    }

    /// `N_I`.
    pub fn model(&self) -> BTreeSet<AtomId> {
        self.produced.iter().copied().collect()
    }

    pub fn producer(&self, a: AtomId) -> Option<&Clause> {
        self.delta
            .iter()
            .position(|d| *d == Some(a))
            .map(|p| &self.clauses[p])
    }

    pub fn minimal_false(&self) -> Option<&Clause> {
        self.minimal_false.map(|p| &self.clauses[p])
    }
}

pub fn construct_model<'a>(n: impl IntoIterator<Item = &'a Clause>) -> ModelConstruction {
    let mut clauses: Vec<Clause> = n.into_iter().cloned().collect();
    clauses.sort();
    clauses.dedup();
    let mut in_model: Vec<bool> = Vec::new();
    let mut delta = Vec::with_capacity(clauses.len());
    let mut produced = Vec::new();
    let mut produced_before = Vec::with_capacity(clauses.len());
    let mut minimal_false = None;
    for (pos, c) in clauses.iter().enumerate() {
        produced_before.push(produced.len());
        let holds = |a: AtomId| in_model.get(a.index()).copied().unwrap_or(false);
        let true_so_far = eval_herbrand_with(holds, c);
        let d = match c.max_literal() {
            Some(b) if b.is_positive() && c.max_is_strict() && !true_so_far => Some(b.atom()),
            _ => None,
        };
        if let Some(a) = d {
            if in_model.len() <= a.index() {
                in_model.resize(a.index() + 1, false);
            }
            in_model[a.index()] = true;
            produced.push(a);
        } else if !true_so_far && minimal_false.is_none() {
            minimal_false = Some(pos);
        }
        delta.push(d);
    }
    ModelConstruction {
        clauses,
        delta,
        produced,
        produced_before,
        minimal_false,
    }
}

pub fn minimal_false_clause(construction: &ModelConstruction) -> Option<&Clause> {
    construction.minimal_false()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SupRule {
    Factoring,
    SuperpositionLeft,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupInference {
    pub rule: SupRule,
    /// Factoring: the factored clause. Superposition Left: the clause with
    /// the negative maximal literal, then its positive partner.
    pub premises: Vec<ClauseId>,
    pub conclusion: Clause,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupStep {
    Satisfiable(BTreeSet<AtomId>),
    Unsatisfiable,
    Inference(SupInference),
}

/// One step of the strategy on `n`.
pub fn sup_mo_step(n: &ClauseSet) -> Result<SupStep, SupError> {
    step_from(n, &construct_model(n.iter()))
}

fn step_from(n: &ClauseSet, mc: &ModelConstruction) -> Result<SupStep, SupError> {
    let Some(c) = mc.minimal_false() else {
        return Ok(SupStep::Satisfiable(mc.model()));
    };
    let Some(l) = c.max_literal() else {
        return Ok(SupStep::Unsatisfiable);
    };
    let id = |x: &Clause| n.id_of(x).expect("clause from the set");
    let inf = if l.is_negative() {
        let d = mc.producer(l.atom()).ok_or(SupError::NoProducer)?;
        SupInference {
            rule: SupRule::SuperpositionLeft,
            premises: vec![id(c), id(d)],
            conclusion: superposition_left(c, d)?,
        }
    } else {
        SupInference {
            rule: SupRule::Factoring,
            premises: vec![id(c)],
            conclusion: factoring_step(c)?,
        }
    };
    if n.contains(&inf.conclusion) {
        return Err(SupError::DuplicateConclusion(inf.conclusion));
    }
    Ok(SupStep::Inference(inf))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupOutcome {
    Satisfiable(BTreeSet<AtomId>),
    Unsatisfiable,
    CapExceeded,
    /// A step contradicted the strategy's applicability guarantee.
    Internal(SupError),
}

/// A SUP-MO run `N^0 ⇒ N^1 ⇒ … ⇒ N^k`. `N^i` is the first
/// `initial_len + i` clauses of `clauses`.
#[derive(Debug, Clone)]
pub struct SupRun {
    pub clauses: ClauseSet,
    pub initial_len: usize,
    /// Model construction of every visited state.
    pub constructions: Vec<ModelConstruction>,
    pub inferences: Vec<SupInference>,
    pub outcome: SupOutcome,
}

impl SupRun {
    /// Number of states `N^0 … N^k` recorded.
    pub fn num_states(&self) -> usize {
        self.constructions.len()
    }

    pub fn state(&self, i: usize) -> &[Clause] {
        &self.clauses.as_slice()[..self.initial_len + i]
    }

    pub fn final_state(&self) -> &[Clause] {
        self.state(self.num_states() - 1)
    }

    pub fn construction(&self, i: usize) -> &ModelConstruction {
        &self.constructions[i]
    }

    pub fn minimal_false(&self, i: usize) -> Option<&Clause> {
        self.constructions[i].minimal_false()
    }

    pub fn conclusions(&self) -> impl Iterator<Item = &Clause> {
        self.inferences.iter().map(|i| &i.conclusion)
    }

    pub fn is_unsat(&self) -> bool {
        self.outcome == SupOutcome::Unsatisfiable
    }
}

pub fn run_sup_mo(problem: &Problem, cap: usize) -> SupRun {
    let mut clauses = problem.clauses().clone();
    let initial_len = clauses.len();
    let mut constructions = Vec::new();
    let mut inferences = Vec::new();
    let outcome = loop {
        let mc = construct_model(clauses.iter());
        let step = step_from(&clauses, &mc);
        constructions.push(mc);
        match step {
            Ok(SupStep::Satisfiable(m)) => break SupOutcome::Satisfiable(m),
            Ok(SupStep::Unsatisfiable) => break SupOutcome::Unsatisfiable,
            Err(e) => break SupOutcome::Internal(e),
            Ok(SupStep::Inference(inf)) => {
                if inferences.len() >= cap {
                    break SupOutcome::CapExceeded;
                }
                clauses.insert(inf.conclusion.clone());
                inferences.push(inf);
            }
        }
    };
    SupRun {
        clauses,
        initial_len,
        constructions,
        inferences,
        outcome,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::parse_problem;

    fn intro() -> Problem {
        parse_problem("order: kbo\nprec: a < b < P < Q\nclause: P(a) | P(a)\nclause: -P(a) | Q(b)\nclause: -Q(b)\n")
            .unwrap()
    }

    fn example() -> Problem {
        parse_problem(
            "order: lpo\nprec: a < b < P < Q\nclause: P(a)\nclause: -P(b) | Q(a)\nclause: -P(a) | Q(a) | Q(a)\nclause: P(a) | -Q(a)\nclause: -P(a) | -Q(a)\n",
        )
        .unwrap()
    }

    #[test]
    fn sfac_examples() {
        let p = example();
        let c3 = p.clause("-P(a) | Q(a) | Q(a)").unwrap();
        assert_eq!(c3.sfac(), p.clause("-P(a) | Q(a)").unwrap());
        let c7 = p.clause("-P(a) | -P(a)").unwrap();
        assert_eq!(c7.sfac(), c7);
    }

    #[test]
    fn factoring_examples() {
        let p = example();
        let c3 = p.clause("-P(a) | Q(a) | Q(a)").unwrap();
        assert_eq!(factoring_step(&c3), Ok(p.clause("-P(a) | Q(a)").unwrap()));
        let pa = p.clause("P(a)").unwrap();
        assert_eq!(factoring_step(&pa), Err(SupError::NotFactorable));
        assert_eq!(factoring_step(&p.clause("P(a) | P(a)").unwrap()), Ok(pa));
    }

    #[test]
    fn superposition_left_examples() {
        let p = example();
        let c = |s| p.clause(s).unwrap();
        assert_eq!(
            superposition_left(&c("-P(a) | -Q(a)"), &c("-P(a) | Q(a)")),
            Ok(c("-P(a) | -P(a)"))
        );
        assert_eq!(
            superposition_left(&c("-P(a)"), &c("P(a)")),
            Ok(Clause::bottom())
        );
        let q = intro();
        assert_eq!(
            superposition_left(
                &q.clause("-Q(b)").unwrap(),
                &q.clause("-P(a) | Q(b)").unwrap()
            ),
            Ok(q.clause("-P(a)").unwrap())
        );
        assert_eq!(
            superposition_left(&c("-P(a)"), &c("-P(a) | Q(a)")),
            Err(SupError::NoComplementaryPair)
        );
    }

    #[test]
    fn intro_model_is_empty_and_c1_minimal_false() {
        let p = intro();
        let mc = construct_model(p.clauses().iter());
        assert!(mc.model().is_empty());
        assert_eq!(mc.minimal_false(), Some(&p.clause("P(a) | P(a)").unwrap()));
    }

    #[test]
    fn example_model_after_factoring() {
        let p = example();
        let mc = construct_model(p.clauses().iter());
        assert_eq!(
            mc.minimal_false(),
            Some(&p.clause("-P(a) | Q(a) | Q(a)").unwrap())
        );
        let mut n1 = p.clauses().clone();
        let c6 = p.clause("-P(a) | Q(a)").unwrap();
        n1.insert(c6.clone());
        let mc = construct_model(n1.iter());
        let want: BTreeSet<_> = [p.lit("P(a)").unwrap(), p.lit("Q(a)").unwrap()]
            .iter()
            .map(|l| l.atom())
            .collect();
        assert_eq!(mc.model_upto(&c6), want);
        assert_eq!(
            mc.minimal_false(),
            Some(&p.clause("-P(a) | -Q(a)").unwrap())
        );
    }

    #[test]
    fn unit_clause_is_productive() {
        let p = parse_problem("clause: P(a)").unwrap();
        let mc = construct_model(p.clauses().iter());
        let c = p.clause("P(a)").unwrap();
        assert_eq!(mc.delta(&c), Some(AtomId(0)));
        assert_eq!(mc.minimal_false(), None);
        assert_eq!(
            sup_mo_step(p.clauses()),
            Ok(SupStep::Satisfiable(BTreeSet::from([AtomId(0)])))
        );
    }

    #[test]
    fn intro_steps() {
        let p = intro();
        match sup_mo_step(p.clauses()).unwrap() {
            SupStep::Inference(i) => {
                assert_eq!(i.rule, SupRule::Factoring);
                assert_eq!(i.premises, vec![0]);
                assert_eq!(i.conclusion, p.clause("P(a)").unwrap());
            }
            s => panic!("{s:?}"),
        }
        let run = run_sup_mo(&p, DEFAULT_CAP);
        let got: Vec<_> = run.conclusions().cloned().collect();
        let want: Vec<_> = ["P(a)", "-P(a)", ""]
            .iter()
            .map(|s| p.clause(s).unwrap())
            .collect();
        assert_eq!(got, want);
        assert_eq!(run.inferences[1].rule, SupRule::SuperpositionLeft);
        assert_eq!(run.inferences[1].premises, vec![2, 1]);
        assert_eq!(run.outcome, SupOutcome::Unsatisfiable);
        assert_eq!(run.num_states(), 4);
    }

    #[test]
    fn example_run() {
        let p = example();
        let run = run_sup_mo(&p, DEFAULT_CAP);
        let got: Vec<_> = run.conclusions().cloned().collect();
        let want: Vec<_> = ["-P(a) | Q(a)", "-P(a) | -P(a)", "-P(a)", ""]
            .iter()
            .map(|s| p.clause(s).unwrap())
            .collect();
        assert_eq!(got, want);
        assert!(run.is_unsat());
    }

    #[test]
    fn cap_is_respected() {
        let run = run_sup_mo(&intro(), 1);
        assert_eq!(run.outcome, SupOutcome::CapExceeded);
        assert_eq!(run.inferences.len(), 1);
    }
}
