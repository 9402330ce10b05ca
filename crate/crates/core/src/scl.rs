//! Ground SCL(FOL): annotated trails, the seven rules with their guards,
//! literal and clause levels, and a regularity audit for recorded runs.
//!
//! All inputs are ground, so every unifier in the rules is the identity and
//! "closures" are plain clauses.

use std::sync::Arc;

use thiserror::Error;

use crate::clause::{AtomId, Clause, ClauseSet, Lit};
use crate::ordering::AtomTable;
use crate::semantics::{status_under_assignment, PartialAssignment, Truth};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    /// A decision and its level.
    Decision(usize),
    /// A propagation and the clause `C0 ∨ L` that forced it.
    Propagation(Clause),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrailEntry {
    pub lit: Lit,
    pub just: Justification,
}

impl TrailEntry {
    pub fn is_decision(&self) -> bool {
        matches!(self.just, Justification::Decision(_))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trail {
    entries: Vec<TrailEntry>,
    /// Level of each entry: number of decisions at or before it.
    levels: Vec<usize>,
    values: PartialAssignment,
}

impl Trail {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[TrailEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn top(&self) -> Option<&TrailEntry> {
        self.entries.last()
    }

    pub fn decisions(&self) -> usize {
        self.levels.last().copied().unwrap_or(0)
    }

    pub fn assignment(&self) -> &PartialAssignment {
        &self.values
    }

    pub fn value(&self, lit: Lit) -> Truth {
        self.values.lit_value(lit)
    }

    pub fn is_defined(&self, a: AtomId) -> bool {
        self.values.is_defined(a)
    }

    pub fn status(&self, c: &Clause) -> Truth {
        status_under_assignment(&self.values, c)
    }

    pub fn satisfies(&self, c: &Clause) -> bool {
        self.status(c) == Truth::True
    }

    pub fn falsifies(&self, c: &Clause) -> bool {
        self.status(c) == Truth::False
    }

    pub fn lits(&self) -> impl Iterator<Item = Lit> + '_ {
        self.entries.iter().map(|e| e.lit)
    }

    fn push(&mut self, lit: Lit, just: Justification) {
        let level = self.decisions() + usize::from(matches!(just, Justification::Decision(_)));
        self.values.assign(lit);
        self.entries.push(TrailEntry { lit, just });
        self.levels.push(level);
    }

    fn pop(&mut self) -> Option<TrailEntry> {
        let e = self.entries.pop()?;
        self.levels.pop();
        self.values.unset(e.lit.atom());
        Some(e)
    }

    /// Level of the literal on `atom`, if defined.
    fn atom_level(&self, a: AtomId) -> Option<usize> {
        self.entries
            .iter()
            .position(|e| e.lit.atom() == a)
            .map(|p| self.levels[p])
    }
}

/// Level of the rightmost decision at or left of `lit` (or its complement);
/// zero without one.
pub fn literal_level(trail: &Trail, lit: Lit) -> Result<usize, SclError> {
    trail
        .atom_level(lit.atom())
        .ok_or(SclError::UndefinedLiteral(lit))
}

/// Maximal literal level of `c`; ⊥ has level 0.
pub fn clause_level(trail: &Trail, c: &Clause) -> Result<usize, SclError> {
    c.literals()
        .iter()
        .map(|&l| literal_level(trail, l))
        .try_fold(0, |m, l| Ok(m.max(l?)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SclStatus {
    Top,
    Bottom,
    Conflict(Clause),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SclError {
    #[error("rule needs status ⊤")]
    NotTop,
    #[error("rule needs a conflict clause")]
    NoConflict,
    #[error("clause {0:?} is not in N ∪ U")]
    NotInClauseSet(Clause),
    #[error("literal {0:?} does not occur in the clause")]
    LiteralNotInClause(Lit),
    #[error("the rest of the clause is not false under the trail")]
    ResidualNotFalse,
    #[error("literal {0:?} is already defined")]
    LiteralDefined(Lit),
    #[error("atom {0:?} is not below β")]
    NotBelowBeta(AtomId),
    #[error("atom {0:?} does not occur in N ∪ U")]
    AtomNotOccurring(AtomId),
    #[error("clause {0:?} is not false under the trail")]
    ClauseNotFalse(Clause),
    #[error("the trail is empty")]
    EmptyTrail,
    #[error("complement of the topmost literal occurs in the conflict clause")]
    SkipBlocked,
    #[error("conflict clause has no duplicate literal")]
    NoDuplicate,
    #[error("topmost trail literal is not a propagation")]
    TopNotPropagation,
    #[error("complement of the topmost literal does not occur in the conflict clause")]
    ComplementMismatch,
    #[error("topmost trail literal is not a decision")]
    TopNotDecision,
    #[error("rest of the conflict clause has level {level}, not below {k}")]
    LevelNotBelow { level: usize, k: usize },
    #[error("clause {0:?} was already learned")]
    AlreadyLearned(Clause),
    #[error("literal {0:?} is undefined on the trail")]
    UndefinedLiteral(Lit),
}

/// One rule application with its ground parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SclStep {
    Propagate { clause: Clause, lit: Lit },
    Decide { lit: Lit },
    Conflict { clause: Clause },
    Skip,
    Factorize,
    Resolve,
    Backtrack,
}

impl SclStep {
    pub fn name(&self) -> &'static str {
        match self {
            SclStep::Propagate { .. } => "Propagate",
            SclStep::Decide { .. } => "Decide",
            SclStep::Conflict { .. } => "Conflict",
            SclStep::Skip => "Skip",
            SclStep::Factorize => "Factorize",
            SclStep::Resolve => "Resolve",
            SclStep::Backtrack => "Backtrack",
        }
    }

    pub fn render(&self, table: &AtomTable) -> String {
        match self {
            SclStep::Propagate { clause, lit } => format!(
                "Propagate {} from {}",
                table.lit_name(*lit),
                table.clause_name(clause)
            ),
            SclStep::Decide { lit } => format!("Decide {}", table.lit_name(*lit)),
            SclStep::Conflict { clause } => format!("Conflict {}", table.clause_name(clause)),
            other => other.name().to_string(),
        }
    }
}

/// `(Γ; N; U; β; k; status)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SclState {
    trail: Trail,
    n: Arc<ClauseSet>,
    u: ClauseSet,
    beta: AtomId,
    status: SclStatus,
    /// Atoms occurring in N ∪ U.
    occurs: Vec<bool>,
}

impl SclState {
    /// The start state `(ε; N; ∅; β; 0; ⊤)`.
    pub fn new(n: Arc<ClauseSet>, beta: AtomId) -> Self {
        let mut occurs = vec![false; beta.index()];
        for c in n.iter() {
            for l in c.literals() {
                if let Some(o) = occurs.get_mut(l.atom().index()) {
                    *o = true;
                }
            }
        }
        SclState {
            trail: Trail::new(),
            n,
            u: ClauseSet::new(),
            beta,
            status: SclStatus::Top,
            occurs,
        }
    }

    pub fn trail(&self) -> &Trail {
        &self.trail
    }

    pub fn n(&self) -> &ClauseSet {
        &self.n
    }

    pub fn u(&self) -> &ClauseSet {
        &self.u
    }

    pub fn beta(&self) -> AtomId {
        self.beta
    }

    /// Decision count.
    pub fn k(&self) -> usize {
        self.trail.decisions()
    }

    pub fn status(&self) -> &SclStatus {
        &self.status
    }

    pub fn conflict_clause(&self) -> Option<&Clause> {
        match &self.status {
            SclStatus::Conflict(c) => Some(c),
            _ => None,
        }
    }

    /// Clauses of N followed by those of U.
    pub fn clauses(&self) -> impl Iterator<Item = &Clause> {
        self.n.iter().chain(self.u.iter())
    }

    pub fn contains_clause(&self, c: &Clause) -> bool {
        self.n.contains(c) || self.u.contains(c)
    }

    pub fn atom_occurs(&self, a: AtomId) -> bool {
        self.occurs.get(a.index()).copied().unwrap_or(false)
    }

    /// Some clause of N ∪ U false under the trail, if status is ⊤.
    pub fn conflict_candidate(&self) -> Option<&Clause> {
        if self.status != SclStatus::Top {
            return None;
        }
        self.clauses().find(|c| self.trail.falsifies(c))
    }

    pub fn conflict_applicable(&self) -> bool {
        self.conflict_candidate().is_some()
    }

    fn require_top(&self) -> Result<(), SclError> {
        if self.status == SclStatus::Top {
            Ok(())
        } else {
            Err(SclError::NotTop)
        }
    }

    fn require_member(&self, c: &Clause) -> Result<(), SclError> {
        if self.contains_clause(c) {
            Ok(())
        } else {
            Err(SclError::NotInClauseSet(c.clone()))
        }
    }

    fn require_below_beta(&self, c: &Clause) -> Result<(), SclError> {
        match c.literals().iter().find(|l| l.atom() >= self.beta) {
            Some(l) => Err(SclError::NotBelowBeta(l.atom())),
            None => Ok(()),
        }
    }

    pub fn propagate(&mut self, clause: &Clause, lit: Lit) -> Result<(), SclError> {
        self.require_top()?;
        self.require_member(clause)?;
        if !clause.contains(lit) {
            return Err(SclError::LiteralNotInClause(lit));
        }
        let c0 = clause.remove_all(lit);
        if !self.trail.falsifies(&c0) {
            return Err(SclError::ResidualNotFalse);
        }
        if self.trail.is_defined(lit.atom()) {
            return Err(SclError::LiteralDefined(lit));
        }
        self.require_below_beta(clause)?;
        let just = c0.union(&Clause::new(vec![lit]));
        self.trail.push(lit, Justification::Propagation(just));
        Ok(())
    }

    pub fn decide(&mut self, lit: Lit) -> Result<(), SclError> {
        self.require_top()?;
        if lit.atom() >= self.beta {
            return Err(SclError::NotBelowBeta(lit.atom()));
        }
        if !self.atom_occurs(lit.atom()) {
            return Err(SclError::AtomNotOccurring(lit.atom()));
        }
        if self.trail.is_defined(lit.atom()) {
            return Err(SclError::LiteralDefined(lit));
        }
        let level = self.k() + 1;
        self.trail.push(lit, Justification::Decision(level));
        Ok(())
    }

    pub fn conflict(&mut self, clause: &Clause) -> Result<(), SclError> {
        self.require_top()?;
        self.require_member(clause)?;
        if !self.trail.falsifies(clause) {
            return Err(SclError::ClauseNotFalse(clause.clone()));
        }
        self.status = if clause.is_bottom() {
            SclStatus::Bottom
        } else {
            SclStatus::Conflict(clause.clone())
        };
        Ok(())
    }

    /// Pops the topmost literal when its complement is not in the conflict
    /// clause. Also applies to ⊥.
    pub fn skip(&mut self) -> Result<(), SclError> {
        let top = self.trail.top().ok_or(SclError::EmptyTrail)?;
        match &self.status {
            SclStatus::Top => return Err(SclError::NoConflict),
            SclStatus::Conflict(c) if c.contains(top.lit.complement()) => {
                return Err(SclError::SkipBlocked)
            }
            _ => {}
        }
        self.trail.pop();
        Ok(())
    }

    /// Removes one duplicate of the largest duplicated literal.
    pub fn factorize(&mut self) -> Result<(), SclError> {
        let SclStatus::Conflict(c) = &self.status else {
            return Err(SclError::NoConflict);
        };
        let dup = c
            .literals()
            .windows(2)
            .find(|w| w[0] == w[1])
            .map(|w| w[0])
            .ok_or(SclError::NoDuplicate)?;
        self.status = SclStatus::Conflict(c.remove_one(dup).expect("present"));
        Ok(())
    }

    pub fn resolve(&mut self) -> Result<(), SclError> {
        let SclStatus::Conflict(c) = &self.status else {
            return Err(SclError::NoConflict);
        };
        let top = self.trail.top().ok_or(SclError::EmptyTrail)?;
        let Justification::Propagation(just) = &top.just else {
            return Err(SclError::TopNotPropagation);
        };
        let rest = c
            .remove_one(top.lit.complement())
            .ok_or(SclError::ComplementMismatch)?;
        let side = just
            .remove_one(top.lit)
            .expect("justification contains its literal");
        let resolvent = rest.union(&side);
        self.status = if resolvent.is_bottom() {
            SclStatus::Bottom
        } else {
            SclStatus::Conflict(resolvent)
        };
        Ok(())
    }

    /// Learns the conflict clause and pops the topmost decision.
    ///
    /// The level guard ignores every occurrence of the backtracked literal,
    /// so conflict clauses with a duplicated maximal literal can be learned
    /// without factorizing first.
    pub fn backtrack(&mut self) -> Result<(), SclError> {
        let SclStatus::Conflict(c) = &self.status else {
            return Err(SclError::NoConflict);
        };
        let top = self.trail.top().ok_or(SclError::EmptyTrail)?;
        if !top.is_decision() {
            return Err(SclError::TopNotDecision);
        }
        let l = top.lit.complement();
        if !c.contains(l) {
            return Err(SclError::ComplementMismatch);
        }
        let k = self.k();
        let level = clause_level(&self.trail, &c.remove_all(l))?;
        if level >= k {
            return Err(SclError::LevelNotBelow { level, k });
        }
        if self.u.contains(c) {
            return Err(SclError::AlreadyLearned(c.clone()));
        }
        let learned = c.clone();
        for lit in learned.literals() {
            if let Some(o) = self.occurs.get_mut(lit.atom().index()) {
                *o = true;
            }
        }
        self.u.insert(learned);
        self.trail.pop();
        self.status = SclStatus::Top;
        Ok(())
    }

    pub fn apply(&mut self, step: &SclStep) -> Result<(), SclError> {
        match step {
            SclStep::Propagate { clause, lit } => self.propagate(clause, *lit),
            SclStep::Decide { lit } => self.decide(*lit),
            SclStep::Conflict { clause } => self.conflict(clause),
            SclStep::Skip => self.skip(),
            SclStep::Factorize => self.factorize(),
            SclStep::Resolve => self.resolve(),
            SclStep::Backtrack => self.backtrack(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegularityViolation {
    /// A rule other than Conflict was applied while Conflict was applicable.
    ConflictSkipped { step: usize },
    /// A Decide made Conflict applicable.
    DecideEnablesConflict { step: usize },
    /// The step's guard failed.
    Invalid { step: usize, error: SclError },
}

/// Replays `steps` from `start`; an empty result means the run is regular.
/// Replay stops at the first invalid step.
pub fn audit_regular(start: &SclState, steps: &[SclStep]) -> Vec<RegularityViolation> {
    let mut s = start.clone();
    let mut out = Vec::new();
    for (i, step) in steps.iter().enumerate() {
        let before = s.conflict_applicable();
        if before && !matches!(step, SclStep::Conflict { .. }) {
            out.push(RegularityViolation::ConflictSkipped { step: i });
        }
        if let Err(error) = s.apply(step) {
            out.push(RegularityViolation::Invalid { step: i, error });
            break;
        }
        if matches!(step, SclStep::Decide { .. }) && !before && s.conflict_applicable() {
            out.push(RegularityViolation::DecideEnablesConflict { step: i });
        }
    }
    out
}
