//! Exhaustive satisfiability, entailment and redundancy checks over total
//! assignments of the occurring atoms.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::clause::{AtomId, Clause};

/// Largest atom count the oracles will enumerate (2^20 assignments).
pub const ATOM_BUDGET: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} atoms exceed the oracle budget of {ATOM_BUDGET}")]
    BudgetExceeded(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatResult {
    Sat(BTreeSet<AtomId>),
    Unsat,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat(_))
    }
}

/// Clauses over bit positions: true under `m` iff `pos & m != 0` or
/// `neg & !m != 0`.
struct Masks {
    atoms: Vec<AtomId>,
    clauses: Vec<(u32, u32)>,
}

impl Masks {
    fn new<'a>(clauses: impl IntoIterator<Item = &'a Clause> + Clone) -> Result<Self, OracleError> {
        let atoms: Vec<AtomId> = clauses
            .clone()
            .into_iter()
            .flat_map(|c| c.literals().iter().map(|l| l.atom()))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if atoms.len() > ATOM_BUDGET {
            return Err(OracleError::BudgetExceeded(atoms.len()));
        }
        let bit: HashMap<AtomId, u32> = atoms
            .iter()
            .enumerate()
            .map(|(i, &a)| (a, 1u32 << i))
            .collect();
        let clauses = clauses
            .into_iter()
            .map(|c| {
                c.literals().iter().fold((0, 0), |(p, n), l| {
                    if l.is_positive() {
                        (p | bit[&l.atom()], n)
                    } else {
                        (p, n | bit[&l.atom()])
                    }
                })
            })
            .collect();
        Ok(Masks { atoms, clauses })
    }

    fn assignments(&self) -> impl Iterator<Item = u32> {
        0..(1u32 << self.atoms.len())
    }

    fn model(&self, m: u32) -> BTreeSet<AtomId> {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| m >> i & 1 == 1)
            .map(|(_, &a)| a)
            .collect()
    }
}

fn holds((pos, neg): (u32, u32), m: u32) -> bool {
    pos & m != 0 || neg & !m != 0
}

pub fn brute_force_sat(n: &[Clause]) -> Result<SatResult, OracleError> {
    let masks = Masks::new(n)?;
    Ok(masks
        .assignments()
        .find(|&m| masks.clauses.iter().all(|&c| holds(c, m)))
        .map_or(SatResult::Unsat, |m| SatResult::Sat(masks.model(m))))
}

/// `n ⊨ c`: no total assignment satisfies `n` and falsifies `c`.
pub fn entails(n: &[Clause], c: &Clause) -> Result<bool, OracleError> {
    let masks = Masks::new(n.iter().chain(std::iter::once(c)))?;
    let (target, premises) = masks.clauses.split_last().expect("target clause");
    Ok(!masks
        .assignments()
        .any(|m| !holds(*target, m) && premises.iter().all(|&p| holds(p, m))))
}

/// `N^{⪯C} ⊨ C`.
pub fn is_redundant(c: &Clause, n: &[Clause]) -> Result<bool, OracleError> {
    let below: Vec<Clause> = n.iter().filter(|d| *d <= c).cloned().collect();
    entails(&below, c)
}
