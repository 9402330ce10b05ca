//! Interned ground clauses.
//!
//! Atoms of a problem are numbered by their rank in the active atom order,
//! so comparing [`AtomId`]s *is* comparing atoms. A [`Lit`] packs the rank
//! and the sign with the negative literal one above the positive one,
//! which makes the derived ordering on literals the lifted literal order.
//! Clauses keep their literals sorted descending; with a total literal
//! order the multiset extension then coincides with lexicographic
//! comparison of those sequences.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// Rank of an atom in the atom order of its problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomId(pub u32);

impl AtomId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A literal over an interned atom.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn new(atom: AtomId, positive: bool) -> Self {
        Lit(atom.0 << 1 | u32::from(!positive))
    }

    pub fn pos(atom: AtomId) -> Self {
        Lit::new(atom, true)
    }

    pub fn neg(atom: AtomId) -> Self {
        Lit::new(atom, false)
    }

    pub fn atom(self) -> AtomId {
        AtomId(self.0 >> 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn is_negative(self) -> bool {
        !self.is_positive()
    }

    pub fn complement(self) -> Self {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negative() {
            f.write_str("-")?;
        }
        write!(f, "#{}", self.atom().0)
    }
}

/// A ground clause: a multiset of literals, stored sorted descending.
///
/// The empty clause is ⊥.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    pub fn new(mut lits: Vec<Lit>) -> Self {
        lits.sort_unstable_by(|a, b| b.cmp(a));
        Clause { lits }
    }

    pub fn bottom() -> Self {
        Clause { lits: Vec::new() }
    }

    pub fn is_bottom(&self) -> bool {
        self.lits.is_empty()
    }

    /// Literals in descending order, duplicates included.
    pub fn literals(&self) -> &[Lit] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn max_literal(&self) -> Option<Lit> {
        self.lits.first().copied()
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.lits.contains(&lit)
    }

    pub fn count(&self, lit: Lit) -> usize {
        self.lits.iter().filter(|&&l| l == lit).count()
    }

    /// The maximal literal occurs exactly once.
    pub fn max_is_strict(&self) -> bool {
        match self.lits.as_slice() {
            [] => false,
            [_] => true,
            [a, b, ..] => a != b,
        }
    }

    pub fn atoms(&self) -> BTreeSet<AtomId> {
        self.lits.iter().map(|l| l.atom()).collect()
    }

    pub fn is_tautology(&self) -> bool {
        self.lits
            .windows(2)
            .any(|w| w[0].atom() == w[1].atom() && w[0] != w[1])
    }

    /// Removes one occurrence of `lit`; `None` when it does not occur.
    pub fn remove_one(&self, lit: Lit) -> Option<Clause> {
        let pos = self.lits.iter().position(|&l| l == lit)?;
        let mut lits = self.lits.clone();
        lits.remove(pos);
        Some(Clause { lits })
    }

    /// Removes every occurrence of `lit`.
    pub fn remove_all(&self, lit: Lit) -> Clause {
        Clause {
            lits: self.lits.iter().copied().filter(|&l| l != lit).collect(),
        }
    }

    /// Multiset union.
    pub fn union(&self, other: &Clause) -> Clause {
        let mut lits = Vec::with_capacity(self.len() + other.len());
        lits.extend_from_slice(&self.lits);
        lits.extend_from_slice(&other.lits);
        Clause::new(lits)
    }

    /// Exhaustive superposition factoring: while the maximal literal is
    /// positive and occurs more than once, drop one occurrence.
    pub fn sfac(&self) -> Clause {
        let mut lits = self.lits.clone();
        while lits.len() >= 2 && lits[0] == lits[1] && lits[0].is_positive() {
            lits.remove(0);
        }
        Clause { lits }
    }

    /// The same literals with duplicates collapsed.
    pub fn dedup(&self) -> Clause {
        let mut lits = self.lits.clone();
        lits.dedup();
        Clause { lits }
    }
}

impl Ord for Clause {
    /// Multiset extension of the literal order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.lits.cmp(&other.lits)
    }
}

impl PartialOrd for Clause {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lits.is_empty() {
            return f.write_str("⊥");
        }
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{l:?}")?;
        }
        Ok(())
    }
}

impl FromIterator<Lit> for Clause {
    fn from_iter<I: IntoIterator<Item = Lit>>(iter: I) -> Self {
        Clause::new(iter.into_iter().collect())
    }
}

/// Stable identifier of a clause inside a [`ClauseSet`].
pub type ClauseId = usize;

/// Deduplicated clauses with insertion-order identifiers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClauseSet {
    clauses: Vec<Clause>,
    index: HashMap<Clause, ClauseId>,
}

impl ClauseSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts `clause`, returning its id and whether it was new.
    pub fn insert(&mut self, clause: Clause) -> (ClauseId, bool) {
        if let Some(&id) = self.index.get(&clause) {
            return (id, false);
        }
        let id = self.clauses.len();
        self.index.insert(clause.clone(), id);
        self.clauses.push(clause);
        (id, true)
    }

    pub fn get(&self, id: ClauseId) -> Option<&Clause> {
        self.clauses.get(id)
    }

    pub fn id_of(&self, clause: &Clause) -> Option<ClauseId> {
        self.index.get(clause).copied()
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.index.contains_key(clause)
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter()
    }

    pub fn as_slice(&self) -> &[Clause] {
        &self.clauses
    }
}

impl FromIterator<Clause> for ClauseSet {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        let mut set = ClauseSet::new();
        for c in iter {
            set.insert(c);
        }
        set
    }
}
