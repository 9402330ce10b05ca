//! Two-valued Herbrand evaluation and three-valued evaluation under a
//! partial assignment (the semantic view of a trail).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::clause::{AtomId, Clause, ClauseSet, Lit};

/// `I ⊨_H C`: some positive literal's atom is in `I` or some negative
/// literal's atom is not. ⊥ is false everywhere.
pub fn eval_herbrand(model: &BTreeSet<AtomId>, c: &Clause) -> bool {
    eval_herbrand_with(|a| model.contains(&a), c)
}

/// [`eval_herbrand`] over a membership predicate.
pub fn eval_herbrand_with(mut holds: impl FnMut(AtomId) -> bool, c: &Clause) -> bool {
    c.literals()
        .iter()
        .any(|&l| holds(l.atom()) == l.is_positive())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Truth {
    True,
    False,
    Undefined,
}

/// Atom values of a partial interpretation; atoms outside the recorded
/// range are undefined.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialAssignment {
    values: Vec<Option<bool>>,
}

impl PartialAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, a: AtomId) -> Option<bool> {
        self.values.get(a.index()).copied().flatten()
    }

    pub fn set(&mut self, a: AtomId, value: bool) {
        if self.values.len() <= a.index() {
            self.values.resize(a.index() + 1, None);
        }
        self.values[a.index()] = Some(value);
    }

    pub fn unset(&mut self, a: AtomId) {
        if let Some(v) = self.values.get_mut(a.index()) {
            *v = None;
        }
    }

    /// Makes `lit` true.
    pub fn assign(&mut self, lit: Lit) {
        self.set(lit.atom(), lit.is_positive());
    }

    pub fn is_defined(&self, a: AtomId) -> bool {
        self.get(a).is_some()
    }

    pub fn lit_value(&self, lit: Lit) -> Truth {
        match self.get(lit.atom()) {
            None => Truth::Undefined,
            Some(v) if v == lit.is_positive() => Truth::True,
            Some(_) => Truth::False,
        }
    }

    /// Atoms assigned true.
    pub fn true_atoms(&self) -> BTreeSet<AtomId> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v == Some(true))
            .map(|(i, _)| AtomId(i as u32))
            .collect()
    }
}

impl FromIterator<Lit> for PartialAssignment {
    fn from_iter<I: IntoIterator<Item = Lit>>(iter: I) -> Self {
        let mut a = PartialAssignment::new();
        for l in iter {
            a.assign(l);
        }
        a
    }
}

/// True if some literal is true, False if all are false, else Undefined.
pub fn status_under_assignment(a: &PartialAssignment, c: &Clause) -> Truth {
    let mut undefined = false;
    for &l in c.literals() {
        match a.lit_value(l) {
            Truth::True => return Truth::True,
            Truth::Undefined => undefined = true,
            Truth::False => {}
        }
    }
    if undefined {
        Truth::Undefined
    } else {
        Truth::False
    }
}

/// Objects with a set of occurring atoms.
pub trait AtomsOf {
    fn atoms_of(&self) -> BTreeSet<AtomId>;
}

impl AtomsOf for Lit {
    fn atoms_of(&self) -> BTreeSet<AtomId> {
        BTreeSet::from([self.atom()])
    }
}

impl AtomsOf for Clause {
    fn atoms_of(&self) -> BTreeSet<AtomId> {
        self.atoms()
    }
}

impl AtomsOf for [Clause] {
    fn atoms_of(&self) -> BTreeSet<AtomId> {
        self.iter()
            .flat_map(|c| c.literals().iter().map(|l| l.atom()))
            .collect()
    }
}

impl AtomsOf for ClauseSet {
    fn atoms_of(&self) -> BTreeSet<AtomId> {
        self.as_slice().atoms_of()
    }
}

pub fn atoms_of<T: AtomsOf + ?Sized>(x: &T) -> BTreeSet<AtomId> {
    x.atoms_of()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: u32) -> Lit {
        Lit::pos(AtomId(i))
    }
    fn n(i: u32) -> Lit {
        Lit::neg(AtomId(i))
    }

    #[test]
    fn herbrand_examples() {
        // P(a)=0, Q(a)=1
        let empty = BTreeSet::new();
        assert!(!eval_herbrand(&empty, &Clause::new(vec![p(0), p(0)])));
        let both = BTreeSet::from([AtomId(0), AtomId(1)]);
        assert!(!eval_herbrand(&both, &Clause::new(vec![n(0), n(1)])));
        assert!(eval_herbrand(&empty, &Clause::new(vec![n(1)])));
        assert!(!eval_herbrand(&both, &Clause::bottom()));
    }

    #[test]
    fn three_valued_examples() {
        let a: PartialAssignment = [p(0), p(1)].into_iter().collect();
        assert_eq!(
            status_under_assignment(&a, &Clause::new(vec![n(1)])),
            Truth::False
        );
        let b: PartialAssignment = [p(0)].into_iter().collect();
        assert_eq!(
            status_under_assignment(&b, &Clause::new(vec![n(0), p(2)])),
            Truth::Undefined
        );
        assert_eq!(status_under_assignment(&b, &Clause::bottom()), Truth::False);
        assert_eq!(
            status_under_assignment(&b, &Clause::new(vec![p(0)])),
            Truth::True
        );
    }

    #[test]
    fn atoms_of_objects() {
        let c = Clause::new(vec![n(0), p(3)]);
        assert_eq!(atoms_of(&c), BTreeSet::from([AtomId(0), AtomId(3)]));
        assert!(atoms_of(&Clause::bottom()).is_empty());
        let set: ClauseSet = [c, Clause::new(vec![p(1)])].into_iter().collect();
        assert_eq!(atoms_of(&set).len(), 3);
        assert_eq!(atoms_of(&n(2)), BTreeSet::from([AtomId(2)]));
    }

    #[test]
    fn unset_makes_undefined() {
        let mut a = PartialAssignment::new();
        a.assign(n(4));
        assert_eq!(a.lit_value(p(4)), Truth::False);
        a.unset(AtomId(4));
        assert_eq!(a.lit_value(p(4)), Truth::Undefined);
        assert!(a.true_atoms().is_empty());
    }

    #[test]
    fn herbrand_matches_total_assignments_exhaustively() {
        // Each atom is absent, positive, negative or both; with 4 atoms that
        // is every clause up to multiplicity.
        for shape in 0u32..256 {
            let lits: Vec<Lit> = (0..4)
                .flat_map(|a| {
                    let s = shape >> (2 * a) & 3;
                    let mut v = Vec::new();
                    if s & 1 == 1 {
                        v.push(p(a));
                    }
                    if s & 2 == 2 {
                        v.push(n(a));
                    }
                    v
                })
                .collect();
            let c = Clause::new(lits);
            for m in 0u32..16 {
                let model: BTreeSet<AtomId> =
                    (0..4).filter(|a| m >> a & 1 == 1).map(AtomId).collect();
                let total: PartialAssignment = (0..4)
                    .map(|a| if m >> a & 1 == 1 { p(a) } else { n(a) })
                    .collect();
                let want = if eval_herbrand(&model, &c) {
                    Truth::True
                } else {
                    Truth::False
                };
                assert_eq!(
                    status_under_assignment(&total, &c),
                    want,
                    "{c:?} under {m:04b}"
                );
            }
        }
    }
}
