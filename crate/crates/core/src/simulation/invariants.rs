use std::collections::BTreeSet;

use super::{AnnotatedState, SimError};
use crate::clause::{AtomId, Clause, Lit};
use crate::harness::oracle::entails;
use crate::problem::Problem;
use crate::scl::{Justification, SclStatus};
use crate::semantics::Truth;
use crate::superposition::SupRun;

pub const INVARIANT_NAMES: [&str; 14] = [
    "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "xii", "xiii", "xiv",
];

/// Outcome of each of the fourteen simulation conditions; `None` is a pass,
/// `Some` carries a witness.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InvariantReport {
    pub results: [Option<String>; 14],
}

impl InvariantReport {
    pub fn passed(&self, idx: usize) -> bool {
        self.results[idx].is_none()
    }

    pub fn all_pass(&self) -> bool {
        self.results.iter().all(Option::is_none)
    }

    /// `(name, witness)` for each failing condition.
    pub fn failures(&self) -> impl Iterator<Item = (&'static str, &str)> {
        INVARIANT_NAMES
            .iter()
            .zip(&self.results)
            .filter_map(|(n, r)| r.as_deref().map(|w| (*n, w)))
    }
}

/// Checks the simulation conditions relating `s` to state `N^i` of `sup`.
pub fn check_invariants(
    s: &AnnotatedState,
    sup: &SupRun,
    problem: &Problem,
) -> Result<InvariantReport, SimError> {
    let i = s.ann.i;
    if i >= sup.num_states() {
        return Err(SimError::IndexOutOfRange {
            i,
            states: sup.num_states(),
        });
    }
    let ni = sup.state(i);
    let mc = sup.construction(i);
    let table = problem.atoms();
    let name = |c: &Clause| table.clause_name(c);
    let atom_name = |a: AtomId| table.atom_name(a);

    let scl = &s.scl;
    let trail = scl.trail();
    let gamma = &s.ann.gamma;
    let d = &s.ann.aid;
    let d_img = gamma.get(d);
    let n0: Vec<&Clause> = scl.n().iter().collect();
    let n0u: Vec<&Clause> = scl.clauses().collect();
    let e: Option<Clause> = match scl.status() {
        SclStatus::Top => None,
        SclStatus::Bottom => Some(Clause::bottom()),
        SclStatus::Conflict(c) => Some(c.clone()),
    };
    let with_e: Vec<&Clause> = n0u.iter().copied().chain(e.as_ref()).collect();
    let ni_set: BTreeSet<&Clause> = ni.iter().collect();
    let atoms = |cs: &mut dyn Iterator<Item = &Clause>| -> BTreeSet<AtomId> {
        cs.flat_map(|c| c.literals().iter().map(|l| l.atom()))
            .collect()
    };
    let mut r = InvariantReport::default();

    // (i)
    r.results[0] = (|| {
        let a0 = atoms(&mut n0.iter().copied());
        let ai = atoms(&mut ni.iter());
        let au = atoms(&mut n0u.iter().copied());
        if a0 != ai || a0 != au {
            return Some(format!(
                "atom sets differ: |N^0|={}, |N^i|={}, |N^0∪U|={}",
                a0.len(),
                ai.len(),
                au.len()
            ));
        }
        if let Some(a) = a0.iter().find(|&&a| a >= scl.beta()) {
            return Some(format!("{} is not below β", atom_name(*a)));
        }
        if !d.is_bottom() && !scl.contains_clause(d) {
            return Some(format!("decision aid {} is not in N^0 ∪ U", name(d)));
        }
        None
    })();

    // (ii)
    r.results[1] = (|| {
        let sfac_ni: BTreeSet<Clause> = ni.iter().map(Clause::sfac).collect();
        for c in &n0u {
            if !sfac_ni.contains(&c.sfac()) {
                return Some(format!("sfac({}) is not in sfac(N^i)", name(c)));
            }
            let g = gamma.get(c);
            if !ni_set.contains(g) {
                return Some(format!("γ({}) = {} is not in N^i", name(c), name(g)));
            }
            if *g != c.sfac() && g != *c {
                return Some(format!("γ({}) is neither the clause nor its sfac", name(c)));
            }
        }
        None
    })();

    // (iii)
    r.results[2] = ni
        .iter()
        .filter(|c| c.max_literal().is_some_and(Lit::is_positive))
        .find(|c| !with_e.iter().any(|c2| c2.sfac() == c.sfac()))
        .map(|c| {
            format!(
                "no clause of N^0 ∪ U ∪ {{E}} agrees with {} up to sfac",
                name(c)
            )
        });

    // (iv)
    r.results[3] = (|| {
        for c in ni {
            let mut found = false;
            for c2 in &with_e {
                if gamma.get(c2) <= c && entails(std::slice::from_ref(*c2), c).unwrap_or(false) {
                    found = true;
                    break;
                }
            }
            if !found {
                return Some(format!("no clause of N^0 ∪ U ∪ {{E}} covers {}", name(c)));
            }
        }
        None
    })();

    // (v)
    let upto = mc.model_upto(d_img);
    r.results[4] = atoms(&mut n0.iter().copied())
        .into_iter()
        .find(|&a| upto.contains(&a) != (trail.value(Lit::pos(a)) == Truth::True))
        .map(|a| {
            format!(
                "{}: in model construction = {}, true on trail = {}",
                atom_name(a),
                upto.contains(&a),
                trail.value(Lit::pos(a)) == Truth::True
            )
        });

    // (vi)
    let prefix = mc.prefix_model(d_img);
    let max_lit = d.max_literal();
    r.results[5] = table
        .ids()
        .find(|&a| {
            let neg_on_trail = trail.value(Lit::neg(a)) == Truth::True;
            let below = max_lit.is_some_and(|l| Lit::pos(a) < l);
            neg_on_trail != (below && !prefix.contains(&a))
        })
        .map(|a| {
            format!(
                "¬{} on trail disagrees with the model construction",
                atom_name(a)
            )
        });

    // (vii)
    r.results[6] = trail
        .entries()
        .windows(2)
        .find(|w| w[0].lit.atom() >= w[1].lit.atom())
        .map(|w| {
            format!(
                "{} is not above {} on the trail",
                table.lit_name(w[1].lit),
                table.lit_name(w[0].lit)
            )
        });

    // (viii)
    r.results[7] = trail.lits().filter(|l| l.is_positive()).find_map(|b| {
        let Some(prod) = mc.producer(b.atom()) else {
            return Some(format!(
                "{} on the trail has no producer in N^i",
                table.lit_name(b)
            ));
        };
        if prod.sfac() != *prod {
            return Some(format!("producer {} is not factorized", name(prod)));
        }
        let ok = n0u
            .iter()
            .any(|c| gamma.get(c) == prod && c.sfac() == *prod);
        (!ok).then(|| format!("no clause of N^0 ∪ U has γ-image {}", name(prod)))
    });

    // (ix)
    r.results[8] = mc
        .clauses()
        .iter()
        .enumerate()
        .filter(|(p, c)| *c <= d_img && mc.delta_at(*p).is_some())
        .find(|(_, c)| !(n0u.iter().any(|c2| gamma.get(c2) == *c) && gamma.get(c) <= d_img))
        .map(|(_, c)| format!("productive {} has no γ-preimage up to the aid", name(c)));

    // (x)
    r.results[9] = match scl.status() {
        SclStatus::Top => trail
            .entries()
            .iter()
            .find(|x| !x.is_decision())
            .map(|x| format!("propagated {} under status ⊤", table.lit_name(x.lit))),
        _ => None,
    };

    // (xi)
    let conflict_shape = || -> Result<(), String> {
        let SclStatus::Conflict(ec) = scl.status() else {
            return Err("status is not a conflict".to_string());
        };
        let (top, rest) = trail.entries().split_last().ok_or("empty trail")?;
        let Justification::Propagation(j) = &top.just else {
            return Err("topmost literal is a decision".into());
        };
        if !top.lit.is_positive() || *j != d.sfac() {
            return Err(format!(
                "topmost literal is not an atom propagated by sfac({})",
                name(d)
            ));
        }
        if !rest.iter().all(|x| x.is_decision()) {
            return Err("propagation below the topmost literal".into());
        }
        if gamma.get(ec) != ec {
            return Err(format!("γ moves the conflict clause {}", name(ec)));
        }
        if !ni_set.contains(ec) {
            return Err(format!("conflict clause {} is not in N^i", name(ec)));
        }
        if mc.minimal_false() != Some(ec) {
            return Err(format!(
                "conflict clause {} is not the minimal false clause of N^i ({})",
                name(ec),
                mc.minimal_false().map_or("none".into(), name)
            ));
        }
        if !ec.contains(top.lit.complement()) {
            return Err("conflict clause does not contain the complement of the top".into());
        }
        Ok(())
    };
    r.results[10] = match (
        matches!(scl.status(), SclStatus::Conflict(_)),
        conflict_shape(),
    ) {
        (true, Err(why)) => Some(why),
        (false, Ok(())) => Some("conflict shape holds without a conflict".into()),
        _ => None,
    };

    // (xii)
    r.results[11] = n0u
        .iter()
        .filter(|c| gamma.get(c) <= d_img)
        .find(|c| !trail.satisfies(c))
        .map(|c| format!("{} is ⪯_γ the aid but not satisfied by the trail", name(c)));

    // (xiii)
    r.results[12] = scl
        .conflict_candidate()
        .map(|c| format!("Conflict applies to {}", name(c)));

    // (xiv)
    r.results[13] = (|| {
        if n0u.iter().any(|c| c.is_bottom()) {
            return Some("⊥ is in N^0 ∪ U".into());
        }
        let lhs = scl.status() == &SclStatus::Bottom;
        let rhs = trail.is_empty() && ni_set.contains(&Clause::bottom());
        (lhs != rhs).then(|| format!("status ⊥ = {lhs}, empty trail with ⊥ ∈ N^i = {rhs}"))
    })();

    Ok(r)
}
