//! Ground term orderings and their lifting to atoms, literals and clauses.
//!
//! Three ways to order atoms are supported: a ground Knuth-Bendix order, a
//! ground lexicographic path order (both over a total symbol precedence,
//! with the predicate treated as the root symbol of an atom), or an
//! explicitly listed atom sequence. Once a problem is loaded its atoms are
//! ranked by this order in an [`AtomTable`]; the interned clause types in
//! [`crate::clause`] then compare by rank alone.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clause::{AtomId, Clause};
use crate::term::{Atom, GroundTerm, Literal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Kbo,
    Lpo,
    Listed,
}

impl OrderKind {
    pub fn keyword(self) -> &'static str {
        match self {
            OrderKind::Kbo => "kbo",
            OrderKind::Lpo => "lpo",
            OrderKind::Listed => "listed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderingError {
    #[error("symbol `{0}` is missing from the precedence")]
    MissingPrecedence(String),
    #[error("atom `{0}` is not in the listed atom order")]
    AtomNotListed(String),
    #[error("term comparison is undefined for a listed atom order")]
    TermsUnderListedOrder,
    #[error("ordering is not total: {0} and {1} are incomparable")]
    Incomparable(String, String),
}

/// Precedence, weights and the kind of atom order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingConfig {
    kind: OrderKind,
    precedence: Vec<String>,
    default_weight: u32,
    weights: BTreeMap<String, u32>,
    listed: Vec<Atom>,
    prec_rank: HashMap<String, usize>,
    listed_rank: HashMap<Atom, usize>,
}

impl OrderingConfig {
    /// KBO over `precedence` (ascending); symbols without an explicit weight
    /// get `default_weight`.
    pub fn kbo(
        precedence: Vec<String>,
        default_weight: u32,
        weights: BTreeMap<String, u32>,
    ) -> Self {
        Self::build(
            OrderKind::Kbo,
            precedence,
            default_weight,
            weights,
            Vec::new(),
        )
    }

    /// KBO with every weight equal to one.
    pub fn kbo_unit(precedence: Vec<String>) -> Self {
        Self::kbo(precedence, 1, BTreeMap::new())
    }

    pub fn lpo(precedence: Vec<String>) -> Self {
        Self::build(OrderKind::Lpo, precedence, 1, BTreeMap::new(), Vec::new())
    }

    /// Atoms ordered by their position in `atoms` (ascending).
    pub fn listed(atoms: Vec<Atom>) -> Self {
        Self::build(OrderKind::Listed, Vec::new(), 1, BTreeMap::new(), atoms)
    }

    fn build(
        kind: OrderKind,
        precedence: Vec<String>,
        default_weight: u32,
        weights: BTreeMap<String, u32>,
        listed: Vec<Atom>,
    ) -> Self {
        let prec_rank = precedence
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let listed_rank = listed
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        OrderingConfig {
            kind,
            precedence,
            default_weight,
            weights,
            listed,
            prec_rank,
            listed_rank,
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn precedence(&self) -> &[String] {
        &self.precedence
    }

    pub fn default_weight(&self) -> u32 {
        self.default_weight
    }

    pub fn explicit_weights(&self) -> &BTreeMap<String, u32> {
        &self.weights
    }

    pub fn listed_atoms(&self) -> &[Atom] {
        &self.listed
    }

    pub fn weight(&self, symbol: &str) -> u32 {
        self.weights
            .get(symbol)
            .copied()
            .unwrap_or(self.default_weight)
    }

    fn prec(&self, symbol: &str) -> Result<usize, OrderingError> {
        self.prec_rank
            .get(symbol)
            .copied()
            .ok_or_else(|| OrderingError::MissingPrecedence(symbol.to_string()))
    }
}

/// Root symbol plus arguments: lets atoms be compared as terms.
#[derive(Clone, Copy)]
struct Node<'a> {
    symbol: &'a str,
    args: &'a [GroundTerm],
}

impl<'a> From<&'a GroundTerm> for Node<'a> {
    fn from(t: &'a GroundTerm) -> Self {
        Node {
            symbol: &t.symbol,
            args: &t.args,
        }
    }
}

impl<'a> From<&'a Atom> for Node<'a> {
    fn from(a: &'a Atom) -> Self {
        Node {
            symbol: &a.predicate,
            args: &a.args,
        }
    }
}

impl Node<'_> {
    fn same_as(&self, other: &Node<'_>) -> bool {
        self.symbol == other.symbol && self.args == other.args
    }
}

fn kbo_weight(cfg: &OrderingConfig, n: Node<'_>) -> u64 {
    u64::from(cfg.weight(n.symbol))
        + n.args
            .iter()
            .map(|a| kbo_weight(cfg, a.into()))
            .sum::<u64>()
}

fn kbo_cmp(cfg: &OrderingConfig, s: Node<'_>, t: Node<'_>) -> Result<Ordering, OrderingError> {
    let by_weight = kbo_weight(cfg, s).cmp(&kbo_weight(cfg, t));
    if by_weight != Ordering::Equal {
        return Ok(by_weight);
    }
    let by_head = cfg.prec(s.symbol)?.cmp(&cfg.prec(t.symbol)?);
    if by_head != Ordering::Equal {
        return Ok(by_head);
    }
    for (a, b) in s.args.iter().zip(t.args) {
        let o = kbo_cmp(cfg, a.into(), b.into())?;
        if o != Ordering::Equal {
            return Ok(o);
        }
    }
    Ok(s.args.len().cmp(&t.args.len()))
}

/// `s >_lpo t` on ground terms.
fn lpo_gt(cfg: &OrderingConfig, s: Node<'_>, t: Node<'_>) -> Result<bool, OrderingError> {
    for si in s.args {
        let si: Node<'_> = si.into();
        if si.same_as(&t) || lpo_gt(cfg, si, t)? {
            return Ok(true);
        }
    }
    let dominates_args = |cfg: &OrderingConfig| -> Result<bool, OrderingError> {
        for tj in t.args {
            if !lpo_gt(cfg, s, tj.into())? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    match cfg.prec(s.symbol)?.cmp(&cfg.prec(t.symbol)?) {
        Ordering::Greater => dominates_args(cfg),
        Ordering::Less => Ok(false),
        Ordering::Equal => {
            for (a, b) in s.args.iter().zip(t.args) {
                if a != b {
                    return Ok(lpo_gt(cfg, a.into(), b.into())? && dominates_args(cfg)?);
                }
            }
            Ok(s.args.len() > t.args.len() && dominates_args(cfg)?)
        }
    }
}

fn lpo_cmp(cfg: &OrderingConfig, s: Node<'_>, t: Node<'_>) -> Result<Ordering, OrderingError> {
    if s.same_as(&t) {
        // Still surface unknown symbols.
        cfg.prec(s.symbol)?;
        return Ok(Ordering::Equal);
    }
    if lpo_gt(cfg, s, t)? {
        Ok(Ordering::Greater)
    } else if lpo_gt(cfg, t, s)? {
        Ok(Ordering::Less)
    } else {
        Err(OrderingError::Incomparable(render(s), render(t)))
    }
}

fn render(n: Node<'_>) -> String {
    GroundTerm::app(n.symbol, n.args.to_vec()).to_string()
}

fn node_cmp(cfg: &OrderingConfig, s: Node<'_>, t: Node<'_>) -> Result<Ordering, OrderingError> {
    match cfg.kind {
        OrderKind::Kbo => kbo_cmp(cfg, s, t),
        OrderKind::Lpo => lpo_cmp(cfg, s, t),
        OrderKind::Listed => Err(OrderingError::TermsUnderListedOrder),
    }
}

/// Compares two ground terms under KBO or LPO.
pub fn compare_terms(
    s: &GroundTerm,
    t: &GroundTerm,
    cfg: &OrderingConfig,
) -> Result<Ordering, OrderingError> {
    node_cmp(cfg, s.into(), t.into())
}

/// Compares atoms as terms rooted at their predicate, or by listed position.
pub fn compare_atoms(a: &Atom, b: &Atom, cfg: &OrderingConfig) -> Result<Ordering, OrderingError> {
    match cfg.kind {
        OrderKind::Listed => {
            let rank = |x: &Atom| {
                cfg.listed_rank
                    .get(x)
                    .copied()
                    .ok_or_else(|| OrderingError::AtomNotListed(x.to_string()))
            };
            Ok(rank(a)?.cmp(&rank(b)?))
        }
        _ => node_cmp(cfg, a.into(), b.into()),
    }
}

/// Atom order first; on the same atom the negative literal is larger.
pub fn compare_literals(
    l: &Literal,
    k: &Literal,
    cfg: &OrderingConfig,
) -> Result<Ordering, OrderingError> {
    Ok(compare_atoms(&l.atom, &k.atom, cfg)?.then(k.positive.cmp(&l.positive)))
}

/// Multiset extension of [`compare_literals`] over symbolic clauses.
pub fn compare_clauses(
    c: &[Literal],
    d: &[Literal],
    cfg: &OrderingConfig,
) -> Result<Ordering, OrderingError> {
    let sorted = |x: &[Literal]| -> Result<Vec<Literal>, OrderingError> {
        let mut v = x.to_vec();
        let mut err = None;
        v.sort_by(|a, b| {
            compare_literals(b, a, cfg).unwrap_or_else(|e| {
                err.get_or_insert(e);
                Ordering::Equal
            })
        });
        match err {
            Some(e) => Err(e),
            None => Ok(v),
        }
    };
    let (c, d) = (sorted(c)?, sorted(d)?);
    for (a, b) in c.iter().zip(&d) {
        let o = compare_literals(a, b, cfg)?;
        if o != Ordering::Equal {
            return Ok(o);
        }
    }
    Ok(c.len().cmp(&d.len()))
}

/// Clause re-keying used by the simulation: a clause that superposition has
/// already factorized is compared through its factorized form.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GammaMap {
    map: BTreeMap<Clause, Clause>,
}

impl GammaMap {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn get<'a>(&'a self, c: &'a Clause) -> &'a Clause {
        self.map.get(c).unwrap_or(c)
    }

    /// Records `c ↦ sfac(c)`.
    pub fn factorize(&mut self, c: &Clause) {
        let f = c.sfac();
        if f != *c {
            self.map.insert(c.clone(), f);
        }
    }

    pub fn with_factorized(&self, c: &Clause) -> Self {
        let mut g = self.clone();
        g.factorize(c);
        g
    }

    /// Non-identity entries in clause order.
    pub fn entries(&self) -> impl Iterator<Item = (&Clause, &Clause)> {
        self.map.iter()
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }
}

/// `c ≺_γ d` iff `γ(c) ≺ γ(d)`.
pub fn compare_clauses_gamma(c: &Clause, d: &Clause, gamma: &GammaMap) -> Ordering {
    gamma.get(c).cmp(gamma.get(d))
}

/// Atoms of a problem ranked by the atom order. `AtomId(i)` is the `i`-th
/// smallest atom; the trail bound β is one past the largest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomTable {
    atoms: Vec<Atom>,
    index: HashMap<Atom, AtomId>,
}

pub const BETA_NAME: &str = "$beta";

impl AtomTable {
    /// Ranks `universe` under `cfg`; fails with the list of ordering
    /// violations if the induced order is not strict and total.
    pub fn build(universe: &[Atom], cfg: &OrderingConfig) -> Result<Self, Vec<String>> {
        let mut atoms: Vec<Atom> = universe.to_vec();
        atoms.sort();
        atoms.dedup();
        let violations = check_atom_order(cfg, &atoms);
        if !violations.is_empty() {
            return Err(violations);
        }
        atoms.sort_by(|a, b| compare_atoms(a, b, cfg).expect("validated order"));
        let index = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), AtomId(i as u32)))
            .collect();
        Ok(AtomTable { atoms, index })
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atom(&self, id: AtomId) -> Option<&Atom> {
        self.atoms.get(id.index())
    }

    pub fn id(&self, atom: &Atom) -> Option<AtomId> {
        self.index.get(atom).copied()
    }

    pub fn ids(&self) -> impl Iterator<Item = AtomId> {
        (0..self.atoms.len() as u32).map(AtomId)
    }

    /// Atoms in ascending order.
    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// A synthetic atom above every atom of the problem.
    pub fn beta(&self) -> AtomId {
        AtomId(self.atoms.len() as u32)
    }

    pub fn atom_name(&self, id: AtomId) -> String {
        match self.atom(id) {
            Some(a) => a.to_string(),
            None if id == self.beta() => BETA_NAME.to_string(),
            None => format!("#{}", id.0),
        }
    }

    pub fn lit_name(&self, l: crate::clause::Lit) -> String {
        let a = self.atom_name(l.atom());
        if l.is_positive() {
            a
        } else {
            format!("-{a}")
        }
    }

    pub fn clause_literals(&self, c: &Clause) -> Vec<String> {
        c.literals().iter().map(|&l| self.lit_name(l)).collect()
    }

    pub fn clause_name(&self, c: &Clause) -> String {
        if c.is_bottom() {
            "⊥".to_string()
        } else {
            self.clause_literals(c).join(" | ")
        }
    }

    pub fn to_symbolic(&self, l: crate::clause::Lit) -> Option<Literal> {
        let atom = self.atom(l.atom())?.clone();
        Some(Literal {
            positive: l.is_positive(),
            atom,
        })
    }
}

/// Checks that `cfg` induces a strict total order on `atoms` and satisfies
/// the configuration's own side conditions. Returns one line per violation.
pub fn check_atom_order(cfg: &OrderingConfig, atoms: &[Atom]) -> Vec<String> {
    let mut out = Vec::new();
    match cfg.kind {
        OrderKind::Kbo | OrderKind::Lpo => {
            let mut seen = HashSet::new();
            for s in &cfg.precedence {
                if !seen.insert(s) {
                    out.push(format!("precedence lists `{s}` more than once"));
                }
            }
            let mut missing = std::collections::BTreeSet::new();
            for a in atoms {
                let mut visit = |sym: &str, _arity: usize| {
                    if !cfg.prec_rank.contains_key(sym) {
                        missing.insert(sym.to_string());
                    }
                };
                visit(&a.predicate, a.args.len());
                for t in &a.args {
                    t.for_each_symbol(&mut visit);
                }
            }
            for s in missing {
                out.push(format!("precedence omits occurring symbol `{s}`"));
            }
            if cfg.kind == OrderKind::Kbo {
                if cfg.default_weight == 0 {
                    out.push("zero default weight breaks ≺_B finiteness".to_string());
                }
                for (s, w) in &cfg.weights {
                    if *w == 0 {
                        out.push(format!("zero-weight symbol `{s}` breaks ≺_B finiteness"));
                    }
                }
            }
        }
        OrderKind::Listed => {
            let mut seen = HashSet::new();
            for a in &cfg.listed {
                if !seen.insert(a) {
                    out.push(format!("atom order lists {a} more than once"));
                }
            }
            let universe: HashSet<&Atom> = atoms.iter().collect();
            for a in atoms {
                if !cfg.listed_rank.contains_key(a) {
                    out.push(format!("atom order omits occurring atom {a}"));
                }
            }
            for a in &cfg.listed {
                if !universe.contains(a) {
                    out.push(format!("atom order lists {a}, which does not occur"));
                }
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    // Irreflexivity, antisymmetry and totality pairwise; transitivity by
    // checking the sorted arrangement is strictly increasing on every pair.
    for a in atoms {
        if compare_atoms(a, a, cfg) != Ok(Ordering::Equal) {
            out.push(format!("{a} is not equal to itself"));
        }
    }
    let mut sorted = atoms.to_vec();
    sorted.sort_by(|a, b| compare_atoms(a, b, cfg).unwrap_or(Ordering::Equal));
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            let (a, b) = (&sorted[i], &sorted[j]);
            match (compare_atoms(a, b, cfg), compare_atoms(b, a, cfg)) {
                (Ok(Ordering::Less), Ok(Ordering::Greater)) => {}
                (Ok(Ordering::Equal), _) | (_, Ok(Ordering::Equal)) => {
                    out.push(format!("distinct atoms {a} and {b} compare equal"))
                }
                (Err(e), _) | (_, Err(e)) => out.push(e.to_string()),
                _ => out.push(format!(
                    "order on {a} and {b} is not transitive/antisymmetric"
                )),
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec(s: &str) -> Vec<String> {
        s.split('<').map(|x| x.trim().to_string()).collect()
    }
    fn c(s: &str) -> GroundTerm {
        GroundTerm::constant(s)
    }
    fn atom(p: &str, a: &str) -> Atom {
        Atom::with_constants(p, &[a])
    }

    #[test]
    fn kbo_constants_by_precedence() {
        let cfg = OrderingConfig::kbo_unit(prec("a < b < P < Q"));
        assert_eq!(compare_terms(&c("a"), &c("b"), &cfg), Ok(Ordering::Less));
    }

    #[test]
    fn kbo_weight_dominates() {
        let cfg = OrderingConfig::kbo_unit(prec("a < b < f"));
        let fa = GroundTerm::app("f", vec![c("a")]);
        assert_eq!(compare_terms(&fa, &c("b"), &cfg), Ok(Ordering::Greater));
    }

    #[test]
    fn lpo_identity_is_equal() {
        let cfg = OrderingConfig::lpo(prec("a < b"));
        assert_eq!(compare_terms(&c("a"), &c("a"), &cfg), Ok(Ordering::Equal));
    }

    #[test]
    fn lpo_subterm_and_precedence() {
        let cfg = OrderingConfig::lpo(prec("a < b < f < g"));
        let fb = GroundTerm::app("f", vec![c("b")]);
        let ga = GroundTerm::app("g", vec![c("a")]);
        let ffa = GroundTerm::app("f", vec![GroundTerm::app("f", vec![c("a")])]);
        assert_eq!(compare_terms(&fb, &c("b"), &cfg), Ok(Ordering::Greater));
        assert_eq!(compare_terms(&fb, &ga, &cfg), Ok(Ordering::Less));
        // f(f(a)) against f(b) compares f(a) with b, and f is above b
        assert_eq!(compare_terms(&ffa, &fb, &cfg), Ok(Ordering::Greater));
    }

    #[test]
    fn missing_symbol_is_an_error() {
        let cfg = OrderingConfig::kbo_unit(prec("a"));
        assert_eq!(
            compare_terms(&c("a"), &c("z"), &cfg),
            Err(OrderingError::MissingPrecedence("z".into()))
        );
        let listed = OrderingConfig::listed(vec![]);
        assert_eq!(
            compare_terms(&c("a"), &c("a"), &listed),
            Err(OrderingError::TermsUnderListedOrder)
        );
    }

    #[test]
    fn atoms_under_lpo_follow_worked_example_order() {
        let cfg = OrderingConfig::lpo(prec("a < b < P < Q"));
        let chain = [
            atom("P", "a"),
            atom("P", "b"),
            atom("Q", "a"),
            atom("Q", "b"),
        ];
        for w in chain.windows(2) {
            assert_eq!(compare_atoms(&w[0], &w[1], &cfg), Ok(Ordering::Less));
        }
        assert_eq!(
            compare_atoms(&chain[1], &chain[2], &cfg),
            Ok(Ordering::Less)
        );
    }

    #[test]
    fn atoms_under_kbo() {
        let cfg = OrderingConfig::kbo_unit(prec("a < b < P < Q"));
        assert_eq!(
            compare_atoms(&atom("P", "a"), &atom("P", "b"), &cfg),
            Ok(Ordering::Less)
        );
        assert_eq!(
            compare_atoms(&atom("P", "a"), &atom("P", "a"), &cfg),
            Ok(Ordering::Equal)
        );
        assert_eq!(
            compare_atoms(&atom("P", "a"), &atom("Q", "b"), &cfg),
            Ok(Ordering::Less)
        );
    }

    #[test]
    fn listed_atoms() {
        let cfg = OrderingConfig::listed(vec![atom("Q", "a"), atom("P", "a")]);
        assert_eq!(
            compare_atoms(&atom("P", "a"), &atom("Q", "a"), &cfg),
            Ok(Ordering::Greater)
        );
        assert!(matches!(
            compare_atoms(&atom("P", "b"), &atom("Q", "a"), &cfg),
            Err(OrderingError::AtomNotListed(_))
        ));
    }

    #[test]
    fn literal_order() {
        let cfg = OrderingConfig::lpo(prec("a < b < P < Q"));
        let pa = Literal::pos(atom("P", "a"));
        assert_eq!(
            compare_literals(&pa, &pa.complement(), &cfg),
            Ok(Ordering::Less)
        );
        let qa = Literal::pos(atom("Q", "a"));
        assert_eq!(
            compare_literals(&pa.complement(), &qa, &cfg),
            Ok(Ordering::Less)
        );
        let nqb = Literal::neg(atom("Q", "b"));
        assert_eq!(compare_literals(&nqb, &nqb, &cfg), Ok(Ordering::Equal));
    }

    #[test]
    fn clause_order_examples() {
        let cfg = OrderingConfig::lpo(prec("a < b < P < Q"));
        let pa = Literal::pos(atom("P", "a"));
        let pb = Literal::pos(atom("P", "b"));
        let qa = Literal::pos(atom("Q", "a"));
        let c6 = vec![pa.complement(), qa.clone()];
        let c2 = vec![pb.complement(), qa.clone()];
        assert_eq!(compare_clauses(&c6, &c2, &cfg), Ok(Ordering::Less));
        assert_eq!(
            compare_clauses(&[], std::slice::from_ref(&pa), &cfg),
            Ok(Ordering::Less)
        );
        let c3 = vec![pa.complement(), qa.clone(), qa.clone()];
        assert_eq!(compare_clauses(&c3, &c6, &cfg), Ok(Ordering::Greater));
    }

    #[test]
    fn validation_flags_zero_weight_and_missing_listed_atom() {
        let mut w = BTreeMap::new();
        w.insert("a".to_string(), 0);
        let cfg = OrderingConfig::kbo(prec("a < P"), 1, w);
        let v = check_atom_order(&cfg, &[atom("P", "a")]);
        assert!(v.iter().any(|m| m.contains("zero-weight")), "{v:?}");

        let listed = OrderingConfig::listed(vec![atom("P", "a")]);
        let v = check_atom_order(&listed, &[atom("P", "a"), atom("Q", "b")]);
        assert!(
            v.iter().any(|m| m.contains("omits occurring atom Q(b)")),
            "{v:?}"
        );
    }

    #[test]
    fn gamma_defaults_to_identity() {
        use crate::clause::{Clause, Lit};
        let q = Lit::pos(AtomId(2));
        let np = Lit::neg(AtomId(0));
        let nb = Lit::neg(AtomId(1));
        let c3 = Clause::new(vec![np, q, q]);
        let c2 = Clause::new(vec![nb, q]);
        let id = GammaMap::identity();
        assert_eq!(compare_clauses_gamma(&c3, &c2, &id), c3.cmp(&c2));
        let g1 = id.with_factorized(&c3);
        assert_eq!(compare_clauses_gamma(&c3, &c2, &g1), Ordering::Less);
        assert_eq!(compare_clauses_gamma(&c3, &c3, &g1), Ordering::Equal);
    }

    use crate::clause::Lit;
    use proptest::prelude::*;

    fn term(depth: u32) -> BoxedStrategy<GroundTerm> {
        let leaf = prop_oneof![Just("a"), Just("b"), Just("c")].prop_map(GroundTerm::constant);
        leaf.prop_recursive(depth, 12, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|t| GroundTerm::app("f", vec![t])),
                (inner.clone(), inner).prop_map(|(s, t)| GroundTerm::app("g", vec![s, t])),
            ]
        })
        .boxed()
    }

    fn configs() -> Vec<OrderingConfig> {
        vec![
            OrderingConfig::kbo_unit(prec("a < b < c < f < g")),
            OrderingConfig::kbo(
                prec("c < a < b < g < f"),
                1,
                [("a".to_string(), 3), ("g".to_string(), 2)]
                    .into_iter()
                    .collect(),
            ),
            OrderingConfig::lpo(prec("a < b < c < f < g")),
            OrderingConfig::lpo(prec("g < c < f < b < a")),
        ]
    }

    proptest! {
        #[test]
        fn term_orders_are_strict_total(s in term(3), t in term(3), u in term(3)) {
            for cfg in configs() {
                let cmp = |x: &GroundTerm, y: &GroundTerm| compare_terms(x, y, &cfg).unwrap();
                prop_assert_eq!(cmp(&s, &s), Ordering::Equal);
                prop_assert_eq!(cmp(&s, &t), cmp(&t, &s).reverse());
                prop_assert_eq!(cmp(&s, &t) == Ordering::Equal, s == t);
                if cmp(&s, &t) == Ordering::Less && cmp(&t, &u) == Ordering::Less {
                    prop_assert_eq!(cmp(&s, &u), Ordering::Less);
                }
            }
        }

        #[test]
        fn proper_subterms_are_smaller(t in term(3)) {
            let big = GroundTerm::app("f", vec![t.clone()]);
            for cfg in configs() {
                prop_assert_eq!(compare_terms(&t, &big, &cfg), Ok(Ordering::Less));
            }
        }

        #[test]
        fn interned_order_matches_symbolic_order(
            clauses in proptest::collection::vec(
                proptest::collection::vec((0usize..4, any::<bool>()), 0..4), 3)
        ) {
            let atoms = [atom("P", "a"), atom("P", "b"), atom("Q", "a"), atom("Q", "b")];
            let cfg = OrderingConfig::lpo(prec("a < b < P < Q"));
            let table = AtomTable::build(&atoms, &cfg).unwrap();
            let sym: Vec<Vec<Literal>> = clauses
                .iter()
                .map(|c| c.iter().map(|&(a, pos)| Literal { positive: pos, atom: atoms[a].clone() }).collect())
                .collect();
            let interned: Vec<Clause> = sym
                .iter()
                .map(|c| c.iter().map(|l| {
                    let id = table.id(&l.atom).unwrap();
                    Lit::new(id, l.positive)
                }).collect())
                .collect();
            for i in 0..3 {
                for j in 0..3 {
                    prop_assert_eq!(
                        compare_clauses(&sym[i], &sym[j], &cfg).unwrap(),
                        interned[i].cmp(&interned[j])
                    );
                    prop_assert_eq!(
                        compare_clauses_gamma(&interned[i], &interned[j], &GammaMap::identity()),
                        interned[i].cmp(&interned[j])
                    );
                }
            }
            for id in table.ids() {
                prop_assert!(id < table.beta());
            }
        }
    }
}
