//! Problems: an initial ground clause set plus the atom order, and the
//! line-oriented problem file format.
//!
//! ```text
//! # comment
//! order: kbo | lpo | listed
//! prec: a < b < P < Q
//! weights: default=1 f=2
//! atoms: P(a) < P(b) < Q(a)
//! clause: P(a) | -Q(b)
//! ```

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::clause::{Clause, ClauseId, ClauseSet, Lit};
use crate::ordering::{AtomTable, OrderKind, OrderingConfig};
use crate::term::{Atom, GroundTerm, Literal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("clause {0} is empty; ⊥ is not allowed in the input")]
    EmptyClause(usize),
    #[error("symbol `{symbol}` used with arity {first} and {second}")]
    ArityMismatch {
        symbol: String,
        first: usize,
        second: usize,
    },
    #[error("symbol `{0}` is used both as a predicate and as a function")]
    SymbolClash(String),
    #[error("invalid ordering: {}", .0.join("; "))]
    InvalidOrdering(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("empty clause in input")]
    EmptyClause,
    #[error("unknown ordering kind `{0}`")]
    UnknownOrderKind(String),
    #[error("precedence omits occurring symbol `{0}`")]
    MissingPrecedence(String),
    #[error("directive `{0}` given twice")]
    DuplicateDirective(String),
    #[error("order: listed requires an `atoms:` line")]
    MissingAtomList,
    #[error("`{0}:` is not allowed with order: {1}")]
    DirectiveNotAllowed(String, String),
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// An initial clause set together with its atom order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    clauses: ClauseSet,
    ordering: OrderingConfig,
    table: AtomTable,
}

impl Problem {
    /// Builds a problem from symbolic clauses. Duplicate clauses are merged.
    pub fn new(clauses: &[Vec<Literal>], ordering: OrderingConfig) -> Result<Self, ProblemError> {
        let mut arities: HashMap<String, (usize, bool)> = HashMap::new();
        let mut note = |sym: &str, arity: usize, predicate: bool| -> Result<(), ProblemError> {
            match arities.get(sym) {
                Some(&(_, p)) if p != predicate => Err(ProblemError::SymbolClash(sym.to_string())),
                Some(&(a, _)) if a != arity => Err(ProblemError::ArityMismatch {
                    symbol: sym.to_string(),
                    first: a,
                    second: arity,
                }),
                Some(_) => Ok(()),
                None => {
                    arities.insert(sym.to_string(), (arity, predicate));
                    Ok(())
                }
            }
        };
        let mut universe = BTreeSet::new();
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(ProblemError::EmptyClause(i));
            }
            for l in c {
                note(&l.atom.predicate, l.atom.args.len(), true)?;
                let mut err = Ok(());
                for t in &l.atom.args {
                    t.for_each_symbol(&mut |s, a| {
                        if err.is_ok() {
                            err = note(s, a, false);
                        }
                    });
                }
                err?;
                universe.insert(l.atom.clone());
            }
        }
        let universe: Vec<Atom> = universe.into_iter().collect();
        let table =
            AtomTable::build(&universe, &ordering).map_err(ProblemError::InvalidOrdering)?;
        let clauses = clauses
            .iter()
            .map(|c| {
                Clause::new(
                    c.iter()
                        .map(|l| Lit::new(table.id(&l.atom).expect("atom in universe"), l.positive))
                        .collect(),
                )
            })
            .collect();
        Ok(Problem {
            clauses,
            ordering,
            table,
        })
    }

    /// Same order and atom table, different clauses over the same atoms.
    /// Used to derive variants of a problem; atoms outside the table are
    /// rejected by the caller's construction of `Clause`s.
    pub fn with_clauses(&self, clauses: impl IntoIterator<Item = Clause>) -> Problem {
        Problem {
            clauses: clauses.into_iter().collect(),
            ordering: self.ordering.clone(),
            table: self.table.clone(),
        }
    }

    pub fn clauses(&self) -> &ClauseSet {
        &self.clauses
    }

    pub fn ordering(&self) -> &OrderingConfig {
        &self.ordering
    }

    pub fn atoms(&self) -> &AtomTable {
        &self.table
    }

    /// Occurring atoms in ascending order.
    pub fn atom_universe(&self) -> &[Atom] {
        self.table.atoms()
    }

    pub fn clause_name(&self, c: &Clause) -> String {
        self.table.clause_name(c)
    }

    pub fn symbolic_clause(&self, id: ClauseId) -> Option<Vec<Literal>> {
        let c = self.clauses.get(id)?;
        c.literals()
            .iter()
            .map(|&l| self.table.to_symbolic(l))
            .collect()
    }

    /// Interns a literal written in problem syntax, e.g. `-P(a)`.
    pub fn lit(&self, text: &str) -> Result<Lit, ParseError> {
        let mut cur = Cursor::new(text, 1);
        let l = cur.literal()?;
        cur.expect_end()?;
        self.intern(&l)
            .ok_or_else(|| cur.error_at(0, format!("atom {} does not occur", l.atom)))
    }

    /// Interns a clause written in problem syntax; the empty string is ⊥.
    pub fn clause(&self, text: &str) -> Result<Clause, ParseError> {
        let mut cur = Cursor::new(text, 1);
        if cur.at_end() {
            return Ok(Clause::bottom());
        }
        let lits = cur.literal_list()?;
        lits.iter()
            .map(|l| {
                self.intern(l)
                    .ok_or_else(|| cur.error_at(0, format!("atom {} does not occur", l.atom)))
            })
            .collect()
    }

    fn intern(&self, l: &Literal) -> Option<Lit> {
        Some(Lit::new(self.table.id(&l.atom)?, l.positive))
    }
}

/// Ordering sanity check for a loaded problem; empty when the atom order is
/// strict, total and respects the configuration's side conditions.
pub fn validate_ordering(problem: &Problem) -> Vec<String> {
    crate::ordering::check_atom_order(problem.ordering(), problem.atom_universe())
}

impl fmt::Display for Problem {
    /// Problem file syntax; parsing the output yields an equal problem.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = &self.ordering;
        writeln!(f, "order: {}", o.kind().keyword())?;
        match o.kind() {
            OrderKind::Listed => {
                let atoms: Vec<String> = o.listed_atoms().iter().map(|a| a.to_string()).collect();
                writeln!(f, "atoms: {}", atoms.join(" < "))?;
            }
            kind => {
                writeln!(f, "prec: {}", o.precedence().join(" < "))?;
                if kind == OrderKind::Kbo
                    && (o.default_weight() != 1 || !o.explicit_weights().is_empty())
                {
                    write!(f, "weights: default={}", o.default_weight())?;
                    for (s, w) in o.explicit_weights() {
                        write!(f, " {s}={w}")?;
                    }
                    writeln!(f)?;
                }
            }
        }
        for c in self.clauses.iter() {
            let lits: Vec<String> = c
                .literals()
                .iter()
                .map(|&l| self.table.to_symbolic(l).expect("interned").to_string())
                .collect();
            writeln!(f, "clause: {}", lits.join(" | "))?;
        }
        Ok(())
    }
}

pub fn parse_problem(text: &str) -> Result<Problem, ParseError> {
    let mut kind: Option<(OrderKind, usize)> = None;
    let mut prec: Option<(Vec<String>, usize)> = None;
    let mut weights: Option<(u32, BTreeMap<String, u32>, usize)> = None;
    let mut atoms: Option<(Vec<Atom>, usize)> = None;
    let mut clauses: Vec<(Vec<Literal>, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let Some(colon) = line.find(':') else {
            let col = line.len() - line.trim_start().len() + 1;
            return Err(ParseError {
                line: line_no,
                column: col,
                kind: ParseErrorKind::Syntax("expected `key: value`".into()),
            });
        };
        let key = line[..colon].trim();
        let mut cur = Cursor::new(line, line_no);
        cur.pos = line[..colon + 1].chars().count();
        let dup = |k: &str| ParseError {
            line: line_no,
            column: 1,
            kind: ParseErrorKind::DuplicateDirective(k.to_string()),
        };
        match key {
            "order" => {
                if kind.is_some() {
                    return Err(dup(key));
                }
                cur.skip_ws();
                let start = cur.pos;
                let word = cur.ident()?;
                cur.expect_end()?;
                let k = match word.as_str() {
                    "kbo" => OrderKind::Kbo,
                    "lpo" => OrderKind::Lpo,
                    "listed" => OrderKind::Listed,
                    _ => {
                        return Err(ParseError {
                            line: line_no,
                            column: start + 1,
                            kind: ParseErrorKind::UnknownOrderKind(word),
                        })
                    }
                };
                kind = Some((k, line_no));
            }
            "prec" => {
                if prec.is_some() {
                    return Err(dup(key));
                }
                let mut syms = vec![cur.ident()?];
                while cur.eat('<') {
                    syms.push(cur.ident()?);
                }
                cur.expect_end()?;
                prec = Some((syms, line_no));
            }
            "weights" => {
                if weights.is_some() {
                    return Err(dup(key));
                }
                let mut default = 1;
                let mut map = BTreeMap::new();
                while !cur.at_end() {
                    let name = cur.ident()?;
                    cur.expect('=')?;
                    let w = cur.number()?;
                    if name == "default" {
                        default = w;
                    } else {
                        map.insert(name, w);
                    }
                }
                weights = Some((default, map, line_no));
            }
            "atoms" => {
                if atoms.is_some() {
                    return Err(dup(key));
                }
                let mut list = vec![cur.atom()?];
                while cur.eat('<') {
                    list.push(cur.atom()?);
                }
                cur.expect_end()?;
                atoms = Some((list, line_no));
            }
            "clause" => {
                if cur.at_end() {
                    return Err(ParseError {
                        line: line_no,
                        column: colon + 2,
                        kind: ParseErrorKind::EmptyClause,
                    });
                }
                clauses.push((cur.literal_list()?, line_no));
            }
            other => {
                return Err(ParseError {
                    line: line_no,
                    column: 1,
                    kind: ParseErrorKind::Syntax(format!("unknown directive `{other}`")),
                })
            }
        }
    }

    let (kind, kind_line) = kind.unwrap_or((OrderKind::Kbo, 0));
    let at = |line: usize, kind: ParseErrorKind| ParseError {
        line,
        column: 1,
        kind,
    };
    let not_allowed = |d: &str, line: usize| {
        at(
            line,
            ParseErrorKind::DirectiveNotAllowed(d.to_string(), kind.keyword().to_string()),
        )
    };
    let ordering = match kind {
        OrderKind::Listed => {
            if let Some((_, l)) = prec {
                return Err(not_allowed("prec", l));
            }
            if let Some((_, _, l)) = weights {
                return Err(not_allowed("weights", l));
            }
            let Some((list, _)) = atoms else {
                return Err(at(kind_line, ParseErrorKind::MissingAtomList));
            };
            OrderingConfig::listed(list)
        }
        OrderKind::Kbo | OrderKind::Lpo => {
            if let Some((_, l)) = atoms {
                return Err(not_allowed("atoms", l));
            }
            if kind == OrderKind::Lpo {
                if let Some((_, _, l)) = weights {
                    return Err(not_allowed("weights", l));
                }
            }
            let occurring = occurring_symbols(clauses.iter().map(|(c, _)| c));
            let precedence = match prec {
                Some((syms, line)) => {
                    if let Some(missing) = occurring.iter().find(|s| !syms.contains(s)) {
                        return Err(at(line, ParseErrorKind::MissingPrecedence(missing.clone())));
                    }
                    syms
                }
                None => occurring.into_iter().collect(),
            };
            let (default, map, _) = weights.unwrap_or((1, BTreeMap::new(), 0));
            match kind {
                OrderKind::Kbo => OrderingConfig::kbo(precedence, default, map),
                _ => OrderingConfig::lpo(precedence),
            }
        }
    };

    let symbolic: Vec<Vec<Literal>> = clauses.iter().map(|(c, _)| c.clone()).collect();
    Problem::new(&symbolic, ordering).map_err(|e| {
        let line = match &e {
            ProblemError::EmptyClause(i) => clauses[*i].1,
            _ => kind_line.max(1),
        };
        at(line, ParseErrorKind::Problem(e))
    })
}

/// Every function and predicate symbol occurring in `clauses`, sorted.
fn occurring_symbols<'a>(clauses: impl Iterator<Item = &'a Vec<Literal>>) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for c in clauses {
        for l in c {
            out.insert(l.atom.predicate.clone());
            for t in &l.atom.args {
                t.for_each_symbol(&mut |s, _| {
                    out.insert(s.to_string());
                });
            }
        }
    }
    out
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(text: &str, line: usize) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn error_at(&self, pos: usize, msg: String) -> ParseError {
        ParseError {
            line: self.line,
            column: pos + 1,
            kind: ParseErrorKind::Syntax(msg),
        }
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        self.error_at(self.pos, msg.into())
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            Some(c) => return Err(self.error(format!("expected identifier, found `{c}`"))),
            None => return Err(self.error("expected identifier, found end of line")),
        }
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| self.error_at(start, "expected a non-negative integer".into()))
    }

    fn args(&mut self) -> Result<Vec<GroundTerm>, ParseError> {
        let mut args = Vec::new();
        if self.eat('(') {
            args.push(self.term()?);
            while self.eat(',') {
                args.push(self.term()?);
            }
            self.expect(')')?;
        }
        Ok(args)
    }

    fn term(&mut self) -> Result<GroundTerm, ParseError> {
        let symbol = self.ident()?;
        Ok(GroundTerm::app(symbol, self.args()?))
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let predicate = self.ident()?;
        Ok(Atom::new(predicate, self.args()?))
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let positive = !(self.eat('-') || self.eat('~'));
        Ok(Literal {
            positive,
            atom: self.atom()?,
        })
    }

    fn literal_list(&mut self) -> Result<Vec<Literal>, ParseError> {
        let mut lits = vec![self.literal()?];
        while self.eat('|') {
            lits.push(self.literal()?);
        }
        self.expect_end()?;
        Ok(lits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const INTRO: &str = "order: kbo\nprec: a < b < P < Q\nclause: P(a) | P(a)\nclause: -P(a) | Q(b)\nclause: -Q(b)\n";

    #[test]
    fn parses_intro_problem() {
        let p = parse_problem(INTRO).unwrap();
        assert_eq!(p.clauses().len(), 3);
        assert_eq!(p.atom_universe().len(), 2);
        assert_eq!(p.atom_universe()[0].to_string(), "P(a)");
        assert_eq!(p.clause_name(p.clauses().get(1).unwrap()), "Q(b) | -P(a)");
        assert!(validate_ordering(&p).is_empty());
    }

    #[test]
    fn single_clause_defaults() {
        let p = parse_problem("clause: P(a)").unwrap();
        assert_eq!(p.ordering().kind(), OrderKind::Kbo);
        assert_eq!(p.atom_universe(), &[Atom::with_constants("P", &["a"])]);
    }

    #[test]
    fn empty_clause_rejected() {
        let e = parse_problem("clause:").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::EmptyClause);
        assert_eq!(e.line, 1);
    }

    #[test]
    fn syntax_errors_carry_position() {
        let e = parse_problem("order: kbo\nclause: P(a) | | Q").unwrap_err();
        assert_eq!((e.line, e.column), (2, 16));
        let e = parse_problem("order: rpo\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownOrderKind("rpo".into()));
        assert_eq!(e.column, 8);
    }

    #[test]
    fn precedence_must_cover_symbols() {
        let e = parse_problem("prec: a < P\nclause: P(b)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingPrecedence("b".into()));
        assert_eq!(e.line, 1);
    }

    #[test]
    fn arity_and_role_consistency() {
        let e = parse_problem("clause: P(a) | P(a,b)").unwrap_err();
        assert!(matches!(
            e.kind,
            ParseErrorKind::Problem(ProblemError::ArityMismatch { .. })
        ));
        let e = parse_problem("clause: P(a) | a(b)").unwrap_err();
        assert!(matches!(
            e.kind,
            ParseErrorKind::Problem(ProblemError::SymbolClash(_))
        ));
    }

    #[test]
    fn listed_order_must_cover_atoms() {
        let e = parse_problem("order: listed\natoms: P(a)\nclause: P(a) | Q(b)").unwrap_err();
        assert!(matches!(
            e.kind,
            ParseErrorKind::Problem(ProblemError::InvalidOrdering(_))
        ));
        let p = parse_problem("order: listed\natoms: Q(b) < P(a)\nclause: P(a) | Q(b)").unwrap();
        assert_eq!(p.atom_universe()[0].to_string(), "Q(b)");
    }

    #[test]
    fn zero_weight_rejected() {
        let e = parse_problem("prec: a < P\nweights: default=1 a=0\nclause: P(a)").unwrap_err();
        match e.kind {
            ParseErrorKind::Problem(ProblemError::InvalidOrdering(v)) => {
                assert!(v[0].contains("zero-weight"))
            }
            k => panic!("{k:?}"),
        }
    }

    #[test]
    fn duplicates_merge_and_comments_ignored() {
        let p = parse_problem("# x\nclause: P(a) | -Q(a)  # tail\nclause: -Q(a) | P(a)\n").unwrap();
        assert_eq!(p.clauses().len(), 1);
    }

    #[test]
    fn print_parse_round_trip() {
        for text in [
            INTRO,
            "order: lpo\nprec: a < b < f < P\nclause: P(f(a)) | ~P(b)\n",
            "order: kbo\nprec: a < f < P\nweights: default=2 f=3\nclause: P(f(a))\n",
            "order: listed\natoms: Q(b) < P(a)\nclause: P(a) | Q(b)\n",
        ] {
            let p = parse_problem(text).unwrap();
            let again = parse_problem(&p.to_string()).unwrap();
            assert_eq!(p, again, "{}", p);
        }
    }

    #[test]
    fn interning_helpers() {
        let p = parse_problem(INTRO).unwrap();
        let c = p.clause("Q(b) | -P(a)").unwrap();
        assert_eq!(p.clauses().id_of(&c), Some(1));
        assert!(p.clause("").unwrap().is_bottom());
        assert!(p.lit("R(a)").is_err());
        assert_eq!(p.lit("-P(a)").unwrap(), Lit::neg(crate::clause::AtomId(0)));
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn printing_then_parsing_round_trips(seed in any::<u64>(), preds in 1usize..4, len in 1usize..5) {
            let params = crate::harness::generate::GenParams {
                preds,
                consts: 2,
                max_arity: 1,
                clauses: 6,
                max_len: len,
                seed,
                allow_tautologies: true,
            };
            let p = crate::harness::generate::generate(&params).unwrap();
            let back = parse_problem(&p.to_string()).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
