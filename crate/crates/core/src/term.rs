//! Symbolic ground syntax: terms, atoms and literals as they appear in a
//! problem file. Reasoning code works on the interned forms in
//! [`crate::clause`]; these types are the user-facing view.

use std::fmt;

/// A ground term `f(t1, ..., tn)`; constants have no arguments.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundTerm {
    pub symbol: String,
    pub args: Vec<GroundTerm>,
}

impl GroundTerm {
    pub fn constant(symbol: impl Into<String>) -> Self {
        GroundTerm {
            symbol: symbol.into(),
            args: Vec::new(),
        }
    }

    pub fn app(symbol: impl Into<String>, args: Vec<GroundTerm>) -> Self {
        GroundTerm {
            symbol: symbol.into(),
            args,
        }
    }

    /// Visits every `(symbol, arity)` pair occurring in the term.
    pub fn for_each_symbol(&self, f: &mut impl FnMut(&str, usize)) {
        f(&self.symbol, self.args.len());
        for a in &self.args {
            a.for_each_symbol(f);
        }
    }
}

impl fmt::Display for GroundTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol)?;
        write_args(f, &self.args)
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[GroundTerm]) -> fmt::Result {
    if args.is_empty() {
        return Ok(());
    }
    f.write_str("(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

/// A ground atom `P(t1, ..., tn)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<GroundTerm>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<GroundTerm>) -> Self {
        Atom {
            predicate: predicate.into(),
            args,
        }
    }

    /// `P(c1, ..., cn)` over constants, handy in tests.
    pub fn with_constants(predicate: &str, constants: &[&str]) -> Self {
        Atom::new(
            predicate,
            constants.iter().map(|c| GroundTerm::constant(*c)).collect(),
        )
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        write_args(f, &self.args)
    }
}

/// A signed atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub positive: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal {
            positive: true,
            atom,
        }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal {
            positive: false,
            atom,
        }
    }

    pub fn complement(&self) -> Self {
        Literal {
            positive: !self.positive,
            atom: self.atom.clone(),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("-")?;
        }
        write!(f, "{}", self.atom)
    }
}
