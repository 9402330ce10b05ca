//! Seeded random ground problems over a small signature.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::oracle::ATOM_BUDGET;
use crate::problem::{parse_problem, Problem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    pub preds: usize,
    pub consts: usize,
    pub max_arity: usize,
    pub clauses: usize,
    pub max_len: usize,
    pub seed: u64,
    #[serde(default)]
    pub allow_tautologies: bool,
}

impl GenParams {
    /// Upper bound on the atom universe size.
    pub fn max_atoms(&self) -> usize {
        self.preds
            .saturating_mul(self.consts.saturating_pow(self.max_arity as u32))
    }

    /// The comment line that opens every generated problem.
    pub fn header(&self) -> String {
        format!(
            "# generated: preds={} consts={} max_arity={} clauses={} max_len={} seed={} tautologies={}",
            self.preds,
            self.consts,
            self.max_arity,
            self.clauses,
            self.max_len,
            self.seed,
            self.allow_tautologies
        )
    }

    /// Recovers the parameters from a problem text that starts with
    /// [`GenParams::header`].
    pub fn from_header(text: &str) -> Option<GenParams> {
        let rest = text.lines().next()?.strip_prefix("# generated:")?;
        let fields: std::collections::HashMap<&str, &str> = rest
            .split_whitespace()
            .filter_map(|kv| kv.split_once('='))
            .collect();
        let num = |k: &str| fields.get(k)?.parse::<usize>().ok();
        Some(GenParams {
            preds: num("preds")?,
            consts: num("consts")?,
            max_arity: num("max_arity")?,
            clauses: num("clauses")?,
            max_len: num("max_len")?,
            seed: fields.get("seed")?.parse().ok()?,
            allow_tautologies: fields.get("tautologies")?.parse().ok()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("`{0}` must be at least 1")]
    ZeroCount(&'static str),
    #[error("up to {0} atoms exceed the oracle budget of {ATOM_BUDGET}")]
    UniverseTooLarge(usize),
    #[error("generated text failed to parse: {0}")]
    Parse(String),
}

const PREDICATES: &[&str] = &["P", "Q", "R", "S", "T", "U", "V", "W"];
const CONSTANTS: &[&str] = &["a", "b", "c", "d", "e", "f", "g", "h"];

fn symbol(pool: &[&str], prefix: &str, i: usize) -> String {
    pool.get(i)
        .map_or_else(|| format!("{prefix}{i}"), |s| s.to_string())
}

/// Problem text for `params`; the same params always give the same text.
pub fn generate_text(params: &GenParams) -> Result<String, GenError> {
    for (name, v) in [
        ("preds", params.preds),
        ("consts", params.consts),
        ("clauses", params.clauses),
        ("max_len", params.max_len),
    ] {
        if v == 0 {
            return Err(GenError::ZeroCount(name));
        }
    }
    if params.max_atoms() > ATOM_BUDGET {
        return Err(GenError::UniverseTooLarge(params.max_atoms()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let preds: Vec<String> = (0..params.preds)
        .map(|i| symbol(PREDICATES, "P", i))
        .collect();
    let consts: Vec<String> = (0..params.consts)
        .map(|i| symbol(CONSTANTS, "c", i))
        .collect();

    let mut universe = Vec::new();
    for p in &preds {
        let arity = rng.gen_range(0..=params.max_arity);
        let mut tuples: Vec<Vec<&str>> = vec![vec![]];
        for _ in 0..arity {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    consts.iter().map(move |c| {
                        let mut t = t.clone();
                        t.push(c.as_str());
                        t
                    })
                })
                .collect();
        }
        for t in tuples {
            universe.push(if t.is_empty() {
                p.clone()
            } else {
                format!("{p}({})", t.join(","))
            });
        }
    }

    // Clause identity up to literal order.
    let mut seen = HashSet::new();
    let mut clauses: Vec<Vec<(bool, usize)>> = Vec::new();
    let mut attempts = 0;
    while clauses.len() < params.clauses && attempts < params.clauses * 50 {
        attempts += 1;
        let len = rng.gen_range(1..=params.max_len);
        let mut lits: Vec<(bool, usize)> = (0..len)
            .map(|_| (rng.gen_bool(0.5), rng.gen_range(0..universe.len())))
            .collect();
        if !params.allow_tautologies && lits.iter().any(|&(s, a)| lits.contains(&(!s, a))) {
            continue;
        }
        let mut key = lits.clone();
        key.sort_unstable();
        if seen.insert(key) {
            lits.shrink_to_fit();
            clauses.push(lits);
        }
    }

    let mut occurring: Vec<usize> = clauses.iter().flatten().map(|&(_, a)| a).collect();
    occurring.sort_unstable();
    occurring.dedup();

    let mut out = format!("{}\n", params.header());
    match rng.gen_range(0..3) {
        kind @ (0 | 1) => {
            let kind = if kind == 0 { "kbo" } else { "lpo" };
            let mut prec: Vec<&str> = preds.iter().chain(&consts).map(String::as_str).collect();
            prec.shuffle(&mut rng);
            out.push_str(&format!("order: {kind}\nprec: {}\n", prec.join(" < ")));
        }
        _ => {
            let mut atoms: Vec<&str> = occurring.iter().map(|&a| universe[a].as_str()).collect();
            atoms.shuffle(&mut rng);
            out.push_str(&format!("order: listed\natoms: {}\n", atoms.join(" < ")));
        }
    }
    for c in &clauses {
        let lits: Vec<String> = c
            .iter()
            .map(|&(pos, a)| format!("{}{}", if pos { "" } else { "-" }, universe[a]))
            .collect();
        out.push_str(&format!("clause: {}\n", lits.join(" | ")));
    }
    Ok(out)
}

pub fn generate(params: &GenParams) -> Result<Problem, GenError> {
    let text = generate_text(params)?;
    parse_problem(&text).map_err(|e| GenError::Parse(e.to_string()))
}
