//! Fixed inputs shared by the benchmarks.

use sclsim::harness::generate::{generate, GenParams};
use sclsim::{parse_problem, Problem};

pub const INTRO: &str =
    "order: kbo\nprec: a < b < P < Q\nclause: P(a) | P(a)\nclause: -P(a) | Q(b)\nclause: -Q(b)\n";

pub const EXAMPLE: &str = "order: lpo\nprec: a < b < P < Q\nclause: P(a)\nclause: -P(b) | Q(a)\n\
clause: -P(a) | Q(a) | Q(a)\nclause: P(a) | -Q(a)\nclause: -P(a) | -Q(a)\n";

pub fn intro() -> Problem {
    parse_problem(INTRO).expect("intro problem parses")
}

pub fn example() -> Problem {
    parse_problem(EXAMPLE).expect("example problem parses")
}

/// A fixed batch of random 8-atom problems.
pub fn random_batch(n: u64) -> Vec<Problem> {
    (0..n)
        .map(|seed| {
            generate(&GenParams {
                preds: 4,
                consts: 2,
                max_arity: 1,
                clauses: 10,
                max_len: 4,
                seed,
                allow_tautologies: false,
            })
            .expect("valid parameters")
        })
        .collect()
}
