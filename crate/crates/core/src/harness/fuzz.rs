//! The seeded fuzzing campaign: random small problems through the lockstep
//! verifier, the oracle verdict and the non-redundancy audit.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::generate::{generate, GenParams};
use super::oracle::{brute_force_sat, is_redundant, SatResult};
use crate::clause::Clause;
use crate::problem::Problem;
use crate::simulation::{lockstep_verify, FailureKind, SclSupOutcome};
use crate::superposition::{SupOutcome, DEFAULT_CAP};

/// Parameters of instance `index` of the campaign seeded with `seed`: at most
/// 8 atoms, 10 clauses and 4 literals per clause.
pub fn fuzz_params(seed: u64, index: u64) -> GenParams {
    let inst_seed = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let mut rng = ChaCha8Rng::seed_from_u64(inst_seed);
    let max_arity = rng.gen_range(0..=1usize);
    let consts = rng.gen_range(1..=4usize);
    let max_preds = if max_arity == 0 { 8 } else { 8 / consts };
    GenParams {
        preds: rng.gen_range(1..=max_preds.max(1)),
        consts,
        max_arity,
        clauses: rng.gen_range(1..=10),
        max_len: rng.gen_range(1..=4),
        seed: inst_seed,
        allow_tautologies: false,
    }
}

/// Violation counters for one instance or a merged campaign.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub instances: usize,
    pub sat: usize,
    pub unsat: usize,
    pub sup_inferences: usize,
    pub scl_sequences: usize,
    pub max_atoms: usize,
    /// Lockstep failures by kind.
    pub lockstep: BTreeMap<FailureKind, usize>,
    pub sup_redundant: usize,
    pub learned_redundant: usize,
    pub oracle_disagreement: usize,
    pub generator_errors: usize,
    /// Reproduction notes for the first few failing instances.
    pub examples: Vec<String>,
}

const MAX_EXAMPLES: usize = 10;

impl Tally {
    pub fn lockstep_failures(&self, kind: FailureKind) -> usize {
        self.lockstep.get(&kind).copied().unwrap_or(0)
    }

    pub fn total_failures(&self) -> usize {
        self.lockstep.values().sum::<usize>()
            + self.sup_redundant
            + self.learned_redundant
            + self.oracle_disagreement
            + self.generator_errors
    }

    pub fn is_clean(&self) -> bool {
        self.total_failures() == 0
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.sat += other.sat;
        self.unsat += other.unsat;
        self.sup_inferences += other.sup_inferences;
        self.scl_sequences += other.scl_sequences;
        self.max_atoms = self.max_atoms.max(other.max_atoms);
        for (k, v) in other.lockstep {
            *self.lockstep.entry(k).or_default() += v;
        }
        self.sup_redundant += other.sup_redundant;
        self.learned_redundant += other.learned_redundant;
        self.oracle_disagreement += other.oracle_disagreement;
        self.generator_errors += other.generator_errors;
        self.examples.extend(other.examples);
        self.examples.sort();
        self.examples.truncate(MAX_EXAMPLES);
        self
    }
}

/// Runs every check on one problem.
pub fn check_instance(problem: &Problem) -> Tally {
    let mut t = Tally {
        instances: 1,
        max_atoms: problem.atoms().len(),
        ..Tally::default()
    };
    let note = |t: &mut Tally, what: String| {
        if t.examples.len() < MAX_EXAMPLES {
            t.examples.push(what);
        }
    };
    let report = lockstep_verify(problem, DEFAULT_CAP);
    for f in &report.failures {
        *t.lockstep.entry(f.kind).or_default() += 1;
        note(&mut t, format!("{:?}: {}", f.kind, f.detail));
    }

    let sup = &report.sup;
    t.sup_inferences = sup.inferences.len();
    for (k, c) in sup.conclusions().enumerate() {
        if is_redundant(c, sup.state(k)).unwrap_or(true) {
            t.sup_redundant += 1;
            note(
                &mut t,
                format!("SUP-MO conclusion {} is redundant", problem.clause_name(c)),
            );
        }
    }

    let oracle = brute_force_sat(problem.clauses().as_slice());
    let oracle_sat = oracle.as_ref().map(SatResult::is_sat).ok();
    let sup_sat = match sup.outcome {
        SupOutcome::Satisfiable(_) => Some(true),
        SupOutcome::Unsatisfiable => Some(false),
        _ => None,
    };
    if let Ok(run) = &report.scl {
        t.scl_sequences = run.sequences.len();
        let mut known: Vec<Clause> = problem.clauses().iter().cloned().collect();
        for c in run.learned() {
            if is_redundant(&c, &known).unwrap_or(true) {
                t.learned_redundant += 1;
                note(
                    &mut t,
                    format!("learned clause {} is redundant", problem.clause_name(&c)),
                );
            }
            known.push(c);
        }
    }
    let scl_sat = match &report.scl {
        Ok(run) => Some(matches!(run.outcome, SclSupOutcome::Satisfiable(_))),
        Err(_) => None,
    };
    if oracle_sat.is_none() || oracle_sat != sup_sat || oracle_sat != scl_sat {
        t.oracle_disagreement += 1;
        note(
            &mut t,
            format!("verdicts: oracle {oracle_sat:?}, SUP-MO {sup_sat:?}, SCL-SUP {scl_sat:?}"),
        );
    }
    match oracle_sat {
        Some(true) => t.sat = 1,
        Some(false) => t.unsat = 1,
        None => {}
    }
    if !t.is_clean() {
        for e in &mut t.examples {
            e.push_str(&format!("\n    in:\n{}", indent(&problem.to_string())));
        }
    }
    t
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("      {l}\n")).collect()
}

fn run_index(seed: u64, index: u64) -> Tally {
    let params = fuzz_params(seed, index);
    match generate(&params) {
        Ok(p) => {
            let mut t = check_instance(&p);
            for e in &mut t.examples {
                *e = format!("[instance {index}, seed {}] {e}", params.seed);
            }
            t
        }
        Err(e) => Tally {
            instances: 1,
            generator_errors: 1,
            examples: vec![format!("[instance {index}] generator: {e}")],
            ..Tally::default()
        },
    }
}

#[derive(Debug, Clone)]
pub struct CampaignSummary {
    pub runs: u64,
    pub seed: u64,
    pub workers: usize,
    pub elapsed: Duration,
    pub tally: Tally,
}

/// Runs `runs` instances on `workers` threads (1 runs inline). Results do
/// not depend on the worker count.
pub fn run_campaign(runs: u64, seed: u64, workers: usize) -> CampaignSummary {
    let start = Instant::now();
    let tally = if workers <= 1 {
        (0..runs)
            .map(|i| run_index(seed, i))
            .fold(Tally::default(), Tally::merge)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        pool.install(|| {
            (0..runs)
                .into_par_iter()
                .map(|i| run_index(seed, i))
                .reduce(Tally::default, Tally::merge)
        })
    };
    CampaignSummary {
        runs,
        seed,
        workers: workers.max(1),
        elapsed: start.elapsed(),
        tally,
    }
}

impl fmt::Display for CampaignSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = &self.tally;
        writeln!(
            f,
            "campaign: {} instances, seed {}, {} worker(s), {:.2?}",
            self.runs, self.seed, self.workers, self.elapsed
        )?;
        writeln!(
            f,
            "  sat {} / unsat {}, {} SUP-MO inferences, {} atomic sequences, max {} atoms",
            t.sat, t.unsat, t.sup_inferences, t.scl_sequences, t.max_atoms
        )?;
        let rows = [
            ("run errors", t.lockstep_failures(FailureKind::Run)),
            (
                "invariant failures",
                t.lockstep_failures(FailureKind::Invariant),
            ),
            (
                "progress failures",
                t.lockstep_failures(FailureKind::Progress),
            ),
            (
                "regularity failures",
                t.lockstep_failures(FailureKind::Regularity),
            ),
            (
                "final-state failures",
                t.lockstep_failures(FailureKind::Dichotomy),
            ),
            (
                "model/verdict failures",
                t.lockstep_failures(FailureKind::Verdict),
            ),
            ("oracle disagreements", t.oracle_disagreement),
            (
                "coincidence failures",
                t.lockstep_failures(FailureKind::Coincidence),
            ),
            ("redundant SUP-MO conclusions", t.sup_redundant),
            ("redundant learned clauses", t.learned_redundant),
            ("generator errors", t.generator_errors),
        ];
        for (label, n) in rows {
            writeln!(f, "  {label:<30} {n:>6}")?;
        }
        for e in &t.examples {
            writeln!(f, "  ! {e}")?;
        }
        write!(
            f,
            "  result: {}",
            if t.is_clean() { "PASS" } else { "FAIL" }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_stay_in_bounds() {
        for i in 0..500 {
            let p = fuzz_params(42, i);
            assert!(p.max_atoms() <= 8, "{p:?}");
            assert!((1..=10).contains(&p.clauses));
            assert!((1..=4).contains(&p.max_len));
        }
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let a = run_campaign(40, 9, 1).tally;
        let b = run_campaign(40, 9, 3).tally;
        assert_eq!(a, b);
        assert_eq!(a.instances, 40);
    }

    #[test]
    fn small_campaign_is_clean() {
        let s = run_campaign(60, 1, 1);
        assert!(s.tally.is_clean(), "{s}");
    }
}
