//! `sclsim`: run SUP-MO, SCL-SUP and the lockstep verifier on ground
//! problem files.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sclsim::harness::fuzz::run_campaign;
use sclsim::harness::generate::{generate_text, GenParams};
use sclsim::harness::trace::{build_trace, scl_verdict, sup_verdict, TraceParts};
use sclsim::simulation::INVARIANT_NAMES;
use sclsim::superposition::DEFAULT_CAP;
use sclsim::{
    brute_force_sat, is_redundant, lockstep_verify, parse_problem, run_scl_sup, run_sup_mo, Clause,
    Problem, SatResult, SclSupOutcome, SupOutcome,
};

const EXIT_SAT: u8 = 0;
const EXIT_UNSAT: u8 = 1;
const EXIT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(
    name = "sclsim",
    version,
    about = "Ground superposition and SCL simulation workbench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Problem file, or `-` for stdin.
    file: PathBuf,
    /// Write a JSON trace to this path.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Bound on inferences (sup) or atomic sequences (scl, simulate).
    #[arg(long, default_value_t = DEFAULT_CAP)]
    max_steps: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Run superposition under the model-operator strategy.
    Sup(RunArgs),
    /// Run SCL under the superposition-simulating strategy.
    Scl(RunArgs),
    /// Run both and verify the simulation relation in lockstep.
    Simulate {
        #[command(flatten)]
        run: RunArgs,
        /// Exit with status 2 on any verification failure.
        #[arg(long)]
        strict: bool,
    },
    /// Decide satisfiability by exhaustive enumeration.
    Oracle { file: PathBuf },
    /// Audit every clause either strategy derives for redundancy.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max_steps: usize,
    },
    /// Print a random problem.
    Gen {
        #[arg(long)]
        preds: usize,
        #[arg(long)]
        consts: usize,
        #[arg(long)]
        clauses: usize,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        max_arity: usize,
        #[arg(long)]
        allow_tautologies: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the fuzzing campaign.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        runs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

fn read_problem(path: &Path) -> Result<Problem, String> {
    read_problem_with_params(path).map(|(p, _)| p)
}

/// The problem plus the generator parameters when the file came from `gen`.
fn read_problem_with_params(path: &Path) -> Result<(Problem, Option<GenParams>), String> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("stdin: {e}"))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
    };
    let p = parse_problem(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((p, GenParams::from_header(&text)))
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_trace(
    path: Option<&PathBuf>,
    problem: &Problem,
    parts: TraceParts<'_>,
) -> Result<(), String> {
    match path {
        Some(p) => write_file(p, &build_trace(problem, parts).to_json()),
        None => Ok(()),
    }
}

fn model_line(p: &Problem, m: &std::collections::BTreeSet<sclsim::AtomId>) -> String {
    let names: Vec<String> = m.iter().map(|&a| p.atoms().atom_name(a)).collect();
    format!("{{{}}}", names.join(", "))
}

fn cmd_sup(args: &RunArgs) -> Result<u8, String> {
    let (p, gen) = read_problem_with_params(&args.file)?;
    let run = run_sup_mo(&p, args.max_steps);
    for (k, inf) in run.inferences.iter().enumerate() {
        let premises: Vec<String> = inf
            .premises
            .iter()
            .map(|id| format!("C{}", id + 1))
            .collect();
        println!(
            "{:>3}. {:<18} {:<10} => C{}: {}",
            k + 1,
            format!("{:?}", inf.rule),
            premises.join(","),
            run.initial_len + k + 1,
            p.clause_name(&inf.conclusion)
        );
    }
    write_trace(
        args.trace.as_ref(),
        &p,
        TraceParts {
            gen: gen.as_ref(),
            sup: Some(&run),
            ..TraceParts::default()
        },
    )?;
    match &run.outcome {
        SupOutcome::Satisfiable(m) => {
            println!("sat, model {}", model_line(&p, m));
            Ok(EXIT_SAT)
        }
        SupOutcome::Unsatisfiable => {
            println!("unsat");
            Ok(EXIT_UNSAT)
        }
        other => Err(sup_verdict(other)),
    }
}

fn cmd_scl(args: &RunArgs) -> Result<u8, String> {
    let (p, gen) = read_problem_with_params(&args.file)?;
    let res = run_scl_sup(&p, args.max_steps);
    write_trace(
        args.trace.as_ref(),
        &p,
        TraceParts {
            gen: gen.as_ref(),
            scl: Some(&res),
            ..TraceParts::default()
        },
    )?;
    let run = res.map_err(|e| e.to_string())?;
    for (k, q) in run.sequences.iter().enumerate() {
        let steps: Vec<String> = q.steps.iter().map(|s| s.render(p.atoms())).collect();
        let steps = if steps.is_empty() {
            "(no rule applied)".to_string()
        } else {
            steps.join("; ")
        };
        println!("{:>3}. {}  {steps}", k + 1, q.kind);
    }
    for c in run.learned() {
        println!("learned: {}", p.clause_name(&c));
    }
    match &run.outcome {
        SclSupOutcome::Satisfiable(m) => {
            println!("sat, model {}", model_line(&p, m));
            Ok(EXIT_SAT)
        }
        SclSupOutcome::Unsatisfiable => {
            println!("unsat");
            Ok(EXIT_UNSAT)
        }
    }
}

fn cmd_simulate(args: &RunArgs, strict: bool) -> Result<u8, String> {
    let (p, gen) = read_problem_with_params(&args.file)?;
    let v = lockstep_verify(&p, args.max_steps);
    write_trace(
        args.trace.as_ref(),
        &p,
        TraceParts {
            gen: gen.as_ref(),
            verify: Some(&v),
            ..TraceParts::default()
        },
    )?;
    for e in &v.events {
        let failed: Vec<&str> = INVARIANT_NAMES
            .iter()
            .enumerate()
            .filter(|(k, _)| !e.invariants.passed(*k))
            .map(|(_, n)| *n)
            .collect();
        let progress = match e.progress {
            None => "-",
            Some(true) => "ok",
            Some(false) => "FAIL",
        };
        let inv = if failed.is_empty() {
            "all 14 ok".to_string()
        } else {
            format!("FAIL ({})", failed.join(","))
        };
        println!(
            "after {:>3}: invariants {inv}, progress {progress}",
            e.after_seq
        );
    }
    for f in &v.failures {
        println!("{:?}: {}", f.kind, f.detail);
    }
    println!(
        "SUP-MO {}, SCL-SUP {}, verification {}",
        sup_verdict(&v.sup.outcome),
        scl_verdict(&v.scl),
        if v.is_clean() { "clean" } else { "FAILED" }
    );
    if strict && !v.is_clean() {
        return Ok(EXIT_ERROR);
    }
    match &v.sup.outcome {
        SupOutcome::Satisfiable(_) => Ok(EXIT_SAT),
        SupOutcome::Unsatisfiable => Ok(EXIT_UNSAT),
        o => Err(sup_verdict(o)),
    }
}

fn cmd_oracle(file: &Path) -> Result<u8, String> {
    let p = read_problem(file)?;
    match brute_force_sat(p.clauses().as_slice()).map_err(|e| e.to_string())? {
        SatResult::Sat(m) => {
            println!("sat, model {}", model_line(&p, &m));
            Ok(EXIT_SAT)
        }
        SatResult::Unsat => {
            println!("unsat");
            Ok(EXIT_UNSAT)
        }
    }
}

/// Exit 0 when nothing derived is redundant, 1 otherwise.
fn cmd_check(file: &Path, max_steps: usize) -> Result<u8, String> {
    let p = read_problem(file)?;
    let mut bad = 0;
    let mut report = |origin: &str, c: &Clause, against: &[Clause]| -> Result<(), String> {
        let r = is_redundant(c, against).map_err(|e| e.to_string())?;
        bad += usize::from(r);
        println!(
            "{origin:<8} {:<30} {}",
            p.clause_name(c),
            if r { "REDUNDANT" } else { "non-redundant" }
        );
        Ok(())
    };
    let sup = run_sup_mo(&p, max_steps);
    for (k, c) in sup.conclusions().enumerate() {
        report("sup", c, sup.state(k))?;
    }
    let run = run_scl_sup(&p, max_steps).map_err(|e| e.to_string())?;
    let mut known: Vec<Clause> = p.clauses().iter().cloned().collect();
    for c in run.learned() {
        report("learned", &c, &known)?;
        known.push(c);
    }
    println!("{bad} redundant clause(s)");
    Ok(if bad == 0 { EXIT_SAT } else { EXIT_UNSAT })
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Sup(a) => cmd_sup(&a),
        Command::Scl(a) => cmd_scl(&a),
        Command::Simulate { run, strict } => cmd_simulate(&run, strict),
        Command::Oracle { file } => cmd_oracle(&file),
        Command::Check { file, max_steps } => cmd_check(&file, max_steps),
        Command::Gen {
            preds,
            consts,
            clauses,
            max_len,
            seed,
            max_arity,
            allow_tautologies,
            out,
        } => {
            let params = GenParams {
                preds,
                consts,
                max_arity,
                clauses,
                max_len,
                seed,
                allow_tautologies,
            };
            let text = generate_text(&params).map_err(|e| e.to_string())?;
            match out {
                Some(path) => write_file(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Fuzz {
            runs,
            seed,
            workers,
        } => {
            let summary = run_campaign(runs, seed, workers);
            println!("{summary}");
            Ok(if summary.tally.is_clean() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
