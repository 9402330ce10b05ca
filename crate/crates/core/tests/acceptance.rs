//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero when
//! any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use sclsim::harness::fuzz::{run_campaign, CampaignSummary};
use sclsim::simulation::FailureKind;
use sclsim::{
    lockstep_verify, parse_problem, run_scl_sup, run_sup_mo, Justification, Problem, SclStatus,
    SclSupRun, SeqKind, SupRule,
};

const INTRO: &str =
    "order: kbo\nprec: a < b < P < Q\nclause: P(a) | P(a)\nclause: -P(a) | Q(b)\nclause: -Q(b)\n";
const EXAMPLE: &str = "order: lpo\nprec: a < b < P < Q\nclause: P(a)\nclause: -P(b) | Q(a)\n\
clause: -P(a) | Q(a) | Q(a)\nclause: P(a) | -Q(a)\nclause: -P(a) | -Q(a)\n";
const THIRD: &str = "order: lpo\nprec: a < b < P < Q\nclause: P(a)\nclause: -P(b)\n\
clause: -P(a) | Q(a)\nclause: P(b) | -Q(a)\n";
const THIRD_WITHOUT_C2: &str = "order: lpo\nprec: a < b < P < Q\nclause: P(a)\n\
clause: -P(a) | Q(a)\nclause: P(b) | -Q(a)\n";

const CAMPAIGN_RUNS: u64 = 1000;
const CAMPAIGN_SEED: u64 = 2024;
const CAMPAIGN_BUDGET: Duration = Duration::from_secs(60);

type Check = Result<String, String>;

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn trail(p: &Problem, s: &sclsim::AnnotatedState) -> Vec<String> {
    s.scl
        .trail()
        .entries()
        .iter()
        .map(|e| {
            let l = p.atoms().lit_name(e.lit);
            match &e.just {
                Justification::Decision(k) => format!("{l}^{k}"),
                Justification::Propagation(c) => format!("{l}^{{{}}}", p.clause_name(c)),
            }
        })
        .collect()
}

fn learned(p: &Problem, run: &SclSupRun) -> Vec<String> {
    run.learned().iter().map(|c| p.clause_name(c)).collect()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let p = parse_problem(INTRO).map_err(|e| e.to_string())?;
    let sup = run_sup_mo(&p, 100);
    let got: Vec<(SupRule, String)> = sup
        .inferences
        .iter()
        .map(|i| (i.rule, p.clause_name(&i.conclusion)))
        .collect();
    let want = vec![
        (SupRule::Factoring, "P(a)".to_string()),
        (SupRule::SuperpositionLeft, "-P(a)".to_string()),
        (SupRule::SuperpositionLeft, "⊥".to_string()),
    ];
    ensure(got == want, || format!("SUP-MO derived {got:?}"))?;
    ensure(sup.inferences[1].premises == [2, 1], || {
        format!("second inference premises {:?}", sup.inferences[1].premises)
    })?;
    let model = |k: usize| -> Vec<String> {
        sup.construction(k)
            .model()
            .iter()
            .map(|&a| p.atoms().atom_name(a))
            .collect()
    };
    ensure(model(0).is_empty(), || {
        format!("model before step 1: {:?}", model(0))
    })?;
    for k in 1..3 {
        ensure(model(k) == ["P(a)", "Q(b)"], || {
            format!("model before step {}: {:?}", k + 1, model(k))
        })?;
    }
    let run = run_scl_sup(&p, 100).map_err(|e| e.to_string())?;
    ensure(learned(&p, &run) == ["-P(a)", "⊥"], || {
        format!("learned {:?}", learned(&p, &run))
    })?;
    let first = run
        .sequences
        .iter()
        .find(|q| matches!(q.after.scl.status(), SclStatus::Conflict(_)))
        .ok_or("no conflict raised")?;
    let t = trail(&p, &first.after);
    ensure(t == ["P(a)^1", "Q(b)^{Q(b) | -P(a)}"], || {
        format!("first conflict trail {t:?}")
    })?;
    ensure(
        first.after.scl.conflict_clause() == Some(&p.clause("-Q(b)").unwrap()),
        || "first conflict is not on -Q(b)".into(),
    )?;
    let el = start.elapsed();
    ensure(el < Duration::from_secs(1), || format!("took {el:?}"))?;
    Ok(format!("3 inferences, learned [-P(a), ⊥], {el:.2?}"))
}

fn criterion_2() -> Check {
    let p = parse_problem(EXAMPLE).map_err(|e| e.to_string())?;
    let sup = run_sup_mo(&p, 100);
    let got: Vec<String> = sup.conclusions().map(|c| p.clause_name(c)).collect();
    ensure(
        got == ["Q(a) | -P(a)", "-P(a) | -P(a)", "-P(a)", "⊥"],
        || format!("SUP-MO derived {got:?}"),
    )?;
    let run = run_scl_sup(&p, 100).map_err(|e| e.to_string())?;
    ensure(learned(&p, &run) == ["-P(a) | -P(a)", "⊥"], || {
        format!("learned {:?}", learned(&p, &run))
    })?;
    let part2: Vec<_> = run.sequences.iter().filter(|q| q.kind.is_part2()).collect();
    ensure(part2.len() == 2, || {
        format!("{} Part 2 sequences", part2.len())
    })?;
    let jump = (part2[1].before.ann.i, part2[1].after.ann.i);
    ensure(jump == (2, 4), || {
        format!("second Part 2 sequence moves {jump:?}")
    })?;
    Ok("4 inferences, learned [-P(a) | -P(a), ⊥], index 2→4".into())
}

fn criterion_3() -> Check {
    let mut notes = Vec::new();
    for (text, kind, want_trail, conflict) in [
        (
            THIRD,
            SeqKind::P2PropagateConflict,
            vec!["P(a)^1", "P(b)^{P(b) | -P(a)}"],
            Some("-P(b)"),
        ),
        (
            THIRD_WITHOUT_C2,
            SeqKind::P2Decide,
            vec!["P(a)^1", "P(b)^2"],
            None,
        ),
    ] {
        let p = parse_problem(text).map_err(|e| e.to_string())?;
        let run = run_scl_sup(&p, 100).map_err(|e| e.to_string())?;
        let q = run
            .sequences
            .iter()
            .find(|q| q.kind.is_part2())
            .ok_or("no Part 2 sequence")?;
        ensure(q.kind == kind, || format!("sequence kind {}", q.kind))?;
        let t = trail(&p, &q.after);
        ensure(t == want_trail, || format!("trail {t:?}"))?;
        let u: Vec<String> = q.after.scl.u().iter().map(|c| p.clause_name(c)).collect();
        ensure(u == ["P(b) | -P(a)"], || format!("U = {u:?}"))?;
        let got = q.after.scl.conflict_clause().map(|c| p.clause_name(c));
        ensure(got.as_deref() == conflict, || format!("conflict {got:?}"))?;
        notes.push(kind.label());
    }
    Ok(format!("variants {}", notes.join(" / ")))
}

fn criterion_4(c: &CampaignSummary) -> Check {
    for text in [INTRO, EXAMPLE, THIRD, THIRD_WITHOUT_C2] {
        let p = parse_problem(text).map_err(|e| e.to_string())?;
        let v = lockstep_verify(&p, 100);
        ensure(v.is_clean(), || {
            format!("golden example fails: {:?}", v.failures)
        })?;
    }
    let t = &c.tally;
    let kinds = [
        FailureKind::Run,
        FailureKind::Invariant,
        FailureKind::Progress,
        FailureKind::Regularity,
        FailureKind::Dichotomy,
    ];
    let bad: usize = kinds.iter().map(|&k| t.lockstep_failures(k)).sum();
    ensure(t.instances as u64 >= CAMPAIGN_RUNS, || {
        format!("{} instances", t.instances)
    })?;
    ensure(t.max_atoms <= 8, || {
        format!("{} atoms in an instance", t.max_atoms)
    })?;
    ensure(bad == 0 && t.generator_errors == 0, || {
        format!("{bad} failures\n{c}")
    })?;
    ensure(c.elapsed < CAMPAIGN_BUDGET, || {
        format!("campaign took {:.2?}", c.elapsed)
    })?;
    Ok(format!(
        "golden examples + {} instances clean on 1 worker in {:.2?}",
        t.instances, c.elapsed
    ))
}

fn criterion_5(c: &CampaignSummary) -> Check {
    let t = &c.tally;
    ensure(t.sup_redundant == 0 && t.learned_redundant == 0, || {
        format!(
            "{} redundant conclusions, {} redundant learned\n{c}",
            t.sup_redundant, t.learned_redundant
        )
    })?;
    Ok(format!(
        "{} SUP-MO conclusions and all learned clauses non-redundant",
        t.sup_inferences
    ))
}

fn criterion_6(c: &CampaignSummary) -> Check {
    let t = &c.tally;
    let bad = t.oracle_disagreement + t.lockstep_failures(FailureKind::Verdict);
    ensure(bad == 0, || format!("{bad} disagreements\n{c}"))?;
    Ok(format!(
        "{} sat / {} unsat, all three verdicts agree",
        t.sat, t.unsat
    ))
}

fn criterion_7(c: &CampaignSummary) -> Check {
    let bad = c.tally.lockstep_failures(FailureKind::Coincidence);
    ensure(bad == 0, || format!("{bad} coincidence failures\n{c}"))?;
    Ok("learned clauses coincide with SUP-MO derivations".into())
}

fn main() -> ExitCode {
    let campaign = run_campaign(CAMPAIGN_RUNS, CAMPAIGN_SEED, 1);
    let checks: Vec<(&str, Check)> = vec![
        ("intro example", criterion_1()),
        ("worked example", criterion_2()),
        ("third example", criterion_3()),
        ("invariant suite", criterion_4(&campaign)),
        ("non-redundancy", criterion_5(&campaign)),
        ("verdict agreement", criterion_6(&campaign)),
        ("coincidence", criterion_7(&campaign)),
    ];
    let mut failed = 0;
    for (k, (name, r)) in checks.iter().enumerate() {
        match r {
            Ok(note) => println!("criterion {} ({name}): PASS - {note}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL - {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria pass", checks.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria fail", checks.len());
        ExitCode::FAILURE
    }
}
