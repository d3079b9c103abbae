//! Acceptance criteria AC1 to AC10. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bihamilton::hamilton::{
    bipartite_closure, find_good_linear_forest, find_hamilton_cycle, find_two_factor, recognize_gnn,
};
use bihamilton::spectral::{rho_gnn_exact, spectral_radius};
use bihamilton::toughness::is_one_tough;
use bihamilton::verify::{enumerate_balanced, run_suite, SuiteConfig, SuiteName, SuiteReport, Verdict};
use bihamilton::BipartiteGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn suite(name: SuiteName, range: (usize, usize), samples: Option<usize>, seed: u64) -> Result<SuiteReport, String> {
    let mut config = SuiteConfig::new(name);
    (config.n_min, config.n_max) = range;
    config.samples = samples;
    config.seed = seed;
    run_suite(&config).map_err(|e| format!("{} suite error: {e}", name.as_str()))
}

fn require_ok(report: &SuiteReport) -> Result<(), String> {
    let s = &report.summary;
    if s.ok() {
        Ok(())
    } else {
        let first = report.records.iter().find(|r| !r.passed());
        Err(format!(
            "{} failed, {} counterexamples; first failure: {:?}",
            s.failed,
            s.counterexamples,
            first.map(|r| (&r.record.hash, r.record.n, &r.note))
        ))
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("{what} took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let report = suite(SuiteName::Extremal, (5, 24), None, 0)?;
    require_ok(&report)?;
    if report.records.len() != 20 {
        return Err(format!("expected 20 records, got {}", report.records.len()));
    }
    // Independent restatement of every property, without the suite.
    for n in 5..=24 {
        let g = BipartiteGraph::extremal(n).map_err(|e| e.to_string())?;
        let base = (n * (n - 3)) as f64;
        let rho = spectral_radius(&g, 1e-12).map_err(|e| e.to_string())?.rho;
        let exact = rho_gnn_exact(n, 1e-13).map_err(|e| e.to_string())?;
        let ok = is_one_tough(&g).map_err(|e| e.to_string())?.tough
            && find_hamilton_cycle(&g).map_err(|e| e.to_string())?.is_none()
            && find_two_factor(&g).map_err(|e| e.to_string())?.is_none()
            && recognize_gnn(&g).map_err(|e| e.to_string())?
            && g.edge_count() == n * (n - 3) + 6
            && base.sqrt() < rho
            && rho < (base + 6.0).sqrt()
            && (rho - exact).abs() <= 1e-8;
        if !ok {
            return Err(format!("extremal graph fails at n = {n}"));
        }
        if n <= 9 && (common::jacobi_rho(&g) - exact).abs() > 1e-8 {
            return Err(format!("dense oracle disagrees with the exact threshold at n = {n}"));
        }
        if n <= 10 && common::held_karp(&g) {
            return Err(format!("Held-Karp finds a cycle at n = {n}"));
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60), "extremal family")?;
    Ok(format!("n = 5..24, 20 graphs, {elapsed:.2?}"))
}

fn ac2() -> Outcome {
    let report = suite(SuiteName::EdgeBound, (1, 10), Some(1000), 0)?;
    require_ok(&report)?;
    let constructed: Vec<_> = report
        .records
        .iter()
        .filter(|r| r.note.as_deref().is_some_and(|n| n.ends_with("constructed")))
        .collect();
    if report.records.len() != 1000 || constructed.len() != 50 {
        return Err(format!(
            "{} records, {} constructed",
            report.records.len(),
            constructed.len()
        ));
    }
    if let Some(r) = constructed.iter().find(|r| r.note.as_deref() != Some("Equality, constructed")) {
        return Err(format!("constructed instance {} not at equality", r.record.hash));
    }
    let strict = report
        .records
        .iter()
        .filter(|r| r.note.as_deref() == Some("Strict"))
        .count();
    let incidental = 1000 - 50 - strict;
    Ok(format!(
        "1000 graphs, 50 constructed at equality, {strict} strict, {incidental} random graphs already complete bipartite plus isolated vertices, max excess {:e}",
        report.summary.max_deviation
    ))
}

fn ac3() -> Outcome {
    let report = suite(SuiteName::Monotonicity, (2, 10), Some(500), 0)?;
    require_ok(&report)?;
    Ok(format!(
        "{} trials, max increase {:e}",
        report.records.len(),
        report.summary.max_deviation
    ))
}

fn ac4() -> Outcome {
    let start = Instant::now();
    let exhaustive = suite(SuiteName::ClosureEquivalence, (3, 4), None, 0)?;
    require_ok(&exhaustive)?;
    if exhaustive.records.len() != 512 + 65_536 {
        return Err(format!("exhaustive run has {} records", exhaustive.records.len()));
    }
    for n in 3..=4 {
        for g in enumerate_balanced(n).map_err(|e| e.to_string())? {
            let h = bipartite_closure(&g).map_err(|e| e.to_string())?;
            if common::held_karp(&g) != common::held_karp(&h) {
                return Err(format!("Held-Karp separates {g:?} from its closure"));
            }
        }
    }
    let sampled = suite(SuiteName::ClosureEquivalence, (6, 8), Some(2000), 0)?;
    require_ok(&sampled)?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(300), "closure equivalence")?;
    Ok(format!(
        "{} exhaustive + {} sampled, 0 mismatches, {elapsed:.2?}",
        exhaustive.records.len(),
        sampled.records.len()
    ))
}

fn ac5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut nontrivial = 0;
    for i in 0..50 {
        let n = 4 + i % 9;
        let p = rng.gen_range(0.35..0.75);
        let g = common::random_graph(n, p, &mut rng);
        let h = bipartite_closure(&g).map_err(|e| e.to_string())?;
        if h != g {
            nontrivial += 1;
        }
        for order in 0..100 {
            if common::random_order_closure(&g, &mut rng) != h {
                return Err(format!("graph {i}, order {order}: closures differ"));
            }
        }
        if bipartite_closure(&h).map_err(|e| e.to_string())? != h {
            return Err(format!("graph {i}: closure not idempotent"));
        }
    }
    Ok(format!("50 graphs x 100 orders identical, {nontrivial} with added edges"))
}

fn ac6() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut check = |g: &BipartiteGraph| -> Result<(), String> {
        let rho = spectral_radius(g, 1e-12).map_err(|e| e.to_string())?.rho;
        worst = worst.max((rho - common::jacobi_rho(g)).abs());
        Ok(())
    };
    for g in enumerate_balanced(3).map_err(|e| e.to_string())? {
        check(&g)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..500 {
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.05..0.95);
        check(&common::random_graph(n, p, &mut rng))?;
    }
    if worst > 1e-8 {
        return Err(format!("max deviation {worst:e}"));
    }
    Ok(format!("1012 graphs, max deviation {worst:e}"))
}

fn ac7() -> Outcome {
    let compare = |g: &BipartiteGraph| -> Result<(), String> {
        let found = find_two_factor(g).map_err(|e| e.to_string())?;
        if found.is_some() != common::brute_two_factor(g) {
            return Err(format!("disagreement on {g:?}"));
        }
        if let Some(f) = found {
            f.verify(g).map_err(|e| e.to_string())?;
        }
        Ok(())
    };
    let mut count = 0;
    for n in 0..=3 {
        for g in enumerate_balanced(n).map_err(|e| e.to_string())? {
            compare(&g)?;
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let mask: u16 = rng.gen();
        let edges = (0..16).filter(|i| mask >> i & 1 == 1).map(|i| (i / 4, i % 4));
        compare(&BipartiteGraph::from_edges(4, 4, edges).map_err(|e| e.to_string())?)?;
        count += 1;
    }
    Ok(format!("{count} graphs agree"))
}

fn ac8() -> Outcome {
    let report = suite(SuiteName::Claim3, (5, 24), Some(1000), 0)?;
    require_ok(&report)?;
    for n in 5..=24 {
        let g = BipartiteGraph::extremal(n).map_err(|e| e.to_string())?;
        if find_good_linear_forest(&g, &[0, 1, 2]).map_err(|e| e.to_string())?.is_some() {
            return Err(format!("forest found on the extremal graph at n = {n}"));
        }
    }
    let forests = report
        .records
        .iter()
        .filter(|r| r.note.as_deref().is_some_and(|n| n.starts_with("forest")))
        .count();
    Ok(format!(
        "1000 shaped graphs, {forests} forests turned into verified cycles, none on extremal n = 5..24"
    ))
}

fn ac9() -> Outcome {
    let start = Instant::now();
    let report = suite(SuiteName::Sweep, (16, 18), Some(10_002), 0)?;
    require_ok(&report)?;
    let s = &report.summary;
    if s.records < 10_000 || s.counterexamples != 0 {
        return Err(format!("{} records, {} counterexamples", s.records, s.counterexamples));
    }
    let extremal = report
        .records
        .iter()
        .filter(|r| r.record.verdict == Verdict::Extremal && r.note.as_deref() == Some("trace: IsGnn"))
        .count();
    if extremal < 3 {
        return Err(format!("only {extremal} Extremal records"));
    }
    let hamiltonian = report
        .records
        .iter()
        .filter(|r| r.record.verdict == Verdict::Hamiltonian)
        .count();
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1800), "hypothesis sweep")?;
    Ok(format!(
        "{} samples, {hamiltonian} Hamiltonian, {extremal} Extremal, 0 counterexamples, traces agree, {elapsed:.2?}",
        s.records
    ))
}

fn ac10() -> Outcome {
    let k60 = BipartiteGraph::complete(60, 60).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let rho = spectral_radius(&k60, 1e-10).map_err(|e| e.to_string())?.rho;
    let t_rho = start.elapsed();
    within(t_rho, Duration::from_millis(100), "spectral radius of K60,60")?;
    if (rho - 60.0).abs() > 1e-8 {
        return Err(format!("rho(K60,60) = {rho}"));
    }

    let g24 = BipartiteGraph::extremal(24).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let cycle = find_hamilton_cycle(&g24).map_err(|e| e.to_string())?;
    let t_ham = start.elapsed();
    if cycle.is_some() {
        return Err("cycle reported on the extremal graph".into());
    }
    within(t_ham, Duration::from_secs(1), "Hamilton search on G24")?;

    let start = Instant::now();
    let report = suite(SuiteName::ClosureEquivalence, (4, 4), None, 0)?;
    require_ok(&report)?;
    let t_closure = start.elapsed();
    within(t_closure, Duration::from_secs(300), "n = 4 closure suite")?;
    Ok(format!(
        "K60,60 rho {t_rho:.2?}, G24 search {t_ham:.2?}, n = 4 closure suite {t_closure:.2?}"
    ))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, &'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("AC1", "extremal family", ac1),
        ("AC2", "edge bound", ac2),
        ("AC3", "edge-deletion monotonicity", ac3),
        ("AC4", "closure preserves Hamiltonicity", ac4),
        ("AC5", "closure determinism", ac5),
        ("AC6", "spectral oracle", ac6),
        ("AC7", "2-factor oracle", ac7),
        ("AC8", "good linear forests", ac8),
        ("AC9", "hypothesis sweep", ac9),
        ("AC10", "performance floor", ac10),
    ];
    let mut failed = 0;
    for (id, title, run) in criteria {
        match run() {
            Ok(detail) => println!("{id} PASS {title}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("{id} FAIL {title}: {reason}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
