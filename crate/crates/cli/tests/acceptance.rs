//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cdmatroid::exminors::{hyperplane_complementary_brute_force, hyperplane_complementary_catalog};
use cdmatroid::matroid::is_isomorphic;
use cdmatroid::predicates::{is_circuit_complementary, is_circuit_difference, is_regular, skew_circuit_pair};
use cdmatroid::zoo;
use cdmatroid_cli::audit::{AuditConfig, AuditResult, Auditor, Oracles};

type Check = Result<(), String>;
type Criterion<'a> = (usize, &'static str, Duration, Box<dyn Fn() -> Check + 'a>);

fn audits_pass(auditor: &Auditor, ids: &[&str]) -> Check {
    let results = auditor.run_ids(ids).map_err(|e| e.to_string())?;
    let bad: Vec<String> = results
        .iter()
        .filter(|r| !r.passed())
        .map(|r| {
            let first = r.failures.first().map(|f| f.detail.clone()).or_else(|| r.errors.first().cloned());
            format!("audit {}: {} failures, {} errors ({})", r.id, r.failures.len(), r.errors.len(), first.unwrap_or_default())
        })
        .collect();
    let checked: usize = results.iter().map(|r| r.checked).sum();
    if checked == 0 {
        return Err("nothing was checked".into());
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad.join("; "))
    }
}

fn ensure(cond: bool, what: &str) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn s8_facts() -> Check {
    let m = zoo::s8();
    let set = |labels: &[&str]| m.set_of_labels(labels);
    let (c1, c2) = (set(&["1", "4", "7", "8"]), set(&["2", "3", "5", "6", "8"]));
    let (d1, d2) = (set(&["1", "2", "6"]), set(&["3", "4", "5", "7"]));
    let circuits = m.circuits().map_err(|e| e.to_string())?;
    ensure(circuits.contains(&c1) && circuits.contains(&c2), "named circuits missing")?;
    ensure(c1.sym_diff(&c2) == d1.union(&d2) && !d1.intersects(&d2), "symmetric difference")?;
    ensure(circuits.contains(&d1) && circuits.contains(&d2), "parts of the difference are not circuits")?;
    ensure(!circuits.contains(&c1.sym_diff(&c2)), "difference is a circuit")?;
    ensure(!is_circuit_difference(&m).map_err(|e| e.to_string())?, "S8 reported circuit-difference")?;
    ensure(skew_circuit_pair(&m).map_err(|e| e.to_string())?.is_none(), "S8 has a skew pair")
}

fn catalog_sizes() -> Check {
    for (r, expected) in [(3, 1), (4, 2)] {
        let catalog = hyperplane_complementary_catalog(r).map_err(|e| e.to_string())?;
        let brute = hyperplane_complementary_brute_force(r).map_err(|e| e.to_string())?;
        ensure(catalog.len() == expected, &format!("rank {r}: {} classes", catalog.len()))?;
        ensure(brute.len() == expected, &format!("rank {r}: brute force {} classes", brute.len()))?;
    }
    Ok(())
}

fn r10_certificate() -> Check {
    let r10 = zoo::r10();
    let k33 = zoo::complete_bipartite(3, 3).map_err(|e| e.to_string())?;
    for e in 0..r10.len() {
        let minor = r10.delete_element(e);
        ensure(is_isomorphic(&minor, &k33).map_err(|e| e.to_string())?.is_some(), &format!("R10 \\ {e}"))?;
    }
    ensure(r10.len() == 10 && r10.rank() == 5, "shape")?;
    ensure(is_regular(&r10).map_err(|e| e.to_string())?, "not regular")?;
    ensure(r10.is_cosimple(), "not cosimple")?;
    ensure(is_circuit_complementary(&r10).map_err(|e| e.to_string())?, "not circuit-complementary")
}

fn fingerprint(results: &[AuditResult]) -> Vec<(String, String, usize, usize, usize)> {
    results
        .iter()
        .map(|r| (r.id.clone(), r.corpus.clone(), r.checked, r.failures.len(), r.errors.len()))
        .collect()
}

fn whole_suite() -> Check {
    let run = || Auditor::new(AuditConfig::default(), Oracles::default()).run().map_err(|e| e.to_string());
    let first = run()?;
    let bad: Vec<&str> = first.iter().filter(|r| !r.passed()).map(|r| r.id.as_str()).collect();
    ensure(bad.is_empty(), &format!("audits not passing: {}", bad.join(", ")))?;
    let second = run()?;
    ensure(fingerprint(&first) == fingerprint(&second), "two runs with the same seed differ")
}

/// Timed criteria build their own corpora so the time includes generation.
fn fresh() -> Auditor {
    Auditor::new(AuditConfig::default(), Oracles::default())
}

fn main() -> ExitCode {
    let auditor = fresh();
    let criteria: Vec<Criterion> = vec![
        (1, "S8 circuits, symmetric difference, not circuit-difference, no skew pair", Duration::from_secs(1), Box::new(s8_facts)),
        (2, "regular corpus: circuit-difference <=> no skew pair <=> recognizer", Duration::from_secs(120), Box::new(|| audits_pass(&fresh(), &["1.1"]))),
        (3, "connected binary <= 9: skew pair => not circuit-difference", Duration::from_secs(180), Box::new(|| audits_pass(&fresh(), &["1.2"]))),
        (4, "series-extension and circuit-complementary audits", Duration::from_secs(600), Box::new(|| audits_pass(&auditor, &["2.2", "2.3", "2.4", "2.5"]))),
        (5, "cosimple connected regular circuit-complementary <= 10 is U(1,4) or R10, both occur", Duration::from_secs(600), Box::new(|| audits_pass(&auditor, &["2.8"]))),
        (6, "rank/corank of series extensions of U(1,4) and R10", Duration::from_secs(600), Box::new(|| audits_pass(&auditor, &["2.9"]))),
        (7, "series minors of circuit-difference matroids stay circuit-difference", Duration::from_secs(600), Box::new(|| audits_pass(&auditor, &["4.1"]))),
        (8, "connected binary <= 9: N5 series minor <=> skew pair", Duration::from_secs(300), Box::new(|| audits_pass(&fresh(), &["4.2"]))),
        (9, "hyperplane-complementary catalog = brute force, sizes 1 and 2", Duration::from_secs(600), Box::new(|| audits_pass(&auditor, &["4.4"]).and_then(|_| catalog_sizes()))),
        (10, "family ranks 3-4 and minimality of excluded series minors", Duration::from_secs(600), Box::new(|| audits_pass(&auditor, &["4.6"]))),
        (11, "R10 self-certification", Duration::from_secs(600), Box::new(r10_certificate)),
        (12, "whole audit suite with defaults, deterministic", Duration::from_secs(600), Box::new(whole_suite)),
    ];
    let mut failed = 0;
    for (n, title, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|_| {
            ensure(elapsed < limit, &format!("took {:.1}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs()))
        });
        match outcome {
            Ok(()) => println!("criterion {n:>2} PASS ({:.2}s, limit {}s): {title}", elapsed.as_secs_f64(), limit.as_secs()),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL ({:.2}s, limit {}s): {title}: {why}", elapsed.as_secs_f64(), limit.as_secs());
            }
        }
    }
    println!("acceptance: {} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
