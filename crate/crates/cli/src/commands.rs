//! The subcommands, each rendering to a string so they can be tested
//! without spawning the binary.

use std::fmt::Write as _;

use cdmatroid::exminors::{enumerate_m_family, is_excluded_series_minor, MAX_FAMILY_RANK};
use cdmatroid::matroid::is_isomorphic;
use cdmatroid::predicates::{has_skew_circuits, is_circuit_difference, is_regular};
use cdmatroid::{zoo, BinaryMatroid, MatroidError};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::audit::{AuditError, AuditResult};
use crate::corpus::BinaryCorpus;
use crate::input::{parse_input, to_matrix_text, InputError};
use crate::report::{analyze as analyze_report, braces, recognize as recognize_report, LabelSet};

/// Largest `census --elements` accepted.
pub const MAX_CENSUS_ELEMENTS: usize = 12;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Audit(#[from] AuditError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot serialize output: {0}")]
    Json(#[from] serde_json::Error),
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

pub fn analyze(input: &str, json: bool) -> Result<String, CliError> {
    let m = parse_input(input)?;
    let report = analyze_report(&m)?;
    if json {
        to_json(&report)
    } else {
        Ok(report.render())
    }
}

pub fn circuits(input: &str, json: bool) -> Result<String, CliError> {
    let m = parse_input(input)?;
    let all: Vec<LabelSet> = m.circuits()?.iter().map(|c| m.labels_of(c)).collect();
    if json {
        return to_json(&all);
    }
    Ok(all.iter().map(|c| braces(c) + "\n").collect())
}

pub fn recognize(input: &str, json: bool) -> Result<String, CliError> {
    let m = parse_input(input)?;
    let summary = recognize_report(&m)?;
    if json {
        return to_json(&summary);
    }
    let mut out = String::new();
    summary.render(&mut out);
    Ok(out)
}

pub fn render_audit(results: &[AuditResult], json: bool) -> Result<String, CliError> {
    if json {
        return to_json(&results);
    }
    let mut out = String::new();
    for r in results {
        let status = if !r.errors.is_empty() {
            "ERROR"
        } else if r.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        let _ = writeln!(
            out,
            "audit {} {status}: {} ({} checked, {} failures, {:.2}s)",
            r.id,
            r.title,
            r.checked,
            r.failures.len(),
            r.wall_ms as f64 / 1000.0
        );
        let _ = writeln!(out, "  corpus: {}", r.corpus);
        for e in &r.errors {
            let _ = writeln!(out, "  error: {e}");
        }
        for f in &r.failures {
            let _ = writeln!(out, "  failure: {}", f.detail);
            if !f.witness.is_empty() {
                let sets: Vec<String> = f.witness.iter().map(|s| braces(s)).collect();
                let _ = writeln!(out, "    witness: {}", sets.join(" "));
            }
            for line in f.matroid.lines() {
                let _ = writeln!(out, "    {line}");
            }
        }
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(out, "{} audits, {} passed, {failed} not passed", results.len(), results.len() - failed);
    Ok(out)
}

/// Exit status for a finished audit run: 0 all passed, 1 failures, 2 errors.
pub fn audit_status(results: &[AuditResult]) -> u8 {
    if results.iter().any(|r| !r.errors.is_empty()) {
        2
    } else if results.iter().any(|r| !r.failures.is_empty()) {
        1
    } else {
        0
    }
}

#[derive(Debug, Serialize)]
pub struct FamilyEntry {
    pub rank: usize,
    /// Points of `AG(r-1,2)` removed, by label.
    pub deleted: LabelSet,
    pub elements: usize,
    pub name: Option<String>,
    pub member: String,
    /// The excluded series minor, in matrix format.
    pub dual: String,
    pub excluded_series_minor: bool,
}

fn known_name(m: &BinaryMatroid) -> Result<Option<String>, CliError> {
    let known = [
        ("N5*", zoo::n5().dual()),
        ("tipped 4-spike", zoo::tipped_spike(4)?),
        ("S8", zoo::s8()),
    ];
    for (name, k) in known {
        if k.len() == m.len() && k.rank() == m.rank() && is_isomorphic(&k, m)?.is_some() {
            return Ok(Some(name.into()));
        }
    }
    Ok(None)
}

const NON_BINARY_NOTE: &str = "the non-binary excluded series minors U(n,n+2), n >= 2, are not represented";

pub fn exminors(rank: usize, json: bool) -> Result<String, CliError> {
    if !(3..=MAX_FAMILY_RANK).contains(&rank) {
        return Err(CliError::Usage(format!("--rank must be between 3 and {MAX_FAMILY_RANK}")));
    }
    let ag = zoo::ag_plus_e(rank)?;
    let entries = enumerate_m_family(rank)?
        .into_par_iter()
        .map(|(spec, member)| {
            let dual = member.dual();
            Ok(FamilyEntry {
                rank,
                deleted: spec.deleted.iter().map(|&i| ag.label(i).to_string()).collect(),
                elements: member.len(),
                name: known_name(&member)?,
                member: to_matrix_text(&member),
                dual: to_matrix_text(&dual),
                excluded_series_minor: is_excluded_series_minor(&dual)?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    if json {
        #[derive(Serialize)]
        struct Listing<'a> {
            entries: &'a [FamilyEntry],
            note: &'a str,
        }
        return to_json(&Listing { entries: &entries, note: NON_BINARY_NOTE });
    }
    let mut out = String::new();
    let _ = writeln!(out, "rank {rank}: {} family members up to isomorphism", entries.len());
    for (i, e) in entries.iter().enumerate() {
        let _ = writeln!(
            out,
            "member {i}: {} elements, X = {}{}; dual excluded series minor: {}",
            e.elements,
            braces(&e.deleted),
            e.name.as_ref().map(|n| format!(" ({n})")).unwrap_or_default(),
            if e.excluded_series_minor { "verified" } else { "FAILED" }
        );
        let _ = writeln!(out, "  member:");
        for line in e.member.lines() {
            let _ = writeln!(out, "    {line}");
        }
        let _ = writeln!(out, "  dual:");
        for line in e.dual.lines() {
            let _ = writeln!(out, "    {line}");
        }
    }
    let _ = writeln!(out, "note: {NON_BINARY_NOTE}");
    Ok(out)
}

#[derive(Debug, Serialize)]
pub struct CensusRow {
    pub elements: usize,
    pub connected: usize,
    pub regular: usize,
    pub circuit_difference: usize,
    pub skew_circuits: usize,
}

pub fn census(elements: usize, json: bool) -> Result<String, CliError> {
    if elements > MAX_CENSUS_ELEMENTS {
        return Err(CliError::Usage(format!("--elements is capped at {MAX_CENSUS_ELEMENTS}")));
    }
    let corpus = BinaryCorpus::generate(elements)?;
    let rows = (1..=elements)
        .map(|n| {
            let level = corpus.level(n);
            let count = |f: fn(&BinaryMatroid) -> cdmatroid::Result<bool>| -> Result<usize, CliError> {
                let flags = level.par_iter().map(f).collect::<cdmatroid::Result<Vec<bool>>>()?;
                Ok(flags.into_iter().filter(|&b| b).count())
            };
            Ok(CensusRow {
                elements: n,
                connected: level.len(),
                regular: count(is_regular)?,
                circuit_difference: count(is_circuit_difference)?,
                skew_circuits: count(has_skew_circuits)?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    if json {
        return to_json(&rows);
    }
    let mut out = String::from("elements connected regular circuit-difference skew-circuits\n");
    for r in &rows {
        let _ = writeln!(
            out,
            "{:>8} {:>9} {:>7} {:>18} {:>13}",
            r.elements, r.connected, r.regular, r.circuit_difference, r.skew_circuits
        );
    }
    Ok(out)
}
