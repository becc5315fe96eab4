//! Analysis reports, as line-oriented text or JSON.

use std::fmt::Write as _;

use cdmatroid::exminors::{find_n5_series_minor, is_excluded_series_minor, SeriesMove};
use cdmatroid::predicates::{
    circuit_difference_violations, is_circuit_complementary, is_hyperplane_complementary, is_regular,
    is_unbreakable, skew_circuit_pair, CircuitPair,
};
use cdmatroid::recognizer::{recognize_regular_cd, RecognitionReport, Verdict};
use cdmatroid::{BinaryMatroid, ElementSet, Result};
use serde::Serialize;

/// Circuits listed in full up to this many.
pub const CIRCUIT_PRINT_CAP: usize = 64;
/// Violating pairs listed in full up to this many.
pub const VIOLATION_PRINT_CAP: usize = 16;
/// Largest ground set for the excluded-series-minor check in reports.
pub const EXCLUDED_CHECK_MAX_ELEMENTS: usize = 16;

pub type LabelSet = Vec<String>;

/// Labels of `s` in ground-set order.
pub fn labels(m: &BinaryMatroid, s: &ElementSet) -> LabelSet {
    m.labels_of(s)
}

fn pair(m: &BinaryMatroid, p: &CircuitPair) -> [LabelSet; 2] {
    [labels(m, &p.first), labels(m, &p.second)]
}

pub fn braces(set: &[String]) -> String {
    format!("{{{}}}", set.join(","))
}

#[derive(Debug, Serialize)]
pub struct Predicates {
    pub circuit_difference: bool,
    pub skew_circuits: bool,
    pub circuit_complementary: bool,
    pub hyperplane_complementary: bool,
    /// Only defined for connected matroids.
    pub unbreakable: Option<bool>,
    pub regular: bool,
    /// Skipped above [`EXCLUDED_CHECK_MAX_ELEMENTS`] elements.
    pub excluded_series_minor: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct Witnesses {
    pub circuit_difference: Option<[LabelSet; 2]>,
    /// Number of violating pairs, and the first few of them.
    pub violation_count: usize,
    pub violations: Vec<[LabelSet; 2]>,
    pub skew_circuits: Option<[LabelSet; 2]>,
    /// Moves such as `delete 3` / `contract 7` reaching `N_5`.
    pub n5_series_minor: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct ComponentSummary {
    pub elements: LabelSet,
    pub base: Option<String>,
    pub series_classes: Vec<LabelSet>,
    pub witness: Option<[LabelSet; 2]>,
}

#[derive(Debug, Serialize)]
pub struct RecognitionSummary {
    pub circuit_difference: bool,
    pub out_of_scope: bool,
    pub components: Vec<ComponentSummary>,
}

impl RecognitionSummary {
    pub fn new(m: &BinaryMatroid, report: &RecognitionReport) -> Self {
        let components = report
            .components
            .iter()
            .map(|c| match &c.verdict {
                Verdict::Base { base, series, .. } => ComponentSummary {
                    elements: labels(m, &c.elements),
                    base: Some(base.to_string()),
                    series_classes: series.classes.iter().map(|s| labels(m, s)).collect(),
                    witness: None,
                },
                Verdict::NotCircuitDifference { witness } => ComponentSummary {
                    elements: labels(m, &c.elements),
                    base: None,
                    series_classes: Vec::new(),
                    witness: witness.as_ref().map(|w| pair(m, w)),
                },
            })
            .collect();
        RecognitionSummary {
            circuit_difference: report.is_circuit_difference(),
            out_of_scope: report.out_of_scope(),
            components,
        }
    }

    pub fn render(&self, out: &mut String) {
        let _ = writeln!(out, "recognizer: circuit-difference: {}", self.circuit_difference);
        if self.out_of_scope {
            let _ = writeln!(out, "recognizer: empty matroid, vacuously circuit-difference (outside the structure theorem)");
        }
        for (i, c) in self.components.iter().enumerate() {
            match (&c.base, &c.witness) {
                (Some(base), _) => {
                    let classes: Vec<String> = c.series_classes.iter().map(|s| braces(s)).collect();
                    let _ = writeln!(
                        out,
                        "component {i} {}: series extension of {base}; series classes {}",
                        braces(&c.elements),
                        classes.join(" ")
                    );
                }
                (None, Some([a, b])) => {
                    let _ = writeln!(
                        out,
                        "component {i} {}: not circuit-difference; witness {} {}",
                        braces(&c.elements),
                        braces(a),
                        braces(b)
                    );
                }
                (None, None) => {
                    let _ = writeln!(out, "component {i} {}: not circuit-difference", braces(&c.elements));
                }
            }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub elements: LabelSet,
    pub rank: usize,
    pub corank: usize,
    pub connected: bool,
    pub components: Vec<LabelSet>,
    pub simple: bool,
    pub cosimple: bool,
    pub circuit_count: usize,
    pub circuit_sizes: Vec<usize>,
    pub circuits: Vec<LabelSet>,
    pub circuits_truncated: bool,
    pub predicates: Predicates,
    pub witnesses: Witnesses,
    pub recognition: Option<RecognitionSummary>,
}

pub fn describe_move(m: &BinaryMatroid, mv: &SeriesMove) -> String {
    match *mv {
        SeriesMove::Delete(e) => format!("delete {}", m.label(e)),
        SeriesMove::Contract(e) => format!("contract {}", m.label(e)),
    }
}

pub fn analyze(m: &BinaryMatroid) -> Result<AnalysisReport> {
    let circuits = m.circuits()?;
    let connected = m.is_connected();
    let violations = circuit_difference_violations(m)?;
    let violation = violations.first().copied();
    let skew = skew_circuit_pair(m)?;
    let regular = is_regular(m)?;
    let n5 = if connected { find_n5_series_minor(m)? } else { None };
    let excluded = if m.len() <= EXCLUDED_CHECK_MAX_ELEMENTS { Some(is_excluded_series_minor(m)?) } else { None };
    let recognition = if regular { Some(RecognitionSummary::new(m, &recognize_regular_cd(m)?)) } else { None };
    Ok(AnalysisReport {
        elements: m.labels().to_vec(),
        rank: m.rank(),
        corank: m.corank(),
        connected,
        components: m.components().iter().map(|c| labels(m, c)).collect(),
        simple: m.is_simple(),
        cosimple: m.is_cosimple(),
        circuit_count: circuits.len(),
        circuit_sizes: circuits.size_histogram(),
        circuits: circuits.iter().take(CIRCUIT_PRINT_CAP).map(|c| labels(m, c)).collect(),
        circuits_truncated: circuits.len() > CIRCUIT_PRINT_CAP,
        predicates: Predicates {
            circuit_difference: violation.is_none(),
            skew_circuits: skew.is_some(),
            circuit_complementary: is_circuit_complementary(m)?,
            hyperplane_complementary: is_hyperplane_complementary(m)?,
            unbreakable: if connected { Some(is_unbreakable(m)?) } else { None },
            regular,
            excluded_series_minor: excluded,
        },
        witnesses: Witnesses {
            circuit_difference: violation.map(|p| pair(m, &p)),
            violation_count: violations.len(),
            violations: violations.iter().take(VIOLATION_PRINT_CAP).map(|p| pair(m, p)).collect(),
            skew_circuits: skew.map(|p| pair(m, &p)),
            n5_series_minor: n5.map(|s| s.iter().map(|mv| describe_move(m, mv)).collect()),
        },
        recognition,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn optional(b: Option<bool>) -> &'static str {
    b.map_or("n/a", yes_no)
}

impl AnalysisReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let p = &self.predicates;
        let w = &self.witnesses;
        let _ = writeln!(out, "elements: {} ({})", self.elements.len(), self.elements.join(" "));
        let _ = writeln!(out, "rank: {}", self.rank);
        let _ = writeln!(out, "corank: {}", self.corank);
        let _ = writeln!(out, "connected: {}", self.connected);
        let comps: Vec<String> = self.components.iter().map(|c| braces(c)).collect();
        let _ = writeln!(out, "components: {}", comps.join(" "));
        let _ = writeln!(out, "simple: {}", self.simple);
        let _ = writeln!(out, "cosimple: {}", self.cosimple);
        let sizes: Vec<String> = self
            .circuit_sizes
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(s, k)| format!("{s}:{k}"))
            .collect();
        let _ = writeln!(out, "circuits: {} (by size {})", self.circuit_count, sizes.join(" "));
        for c in &self.circuits {
            let _ = writeln!(out, "  {}", braces(c));
        }
        if self.circuits_truncated {
            let _ = writeln!(out, "  ... {} more", self.circuit_count - self.circuits.len());
        }
        let _ = write!(out, "circuit-difference: {}", yes_no(p.circuit_difference));
        if let Some([a, b]) = &w.circuit_difference {
            let _ = write!(out, " (witness {} {})", braces(a), braces(b));
        }
        out.push('\n');
        if w.violation_count > 1 {
            let _ = writeln!(out, "violating pairs: {}", w.violation_count);
            for [a, b] in &w.violations {
                let _ = writeln!(out, "  {} {}", braces(a), braces(b));
            }
            if w.violation_count > w.violations.len() {
                let _ = writeln!(out, "  ... {} more", w.violation_count - w.violations.len());
            }
        }
        let _ = write!(out, "skew circuits: {}", yes_no(p.skew_circuits));
        if let Some([a, b]) = &w.skew_circuits {
            let _ = write!(out, " ({} {})", braces(a), braces(b));
        }
        out.push('\n');
        let _ = writeln!(out, "circuit-complementary: {}", yes_no(p.circuit_complementary));
        let _ = writeln!(out, "hyperplane-complementary: {}", yes_no(p.hyperplane_complementary));
        let _ = writeln!(out, "unbreakable: {}", optional(p.unbreakable));
        let _ = writeln!(out, "regular: {}", yes_no(p.regular));
        let _ = writeln!(out, "excluded-series-minor: {}", optional(p.excluded_series_minor));
        match &w.n5_series_minor {
            Some(script) if script.is_empty() => {
                let _ = writeln!(out, "N5 series minor: itself");
            }
            Some(script) => {
                let _ = writeln!(out, "N5 series minor: {}", script.join(", "));
            }
            None => {
                let _ = writeln!(out, "N5 series minor: none");
            }
        }
        match &self.recognition {
            Some(r) => r.render(&mut out),
            None => {
                let _ = writeln!(out, "recognizer: not regular, brute-force verdict above applies");
            }
        }
        out
    }
}

/// Recognition only; non-regular input is reported as an error.
pub fn recognize(m: &BinaryMatroid) -> Result<RecognitionSummary> {
    Ok(RecognitionSummary::new(m, &recognize_regular_cd(m)?))
}
