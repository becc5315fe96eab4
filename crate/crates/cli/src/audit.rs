//! The audit harness: every structural property the library relies on,
//! checked exhaustively over generated corpora.
//!
//! Each audit is independent, runs its items on the rayon pool and reports
//! failures in corpus order, so output is deterministic for a fixed seed.

use std::sync::OnceLock;
use std::time::Instant;

use cdmatroid::exminors::{
    apply_series_script, enumerate_m_family, find_n5_series_minor, hyperplane_complementary_brute_force,
    hyperplane_complementary_catalog, is_excluded_series_minor, is_excluded_series_minor_one_step,
    is_excluded_series_minor_structural, series_minors, MAX_FAMILY_RANK,
};
use cdmatroid::gf2::GraySpan;
use cdmatroid::matroid::{is_isomorphic, verify_isomorphism, IsoClassSet};
use cdmatroid::predicates::{
    circuit_difference_violation, is_circuit_complementary, is_hyperplane_complementary, is_regular,
    is_unbreakable, is_violation, skew_circuit_pair, violation_from_skew_pair, CircuitPair,
};
use cdmatroid::recognizer::{no_skew_structural, recognize_regular_cd, Verdict};
use cdmatroid::{zoo, BinaryMatroid, ElementSet, MatroidError, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{
    connected_multigraphs, random_series_extension, regular_specials, series_extension_steps,
    two_connected_graphic, BinaryCorpus, GraphicCorpus,
};
use crate::input::to_matrix_text;
use crate::report::LabelSet;

/// Largest `--max-elements` accepted.
pub const MAX_AUDIT_ELEMENTS: usize = 14;

/// The brute-force predicates the audits compare against. Swappable so the
/// harness can be checked against a deliberately broken oracle.
#[derive(Clone, Copy)]
pub struct Oracles {
    pub circuit_difference: fn(&BinaryMatroid) -> Result<bool>,
    pub skew_pair: fn(&BinaryMatroid) -> Result<Option<CircuitPair>>,
    pub circuit_complementary: fn(&BinaryMatroid) -> Result<bool>,
}

impl Default for Oracles {
    fn default() -> Self {
        Oracles {
            circuit_difference: |m| Ok(circuit_difference_violation(m)?.is_none()),
            skew_pair: skew_circuit_pair,
            circuit_complementary: is_circuit_complementary,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AuditConfig {
    /// Size bound for the exhaustive binary corpus.
    pub max_elements: usize,
    /// Size bound for the cosimple circuit-complementary classification.
    pub cosimple_max_elements: usize,
    pub graphic_max_edges: usize,
    pub seed: u64,
    /// Run only the audit with this id.
    pub lemma: Option<String>,
    /// Seeded series extensions added to the graphic/special corpus.
    pub series_extensions: usize,
    /// Seeded multi-step series extensions per series-extension audit.
    pub extensions_per_audit: usize,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            max_elements: 9,
            cosimple_max_elements: 10,
            graphic_max_edges: 9,
            seed: 1,
            lemma: None,
            series_extensions: 200,
            extensions_per_audit: 100,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub detail: String,
    /// The offending matroid in the matrix input format.
    pub matroid: String,
    pub witness: Vec<LabelSet>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditResult {
    pub id: String,
    pub title: String,
    pub corpus: String,
    pub checked: usize,
    pub failures: Vec<Failure>,
    /// Caps hit or other errors; these make the run inconclusive.
    pub errors: Vec<String>,
    pub wall_ms: u128,
}

impl AuditResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.errors.is_empty()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum AuditError {
    #[error("unknown audit id {0:?}; known ids: {1}")]
    UnknownLemma(String, String),
    #[error("--max-elements {0} exceeds the cap of {MAX_AUDIT_ELEMENTS}")]
    TooLarge(usize),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

fn failure(m: &BinaryMatroid, detail: impl Into<String>, witness: &[ElementSet]) -> Failure {
    Failure {
        detail: detail.into(),
        matroid: to_matrix_text(m),
        witness: witness.iter().map(|s| m.labels_of(s)).collect(),
    }
}

fn pair_sets(p: &CircuitPair) -> [ElementSet; 2] {
    [p.first, p.second]
}

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<Failure>,
    errors: Vec<String>,
}

impl Tally {
    fn absorb(&mut self, other: Tally) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.errors.extend(other.errors);
    }

    fn fail(&mut self, f: Failure) {
        self.failures.push(f);
    }
}

/// Runs `check` on every item in parallel; results are merged in item order.
fn run_checks<T: Sync>(items: &[T], check: impl Fn(&T) -> Result<Vec<Failure>> + Sync) -> Tally {
    let outcomes: Vec<Result<Vec<Failure>>> = items.par_iter().map(&check).collect();
    let mut tally = Tally::default();
    for outcome in outcomes {
        tally.checked += 1;
        match outcome {
            Ok(f) => tally.failures.extend(f),
            Err(e) => tally.errors.push(e.to_string()),
        }
    }
    tally
}

/// Corpora are built on first use and shared between audits.
pub struct Auditor {
    config: AuditConfig,
    oracles: Oracles,
    binary: OnceLock<std::result::Result<BinaryCorpus, MatroidError>>,
    graphic: OnceLock<std::result::Result<GraphicCorpus, MatroidError>>,
}

type AuditFn = fn(&Auditor) -> Result<(String, Tally)>;

/// Every audit: id, title and check.
const AUDITS: &[(&str, &str, AuditFn)] = &[
    ("1.1", "circuit-difference, no skew circuits and the recognizer agree on regular matroids", audit_1_1),
    ("1.2", "a skew circuit pair rules out circuit-difference", audit_1_2),
    ("1.3", "structural no-skew test and unbreakable duality", audit_1_3),
    ("1.4", "component-wise recognition of direct sums", audit_1_4),
    ("2.2", "series extension keeps a skew circuit pair", audit_2_2),
    ("2.3", "series extension keeps circuit-difference", audit_2_3),
    ("2.4", "connected circuit-complementary implies circuit-difference", audit_2_4),
    ("2.5", "circuit-complementary survives series contraction and extension", audit_2_5),
    ("2.8", "cosimple connected regular circuit-complementary is U(1,4) or R10", audit_2_8),
    ("2.9", "rank/corank of series extensions of U(1,4) and R10", audit_2_9),
    ("4.1", "series minors of circuit-difference matroids are circuit-difference", audit_4_1),
    ("4.2", "N5 series minor exactly when a skew pair exists", audit_4_2),
    ("4.4", "hyperplane-complementary catalog matches brute force", audit_4_4),
    ("4.6", "excluded series minors are the duals of the family", audit_4_6),
    ("duality", "hyperplane-complementary is circuit-complementary of the dual", audit_duality),
    ("gf2", "null space sums and rank submodularity", audit_gf2),
    ("matroid", "circuit axioms, orthogonality, duality and cosimplification", audit_matroid),
    ("zoo", "constructor sizes, cographic duality and R10 certification", audit_zoo),
];

/// Ids and titles of all audits, in run order.
pub fn audit_ids() -> impl Iterator<Item = (&'static str, &'static str)> {
    AUDITS.iter().map(|&(id, title, _)| (id, title))
}

impl Auditor {
    pub fn new(config: AuditConfig, oracles: Oracles) -> Self {
        Auditor { config, oracles, binary: OnceLock::new(), graphic: OnceLock::new() }
    }

    pub fn config(&self) -> &AuditConfig {
        &self.config
    }

    fn binary(&self) -> Result<&BinaryCorpus> {
        let n = self.config.max_elements.max(self.config.cosimple_max_elements);
        self.binary.get_or_init(|| BinaryCorpus::generate(n)).as_ref().map_err(Clone::clone)
    }

    fn graphic(&self) -> Result<&GraphicCorpus> {
        let n = self.config.graphic_max_edges;
        self.graphic.get_or_init(|| two_connected_graphic(n)).as_ref().map_err(Clone::clone)
    }

    /// Connected binary matroids up to `max_elements`.
    fn connected(&self) -> Result<Vec<&BinaryMatroid>> {
        Ok(self.binary()?.up_to(self.config.max_elements).collect())
    }

    fn connected_desc(&self) -> String {
        format!("connected binary matroids on <= {} elements", self.config.max_elements)
    }

    /// Deterministic per-audit stream.
    fn rng(&self, id: &str) -> ChaCha8Rng {
        let salt = id.bytes().fold(0u64, |h, b| h.wrapping_mul(131).wrapping_add(b as u64));
        ChaCha8Rng::seed_from_u64(self.config.seed ^ salt.rotate_left(17))
    }

    fn seeded_extensions(&self, id: &str, pool: &[BinaryMatroid], count: usize) -> Result<Vec<BinaryMatroid>> {
        if pool.is_empty() {
            return Ok(Vec::new());
        }
        let mut rng = self.rng(id);
        (0..count).map(|_| random_series_extension(&mut rng, pool, 4)).collect()
    }

    /// Runs the audits selected by the configuration, in order.
    pub fn run(&self) -> std::result::Result<Vec<AuditResult>, AuditError> {
        match &self.config.lemma {
            None => self.run_ids(&AUDITS.iter().map(|&(id, _, _)| id).collect::<Vec<_>>()),
            Some(id) => self.run_ids(&[id.as_str()]),
        }
    }

    /// Runs the named audits in the given order, sharing corpora.
    pub fn run_ids(&self, ids: &[&str]) -> std::result::Result<Vec<AuditResult>, AuditError> {
        if self.config.max_elements > MAX_AUDIT_ELEMENTS {
            return Err(AuditError::TooLarge(self.config.max_elements));
        }
        let selected = ids
            .iter()
            .map(|id| {
                AUDITS.iter().find(|(a, _, _)| a == id).ok_or_else(|| {
                    let known: Vec<&str> = AUDITS.iter().map(|(a, _, _)| *a).collect();
                    AuditError::UnknownLemma(id.to_string(), known.join(", "))
                })
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(selected
            .into_iter()
            .map(|&(id, title, run)| {
                let start = Instant::now();
                let (corpus, tally) = run(self).unwrap_or_else(|e| {
                    (String::from("(not built)"), Tally { errors: vec![e.to_string()], ..Tally::default() })
                });
                AuditResult {
                    id: id.into(),
                    title: title.into(),
                    corpus,
                    checked: tally.checked,
                    failures: tally.failures,
                    errors: tally.errors,
                    wall_ms: start.elapsed().as_millis(),
                }
            })
            .collect())
    }
}

fn is_regular_member(m: &&BinaryMatroid) -> bool {
    is_regular(m).unwrap_or(false)
}

fn regular_connected(a: &Auditor) -> Result<Vec<BinaryMatroid>> {
    Ok(a.connected()?.into_par_iter().filter(is_regular_member).cloned().collect())
}

/// The graphic corpus, the named specials and seeded series extensions of
/// both.
fn recognition_pool(a: &Auditor, id: &str) -> Result<(Vec<BinaryMatroid>, String)> {
    let graphic = a.graphic()?;
    let mut pool = graphic.matroids.clone();
    pool.extend(regular_specials()?.into_iter().map(|(_, m)| m));
    let extensions = a.seeded_extensions(id, &pool, a.config.series_extensions)?;
    let desc = format!(
        "{} matroids of 2-connected graphs with <= {} edges ({} graphs), 4 specials, {} seeded series extensions",
        graphic.matroids.len(),
        a.config.graphic_max_edges,
        graphic.graphs,
        extensions.len()
    );
    pool.extend(extensions);
    Ok((pool, desc))
}

fn check_recognizer(m: &BinaryMatroid, o: &Oracles) -> Result<Vec<Failure>> {
    let mut out = Vec::new();
    let cd = (o.circuit_difference)(m)?;
    let skew = (o.skew_pair)(m)?;
    if cd == skew.is_some() {
        let w: Vec<ElementSet> = skew.iter().flat_map(pair_sets).collect();
        out.push(failure(m, format!("circuit-difference = {cd} but skew pair present = {}", skew.is_some()), &w));
    }
    let report = recognize_regular_cd(m)?;
    if report.is_circuit_difference() != cd {
        out.push(failure(m, format!("recognizer says {} but brute force says {cd}", report.is_circuit_difference()), &[]));
    }
    for c in &report.components {
        match &c.verdict {
            Verdict::Base { base, iso, .. } => {
                let (core, _) = m.restrict(c.elements).cosimplify()?;
                if !verify_isomorphism(&core, &base.build()?, iso)? {
                    out.push(failure(m, format!("component is not a series extension of {base}"), &[c.elements]));
                }
            }
            Verdict::NotCircuitDifference { witness } => match witness {
                Some(p) if is_violation(m, p) => {}
                Some(p) => out.push(failure(m, "recognizer witness is not a violation", &pair_sets(p))),
                None => out.push(failure(m, "negative verdict without a witness", &[c.elements])),
            },
        }
    }
    Ok(out)
}

fn audit_1_1(a: &Auditor) -> Result<(String, Tally)> {
    let (mut pool, desc) = recognition_pool(a, "1.1")?;
    let regular = regular_connected(a)?;
    let desc = format!("{desc}, {} regular {}", regular.len(), a.connected_desc());
    pool.extend(regular);
    let o = a.oracles;
    Ok((desc, run_checks(&pool, |m| check_recognizer(m, &o))))
}

fn audit_1_2(a: &Auditor) -> Result<(String, Tally)> {
    let o = a.oracles;
    let tally = run_checks(&a.connected()?, |m| {
        let Some(skew) = (o.skew_pair)(m)? else { return Ok(Vec::new()) };
        let mut out = Vec::new();
        if (o.circuit_difference)(m)? {
            out.push(failure(m, "skew circuits but circuit-difference", &pair_sets(&skew)));
        }
        // The identity behind the constructed witness, for every circuit
        // meeting both members of the (disjoint) skew pair.
        let (c1, c2) = (skew.first, skew.second);
        let union = c1.union(&c2);
        for d in m.circuits()?.iter() {
            if d.intersects(&c1) && d.intersects(&c2) {
                let lhs = d.difference(&union);
                let rhs = c1.sym_diff(d).intersection(&c2.sym_diff(d));
                if lhs != rhs {
                    out.push(failure(m, "D - (C1 u C2) differs from (C1 + D) n (C2 + D)", &[c1, c2, *d]));
                }
            }
        }
        match violation_from_skew_pair(m, skew)? {
            Some(p) if is_violation(m, &p) => {}
            Some(p) => out.push(failure(m, "constructed pair is not a violation", &pair_sets(&p))),
            None => out.push(failure(m, "no violation constructed from skew pair", &pair_sets(&skew))),
        }
        Ok(out)
    });
    Ok((a.connected_desc(), tally))
}

fn audit_1_3(a: &Auditor) -> Result<(String, Tally)> {
    let o = a.oracles;
    let (mut pool, desc) = recognition_pool(a, "1.3")?;
    pool.extend(regular_connected(a)?);
    let mut tally = run_checks(&pool, |m| {
        let skew = (o.skew_pair)(m)?;
        let structural = no_skew_structural(m)?;
        Ok(if structural == skew.is_none() {
            Vec::new()
        } else {
            let w: Vec<ElementSet> = skew.iter().flat_map(pair_sets).collect();
            vec![failure(m, format!("structural test says {structural}, brute force skew = {}", skew.is_some()), &w)]
        })
    });
    tally.absorb(run_checks(&a.connected()?, |m| {
        let unbreakable = is_unbreakable(m)?;
        let dual_skew = (o.skew_pair)(&m.dual())?;
        Ok(if unbreakable == dual_skew.is_none() {
            Vec::new()
        } else {
            vec![failure(m, format!("unbreakable = {unbreakable} but dual skew = {}", dual_skew.is_some()), &[])]
        })
    }));
    Ok((format!("{desc}, regular and all {}", a.connected_desc()), tally))
}

fn audit_1_4(a: &Auditor) -> Result<(String, Tally)> {
    let parts: Vec<BinaryMatroid> =
        regular_connected(a)?.into_iter().filter(|m| m.len() <= 7).collect();
    let mut rng = a.rng("1.4");
    let mut sums = Vec::new();
    for _ in 0..a.config.extensions_per_audit {
        let k = rng.gen_range(2..=3);
        let mut sum = BinaryMatroid::empty();
        for i in 0..k {
            let p = &parts[rng.gen_range(0..parts.len())];
            let labels = p.labels().iter().map(|l| format!("{i}.{l}")).collect();
            sum = sum.direct_sum(&p.relabel(labels)?)?;
        }
        sums.push((k, sum));
    }
    let o = a.oracles;
    let tally = run_checks(&sums, |(k, m)| {
        let mut out = Vec::new();
        let report = recognize_regular_cd(m)?;
        if report.components.len() != *k {
            out.push(failure(m, format!("{} components, expected {k}", report.components.len()), &[]));
        }
        for c in &report.components {
            let cd = (o.circuit_difference)(&m.restrict(c.elements))?;
            if c.verdict.is_positive() != cd {
                out.push(failure(m, format!("component verdict differs from brute force {cd}"), &[c.elements]));
            }
        }
        if report.is_circuit_difference() != (o.circuit_difference)(m)? {
            out.push(failure(m, "whole-matroid verdict differs from brute force", &[]));
        }
        Ok(out)
    });
    Ok((format!("{} seeded direct sums of 2-3 regular connected matroids on <= 7 elements", sums.len()), tally))
}

/// Every single-element series extension of each member satisfying
/// `hypothesis`, and seeded multi-step extensions of them.
fn extension_pairs(
    a: &Auditor,
    id: &str,
    hypothesis: impl Fn(&BinaryMatroid) -> Result<bool> + Sync,
) -> Result<(Vec<(BinaryMatroid, BinaryMatroid)>, String)> {
    let members = a.connected()?;
    let kept: Vec<BinaryMatroid> = members
        .into_par_iter()
        .filter_map(|m| match hypothesis(m) {
            Ok(true) => Some(Ok(m.clone())),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for m in &kept {
        for e in 0..m.len() {
            pairs.push((m.clone(), m.series_extend(e, &["+1".to_string()])?));
        }
    }
    let single = pairs.len();
    if !kept.is_empty() {
        let mut rng = a.rng(id);
        for _ in 0..a.config.extensions_per_audit {
            let base = &kept[rng.gen_range(0..kept.len())];
            let steps = rng.gen_range(1..=4);
            pairs.push((base.clone(), series_extension_steps(&mut rng, base, steps)?));
        }
    }
    let desc = format!(
        "{} qualifying {}: {single} single-element and {} seeded multi-step series extensions",
        kept.len(),
        a.connected_desc(),
        pairs.len() - single
    );
    Ok((pairs, desc))
}

fn audit_2_2(a: &Auditor) -> Result<(String, Tally)> {
    let o = a.oracles;
    let (pairs, desc) = extension_pairs(a, "2.2", |m| Ok((o.skew_pair)(m)?.is_some()))?;
    let tally = run_checks(&pairs, |(_, ext)| {
        Ok(match (o.skew_pair)(ext)? {
            Some(_) => Vec::new(),
            None => vec![failure(ext, "series extension lost every skew pair", &[])],
        })
    });
    Ok((desc, tally))
}

fn audit_2_3(a: &Auditor) -> Result<(String, Tally)> {
    let o = a.oracles;
    let (pairs, desc) = extension_pairs(a, "2.3", o.circuit_difference)?;
    let tally = run_checks(&pairs, |(_, ext)| {
        Ok(if (o.circuit_difference)(ext)? {
            Vec::new()
        } else {
            let w: Vec<ElementSet> = circuit_difference_violation(ext)?.iter().flat_map(pair_sets).collect();
            vec![failure(ext, "series extension of a circuit-difference matroid is not circuit-difference", &w)]
        })
    });
    Ok((desc, tally))
}

fn cc_pool(a: &Auditor, id: &str) -> Result<(Vec<BinaryMatroid>, String)> {
    let mut pool: Vec<BinaryMatroid> = a.connected()?.into_iter().cloned().collect();
    let cc: Vec<BinaryMatroid> = pool
        .par_iter()
        .filter(|m| (a.oracles.circuit_complementary)(m).unwrap_or(false))
        .cloned()
        .collect();
    let extensions = a.seeded_extensions(id, &cc, a.config.extensions_per_audit)?;
    let desc = format!(
        "{} plus {} seeded series extensions of its {} circuit-complementary members",
        a.connected_desc(),
        extensions.len(),
        cc.len()
    );
    pool.extend(extensions);
    Ok((pool, desc))
}

fn audit_2_4(a: &Auditor) -> Result<(String, Tally)> {
    let o = a.oracles;
    let (pool, desc) = cc_pool(a, "2.4")?;
    let tally = run_checks(&pool, |m| {
        if !m.is_connected() || !(o.circuit_complementary)(m)? || (o.circuit_difference)(m)? {
            return Ok(Vec::new());
        }
        let w: Vec<ElementSet> = circuit_difference_violation(m)?.iter().flat_map(pair_sets).collect();
        Ok(vec![failure(m, "circuit-complementary but not circuit-difference", &w)])
    });
    Ok((desc, tally))
}

fn audit_2_5(a: &Auditor) -> Result<(String, Tally)> {
    let o = a.oracles;
    let (pool, desc) = cc_pool(a, "2.5")?;
    let mut tally = run_checks(&pool, |m| {
        if !(o.circuit_complementary)(m)? {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for d in m.cocircuits()?.iter().filter(|d| d.len() == 2) {
            let e = d.first().expect("two elements");
            if !(o.circuit_complementary)(&m.contract_element(e))? {
                out.push(failure(m, format!("contracting {} from a 2-cocircuit", m.label(e)), &[*d]));
            }
        }
        Ok(out)
    });
    let (pairs, ext_desc) = extension_pairs(a, "2.5", o.circuit_complementary)?;
    tally.absorb(run_checks(&pairs, |(_, ext)| {
        Ok(if (o.circuit_complementary)(ext)? {
            Vec::new()
        } else {
            vec![failure(ext, "series extension is not circuit-complementary", &[])]
        })
    }));
    Ok((format!("(i) {desc}; (ii) {ext_desc}"), tally))
}

fn audit_2_8(a: &Auditor) -> Result<(String, Tally)> {
    let o = a.oracles;
    let n = a.config.cosimple_max_elements;
    let members: Vec<&BinaryMatroid> = a.binary()?.up_to(n).collect();
    let u14 = zoo::uniform_rank1(4)?;
    let r10 = zoo::r10();
    // 0 = not in scope, 1 = U(1,4), 2 = R10, 3 = neither
    let outcomes: Vec<Result<u8>> = members
        .par_iter()
        .map(|m| {
            if !m.is_cosimple() || !(o.circuit_complementary)(m)? || !is_regular(m)? {
                return Ok(0);
            }
            if is_isomorphic(m, &u14)?.is_some() {
                Ok(1)
            } else if is_isomorphic(m, &r10)?.is_some() {
                Ok(2)
            } else {
                Ok(3)
            }
        })
        .collect();
    let mut tally = Tally::default();
    let mut seen = [false; 4];
    for (m, outcome) in members.iter().zip(outcomes) {
        tally.checked += 1;
        match outcome {
            Ok(k) => {
                seen[k as usize] = true;
                if k == 3 {
                    tally.fail(failure(m, "cosimple regular circuit-complementary, not U(1,4) or R10", &[]));
                }
            }
            Err(e) => tally.errors.push(e.to_string()),
        }
    }
    for (k, name) in [(1, "U(1,4)"), (2, "R10")] {
        if !seen[k] {
            tally.fail(Failure { detail: format!("{name} never arises"), matroid: String::new(), witness: Vec::new() });
        }
    }
    Ok((format!("connected binary matroids on <= {n} elements"), tally))
}

fn audit_2_9(a: &Auditor) -> Result<(String, Tally)> {
    let mut rng = a.rng("2.9");
    let mut items = Vec::new();
    for (base, offset) in [(zoo::uniform_rank1(4)?, (1, 3)), (zoo::r10(), (5, 5))] {
        for _ in 0..a.config.extensions_per_audit {
            let k = rng.gen_range(0..=8);
            items.push((k, offset, series_extension_steps(&mut rng, &base, k)?));
        }
    }
    let tally = run_checks(&items, |&(k, (dr, dc), ref m)| {
        Ok(if (m.rank(), m.corank()) == (k + dr, dc) {
            Vec::new()
        } else {
            vec![failure(m, format!("k = {k}: (r, r*) = ({}, {})", m.rank(), m.corank()), &[])]
        })
    });
    Ok((format!("{} seeded series extensions each of U(1,4) and R10", a.config.extensions_per_audit), tally))
}

fn audit_4_1(a: &Auditor) -> Result<(String, Tally)> {
    let o = a.oracles;
    let tally = run_checks(&a.connected()?, |m| {
        if !(o.circuit_difference)(m)? {
            return Ok(Vec::new());
        }
        for x in series_minors(m)? {
            if !(o.circuit_difference)(&x)? {
                return Ok(vec![failure(m, format!("series minor on {} is not circuit-difference", x.labels().join(" ")), &[])]);
            }
        }
        Ok(Vec::new())
    });
    Ok((format!("circuit-difference members of the {}", a.connected_desc()), tally))
}

fn audit_4_2(a: &Auditor) -> Result<(String, Tally)> {
    let o = a.oracles;
    let n5 = zoo::n5();
    let tally = run_checks(&a.connected()?, |m| {
        let script = find_n5_series_minor(m)?;
        let skew = (o.skew_pair)(m)?;
        let mut out = Vec::new();
        if script.is_some() != skew.is_some() {
            let w: Vec<ElementSet> = skew.iter().flat_map(pair_sets).collect();
            out.push(failure(m, format!("N5 series minor = {}, skew pair = {}", script.is_some(), skew.is_some()), &w));
        }
        if let Some(script) = script {
            let reached = apply_series_script(m, &script)?;
            if is_isomorphic(&reached, &n5)?.is_none() {
                out.push(failure(m, "script does not reach N5", &[]));
            }
        }
        Ok(out)
    });
    Ok((a.connected_desc(), tally))
}

fn same_classes(a: &[BinaryMatroid], b: &[BinaryMatroid]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut set = IsoClassSet::new();
    for m in a {
        set.insert(m.clone())?;
    }
    for m in b {
        if !set.contains(m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn audit_4_4(_: &Auditor) -> Result<(String, Tally)> {
    let mut tally = Tally::default();
    for r in 2..=4 {
        let catalog = hyperplane_complementary_catalog(r)?;
        for m in &catalog {
            tally.checked += 1;
            if !is_hyperplane_complementary(m)? {
                tally.fail(failure(m, format!("rank {r} catalog member is not hyperplane-complementary"), &[]));
            }
        }
        if r >= 3 {
            let brute = hyperplane_complementary_brute_force(r)?;
            tally.checked += brute.len();
            if !same_classes(&catalog, &brute)? {
                tally.fail(Failure {
                    detail: format!("rank {r}: catalog has {} classes, brute force {}", catalog.len(), brute.len()),
                    matroid: String::new(),
                    witness: Vec::new(),
                });
            }
            let expected = if r == 3 { 1 } else { 2 };
            if catalog.len() != expected {
                tally.fail(Failure {
                    detail: format!("rank {r}: {} classes, expected {expected}", catalog.len()),
                    matroid: String::new(),
                    witness: Vec::new(),
                });
            }
        }
    }
    Ok(("catalog vs all simple binary matroids of ranks 2-4".into(), tally))
}

fn audit_4_6(a: &Auditor) -> Result<(String, Tally)> {
    let mut tally = Tally::default();
    let expected: [(usize, Vec<BinaryMatroid>); 2] =
        [(3, vec![zoo::n5().dual()]), (4, vec![zoo::tipped_spike(4)?, zoo::s8()])];
    for (r, members) in &expected {
        let family: Vec<BinaryMatroid> = enumerate_m_family(*r)?.into_iter().map(|(_, m)| m).collect();
        tally.checked += family.len();
        if !same_classes(&family, members)? {
            tally.fail(Failure {
                detail: format!("rank {r} family has {} classes, not the expected ones", family.len()),
                matroid: String::new(),
                witness: Vec::new(),
            });
        }
    }
    let family: Vec<BinaryMatroid> =
        (3..=MAX_FAMILY_RANK).map(enumerate_m_family).collect::<Result<Vec<_>>>()?.into_iter().flatten().map(|(_, m)| m).collect();
    tally.absorb(run_checks(&family, |n| {
        let m = n.dual();
        Ok(if is_excluded_series_minor(&m)? {
            Vec::new()
        } else {
            vec![failure(&m, "dual of a family member is not an excluded series minor", &[])]
        })
    }));
    let o = a.oracles;
    tally.absorb(run_checks(&a.connected()?, |m| {
        if (o.circuit_difference)(m)? {
            return Ok(Vec::new());
        }
        let definitional = is_excluded_series_minor_one_step(m)?;
        // Family members of rank above the enumerated range are far larger
        // than the corpus, so there the structural side is false.
        let structural = m.corank() <= MAX_FAMILY_RANK && is_excluded_series_minor_structural(m)?;
        Ok(if definitional == structural {
            Vec::new()
        } else {
            vec![failure(m, format!("excluded (definition) = {definitional}, dual in family = {structural}"), &[])]
        })
    }));
    Ok((
        format!("family ranks 3-{MAX_FAMILY_RANK}, non-circuit-difference members of the {}", a.connected_desc()),
        tally,
    ))
}

fn audit_duality(a: &Auditor) -> Result<(String, Tally)> {
    let o = a.oracles;
    let tally = run_checks(&a.connected()?, |m| {
        let hc = is_hyperplane_complementary(m)?;
        let cc = (o.circuit_complementary)(&m.dual())?;
        Ok(if hc == cc { Vec::new() } else { vec![failure(m, format!("HC = {hc}, CC of dual = {cc}"), &[])] })
    });
    Ok((a.connected_desc(), tally))
}

fn audit_gf2(a: &Auditor) -> Result<(String, Tally)> {
    let members = a.connected()?;
    let mut tally = run_checks(&members, |m| {
        let rep = m.rep();
        let basis: Vec<u64> = rep.null_space_basis().iter().map(ElementSet::bits).collect();
        for v in GraySpan::new(&basis) {
            let s = ElementSet::from_bits(m.len(), v);
            if !rep.columns_sum_to_zero(s) {
                return Ok(vec![failure(m, "null space vector whose columns do not sum to zero", &[s])]);
            }
        }
        Ok(Vec::new())
    });
    let small: Vec<&BinaryMatroid> = members.into_iter().filter(|m| m.len() <= 8).collect();
    tally.absorb(run_checks(&small, |m| {
        let n = m.len();
        let rank: Vec<usize> = (0..1u64 << n).map(|s| m.rank_of(ElementSet::from_bits(n, s))).collect();
        for x in 0..1u64 << n {
            for e in 0..n {
                if rank[(x | 1 << e) as usize] < rank[x as usize] {
                    return Ok(vec![failure(m, "rank not monotone", &[ElementSet::from_bits(n, x)])]);
                }
            }
            for y in 0..1u64 << n {
                if rank[x as usize] + rank[y as usize] < rank[(x | y) as usize] + rank[(x & y) as usize] {
                    let w = [ElementSet::from_bits(n, x), ElementSet::from_bits(n, y)];
                    return Ok(vec![failure(m, "rank not submodular", &w)]);
                }
            }
        }
        Ok(Vec::new())
    }));
    Ok((format!("{} (submodularity exhaustive on <= 8)", a.connected_desc()), tally))
}

fn audit_matroid(a: &Auditor) -> Result<(String, Tally)> {
    let tally = run_checks(&a.connected()?, |m| {
        let mut out = Vec::new();
        let circuits = m.circuits()?;
        let cocircuits = m.cocircuits()?;
        if m.dual().circuits()?.members() != cocircuits.members() {
            out.push(failure(m, "circuits of the dual differ from cocircuits", &[]));
        }
        for c in circuits.iter() {
            if !m.is_circuit(*c) {
                out.push(failure(m, "enumerated set is not a circuit", &[*c]));
            }
            if let Some(d) = cocircuits.iter().find(|d| c.intersection(d).len() % 2 == 1) {
                out.push(failure(m, "circuit meets cocircuit in an odd set", &[*c, *d]));
            }
        }
        let members = circuits.members();
        for (i, c1) in members.iter().enumerate() {
            for c2 in &members[i + 1..] {
                if c1.is_subset(c2) || c2.is_subset(c1) {
                    out.push(failure(m, "circuits are nested", &[*c1, *c2]));
                }
                if !m.rep().columns_sum_to_zero(c1.sym_diff(c2)) {
                    out.push(failure(m, "symmetric difference of circuits is not a cycle", &[*c1, *c2]));
                }
            }
        }
        // Extending a coloop in series gives two coloops, which is not connected.
        let (core, _) = m.cosimplify()?;
        for e in (0..m.len()).filter(|&e| !m.is_coloop(e)) {
            let (again, _) = m.series_extend(e, &["+1".to_string()])?.cosimplify()?;
            if is_isomorphic(&core, &again)?.is_none() {
                out.push(failure(m, format!("cosimplification changes after extending {}", m.label(e)), &[]));
            }
        }
        Ok(out)
    });
    Ok((a.connected_desc(), tally))
}

fn audit_zoo(_: &Auditor) -> Result<(String, Tally)> {
    let mut tally = Tally::default();
    for r in 1..=5 {
        let (pg, ag) = (zoo::pg(r)?, zoo::ag(r)?);
        tally.checked += 2;
        if pg.len() != (1 << r) - 1 || pg.rank() != r || !pg.is_simple() {
            tally.fail(failure(&pg, format!("PG({},2) has the wrong shape", r - 1), &[]));
        }
        if ag.len() != 1 << (r - 1) || ag.rank() != r || !ag.is_simple() {
            tally.fail(failure(&ag, format!("AG({},2) has the wrong shape", r - 1), &[]));
        }
    }
    let graphs: Vec<_> = connected_multigraphs(7).into_iter().flatten().collect();
    tally.absorb(run_checks(&graphs, |g| {
        let m = g.matroid()?;
        Ok(if is_isomorphic(&m.dual(), &zoo::cographic(&g.edges)?)?.is_some() {
            Vec::new()
        } else {
            vec![failure(&m, "dual of the cycle matroid is not the bond matroid", &[])]
        })
    }));
    let r10 = zoo::r10();
    let k33 = zoo::complete_bipartite(3, 3)?;
    tally.checked += 1;
    let shape_ok = r10.len() == 10
        && r10.rank() == 5
        && r10.is_connected()
        && r10.is_cosimple()
        && is_circuit_complementary(&r10)?
        && is_regular(&r10)?;
    if !shape_ok {
        tally.fail(failure(&r10, "R10 fails its certification", &[]));
    }
    for e in 0..r10.len() {
        tally.checked += 1;
        if is_isomorphic(&r10.delete_element(e), &k33)?.is_none() {
            tally.fail(failure(&r10, format!("R10 delete {} is not M(K33)", r10.label(e)), &[]));
        }
    }
    Ok(("PG/AG ranks 1-5, connected multigraphs with <= 7 edges, R10".into(), tally))
}
