//! Structural recognition of regular circuit-difference matroids.
//!
//! A regular matroid is circuit-difference exactly when every component
//! cosimplifies to one of `U_{0,1}`, `U_{1,m}`, `M*(K_n)`, `M(K_{3,3})` or
//! `R_10`. Positive answers are obtained without touching circuit pairs;
//! the circuit family is only enumerated to produce a witness for a
//! negative component.

use std::fmt;

use rayon::prelude::*;

use crate::error::{MatroidError, Result};
use crate::gf2::ElementSet;
use crate::matroid::{is_isomorphic, BinaryMatroid, CosimplifyWitness};
use crate::predicates::{
    circuit_difference_violation, is_regular, skew_circuit_pair, violation_from_skew_pair, CircuitPair,
};
use crate::zoo;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseMatroid {
    U01,
    U1m(usize),
    /// `M*(K_n)`, for `n >= 4`; smaller `n` coincide with other entries.
    DualComplete(usize),
    K33,
    R10,
}

impl BaseMatroid {
    pub fn build(&self) -> Result<BinaryMatroid> {
        match *self {
            BaseMatroid::U01 => Ok(zoo::loop_matroid()),
            BaseMatroid::U1m(m) => zoo::uniform_rank1(m),
            BaseMatroid::DualComplete(n) => zoo::complete_dual(n),
            BaseMatroid::K33 => zoo::complete_bipartite(3, 3),
            BaseMatroid::R10 => Ok(zoo::r10()),
        }
    }
}

impl fmt::Display for BaseMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseMatroid::U01 => write!(f, "U(0,1)"),
            BaseMatroid::U1m(m) => write!(f, "U(1,{m})"),
            BaseMatroid::DualComplete(n) => write!(f, "M*(K{n})"),
            BaseMatroid::K33 => write!(f, "M(K33)"),
            BaseMatroid::R10 => write!(f, "R10"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    /// The cosimplified component is isomorphic to `base`. Indices in
    /// `series` are those of the whole matroid; `iso[i]` is the base
    /// element matched with the `i`-th survivor.
    Base {
        base: BaseMatroid,
        series: CosimplifyWitness,
        iso: Vec<usize>,
    },
    /// Intersecting circuits (indices of the whole matroid) whose symmetric
    /// difference is not a circuit. `None` only if no such pair exists,
    /// which would contradict the structure theorem.
    NotCircuitDifference { witness: Option<CircuitPair> },
}

impl Verdict {
    pub fn is_positive(&self) -> bool {
        matches!(self, Verdict::Base { .. })
    }
}

#[derive(Clone, Debug)]
pub struct ComponentReport {
    pub elements: ElementSet,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct RecognitionReport {
    pub components: Vec<ComponentReport>,
}

impl RecognitionReport {
    pub fn is_circuit_difference(&self) -> bool {
        self.components.iter().all(|c| c.verdict.is_positive())
    }

    /// The empty matroid is accepted vacuously; the structure theorem
    /// itself only speaks about non-empty matroids.
    pub fn out_of_scope(&self) -> bool {
        self.components.is_empty()
    }
}

/// Bases whose size and rank fit a cosimple connected matroid with the
/// given shape. At most one `M*(K_n)` candidate survives: `n = corank + 1`.
fn candidates(len: usize, rank: usize) -> Vec<BaseMatroid> {
    let corank = len - rank;
    let mut out = Vec::new();
    match (len, rank) {
        (1, 0) => out.push(BaseMatroid::U01),
        (m, 1) if m != 2 => out.push(BaseMatroid::U1m(m)),
        _ => {}
    }
    let n = corank + 1;
    if n >= 4 && rank == (n - 1) * (n - 2) / 2 {
        out.push(BaseMatroid::DualComplete(n));
    }
    if (len, rank) == (9, 5) {
        out.push(BaseMatroid::K33);
    }
    if (len, rank) == (10, 5) {
        out.push(BaseMatroid::R10);
    }
    out
}

/// Matches a cosimple connected matroid against the base list.
pub fn match_base(m: &BinaryMatroid) -> Result<Option<(BaseMatroid, Vec<usize>)>> {
    for base in candidates(m.len(), m.rank()) {
        if let Some(phi) = is_isomorphic(m, &base.build()?)? {
            return Ok(Some((base, phi)));
        }
    }
    Ok(None)
}

fn negative_witness(component: &BinaryMatroid) -> Result<Option<CircuitPair>> {
    if let Some(skew) = skew_circuit_pair(component)? {
        if let Some(pair) = violation_from_skew_pair(component, skew)? {
            return Ok(Some(pair));
        }
    }
    circuit_difference_violation(component)
}

fn lift(set: ElementSet, positions: &[usize], universe: usize) -> ElementSet {
    ElementSet::from_indices(universe, set.iter().map(|i| positions[i]))
}

fn analyze_component(m: &BinaryMatroid, elements: ElementSet) -> Result<ComponentReport> {
    let n = m.len();
    let positions = elements.to_vec();
    let component = m.restrict(elements);
    let (core, series) = component.cosimplify()?;
    let verdict = match match_base(&core)? {
        Some((base, iso)) => Verdict::Base {
            base,
            series: CosimplifyWitness {
                survivors: series.survivors.iter().map(|&s| positions[s]).collect(),
                classes: series.classes.iter().map(|c| lift(*c, &positions, n)).collect(),
            },
            iso,
        },
        None => Verdict::NotCircuitDifference {
            witness: negative_witness(&component)?.map(|p| CircuitPair {
                first: lift(p.first, &positions, n),
                second: lift(p.second, &positions, n),
            }),
        },
    };
    Ok(ComponentReport { elements, verdict })
}

/// Component-wise recognition. Fails with `NotRegular` on non-regular
/// input; those need the brute-force predicate instead.
pub fn recognize_regular_cd(m: &BinaryMatroid) -> Result<RecognitionReport> {
    if !is_regular(m)? {
        return Err(MatroidError::NotRegular);
    }
    let components = m
        .components()
        .into_par_iter()
        .map(|c| analyze_component(m, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(RecognitionReport { components })
}

/// True iff a connected, regular, non-empty `m` is a series extension of a
/// base matroid, i.e. has no two skew circuits.
pub fn no_skew_structural(m: &BinaryMatroid) -> Result<bool> {
    if m.is_empty() {
        return Err(MatroidError::InvalidParameter("matroid must be non-empty".into()));
    }
    if !m.is_connected() {
        return Err(MatroidError::NotConnected);
    }
    if !is_regular(m)? {
        return Err(MatroidError::NotRegular);
    }
    let (core, _) = m.cosimplify()?;
    Ok(match_base(&core)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicates::{is_circuit_difference, is_violation};
    use crate::zoo::*;

    fn base_of(m: &BinaryMatroid) -> Vec<Option<BaseMatroid>> {
        recognize_regular_cd(m)
            .unwrap()
            .components
            .iter()
            .map(|c| match &c.verdict {
                Verdict::Base { base, .. } => Some(*base),
                _ => None,
            })
            .collect()
    }

    #[test]
    fn k4_is_dual_k4() {
        assert_eq!(base_of(&complete(4).unwrap()), vec![Some(BaseMatroid::DualComplete(4))]);
    }

    #[test]
    fn s8_is_rejected_as_non_regular() {
        assert_eq!(recognize_regular_cd(&s8()).unwrap_err(), MatroidError::NotRegular);
    }

    #[test]
    fn prism_negative_with_valid_witness() {
        let p = prism();
        let report = recognize_regular_cd(&p).unwrap();
        assert!(!report.is_circuit_difference());
        let Verdict::NotCircuitDifference { witness: Some(w) } = &report.components[0].verdict else {
            panic!("expected a witness");
        };
        assert!(is_violation(&p, w));
    }

    #[test]
    fn series_extensions_of_r10() {
        let mut m = r10();
        for (i, e) in [0usize, 3, 3, 7].into_iter().enumerate() {
            m = m.series_extend(e, &[format!("s{i}")]).unwrap();
            assert_eq!(base_of(&m), vec![Some(BaseMatroid::R10)]);
        }
    }

    #[test]
    fn small_bases() {
        assert_eq!(base_of(&loop_matroid()), vec![Some(BaseMatroid::U01)]);
        assert_eq!(base_of(&coloop()), vec![Some(BaseMatroid::U1m(1))]);
        assert_eq!(base_of(&circuit(5).unwrap()), vec![Some(BaseMatroid::U01)]);
        assert_eq!(base_of(&uniform_rank1(5).unwrap()), vec![Some(BaseMatroid::U1m(5))]);
        assert_eq!(base_of(&complete(3).unwrap()), vec![Some(BaseMatroid::U01)]);
        assert_eq!(base_of(&complete_dual(3).unwrap()), vec![Some(BaseMatroid::U1m(3))]);
        assert_eq!(base_of(&complete_dual(5).unwrap()), vec![Some(BaseMatroid::DualComplete(5))]);
        assert_eq!(base_of(&complete_bipartite(3, 3).unwrap()), vec![Some(BaseMatroid::K33)]);
        let report = recognize_regular_cd(&BinaryMatroid::empty()).unwrap();
        assert!(report.is_circuit_difference() && report.out_of_scope());
    }

    #[test]
    fn disconnected_input_is_split() {
        let m = complete(4).unwrap().direct_sum(&prism()).unwrap();
        let report = recognize_regular_cd(&m).unwrap();
        assert_eq!(report.components.len(), 2);
        assert!(!report.is_circuit_difference());
        assert!(!is_circuit_difference(&m).unwrap());
        let Verdict::NotCircuitDifference { witness: Some(w) } = &report.components[1].verdict else {
            panic!("prism component should be negative");
        };
        assert!(is_violation(&m, w));
    }

    #[test]
    fn structural_no_skew() {
        assert!(no_skew_structural(&complete_bipartite(3, 3).unwrap()).unwrap());
        assert!(no_skew_structural(&complete_dual(5).unwrap()).unwrap());
        assert!(!no_skew_structural(&prism()).unwrap());
        assert_eq!(no_skew_structural(&free(2).unwrap()).unwrap_err(), MatroidError::NotConnected);
    }

    #[test]
    fn base_labels_are_self_consistent() {
        for m in [complete(5).unwrap(), complete_dual(6).unwrap(), r10(), complete_bipartite(3, 3).unwrap()] {
            for c in recognize_regular_cd(&m).unwrap().components {
                if let Verdict::Base { base, .. } = c.verdict {
                    let (core, _) = m.restrict(c.elements).cosimplify().unwrap();
                    assert!(is_isomorphic(&core, &base.build().unwrap()).unwrap().is_some());
                }
            }
        }
    }
}
