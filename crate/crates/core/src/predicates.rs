//! Brute-force decision procedures over the circuit and cocircuit families.
//!
//! These are the reference answers the structural recognizer and the
//! audits are checked against, so they stay close to the definitions.

use rayon::prelude::*;

use crate::error::{MatroidError, Result};
use crate::gf2::ElementSet;
use crate::matroid::{has_minor, BinaryMatroid};
use crate::zoo;

/// Two circuits, in the order they were found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CircuitPair {
    pub first: ElementSet,
    pub second: ElementSet,
}

/// Above this many circuits the pair scans are split across threads.
const PARALLEL_THRESHOLD: usize = 512;

/// Scans unordered pairs `(i, j)`, `i < j`, in lexicographic order and
/// returns the first pair accepted by `test`.
fn first_pair<F>(members: &[ElementSet], test: F) -> Option<CircuitPair>
where
    F: Fn(&ElementSet, &ElementSet) -> bool + Sync,
{
    let scan = |i: usize| {
        let a = &members[i];
        members[i + 1..]
            .iter()
            .find(|b| test(a, b))
            .map(|b| CircuitPair { first: *a, second: *b })
    };
    if members.len() > PARALLEL_THRESHOLD {
        (0..members.len()).into_par_iter().find_map_first(scan)
    } else {
        (0..members.len()).find_map(scan)
    }
}

/// First pair of distinct intersecting circuits whose symmetric difference
/// is not a circuit, or `None` when `m` is circuit-difference.
pub fn circuit_difference_violation(m: &BinaryMatroid) -> Result<Option<CircuitPair>> {
    let circuits = m.circuits()?;
    Ok(first_pair(circuits.members(), |a, b| {
        a.intersects(b) && !circuits.contains(&a.sym_diff(b))
    }))
}

/// Every violating pair, in the same order as [`circuit_difference_violation`].
pub fn circuit_difference_violations(m: &BinaryMatroid) -> Result<Vec<CircuitPair>> {
    let circuits = m.circuits()?;
    let members = circuits.members();
    Ok((0..members.len())
        .flat_map(|i| {
            let a = members[i];
            members[i + 1..]
                .iter()
                .filter(move |b| a.intersects(b) && !circuits.contains(&a.sym_diff(b)))
                .map(move |b| CircuitPair { first: a, second: *b })
        })
        .collect())
}

/// Vacuously true with fewer than two circuits.
pub fn is_circuit_difference(m: &BinaryMatroid) -> Result<bool> {
    Ok(circuit_difference_violation(m)?.is_none())
}

/// First pair of circuits `C1, C2` with `r(C1 ∪ C2) = r(C1) + r(C2)`.
/// Skew circuits are disjoint, so only disjoint pairs are ranked.
pub fn skew_circuit_pair(m: &BinaryMatroid) -> Result<Option<CircuitPair>> {
    let circuits = m.circuits()?;
    Ok(first_pair(circuits.members(), |a, b| {
        !a.intersects(b) && m.rank_of(a.union(b)) + 2 == a.len() + b.len()
    }))
}

pub fn has_skew_circuits(m: &BinaryMatroid) -> Result<bool> {
    Ok(skew_circuit_pair(m)?.is_some())
}

/// Every circuit's complement is a circuit (vacuously true without circuits).
pub fn is_circuit_complementary(m: &BinaryMatroid) -> Result<bool> {
    let circuits = m.circuits()?;
    Ok(circuits.iter().all(|c| circuits.contains(&c.complement())))
}

/// Every hyperplane's complement is a hyperplane. Hyperplanes are exactly
/// the complements of cocircuits, so this is the dual statement of
/// [`is_circuit_complementary`].
pub fn is_hyperplane_complementary(m: &BinaryMatroid) -> Result<bool> {
    let cocircuits = m.cocircuits()?;
    Ok(cocircuits.iter().all(|c| cocircuits.contains(&c.complement())))
}

/// `M / F` is connected for every flat `F`. Requires `m` connected.
pub fn is_unbreakable(m: &BinaryMatroid) -> Result<bool> {
    if !m.is_connected() {
        return Err(MatroidError::NotConnected);
    }
    Ok(m.flats()?.into_iter().all(|f| m.contract(f).is_connected()))
}

/// Strips loops, coloops, and all but one element of every parallel and
/// series class, until nothing changes. Regularity is invariant under these
/// reductions and `F_7`, `F_7*` are 3-connected, so minors of either survive.
pub fn reduce_series_parallel(m: &BinaryMatroid) -> BinaryMatroid {
    let mut cur = m.clone();
    loop {
        let n = cur.len();
        let mut delete = ElementSet::empty(n);
        let mut contract = ElementSet::empty(n);
        for e in 0..n {
            if cur.is_loop(e) {
                delete.insert(e);
            } else if cur.is_coloop(e) {
                contract.insert(e);
            }
        }
        for class in cur.parallel_classes() {
            if class.len() > 1 {
                let keep = class.first().expect("non-empty");
                delete = delete.union(&class.difference(&ElementSet::singleton(n, keep)));
            }
        }
        if delete.is_empty() && contract.is_empty() {
            for class in cur.series_partition().classes {
                if class.len() > 1 {
                    let keep = class.first().expect("non-empty");
                    contract = contract.union(&class.difference(&ElementSet::singleton(n, keep)));
                }
            }
        }
        if delete.is_empty() && contract.is_empty() {
            return cur;
        }
        cur = cur.minor(delete, contract.difference(&delete)).expect("disjoint");
    }
}

/// Binary and no `F_7` or `F_7*` minor.
pub fn is_regular(m: &BinaryMatroid) -> Result<bool> {
    let reduced = reduce_series_parallel(m);
    if reduced.len() < 7 {
        return Ok(true);
    }
    Ok(!has_minor(&reduced, &zoo::f7())? && !has_minor(&reduced, &zoo::f7_dual())?)
}

/// Direct minor search without the series-parallel reduction.
pub fn is_regular_unreduced(m: &BinaryMatroid) -> Result<bool> {
    Ok(!has_minor(m, &zoo::f7())? && !has_minor(m, &zoo::f7_dual())?)
}

/// Turns skew circuits `C1`, `C2` of a connected binary matroid into a
/// pair of intersecting circuits whose symmetric difference is not a
/// circuit. Takes any circuit `D` meeting both; then either `C1 △ D` or
/// `C2 △ D` fails to be a circuit, or both are circuits meeting in
/// `D - (C1 ∪ C2)` with symmetric difference `C1 ∪ C2`, which is not one.
pub fn violation_from_skew_pair(m: &BinaryMatroid, skew: CircuitPair) -> Result<Option<CircuitPair>> {
    let circuits = m.circuits()?;
    let (c1, c2) = (skew.first, skew.second);
    let Some(d) = circuits.iter().find(|d| d.intersects(&c1) && d.intersects(&c2)) else {
        return Ok(None);
    };
    let a = c1.sym_diff(d);
    if !circuits.contains(&a) {
        return Ok(Some(CircuitPair { first: c1, second: *d }));
    }
    let b = c2.sym_diff(d);
    if !circuits.contains(&b) {
        return Ok(Some(CircuitPair { first: c2, second: *d }));
    }
    Ok(Some(CircuitPair { first: a, second: b }))
}

/// Checks that `pair` really violates the circuit-difference property.
pub fn is_violation(m: &BinaryMatroid, pair: &CircuitPair) -> bool {
    pair.first != pair.second
        && m.is_circuit(pair.first)
        && m.is_circuit(pair.second)
        && pair.first.intersects(&pair.second)
        && !m.is_circuit(pair.first.sym_diff(&pair.second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::*;

    #[test]
    fn s8_is_not_circuit_difference() {
        let m = s8();
        let w = circuit_difference_violation(&m).unwrap().expect("S8 violates");
        assert!(is_violation(&m, &w));
        let named = CircuitPair {
            first: m.set_of_labels(&["1", "4", "7", "8"]),
            second: m.set_of_labels(&["2", "3", "5", "6", "8"]),
        };
        assert!(is_violation(&m, &named));
        let all = circuit_difference_violations(&m).unwrap();
        assert_eq!(all.len(), 4);
        assert_eq!(all[0], w);
        assert!(all.contains(&named));
        assert_eq!(
            named.first.sym_diff(&named.second),
            m.set_of_labels(&["1", "2", "6"]).union(&m.set_of_labels(&["3", "4", "5", "7"]))
        );
        assert!(skew_circuit_pair(&m).unwrap().is_none());
    }

    #[test]
    fn circuit_difference_examples() {
        assert!(is_circuit_difference(&complete(4).unwrap()).unwrap());
        assert!(is_circuit_difference(&tipless_spike(4).unwrap()).unwrap());
        for m in 1..=6 {
            assert!(is_circuit_difference(&uniform_rank1(m).unwrap()).unwrap());
        }
        assert!(is_circuit_difference(&free(3).unwrap()).unwrap());
        for e in 0..6 {
            assert!(!is_circuit_difference(&complete(4).unwrap().contract_element(e)).unwrap());
        }
    }

    #[test]
    fn skew_examples() {
        assert!(skew_circuit_pair(&complete(4).unwrap()).unwrap().is_none());
        let p = prism();
        let pair = skew_circuit_pair(&p).unwrap().expect("two disjoint triangles");
        assert_eq!(pair.first, p.set_of_labels(&["1", "2", "3"]));
        assert_eq!(pair.second, p.set_of_labels(&["4", "5", "6"]));
        assert_eq!(p.rank(), 5);
    }

    #[test]
    fn circuit_complementary_examples() {
        assert!(is_circuit_complementary(&uniform_rank1(4).unwrap()).unwrap());
        assert!(is_circuit_complementary(&r10()).unwrap());
        assert!(!is_circuit_complementary(&complete(4).unwrap()).unwrap());
        assert!(is_circuit_complementary(&free(2).unwrap()).unwrap());
    }

    #[test]
    fn hyperplane_complementary_examples() {
        assert!(is_hyperplane_complementary(&ag(3).unwrap()).unwrap());
        assert!(is_hyperplane_complementary(&ag(4).unwrap()).unwrap());
        assert!(!is_hyperplane_complementary(&f7()).unwrap());
        let ag4 = ag(4).unwrap();
        for a in 0..8 {
            for b in a + 1..8 {
                assert!(!is_hyperplane_complementary(&ag4.delete(ag4.set([a, b]))).unwrap());
            }
        }
    }

    #[test]
    fn unbreakable_examples() {
        for n in 2..=6 {
            assert!(is_unbreakable(&circuit(n).unwrap()).unwrap());
        }
        assert!(!is_unbreakable(&prism().dual()).unwrap());
        assert_eq!(is_unbreakable(&free(2).unwrap()), Err(MatroidError::NotConnected));
    }

    #[test]
    fn regular_examples() {
        assert!(is_regular(&complete(5).unwrap()).unwrap());
        assert!(is_regular(&r10()).unwrap());
        assert!(!is_regular(&f7()).unwrap());
        assert!(!is_regular(&f7_dual()).unwrap());
        assert!(!is_regular(&s8()).unwrap());
    }

    #[test]
    fn reduction_does_not_change_regularity() {
        let r10_ext = r10().series_extend(0, &["p".into(), "q".into()]).unwrap();
        assert_eq!(reduce_series_parallel(&r10_ext).len(), 10);
        for m in [complete(4).unwrap(), s8(), tipped_spike(4).unwrap(), prism(), r10()] {
            assert_eq!(is_regular(&m).unwrap(), is_regular_unreduced(&m).unwrap());
        }
    }

    #[test]
    fn violation_built_from_skew_pair() {
        let p = prism();
        let skew = skew_circuit_pair(&p).unwrap().unwrap();
        let v = violation_from_skew_pair(&p, skew).unwrap().unwrap();
        assert!(is_violation(&p, &v));
    }
}
