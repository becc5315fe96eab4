//! Minor containment by exhaustive search.
//!
//! Every minor of `M` can be written `M / I \ D` with `I` independent, so a
//! copy of `N` is searched for by choosing `I` with `|I| = r(M) - r(N)` and
//! then a spanning set of `|E(N)|` survivors in `M / I`.

use std::collections::HashSet;

use super::{minor_matrix, pivot_out, BinaryMatroid, IsoProfile};
use crate::error::Result;
use crate::gf2::{ElementSet, Gf2Matrix};

/// Deletion/contraction sets (indices of the host) producing the minor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    pub delete: ElementSet,
    pub contract: ElementSet,
}

/// All `k`-subsets of `pool`, as bitmasks over the host ground set.
pub(crate) fn subsets_of_size(pool: u64, k: usize) -> impl Iterator<Item = u64> {
    let m = pool.count_ones() as usize;
    let mut next: Option<u64> = match k {
        _ if k > m => None,
        0 => Some(0),
        64 => Some(u64::MAX),
        _ => Some((1u64 << k) - 1),
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack over the compressed index space.
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 {
                None
            } else {
                let n = (((r ^ cur) >> 2) / c) | r;
                (m == 64 || n >> m == 0).then_some(n)
            }
        };
        Some(crate::gf2::expand_bits(cur, pool))
    })
}

/// One representative (the least index) of each parallel class of non-loops
/// in `M / contract`, as a mask over the host.
fn parallel_representatives(host: &BinaryMatroid, contract: ElementSet) -> u64 {
    let mut rows = host.rep().rows().to_vec();
    pivot_out(&mut rows, contract);
    let reduced = Gf2Matrix::from_rows(rows, host.len());
    let mut seen = HashSet::new();
    let mut reps = 0u64;
    for j in contract.complement().iter() {
        let c = reduced.column_bits(j);
        if c != 0 && seen.insert(c) {
            reps |= 1 << j;
        }
    }
    reps
}

/// Finds `M / C \ D` isomorphic to `target`. A simple target only needs one
/// survivor per parallel class of `M / C`, and a cosimple one is searched
/// for in the duals, where it becomes simple.
pub fn find_minor(host: &BinaryMatroid, target: &BinaryMatroid) -> Result<Option<MinorWitness>> {
    let (n, r) = (host.len(), host.rank());
    let (tn, tr) = (target.len(), target.rank());
    if tn > n || tr > r || target.corank() > host.corank() {
        return Ok(None);
    }
    let simple = target.is_simple();
    if !simple && target.is_cosimple() {
        let w = find_minor(&host.dual(), &target.dual())?;
        return Ok(w.map(|w| MinorWitness { delete: w.contract, contract: w.delete }));
    }
    let profile = IsoProfile::new(target)?;
    let ground = host.ground().bits();
    let k = r - tr;
    for contract_bits in subsets_of_size(ground, k) {
        let contract = ElementSet::from_bits(n, contract_bits);
        if !host.is_independent(contract) {
            continue;
        }
        let rest = ground & !contract_bits;
        let pool = if simple { parallel_representatives(host, contract) } else { rest };
        for keep_bits in subsets_of_size(pool, tn) {
            let delete = ElementSet::from_bits(n, rest & !keep_bits);
            let rep = minor_matrix(host.rep(), delete, contract);
            if rep.nrows() != tr {
                continue;
            }
            let candidate = IsoProfile::from_matrix(&rep)?;
            if candidate.find_isomorphism(&profile).is_some() {
                return Ok(Some(MinorWitness { delete, contract }));
            }
        }
    }
    Ok(None)
}

/// True when some `M / C \ D` is isomorphic to `target`.
pub fn has_minor(host: &BinaryMatroid, target: &BinaryMatroid) -> Result<bool> {
    Ok(find_minor(host, target)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::Gf2Matrix;

    #[test]
    fn subsets_enumeration_counts() {
        assert_eq!(subsets_of_size(0b1111, 2).count(), 6);
        assert_eq!(subsets_of_size(0b1011_0000, 3).count(), 1);
        assert_eq!(subsets_of_size(0b111, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets_of_size(0b11, 3).count(), 0);
        let all: Vec<u64> = subsets_of_size(0b1010_1010, 2).collect();
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(|s| s & !0b1010_1010 == 0 && s.count_ones() == 2));
        assert_eq!(subsets_of_size(u64::MAX, 63).count(), 64);
    }

    #[test]
    fn k4_has_a_parallel_pair_minor() {
        let k4 = BinaryMatroid::from_matrix(Gf2Matrix::from_strs(&["111000", "100110", "010101", "001011"]));
        let u12 = BinaryMatroid::from_matrix(Gf2Matrix::from_strs(&["11"]));
        let w = find_minor(&k4, &u12).unwrap().unwrap();
        let minor = k4.minor(w.delete, w.contract).unwrap();
        assert!(super::super::is_isomorphic(&minor, &u12).unwrap().is_some());
    }

    fn has_minor_unpruned(host: &BinaryMatroid, target: &BinaryMatroid) -> bool {
        let n = host.len();
        let profile = IsoProfile::new(target).unwrap();
        (0..1u64 << n).any(|c| {
            let contract = ElementSet::from_bits(n, c);
            host.is_independent(contract)
                && subsets_of_size(!c & host.ground().bits(), target.len()).any(|keep| {
                    let delete = ElementSet::from_bits(n, host.ground().bits() & !c & !keep);
                    let m = IsoProfile::new(&host.minor(delete, contract).unwrap()).unwrap();
                    m.find_isomorphism(&profile).is_some()
                })
        })
    }

    #[test]
    fn pruned_search_agrees_with_unpruned() {
        use crate::zoo;
        let hosts = [zoo::complete(4).unwrap(), zoo::s8(), zoo::prism(), zoo::n5(), zoo::f7_dual()];
        let targets = [
            zoo::uniform_rank1(3).unwrap(),
            zoo::circuit(3).unwrap(),
            zoo::n5(),
            zoo::n5().dual(),
            zoo::f7(),
            zoo::f7_dual(),
            zoo::complete(4).unwrap(),
            BinaryMatroid::from_matrix(Gf2Matrix::from_strs(&["100", "011"])),
        ];
        for h in &hosts {
            for t in &targets {
                assert_eq!(has_minor(h, t).unwrap(), has_minor_unpruned(h, t), "{:?} in {:?}", t.rep(), h.rep());
            }
        }
    }

    #[test]
    fn fano_contains_itself() {
        let f7 = BinaryMatroid::from_matrix(Gf2Matrix::from_strs(&["1010101", "0110011", "0001111"]));
        assert!(has_minor(&f7, &f7).unwrap());
        assert!(!has_minor(&f7, &f7.dual()).unwrap());
    }
}
