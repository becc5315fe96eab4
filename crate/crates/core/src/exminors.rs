//! Series minors and the excluded series minors of the circuit-difference
//! class.
//!
//! A series minor is reached by deleting elements and contracting elements
//! that lie in a 2-cocircuit. The binary excluded series minors are the
//! duals of the family `[AG(r-1,2) + e] \ X` (`r >= 3`) in which
//! `AG(r-1,2) \ X` is hyperplane-complementary of rank `r`.

use std::collections::HashMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{MatroidError, Result};
use crate::gf2::ElementSet;
use crate::matroid::{is_isomorphic, BinaryMatroid, IsoClassSet, IsoProfile};
use crate::predicates::{is_circuit_difference, is_hyperplane_complementary};
use crate::zoo;

/// Largest rank for which the `AG(r-1,2)` subset enumerations run.
pub const MAX_FAMILY_RANK: usize = 5;
/// Largest rank for the brute-force scan over subsets of `PG(r-1,2)`.
pub const MAX_BRUTE_FORCE_RANK: usize = 4;

/// One step of a series-minor script. Indices refer to the matroid the
/// script was produced for, not to the intermediate minors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesMove {
    Delete(usize),
    Contract(usize),
}

/// Elements of `m` lying in some 2-cocircuit.
pub fn series_contractible(m: &BinaryMatroid) -> ElementSet {
    let mut out = ElementSet::empty(m.len());
    for class in m.series_partition().classes {
        if class.len() > 1 {
            out = out.union(&class);
        }
    }
    out
}

/// Every single-step series minor, with the move (local index) producing it.
pub fn one_step_series_minors(m: &BinaryMatroid) -> Vec<(SeriesMove, BinaryMatroid)> {
    let mut out: Vec<_> = (0..m.len()).map(|e| (SeriesMove::Delete(e), m.delete_element(e))).collect();
    for e in series_contractible(m).iter() {
        out.push((SeriesMove::Contract(e), m.contract_element(e)));
    }
    out
}

/// Applies `script` to `m`, checking every contraction is a series one.
pub fn apply_series_script(m: &BinaryMatroid, script: &[SeriesMove]) -> Result<BinaryMatroid> {
    let mut cur = m.clone();
    for mv in script {
        let (SeriesMove::Delete(e) | SeriesMove::Contract(e)) = *mv;
        let label = m.labels().get(e).ok_or(MatroidError::NoSuchElement(e))?;
        let local = cur
            .index_of(label)
            .ok_or_else(|| MatroidError::InvalidSpec(format!("element {label} already removed")))?;
        cur = match mv {
            SeriesMove::Delete(_) => cur.delete_element(local),
            SeriesMove::Contract(_) => {
                if !series_contractible(&cur).contains(local) {
                    return Err(MatroidError::InvalidSpec(format!("{label} is not in a 2-cocircuit")));
                }
                cur.contract_element(local)
            }
        };
    }
    Ok(cur)
}

/// All series minors of `m` up to isomorphism, `m` first, in breadth-first
/// order (so by decreasing size).
pub fn series_minors(m: &BinaryMatroid) -> Result<Vec<BinaryMatroid>> {
    let mut seen = IsoClassSet::new();
    seen.insert(m.clone())?;
    let mut frontier = vec![m.clone()];
    while !frontier.is_empty() {
        let children: Vec<BinaryMatroid> = frontier
            .iter()
            .flat_map(|x| one_step_series_minors(x).into_iter().map(|(_, c)| c))
            .collect();
        let profiled = children
            .into_par_iter()
            .map(|c| IsoProfile::new(&c).map(|p| (c, p)))
            .collect::<Result<Vec<_>>>()?;
        frontier = profiled
            .into_iter()
            .filter_map(|(c, p)| seen.insert_with_profile(c.clone(), p).then_some(c))
            .collect();
    }
    Ok(seen.into_classes())
}

/// A deletion/series-contraction script taking a connected `m` to `N_5`.
pub fn find_n5_series_minor(m: &BinaryMatroid) -> Result<Option<Vec<SeriesMove>>> {
    if !m.is_connected() {
        return Err(MatroidError::NotConnected);
    }
    let n5 = IsoProfile::new(&zoo::n5())?;
    let mut dead = IsoClassSet::new();
    let mut path = Vec::new();
    let found = n5_search(m, m, &n5, &mut dead, &mut path)?;
    Ok(found.then_some(path))
}

/// Depth-first search; `dead` holds classes already known not to reach
/// `N_5`, which only depends on the isomorphism class.
fn n5_search(
    root: &BinaryMatroid,
    cur: &BinaryMatroid,
    n5: &IsoProfile,
    dead: &mut IsoClassSet,
    path: &mut Vec<SeriesMove>,
) -> Result<bool> {
    if cur.len() < 5 || cur.rank() < 2 || cur.corank() < 3 {
        return Ok(false);
    }
    let profile = IsoProfile::new(cur)?;
    if cur.len() == 5 {
        return Ok(profile.find_isomorphism(n5).is_some());
    }
    if dead.find(&profile).is_some() {
        return Ok(false);
    }
    let mut moves = one_step_series_minors(cur);
    // Contractions first: they cut the rank, which is what usually has to go.
    moves.sort_by_key(|(mv, _)| matches!(mv, SeriesMove::Delete(_)));
    for (mv, child) in moves {
        let (SeriesMove::Delete(e) | SeriesMove::Contract(e)) = mv;
        let original = root.index_of(cur.label(e)).expect("labels survive minors");
        path.push(match mv {
            SeriesMove::Delete(_) => SeriesMove::Delete(original),
            SeriesMove::Contract(_) => SeriesMove::Contract(original),
        });
        if n5_search(root, &child, n5, dead, path)? {
            return Ok(true);
        }
        path.pop();
    }
    dead.insert_with_profile(cur.clone(), profile);
    Ok(false)
}

/// Not circuit-difference, while every proper series minor is.
pub fn is_excluded_series_minor(m: &BinaryMatroid) -> Result<bool> {
    if is_circuit_difference(m)? {
        return Ok(false);
    }
    let minors = series_minors(m)?;
    for x in minors.iter().skip(1) {
        if !is_circuit_difference(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The same test, checking single-step series minors only. Sound because
/// circuit-difference matroids are closed under series minors, and much
/// cheaper on large inputs.
pub fn is_excluded_series_minor_one_step(m: &BinaryMatroid) -> Result<bool> {
    if is_circuit_difference(m)? {
        return Ok(false);
    }
    for (_, child) in one_step_series_minors(m) {
        if !is_circuit_difference(&child)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_family_rank(r: usize, low: usize, high: usize) -> Result<()> {
    if r < low {
        return Err(MatroidError::InvalidParameter(format!("rank {r} is below {low}")));
    }
    if r > high {
        return Err(MatroidError::CapExceeded { what: "geometry rank", dimension: r, cap: high });
    }
    Ok(())
}

/// The deleted set of a family member: indices into [`zoo::ag_points`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MFamilySpec {
    pub rank: usize,
    pub deleted: Vec<usize>,
}

/// `[AG(r-1,2) + e] \ X`, after checking that `AG(r-1,2) \ X` is
/// hyperplane-complementary of rank `r`.
pub fn m_family(r: usize, deleted: &[usize]) -> Result<BinaryMatroid> {
    if r < 3 {
        return Err(MatroidError::InvalidSpec(format!("rank {r} is below 3")));
    }
    let base = zoo::ag_plus_e(r)?;
    let points = 1usize << (r - 1);
    if let Some(&x) = deleted.iter().find(|&&x| x >= points) {
        return Err(if x == points {
            MatroidError::InvalidSpec("X contains the extension point".into())
        } else {
            MatroidError::NoSuchElement(x)
        });
    }
    let x = ElementSet::from_indices(base.len(), deleted.iter().copied());
    let affine = zoo::ag(r)?.delete(ElementSet::from_bits(points, x.bits()));
    if affine.rank() != r {
        return Err(MatroidError::InvalidSpec("deleting X lowers the rank".into()));
    }
    if !is_hyperplane_complementary(&affine)? {
        return Err(MatroidError::InvalidSpec("AG minus X is not hyperplane-complementary".into()));
    }
    Ok(base.delete(x))
}

/// One representative per isomorphism class of rank-`r` family members,
/// with a deleted set producing it (the first found in subset order).
pub fn enumerate_m_family(r: usize) -> Result<Vec<(MFamilySpec, BinaryMatroid)>> {
    check_family_rank(r, 3, MAX_FAMILY_RANK)?;
    let points = 1usize << (r - 1);
    let valid: Vec<u64> = (0..1u64 << points)
        .into_par_iter()
        .filter_map(|x| {
            let deleted: Vec<usize> = ElementSet::from_bits(points, x).iter().collect();
            m_family(r, &deleted).ok().map(|_| x)
        })
        .collect();
    let mut classes = IsoClassSet::new();
    let mut out = Vec::new();
    for x in valid {
        let deleted: Vec<usize> = ElementSet::from_bits(points, x).iter().collect();
        let m = m_family(r, &deleted)?;
        if classes.insert(m.clone())? {
            out.push((MFamilySpec { rank: r, deleted }, m));
        }
    }
    Ok(out)
}

fn family_cache(r: usize) -> Result<&'static [(MFamilySpec, BinaryMatroid)]> {
    static CACHE: [OnceLock<Vec<(MFamilySpec, BinaryMatroid)>>; MAX_FAMILY_RANK + 1] =
        [const { OnceLock::new() }; MAX_FAMILY_RANK + 1];
    check_family_rank(r, 3, MAX_FAMILY_RANK)?;
    if let Some(v) = CACHE[r].get() {
        return Ok(v);
    }
    let v = enumerate_m_family(r)?;
    Ok(CACHE[r].get_or_init(|| v))
}

/// Whether `n` is isomorphic to a family member. Ranks below 3 are never
/// members; ranks above [`MAX_FAMILY_RANK`] are a cap error.
pub fn in_m_family(n: &BinaryMatroid) -> Result<bool> {
    let r = n.rank();
    if r < 3 {
        return Ok(false);
    }
    for (_, member) in family_cache(r)? {
        if member.len() == n.len() && is_isomorphic(member, n)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The structural side of the excluded-series-minor characterization.
pub fn is_excluded_series_minor_structural(m: &BinaryMatroid) -> Result<bool> {
    in_m_family(&m.dual())
}

/// Subsets of the points of `AG(r-1,2)` (bitmasks over [`zoo::ag_points`])
/// whose restriction is isomorphic to `AG(k,2)`. `AG(-1,2)` is read as the
/// empty matroid, whose only copy is the empty set.
pub fn affine_copies(r: usize, k: isize) -> Result<Vec<u64>> {
    check_family_rank(r, 1, MAX_FAMILY_RANK)?;
    if k < 0 {
        return Ok(vec![0]);
    }
    let k = k as usize;
    if k + 1 > r {
        return Ok(Vec::new());
    }
    let host = zoo::ag(r)?;
    let target = zoo::ag(k + 1)?;
    let profile = IsoProfile::new(&target)?;
    let size = 1usize << k;
    let mut all = Vec::new();
    let points = host.len() as u64;
    let full = if points == 64 { u64::MAX } else { (1u64 << points) - 1 };
    let mut subsets: Vec<u64> = crate::matroid::subsets_of_size(full, size).collect();
    subsets.retain(|&s| host.rank_of(ElementSet::from_bits(host.len(), s)) == k + 1);
    for s in subsets {
        let restricted = host.restrict(ElementSet::from_bits(host.len(), s));
        if IsoProfile::new(&restricted)?.find_isomorphism(&profile).is_some() {
            all.push(s);
        }
    }
    Ok(all)
}

/// All simple rank-`r` hyperplane-complementary binary matroids up to
/// isomorphism, as `AG(r-1,2) \ X` with `X` rank-preserving and free of
/// copies of `AG(r-3,2)`.
pub fn hyperplane_complementary_catalog(r: usize) -> Result<Vec<BinaryMatroid>> {
    check_family_rank(r, 2, MAX_FAMILY_RANK)?;
    let ag = zoo::ag(r)?;
    let points = ag.len();
    // With r = 2 the forbidden geometry is empty and the condition is vacuous.
    let copies = if r == 2 { Vec::new() } else { affine_copies(r, r as isize - 3)? };
    let valid: Vec<u64> = (0..1u64 << points)
        .into_par_iter()
        .filter(|&x| copies.iter().all(|&c| c & !x != 0))
        .filter(|&x| ag.rank_of(ElementSet::from_bits(points, x).complement()) == r)
        .collect();
    let mut classes = IsoClassSet::new();
    for x in valid {
        classes.insert(ag.delete(ElementSet::from_bits(points, x)))?;
    }
    Ok(classes.into_classes())
}

/// The same catalog by brute force: every spanning subset of `PG(r-1,2)`
/// filtered by the definition.
pub fn hyperplane_complementary_brute_force(r: usize) -> Result<Vec<BinaryMatroid>> {
    check_family_rank(r, 1, MAX_BRUTE_FORCE_RANK)?;
    let pg = zoo::pg(r)?;
    let points = pg.len();
    let hits = (1..1u64 << points)
        .into_par_iter()
        .filter_map(|s| {
            let s = ElementSet::from_bits(points, s);
            if pg.rank_of(s) != r {
                return None;
            }
            let m = pg.restrict(s);
            match is_hyperplane_complementary(&m) {
                Ok(true) => Some(Ok(m)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut by_size: HashMap<usize, IsoClassSet> = HashMap::new();
    for m in hits {
        by_size.entry(m.len()).or_default().insert(m)?;
    }
    let mut out: Vec<BinaryMatroid> = by_size.into_values().flat_map(|c| c.into_classes()).collect();
    out.sort_by_key(|m| std::cmp::Reverse(m.len()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicates::skew_circuit_pair;
    use crate::zoo::*;

    fn iso(a: &BinaryMatroid, b: &BinaryMatroid) -> bool {
        is_isomorphic(a, b).unwrap().is_some()
    }

    #[test]
    fn n5_is_cosimple_so_only_deletions() {
        let m = n5();
        assert!(series_contractible(&m).is_empty());
        assert!(one_step_series_minors(&m).iter().all(|(mv, _)| matches!(mv, SeriesMove::Delete(_))));
    }

    #[test]
    fn series_minors_of_a_circuit() {
        let minors = series_minors(&circuit(6).unwrap()).unwrap();
        for k in 1..=6 {
            let c = circuit(k).unwrap();
            assert!(minors.iter().any(|m| iso(m, &c)), "missing U({},{k})", k - 1);
        }
    }

    #[test]
    fn k4_series_minors_are_circuit_difference() {
        for m in series_minors(&complete(4).unwrap()).unwrap() {
            assert!(is_circuit_difference(&m).unwrap());
        }
    }

    #[test]
    fn n5_search() {
        let m = n5();
        assert_eq!(find_n5_series_minor(&m).unwrap(), Some(vec![]));
        assert_eq!(find_n5_series_minor(&s8()).unwrap(), None);
        let p = prism();
        let script = find_n5_series_minor(&p).unwrap().expect("prism has skew triangles");
        assert!(iso(&apply_series_script(&p, &script).unwrap(), &n5()));
        assert!(skew_circuit_pair(&p).unwrap().is_some());
    }

    #[test]
    fn scripts_reject_non_series_contractions() {
        let k4 = complete(4).unwrap();
        assert!(matches!(
            apply_series_script(&k4, &[SeriesMove::Contract(0)]),
            Err(MatroidError::InvalidSpec(_))
        ));
    }

    #[test]
    fn family_rank_3_and_4() {
        let three = enumerate_m_family(3).unwrap();
        assert_eq!(three.len(), 1);
        assert!(iso(&three[0].1, &n5().dual()));
        let four = enumerate_m_family(4).unwrap();
        assert_eq!(four.len(), 2);
        let tipped = tipped_spike(4).unwrap();
        assert!(four.iter().any(|(_, m)| iso(m, &tipped)));
        assert!(four.iter().any(|(_, m)| iso(m, &s8())));
    }

    #[test]
    fn family_spec_validation() {
        assert!(m_family(4, &[]).is_ok());
        assert!(m_family(4, &[5]).is_ok());
        for a in 0..8 {
            for b in a + 1..8 {
                assert!(matches!(m_family(4, &[a, b]), Err(MatroidError::InvalidSpec(_))));
            }
        }
        assert!(matches!(m_family(4, &[8]), Err(MatroidError::InvalidSpec(_))));
        assert!(matches!(m_family(2, &[]), Err(MatroidError::InvalidSpec(_))));
    }

    #[test]
    fn excluded_series_minors() {
        assert!(is_excluded_series_minor(&n5()).unwrap());
        assert!(is_excluded_series_minor(&s8().dual()).unwrap());
        assert!(is_excluded_series_minor(&tipped_spike(4).unwrap().dual()).unwrap());
        assert!(!is_excluded_series_minor(&complete(4).unwrap()).unwrap());
        // S8 is self-dual, so it is one of them too.
        assert!(iso(&s8(), &s8().dual()));
        assert!(is_excluded_series_minor(&s8()).unwrap());
        assert!(!is_excluded_series_minor(&prism()).unwrap());
        assert!(!is_excluded_series_minor_structural(&prism()).unwrap());
        assert!(is_excluded_series_minor_structural(&n5()).unwrap());
        assert!(is_excluded_series_minor_structural(&s8().dual()).unwrap());
        assert!(!is_excluded_series_minor_structural(&complete(4).unwrap()).unwrap());
    }

    #[test]
    fn copies_are_affine_flats() {
        for r in 2..=5 {
            let pts = ag_points(r);
            for k in 0..r - 1 {
                let copies = affine_copies(r, k as isize).unwrap();
                // An affine k-flat is a coset of a k-dimensional subspace.
                let mut flats: Vec<u64> = (0..1u64 << pts.len())
                    .filter(|s| s.count_ones() as usize == 1 << k)
                    .filter(|&s| {
                        let members: Vec<u64> =
                            ElementSet::from_bits(pts.len(), s).iter().map(|i| pts[i]).collect();
                        let base = members[0];
                        let set: std::collections::HashSet<u64> = members.iter().map(|m| m ^ base).collect();
                        set.iter().all(|a| set.iter().all(|b| set.contains(&(a ^ b))))
                    })
                    .collect();
                flats.sort();
                let mut copies = copies;
                copies.sort();
                assert_eq!(copies, flats, "r={r} k={k}");
            }
        }
    }

    #[test]
    fn catalog_matches_brute_force() {
        for r in 2..=4 {
            let catalog = hyperplane_complementary_catalog(r).unwrap();
            let brute = hyperplane_complementary_brute_force(r).unwrap();
            assert_eq!(catalog.len(), brute.len(), "rank {r}");
            for m in &catalog {
                assert!(is_hyperplane_complementary(m).unwrap());
                assert!(brute.iter().any(|b| iso(b, m)));
            }
        }
        assert_eq!(hyperplane_complementary_catalog(3).unwrap().len(), 1);
        let four = hyperplane_complementary_catalog(4).unwrap();
        assert_eq!(four.iter().map(|m| m.len()).collect::<Vec<_>>(), vec![8, 7]);
    }
}
