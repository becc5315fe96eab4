//! Isomorphism of binary matroids.
//!
//! Binary matroids are uniquely representable, so once a basis `B1` of the
//! first matroid is mapped onto a basis `B2` of the second, the rest of the
//! bijection is forced up to parallel copies: element `e` must go to an
//! element whose coordinates with respect to `B2` equal the coordinates of
//! `e` with respect to `B1`. The search therefore backtracks over basis
//! images only, pruned by per-element and per-pair cocircuit incidence
//! counts. It works on whichever of the matroid and its dual has the
//! smaller rank.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use super::{circuit_supports, cocircuit_supports, BinaryMatroid};
use crate::error::Result;
use crate::gf2::{invert_square, rank_of_words, ElementSet, Gf2Matrix};

/// Above this cycle-space dimension the circuit histogram is left out of
/// the element invariants.
const CIRCUIT_INVARIANT_DIM: usize = 12;

/// Precomputed invariants of one matroid, reusable across many comparisons.
#[derive(Clone, Debug)]
pub struct IsoProfile {
    n: usize,
    rank: usize,
    /// Columns of the working representation (matroid or dual, lower rank).
    columns: Vec<u64>,
    work_rank: usize,
    /// Canonical invariant class id of each element.
    class: Vec<u32>,
    /// `pair[e * n + f]`: number of working cocircuits containing both.
    pair: Vec<u16>,
    signature: u64,
}

impl IsoProfile {
    pub fn new(m: &BinaryMatroid) -> Result<Self> {
        Self::from_matrix(m.rep())
    }

    /// `rep` may have dependent rows.
    pub fn from_matrix(rep: &Gf2Matrix) -> Result<Self> {
        let rep = rep.normalized();
        let n = rep.ncols();
        let rank = rep.nrows();
        let work = if rank * 2 > n {
            let rows = rep.null_space_basis().iter().map(|s| s.bits()).collect();
            Gf2Matrix::from_rows(rows, n).normalized()
        } else {
            rep
        };
        let work_rank = work.nrows();
        let columns: Vec<u64> = (0..n).map(|j| work.column_bits(j)).collect();

        let cocircuits = cocircuit_supports(&work)?;
        let circuits = if n - work_rank <= CIRCUIT_INVARIANT_DIM {
            Some(circuit_supports(&work)?)
        } else {
            None
        };

        let mut pair = vec![0u16; n * n];
        let mut co_hist = vec![vec![0u32; n + 1]; n];
        for c in &cocircuits {
            let size = c.len();
            for e in c.iter() {
                co_hist[e][size] += 1;
                for f in c.iter() {
                    pair[e * n + f] = pair[e * n + f].saturating_add(1);
                }
            }
        }
        let mut ci_hist = vec![vec![0u32; n + 1]; n];
        if let Some(circuits) = &circuits {
            for c in circuits {
                let size = c.len();
                for e in c.iter() {
                    ci_hist[e][size] += 1;
                }
            }
        }

        // Per-element key, refined once by the multiset of pair counts.
        let base_keys: Vec<(Vec<u32>, Vec<u32>)> =
            (0..n).map(|e| (co_hist[e].clone(), ci_hist[e].clone())).collect();
        let base_class = canonical_ids(&base_keys);
        let refined_keys: Vec<(u32, Vec<(u32, u16)>)> = (0..n)
            .map(|e| {
                let mut row: Vec<(u32, u16)> =
                    (0..n).filter(|&f| f != e).map(|f| (base_class[f], pair[e * n + f])).collect();
                row.sort_unstable();
                (base_class[e], row)
            })
            .collect();
        let mut sorted_keys = refined_keys.clone();
        sorted_keys.sort();
        let class = canonical_ids(&refined_keys);

        let mut h = DefaultHasher::new();
        (n, rank).hash(&mut h);
        sorted_keys.hash(&mut h);
        let signature = h.finish();

        Ok(IsoProfile { n, rank, columns, work_rank, class, pair, signature })
    }

    /// Hash of isomorphism invariants: equal for isomorphic matroids.
    pub fn signature(&self) -> u64 {
        self.signature
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Finds a bijection `phi` (element `e` of `self` goes to `phi[e]` of
    /// `other`) mapping circuits onto circuits, if one exists.
    pub fn find_isomorphism(&self, other: &IsoProfile) -> Option<Vec<usize>> {
        if self.n != other.n || self.rank != other.rank || self.signature != other.signature {
            return None;
        }
        let mut mine: Vec<u32> = self.class.clone();
        let mut theirs: Vec<u32> = other.class.clone();
        mine.sort_unstable();
        theirs.sort_unstable();
        if mine != theirs {
            return None;
        }

        let basis = self.basis_order();
        let mut search = Search {
            a: self,
            b: other,
            basis: &basis,
            image: Vec::with_capacity(basis.len()),
            used: vec![false; self.n],
        };
        search.run()
    }

    /// A basis of the working representation, rarest classes first.
    fn basis_order(&self) -> Vec<usize> {
        let mut freq: HashMap<u32, usize> = HashMap::new();
        for &c in &self.class {
            *freq.entry(c).or_default() += 1;
        }
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&e| (freq[&self.class[e]], self.class[e], e));
        let mut chosen = Vec::new();
        let mut words = Vec::new();
        for e in order {
            if chosen.len() == self.work_rank {
                break;
            }
            words.push(self.columns[e]);
            if rank_of_words(words.iter().copied()) == words.len() {
                chosen.push(e);
            } else {
                words.pop();
            }
        }
        debug_assert_eq!(chosen.len(), self.work_rank);
        chosen
    }

    /// Coordinates of every element with respect to the ordered basis `basis`.
    fn coordinates(&self, basis: &[usize]) -> Option<Vec<u64>> {
        let k = basis.len();
        // Row t of the basis matrix has bit i = bit t of the i-th basis column.
        let rows: Vec<u64> = (0..k)
            .map(|t| {
                basis
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (i, &b)| acc | ((self.columns[b] >> t) & 1) << i)
            })
            .collect();
        let inv = invert_square(&rows)?;
        Some(
            self.columns
                .iter()
                .map(|&col| {
                    inv.iter()
                        .enumerate()
                        .fold(0u64, |acc, (i, &row)| acc | (((row & col).count_ones() & 1) as u64) << i)
                })
                .collect(),
        )
    }
}

fn canonical_ids<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut distinct: Vec<K> = keys.to_vec();
    distinct.sort();
    distinct.dedup();
    keys.iter()
        .map(|k| distinct.binary_search(k).expect("key present") as u32)
        .collect()
}

struct Search<'a> {
    a: &'a IsoProfile,
    b: &'a IsoProfile,
    basis: &'a [usize],
    image: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self) -> Option<Vec<usize>> {
        let depth = self.image.len();
        if depth == self.basis.len() {
            return self.complete();
        }
        let e = self.basis[depth];
        let n = self.a.n;
        for c in 0..n {
            if self.used[c] || self.b.class[c] != self.a.class[e] {
                continue;
            }
            let consistent = self.basis[..depth].iter().zip(&self.image).all(|(&prev_a, &prev_b)| {
                self.a.pair[e * n + prev_a] == self.b.pair[c * n + prev_b]
            }) && self.a.pair[e * n + e] == self.b.pair[c * n + c];
            if !consistent {
                continue;
            }
            let words = self.image.iter().map(|&x| self.b.columns[x]).chain([self.b.columns[c]]);
            if rank_of_words(words) != depth + 1 {
                continue;
            }
            self.image.push(c);
            self.used[c] = true;
            if let Some(found) = self.run() {
                return Some(found);
            }
            self.used[c] = false;
            self.image.pop();
        }
        None
    }

    fn complete(&self) -> Option<Vec<usize>> {
        let coords_a = self.a.coordinates(self.basis)?;
        let coords_b = self.b.coordinates(&self.image)?;
        let mut pool: HashMap<u64, Vec<usize>> = HashMap::new();
        for (f, &c) in coords_b.iter().enumerate().rev() {
            pool.entry(c).or_default().push(f);
        }
        let mut phi = vec![usize::MAX; self.a.n];
        for (&e, &img) in self.basis.iter().zip(&self.image) {
            phi[e] = img;
            let bucket = pool.get_mut(&coords_b[img])?;
            let pos = bucket.iter().position(|&x| x == img)?;
            bucket.swap_remove(pos);
        }
        for e in 0..self.a.n {
            if phi[e] != usize::MAX {
                continue;
            }
            phi[e] = pool.get_mut(&coords_a[e])?.pop()?;
        }
        Some(phi)
    }
}

/// Returns a witness bijection when `m1` and `m2` are isomorphic.
pub fn is_isomorphic(m1: &BinaryMatroid, m2: &BinaryMatroid) -> Result<Option<Vec<usize>>> {
    if m1.len() != m2.len() || m1.rank() != m2.rank() {
        return Ok(None);
    }
    Ok(IsoProfile::new(m1)?.find_isomorphism(&IsoProfile::new(m2)?))
}

/// A set of matroids kept up to isomorphism.
#[derive(Default)]
pub struct IsoClassSet {
    classes: Vec<BinaryMatroid>,
    profiles: Vec<IsoProfile>,
    buckets: HashMap<u64, Vec<usize>>,
}

impl IsoClassSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Index of the stored class isomorphic to `profile`, if any.
    pub fn find(&self, profile: &IsoProfile) -> Option<usize> {
        self.buckets
            .get(&profile.signature())?
            .iter()
            .copied()
            .find(|&i| self.profiles[i].find_isomorphism(profile).is_some())
    }

    /// Inserts `m` unless an isomorphic copy is stored. Returns `true` if new.
    pub fn insert(&mut self, m: BinaryMatroid) -> Result<bool> {
        let profile = IsoProfile::new(&m)?;
        Ok(self.insert_with_profile(m, profile))
    }

    pub fn insert_with_profile(&mut self, m: BinaryMatroid, profile: IsoProfile) -> bool {
        if self.find(&profile).is_some() {
            return false;
        }
        let idx = self.classes.len();
        self.buckets.entry(profile.signature()).or_default().push(idx);
        self.classes.push(m);
        self.profiles.push(profile);
        true
    }

    pub fn contains(&self, m: &BinaryMatroid) -> Result<bool> {
        Ok(self.find(&IsoProfile::new(m)?).is_some())
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[BinaryMatroid] {
        &self.classes
    }

    pub fn into_classes(self) -> Vec<BinaryMatroid> {
        self.classes
    }
}

/// True when `phi` maps the circuits of `m1` onto the circuits of `m2`.
pub fn verify_isomorphism(m1: &BinaryMatroid, m2: &BinaryMatroid, phi: &[usize]) -> Result<bool> {
    let c1 = m1.circuits()?;
    let c2 = m2.circuits()?;
    if c1.len() != c2.len() || phi.len() != m1.len() {
        return Ok(false);
    }
    Ok(c1
        .iter()
        .all(|c| c2.contains(&ElementSet::from_indices(m2.len(), c.iter().map(|e| phi[e])))))
}
