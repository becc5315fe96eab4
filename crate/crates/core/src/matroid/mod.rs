//! Binary matroids given by a GF(2) representation.
//!
//! A [`BinaryMatroid`] keeps its representation in reduced row echelon form
//! with exactly `rank` rows, so the row space (and therefore the matroid)
//! is the only thing that matters. Circuits are the minimal non-empty
//! supports of the null space; cocircuits the minimal non-empty supports of
//! the row space. Both families are computed lazily and cached.

mod iso;
mod minors;

pub use iso::{is_isomorphic, verify_isomorphism, IsoClassSet, IsoProfile};
pub use minors::{find_minor, has_minor, MinorWitness};
pub(crate) use minors::subsets_of_size;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{MatroidError, Result};
use crate::gf2::{ElementSet, Gf2Matrix, GraySpan, MAX_ELEMENTS};

/// Largest cycle-space (or cocycle-space) dimension we are willing to walk.
pub const SPAN_CAP: usize = 28;

/// Largest number of flats [`BinaryMatroid::flats`] will materialize.
pub const FLAT_CAP: usize = 1 << 20;

/// Circuits (or cocircuits) of a matroid, sorted lexicographically.
#[derive(Clone, Debug)]
pub struct CircuitFamily {
    universe: usize,
    members: Vec<ElementSet>,
    lookup: HashSet<u64>,
}

impl CircuitFamily {
    pub fn new(universe: usize, mut members: Vec<ElementSet>) -> Self {
        members.sort();
        members.dedup();
        let lookup = members.iter().map(|c| c.bits()).collect();
        CircuitFamily { universe, members, lookup }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &ElementSet) -> bool {
        self.lookup.contains(&s.bits())
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ElementSet> {
        self.members.iter()
    }

    /// Number of members of each size, indexed by size.
    pub fn size_histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.universe + 1];
        for c in &self.members {
            h[c.len()] += 1;
        }
        h
    }
}

impl<'a> IntoIterator for &'a CircuitFamily {
    type Item = &'a ElementSet;
    type IntoIter = std::slice::Iter<'a, ElementSet>;
    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Partition of the ground set into series classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesClassPartition {
    pub classes: Vec<ElementSet>,
}

impl SeriesClassPartition {
    pub fn class_of(&self, e: usize) -> Option<&ElementSet> {
        self.classes.iter().find(|c| c.contains(e))
    }

    pub fn is_trivial(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }
}

/// Records which element survived for each series class in
/// [`BinaryMatroid::cosimplify`]. Indices in `classes` refer to the
/// original matroid; position `i` describes element `i` of the result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosimplifyWitness {
    pub survivors: Vec<usize>,
    pub classes: Vec<ElementSet>,
}

#[derive(Clone)]
pub struct BinaryMatroid {
    labels: Vec<String>,
    rep: Gf2Matrix,
    circuits: OnceLock<CircuitFamily>,
    cocircuits: OnceLock<CircuitFamily>,
}

impl fmt::Debug for BinaryMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BinaryMatroid")
            .field("labels", &self.labels)
            .field("rank", &self.rank())
            .field("rep", &self.rep)
            .finish()
    }
}

/// Minimal supports of the span of `basis` that pass `is_minimal`.
fn minimal_supports<F>(basis: &[u64], universe: usize, what: &'static str, is_minimal: F) -> Result<Vec<ElementSet>>
where
    F: Fn(u64) -> bool,
{
    if basis.len() > SPAN_CAP {
        return Err(MatroidError::CapExceeded { what, dimension: basis.len(), cap: SPAN_CAP });
    }
    Ok(GraySpan::new(basis)
        .filter(|&v| is_minimal(v))
        .map(|v| ElementSet::from_bits(universe, v))
        .collect())
}

/// Circuits of the matroid represented by `rep`: cycle-space vectors `D`
/// with nullity one, i.e. `rank(D) = |D| - 1`.
pub(crate) fn circuit_supports(rep: &Gf2Matrix) -> Result<Vec<ElementSet>> {
    let basis: Vec<u64> = rep.null_space_basis().iter().map(|s| s.bits()).collect();
    let n = rep.ncols();
    minimal_supports(&basis, n, "cycle space", |v| {
        rep.rank_of_columns(ElementSet::from_bits(n, v)) + 1 == v.count_ones() as usize
    })
}

/// Cocircuits of the matroid represented by `rep`: row-space vectors whose
/// complement has rank `r - 1`. `rep` must have independent rows.
pub(crate) fn cocircuit_supports(rep: &Gf2Matrix) -> Result<Vec<ElementSet>> {
    let n = rep.ncols();
    let r = rep.nrows();
    let full = ElementSet::full(n);
    minimal_supports(rep.rows(), n, "cocycle space", |v| {
        rep.rank_of_columns(full.difference(&ElementSet::from_bits(n, v))) + 1 == r
    })
}

/// Contracts every column in `contract` by pivoting, keeping column positions.
pub(crate) fn pivot_out(rows: &mut Vec<u64>, contract: ElementSet) {
    for e in contract.iter() {
        let bit = 1u64 << e;
        if let Some(p) = rows.iter().position(|r| r & bit != 0) {
            let pivot_row = rows.swap_remove(p);
            for r in rows.iter_mut() {
                if *r & bit != 0 {
                    *r ^= pivot_row;
                }
            }
        }
    }
}

/// Representation of `M / contract \ delete`, columns renumbered.
pub(crate) fn minor_matrix(rep: &Gf2Matrix, delete: ElementSet, contract: ElementSet) -> Gf2Matrix {
    let mut rows = rep.rows().to_vec();
    pivot_out(&mut rows, contract);
    let keep = ElementSet::full(rep.ncols()).difference(&delete.union(&contract));
    Gf2Matrix::from_rows(rows, rep.ncols()).select_columns(keep).normalized()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut y = x;
        while self.0[y] != root {
            let next = self.0[y];
            self.0[y] = root;
            y = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    fn classes(&mut self, universe: usize) -> Vec<ElementSet> {
        let n = self.0.len();
        let mut by_root: Vec<ElementSet> = vec![ElementSet::empty(universe); n];
        for i in 0..n {
            let r = self.find(i);
            by_root[r].insert(i);
        }
        by_root.into_iter().filter(|s| !s.is_empty()).collect()
    }
}

/// Connected components of the matroid represented by `rep`, read off the
/// bipartite fundamental graph of the standard form: basis element `p`
/// (row `i`) is adjacent to non-basis element `q` when entry `(i, q)` is one.
pub(crate) fn components_of(rep: &Gf2Matrix) -> Vec<ElementSet> {
    let rref = rep.rref();
    let n = rep.ncols();
    let mut uf = UnionFind::new(n);
    for (i, &p) in rref.pivots.iter().enumerate() {
        let row = rref.matrix.rows()[i];
        for q in ElementSet::from_bits(n, row).iter() {
            uf.union(p, q);
        }
    }
    let mut classes = uf.classes(n);
    classes.sort_by_key(|c| c.first());
    classes
}

/// Column `j` of the dual representation for every `j`, as words over the
/// null-space basis. Equal non-zero words mark series elements.
pub(crate) fn dual_columns(rep: &Gf2Matrix) -> Vec<u64> {
    let basis = rep.null_space_basis();
    (0..rep.ncols())
        .map(|j| {
            basis
                .iter()
                .enumerate()
                .fold(0u64, |acc, (t, v)| acc | (v.contains(j) as u64) << t)
        })
        .collect()
}

/// Groups elements by equal non-zero column words; zero columns are singletons.
pub(crate) fn group_equal_columns(columns: &[u64]) -> Vec<ElementSet> {
    let n = columns.len();
    let mut groups: Vec<ElementSet> = Vec::new();
    let mut by_word: HashMap<u64, usize> = HashMap::new();
    for (j, &c) in columns.iter().enumerate() {
        if c == 0 {
            groups.push(ElementSet::singleton(n, j));
            continue;
        }
        match by_word.get(&c) {
            Some(&g) => groups[g].insert(j),
            None => {
                by_word.insert(c, groups.len());
                groups.push(ElementSet::singleton(n, j));
            }
        }
    }
    groups.sort_by_key(|c| c.first());
    groups
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

impl BinaryMatroid {
    /// Builds the matroid on the columns of `rep`. Labels must be distinct
    /// and one per column.
    pub fn new(rep: Gf2Matrix, labels: Vec<String>) -> Result<Self> {
        if labels.len() != rep.ncols() {
            return Err(MatroidError::InvalidParameter(format!(
                "{} labels for {} columns",
                labels.len(),
                rep.ncols()
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(MatroidError::InvalidParameter(format!("duplicate label {dup:?}")));
        }
        Ok(Self::from_parts(rep.normalized(), labels))
    }

    /// Labels elements `1..=n`.
    pub fn from_matrix(rep: Gf2Matrix) -> Self {
        let n = rep.ncols();
        Self::from_parts(rep.normalized(), default_labels(n))
    }

    fn from_parts(rep: Gf2Matrix, labels: Vec<String>) -> Self {
        debug_assert_eq!(rep.nrows(), rep.rank());
        BinaryMatroid { labels, rep, circuits: OnceLock::new(), cocircuits: OnceLock::new() }
    }

    pub fn empty() -> Self {
        Self::from_parts(Gf2Matrix::zeros(0, 0), Vec::new())
    }

    pub fn len(&self) -> usize {
        self.rep.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rank(&self) -> usize {
        self.rep.nrows()
    }

    pub fn corank(&self) -> usize {
        self.len() - self.rank()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Representation in reduced row echelon form with `rank` rows.
    pub fn rep(&self) -> &Gf2Matrix {
        &self.rep
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn set<I: IntoIterator<Item = usize>>(&self, elements: I) -> ElementSet {
        ElementSet::from_indices(self.len(), elements)
    }

    /// Set from labels; panics on an unknown label.
    pub fn set_of_labels(&self, labels: &[&str]) -> ElementSet {
        self.set(labels.iter().map(|l| {
            self.index_of(l).unwrap_or_else(|| panic!("unknown label {l:?}"))
        }))
    }

    pub fn labels_of(&self, s: &ElementSet) -> Vec<String> {
        s.iter().map(|e| self.labels[e].clone()).collect()
    }

    pub fn rank_of(&self, s: ElementSet) -> usize {
        self.rep.rank_of_columns(s)
    }

    pub fn is_independent(&self, s: ElementSet) -> bool {
        self.rank_of(s) == s.len()
    }

    /// Circuit test that needs no enumeration: `s` must be a cycle of nullity one.
    pub fn is_circuit(&self, s: ElementSet) -> bool {
        !s.is_empty() && self.rep.columns_sum_to_zero(s) && self.rank_of(s) + 1 == s.len()
    }

    /// Cocircuit test: `s` non-empty and its complement a hyperplane.
    pub fn is_cocircuit(&self, s: ElementSet) -> bool {
        if s.is_empty() || self.rank() == 0 {
            return false;
        }
        let rest = s.complement();
        self.rank_of(rest) + 1 == self.rank() && self.closure(rest) == rest
    }

    pub fn closure(&self, s: ElementSet) -> ElementSet {
        let r = self.rank_of(s);
        let mut cl = s;
        for e in s.complement().iter() {
            let mut t = s;
            t.insert(e);
            if self.rank_of(t) == r {
                cl.insert(e);
            }
        }
        cl
    }

    pub fn circuits(&self) -> Result<&CircuitFamily> {
        if let Some(c) = self.circuits.get() {
            return Ok(c);
        }
        let members = circuit_supports(&self.rep)?;
        Ok(self.circuits.get_or_init(|| CircuitFamily::new(self.len(), members)))
    }

    pub fn cocircuits(&self) -> Result<&CircuitFamily> {
        if let Some(c) = self.cocircuits.get() {
            return Ok(c);
        }
        let members = cocircuit_supports(&self.rep)?;
        Ok(self.cocircuits.get_or_init(|| CircuitFamily::new(self.len(), members)))
    }

    /// The binary dual: its rows span the cycle space of `self`.
    pub fn dual(&self) -> BinaryMatroid {
        let rows = self.rep.null_space_basis().iter().map(|s| s.bits()).collect();
        let d = Self::from_parts(Gf2Matrix::from_rows(rows, self.len()).normalized(), self.labels.clone());
        if let Some(c) = self.cocircuits.get() {
            let _ = d.circuits.set(c.clone());
        }
        if let Some(c) = self.circuits.get() {
            let _ = d.cocircuits.set(c.clone());
        }
        d
    }

    /// `M / contract \ delete`. Contracting a loop deletes it.
    pub fn minor(&self, delete: ElementSet, contract: ElementSet) -> Result<BinaryMatroid> {
        if delete.intersects(&contract) {
            return Err(MatroidError::InvalidParameter(
                "delete and contract sets overlap".to_string(),
            ));
        }
        let keep = delete.union(&contract).complement();
        let rep = minor_matrix(&self.rep, delete, contract);
        Ok(Self::from_parts(rep, keep.iter().map(|e| self.labels[e].clone()).collect()))
    }

    pub fn delete(&self, s: ElementSet) -> BinaryMatroid {
        self.minor(s, ElementSet::empty(self.len())).expect("disjoint by construction")
    }

    pub fn contract(&self, s: ElementSet) -> BinaryMatroid {
        self.minor(ElementSet::empty(self.len()), s).expect("disjoint by construction")
    }

    pub fn restrict(&self, s: ElementSet) -> BinaryMatroid {
        self.delete(s.complement())
    }

    pub fn delete_element(&self, e: usize) -> BinaryMatroid {
        self.delete(ElementSet::singleton(self.len(), e))
    }

    pub fn contract_element(&self, e: usize) -> BinaryMatroid {
        self.contract(ElementSet::singleton(self.len(), e))
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rep.column_bits(e) == 0
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.rank_of(ElementSet::singleton(self.len(), e).complement()) < self.rank()
    }

    /// Components; loops and coloops are singleton components.
    pub fn components(&self) -> Vec<ElementSet> {
        components_of(&self.rep)
    }

    /// The empty matroid and every one-element matroid count as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Series classes of any matroid: `e ~ f` when `{e, f}` is a cocircuit.
    /// Coloops lie in no cocircuit of size two and stay singletons.
    pub fn series_partition(&self) -> SeriesClassPartition {
        SeriesClassPartition { classes: group_equal_columns(&dual_columns(&self.rep)) }
    }

    /// Series classes; defined here for connected matroids only.
    pub fn series_classes(&self) -> Result<SeriesClassPartition> {
        if !self.is_connected() {
            return Err(MatroidError::NotConnected);
        }
        Ok(self.series_partition())
    }

    /// Parallel classes: `e ~ f` when `{e, f}` is a circuit. Loops are singletons.
    pub fn parallel_classes(&self) -> Vec<ElementSet> {
        let cols: Vec<u64> = (0..self.len()).map(|j| self.rep.column_bits(j)).collect();
        group_equal_columns(&cols)
    }

    pub fn is_cosimple(&self) -> bool {
        (0..self.len()).all(|e| !self.is_coloop(e)) && self.series_partition().is_trivial()
    }

    pub fn is_simple(&self) -> bool {
        (0..self.len()).all(|e| !self.is_loop(e)) && self.parallel_classes().iter().all(|c| c.len() == 1)
    }

    /// Contracts all but the least element of every series class.
    pub fn cosimplify(&self) -> Result<(BinaryMatroid, CosimplifyWitness)> {
        let classes = self.series_classes()?.classes;
        let mut contract = ElementSet::empty(self.len());
        for c in &classes {
            let keep = c.first().expect("classes are non-empty");
            contract = contract.union(&c.difference(&ElementSet::singleton(self.len(), keep)));
        }
        let reduced = self.contract(contract);
        let survivors: Vec<usize> = contract.complement().iter().collect();
        let ordered = survivors
            .iter()
            .map(|&s| *classes.iter().find(|c| c.contains(s)).expect("every element has a class"))
            .collect();
        Ok((reduced, CosimplifyWitness { survivors, classes: ordered }))
    }

    /// Adds one element in series with `element` per new label. Each new
    /// element `x` gets a fresh row supported on `{element, x}`, so
    /// contracting `x` returns the previous matroid.
    pub fn series_extend(&self, element: usize, new_labels: &[String]) -> Result<BinaryMatroid> {
        if element >= self.len() {
            return Err(MatroidError::NoSuchElement(element));
        }
        if self.len() + new_labels.len() > MAX_ELEMENTS {
            return Err(MatroidError::InvalidParameter(format!(
                "series extension would exceed {MAX_ELEMENTS} elements"
            )));
        }
        let mut rep = self.rep.clone();
        let mut labels = self.labels.clone();
        for l in new_labels {
            if labels.contains(l) {
                return Err(MatroidError::InvalidParameter(format!("duplicate label {l:?}")));
            }
            let j = rep.ncols();
            rep = rep.with_column(0).with_row(1 << element | 1 << j);
            labels.push(l.clone());
        }
        Ok(Self::from_parts(rep.normalized(), labels))
    }

    /// All flats, found by closing `F ∪ {e}` from the closure of the empty set.
    pub fn flats(&self) -> Result<Vec<ElementSet>> {
        let start = self.closure(ElementSet::empty(self.len()));
        let mut seen: HashSet<u64> = HashSet::from([start.bits()]);
        let mut out = vec![start];
        let mut i = 0;
        while i < out.len() {
            let f = out[i];
            i += 1;
            for e in f.complement().iter() {
                let mut t = f;
                t.insert(e);
                let g = self.closure(t);
                if seen.insert(g.bits()) {
                    out.push(g);
                    if out.len() > FLAT_CAP {
                        return Err(MatroidError::CapExceeded {
                            what: "flat",
                            dimension: out.len(),
                            cap: FLAT_CAP,
                        });
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Direct sum; labels of `other` must not clash with ours.
    pub fn direct_sum(&self, other: &BinaryMatroid) -> Result<BinaryMatroid> {
        let n1 = self.len();
        let n = n1 + other.len();
        if n > MAX_ELEMENTS {
            return Err(MatroidError::InvalidParameter(format!("direct sum exceeds {MAX_ELEMENTS} elements")));
        }
        let mut rows: Vec<u64> = self.rep.rows().to_vec();
        rows.extend(other.rep.rows().iter().map(|r| r << n1));
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        Self::new(Gf2Matrix::from_rows(rows, n), labels)
    }

    /// Same matroid with elements relabelled.
    pub fn relabel(&self, labels: Vec<String>) -> Result<BinaryMatroid> {
        Self::new(self.rep.clone(), labels)
    }

    /// Same matroid with columns reordered: new element `k` is old `order[k]`.
    pub fn permute(&self, order: &[usize]) -> BinaryMatroid {
        let labels = order.iter().map(|&i| self.labels[i].clone()).collect();
        Self::from_parts(self.rep.permute_columns(order).normalized(), labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s8() -> BinaryMatroid {
        BinaryMatroid::from_matrix(Gf2Matrix::from_strs(&[
            "10001110", "01001111", "00100011", "00011001",
        ]))
    }

    fn k4() -> BinaryMatroid {
        // edges 12 13 14 23 24 34 ; vertex rows 1..4
        BinaryMatroid::from_matrix(Gf2Matrix::from_strs(&[
            "111000", "100110", "010101", "001011",
        ]))
    }

    /// Every subset that is dependent with all one-smaller subsets independent.
    fn brute_force_circuits(m: &BinaryMatroid) -> Vec<ElementSet> {
        let n = m.len();
        let mut out = Vec::new();
        for bits in 1u64..(1 << n) {
            let s = ElementSet::from_bits(n, bits);
            if m.is_independent(s) {
                continue;
            }
            if s.iter().all(|e| {
                let mut t = s;
                t.remove(e);
                m.is_independent(t)
            }) {
                out.push(s);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn s8_contains_the_named_circuits() {
        let m = s8();
        let c = m.circuits().unwrap();
        for labels in [&["1", "4", "7", "8"][..], &["2", "3", "5", "6", "8"], &["1", "2", "6"], &["3", "4", "5", "7"]] {
            assert!(c.contains(&m.set_of_labels(labels)), "{labels:?}");
        }
        assert_eq!(c.members(), brute_force_circuits(&m).as_slice());
    }

    #[test]
    fn free_matroid_has_no_circuits() {
        let m = BinaryMatroid::from_matrix(Gf2Matrix::identity(5));
        assert!(m.circuits().unwrap().is_empty());
    }

    #[test]
    fn tipless_four_spike_circuits_match_brute_force() {
        let m = BinaryMatroid::from_matrix(Gf2Matrix::from_strs(&[
            "10000111", "01001011", "00101101", "00011110",
        ]));
        let got = m.circuits().unwrap().members().to_vec();
        assert_eq!(got, brute_force_circuits(&m));
        // frozen from the brute-force oracle above
        assert_eq!(got.len(), 14);
        assert_eq!(m.circuits().unwrap().size_histogram()[4], 14);
    }

    #[test]
    fn cocircuits_of_small_matroids() {
        let u14 = BinaryMatroid::from_matrix(Gf2Matrix::from_strs(&["1111"]));
        assert_eq!(u14.cocircuits().unwrap().members(), &[ElementSet::full(4)]);
        let triangle = BinaryMatroid::from_matrix(Gf2Matrix::from_strs(&["101", "011"]));
        let co = triangle.cocircuits().unwrap();
        assert_eq!(co.len(), 3);
        assert!(co.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn dual_circuits_are_cocircuits() {
        for m in [s8(), k4()] {
            let d = BinaryMatroid::from_matrix(m.dual().rep().clone());
            assert_eq!(d.circuits().unwrap().members(), m.cocircuits().unwrap().members());
            assert_eq!(d.rank(), m.corank());
        }
    }

    #[test]
    fn dual_of_u14_is_u34() {
        let u14 = BinaryMatroid::from_matrix(Gf2Matrix::from_strs(&["1111"]));
        let d = u14.dual();
        assert_eq!(d.rank(), 3);
        assert_eq!(d.circuits().unwrap().members(), &[ElementSet::full(4)]);
    }

    #[test]
    fn contracting_an_edge_of_k4() {
        let m = k4();
        for e in 0..6 {
            let c = m.contract_element(e);
            assert_eq!(c.len(), 5);
            assert_eq!(c.rank(), 2);
        }
    }

    #[test]
    fn contraction_circuits_are_minimal_shrunk_circuits() {
        let m = s8();
        for e in 0..8 {
            let c = m.contract_element(e);
            let mut expected: Vec<ElementSet> = Vec::new();
            let shrunk: Vec<u64> = m
                .circuits()
                .unwrap()
                .iter()
                .map(|c| c.bits() & !(1 << e))
                .collect();
            for &s in &shrunk {
                if s != 0 && !shrunk.iter().any(|&t| t != 0 && t != s && t & !s == 0) {
                    let keep = ElementSet::singleton(8, e).complement().bits();
                    expected.push(ElementSet::from_bits(7, crate::gf2::compress_bits(s, keep)));
                }
            }
            expected.sort();
            expected.dedup();
            assert_eq!(c.circuits().unwrap().members(), expected.as_slice(), "contract {e}");
        }
    }

    #[test]
    fn s8_minus_8() {
        let m = s8().delete_element(7);
        let got: Vec<Vec<String>> = m.circuits().unwrap().iter().map(|c| m.labels_of(c)).collect();
        // brute-force oracle, frozen
        assert_eq!(m.circuits().unwrap().members(), brute_force_circuits(&m).as_slice());
        let expected: Vec<Vec<String>> = [
            &["1", "2", "3", "7"][..],
            &["1", "2", "4", "5"],
            &["1", "2", "6"],
            &["3", "4", "5", "7"],
            &["3", "6", "7"],
            &["4", "5", "6"],
        ]
        .iter()
        .map(|c| c.iter().map(|s| s.to_string()).collect())
        .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn loop_contraction_is_deletion() {
        let m = BinaryMatroid::from_matrix(Gf2Matrix::from_strs(&["110", "000"]).with_column(0));
        assert!(m.is_loop(3));
        let a = m.contract_element(3);
        let b = m.delete_element(3);
        assert_eq!(a.rep(), b.rep());
    }

    #[test]
    fn overlapping_minor_sets_are_rejected() {
        let m = k4();
        let s = m.set([0]);
        assert!(m.minor(s, s).is_err());
    }

    #[test]
    fn connectivity() {
        assert!(s8().is_connected());
        assert!(k4().is_connected());
        let tri = BinaryMatroid::from_matrix(Gf2Matrix::from_strs(&["101", "011"]));
        let bowtie = tri.direct_sum(&tri.relabel(vec!["a".into(), "b".into(), "c".into()]).unwrap()).unwrap();
        assert_eq!(bowtie.components().len(), 2);
        let single = BinaryMatroid::from_matrix(Gf2Matrix::identity(1));
        assert!(single.is_connected());
        assert!(BinaryMatroid::empty().is_connected());
        let free = BinaryMatroid::from_matrix(Gf2Matrix::identity(3));
        assert_eq!(free.components().len(), 3);
    }

    #[test]
    fn components_agree_with_circuit_union_find() {
        for m in [s8(), k4(), s8().delete_element(7), k4().contract_element(0).delete_element(0)] {
            let n = m.len();
            let mut uf = UnionFind::new(n);
            for c in m.circuits().unwrap() {
                let first = c.first().unwrap();
                for e in c.iter() {
                    uf.union(first, e);
                }
            }
            let mut expected = uf.classes(n);
            expected.sort_by_key(|c| c.first());
            assert_eq!(m.components(), expected);
        }
    }

    #[test]
    fn series_classes_of_a_circuit() {
        let circuit = BinaryMatroid::from_matrix(Gf2Matrix::from_strs(&["1001", "0101", "0011"]));
        let classes = circuit.series_classes().unwrap();
        assert_eq!(classes.classes, vec![ElementSet::full(4)]);
        let (reduced, witness) = circuit.cosimplify().unwrap();
        assert_eq!(reduced.len(), 1);
        assert_eq!(reduced.rank(), 0);
        assert_eq!(witness.survivors, vec![0]);
    }

    #[test]
    fn s8_is_cosimple() {
        assert!(s8().series_classes().unwrap().is_trivial());
    }

    #[test]
    fn series_classes_need_connectivity() {
        let free = BinaryMatroid::from_matrix(Gf2Matrix::identity(2));
        assert_eq!(free.series_classes(), Err(MatroidError::NotConnected));
    }

    #[test]
    fn series_classes_match_two_element_cocircuits() {
        let m = k4().series_extend(0, &["x".into(), "y".into()]).unwrap();
        let co = m.cocircuits().unwrap();
        for e in 0..m.len() {
            for f in 0..m.len() {
                let same = m.series_partition().class_of(e) == m.series_partition().class_of(f);
                let pair = e == f || co.contains(&m.set([e, f]));
                assert_eq!(same, pair, "{e} {f}");
            }
        }
    }

    #[test]
    fn series_extension_round_trip() {
        let u12 = BinaryMatroid::from_matrix(Gf2Matrix::from_strs(&["11"]));
        let ext = u12.series_extend(0, &["x".into()]).unwrap();
        assert_eq!(ext.rank(), 2);
        assert_eq!(ext.circuits().unwrap().members(), &[ElementSet::full(3)]);
        let back = ext.contract_element(2);
        assert_eq!(back.rep(), u12.rep());
        assert_eq!(back.labels(), u12.labels());
        assert!(ext.cocircuits().unwrap().contains(&ext.set([0, 2])));
    }

    #[test]
    fn flats_of_triangle() {
        let tri = BinaryMatroid::from_matrix(Gf2Matrix::from_strs(&["101", "011"]));
        let flats = tri.flats().unwrap();
        // empty, three points, whole set
        assert_eq!(flats.len(), 5);
    }

    #[test]
    fn cocircuit_test_matches_enumeration() {
        let m = s8();
        let co = m.cocircuits().unwrap();
        for bits in 1u64..256 {
            let s = ElementSet::from_bits(8, bits);
            assert_eq!(m.is_cocircuit(s), co.contains(&s), "{s:?}");
            assert_eq!(m.is_circuit(s), m.circuits().unwrap().contains(&s), "{s:?}");
        }
    }
}
