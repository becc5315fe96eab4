//! Bit-level linear algebra over GF(2).
//!
//! Every matrix here has at most 64 columns, so a row is a single `u64`
//! and a subset of the columns is an [`ElementSet`]. Rank, span and
//! null-space computations all reduce to XOR on machine words.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Sub};

/// Largest ground set an [`ElementSet`] can describe.
pub const MAX_ELEMENTS: usize = 64;

#[inline]
fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of a ground set `{0, .., universe - 1}` packed into one word.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: u64,
    universe: u8,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        assert!(universe <= MAX_ELEMENTS, "ground set larger than {MAX_ELEMENTS}");
        ElementSet { bits: 0, universe: universe as u8 }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        s.bits = low_mask(universe);
        s
    }

    /// Builds a set from raw bits; bits beyond the universe are rejected.
    pub fn from_bits(universe: usize, bits: u64) -> Self {
        assert!(universe <= MAX_ELEMENTS, "ground set larger than {MAX_ELEMENTS}");
        assert_eq!(bits & !low_mask(universe), 0, "bit set outside the universe");
        ElementSet { bits, universe: universe as u8 }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut s = Self::empty(universe);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn singleton(universe: usize, i: usize) -> Self {
        Self::from_indices(universe, [i])
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe as usize
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.universe() && self.bits >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe(), "element {i} outside universe of size {}", self.universe);
        self.bits |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        if i < 64 {
            self.bits &= !(1 << i);
        }
    }

    #[inline]
    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        ElementSet { bits: self.bits | other.bits, universe: self.universe }
    }

    #[inline]
    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        ElementSet { bits: self.bits & other.bits, universe: self.universe }
    }

    #[inline]
    pub fn sym_diff(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        ElementSet { bits: self.bits ^ other.bits, universe: self.universe }
    }

    #[inline]
    pub fn difference(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        ElementSet { bits: self.bits & !other.bits, universe: self.universe }
    }

    #[inline]
    pub fn complement(&self) -> Self {
        ElementSet { bits: !self.bits & low_mask(self.universe()), universe: self.universe }
    }

    #[inline]
    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn intersects(&self, other: &Self) -> bool {
        self.bits & other.bits != 0
    }

    pub fn first(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Indices {
        Indices(self.bits)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Iterator over the members of an [`ElementSet`] in increasing order.
#[derive(Clone)]
pub struct Indices(u64);

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Indices {}

/// Lexicographic order on the increasing index sequences.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.bits ^ other.bits;
        if d == 0 {
            return self.universe.cmp(&other.universe);
        }
        let low = d.trailing_zeros();
        let above = if low >= 63 { 0 } else { u64::MAX << (low + 1) };
        if self.bits >> low & 1 == 1 {
            // `other` either continues with a larger element or stops here.
            if other.bits & above != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if self.bits & above != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl BitXor for ElementSet {
    type Output = ElementSet;
    fn bitxor(self, rhs: Self) -> Self {
        self.sym_diff(&rhs)
    }
}

impl BitAnd for ElementSet {
    type Output = ElementSet;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(&rhs)
    }
}

impl BitOr for ElementSet {
    type Output = ElementSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(&rhs)
    }
}

impl Sub for ElementSet {
    type Output = ElementSet;
    fn sub(self, rhs: Self) -> Self {
        self.difference(&rhs)
    }
}

/// A vector of length at most 64 over GF(2).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Gf2Vector {
    bits: u64,
    len: u8,
}

impl Gf2Vector {
    pub fn zero(len: usize) -> Self {
        assert!(len <= 64);
        Gf2Vector { bits: 0, len: len as u8 }
    }

    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(len <= 64);
        assert_eq!(bits & !low_mask(len), 0);
        Gf2Vector { bits, len: len as u8 }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }
}

impl std::ops::Add for Gf2Vector {
    type Output = Gf2Vector;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.len, rhs.len);
        Gf2Vector { bits: self.bits ^ rhs.bits, len: self.len }
    }
}

/// An `r x n` matrix over GF(2) with `n <= 64`; row `i` is a word whose
/// bit `j` is the entry in column `j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: Vec<u64>,
    ncols: usize,
}

/// Result of [`Gf2Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Gf2Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Gf2Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        assert!(ncols <= MAX_ELEMENTS, "at most {MAX_ELEMENTS} columns supported");
        Gf2Matrix { rows: vec![0; nrows], ncols }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i] = 1 << i;
        }
        m
    }

    pub fn from_rows(rows: Vec<u64>, ncols: usize) -> Self {
        assert!(ncols <= MAX_ELEMENTS, "at most {MAX_ELEMENTS} columns supported");
        let mask = low_mask(ncols);
        assert!(rows.iter().all(|r| r & !mask == 0), "row has bits beyond column count");
        Gf2Matrix { rows, ncols }
    }

    /// Parses rows written as strings of `0`/`1`, leftmost character = column 0.
    /// Panics on malformed input; meant for literals.
    pub fn from_strs(rows: &[&str]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let parsed = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "ragged matrix literal");
                r.bytes().enumerate().fold(0u64, |acc, (j, b)| match b {
                    b'1' => acc | 1 << j,
                    b'0' => acc,
                    _ => panic!("matrix literal must be 0/1"),
                })
            })
            .collect();
        Self::from_rows(parsed, ncols)
    }

    /// Builds the matrix whose columns are the given words (bit `i` = row `i`).
    pub fn from_columns(nrows: usize, columns: &[u64]) -> Self {
        let mut m = Self::zeros(nrows, columns.len());
        for (j, &c) in columns.iter().enumerate() {
            for i in 0..nrows {
                if c >> i & 1 == 1 {
                    m.rows[i] |= 1 << j;
                }
            }
        }
        m
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> Gf2Vector {
        Gf2Vector::from_bits(self.ncols, self.rows[i])
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(j < self.ncols);
        if value {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    /// Column `j` packed as a word (bit `i` = row `i`). Requires at most 64 rows.
    pub fn column_bits(&self, j: usize) -> u64 {
        assert!(self.nrows() <= 64, "column words need at most 64 rows");
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | ((r >> j) & 1) << i)
    }

    pub fn column(&self, j: usize) -> Gf2Vector {
        Gf2Vector::from_bits(self.nrows(), self.column_bits(j))
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.ncols)
    }

    /// Reduced row echelon form; zero rows are moved to the bottom.
    pub fn rref(&self) -> Rref {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.ncols {
            let bit = 1u64 << col;
            let Some(p) = (rank..rows.len()).find(|&i| rows[i] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank];
            for (i, r) in rows.iter_mut().enumerate() {
                if i != rank && *r & bit != 0 {
                    *r ^= pivot_row;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        Rref { matrix: Gf2Matrix { rows, ncols: self.ncols }, rank, pivots }
    }

    pub fn rank(&self) -> usize {
        rank_of_words(self.rows.iter().copied())
    }

    /// GF(2) rank of the columns indexed by `s`.
    pub fn rank_of_columns(&self, s: ElementSet) -> usize {
        debug_assert!(s.universe() == self.ncols);
        let mask = s.bits();
        rank_of_words(self.rows.iter().map(|r| r & mask))
    }

    /// True when the columns indexed by `s` sum to zero.
    pub fn columns_sum_to_zero(&self, s: ElementSet) -> bool {
        let mask = s.bits();
        self.rows.iter().all(|r| (r & mask).count_ones().is_multiple_of(2))
    }

    /// A basis of the null space, as supports of the dependency vectors.
    /// One vector per non-pivot column `f`: `f` together with the pivot
    /// columns whose row has a one in column `f`.
    pub fn null_space_basis(&self) -> Vec<ElementSet> {
        let Rref { matrix, rank, pivots } = self.rref();
        let pivot_set = pivots.iter().fold(0u64, |acc, &p| acc | 1 << p);
        (0..self.ncols)
            .filter(|&f| pivot_set >> f & 1 == 0)
            .map(|f| {
                let mut bits = 1u64 << f;
                for (i, &p) in pivots.iter().enumerate().take(rank) {
                    if matrix.rows[i] >> f & 1 == 1 {
                        bits |= 1 << p;
                    }
                }
                ElementSet::from_bits(self.ncols, bits)
            })
            .collect()
    }

    /// Keeps only the columns in `keep`, renumbered in increasing order.
    pub fn select_columns(&self, keep: ElementSet) -> Gf2Matrix {
        let mask = keep.bits();
        Gf2Matrix {
            rows: self.rows.iter().map(|&r| compress_bits(r, mask)).collect(),
            ncols: keep.len(),
        }
    }

    /// Contracts column `j`: pivots on it (if non-zero), drops the pivot
    /// row, then removes the column. A zero column is simply removed.
    pub fn contract_column(&self, j: usize) -> Gf2Matrix {
        let bit = 1u64 << j;
        let mut rows = self.rows.clone();
        if let Some(p) = rows.iter().position(|r| r & bit != 0) {
            let pivot_row = rows.swap_remove(p);
            for r in rows.iter_mut() {
                if *r & bit != 0 {
                    *r ^= pivot_row;
                }
            }
        }
        let keep = ElementSet::full(self.ncols).difference(&ElementSet::singleton(self.ncols, j));
        Gf2Matrix { rows, ncols: self.ncols }.select_columns(keep)
    }

    /// Drops zero rows and puts the matrix in reduced row echelon form, so
    /// that the row count equals the rank.
    pub fn normalized(&self) -> Gf2Matrix {
        let Rref { matrix, rank, .. } = self.rref();
        Gf2Matrix { rows: matrix.rows[..rank].to_vec(), ncols: self.ncols }
    }

    /// Appends a new column (given as a word over the rows).
    pub fn with_column(&self, column: u64) -> Gf2Matrix {
        assert!(self.ncols < MAX_ELEMENTS);
        let j = self.ncols;
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, &r)| r | ((column >> i) & 1) << j)
            .collect();
        Gf2Matrix { rows, ncols: self.ncols + 1 }
    }

    /// Appends a row.
    pub fn with_row(&self, row: u64) -> Gf2Matrix {
        let mut m = self.clone();
        assert_eq!(row & !low_mask(self.ncols), 0);
        m.rows.push(row);
        m
    }

    /// Permutes columns: new column `k` is old column `order[k]`.
    pub fn permute_columns(&self, order: &[usize]) -> Gf2Matrix {
        assert_eq!(order.len(), self.ncols);
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                order
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (k, &old)| acc | ((r >> old) & 1) << k)
            })
            .collect();
        Gf2Matrix { rows, ncols: self.ncols }
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.nrows(), self.ncols)?;
        for r in &self.rows {
            let line: String = (0..self.ncols)
                .map(|j| if r >> j & 1 == 1 { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

/// Rank of a collection of words viewed as GF(2) vectors.
pub fn rank_of_words<I: IntoIterator<Item = u64>>(words: I) -> usize {
    // Basis kept indexed by leading bit.
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut w in words {
        while w != 0 {
            let top = 63 - w.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = w;
                rank += 1;
                break;
            }
            w ^= basis[top];
        }
    }
    rank
}

/// Gathers the bits of `x` selected by `mask` into the low bits.
#[inline]
pub fn compress_bits(x: u64, mask: u64) -> u64 {
    let mut out = 0;
    let mut m = mask;
    let mut k = 0;
    while m != 0 {
        let i = m.trailing_zeros();
        out |= ((x >> i) & 1) << k;
        k += 1;
        m &= m - 1;
    }
    out
}

/// Inverse of [`compress_bits`]: spreads the low bits of `x` onto `mask`.
#[inline]
pub fn expand_bits(x: u64, mask: u64) -> u64 {
    let mut out = 0;
    let mut m = mask;
    let mut k = 0;
    while m != 0 {
        let i = m.trailing_zeros();
        out |= ((x >> k) & 1) << i;
        k += 1;
        m &= m - 1;
    }
    out
}

/// Walks every non-zero vector of the span of `basis` in Gray-code order,
/// so each step costs a single XOR. The basis must be linearly independent
/// for the vectors to be distinct.
pub struct GraySpan<'a> {
    basis: &'a [u64],
    counter: u64,
    current: u64,
    end: u64,
}

impl<'a> GraySpan<'a> {
    pub fn new(basis: &'a [u64]) -> Self {
        assert!(basis.len() < 64, "span dimension too large");
        GraySpan { basis, counter: 0, current: 0, end: 1u64 << basis.len() }
    }
}

impl Iterator for GraySpan<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        self.counter += 1;
        if self.counter >= self.end {
            return None;
        }
        let flip = self.counter.trailing_zeros() as usize;
        self.current ^= self.basis[flip];
        Some(self.current)
    }
}

/// Inverts a square invertible matrix given by rows. Returns `None` when singular.
pub fn invert_square(rows: &[u64]) -> Option<Vec<u64>> {
    let k = rows.len();
    let mut a = rows.to_vec();
    let mut inv: Vec<u64> = (0..k).map(|i| 1u64 << i).collect();
    for col in 0..k {
        let bit = 1u64 << col;
        let p = (col..k).find(|&i| a[i] & bit != 0)?;
        a.swap(col, p);
        inv.swap(col, p);
        for i in 0..k {
            if i != col && a[i] & bit != 0 {
                a[i] ^= a[col];
                inv[i] ^= inv[col];
            }
        }
    }
    Some(inv)
}
