use std::fmt;

use super::field::Field;
use super::rational::Rational;

/// Sparse vector: `(index, value)` pairs sorted by index, no stored zeros.
#[derive(Clone, PartialEq, Default)]
pub struct SparseVec<F = Rational> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Builds a vector from unsorted pairs, summing duplicates and dropping zeros.
    pub fn from_pairs(mut pairs: Vec<(usize, F)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, F)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc = acc.add(&v),
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&F> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|p| &self.entries[p].1)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v.mul(c))).collect() }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &F, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y.mul(c)));
                        b.next();
                    } else {
                        let s = x.add(&y.mul(c));
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y.mul(c)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> SparseVec<G> {
        SparseVec::from_pairs(self.entries.iter().map(|(i, v)| (*i, f(v))).collect())
    }

    pub(crate) fn relabel(&self, perm: &[usize]) -> Self {
        SparseVec::from_pairs(self.entries.iter().map(|(i, v)| (perm[*i], v.clone())).collect())
    }
}

impl<F: fmt::Debug> fmt::Debug for SparseVec<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(i, v)| (i, v))).finish()
    }
}

/// Sparse matrix with exact rational entries, stored by rows.
#[derive(Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| SparseVec { entries: vec![(i, Rational::one())] }).collect();
        SparseMatrix { rows: n, cols: n, data }
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicates are summed.
    ///
    /// Panics when an index is out of bounds.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, Rational)>) -> Self {
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            buckets[r].push((c, v));
        }
        let data = buckets.into_iter().map(SparseVec::from_pairs).collect();
        SparseMatrix { rows, cols, data }
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        for r in &rows {
            if let Some(m) = r.max_index() {
                assert!(m < cols, "column {m} outside width {cols}");
            }
        }
        SparseMatrix { rows: rows.len(), cols, data: rows }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let trip = rows.iter().enumerate().flat_map(|(r, row)| {
            row.iter().enumerate().map(move |(c, &v)| (r, c, Rational::from_integer(v)))
        });
        SparseMatrix::from_triplets(rows.len(), cols, trip)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn row_vectors(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data[r].get(c).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.entries().iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.entries() {
            buckets[c].push((r, v.clone()));
        }
        let data = buckets.into_iter().map(|entries| SparseVec { entries }).collect();
        SparseMatrix { rows: self.cols, cols: self.rows, data }
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = SparseVec::new();
                for (k, v) in row.entries() {
                    acc = acc.axpy(v, &rhs.data[*k]);
                }
                acc
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: rhs.cols, data }
    }

    pub fn scale_row(&mut self, r: usize, c: &Rational) {
        assert!(!c.is_zero(), "row scaling by zero");
        self.data[r] = self.data[r].scale(c);
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    /// Column `c` as a sparse vector indexed by row.
    pub fn column(&self, c: usize) -> SparseVec {
        let pairs = self
            .data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| row.get(c).map(|v| (r, v.clone())))
            .collect();
        SparseVec::from_pairs(pairs)
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} [", self.rows, self.cols)?;
        for (r, row) in self.data.iter().enumerate() {
            if !row.is_zero() {
                writeln!(f, "  {r}: {row:?}")?;
            }
        }
        write!(f, "]")
    }
}
