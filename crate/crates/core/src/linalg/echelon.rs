use super::field::{Field, ModP};
use super::rational::Rational;
use super::sparse::{SparseMatrix, SparseVec};

/// Matrices narrower than this are eliminated densely.
pub const DENSE_CUTOFF: usize = 64;

/// Incrementally built row echelon form.
///
/// Every stored row is normalized so its leading entry is one, and the
/// leading column of a stored row is its pivot column.
#[derive(Clone, Debug)]
pub struct Echelon<F = Rational> {
    width: usize,
    pivots: Vec<Option<SparseVec<F>>>,
    rank: usize,
}

impl<F: Field> Echelon<F> {
    pub fn new(width: usize) -> Self {
        Echelon { width, pivots: vec![None; width], rank: 0 }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Adds `v` to the span. Returns whether it was independent of the rows
    /// already present.
    pub fn insert(&mut self, mut v: SparseVec<F>) -> bool {
        while let Some((lead, c)) = v.entries().first().cloned() {
            match &self.pivots[lead] {
                Some(p) => v = v.axpy(&c.neg(), p),
                None => {
                    let row = v.scale(&c.inv());
                    self.pivots[lead] = Some(row);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        let mut cursor = 0;
        loop {
            let next = v
                .entries()
                .iter()
                .skip_while(|(i, _)| *i < cursor)
                .find(|(i, _)| self.pivots[*i].is_some())
                .cloned();
            match next {
                Some((col, c)) => {
                    let p = self.pivots[col].as_ref().expect("pivot present");
                    v = v.axpy(&c.neg(), p);
                    cursor = col + 1;
                }
                None => return v,
            }
        }
    }

    pub fn contains(&self, v: SparseVec<F>) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.iter().enumerate().filter_map(|(i, p)| p.as_ref().map(|_| i))
    }
}

/// Rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    rank_in::<Rational>(m)
}

/// Rank over the prime field of order 2^61 - 1.
pub fn rank_mod_p(m: &SparseMatrix) -> usize {
    rank_in::<ModP>(m)
}

pub fn nullspace_dim(m: &SparseMatrix) -> usize {
    m.cols() - rank(m)
}

/// Rank with entries mapped into the field `F`.
pub fn rank_in<F: Field>(m: &SparseMatrix) -> usize {
    let vectors: Vec<SparseVec<F>> = m.row_vectors().iter().map(|r| r.map_field(F::from_rational)).collect();
    rank_of_vectors(&vectors, m.cols())
}

/// Dimension of the span of `vectors`, all of width `width`.
pub fn rank_of_vectors<F: Field>(vectors: &[SparseVec<F>], width: usize) -> usize {
    if vectors.is_empty() || width == 0 {
        return 0;
    }
    if width < DENSE_CUTOFF {
        return dense_rank(vectors, width);
    }
    // Static Markowitz-style ordering: sparse rows first, and columns relabeled
    // so that rarely used columns are eliminated first.
    let mut counts = vec![0usize; width];
    for v in vectors {
        for (i, _) in v.entries() {
            counts[*i] += 1;
        }
    }
    let mut order: Vec<usize> = (0..width).collect();
    order.sort_by_key(|&c| (counts[c], c));
    let mut perm = vec![0usize; width];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    let mut rows: Vec<&SparseVec<F>> = vectors.iter().filter(|v| !v.is_zero()).collect();
    rows.sort_by_key(|v| v.nnz());
    let mut ech = Echelon::new(width);
    for v in rows {
        ech.insert(v.relabel(&perm));
        if ech.rank() == width {
            break;
        }
    }
    ech.rank()
}

fn dense_rank<F: Field>(vectors: &[SparseVec<F>], width: usize) -> usize {
    let mut a: Vec<Vec<F>> = vectors
        .iter()
        .map(|v| {
            let mut row = vec![F::zero(); width];
            for (i, x) in v.entries() {
                row[*i] = x.clone();
            }
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][col].inv();
        for c in col..width {
            a[rank][c] = a[rank][c].mul(&inv);
        }
        let pivot_row = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for c in col..width {
                    row[c] = row[c].sub(&f.mul(&pivot_row[c]));
                }
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&SparseMatrix::identity(4)), 4);
        assert_eq!(nullspace_dim(&SparseMatrix::zeros(3, 3)), 3);
        assert_eq!(nullspace_dim(&SparseMatrix::identity(4)), 0);
        assert_eq!(nullspace_dim(&SparseMatrix::from_dense(&[vec![1, 1]])), 1);
    }

    #[test]
    fn sparse_and_dense_paths_agree() {
        // 100 columns forces the sparse path; the same rows padded into a
        // narrow matrix use the dense path.
        let rows = vec![vec![1, 2, 0, 3], vec![2, 4, 0, 6], vec![0, 1, 1, 0], vec![1, 3, 1, 3]];
        let narrow = SparseMatrix::from_dense(&rows);
        let wide_rows: Vec<SparseVec> = narrow
            .row_vectors()
            .iter()
            .map(|r| SparseVec::from_pairs(r.entries().iter().map(|(i, v)| (i * 25, v.clone())).collect()))
            .collect();
        let wide = SparseMatrix::from_rows(100, wide_rows);
        assert_eq!(rank(&narrow), 2);
        assert_eq!(rank(&wide), 2);
        assert_eq!(rank_mod_p(&wide), 2);
    }

    #[test]
    fn echelon_membership() {
        let mut e: Echelon = Echelon::new(3);
        let v = |a: i64, b: i64, c: i64| {
            SparseVec::from_pairs(vec![(0, Rational::from(a)), (1, Rational::from(b)), (2, Rational::from(c))])
        };
        assert!(e.insert(v(1, 1, 0)));
        assert!(e.insert(v(0, 1, 1)));
        assert!(!e.insert(v(1, 2, 1)));
        assert!(e.contains(v(2, 3, 1)));
        assert!(!e.contains(v(0, 0, 1)));
        assert_eq!(e.pivot_columns().collect::<Vec<_>>(), vec![0, 1]);
    }
}
