use koszul_forests::linalg::{rank, rank_mod_p, Rational, SparseMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

/// Textbook Gaussian elimination on dense big rationals.
fn oracle_rank(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> usize {
    let mut a = vec![vec![BigRational::zero(); cols]; rows];
    for &(r, c, v) in entries {
        a[r][c] += BigRational::from_integer(BigInt::from(v));
    }
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[rank][col];
                for c in col..cols {
                    let sub = &f * &a[rank][c];
                    a[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn sparse_matrix(max: usize, density: usize) -> impl Strategy<Value = (usize, usize, Vec<(usize, usize, i64)>)> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        let n = (r * c / density).max(1);
        (Just(r), Just(c), prop::collection::vec((0..r, 0..c, -3i64..=3), 0..=n))
    })
}

fn build(r: usize, c: usize, e: &[(usize, usize, i64)]) -> SparseMatrix {
    SparseMatrix::from_triplets(r, c, e.iter().map(|&(i, j, v)| (i, j, Rational::from(v))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matches_dense_oracle((r, c, e) in sparse_matrix(90, 8)) {
        prop_assert_eq!(rank(&build(r, c, &e)), oracle_rank(r, c, &e));
    }

    // Shaped like the boundary matrices: a few entries per row.
    #[test]
    fn invariant_under_transpose_scaling_and_swaps(
        (r, c, e) in sparse_matrix(200, 60),
        k in -5i64..=5,
        i in 0usize..200,
        j in 0usize..200,
    ) {
        let m = build(r, c, &e);
        let base = rank(&m);
        prop_assert!(base <= r.min(c));
        prop_assert_eq!(rank(&m.transpose()), base);
        let mut s = m.clone();
        s.swap_rows(i % r, j % r);
        prop_assert_eq!(rank(&s), base);
        if k != 0 {
            let mut s = m.clone();
            s.scale_row(i % r, &Rational::from(k));
            prop_assert_eq!(rank(&s), base);
        }
        prop_assert!(rank_mod_p(&m) <= base);
    }
}

#[test]
fn rank_of_products_is_bounded() {
    let a = SparseMatrix::from_dense(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
    let b = SparseMatrix::from_dense(&[vec![1, 0], vec![0, 1], vec![1, 1]]);
    assert_eq!(rank(&a), 2);
    assert!(rank(&a.mul(&b)) <= 2);
}
