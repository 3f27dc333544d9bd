use ihl_core::linalg::{integer_kernel, kernel_basis, smith_invariants};
use ihl_core::oracles::{laplace_determinant, maximal_minor_gcd, rational_rank};
use ihl_core::{ExactMatrix, IntegerMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
}

fn fractions(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    // divide column j by j + 1 so the rational path is exercised
    rows.iter()
        .map(|r| r.iter().enumerate().map(|(j, &v)| BigRational::new(v.into(), BigInt::from(j as i64 + 1))).collect())
        .collect()
}

proptest! {
    #[test]
    fn rank_matches_gaussian_oracle(rows in small_matrix(6, 7)) {
        let q = fractions(&rows);
        let m = ExactMatrix::from_rows(q.clone()).unwrap();
        prop_assert_eq!(m.rank(), rational_rank(&q));
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn rank_nullity(rows in small_matrix(6, 7)) {
        let m = ExactMatrix::from_rows(fractions(&rows)).unwrap();
        let k = kernel_basis(&m);
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!(m.mul(&k).unwrap().is_zero());
        prop_assert_eq!(k.rank(), k.cols());
    }

    #[test]
    fn integer_kernel_is_saturated(rows in small_matrix(3, 6)) {
        let a = IntegerMatrix::from_i64_rows(&rows).unwrap();
        let b = integer_kernel(&a);
        prop_assert!(a.mul(&b).unwrap().is_zero());
        prop_assert_eq!(b.cols(), a.cols() - a.rank());
        if b.cols() > 0 {
            // coprime maximal minors of B^T: the columns span a saturated lattice
            prop_assert!(maximal_minor_gcd(&b.transpose()).is_one());
        }
    }

    #[test]
    fn determinant_matches_laplace(n in 1usize..=5, seed in prop::collection::vec(-6i64..=6, 25)) {
        let rows: Vec<Vec<i64>> = (0..n).map(|r| seed[r * n..(r + 1) * n].to_vec()).collect();
        let m = IntegerMatrix::from_i64_rows(&rows).unwrap();
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| v.into()).collect()).collect();
        prop_assert_eq!(m.determinant().unwrap(), laplace_determinant(&big));
    }

    #[test]
    fn smith_product_is_minor_gcd(rows in small_matrix(3, 5)) {
        let a = IntegerMatrix::from_i64_rows(&rows).unwrap();
        let inv = smith_invariants(&a);
        prop_assert_eq!(inv.len(), a.rank());
        for w in inv.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        if inv.len() == a.rows() && a.rows() <= a.cols() {
            let prod = inv.iter().fold(BigInt::one(), |acc, v| acc * v);
            prop_assert_eq!(prod, maximal_minor_gcd(&a).abs());
        }
    }
}
