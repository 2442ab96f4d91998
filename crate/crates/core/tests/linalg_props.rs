//! Property tests for the exact linear algebra on random small integer
//! matrices.

use num::{BigInt, One, Zero};
use proptest::prelude::*;

use wheelwalk_core::linalg::{rational_int, ExactMatrix, Rational};

fn matrix_from(n: usize, entries: &[i64]) -> ExactMatrix {
    ExactMatrix::from_fn(n, n, |r, c| rational_int(entries[r * n + c]))
}

fn square_system() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>)> {
    (1usize..=6).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(-5i64..=5, n * n),
            prop::collection::vec(-5i64..=5, n),
        )
    })
}

proptest! {
    #[test]
    fn solve_reproduces_rhs_exactly((n, entries, rhs) in square_system()) {
        let m = matrix_from(n, &entries);
        prop_assume!(!m.determinant().unwrap().is_zero());
        let b: Vec<Rational> = rhs.iter().map(|&v| rational_int(v)).collect();
        let x = m.solve(&b).unwrap();
        prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
    }

    #[test]
    fn inverse_multiplies_to_identity((n, entries, _) in square_system()) {
        let m = matrix_from(n, &entries);
        prop_assume!(!m.determinant().unwrap().is_zero());
        let inv = m.invert().unwrap();
        prop_assert!(m.mul(&inv).unwrap().is_identity());
        prop_assert!(inv.mul(&m).unwrap().is_identity());
    }

    #[test]
    fn first_row_cofactor_expansion_matches_determinant(
        (n, entries, _) in (1usize..=5).prop_flat_map(|n| {
            (Just(n), prop::collection::vec(-5i64..=5, n * n), Just(()))
        })
    ) {
        let m = matrix_from(n, &entries);
        let mut acc = Rational::zero();
        for j in 0..n {
            let term = &m[(0, j)] * m.minor_determinant(0, j).unwrap();
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        prop_assert_eq!(acc, m.determinant().unwrap());
    }

    #[test]
    fn determinant_is_multiplicative(
        (n, a, b) in (1usize..=4).prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(-5i64..=5, n * n),
                prop::collection::vec(-5i64..=5, n * n),
            )
        })
    ) {
        let ma = matrix_from(n, &a);
        let mb = matrix_from(n, &b);
        let product_det = ma.mul(&mb).unwrap().determinant().unwrap();
        prop_assert_eq!(product_det, ma.determinant().unwrap() * mb.determinant().unwrap());
    }

    #[test]
    fn solving_against_identity_returns_rhs(rhs in prop::collection::vec(-100i64..=100, 1..=6)) {
        let n = rhs.len();
        let b: Vec<Rational> = rhs.iter().map(|&v| rational_int(v)).collect();
        prop_assert_eq!(ExactMatrix::identity(n).solve(&b).unwrap(), b);
    }
}

#[test]
fn integer_matrices_have_integer_determinants() {
    let m = matrix_from(3, &[2, -1, 0, 3, 4, -2, 1, 1, 1]);
    let det = m.determinant().unwrap();
    assert_eq!(det.denom(), &BigInt::one());
}
