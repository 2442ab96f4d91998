//! Average hitting times on the directed wheel, by four independent routes.
//!
//! The walk starts at cycle vertex 0 and stops on first arrival at either
//! the target vertex `l` or the absorbing hub (which contributes no further
//! steps). The four routes:
//!
//! 1. [`closed_form`]: `3 (F_N - F_{N-2l}) / F_N` for odd `N`, with Lucas
//!    numbers in place of Fibonacci for even `N`;
//! 2. [`solve_reduced`]: exact solve of the `(N-1)`-dimensional tridiagonal
//!    system with right-hand side 3;
//! 3. [`solve_folded`]: exact solve of the half-size system obtained from
//!    the symmetry `h(0, l) = h(0, N-l)`;
//! 4. [`via_inverse`]: evaluation of the explicit entrywise inverse of the
//!    folded matrix.
//!
//! All four agree exactly, entry for entry, which the verification suite
//! checks over large ranges.

use num::BigInt;

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Rational};
use crate::sequences::SeqTable;
use crate::wheel::{folded_matrix, reduced_matrix};

/// A validated hitting-time query: cycle size `n >= 3` and target
/// `1 <= ell <= n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HittingQuery {
    n: usize,
    ell: usize,
}

impl HittingQuery {
    pub fn new(n: usize, ell: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::domain(format!("cycle size must be at least 3, got {n}")));
        }
        if ell == 0 || ell >= n {
            return Err(Error::domain(format!(
                "target must satisfy 1 <= ell <= {}, got {ell}",
                n - 1
            )));
        }
        Ok(HittingQuery { n, ell })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// The target folded into the first half of the cycle: `min(ell, N - ell)`.
    pub fn folded_ell(&self) -> usize {
        self.ell.min(self.n - self.ell)
    }
}

/// The exact computation routes for a hitting time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactMethod {
    ClosedForm,
    SolveReduced,
    SolveFolded,
    ViaInverse,
}

/// A hitting-time value together with the query and route that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingResult {
    pub query: HittingQuery,
    pub value: Rational,
    pub method: ExactMethod,
}

/// Evaluates one query by the requested route.
pub fn compute(query: HittingQuery, method: ExactMethod) -> Result<HittingResult> {
    let value = match method {
        ExactMethod::ClosedForm => closed_form(query),
        ExactMethod::SolveReduced => solve_reduced(query.n)?[query.ell - 1].clone(),
        ExactMethod::SolveFolded => solve_folded(query.n)?[query.folded_ell() - 1].clone(),
        ExactMethod::ViaInverse => via_inverse(query.n)?[query.folded_ell() - 1].clone(),
    };
    Ok(HittingResult { query, value, method })
}

/// Closed-form hitting time.
///
/// With `l` folded to `min(l, N-l)` first: `3 (F_N - F_{N-2l}) / F_N` when
/// `N` is odd and `3 (L_N - L_{N-2l}) / L_N` when `N` is even.
pub fn closed_form(query: HittingQuery) -> Rational {
    let n = query.n as u64;
    let ell = query.folded_ell() as u64;
    let table = SeqTable::up_to(n);
    let (s_n, s_folded) = if n % 2 == 1 {
        (table.fib(n), table.fib(n - 2 * ell))
    } else {
        (table.lucas(n), table.lucas(n - 2 * ell))
    };
    Rational::new(BigInt::from(3) * (s_n - s_folded), s_n.clone())
}

/// Exact solution of the reduced system; entry `l - 1` is `h(0, l)` for
/// `l = 1..=N-1`.
pub fn solve_reduced(n: usize) -> Result<Vec<Rational>> {
    let matrix = reduced_matrix(n)?;
    let rhs = vec![Rational::from_integer(BigInt::from(3)); n - 1];
    matrix.solve(&rhs)
}

/// Exact solution of the folded system; entry `l - 1` is `h(0, l)` for
/// `l = 1..=floor(N/2)`.
pub fn solve_folded(n: usize) -> Result<Vec<Rational>> {
    let matrix = folded_matrix(n)?;
    let rhs = vec![Rational::from_integer(BigInt::from(3)); n / 2];
    matrix.solve(&rhs)
}

/// One entry of the explicit inverse of the folded matrix, with 1-based
/// indices `1 <= i, j <= floor(N/2)`.
///
/// Odd `N`: `F_{N-2i} F_{2j} / F_N` for `i > j`, else `F_{N-2j} F_{2i} / F_N`.
/// Even `N = 2n`: `L_{N-2i} F_{2j} / L_N` for `i > j`; `L_{N-2j} F_{2i} / L_N`
/// for `i <= j < n`; and `L_1 F_{2i} / L_N` in the last column `j = n`.
pub fn inverse_entry(n: usize, i: usize, j: usize) -> Result<Rational> {
    if n < 3 {
        return Err(Error::domain(format!("cycle size must be at least 3, got {n}")));
    }
    let half = n / 2;
    if i == 0 || i > half || j == 0 || j > half {
        return Err(Error::domain(format!(
            "inverse indices must lie in 1..={half}, got ({i}, {j})"
        )));
    }
    let table = SeqTable::up_to(n as u64);
    Ok(inverse_entry_from_table(&table, n, i, j))
}

fn inverse_entry_from_table(table: &SeqTable, n: usize, i: usize, j: usize) -> Rational {
    let half = n / 2;
    let (nu, iu, ju) = (n as u64, i as u64, j as u64);
    if n % 2 == 1 {
        let numerator = if i > j {
            table.fib(nu - 2 * iu) * table.fib(2 * ju)
        } else {
            table.fib(nu - 2 * ju) * table.fib(2 * iu)
        };
        Rational::new(numerator, table.fib(nu).clone())
    } else {
        let numerator = if i > j {
            table.lucas(nu - 2 * iu) * table.fib(2 * ju)
        } else if j != half {
            table.lucas(nu - 2 * ju) * table.fib(2 * iu)
        } else {
            table.lucas(1) * table.fib(2 * iu)
        };
        Rational::new(numerator, table.lucas(nu).clone())
    }
}

/// The full explicit inverse of the folded matrix, assembled entrywise.
pub fn inverse_matrix(n: usize) -> Result<ExactMatrix> {
    if n < 3 {
        return Err(Error::domain(format!("cycle size must be at least 3, got {n}")));
    }
    let table = SeqTable::up_to(n as u64);
    let half = n / 2;
    Ok(ExactMatrix::from_fn(half, half, |r, c| {
        inverse_entry_from_table(&table, n, r + 1, c + 1)
    }))
}

/// Hitting times as `3 * G_N * 1`, where `G_N` is the explicit inverse;
/// entry `l - 1` is `h(0, l)` for `l = 1..=floor(N/2)`.
pub fn via_inverse(n: usize) -> Result<Vec<Rational>> {
    let g = inverse_matrix(n)?;
    let three = Rational::from_integer(BigInt::from(3));
    Ok((0..g.rows())
        .map(|r| {
            let row_sum: Rational = (0..g.cols()).map(|c| g[(r, c)].clone()).sum();
            row_sum * &three
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{One, Zero};

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn query_validation() {
        assert!(HittingQuery::new(2, 1).is_err());
        assert!(HittingQuery::new(5, 0).is_err());
        assert!(HittingQuery::new(5, 5).is_err());
        assert!(HittingQuery::new(3, 2).is_ok());
    }

    #[test]
    fn closed_form_spot_values() {
        assert_eq!(closed_form(HittingQuery::new(3, 1).unwrap()), rat(3, 2));
        assert_eq!(closed_form(HittingQuery::new(4, 1).unwrap()), rat(12, 7));
        assert_eq!(closed_form(HittingQuery::new(4, 2).unwrap()), rat(15, 7));
        assert_eq!(closed_form(HittingQuery::new(5, 1).unwrap()), rat(9, 5));
    }

    #[test]
    fn closed_form_folds_large_targets() {
        assert_eq!(closed_form(HittingQuery::new(5, 4).unwrap()), rat(9, 5));
        assert_eq!(closed_form(HittingQuery::new(4, 3).unwrap()), rat(12, 7));
    }

    #[test]
    fn solve_reduced_spot_values() {
        assert_eq!(solve_reduced(3).unwrap(), vec![rat(3, 2), rat(3, 2)]);
        assert_eq!(solve_reduced(4).unwrap(), vec![rat(12, 7), rat(15, 7), rat(12, 7)]);
        assert_eq!(
            solve_reduced(5).unwrap(),
            vec![rat(9, 5), rat(12, 5), rat(12, 5), rat(9, 5)]
        );
    }

    #[test]
    fn solve_folded_spot_values() {
        assert_eq!(solve_folded(5).unwrap(), vec![rat(9, 5), rat(12, 5)]);
        assert_eq!(solve_folded(4).unwrap(), vec![rat(12, 7), rat(15, 7)]);
        assert_eq!(solve_folded(3).unwrap(), vec![rat(3, 2)]);
    }

    #[test]
    fn inverse_entry_spot_values() {
        assert_eq!(inverse_entry(5, 1, 1).unwrap(), rat(2, 5));
        assert_eq!(inverse_entry(4, 2, 1).unwrap(), rat(2, 7));
        assert_eq!(inverse_entry(4, 1, 2).unwrap(), rat(1, 7));
    }

    #[test]
    fn inverse_entry_rejects_bad_indices() {
        assert!(inverse_entry(5, 0, 1).is_err());
        assert!(inverse_entry(5, 1, 3).is_err());
        assert!(inverse_entry(2, 1, 1).is_err());
    }

    #[test]
    fn via_inverse_spot_values() {
        assert_eq!(via_inverse(5).unwrap(), vec![rat(9, 5), rat(12, 5)]);
        assert_eq!(via_inverse(4).unwrap(), vec![rat(12, 7), rat(15, 7)]);
        assert_eq!(via_inverse(3).unwrap(), vec![rat(3, 2)]);
    }

    #[test]
    fn inverse_matrix_inverts_folded_matrix() {
        for n in 3..=40usize {
            let product = folded_matrix(n).unwrap().mul(&inverse_matrix(n).unwrap()).unwrap();
            assert!(product.is_identity(), "N={n}");
        }
    }

    #[test]
    fn inverse_matrix_matches_generic_inversion() {
        for n in 3..=20usize {
            assert_eq!(
                inverse_matrix(n).unwrap(),
                folded_matrix(n).unwrap().invert().unwrap(),
                "N={n}"
            );
        }
    }

    #[test]
    fn four_routes_agree() {
        for n in 3..=40usize {
            let reduced = solve_reduced(n).unwrap();
            let folded = solve_folded(n).unwrap();
            let inverse = via_inverse(n).unwrap();
            for ell in 1..n {
                let q = HittingQuery::new(n, ell).unwrap();
                let direct = closed_form(q);
                assert_eq!(direct, reduced[ell - 1], "closed vs reduced at N={n}, l={ell}");
                assert_eq!(direct, folded[q.folded_ell() - 1], "closed vs folded at N={n}, l={ell}");
                assert_eq!(direct, inverse[q.folded_ell() - 1], "closed vs inverse at N={n}, l={ell}");
            }
        }
    }

    #[test]
    fn reduced_solution_is_symmetric() {
        for n in 3..=40usize {
            let h = solve_reduced(n).unwrap();
            for ell in 1..n {
                assert_eq!(h[ell - 1], h[n - ell - 1], "N={n}, l={ell}");
            }
        }
    }

    #[test]
    fn folded_solution_is_strictly_increasing() {
        for n in 3..=60usize {
            let h = solve_folded(n).unwrap();
            for w in h.windows(2) {
                assert!(w[0] < w[1], "N={n}");
            }
        }
    }

    #[test]
    fn hitting_times_are_positive_and_below_three() {
        let three = Rational::from_integer(BigInt::from(3));
        for n in 3..=60usize {
            for value in solve_reduced(n).unwrap() {
                assert!(value > Rational::zero() && value < three, "N={n}");
            }
        }
    }

    #[test]
    fn compute_dispatches_all_methods() {
        let q = HittingQuery::new(4, 2).unwrap();
        for method in [
            ExactMethod::ClosedForm,
            ExactMethod::SolveReduced,
            ExactMethod::SolveFolded,
            ExactMethod::ViaInverse,
        ] {
            let r = compute(q, method).unwrap();
            assert_eq!(r.value, rat(15, 7));
            assert_eq!(r.method, method);
        }
    }

    #[test]
    fn hitting_value_denominator_is_sequence_term() {
        // odd sizes divide by F_N, even sizes by L_N (up to reduction)
        let h = closed_form(HittingQuery::new(7, 2).unwrap());
        // 3 (13 - 2) / 13
        assert_eq!(h, rat(33, 13));
        let one = Rational::one();
        assert!(h > one);
    }
}
