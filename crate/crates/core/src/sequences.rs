//! Arbitrary-precision Fibonacci and Lucas numbers.
//!
//! `F_0 = 0, F_1 = 1, F_{i+2} = F_{i+1} + F_i` and
//! `L_0 = 2, L_1 = 1, L_{i+2} = L_{i+1} + L_i`. Single lookups use fast
//! doubling; batch consumers should build a [`SeqTable`] once instead of
//! calling [`fib`] in a loop.

use num::BigInt;
use num::{One, Zero};

/// Returns `(F_i, F_{i+1})` by binary fast doubling.
///
/// Uses `F_{2k} = F_k (2 F_{k+1} - F_k)` and `F_{2k+1} = F_k^2 + F_{k+1}^2`,
/// consuming the bits of `i` from the most significant end.
pub fn fib_pair(i: u64) -> (BigInt, BigInt) {
    let mut f = BigInt::zero();
    let mut g = BigInt::one();
    if i == 0 {
        return (f, g);
    }
    for bit in (0..64 - i.leading_zeros()).rev() {
        let doubled_even = &f * ((&g << 1) - &f);
        let doubled_odd = &f * &f + &g * &g;
        if (i >> bit) & 1 == 1 {
            f = doubled_odd.clone();
            g = doubled_even + doubled_odd;
        } else {
            f = doubled_even;
            g = doubled_odd;
        }
    }
    (f, g)
}

/// The `i`-th Fibonacci number.
pub fn fib(i: u64) -> BigInt {
    fib_pair(i).0
}

/// The `i`-th Lucas number, via `L_i = 2 F_{i+1} - F_i`.
pub fn lucas(i: u64) -> BigInt {
    let (f, g) = fib_pair(i);
    (g << 1) - f
}

/// Prefix tables of Fibonacci and Lucas numbers for batch evaluation.
#[derive(Debug, Clone)]
pub struct SeqTable {
    fib: Vec<BigInt>,
    lucas: Vec<BigInt>,
}

impl SeqTable {
    /// Builds `F_0..=F_max` and `L_0..=L_max` by the additive recurrence.
    pub fn up_to(max: u64) -> Self {
        let len = max as usize + 1;
        let mut fib = Vec::with_capacity(len);
        let mut lucas = Vec::with_capacity(len);
        fib.push(BigInt::zero());
        lucas.push(BigInt::from(2));
        if max >= 1 {
            fib.push(BigInt::one());
            lucas.push(BigInt::one());
        }
        for i in 2..len {
            fib.push(&fib[i - 1] + &fib[i - 2]);
            lucas.push(&lucas[i - 1] + &lucas[i - 2]);
        }
        SeqTable { fib, lucas }
    }

    pub fn fib(&self, i: u64) -> &BigInt {
        &self.fib[i as usize]
    }

    pub fn lucas(&self, i: u64) -> &BigInt {
        &self.lucas[i as usize]
    }

    pub fn max_index(&self) -> u64 {
        self.fib.len() as u64 - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fib_base_cases_and_small_values() {
        assert_eq!(fib(0), BigInt::from(0));
        assert_eq!(fib(1), BigInt::from(1));
        assert_eq!(fib(10), BigInt::from(55));
    }

    #[test]
    fn lucas_base_cases_and_small_values() {
        assert_eq!(lucas(0), BigInt::from(2));
        assert_eq!(lucas(1), BigInt::from(1));
        assert_eq!(lucas(10), BigInt::from(123));
    }

    #[test]
    fn fib_200_has_42_digits() {
        assert_eq!(fib(200).to_string().len(), 42);
    }

    #[test]
    fn table_agrees_with_fast_doubling() {
        let table = SeqTable::up_to(300);
        for i in (0..=300).step_by(17) {
            assert_eq!(table.fib(i), &fib(i), "F_{i}");
            assert_eq!(table.lucas(i), &lucas(i), "L_{i}");
        }
    }

    #[test]
    fn recurrences_hold_up_to_500() {
        let t = SeqTable::up_to(502);
        for i in 0..=500u64 {
            assert_eq!(t.fib(i + 2), &(t.fib(i + 1) + t.fib(i)), "F recurrence at {i}");
            assert_eq!(
                t.lucas(i + 2),
                &(t.lucas(i + 1) + t.lucas(i)),
                "L recurrence at {i}"
            );
        }
    }

    #[test]
    fn lucas_is_fib_neighbor_sum() {
        let t = SeqTable::up_to(501);
        for i in 1..=500u64 {
            assert_eq!(t.lucas(i), &(t.fib(i - 1) + t.fib(i + 1)), "L_{i}");
        }
    }

    #[test]
    fn three_term_identities() {
        let t = SeqTable::up_to(502);
        for n in 1..=250u64 {
            let f = t.fib(2 * n - 2) - BigInt::from(3) * t.fib(2 * n) + t.fib(2 * n + 2);
            assert!(f.is_zero(), "Fibonacci three-term at n={n}");
            let l = t.lucas(2 * n - 2) - BigInt::from(3) * t.lucas(2 * n) + t.lucas(2 * n + 2);
            assert!(l.is_zero(), "Lucas three-term at n={n}");
        }
    }

    #[test]
    fn addition_formula() {
        let t = SeqTable::up_to(401);
        for n in 1..=200u64 {
            for m in 1..=200u64 {
                let lhs = t.fib(n + m);
                let rhs = t.fib(n) * t.fib(m + 1) + t.fib(m) * t.fib(n - 1);
                assert_eq!(lhs, &rhs, "addition formula at n={n}, m={m}");
            }
        }
    }

    #[test]
    fn even_index_partial_sums() {
        let t = SeqTable::up_to(502);
        let mut sum = BigInt::zero();
        for ell in 1..=250u64 {
            sum += t.fib(2 * ell);
            assert_eq!(sum, t.fib(2 * ell + 1) - BigInt::one(), "even sum at l={ell}");
        }
    }

    #[test]
    fn odd_index_partial_sums() {
        let t = SeqTable::up_to(502);
        for n in 1..=250u64 {
            let mut sum = BigInt::zero();
            for ell in (0..n).rev() {
                // extending the sum by one term moves l down by one
                sum += t.fib(2 * (n - ell) - 1);
                assert_eq!(sum, *t.fib(2 * n - 2 * ell), "odd sum at n={n}, l={ell}");
            }
        }
    }
}
