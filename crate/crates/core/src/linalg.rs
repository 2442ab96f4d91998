//! Dense exact rational linear algebra.
//!
//! Everything here is exact: entries are arbitrary-precision rationals,
//! determinants of integer matrices come out as integer-valued rationals,
//! and `solve`/`invert` reproduce their inputs exactly when multiplied
//! back. Determinants use fraction-free Bareiss elimination after clearing
//! row denominators, which keeps intermediate integers at minor size
//! instead of letting them grow multiplicatively.

use num::{BigInt, BigRational, Integer as _, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;
/// Exact fraction of [`Integer`]s, always reduced with positive denominator.
pub type Rational = BigRational;

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    /// Builds a matrix by evaluating `f(row, col)` at every 0-based position.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        ExactMatrix { rows, cols, entries }
    }

    /// Builds a matrix from complete rows.
    pub fn from_rows(data: Vec<Vec<Rational>>) -> Result<Self> {
        let rows = data.len();
        let cols = data.first().map(Vec::len).unwrap_or(0);
        if rows == 0 || cols == 0 {
            return Err(Error::Shape("matrix must have at least one row and column".into()));
        }
        if let Some(bad) = data.iter().find(|row| row.len() != cols) {
            return Err(Error::Shape(format!(
                "ragged rows: expected {cols} columns, found {}",
                bad.len()
            )));
        }
        Ok(ExactMatrix {
            rows,
            cols,
            entries: data.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| {
            if r == c {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Exact determinant of a square matrix.
    ///
    /// Row denominators are cleared first, then the integer matrix goes
    /// through Bareiss elimination with first-nonzero pivoting.
    pub fn determinant(&self) -> Result<Rational> {
        self.require_square()?;
        Ok(self.determinant_skipping(None))
    }

    /// Determinant of the matrix with one row and one column removed
    /// (0-based indices). The cofactor sign is the caller's business.
    pub fn minor_determinant(&self, drop_row: usize, drop_col: usize) -> Result<Rational> {
        let n = self.require_square()?;
        if drop_row >= n || drop_col >= n {
            return Err(Error::IndexOutOfRange(format!(
                "cannot drop row {drop_row}, column {drop_col} from a {n}x{n} matrix"
            )));
        }
        if n == 1 {
            // empty minor
            return Ok(Rational::one());
        }
        Ok(self.determinant_skipping(Some((drop_row, drop_col))))
    }

    /// Clears row denominators and runs fraction-free elimination on the
    /// matrix with the given row/column pair removed, if any.
    fn determinant_skipping(&self, skip: Option<(usize, usize)>) -> Rational {
        let keep = |skipped: Option<usize>| {
            (0..self.rows).filter(move |&i| Some(i) != skipped)
        };
        let (skip_row, skip_col) = match skip {
            Some((r, c)) => (Some(r), Some(c)),
            None => (None, None),
        };
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::new();
        for r in keep(skip_row) {
            let mut denom = BigInt::one();
            for c in keep(skip_col) {
                denom = denom.lcm(self[(r, c)].denom());
            }
            m.push(
                keep(skip_col)
                    .map(|c| {
                        let e = &self[(r, c)];
                        e.numer() * (&denom / e.denom())
                    })
                    .collect(),
            );
            scale *= denom;
        }
        let det = bareiss_determinant_i128(&m)
            .map(BigInt::from)
            .unwrap_or_else(|| bareiss_determinant(m));
        Rational::new(det, scale)
    }

    /// Solves `self * x = b` exactly by Gaussian elimination.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.require_square()?;
        if b.len() != n {
            return Err(Error::Shape(format!(
                "right-hand side has {} entries for a {n}x{n} system",
                b.len()
            )));
        }
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|r| self.entries[r * n..(r + 1) * n].to_vec())
            .collect();
        let mut rhs = b.to_vec();

        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::Singular)?;
            a.swap(col, pivot);
            rhs.swap(col, pivot);
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let (upper, lower) = a.split_at_mut(r);
                let pivot_row = &upper[col];
                let row = &mut lower[0];
                let factor = &row[col] / &pivot_row[col];
                for (p, x) in pivot_row[col..].iter().zip(&mut row[col..]) {
                    if !p.is_zero() {
                        *x -= &factor * p;
                    }
                }
                let delta = &factor * &rhs[col];
                rhs[r] -= delta;
            }
        }

        let mut x = vec![Rational::zero(); n];
        for row in (0..n).rev() {
            let mut acc = rhs[row].clone();
            for j in row + 1..n {
                if a[row][j].is_zero() {
                    continue;
                }
                acc -= &a[row][j] * &x[j];
            }
            x[row] = acc / &a[row][row];
        }
        Ok(x)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn invert(&self) -> Result<ExactMatrix> {
        let n = self.require_square()?;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|r| self.entries[r * n..(r + 1) * n].to_vec())
            .collect();
        let mut inv: Vec<Vec<Rational>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| if r == c { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();

        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);

            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] /= &p;
                inv[col][j] /= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in 0..n {
                    if !a[col][j].is_zero() {
                        let delta = &factor * &a[col][j];
                        a[r][j] -= delta;
                    }
                    if !inv[col][j].is_zero() {
                        let delta = &factor * &inv[col][j];
                        inv[r][j] -= delta;
                    }
                }
            }
        }
        ExactMatrix::from_rows(inv)
    }

    /// Exact matrix product. Zero entries on the left are skipped, so
    /// multiplying a tridiagonal matrix by a dense one costs O(n^2).
    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = vec![Rational::zero(); self.rows * rhs.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    out[r * rhs.cols + c] += a * b;
                }
            }
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: rhs.cols,
            entries: out,
        })
    }

    /// Exact matrix-vector product.
    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if self.cols != v.len() {
            return Err(Error::Shape(format!(
                "cannot apply {}x{} to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Rational::zero(); self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = &self[(r, c)];
                if !a.is_zero() {
                    out[r] += a * &v[c];
                }
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self[(r, c)].is_one()
                    } else {
                        self[(r, c)].is_zero()
                    }
                })
            })
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = Rational;

    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.entries[r * self.cols + c]
    }
}

/// Fraction-free determinant over `i128`, used as a fast path when the
/// input fits. Returns `None` on any potential overflow; the caller then
/// reruns the arbitrary-precision version.
fn bareiss_determinant_i128(input: &[Vec<BigInt>]) -> Option<i128> {
    let n = input.len();
    if n == 0 {
        return Some(1);
    }
    let mut m: Vec<Vec<i128>> = Vec::with_capacity(n);
    for row in input {
        m.push(row.iter().map(|e| e.to_i128()).collect::<Option<_>>()?);
    }
    let mut negate = false;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        let pivot = match (k..n).find(|&r| m[r][k] != 0) {
            Some(p) => p,
            None => return Some(0),
        };
        if pivot != k {
            m.swap(k, pivot);
            negate = !negate;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let t = m[r][c]
                    .checked_mul(m[k][k])?
                    .checked_sub(m[r][k].checked_mul(m[k][c])?)?;
                m[r][c] = t.checked_div(prev)?;
            }
            m[r][k] = 0;
        }
        prev = m[k][k];
    }
    let det = m[n - 1][n - 1];
    Some(if negate { det.checked_neg()? } else { det })
}

/// Fraction-free determinant of an integer matrix. Consumes the matrix.
fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        let pivot = match (k..n).find(|&r| !m[r][k].is_zero()) {
            Some(p) => p,
            None => return BigInt::zero(),
        };
        if pivot != k {
            m.swap(k, pivot);
            negate = !negate;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let t = &m[r][c] * &m[k][k] - &m[r][k] * &m[k][c];
                // exact by the Bareiss identity: prev divides t
                m[r][c] = t / &prev;
            }
            m[r][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = std::mem::take(&mut m[n - 1][n - 1]);
    if negate {
        -det
    } else {
        det
    }
}

/// Shorthand for an integer-valued rational.
pub fn rational_int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

/// True when the rational is an exact integer.
pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Extracts the integer value of an integer-valued rational.
pub fn to_integer(r: &Rational) -> Option<Integer> {
    if is_integral(r) {
        Some(r.numer().clone())
    } else {
        None
    }
}

/// Absolute value, for test tolerances on exact quantities.
pub fn rational_abs(r: &Rational) -> Rational {
    r.abs()
}
