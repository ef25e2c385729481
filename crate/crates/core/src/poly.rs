//! Integer polynomials in the counting variable q: Gaussian binomials,
//! exact Lagrange interpolation, formatting.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A polynomial in q with exact integer coefficients, ascending order,
/// trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = QPolynomial { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = QPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The monomial q^k.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        QPolynomial { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn add(&self, other: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        QPolynomial::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &QPolynomial) -> QPolynomial {
        if self.is_zero() || other.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPolynomial::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_u64(&self, x: u64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

/// The Gaussian binomial `[n choose r]_q` as an integer polynomial.
pub fn qbinom(n: i64, r: i64) -> Result<QPolynomial> {
    if r < 0 || r > n {
        return Err(Error::SubspaceDimOutOfRange { r, n });
    }
    // Gaussian Pascal recurrence: [n r] = [n-1 r-1] + q^r [n-1 r].
    let n = n as usize;
    let r = r as usize;
    let mut row: Vec<QPolynomial> = vec![QPolynomial::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        for k in 0..=m.min(r) {
            let left = if k == 0 {
                QPolynomial::zero()
            } else {
                row[k - 1].clone()
            };
            let right = if k < row.len() {
                QPolynomial::monomial(k).mul(&row[k])
            } else {
                QPolynomial::zero()
            };
            next.push(left.add(&right));
        }
        row = next;
    }
    Ok(row[r].clone())
}

/// Exact polynomial through the given points (distinct x values).
///
/// Fails with `Internal` if the interpolant is not an integer polynomial;
/// the callers only interpolate counts that are.
pub fn interpolate(points: &[(BigInt, BigInt)]) -> Result<QPolynomial> {
    if points.is_empty() {
        return Ok(QPolynomial::zero());
    }
    let n = points.len();
    // Lagrange over exact rationals.
    let mut acc: Vec<BigRational> = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // numerator polynomial prod_{j != i} (x - x_j), built incrementally
        let mut num: Vec<BigRational> = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); num.len() + 1];
            let shift = BigRational::from(xj.clone());
            for (k, c) in num.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &shift;
            }
            num = next;
            denom *= BigRational::from(xi - xj);
        }
        let scale = BigRational::from(yi.clone()) / denom;
        for (k, c) in num.into_iter().enumerate() {
            acc[k] += c * &scale;
        }
    }
    let mut coeffs = Vec::with_capacity(n);
    for c in acc {
        if !c.is_integer() {
            return Err(Error::Internal(format!(
                "interpolant has non-integer coefficient {c}"
            )));
        }
        coeffs.push(c.to_integer());
    }
    Ok(QPolynomial::from_coeffs(coeffs))
}
