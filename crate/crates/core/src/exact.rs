//! Arbitrary-precision combinatorial primitives and exact polynomial
//! interpolation. Everything here is integer or rational arithmetic; there is
//! no floating point anywhere in this crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Stirling number of the second kind S(a, b): partitions of an a-set into b
/// nonempty blocks. S(0, 0) = 1, S(a, 0) = 0 for a > 0, S(a, b) = 0 for b > a.
pub fn stirling2(a: u32, b: u32) -> BigInt {
    if b > a {
        return BigInt::zero();
    }
    if a == 0 {
        return BigInt::one();
    }
    if b == 0 {
        return BigInt::zero();
    }
    // row-by-row recurrence S(i, j) = j*S(i-1, j) + S(i-1, j-1)
    let b = b as usize;
    let mut row = vec![BigInt::zero(); b + 1];
    row[0] = BigInt::one();
    for i in 1..=a {
        let hi = usize::min(i as usize, b);
        let mut next = vec![BigInt::zero(); b + 1];
        for j in 1..=hi {
            next[j] = BigInt::from(j) * &row[j] + &row[j - 1];
        }
        row = next;
    }
    row[b].clone()
}

/// Falling factorial (x)_j = x(x-1)...(x-j+1), with (x)_0 = 1.
pub fn falling(x: &BigInt, j: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..j {
        acc *= x - BigInt::from(i);
    }
    acc
}

/// Step-2 falling factorial ((x))_j = x(x-2)(x-4)...(x-2j+2), with ((x))_0 = 1.
pub fn double_falling(x: &BigInt, j: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..j {
        acc *= x - BigInt::from(2 * i);
    }
    acc
}

/// Binomial coefficient C(a, b), zero whenever a < 0, b < 0 or b > a.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut num = BigInt::one();
    for i in 0..b {
        num *= BigInt::from(a - i);
        num /= BigInt::from(i + 1);
    }
    num
}

pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Dense integer-coefficient polynomial in one variable t.
///
/// Coefficients are stored ascending; the highest stored coefficient is
/// nonzero unless the polynomial is zero. The zero polynomial has degree -1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// Ascending coefficients, trailing zeros stripped.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of t^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, t: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Multiply by the linear factor (t + shift).
    pub fn mul_linear(&self, shift: &BigInt) -> Self {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + 1];
        for (d, c) in self.coeffs.iter().enumerate() {
            out[d + 1] += c;
            out[d] += c * shift;
        }
        IntPolynomial::from_coeffs(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (d, c) in self.coeffs.iter().enumerate() {
            out[d] += c;
        }
        for (d, c) in other.coeffs.iter().enumerate() {
            out[d] += c;
        }
        IntPolynomial::from_coeffs(out)
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Plain-text rendering in descending powers, e.g. `t^3 - 6t^2 + 12t - 8`.
    pub fn to_plain_string(&self) -> String {
        self.render(false)
    }

    /// LaTeX rendering in descending powers, e.g. `t^{3} - 6t^{2} + 12t - 8`.
    pub fn to_latex_string(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let show_coeff = d == 0 || !mag.is_one();
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            match d {
                0 => {}
                1 => out.push('t'),
                _ => {
                    if latex {
                        out.push_str(&format!("t^{{{d}}}"));
                    } else {
                        out.push_str(&format!("t^{d}"));
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl std::fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_plain_string())
    }
}

/// Lagrange interpolation through exact rationals. The abscissae must be
/// distinct and the resulting polynomial must have integer coefficients;
/// a non-integral coefficient signals bad sample points or an engine bug.
pub fn interpolate(points: &[(BigInt, BigInt)]) -> Result<IntPolynomial> {
    assert!(!points.is_empty(), "interpolate needs at least one point");
    for (i, (xi, _)) in points.iter().enumerate() {
        for (xj, _) in &points[..i] {
            if xi == xj {
                return Err(Error::DuplicateAbscissa(xi.to_string()));
            }
        }
    }
    let n = points.len();
    let mut acc = vec![BigRational::zero(); n];
    for (xi, yi) in points {
        // basis numerator prod_{j != i} (t - x_j) and denominator prod (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (xj, _) in points {
            if xj == xi {
                continue;
            }
            let xj_rat = BigRational::from_integer(xj.clone());
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * &xj_rat;
            }
            basis = next;
            denom *= BigRational::from_integer(xi - xj);
        }
        let scale = BigRational::from_integer(yi.clone()) / denom;
        for (d, c) in basis.iter().enumerate() {
            acc[d] += c * &scale;
        }
    }
    let mut coeffs = Vec::with_capacity(n);
    for (d, c) in acc.iter().enumerate() {
        if !c.is_integer() {
            return Err(Error::IntegralityViolation {
                degree: d,
                value: c.to_string(),
            });
        }
        coeffs.push(c.to_integer());
    }
    Ok(IntPolynomial::from_coeffs(coeffs))
}
