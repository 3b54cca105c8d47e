//! Closed-form characteristic polynomials used as independent cross-checks:
//! braid, Shi, Catalan, and Seo's Shi-threshold / Catalan-threshold formulas.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, stirling2, IntPolynomial};

/// prod_{i=0}^{j-1} (t + offset - i), the falling factorial (t + offset)_j
/// as a polynomial in t.
fn falling_factorial_poly(offset: i64, j: u32) -> IntPolynomial {
    let mut p = IntPolynomial::from_i64(&[1]);
    for i in 0..j as i64 {
        p = p.mul_linear(&BigInt::from(offset - i));
    }
    p
}

/// chi of the braid arrangement: t(t-1)...(t-n+1); regions n!.
pub fn chi_braid(n: u32) -> IntPolynomial {
    assert!(n >= 1);
    let mut p = IntPolynomial::from_i64(&[0, 1]);
    for i in 1..n as i64 {
        p = p.mul_linear(&BigInt::from(-i));
    }
    p
}

/// chi of the Shi arrangement: t(t-n)^{n-1}; regions (n+1)^{n-1}.
pub fn chi_shi(n: u32) -> IntPolynomial {
    assert!(n >= 1);
    let mut p = IntPolynomial::from_i64(&[0, 1]);
    for _ in 1..n {
        p = p.mul_linear(&BigInt::from(-(n as i64)));
    }
    p
}

/// chi of the Catalan arrangement: t(t-n-1)(t-n-2)...(t-2n+1); regions n!·C_n.
pub fn chi_catalan(n: u32) -> IntPolynomial {
    assert!(n >= 1);
    let mut p = IntPolynomial::from_i64(&[0, 1]);
    for i in n as i64 + 1..=2 * n as i64 - 1 {
        p = p.mul_linear(&BigInt::from(-i));
    }
    p
}

/// Seo's closed form for the Shi threshold arrangement ST_n = T_{n,1,0}:
/// three Stirling-weighted falling-factorial sums. Terms with j > n vanish
/// through S(., j) = 0, so the j-sums are truncated there.
pub fn chi_seo_st(n: u32) -> IntPolynomial {
    assert!(n >= 2);
    let mut total = IntPolynomial::zero();
    for j in 0..=n {
        let w = stirling2(n, j);
        total = total.add(&falling_factorial_poly(-(j as i64) - 1, j).scale(&w));
    }
    for j in 0..n {
        let w = BigInt::from(2 * n) * stirling2(n - 1, j);
        total = total.add(&falling_factorial_poly(-(j as i64) - 2, j).scale(&w));
    }
    for j in 0..=n - 2 {
        let w = BigInt::from(n) * BigInt::from(n - 1) * stirling2(n - 2, j);
        total = total.add(&falling_factorial_poly(-(j as i64) - 3, j).scale(&w));
    }
    total
}

fn s_ratio(n: i64, k: i64) -> BigRational {
    // s_{n,k} = k!/n! * S(n,k); zero outside 0 <= k <= n
    if n < 0 || k < 0 || k > n {
        return BigRational::zero();
    }
    BigRational::new(
        factorial(k as u32) * stirling2(n as u32, k as u32),
        factorial(n as u32),
    )
}

/// The rational alpha_{n,k,l} weight from Seo's Catalan-threshold formula.
pub fn alpha(n: i64, k: i64, l: i64) -> BigRational {
    if (n, k, l) == (0, 0, 0) || (n, k, l) == (1, 0, 0) {
        return BigRational::one();
    }
    let b = |a: i64, b: i64| BigRational::from_integer(binomial(a, b));
    let two = BigRational::from_integer(BigInt::from(2));
    b(k - 1, l - 1) * s_ratio(n, k)
        + b(k - 2, l - 1) * s_ratio(n - 1, k - 1)
        + &two * b(k - 1, l) * s_ratio(n - 1, k - 1)
        + &two * b(k - 2, l) * s_ratio(n - 2, k - 2)
}

/// Seo's closed form for the Catalan threshold arrangement CT_n = T_{n,1,1}:
/// n! sum over k, l of alpha_{n,k,l} ((t-2k-1))_l / l!. The intermediates are
/// rational; the assembled coefficients must come out integral.
pub fn chi_seo_ct(n: u32) -> Result<IntPolynomial> {
    assert!(n >= 2);
    let nf = BigRational::from_integer(factorial(n));
    let mut acc: Vec<BigRational> = vec![BigRational::zero()];
    for k in 0..=n as i64 {
        for l in 0..=k {
            let a = alpha(n as i64, k, l);
            if a.is_zero() {
                continue;
            }
            // ((t - 2k - 1))_l as a rational-coefficient polynomial
            let mut term: Vec<BigRational> = vec![BigRational::one()];
            for i in 0..l {
                let shift = BigRational::from_integer(BigInt::from(-2 * k - 1 - 2 * i));
                let mut next = vec![BigRational::zero(); term.len() + 1];
                for (d, c) in term.iter().enumerate() {
                    next[d + 1] += c;
                    next[d] += c * &shift;
                }
                term = next;
            }
            let scale = &nf * a / BigRational::from_integer(factorial(l as u32));
            if acc.len() < term.len() {
                acc.resize(term.len(), BigRational::zero());
            }
            for (d, c) in term.iter().enumerate() {
                acc[d] += c * &scale;
            }
        }
    }
    let mut coeffs = Vec::with_capacity(acc.len());
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
