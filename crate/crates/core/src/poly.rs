//! Dense real polynomials in ascending-power storage.
//!
//! Besides the usual ring operations this module provides the division by
//! the monic quadratic `x² − a·x − b` that produces the remainder pair
//! `(p, q)` of `f = (x² − a·x − b)·quotient + p·x + q`, and the Fujiwara
//! inclusion radius for real roots.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Dense univariate polynomial with `f64` coefficients.
///
/// `coeffs()[n]` is the coefficient of `xⁿ`. Trailing (leading-power) zeros
/// are trimmed on construction, so the leading coefficient of a non-constant
/// polynomial is always nonzero. The zero polynomial is stored as `[0]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Polynomial { coeffs }
    }

    /// Like [`Polynomial::new`] but rejects NaN and infinite coefficients.
    pub fn try_new(coeffs: Vec<f64>) -> Result<Self> {
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self::new(coeffs))
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![0.0] }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `xⁿ`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![0.0; n + 1];
        coeffs[n] = 1.0;
        Polynomial { coeffs }
    }

    /// `x² − a·x − b`.
    pub fn quadratic(a: f64, b: f64) -> Self {
        Self::new(vec![-b, -a, 1.0])
    }

    /// `Π (x − rᵢ)`.
    pub fn from_roots(roots: &[f64]) -> Self {
        roots.iter().fold(Self::constant(1.0), |acc, &r| {
            acc.multiply(&Self::new(vec![-r, 1.0]))
        })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    /// Coefficient of `xⁿ`, zero beyond the degree.
    pub fn coeff(&self, n: usize) -> f64 {
        self.coeffs.get(n).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0.0
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1.0
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, &c)| n as f64 * c)
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|n| self.coeff(n) + other.coeff(n)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|n| self.coeff(n) - other.coeff(n)).collect())
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn multiply(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            for (j, &y) in other.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Self::new(out)
    }

    /// Splits off the leading coefficient: returns `(lc, self / lc)`.
    ///
    /// The zero polynomial is returned unchanged with `lc = 0`.
    pub fn normalize_monic(&self) -> (f64, Self) {
        let lc = self.leading();
        if self.is_zero() {
            return (0.0, self.clone());
        }
        let mut coeffs: Vec<f64> = self.coeffs.iter().map(|c| c / lc).collect();
        let last = coeffs.len() - 1;
        coeffs[last] = 1.0;
        (lc, Self::new(coeffs))
    }

    /// General long division `self = divisor·quotient + remainder`.
    ///
    /// Panics if `divisor` is the zero polynomial.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree();
        if self.degree() < dd {
            return (Self::zero(), self.clone());
        }
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0.0; self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let t = rem[k + dd] / lc;
            quot[k] = t;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= t * d;
            }
            rem[k + dd] = 0.0;
        }
        rem.truncate(dd.max(1));
        (Self::new(quot), Self::new(rem))
    }
}

impl fmt::Display for Polynomial {
    /// Comma-separated ascending coefficients, the wire format of the CLI.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.multiply(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

/// The divisor `x² − a·x − b`.
///
/// Note the sign convention: the classic Bairstow divisor `x² + u·x + v`
/// corresponds to `a = −u`, `b = −v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadDivisor {
    pub a: f64,
    pub b: f64,
}

impl QuadDivisor {
    pub fn new(a: f64, b: f64) -> Self {
        QuadDivisor { a, b }
    }

    pub fn to_polynomial(self) -> Polynomial {
        Polynomial::quadratic(self.a, self.b)
    }
}

/// `f = (x² − a·x − b)·quotient + p·x + q`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadDivResult {
    pub quotient: Polynomial,
    pub p: f64,
    pub q: f64,
}

impl QuadDivResult {
    /// Multiplies back: `(x² − a·x − b)·quotient + p·x + q`.
    pub fn reconstruct(&self, d: QuadDivisor) -> Polynomial {
        d.to_polynomial()
            .multiply(&self.quotient)
            .add(&Polynomial::new(vec![self.q, self.p]))
    }
}

/// Synthetic division by `x² − a·x − b`, rewriting `x² → a·x + b` from the
/// top power down.
pub fn divide_quadratic(f: &Polynomial, d: QuadDivisor) -> Result<QuadDivResult> {
    let n = f.degree();
    if n < 2 {
        return Err(Error::DegreeTooLow {
            required: 2,
            found: n,
        });
    }
    let mut c = f.coeffs().to_vec();
    let mut quotient = vec![0.0; n - 1];
    for k in (2..=n).rev() {
        let t = c[k];
        quotient[k - 2] = t;
        c[k - 1] += d.a * t;
        c[k - 2] += d.b * t;
    }
    Ok(QuadDivResult {
        quotient: Polynomial::new(quotient),
        p: c[1],
        q: c[0],
    })
}

/// Fujiwara bound `2·max |sₙ|^{1/(N−n)}` of the monic normalization of `g`.
///
/// Every real root of `g` lies in `[−bound, bound]`. Constants other than
/// zero have no roots and get bound 0.
pub fn fujiwara_bound(g: &Polynomial) -> Result<f64> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = g.degree();
    let lc = g.leading();
    let max = g.coeffs()[..n]
        .iter()
        .enumerate()
        .map(|(k, &c)| (c / lc).abs().powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max);
    Ok(2.0 * max)
}
