//! Remainder-pair algebra.
//!
//! `Pₙ(a, b)` is the `x`-coefficient of the remainder of `xⁿ` modulo
//! `x² − a·x − b`. It obeys `Pₙ₊₂ = a·Pₙ₊₁ + b·Pₙ` with `P₀ = 0`, `P₁ = 1`,
//! and the constant part of the remainder of `xⁿ⁺¹` is `b·Pₙ`. For
//! `f = Σ rₙxⁿ` of degree `N` this gives
//!
//! ```text
//! p(f, a, b) = Σₙ rₙ·Pₙ(a, b)
//! q(f, a, b) = b·Σ_{n≥1} rₙ·Pₙ₋₁(a, b) + r₀
//! ```
//!
//! and the chain `h_m(a, b) = Σ_{n≥m} rₙ·P_{n−m}(a, b)` with
//! `h₀ = p`, `q = b·h₁ + r₀` and `h_m = a·h_{m+1} + b·h_{m+2} + r_{m+1}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{divide_quadratic, Polynomial, QuadDivisor};

/// Intermediate magnitude that triggers rescaling in [`chain_scaled`].
const RESCALE_THRESHOLD: f64 = 1e150;

/// `Pₙ(a, b)` for `n = 0..=N`.
#[derive(Clone, Debug, PartialEq)]
pub struct PnTable {
    pub a: f64,
    pub b: f64,
    pub values: Vec<f64>,
}

impl PnTable {
    pub fn get(&self, n: usize) -> f64 {
        self.values[n]
    }
}

pub fn pn_table(a: f64, b: f64, n: usize) -> PnTable {
    PnTable {
        a,
        b,
        values: pn_values(a, b, n),
    }
}

fn pn_values(a: f64, b: f64, n: usize) -> Vec<f64> {
    let mut values = Vec::with_capacity(n + 2);
    values.push(0.0);
    values.push(1.0);
    for k in 2..=n {
        values.push(a * values[k - 1] + b * values[k - 2]);
    }
    values.truncate(n + 1);
    values
}

/// `Pₙ(|a|, −|b|)`-style magnitudes: the recurrence run on absolute values.
///
/// Bounds `|Pₙ(a, b)|` and serves as the natural floating-point error scale
/// for anything assembled from the `Pₙ`.
pub fn pn_magnitudes(a: f64, b: f64, n: usize) -> Vec<f64> {
    pn_values(a.abs(), b.abs(), n)
}

/// Remainder pair `(p, q)` from the `Pₙ` representation.
///
/// Works for any polynomial; for degree below 2 the pair is just the
/// polynomial's own coefficients.
pub fn remainder_via_representation(f: &Polynomial, a: f64, b: f64) -> (f64, f64) {
    let r = f.coeffs();
    let pn = pn_values(a, b, f.degree());
    let p: f64 = r.iter().zip(&pn).map(|(rn, pn)| rn * pn).sum();
    let q: f64 = b * r[1..].iter().zip(&pn).map(|(rn, pn)| rn * pn).sum::<f64>() + r[0];
    (p, q)
}

/// Floating-point scale of the remainder pair at `(a, b)`:
/// `Σ|rₙ|·|Pₙ| + |b|·Σ|rₙ|·|Pₙ₋₁| + |r₀|`.
pub fn remainder_scale(f: &Polynomial, a: f64, b: f64) -> f64 {
    let r = f.coeffs();
    let pn = pn_magnitudes(a, b, f.degree());
    let sp: f64 = r.iter().zip(&pn).map(|(rn, pn)| rn.abs() * pn).sum();
    let sq: f64 = r[1..].iter().zip(&pn).map(|(rn, pn)| rn.abs() * pn).sum();
    sp + b.abs() * sq + r[0].abs()
}

/// A chain value `mantissa · 2^exponent`; signs survive overflow.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledValue {
    pub mantissa: f64,
    pub exponent: i32,
}

impl ScaledValue {
    pub fn value(self) -> f64 {
        self.mantissa * 2f64.powi(self.exponent)
    }

    pub fn signum(self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa.signum()
        }
    }
}

/// `(h_m, h_{m+1})` at `(a, b)` sharing one binary exponent.
///
/// Runs the chain recurrence downward from `h_N = h_{N+1} = 0`. Whenever an
/// intermediate exceeds `1e150` both running values are divided by a power
/// of two and the exponent is carried, so only the mantissas are stored.
pub(crate) fn chain_pair_scaled(f: &Polynomial, m: usize, a: f64, b: f64) -> (f64, f64, i32) {
    let r = f.coeffs();
    let n = f.degree();
    debug_assert!(m <= n);
    // (h_k, h_{k+1}) starting at k = N
    let mut hk = 0.0;
    let mut hk1 = 0.0;
    let mut exp = 0i32;
    let mut k = n;
    while k > m {
        let next = a * hk + b * hk1 + r[k] * 2f64.powi(-exp);
        hk1 = hk;
        hk = next;
        k -= 1;
        let big = hk.abs().max(hk1.abs());
        if big > RESCALE_THRESHOLD {
            let shift = big.log2().floor() as i32;
            let s = 2f64.powi(-shift);
            hk *= s;
            hk1 *= s;
            exp += shift;
        }
    }
    (hk, hk1, exp)
}

/// `h_m(a, b)` with overflow-safe sign.
pub fn chain_scaled(f: &Polynomial, m: usize, a: f64, b: f64) -> Result<ScaledValue> {
    check_level(f, m)?;
    let (hm, _, exponent) = chain_pair_scaled(f, m, a, b);
    Ok(ScaledValue {
        mantissa: hm,
        exponent,
    })
}

/// `q = b·h₁ + r₀` with overflow-safe sign.
pub fn q_scaled(f: &Polynomial, a: f64, b: f64) -> ScaledValue {
    let (h1, _, exponent) = chain_pair_scaled(f, 1, a, b);
    ScaledValue {
        mantissa: b * h1 + f.coeff(0) * 2f64.powi(-exponent),
        exponent,
    }
}

/// `h_m(a, b)`. For monic `f` of degree `N`, `h_{N−1} ≡ 1`,
/// `h_{N−2} = a + r_{N−1}` and `h_{N−3} = a² + r_{N−1}·a + r_{N−2} + b`.
pub fn chain_eval(f: &Polynomial, m: usize, a: f64, b: f64) -> Result<f64> {
    chain_scaled(f, m, a, b).map(ScaledValue::value)
}

fn check_level(f: &Polynomial, m: usize) -> Result<()> {
    let n = f.degree();
    if n == 0 || m > n - 1 {
        return Err(Error::LevelOutOfRange {
            m,
            max: n.saturating_sub(1),
        });
    }
    Ok(())
}

/// All chain members as polynomials in `a` at a fixed `b`.
///
/// Entry `m` is `h_m(·, b)` for `m = 0..N`, i.e. the coefficient table
/// evaluated at `b`.
pub fn chain_in_a(f: &Polynomial, b: f64) -> Vec<Polynomial> {
    let r = f.coeffs();
    let n = f.degree();
    let x = Polynomial::monomial(1);
    let mut rows = vec![Polynomial::zero(); n + 2];
    for m in (0..n).rev() {
        rows[m] = x
            .multiply(&rows[m + 1])
            .add(&rows[m + 2].scale(b))
            .add(&Polynomial::constant(r[m + 1]));
    }
    rows.truncate(n);
    rows
}

/// `q(·, b) = b·h₁(·, b) + r₀` as a polynomial in `a`.
pub fn q_in_a(f: &Polynomial, b: f64) -> Polynomial {
    let h1 = if f.degree() >= 2 {
        chain_in_a(f, b).swap_remove(1)
    } else {
        Polynomial::zero()
    };
    h1.scale(b).add(&Polynomial::constant(f.coeff(0)))
}

/// The chain written as `h_m(a, b) = Σₙ s_n(m, b)·aⁿ`, each `s_n(m, ·)` a
/// polynomial in `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainCoefficientTable {
    degree: usize,
    rows: Vec<Vec<Polynomial>>,
}

impl ChainCoefficientTable {
    /// Degree `N` of the source polynomial.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients `s_0(m, ·) .. s_{N−m−1}(m, ·)` of `h_m`.
    pub fn row(&self, m: usize) -> &[Polynomial] {
        &self.rows[m]
    }

    pub fn entry(&self, m: usize, n: usize) -> &Polynomial {
        &self.rows[m][n]
    }

    /// Upper bound `⌊(N − m − 1 − n)/2⌋` on the `b`-degree of `s_n(m, ·)`.
    pub fn degree_bound(&self, m: usize, n: usize) -> usize {
        (self.degree - m - 1 - n) / 2
    }

    /// `h_m(·, b)` as a polynomial in `a`.
    pub fn at_b(&self, m: usize, b: f64) -> Polynomial {
        Polynomial::new(self.rows[m].iter().map(|s| s.eval(b)).collect())
    }

    pub fn eval(&self, m: usize, a: f64, b: f64) -> f64 {
        self.at_b(m, b).eval(a)
    }

    /// Entries whose `b`-degree exceeds the bound, as `(m, n, degree)`.
    pub fn degree_violations(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (m, row) in self.rows.iter().enumerate() {
            for (n, s) in row.iter().enumerate() {
                if !s.is_zero() && s.degree() > self.degree_bound(m, n) {
                    out.push((m, n, s.degree()));
                }
            }
        }
        out
    }
}

/// Builds the table bottom-up from `h_{N−1}` and `h_{N−2}` via the chain
/// recurrence, symbolically in `b`.
pub fn chain_coefficients(f: &Polynomial) -> Result<ChainCoefficientTable> {
    let n = f.degree();
    if n < 1 {
        return Err(Error::DegreeTooLow {
            required: 1,
            found: n,
        });
    }
    let r = f.coeffs();
    let b = Polynomial::monomial(1);
    let mut rows: Vec<Vec<Polynomial>> = vec![Vec::new(); n + 2];
    for m in (0..n).rev() {
        let len = n - m;
        let row = (0..len)
            .map(|k| {
                let mut s = if k >= 1 {
                    rows[m + 1]
                        .get(k - 1)
                        .cloned()
                        .unwrap_or_else(Polynomial::zero)
                } else {
                    Polynomial::constant(r[m + 1])
                };
                if let Some(below) = rows[m + 2].get(k) {
                    s = s.add(&b.multiply(below));
                }
                s
            })
            .collect();
        rows[m] = row;
    }
    rows.truncate(n);
    Ok(ChainCoefficientTable { degree: n, rows })
}

/// Checks `q(x^{n+1}) = b·Pₙ` against long division for `n < N` at
/// `samples` pseudo-random points `(a, b) ∈ [−5, 5]²`.
pub fn q_shift_identity_check(n_max: usize, samples: usize) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    (0..samples).all(|_| {
        let a = rng.gen_range(-5.0..5.0);
        let b = rng.gen_range(-5.0..5.0);
        q_shift_holds(n_max, a, b, 1e-12)
    })
}

pub(crate) fn q_shift_holds(n_max: usize, a: f64, b: f64, rel_tol: f64) -> bool {
    let pn = pn_table(a, b, n_max);
    let mags = pn_magnitudes(a, b, n_max + 1);
    (0..n_max).all(|n| {
        let q = if n + 1 < 2 {
            0.0
        } else {
            match divide_quadratic(&Polynomial::monomial(n + 1), QuadDivisor::new(a, b)) {
                Ok(r) => r.q,
                Err(_) => return false,
            }
        };
        let expected = b * pn.get(n);
        (q - expected).abs() <= rel_tol * (1.0 + b.abs() * mags[n] + mags[n + 1])
    })
}
