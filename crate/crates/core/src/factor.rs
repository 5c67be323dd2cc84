//! Complete real factorization by repeated quadratic extraction.
//!
//! Every monic polynomial of degree at least 3 has a monic quadratic factor
//! `x² − A·x − B`; [`extract_quadratic`] finds one with the interlacing
//! construction (`b₀` search, predicate bisection, Bairstow refinement),
//! and [`factor_completely`] deflates by it until degree 2 or less remains.
//! Linear factors only appear when an extracted quadratic, or the final
//! remainder, splits over the reals.

use crate::chain::remainder_scale;
use crate::continuation::{
    bairstow_refine_with, find_transition, find_transition_between, find_transition_excluding,
    RefineOptions, TransitionResult,
};
use crate::error::{Error, Result, Stage};
use crate::interlace::{find_b0, full_interlace};
use crate::json;
use crate::poly::{divide_quadratic, Polynomial, QuadDivisor};

/// Division residual accepted for an extracted factor, relative to
/// `1 + max|rₙ|`. Residuals at the rounding floor of the division are
/// accepted as well.
pub const EXTRACT_REL_TOL: f64 = 1e-8;

/// Residual accepted for a factor whose refinement stalled.
pub const DEGENERATE_REL_TOL: f64 = 1e-6;

/// Reconstruction residual above which the factors are re-polished against
/// the original polynomial, relative to `|leading|·(1 + max|rₙ|)`.
pub const POLISH_REL_TOL: f64 = 1e-10;

/// Relative residual `|f(x)| / Σ|cₖ|·|x|ᵏ` a polished real root must reach.
const ROOT_REL_TOL: f64 = 1e-9;

const ROOT_NEWTON_ITER: usize = 50;

/// Transitions skipped toward `b = 0` before giving up on the march.
const MAX_RESUMES: usize = 16;

/// Interior probe points used when the first transition does not refine.
const FALLBACK_PROBES: usize = 16;

/// The factor `x² − a·x − b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadFactor {
    pub a: f64,
    pub b: f64,
    /// Refinement stalled (typically a repeated factor) and the factor was
    /// accepted on residual alone.
    pub degenerate: bool,
}

impl QuadFactor {
    pub fn new(a: f64, b: f64) -> Self {
        QuadFactor {
            a,
            b,
            degenerate: false,
        }
    }

    /// `a² + 4b`; negative iff the factor has no real roots.
    pub fn discriminant(&self) -> f64 {
        self.a * self.a + 4.0 * self.b
    }

    pub fn is_irreducible(&self) -> bool {
        self.discriminant() < 0.0
    }

    pub fn polynomial(&self) -> Polynomial {
        Polynomial::quadratic(self.a, self.b)
    }

    /// Real roots when the discriminant is non-negative.
    pub fn split(&self) -> Option<(f64, f64)> {
        let disc = self.discriminant();
        if disc < 0.0 {
            return None;
        }
        let d = disc.sqrt();
        let big = 0.5 * (self.a + if self.a >= 0.0 { d } else { -d });
        if big == 0.0 {
            return Some((0.0, 0.0));
        }
        // product of roots is −b
        let small = -self.b / big;
        Some((big.min(small), big.max(small)))
    }
}

/// `leading · Π(x − c) · Π(x² − A·x − B)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub leading: f64,
    /// Ascending.
    pub linear_roots: Vec<f64>,
    /// Irreducible quadratics, in extraction order.
    pub quadratics: Vec<QuadFactor>,
    /// Max coefficient deviation of the reconstruction from the input.
    pub residual: f64,
    /// Every quadratic produced by extraction (and the final degree-2
    /// remainder), before splitting reducible ones.
    pub extracted: Vec<QuadFactor>,
}

impl Factorization {
    pub fn reconstruct(&self) -> Polynomial {
        let linear = Polynomial::from_roots(&self.linear_roots);
        self.quadratics
            .iter()
            .fold(linear, |acc, q| acc.multiply(&q.polynomial()))
            .scale(self.leading)
    }

    pub fn degree(&self) -> usize {
        self.linear_roots.len() + 2 * self.quadratics.len()
    }

    /// `{"leading":…,"linear":[…],"quadratic":[{"a":…,"b":…}…],"residual":…}`
    pub fn to_json(&self) -> String {
        let quads: Vec<String> = self
            .quadratics
            .iter()
            .map(|q| json::ab_object(q.a, q.b))
            .collect();
        format!(
            "{{\"leading\":{},\"linear\":{},\"quadratic\":[{}],\"residual\":{}}}",
            json::number(self.leading),
            json::array(self.linear_roots.iter().copied()),
            quads.join(","),
            json::number(self.residual),
        )
    }
}

/// Max coefficient deviation between the product of the factors and `f`.
pub fn verify_factorization(fact: &Factorization, f: &Polynomial) -> f64 {
    let g = fact.reconstruct();
    let len = g.coeffs().len().max(f.coeffs().len());
    (0..len)
        .map(|n| (g.coeff(n) - f.coeff(n)).abs())
        .fold(0.0, f64::max)
}

fn division_residual(f: &Polynomial, a: f64, b: f64) -> f64 {
    divide_quadratic(f, QuadDivisor::new(a, b))
        .map(|r| r.p.abs() + r.q.abs())
        .unwrap_or(f64::INFINITY)
}

/// Newton on `f` from `x0`. Returns the iterate with the smallest relative
/// residual `|f(x)| / Σ|cₖ|·|x|ᵏ` together with that residual.
fn polish_root(f: &Polynomial, x0: f64) -> (f64, f64) {
    let df = f.derivative();
    let abs = Polynomial::new(f.coeffs().iter().map(|c| c.abs()).collect());
    let rel = |x: f64| f.eval(x).abs() / abs.eval(x.abs()).max(f64::MIN_POSITIVE);
    let mut best = (x0, rel(x0));
    let mut x = x0;
    for _ in 0..ROOT_NEWTON_ITER {
        let d = df.eval(x);
        if d == 0.0 || !d.is_finite() {
            break;
        }
        let step = f.eval(x) / d;
        x -= step;
        if !x.is_finite() {
            break;
        }
        let e = rel(x);
        if e < best.1 {
            best = (x, e);
        }
        if step.abs() <= 2.0 * f64::EPSILON * x.abs() {
            break;
        }
    }
    best
}

/// Second opinion on a factor whose residual only reached the rounding
/// floor. Real roots of very different size hide each other in `(p, q)`, so
/// each root is polished on `f` and must be a root on its own.
fn confirm_at_floor(f: &Polynomial, q: QuadFactor) -> Option<QuadFactor> {
    let Some((r1, r2)) = q.split() else {
        return Some(q);
    };
    let (x1, e1) = polish_root(f, r1);
    let (x2, e2) = polish_root(f, r2);
    let distinct = (x1 - x2).abs() > 1e-8 * (x1.abs() + x2.abs());
    (e1 <= ROOT_REL_TOL && e2 <= ROOT_REL_TOL && distinct)
        .then(|| QuadFactor::new(x1 + x2, -(x1 * x2)))
}

/// Refines from each seed; returns the first accepted factor, or the best
/// degenerate candidate, or the last refinement error.
fn refine_seeds(f: &Polynomial, seeds: &[(f64, f64)]) -> Result<QuadFactor> {
    let scale = 1.0 + f.max_abs_coeff();
    let opts = RefineOptions::default();
    let mut degenerate: Option<(f64, QuadFactor)> = None;
    let mut last_err = None;
    for &(a0, b0) in seeds {
        let (a, b) = match bairstow_refine_with(f, a0, b0, &opts) {
            Ok(r) => {
                let res = division_residual(f, r.a, r.b);
                if res <= EXTRACT_REL_TOL * scale {
                    return Ok(QuadFactor::new(r.a, r.b));
                }
                let floor = 8.0 * f64::EPSILON * remainder_scale(f, r.a, r.b);
                if res <= floor {
                    if let Some(q) = confirm_at_floor(f, QuadFactor::new(r.a, r.b)) {
                        return Ok(q);
                    }
                }
                last_err = Some(Error::ResidualTooLarge {
                    residual: res,
                    tolerance: EXTRACT_REL_TOL * scale,
                });
                (r.a, r.b)
            }
            Err(e) => {
                let at = match e {
                    Error::SingularJacobian { a, b } | Error::NoConvergence { a, b, .. } => (a, b),
                    _ => (a0, b0),
                };
                last_err = Some(e);
                at
            }
        };
        let res = division_residual(f, a, b);
        if res <= DEGENERATE_REL_TOL * scale && degenerate.is_none_or(|(best, _)| res < best) {
            degenerate = Some((
                res,
                QuadFactor {
                    a,
                    b,
                    degenerate: true,
                },
            ));
        }
    }
    match (degenerate, last_err) {
        (Some((_, q)), _) => Ok(q),
        (None, Some(e)) => Err(e),
        (None, None) => Err(Error::NoTransition { b_hi: 0.0 }),
    }
}

/// A monic quadratic factor `x² − A·x − B` of a monic `f` with degree ≥ 3.
///
/// Runs the `b₀` search, the predicate bisection toward `b = 0` and the
/// Bairstow refinement from the collapsing pair. When no seed at the first
/// transition refines, the interlacing predicate is probed on a grid below
/// it to bracket an earlier transition. Errors carry the failing [`Stage`].
pub fn extract_quadratic(f: &Polynomial) -> Result<QuadFactor> {
    let n = f.degree();
    if n < 3 {
        return Err(Error::DegreeTooLow {
            required: 3,
            found: n,
        });
    }
    if !f.is_monic() {
        return Err(Error::NotMonic {
            leading: f.leading(),
        });
    }
    let b0 = find_b0(f).map_err(Error::at(Stage::BaseSearch))?;
    let t = find_transition(f, b0).map_err(Error::at(Stage::Transition))?;
    let first_err = match refine_seeds(f, &seeds_of(&t)) {
        Ok(q) => return Ok(q),
        Err(e) => e,
    };

    // march on toward b = 0, ignoring gaps whose collapse did not refine
    let mut excluded = vec![t.collapsed_pair_index];
    let mut lo = t.b_lo_final;
    for _ in 0..MAX_RESUMES {
        let Some(start) = resume_above(f, lo, &excluded) else {
            break;
        };
        let Ok(next) = find_transition_excluding(f, start, 0.0, &excluded) else {
            break;
        };
        if let Ok(q) = refine_seeds(f, &seeds_of(&next)) {
            return Ok(q);
        }
        excluded.push(next.collapsed_pair_index);
        lo = next.b_lo_final;
    }

    // then look for an earlier transition below the first one
    let mut last_ok = Some(b0);
    for k in 1..FALLBACK_PROBES {
        let b = b0 + (t.b_lo_final - b0) * k as f64 / FALLBACK_PROBES as f64;
        let ok = full_interlace(f, b)
            .map(|r| r.ok)
            .map_err(Error::at(Stage::Transition))?;
        if ok {
            last_ok = Some(b);
            continue;
        }
        if let Some(lo) = last_ok.take() {
            if let Ok(t2) = find_transition_between(f, lo, b) {
                if let Ok(q) = refine_seeds(f, &seeds_of(&t2)) {
                    return Ok(q);
                }
            }
        }
    }
    Err(Error::at(Stage::Refinement)(first_err))
}

fn seeds_of(t: &TransitionResult) -> Vec<(f64, f64)> {
    t.candidates.iter().map(|&a| (a, t.b)).collect()
}

/// First `b = b_lo·(1 − δ)`, `δ = 10⁻³, 2·10⁻³, …` below 1, at which the
/// predicate with `excluded` gaps ignored holds.
fn resume_above(f: &Polynomial, b_lo: f64, excluded: &[usize]) -> Option<f64> {
    let mut delta = 1e-3;
    while delta < 1.0 {
        let b = b_lo * (1.0 - delta);
        if full_interlace(f, b).is_ok_and(|r| r.ok_excluding(excluded)) {
            return Some(b);
        }
        delta *= 2.0;
    }
    None
}

/// Factors `f` (degree ≥ 1) into its leading coefficient, real linear
/// factors and irreducible quadratics.
pub fn factor_completely(f: &Polynomial) -> Result<Factorization> {
    let n = f.degree();
    if n < 1 {
        return Err(Error::DegreeTooLow {
            required: 1,
            found: n,
        });
    }
    let (leading, monic) = f.normalize_monic();

    let mut zeros = 0;
    let mut coeffs = monic.coeffs().to_vec();
    while coeffs.len() > 1 && coeffs[0] == 0.0 {
        coeffs.remove(0);
        zeros += 1;
    }
    let base = Polynomial::new(coeffs);

    let mut fact = Factorization {
        leading,
        linear_roots: vec![0.0; zeros],
        quadratics: Vec::new(),
        residual: 0.0,
        extracted: Vec::new(),
    };

    let mut g = base.clone();
    while g.degree() >= 3 {
        match extract_quadratic(&g) {
            Ok(q) => {
                fact.extracted.push(q);
                g = deflate(&g, q);
            }
            Err(e) => {
                let mut partial = fact;
                finish(&mut partial, &g, f);
                return Err(Error::Incomplete {
                    partial: Box::new(partial),
                    source: Box::new(e),
                });
            }
        }
    }
    finish(&mut fact, &g, f);

    let tol = POLISH_REL_TOL * leading.abs() * (1.0 + f.max_abs_coeff());
    if fact.residual > tol && !fact.extracted.is_empty() {
        let polished = polish(&base, &fact.extracted, zeros, leading, f);
        if polished.residual < fact.residual {
            fact = polished;
        }
    }
    Ok(fact)
}

/// Quotient of `g` by the factor, forced monic.
///
/// Composite deflation: the quotient is computed both from the top
/// (synthetic division) and from the constant term, and the two are joined
/// at the coefficient where they agree best. The top-down sweep amplifies
/// rounding by the larger root of the factor per step and the bottom-up
/// sweep by the inverse of the smaller one, so each is kept where it is
/// accurate.
fn deflate(g: &Polynomial, q: QuadFactor) -> Polynomial {
    let mut top = divide_quadratic(g, QuadDivisor::new(q.a, q.b))
        .expect("degree checked by caller")
        .quotient
        .into_coeffs();
    let len = top.len();
    top[len - 1] = 1.0;
    if q.b == 0.0 || len < 2 {
        return Polynomial::new(top);
    }

    // g = (x² − a·x − b)·quotient, solved upward from the constant term
    let gc = g.coeffs();
    let mut bot = vec![0.0; len];
    for k in 0..len {
        let mut t = gc[k];
        if k >= 1 {
            t += q.a * bot[k - 1];
        }
        if k >= 2 {
            t -= bot[k - 2];
        }
        bot[k] = -t / q.b;
    }

    let split = (0..len)
        .min_by(|&i, &j| {
            let mismatch = |k: usize| {
                let d = (top[k] - bot[k]).abs();
                let s = top[k].abs() + bot[k].abs();
                if s == 0.0 {
                    0.0
                } else {
                    d / s
                }
            };
            mismatch(i).total_cmp(&mismatch(j))
        })
        .expect("nonempty quotient");
    let mut c = bot[..split].to_vec();
    c.extend_from_slice(&top[split..]);
    Polynomial::new(c)
}

/// Handles the degree ≤ 2 remainder `tail`, splits reducible quadratics
/// and records the residual against `f`.
fn finish(fact: &mut Factorization, tail: &Polynomial, f: &Polynomial) {
    match tail.degree() {
        1 => fact.linear_roots.push(-tail.coeff(0)),
        2 => fact
            .extracted
            .push(QuadFactor::new(-tail.coeff(1), -tail.coeff(0))),
        _ => {}
    }
    for q in &fact.extracted {
        match q.split() {
            Some((r1, r2)) => fact.linear_roots.extend([r1, r2]),
            None => fact.quadratics.push(*q),
        }
    }
    fact.linear_roots.sort_by(f64::total_cmp);
    // an unfactored tail of degree ≥ 3 means the factorization is partial
    fact.residual = if tail.degree() < 3 {
        verify_factorization(fact, f)
    } else {
        f64::INFINITY
    };
}

/// Re-refines every extracted quadratic against the undeflated `base` and
/// rebuilds the factorization.
fn polish(
    base: &Polynomial,
    extracted: &[QuadFactor],
    zeros: usize,
    leading: f64,
    f: &Polynomial,
) -> Factorization {
    let opts = RefineOptions::default();
    let mut polished = Vec::with_capacity(extracted.len());
    let mut g = base.clone();
    for q in extracted {
        if g.degree() == 2 {
            // last factor: take the exact remaining quotient
            polished.push(QuadFactor::new(-g.coeff(1), -g.coeff(0)));
            g = Polynomial::constant(1.0);
            break;
        }
        let r = if q.degenerate {
            *q
        } else {
            match bairstow_refine_with(base, q.a, q.b, &opts) {
                Ok(r) => QuadFactor::new(r.a, r.b),
                Err(_) => *q,
            }
        };
        polished.push(r);
        g = deflate(&g, r);
    }
    let mut fact = Factorization {
        leading,
        linear_roots: vec![0.0; zeros],
        quadratics: Vec::new(),
        residual: 0.0,
        extracted: polished,
    };
    finish(&mut fact, &g, f);
    fact
}
