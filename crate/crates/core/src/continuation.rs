//! Continuation in `b` from an interlacing base point up to the boundary of
//! the interlacing set, and Newton (Bairstow) refinement of the common root
//! `(A, B)` of `p` and `q` found there.
//!
//! Along `b → 0⁻` the predicate "`p` and `q` interlace" starts true at `b₀`
//! and is false near `0` (for `r₀ ≠ 0`, `q` has no roots there). Bisection
//! on the predicate pins down a boundary point; at such a point a `p`-root
//! and a `q`-root meet, and their midpoint together with the boundary `b`
//! seeds the refinement.

use crate::chain::{remainder_scale, remainder_via_representation};
use crate::error::{Error, Result};
use crate::interlace::{full_interlace, full_interlace_with, Gap};
use crate::isolate::IsolationOptions;
use crate::poly::Polynomial;

/// Bisection stops once the bracket on `b` is below this times `1 + |b_start|`.
pub const TRANSITION_REL_WIDTH: f64 = 1e-13;
pub const TRANSITION_MAX_ITER: usize = 200;

/// How the interlacing failed at the transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransitionKind {
    /// A `p`-root and a `q`-root meet: the last interlacing gap is within
    /// ten tie thresholds.
    Collision,
    /// The predicate flipped while all gaps were still open, i.e. a root
    /// count was lost rather than a pair colliding.
    CountLoss,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransitionResult {
    /// Seed for the common root in `a`: midpoint of the narrowest gap.
    pub a: f64,
    /// Seed for the common root in `b`: the last interlacing `b`.
    pub b: f64,
    /// Last `b` where the predicate held.
    pub b_lo_final: f64,
    /// First `b` above it where the predicate failed.
    pub b_hi_final: f64,
    /// Index into the merged gap list `(p₀,q₀), (p₁,q₀), (p₁,q₁), …`.
    pub collapsed_pair_index: usize,
    /// `|p| + |q|` at `(a, b)`.
    pub residual: f64,
    pub kind: TransitionKind,
    /// Midpoints of every gap within 2× of the narrowest, narrowest first.
    pub candidates: Vec<f64>,
    pub min_gap: f64,
    pub gap_tol: f64,
}

pub fn find_transition(f: &Polynomial, b_start: f64) -> Result<TransitionResult> {
    find_transition_between(f, b_start, 0.0)
}

/// Predicate bisection on `(p, q)` interlacing between `b_start` (must
/// interlace) and `b_end > b_start` (taken as non-interlacing without
/// evaluation).
pub fn find_transition_between(
    f: &Polynomial,
    b_start: f64,
    b_end: f64,
) -> Result<TransitionResult> {
    find_transition_excluding(f, b_start, b_end, &[])
}

/// [`find_transition_between`] with the predicate
/// [`InterlaceReport::ok_excluding`]: the listed merged-gap indices may
/// close up without ending the march.
pub fn find_transition_excluding(
    f: &Polynomial,
    b_start: f64,
    b_end: f64,
    excluded: &[usize],
) -> Result<TransitionResult> {
    let mut lo_report = full_interlace(f, b_start)?;
    if b_start.is_nan() || b_start >= 0.0 || !lo_report.ok_excluding(excluded) {
        return Err(Error::NotInterlacing { b: b_start });
    }
    let width = TRANSITION_REL_WIDTH * (1.0 + b_start.abs());
    let (mut lo, mut hi) = (b_start, b_end);
    let mut moved_hi = false;
    for _ in 0..TRANSITION_MAX_ITER {
        if hi - lo <= width {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let report = full_interlace(f, mid)?;
        if report.ok_excluding(excluded) {
            lo = mid;
            lo_report = report;
        } else {
            hi = mid;
            moved_hi = true;
        }
    }
    if !moved_hi && b_end == 0.0 {
        return Err(Error::NoTransition { b_hi: hi });
    }

    let gaps = lo_report.gaps();
    let (index, narrowest) = gaps
        .iter()
        .enumerate()
        .filter(|(i, _)| !excluded.contains(i))
        .min_by(|x, y| x.1.width().total_cmp(&y.1.width()))
        .map(|(i, g)| (i, *g))
        .ok_or(Error::NoTransition { b_hi: hi })?;
    let mut close: Vec<Gap> = gaps
        .iter()
        .enumerate()
        .filter(|(i, g)| !excluded.contains(i) && g.width() <= 2.0 * narrowest.width())
        .map(|(_, g)| *g)
        .collect();
    close.sort_by(|x, y| x.width().total_cmp(&y.width()));

    let a = narrowest.midpoint();
    let (p, q) = remainder_via_representation(f, a, lo);
    let kind = if narrowest.width() <= 10.0 * lo_report.gap_tol {
        TransitionKind::Collision
    } else {
        TransitionKind::CountLoss
    };
    Ok(TransitionResult {
        a,
        b: lo,
        b_lo_final: lo,
        b_hi_final: hi,
        collapsed_pair_index: index,
        residual: p.abs() + q.abs(),
        kind,
        candidates: close.iter().map(Gap::midpoint).collect(),
        min_gap: narrowest.width(),
        gap_tol: lo_report.gap_tol,
    })
}

/// `(p, q)` at `(a, b)` with all four partial derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RemainderJacobian {
    pub p: f64,
    pub q: f64,
    pub dp_da: f64,
    pub dp_db: f64,
    pub dq_da: f64,
    pub dq_db: f64,
}

impl RemainderJacobian {
    pub fn residual(&self) -> f64 {
        self.p.abs() + self.q.abs()
    }

    pub fn determinant(&self) -> f64 {
        self.dp_da * self.dq_db - self.dp_db * self.dq_da
    }
}

/// Differentiates the `Pₙ` recurrence:
/// `∂Pₙ₊₂/∂a = Pₙ₊₁ + a·∂Pₙ₊₁/∂a + b·∂Pₙ/∂a` and
/// `∂Pₙ₊₂/∂b = Pₙ + a·∂Pₙ₊₁/∂b + b·∂Pₙ/∂b`, both zero at `n = 0, 1`.
pub fn remainder_jacobian(f: &Polynomial, a: f64, b: f64) -> RemainderJacobian {
    let r = f.coeffs();
    let n = f.degree();
    let mut pn = vec![0.0; n + 2];
    let mut da = vec![0.0; n + 2];
    let mut db = vec![0.0; n + 2];
    pn[1] = 1.0;
    for k in 2..=n {
        pn[k] = a * pn[k - 1] + b * pn[k - 2];
        da[k] = pn[k - 1] + a * da[k - 1] + b * da[k - 2];
        db[k] = pn[k - 2] + a * db[k - 1] + b * db[k - 2];
    }
    let dot = |v: &[f64]| r.iter().zip(v).map(|(x, y)| x * y).sum::<f64>();
    let dot_shift = |v: &[f64]| r[1..].iter().zip(v).map(|(x, y)| x * y).sum::<f64>();
    let s = dot_shift(&pn);
    RemainderJacobian {
        p: dot(&pn),
        q: b * s + r[0],
        dp_da: dot(&da),
        dp_db: dot(&db),
        dq_da: b * dot_shift(&da),
        dq_db: s + b * dot_shift(&db),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RefineOptions {
    /// Converged once `|p| + |q| ≤ tol·(1 + max|rₙ|)`.
    pub tol: f64,
    pub max_iter: usize,
    /// Step halvings allowed per iteration.
    pub max_halvings: u32,
}

impl Default for RefineOptions {
    fn default() -> Self {
        RefineOptions {
            tol: 1e-12,
            max_iter: 100,
            max_halvings: 30,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Refined {
    pub a: f64,
    pub b: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Rounding floor of `|p| + |q|` at `(a, b)`.
fn residual_floor(f: &Polynomial, a: f64, b: f64) -> f64 {
    8.0 * f64::EPSILON * remainder_scale(f, a, b)
}

/// Damped Newton iteration on `(a, b) ↦ (p, q)`.
///
/// Stops when the residual reaches `tol·(1 + max|rₙ|)` or, failing that,
/// the rounding floor of the remainder evaluation.
pub fn bairstow_refine(
    f: &Polynomial,
    a0: f64,
    b0: f64,
    tol: f64,
    max_iter: usize,
) -> Result<Refined> {
    bairstow_refine_with(
        f,
        a0,
        b0,
        &RefineOptions {
            tol,
            max_iter,
            ..RefineOptions::default()
        },
    )
}

pub fn bairstow_refine_with(
    f: &Polynomial,
    a0: f64,
    b0: f64,
    opts: &RefineOptions,
) -> Result<Refined> {
    let target = opts.tol * (1.0 + f.max_abs_coeff());
    let (mut a, mut b) = (a0, b0);
    let mut jac = remainder_jacobian(f, a, b);
    let mut res = jac.residual();
    let converged = |a: f64, b: f64, res: f64| res <= target || res <= residual_floor(f, a, b);
    for iterations in 0..=opts.max_iter {
        if converged(a, b, res) {
            return Ok(Refined {
                a,
                b,
                residual: res,
                iterations,
            });
        }
        if iterations == opts.max_iter {
            break;
        }
        let det = jac.determinant();
        let scale = (jac.dp_da * jac.dq_db).abs() + (jac.dp_db * jac.dq_da).abs();
        if !det.is_finite() || det.abs() <= 1e-14 * scale {
            return Err(Error::SingularJacobian { a, b });
        }
        let step_a = (-jac.p * jac.dq_db + jac.q * jac.dp_db) / det;
        let step_b = (-jac.q * jac.dp_da + jac.p * jac.dq_da) / det;
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..=opts.max_halvings {
            let (ta, tb) = (a + t * step_a, b + t * step_b);
            let trial = remainder_jacobian(f, ta, tb);
            if trial.residual() < res {
                accepted = Some((ta, tb, trial));
                break;
            }
            t *= 0.5;
        }
        match accepted {
            Some((ta, tb, trial)) => {
                a = ta;
                b = tb;
                jac = trial;
                res = trial.residual();
            }
            None => {
                return Err(Error::NoConvergence {
                    iterations,
                    a,
                    b,
                    residual: res,
                })
            }
        }
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iter,
        a,
        b,
        residual: res,
    })
}

/// Largest relative deviation between [`remainder_jacobian`] and central
/// differences of the remainder pair (step `1e−6·(1 + |a| + |b|)`).
///
/// Entries are compared relative to the larger of the two values, floored
/// at `1e−8` of the remainder scale so that vanishing partials do not
/// divide by zero.
pub fn jacobian_fd_rel_error(f: &Polynomial, a: f64, b: f64) -> f64 {
    let h = 1e-6 * (1.0 + a.abs() + b.abs());
    let jac = remainder_jacobian(f, a, b);
    let (pa1, qa1) = remainder_via_representation(f, a + h, b);
    let (pa0, qa0) = remainder_via_representation(f, a - h, b);
    let (pb1, qb1) = remainder_via_representation(f, a, b + h);
    let (pb0, qb0) = remainder_via_representation(f, a, b - h);
    let fd = [
        (pa1 - pa0) / (2.0 * h),
        (pb1 - pb0) / (2.0 * h),
        (qa1 - qa0) / (2.0 * h),
        (qb1 - qb0) / (2.0 * h),
    ];
    let an = [jac.dp_da, jac.dp_db, jac.dq_da, jac.dq_db];
    let floor = 1e-8 * (1.0 + remainder_scale(f, a, b));
    an.iter()
        .zip(fd)
        .map(|(&x, y)| (x - y).abs() / x.abs().max(y.abs()).max(floor))
        .fold(0.0, f64::max)
}

/// `max_k |α_k(0, b + delta) − α_k(0, b)|` over the `p`-roots.
pub fn root_continuity_check(f: &Polynomial, b: f64, delta: f64) -> Result<f64> {
    let opts = IsolationOptions::default();
    let here = full_interlace_with(f, b, &opts)?;
    let there = full_interlace_with(f, b + delta, &opts)?;
    for r in [&here, &there] {
        if !r.ok {
            return Err(Error::NotInterlacing { b: r.b });
        }
    }
    Ok(here
        .roots_p
        .roots
        .iter()
        .zip(&there.roots_p.roots)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max))
}
