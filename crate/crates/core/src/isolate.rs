//! Real roots in `a` of the chain members at a fixed `b`.
//!
//! The chain is isolated from the bottom up. `h_{N−2} = a + r_{N−1}` has the
//! single root `−r_{N−1}`; the roots of `h_{m+1}` together with the outer
//! limits `±(Fujiwara bound + 1)` of `h_m` cut the line into `N − m − 1`
//! intervals, and when `h_m` changes sign on every one of them each interval
//! holds exactly one root. The roots of `q = b·h₁ + r₀` are bracketed by the
//! consecutive roots of `p = h₀` in the same way. Any interval without a sign
//! change stops the sweep; below a sufficiently negative `b` this does not
//! happen.

use std::fmt;

use crate::chain::{chain_in_a, chain_pair_scaled, q_scaled};
use crate::error::{Error, Result};
use crate::poly::{fujiwara_bound, Polynomial};

/// Which function a [`RootSet`] belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    /// Chain member `h_m`; `Chain(0)` is `p`.
    Chain(usize),
    /// `q = b·h₁ + r₀`.
    Q,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Chain(0) => f.write_str("P"),
            Level::Chain(m) => write!(f, "{m}"),
            Level::Q => f.write_str("Q"),
        }
    }
}

/// Sorted real roots `α_k(m, b)` of one level, each with a sign-change
/// bracket.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub b: f64,
    pub level: Level,
    pub roots: Vec<f64>,
    pub brackets: Vec<(f64, f64)>,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.roots.iter().fold(0.0, |m, r| m.max(r.abs()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsolationOptions {
    /// Bisection stops once the bracket is below `rel_tol·max(1, |ends|)`.
    pub rel_tol: f64,
}

impl Default for IsolationOptions {
    fn default() -> Self {
        IsolationOptions { rel_tol: 1e-12 }
    }
}

/// Output of [`isolate_chain_roots`]: levels `N−2, N−3, …, 0`, then `Q`,
/// up to and excluding the first level that could not be isolated.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainIsolation {
    pub b: f64,
    pub degree: usize,
    pub levels: Vec<RootSet>,
    pub failed: Option<Level>,
}

impl ChainIsolation {
    pub fn is_complete(&self) -> bool {
        self.failed.is_none()
    }

    pub fn level(&self, level: Level) -> Option<&RootSet> {
        self.levels.iter().find(|r| r.level == level)
    }

    pub fn chain(&self, m: usize) -> Option<&RootSet> {
        self.level(Level::Chain(m))
    }

    pub fn p_roots(&self) -> Option<&RootSet> {
        self.chain(0)
    }

    pub fn q_roots(&self) -> Option<&RootSet> {
        self.level(Level::Q)
    }

    /// Turns a partial result into the "isolation incomplete" error.
    pub fn into_result(self) -> Result<Self> {
        match self.failed {
            None => Ok(self),
            Some(level) => Err(Error::IsolationIncomplete {
                level: level.to_string(),
            }),
        }
    }
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Shrinks a sign-change bracket of `func` to width `≤ tol`.
pub fn bisect_bracket<F: Fn(f64) -> f64>(
    func: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let (mut lo, mut hi) = (lo, hi);
    let s_lo = sign(func(lo));
    let s_hi = sign(func(hi));
    if lo.is_nan() || hi.is_nan() || lo >= hi || s_lo * s_hi >= 0.0 {
        return Err(Error::NotBracketing { lo, hi });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = sign(func(mid));
        if s == 0.0 {
            return Ok((mid, mid));
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// Root of `func` in a sign-change bracket, to within `tol`.
pub fn bisect_root<F: Fn(f64) -> f64>(func: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    bisect_bracket(func, lo, hi, tol).map(|(lo, hi)| 0.5 * (lo + hi))
}

fn tol_for(opts: &IsolationOptions, lo: f64, hi: f64) -> f64 {
    opts.rel_tol * lo.abs().max(hi.abs()).max(1.0)
}

/// Pushes `start` outward (doubling its magnitude) until `func` has the
/// sign `want` there.
fn expand_to_sign<F: Fn(f64) -> f64>(func: &F, start: f64, want: f64) -> f64 {
    let mut x = start;
    for _ in 0..64 {
        if sign(func(x)) == want {
            break;
        }
        x *= 2.0;
    }
    x
}

/// Finds one root per interval `[cuts[i], cuts[i+1]]`; `None` as soon as an
/// interval shows no strict sign change.
/// Roots and their final brackets, one per interval.
type RootsAndBrackets = (Vec<f64>, Vec<(f64, f64)>);

fn roots_between<F: Fn(f64) -> f64>(
    func: &F,
    cuts: &[f64],
    opts: &IsolationOptions,
) -> Option<RootsAndBrackets> {
    let mut roots = Vec::with_capacity(cuts.len().saturating_sub(1));
    let mut brackets = Vec::with_capacity(roots.capacity());
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let root = bisect_root(func, lo, hi, tol_for(opts, lo, hi)).ok()?;
        roots.push(root);
        brackets.push((lo, hi));
    }
    Some((roots, brackets))
}

/// Outer cut points `±(Fujiwara bound + 1)`, widened past the inner cuts and
/// doubled until the sign matches the limit sign at `±∞`.
fn outer_cuts<F: Fn(f64) -> f64>(
    func: &F,
    poly_in_a: &Polynomial,
    inner: &[f64],
    lead_sign: f64,
) -> (f64, f64) {
    let deg = poly_in_a.degree();
    let bound = fujiwara_bound(poly_in_a).unwrap_or(0.0) + 1.0;
    let mut lo = -bound;
    let mut hi = bound;
    if let (Some(&first), Some(&last)) = (inner.first(), inner.last()) {
        lo = lo.min(first - 1.0);
        hi = hi.max(last + 1.0);
    }
    let sign_neg_inf = if deg.is_multiple_of(2) {
        lead_sign
    } else {
        -lead_sign
    };
    (
        expand_to_sign(func, lo, sign_neg_inf),
        expand_to_sign(func, hi, lead_sign),
    )
}

pub fn isolate_chain_roots(f: &Polynomial, b: f64) -> Result<ChainIsolation> {
    isolate_chain_roots_with(f, b, &IsolationOptions::default())
}

pub fn isolate_chain_roots_with(
    f: &Polynomial,
    b: f64,
    opts: &IsolationOptions,
) -> Result<ChainIsolation> {
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
    let in_a = chain_in_a(f, b);
    let mut out = ChainIsolation {
        b,
        degree: n,
        levels: Vec::with_capacity(n),
        failed: None,
    };

    let root = -f.coeff(n - 1);
    out.levels.push(RootSet {
        b,
        level: Level::Chain(n - 2),
        roots: vec![root],
        brackets: vec![(root - 1.0, root + 1.0)],
    });

    for m in (0..n - 2).rev() {
        let func = |a: f64| chain_pair_scaled(f, m, a, b).0;
        let below = &out.levels[out.levels.len() - 1].roots;
        let (lo, hi) = outer_cuts(&func, &in_a[m], below, 1.0);
        let mut cuts = Vec::with_capacity(below.len() + 2);
        cuts.push(lo);
        cuts.extend_from_slice(below);
        cuts.push(hi);
        match roots_between(&func, &cuts, opts) {
            Some((roots, brackets)) => out.levels.push(RootSet {
                b,
                level: Level::Chain(m),
                roots,
                brackets,
            }),
            None => {
                out.failed = Some(Level::Chain(m));
                return Ok(out);
            }
        }
    }

    let p_roots = out.levels[out.levels.len() - 1].roots.clone();
    match q_between(f, b, &p_roots, opts) {
        Some(q) => out.levels.push(q),
        None => out.failed = Some(Level::Q),
    }
    Ok(out)
}

/// Roots of `q(·, b)`, one between each pair of consecutive `p`-roots.
pub(crate) fn q_between(
    f: &Polynomial,
    b: f64,
    p_roots: &[f64],
    opts: &IsolationOptions,
) -> Option<RootSet> {
    let func = |a: f64| q_scaled(f, a, b).mantissa;
    let (roots, brackets) = roots_between(&func, p_roots, opts)?;
    Some(RootSet {
        b,
        level: Level::Q,
        roots,
        brackets,
    })
}

/// All real roots of `p(·, b)` without reference to the chain.
///
/// Used when some intermediate chain pair fails to alternate, so that the
/// `(p, q)` verdict can still be decided.
pub(crate) fn p_roots_direct(f: &Polynomial, b: f64, opts: &IsolationOptions) -> RootSet {
    let p = chain_in_a(f, b).swap_remove(0);
    let (roots, brackets) = real_roots(&p, opts);
    RootSet {
        b,
        level: Level::Chain(0),
        roots,
        brackets,
    }
}

/// Real roots of a univariate polynomial by derivative recursion.
///
/// Between consecutive critical points the polynomial is monotone, so a
/// sign change there brackets exactly one root. Roots of even multiplicity
/// are reported only when the polynomial vanishes exactly at a critical
/// point.
pub fn real_roots(g: &Polynomial, opts: &IsolationOptions) -> (Vec<f64>, Vec<(f64, f64)>) {
    match g.degree() {
        0 => (Vec::new(), Vec::new()),
        1 => {
            let r = -g.coeff(0) / g.coeff(1);
            (vec![r], vec![(r - 1.0, r + 1.0)])
        }
        _ => {
            let (crit, _) = real_roots(&g.derivative(), opts);
            let func = |x: f64| g.eval(x);
            let (lo, hi) = outer_cuts(&func, g, &crit, sign(g.leading()));
            let mut cuts = Vec::with_capacity(crit.len() + 2);
            cuts.push(lo);
            cuts.extend_from_slice(&crit);
            cuts.push(hi);
            let mut roots: Vec<f64> = Vec::new();
            let mut brackets = Vec::new();
            for w in cuts.windows(2) {
                let (lo, hi) = (w[0], w[1]);
                if func(lo) == 0.0 && roots.last() != Some(&lo) {
                    roots.push(lo);
                    brackets.push((lo, lo));
                    continue;
                }
                if let Ok(r) = bisect_root(func, lo, hi, tol_for(opts, lo, hi)) {
                    roots.push(r);
                    brackets.push((lo, hi));
                }
            }
            (roots, brackets)
        }
    }
}
