//! Interlacing of `p` and `q` in `a` at fixed `b`, and the search for an
//! interlacing base point `b₀`.

use crate::chain::chain_pair_scaled;
use crate::error::{Error, Result};
use crate::isolate::{
    isolate_chain_roots_with, p_roots_direct, q_between, IsolationOptions, Level, RootSet,
};
use crate::poly::Polynomial;

/// Doublings tried by [`find_b0`].
pub const MAX_DOUBLINGS: u32 = 60;

/// Gaps at or below `GAP_REL_TOL·(1 + max |root|)` count as ties.
pub const GAP_REL_TOL: f64 = 1e-9;

/// `true` iff `a[k] < b[k] < a[k+1]` for every `k`.
pub fn check_pair(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.len() != b.len() + 1 {
        return Err(Error::SizeMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(b.iter().enumerate().all(|(k, &y)| a[k] < y && y < a[k + 1]))
}

/// One adjacent `(p-root, q-root)` pair in the merged order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gap {
    pub p_root: f64,
    pub q_root: f64,
}

impl Gap {
    pub fn width(&self) -> f64 {
        (self.q_root - self.p_root).abs()
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.p_root + self.q_root)
    }
}

/// Interlacing verdict for `(p, q)` at one `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct InterlaceReport {
    pub b: f64,
    pub roots_p: RootSet,
    pub roots_q: RootSet,
    /// `p` has `N−1` roots, `q` has `N−2`, they alternate strictly and no
    /// gap is a tie.
    pub ok: bool,
    /// Smallest distance between adjacent `p`- and `q`-roots; 0 when the
    /// counts are wrong.
    pub min_gap: f64,
    /// Tie threshold used for this report.
    pub gap_tol: f64,
    /// First chain level (or `Q`) whose chain-guided isolation failed.
    pub failing_level: Option<Level>,
}

impl InterlaceReport {
    /// Interlacing of `(p, q)` together with every chain pair.
    pub fn all_pairs_ok(&self) -> bool {
        self.ok && self.failing_level.is_none()
    }

    /// The `(p, q)` verdict with the listed merged-gap indices ignored: the
    /// counts must fit and every other gap must be correctly ordered and
    /// wider than the tie threshold. Equals `ok` for an empty list.
    pub fn ok_excluding(&self, excluded: &[usize]) -> bool {
        if excluded.is_empty() {
            return self.ok;
        }
        let n_q = self.roots_q.len();
        if self.roots_p.len() != n_q + 1 {
            return false;
        }
        self.gaps().iter().enumerate().all(|(i, g)| {
            // even gaps need p < q, odd gaps q < p
            let signed = if i % 2 == 0 {
                g.q_root - g.p_root
            } else {
                g.p_root - g.q_root
            };
            excluded.contains(&i) || signed > self.gap_tol
        })
    }

    /// Adjacent pairs `(p₀,q₀), (p₁,q₀), (p₁,q₁), …` when the counts fit.
    pub fn gaps(&self) -> Vec<Gap> {
        let p = &self.roots_p.roots;
        let q = &self.roots_q.roots;
        if p.len() != q.len() + 1 {
            return Vec::new();
        }
        q.iter()
            .enumerate()
            .flat_map(|(k, &qr)| {
                [
                    Gap {
                        p_root: p[k],
                        q_root: qr,
                    },
                    Gap {
                        p_root: p[k + 1],
                        q_root: qr,
                    },
                ]
            })
            .collect()
    }
}

pub fn full_interlace(f: &Polynomial, b: f64) -> Result<InterlaceReport> {
    full_interlace_with(f, b, &IsolationOptions::default())
}

/// Runs the chain-guided isolation at `b` and decides `(p, q)` interlacing.
///
/// If an intermediate chain pair fails to alternate, `p` is isolated
/// directly so the `(p, q)` verdict does not depend on the rest of the
/// chain; the failure is recorded in `failing_level`.
pub fn full_interlace_with(
    f: &Polynomial,
    b: f64,
    opts: &IsolationOptions,
) -> Result<InterlaceReport> {
    let n = f.degree();
    let iso = isolate_chain_roots_with(f, b, opts)?;
    let failing_level = iso.failed;
    let empty_q = || RootSet {
        b,
        level: Level::Q,
        roots: Vec::new(),
        brackets: Vec::new(),
    };
    let (roots_p, roots_q) = match failing_level {
        None => (
            iso.p_roots().cloned().expect("complete isolation has p"),
            iso.q_roots().cloned().expect("complete isolation has q"),
        ),
        Some(Level::Q) => (iso.p_roots().cloned().expect("p precedes q"), empty_q()),
        Some(Level::Chain(_)) => {
            let p = p_roots_direct(f, b, opts);
            let q = if p.len() == n - 1 {
                q_between(f, b, &p.roots, opts).unwrap_or_else(empty_q)
            } else {
                empty_q()
            };
            (p, q)
        }
    };

    let max_root = roots_p.max_abs().max(roots_q.max_abs());
    let gap_tol = GAP_REL_TOL * (1.0 + max_root);
    let counts_ok = roots_p.len() == n - 1 && roots_q.len() == n - 2;
    let mut report = InterlaceReport {
        b,
        roots_p,
        roots_q,
        ok: false,
        min_gap: 0.0,
        gap_tol,
        failing_level,
    };
    if counts_ok {
        let alternating = check_pair(&report.roots_p.roots, &report.roots_q.roots)?;
        let min_gap = report
            .gaps()
            .iter()
            .map(Gap::width)
            .fold(f64::INFINITY, f64::min);
        report.min_gap = if alternating { min_gap } else { 0.0 };
        report.ok = alternating && min_gap > gap_tol;
    }
    Ok(report)
}

/// First `b = −(1 + max|rₙ|)·2ʲ`, `j = 0, 1, …, 60`, at which `(p, q)` and
/// every chain pair interlace.
pub fn find_b0(f: &Polynomial) -> Result<f64> {
    find_b0_report(f).map(|r| r.b)
}

pub fn find_b0_report(f: &Polynomial) -> Result<InterlaceReport> {
    let start = -(1.0 + f.max_abs_coeff());
    for j in 0..=MAX_DOUBLINGS {
        let b = start * 2f64.powi(j as i32);
        let report = full_interlace(f, b)?;
        if report.all_pairs_ok() {
            return Ok(report);
        }
    }
    Err(Error::NoInterlacingBase {
        doublings: MAX_DOUBLINGS,
    })
}

/// One sample of [`growth_probe`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthSample {
    pub b: f64,
    /// `min_k |b·h_{m+2}(α_k(m+1, b), b)|`.
    pub margin: f64,
}

/// Dominance margins of `b·h_{m+2}` at the roots of `h_{m+1}` for `b`
/// doubling downward from [`find_b0`].
pub fn growth_probe(f: &Polynomial, m: usize, doublings: u32) -> Result<Vec<GrowthSample>> {
    let b0 = find_b0(f)?;
    growth_probe_from(f, m, b0, doublings)
}

pub fn growth_probe_from(
    f: &Polynomial,
    m: usize,
    b_start: f64,
    doublings: u32,
) -> Result<Vec<GrowthSample>> {
    let n = f.degree();
    if n < 3 || m > n - 3 {
        return Err(Error::LevelOutOfRange {
            m,
            max: n.saturating_sub(3),
        });
    }
    let opts = IsolationOptions::default();
    (0..=doublings)
        .map(|i| {
            let b = b_start * 2f64.powi(i as i32);
            let iso = isolate_chain_roots_with(f, b, &opts)?;
            let roots = iso.chain(m + 1).ok_or_else(|| Error::IsolationIncomplete {
                level: Level::Chain(m + 1).to_string(),
            })?;
            let margin = roots
                .roots
                .iter()
                .map(|&alpha| {
                    let (h, _, exp) = chain_pair_scaled(f, m + 2, alpha, b);
                    (b * h).abs() * 2f64.powi(exp)
                })
                .fold(f64::INFINITY, f64::min);
            Ok(GrowthSample { b, margin })
        })
        .collect()
}
