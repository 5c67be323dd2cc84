//! Invariant suite run against a single polynomial (the `verify` command).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::{
    chain_coefficients, chain_eval, q_shift_holds, remainder_scale, remainder_via_representation,
};
use crate::continuation::jacobian_fd_rel_error;
use crate::factor::factor_completely;
use crate::interlace::{check_pair, find_b0_report};
use crate::poly::{divide_quadratic, fujiwara_bound, Polynomial, QuadDivisor};

const SAMPLES: usize = 50;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name,
            passed,
            detail: detail.into(),
        }
    }

    fn skipped(name: &'static str, why: &str) -> Self {
        Check::new(name, true, format!("skipped: {why}"))
    }
}

/// Runs every invariant that applies to `f`; `factor_rel_tol` bounds the
/// factorization residual relative to `|leading|·(1 + max|rₙ|)`.
pub fn run_invariant_suite(f: &Polynomial, factor_rel_tol: f64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e51_f00d);
    let points: Vec<(f64, f64)> = (0..SAMPLES)
        .map(|_| (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)))
        .collect();
    let (leading, monic) = f.normalize_monic();
    let n = f.degree();
    let scale = 1.0 + f.max_abs_coeff();
    let mut out = Vec::new();

    out.push(if n < 2 {
        Check::skipped("division exactness", "degree < 2")
    } else {
        let worst = points
            .iter()
            .map(|&(a, b)| {
                let d = QuadDivisor::new(a, b);
                let r = divide_quadratic(f, d).expect("degree checked");
                let back = r.reconstruct(d);
                let err = (0..=n)
                    .map(|k| (back.coeff(k) - f.coeff(k)).abs())
                    .fold(0.0, f64::max);
                // the rounded quotient bounds the attainable accuracy
                let size = scale.max(1.0 + r.quotient.max_abs_coeff());
                err / (size * (1.0 + a.abs() + b.abs()).powi(2))
            })
            .fold(0.0, f64::max);
        Check::new(
            "division exactness",
            worst <= 1e-11,
            format!("max scaled error {worst:.3e}"),
        )
    });

    out.push(if n < 2 {
        Check::skipped("representation = division", "degree < 2")
    } else {
        let worst = points
            .iter()
            .map(|&(a, b)| {
                let r = divide_quadratic(f, QuadDivisor::new(a, b)).expect("degree checked");
                let (p, q) = remainder_via_representation(f, a, b);
                let s = 1.0 + remainder_scale(f, a, b);
                ((p - r.p).abs() + (q - r.q).abs()) / s
            })
            .fold(0.0, f64::max);
        Check::new(
            "representation = division",
            worst <= 1e-10,
            format!("max relative error {worst:.3e}"),
        )
    });

    out.push(Check::new(
        "q-shift identity",
        points
            .iter()
            .all(|&(a, b)| q_shift_holds(n.max(2), a, b, 1e-12)),
        format!("q(x^(n+1)) = b·P_n for n < {}", n.max(2)),
    ));

    out.push(if n < 3 {
        Check::skipped("chain recurrence", "degree < 3")
    } else {
        let ok = points.iter().all(|&(a, b)| {
            (0..n - 1).all(|m| {
                let lhs = chain_eval(&monic, m, a, b).expect("level in range");
                let h1 = chain_eval(&monic, m + 1, a, b).expect("level in range");
                let h2 = if m + 2 < n {
                    chain_eval(&monic, m + 2, a, b).expect("level in range")
                } else {
                    0.0
                };
                let rhs = a * h1 + b * h2 + monic.coeff(m + 1);
                (lhs - rhs).abs() <= 1e-10 * (1.0 + remainder_scale(&monic, a, b))
            })
        });
        Check::new(
            "chain recurrence",
            ok,
            "h_m = a·h_{m+1} + b·h_{m+2} + r_{m+1}",
        )
    });

    out.push(if n < 3 {
        Check::skipped("chain degree bounds", "degree < 3")
    } else {
        let table = chain_coefficients(&monic).expect("degree checked");
        let v = table.degree_violations();
        Check::new(
            "chain degree bounds",
            v.is_empty(),
            format!("{} violations", v.len()),
        )
    });

    out.push(if n < 1 {
        Check::skipped("Fujiwara bound", "constant polynomial")
    } else {
        let bound = fujiwara_bound(f).expect("nonzero");
        let outside = (1..=10_000).any(|i| {
            let x = bound + (1.0 + bound) * 10.0 * i as f64 / 10_000.0;
            let lead_sign = f.leading().signum();
            let odd = if n % 2 == 1 { -1.0 } else { 1.0 };
            f.eval(x).signum() != lead_sign || f.eval(-x).signum() != lead_sign * odd
        });
        Check::new(
            "Fujiwara bound",
            !outside,
            format!("no sign change beyond ±{bound:.6}"),
        )
    });

    out.push(if n < 3 {
        Check::skipped("interlacing at b0", "degree < 3")
    } else {
        match find_b0_report(&monic) {
            Ok(r) => {
                let alt = check_pair(&r.roots_p.roots, &r.roots_q.roots).unwrap_or(false);
                Check::new(
                    "interlacing at b0",
                    alt && r.roots_p.len() == n - 1 && r.roots_q.len() == n - 2,
                    format!(
                        "b0 = {}, {} P-roots, {} Q-roots",
                        r.b,
                        r.roots_p.len(),
                        r.roots_q.len()
                    ),
                )
            }
            Err(e) => Check::new("interlacing at b0", false, e.to_string()),
        }
    });

    out.push(if n < 2 {
        Check::skipped("Jacobian vs finite differences", "degree < 2")
    } else {
        let worst = points
            .iter()
            .map(|&(a, b)| jacobian_fd_rel_error(f, a * 0.4, b * 0.4))
            .fold(0.0, f64::max);
        Check::new(
            "Jacobian vs finite differences",
            worst <= 1e-4,
            format!("max relative error {worst:.3e}"),
        )
    });

    out.push(match factor_completely(f) {
        Ok(fact) => {
            let tol = factor_rel_tol * leading.abs().max(1.0) * scale;
            Check::new(
                "factorization round trip",
                fact.residual <= tol && fact.degree() == n,
                format!("residual {:.3e} (tolerance {tol:.3e})", fact.residual),
            )
        }
        Err(e) => Check::new("factorization round trip", false, e.to_string()),
    });

    out
}
