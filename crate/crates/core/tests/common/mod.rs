//! Shared corpora and test-only oracles.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use realquad::{Factorization, Polynomial, QuadFactor};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn octic() -> Polynomial {
    Polynomial::new(vec![19., 17., 43., 51., 17., 51., 31., 37., 1.])
}

/// Degree `n` with coefficients uniform in `[−bound, bound]`.
pub fn random_poly(rng: &mut impl Rng, n: usize, bound: f64) -> Polynomial {
    let mut c: Vec<f64> = (0..=n).map(|_| rng.gen_range(-bound..bound)).collect();
    if c[n] == 0.0 {
        c[n] = 1.0;
    }
    Polynomial::new(c)
}

pub fn random_monic(rng: &mut impl Rng, n: usize, bound: f64) -> Polynomial {
    let mut c: Vec<f64> = (0..n).map(|_| rng.gen_range(-bound..bound)).collect();
    c.push(1.0);
    Polynomial::new(c)
}

/// A polynomial built from known factors.
#[derive(Clone, Debug)]
pub struct Constructed {
    pub poly: Polynomial,
    pub linear_roots: Vec<f64>,
    pub quadratics: Vec<QuadFactor>,
}

impl Constructed {
    /// All roots as complex numbers.
    pub fn roots(&self) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = self
            .linear_roots
            .iter()
            .map(|&r| Complex64::new(r, 0.0))
            .collect();
        out.extend(self.quadratics.iter().flat_map(|q| quad_roots(*q)));
        out
    }
}

/// Roots of `x² − a·x − b` (test oracle; complex arithmetic).
pub fn quad_roots(q: QuadFactor) -> [Complex64; 2] {
    let disc = Complex64::new(q.discriminant(), 0.0).sqrt();
    let a = Complex64::new(q.a, 0.0);
    [(a + disc) / 2.0, (a - disc) / 2.0]
}

pub fn factorization_roots(f: &Factorization) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = f
        .linear_roots
        .iter()
        .map(|&r| Complex64::new(r, 0.0))
        .collect();
    out.extend(f.quadratics.iter().flat_map(|q| quad_roots(*q)));
    out
}

/// Degree `n` product of random linear factors (roots in `[−3, 3]`) and
/// random irreducible quadratics; all roots pairwise at least 0.1 apart.
pub fn constructed(rng: &mut impl Rng, n: usize) -> Constructed {
    loop {
        let n_quad = rng.gen_range(0..=n / 2);
        let n_lin = n - 2 * n_quad;
        let mut roots: Vec<Complex64> = Vec::new();
        let mut linear_roots = Vec::new();
        let mut quadratics = Vec::new();
        for _ in 0..n_lin {
            let r = rng.gen_range(-3.0..3.0);
            linear_roots.push(r);
            roots.push(Complex64::new(r, 0.0));
        }
        for _ in 0..n_quad {
            let re: f64 = rng.gen_range(-3.0..3.0);
            let im: f64 = rng.gen_range(0.1..3.0);
            let q = QuadFactor::new(2.0 * re, -(re * re + im * im));
            quadratics.push(q);
            roots.push(Complex64::new(re, im));
            roots.push(Complex64::new(re, -im));
        }
        let separated = roots
            .iter()
            .enumerate()
            .all(|(i, x)| roots[i + 1..].iter().all(|y| (x - y).norm() >= 0.1));
        if !separated {
            continue;
        }
        let poly = quadratics
            .iter()
            .fold(Polynomial::from_roots(&linear_roots), |acc, q| {
                acc.multiply(&q.polynomial())
            });
        linear_roots.sort_by(f64::total_cmp);
        return Constructed {
            poly,
            linear_roots,
            quadratics,
        };
    }
}

/// Durand–Kerner (Weierstrass) simultaneous iteration, independent of the
/// library's real-arithmetic pipeline.
pub fn durand_kerner(f: &Polynomial) -> Vec<Complex64> {
    let (_, g) = f.normalize_monic();
    let n = g.degree();
    let eval = |z: Complex64| {
        g.coeffs()
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    };
    let radius = 1.0 + g.max_abs_coeff();
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| seed.powu(k as u32) * radius.min(4.0))
        .collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let denom = (0..n)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

/// Largest distance from each root in `got` to its greedy nearest partner
/// in `want` (each partner used once).
pub fn match_roots(got: &[Complex64], want: &[Complex64]) -> f64 {
    if got.len() != want.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; want.len()];
    let mut worst = 0.0f64;
    for g in got {
        let (j, d) = want
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, w)| (j, (g - w).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("same length");
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}
