//! Samples of `p(f, a, b)` and `q(f, a, b)` on a rectangular `(a, b)` grid.
//!
//! The zero sets of the two fields are the curves whose crossings are the
//! quadratic factors of `f`. Contouring is left to the consumer of the JSON
//! export.

use crate::chain::remainder_via_representation;
use crate::error::{Error, Result};
use crate::factor::Factorization;
use crate::json;
use crate::poly::Polynomial;

/// Axis-aligned sampling window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub a_min: f64,
    pub a_max: f64,
    pub b_min: f64,
    pub b_max: f64,
}

impl Window {
    pub fn new(a_min: f64, a_max: f64, b_min: f64, b_max: f64) -> Self {
        Window {
            a_min,
            a_max,
            b_min,
            b_max,
        }
    }

    fn validate(&self) -> Result<()> {
        let all = [self.a_min, self.a_max, self.b_min, self.b_max];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidWindow("non-finite bound".into()));
        }
        if self.a_min >= self.a_max || self.b_min >= self.b_max {
            return Err(Error::InvalidWindow("bounds must satisfy min < max".into()));
        }
        Ok(())
    }
}

impl Default for Window {
    /// The window `a ∈ [−10, 10]`, `b ∈ [−10, 5]`.
    fn default() -> Self {
        Window::new(-10.0, 10.0, -10.0, 5.0)
    }
}

/// Node `i` of `n` uniform nodes on `[lo, hi]`.
///
/// Written as `lo + (span·i)/(n−1)` so that the node `2i` of a grid with
/// `2n − 1` nodes is bit-identical to node `i` here.
fn node(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
    lo + ((hi - lo) * i as f64) / (n - 1) as f64
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveGrid {
    pub poly: Vec<f64>,
    pub window: Window,
    pub na: usize,
    pub nb: usize,
    /// Row-major, row = fixed `b`: `p_values[i·na + j] = p(f, a_j, b_i)`.
    pub p_values: Vec<f64>,
    pub q_values: Vec<f64>,
    /// Found factors `(A, B)`.
    pub markers: Vec<(f64, f64)>,
}

impl CurveGrid {
    pub fn a_node(&self, j: usize) -> f64 {
        node(self.window.a_min, self.window.a_max, j, self.na)
    }

    pub fn b_node(&self, i: usize) -> f64 {
        node(self.window.b_min, self.window.b_max, i, self.nb)
    }

    pub fn p_at(&self, i: usize, j: usize) -> f64 {
        self.p_values[i * self.na + j]
    }

    pub fn q_at(&self, i: usize, j: usize) -> f64 {
        self.q_values[i * self.na + j]
    }

    /// Adds every quadratic the factorization extracted as a marker.
    pub fn mark_factors(&mut self, fact: &Factorization) {
        self.markers
            .extend(fact.extracted.iter().map(|q| (q.a, q.b)));
    }

    pub fn to_json(&self) -> String {
        let markers: Vec<String> = self
            .markers
            .iter()
            .map(|&(a, b)| json::ab_object(a, b))
            .collect();
        format!(
            concat!(
                "{{\"poly\":{},",
                "\"a\":{{\"min\":{},\"max\":{},\"n\":{}}},",
                "\"b\":{{\"min\":{},\"max\":{},\"n\":{}}},",
                "\"P\":{},\"Q\":{},\"markers\":[{}]}}"
            ),
            json::array(self.poly.iter().copied()),
            json::number(self.window.a_min),
            json::number(self.window.a_max),
            self.na,
            json::number(self.window.b_min),
            json::number(self.window.b_max),
            self.nb,
            json::array(self.p_values.iter().copied()),
            json::array(self.q_values.iter().copied()),
            markers.join(","),
        )
    }
}

pub fn curves_grid(f: &Polynomial, window: Window, na: usize, nb: usize) -> Result<CurveGrid> {
    window.validate()?;
    if na < 2 || nb < 2 {
        return Err(Error::InvalidWindow(format!(
            "grid needs at least 2×2 nodes, got {na}×{nb}"
        )));
    }
    let mut p_values = Vec::with_capacity(na * nb);
    let mut q_values = Vec::with_capacity(na * nb);
    for i in 0..nb {
        let b = node(window.b_min, window.b_max, i, nb);
        for j in 0..na {
            let a = node(window.a_min, window.a_max, j, na);
            let (p, q) = remainder_via_representation(f, a, b);
            p_values.push(p);
            q_values.push(q);
        }
    }
    Ok(CurveGrid {
        poly: f.coeffs().to_vec(),
        window,
        na,
        nb,
        p_values,
        q_values,
        markers: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x3_plus_x_grid() {
        let f = Polynomial::new(vec![0., 1., 0., 1.]);
        let g = curves_grid(&f, Window::new(-2., 2., -3., 0.), 5, 4).unwrap();
        assert_eq!(g.p_values.len(), 20);
        // a nodes −2..2 step 1, b nodes −3..0 step 1
        assert_eq!(g.a_node(2), 0.0);
        assert_eq!(g.b_node(2), -1.0);
        assert_eq!(g.p_at(2, 2), 0.0);
        for i in 0..4 {
            assert_eq!(g.q_at(i, 2), 0.0);
        }
    }

    #[test]
    fn rejects_bad_windows() {
        let f = Polynomial::new(vec![0., 1., 0., 1.]);
        assert!(curves_grid(&f, Window::new(1., -1., 0., 1.), 3, 3).is_err());
        assert!(curves_grid(&f, Window::new(-1., 1., 0., f64::NAN), 3, 3).is_err());
        assert!(curves_grid(&f, Window::default(), 1, 3).is_err());
    }

    #[test]
    fn doubling_resolution_keeps_shared_nodes() {
        let f = Polynomial::new(vec![19., 17., 43., 51., 17., 51., 31., 37., 1.]);
        let w = Window::new(-3.3, 7.1, -9.7, 4.9);
        let g1 = curves_grid(&f, w, 7, 5).unwrap();
        let g2 = curves_grid(&f, w, 13, 9).unwrap();
        for i in 0..5 {
            for j in 0..7 {
                assert_eq!(g1.p_at(i, j).to_bits(), g2.p_at(2 * i, 2 * j).to_bits());
                assert_eq!(g1.q_at(i, j).to_bits(), g2.q_at(2 * i, 2 * j).to_bits());
            }
        }
    }
}
