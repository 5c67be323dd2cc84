//! Real polynomial factorization using only real arithmetic.
//!
//! Dividing a monic `f` of degree `N` by `x² − a·x − b` leaves a remainder
//! `p(a, b)·x + q(a, b)`, and `x² − A·x − B` is a factor exactly when
//! `p(A, B) = q(A, B) = 0`. For fixed, sufficiently negative `b` the `N − 1`
//! real roots of `p` in `a` and the `N − 2` real roots of `q` interlace;
//! near `b = 0` they do not. Walking `b` upward from an interlacing base
//! point to the boundary of the interlacing set brings a `p`-root and a
//! `q`-root together, which locates a common zero `(A, B)`. Newton's method
//! in `(a, b)` polishes it, and deflation repeats the step down to a
//! complete factorization into linear and irreducible quadratic factors.
//!
//! ```
//! use realquad::{factor_completely, Polynomial};
//!
//! // (x² − x − 1)(x² + 1), coefficients in ascending order
//! let f = Polynomial::new(vec![-1.0, -1.0, 0.0, -1.0, 1.0]);
//! let fact = factor_completely(&f).unwrap();
//! assert_eq!(fact.linear_roots.len(), 2);
//! assert_eq!(fact.quadratics.len(), 1);
//! assert!(fact.residual < 1e-9);
//! ```

pub mod chain;
pub mod continuation;
pub mod curves;
pub mod error;
pub mod factor;
pub mod interlace;
pub mod isolate;
pub mod json;
pub mod poly;
pub mod selfcheck;

pub use chain::{
    chain_coefficients, chain_eval, pn_table, q_shift_identity_check, remainder_via_representation,
    ChainCoefficientTable, PnTable,
};
pub use continuation::{
    bairstow_refine, find_transition, remainder_jacobian, root_continuity_check, Refined,
    TransitionResult,
};
pub use curves::{curves_grid, CurveGrid, Window};
pub use error::{Error, Result, Stage};
pub use factor::{
    extract_quadratic, factor_completely, verify_factorization, Factorization, QuadFactor,
};
pub use interlace::{check_pair, find_b0, full_interlace, growth_probe, InterlaceReport};
pub use isolate::{bisect_root, isolate_chain_roots, Level, RootSet};
pub use poly::{divide_quadratic, fujiwara_bound, Polynomial, QuadDivResult, QuadDivisor};
