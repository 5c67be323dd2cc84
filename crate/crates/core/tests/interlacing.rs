mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use realquad::chain::remainder_scale;
use realquad::continuation::TransitionKind;
use realquad::interlace::{find_b0_report, full_interlace_with};
use realquad::isolate::IsolationOptions;
use realquad::{
    bairstow_refine, chain_coefficients, chain_eval, check_pair, divide_quadratic, find_b0,
    find_transition, fujiwara_bound, full_interlace, growth_probe, isolate_chain_roots,
    root_continuity_check, Polynomial, QuadDivisor,
};

use common::*;

fn corpus(seed: u64, count: usize, degrees: std::ops::RangeInclusive<usize>) -> Vec<Polynomial> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(degrees.clone());
            random_monic(&mut rng, n, 10.0)
        })
        .collect()
}

#[test]
fn isolated_roots_are_roots_and_interlace() {
    for f in corpus(21, 30, 3..=10) {
        let n = f.degree();
        let b = find_b0(&f).unwrap();
        let iso = isolate_chain_roots(&f, b).unwrap();
        assert!(iso.is_complete());
        let table = chain_coefficients(&f).unwrap();
        for m in 0..=n - 2 {
            let level = iso.chain(m).unwrap();
            assert_eq!(level.len(), n - 1 - m);
            let in_a = table.at_b(m, b);
            let abs_poly = Polynomial::new(in_a.coeffs().iter().map(|c| c.abs()).collect());
            let bound = fujiwara_bound(&in_a).unwrap();
            for &x in &level.roots {
                let h = chain_eval(&f, m, x, b).unwrap();
                assert!(
                    h.abs() <= 1e-8 * abs_poly.eval(x.abs()),
                    "level {m}: h = {h:e}"
                );
                assert!(x.abs() <= bound);
            }
            if m + 2 < n {
                let upper = &iso.chain(m + 1).unwrap().roots;
                assert!(check_pair(&level.roots, upper).unwrap());
            }
        }
    }
}

#[test]
fn quartic_fixture_counts() {
    let f = Polynomial::new(vec![-1., -1., 0., -1., 1.]);
    let r = full_interlace(&f, -50.0).unwrap();
    assert!(r.ok);
    assert_eq!(r.roots_p.len(), 3);
    assert_eq!(r.roots_q.len(), 2);
    for &x in &r.roots_p.roots {
        let p = divide_quadratic(&f, QuadDivisor::new(x, -50.0)).unwrap().p;
        assert!(p.abs() <= 1e-8 * 50f64.powi(2));
    }
}

#[test]
fn cubic_with_imaginary_roots_has_base_below_minus_two() {
    let f = Polynomial::new(vec![0., 1., 0., 1.]);
    assert!(find_b0(&f).unwrap() <= -2.0);
}

#[test]
fn predicate_is_stable_under_finer_bisection() {
    let fine = IsolationOptions { rel_tol: 0.5e-12 };
    for f in corpus(22, 40, 3..=10) {
        let b0 = find_b0(&f).unwrap();
        for k in 0..4 {
            let b = b0 * 2f64.powi(k);
            let coarse = full_interlace(&f, b).unwrap().ok;
            assert_eq!(coarse, full_interlace_with(&f, b, &fine).unwrap().ok);
        }
    }
}

#[test]
fn interlacing_persists_below_base() {
    for f in corpus(23, 40, 3..=10) {
        let b0 = find_b0(&f).unwrap();
        for k in 1..=5 {
            assert!(full_interlace(&f, b0 * 2f64.powi(k)).unwrap().ok);
        }
    }
}

#[test]
fn growth_margin_dominates_next_coefficient() {
    for f in corpus(24, 10, 6..=8) {
        for m in 0..=f.degree() - 3 {
            for s in growth_probe(&f, m, 10).unwrap() {
                assert!(s.margin > f.coeff(m + 1).abs(), "m = {m}, b = {}", s.b);
            }
        }
    }
}

#[test]
fn transition_certificate() {
    for f in corpus(25, 40, 3..=10) {
        let b0 = find_b0(&f).unwrap();
        let t = find_transition(&f, b0).unwrap();
        assert!(t.b_lo_final < t.b_hi_final);
        assert!(full_interlace(&f, t.b_lo_final).unwrap().ok);
        if t.b_hi_final < 0.0 {
            assert!(!full_interlace(&f, t.b_hi_final).unwrap().ok);
        }
        let collided = t.min_gap <= 10.0 * t.gap_tol;
        assert_eq!(collided, t.kind == TransitionKind::Collision);
    }
}

#[test]
fn refined_factor_leaves_small_remainder() {
    let mut accepted = 0;
    for f in corpus(26, 40, 3..=10) {
        let t = find_transition(&f, find_b0(&f).unwrap()).unwrap();
        for &a in &t.candidates {
            if let Ok(r) = bairstow_refine(&f, a, t.b, 1e-12, 100) {
                let d = divide_quadratic(&f, QuadDivisor::new(r.a, r.b)).unwrap();
                let floor = 8.0 * f64::EPSILON * remainder_scale(&f, r.a, r.b);
                assert!(d.p.abs() + d.q.abs() <= 1e-8 * (1.0 + f.max_abs_coeff()) + floor);
                accepted += 1;
            }
        }
    }
    assert!(accepted >= 30);
}

#[test]
fn roots_move_continuously() {
    for f in corpus(27, 30, 3..=10) {
        let b = find_b0(&f).unwrap();
        for delta in [1e-3, 1e-4] {
            let d1 = root_continuity_check(&f, b, delta).unwrap();
            let d2 = root_continuity_check(&f, b, delta / 2.0).unwrap();
            assert!(d2 <= 0.75 * d1, "{d2:e} vs {d1:e}");
        }
    }
}

#[test]
fn base_report_carries_alternating_roots() {
    for f in corpus(28, 20, 3..=10) {
        let r = find_b0_report(&f).unwrap();
        assert!(r.all_pairs_ok());
        assert!(r.min_gap > r.gap_tol);
        assert_eq!(r.gaps().len(), 2 * r.roots_q.len());
    }
}

proptest! {
    #[test]
    fn check_pair_ignores_input_order(
        xs in prop::collection::btree_set(-1000i32..1000, 3..15),
        picks in prop::collection::vec(any::<bool>(), 15),
        seed in any::<u64>(),
    ) {
        // split distinct values into k + 1 and k, interlacing or not
        let mut xs: Vec<f64> = xs.into_iter().map(f64::from).collect();
        if xs.len().is_multiple_of(2) {
            xs.pop();
        }
        let k = xs.len() / 2;
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (x, &pick) in xs.iter().zip(&picks) {
            if (pick && a.len() < k + 1) || b.len() == k {
                a.push(*x);
            } else {
                b.push(*x);
            }
        }
        let verdict = check_pair(&a, &b).unwrap();
        let mut r = rng(seed);
        a.shuffle(&mut r);
        b.shuffle(&mut r);
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        prop_assert_eq!(verdict, check_pair(&a, &b).unwrap());
        let alternates = xs.chunks(2).all(|c| a.contains(&c[0]));
        prop_assert_eq!(verdict, alternates);
    }
}
