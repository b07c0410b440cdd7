mod common;

use std::f64::consts::PI;

use common::*;
use mahvol_core::spectrum::{
    boundary_value, find_unit_roots, reciprocal_reduction, threshold_scan, ThresholdKind,
};
use mahvol_core::{AngleRadians, ComplexValue, FamilyParams};
use proptest::prelude::*;

fn params(m: u32, n: u32, t: f64) -> FamilyParams {
    FamilyParams::new(m, n, t).unwrap()
}

/// `F` written from chord lengths rather than sines of half angles.
fn chord_f(m: u32, n: u32, t: f64, theta: f64) -> f64 {
    (2.0 - 2.0 * (n as f64 * theta).cos()) - t * t * (2.0 - 2.0 * (m as f64 * theta).cos())
}

/// Sign changes of `F` on a fine grid, refined by bisection.
fn oracle_roots(m: u32, n: u32, t: f64) -> Vec<f64> {
    let f = |x: f64| {
        let a = (n as f64 * x / 2.0).sin();
        let b = (m as f64 * x / 2.0).sin();
        a * a - t * t * b * b
    };
    let samples = 4000 * (m + n) as usize;
    let mut out = Vec::new();
    for i in 0..samples {
        let a = PI * (i as f64 + 0.5) / samples as f64;
        let b = PI * (i as f64 + 1.5) / samples as f64;
        if i + 1 == samples {
            break;
        }
        if f(a) * f(b) < 0.0 {
            out.push(bisect(f, a, b));
        }
    }
    out
}

#[test]
fn params_validation() {
    assert!(FamilyParams::new(2, 4, 1.0).unwrap_err().is_domain());
    assert!(FamilyParams::new(3, 3, 1.0).is_err());
    assert!(FamilyParams::new(0, 1, 1.0).is_err());
    assert!(FamilyParams::new(1, 2, 0.0).is_err());
    assert!(FamilyParams::new(1, 2, f64::NAN).is_err());
    assert_eq!(FamilyParams::new(1, 2, -1.5).unwrap().t(), 1.5);
    let c = FamilyParams::from_complex_t(1, 2, ComplexValue::new(0.6, 0.8)).unwrap();
    assert!((c.t() - 1.0).abs() < 1e-15);
}

#[test]
fn boundary_examples() {
    let p = params(2, 3, 1.0);
    let zeta = boundary_value(&p, AngleRadians::new(2.0 * PI / 5.0).unwrap());
    assert!(zeta.abs() < 1e-14);
    assert_eq!(boundary_value(&p, AngleRadians::new(0.0).unwrap()), 0.0);
    let v = boundary_value(&params(1, 4, 5.0), AngleRadians::new(PI / 2.0).unwrap());
    assert!((v + 50.0).abs() < 1e-12);
}

#[test]
fn roots_at_t_one_for_two_three() {
    let roots = find_unit_roots(&params(2, 3, 1.0));
    assert!(roots.tangents.is_empty());
    let sigmas = roots.sigmas();
    assert_eq!(sigmas.len(), 2);
    assert!((sigmas[0] - 2.0 * PI / 5.0).abs() < 1e-14);
    assert!((sigmas[1] - 4.0 * PI / 5.0).abs() < 1e-14);
    assert_eq!(roots.roots[0].index, 1);
    assert_eq!(roots.roots[1].index, 2);
}

#[test]
fn no_roots_in_log_branch() {
    assert!(find_unit_roots(&params(1, 4, 5.0)).roots.is_empty());
}

#[test]
fn two_three_matches_explicit_m_values() {
    for t in [0.3f64, 0.9, 1.0, 1.3, 1.49, 1.6, 2.5, 7.0] {
        let d = t * (t * t + 4.0).sqrt();
        let mut want: Vec<f64> = [(t * t - 2.0 + d) / 2.0, (t * t - 2.0 - d) / 2.0]
            .into_iter()
            .filter(|m: &f64| m.abs() < 2.0)
            .map(|m: f64| (m / 2.0).acos())
            .collect();
        want.sort_by(f64::total_cmp);
        let got = find_unit_roots(&params(2, 3, t)).sigmas();
        assert_eq!(got.len(), want.len(), "t={t}");
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-12, "t={t} {g} {w}");
        }
    }
}

#[test]
fn printed_reductions() {
    let t: f64 = 1.7;
    let s = reciprocal_reduction(&params(2, 3, t));
    let want = [1.0 - 2.0 * t * t, 2.0 - t * t, 1.0];
    assert_eq!(s.degree(), 2);
    for (a, b) in s.coefficients().iter().zip(want) {
        assert!((a - b).abs() < 1e-13);
    }
    let s = reciprocal_reduction(&params(1, 4, t));
    let want = [-t * t, 0.0, 2.0, 1.0];
    assert_eq!(s.degree(), 3);
    for (a, b) in s.coefficients().iter().zip(want) {
        assert!((a - b).abs() < 1e-13);
    }
}

#[test]
fn one_two_reduction_is_linear() {
    for &t in &[0.5, 1.0, 1.9] {
        let s = reciprocal_reduction(&params(1, 2, t));
        assert_eq!(s.degree(), 1);
        let root = -s.coefficients()[0] / s.coefficients()[1];
        assert!((root - (t * t - 2.0)).abs() < 1e-14);
        let sigma = find_unit_roots(&params(1, 2, t)).sigmas()[0];
        assert!((2.0 * sigma.cos() - root).abs() < 1e-12);
    }
    assert_eq!(find_unit_roots(&params(1, 2, 1.99)).roots.len(), 1);
    assert!(find_unit_roots(&params(1, 2, 2.01)).roots.is_empty());
}

#[test]
fn one_four_counts() {
    let a = (32.0f64 / 27.0).sqrt();
    for (t, want) in [(0.2, 3), (1.0, 3), (a - 1e-6, 3), (a + 1e-6, 1), (2.0, 1), (3.99, 1), (4.01, 0), (9.0, 0)] {
        assert_eq!(find_unit_roots(&params(1, 4, t)).roots.len(), want, "t={t}");
    }
}

#[test]
fn tangencies_are_reported_not_counted() {
    // t = n/m makes θ = 0 a double zero
    let at = find_unit_roots(&params(1, 4, 4.0));
    assert!(at.at_threshold());
    assert!(at.roots.is_empty());
    // odd m, n with t = 1 touch at π
    let at = find_unit_roots(&params(1, 3, 1.0));
    assert!(at.at_threshold());
    assert!(at.tangents.iter().any(|&x| (x - PI).abs() < 1e-12));
    // the (1,4) double root at t² = 32/27 sits at M = -4/3
    let at = find_unit_roots(&params(1, 4, (32.0f64 / 27.0).sqrt()));
    assert!(at.at_threshold());
    assert_eq!(at.roots.len(), 1);
    assert!(at.tangents.iter().any(|&x| (2.0 * x.cos() + 4.0 / 3.0).abs() < 1e-6));
}

fn count_thresholds(m: u32, n: u32, lo: f64, hi: f64) -> Vec<f64> {
    threshold_scan(m, n, lo, hi, 200)
        .unwrap()
        .into_iter()
        .filter(|t| matches!(t.kind, ThresholdKind::RootCount { .. }))
        .map(|t| t.t)
        .collect()
}

#[test]
fn sweep_examples() {
    let th = count_thresholds(1, 4, 0.1, 5.0);
    assert_eq!(th.len(), 2);
    assert!((th[0] - (32.0f64 / 27.0).sqrt()).abs() < 1e-10);
    assert!((th[1] - 4.0).abs() < 1e-10);

    let th = count_thresholds(2, 3, 0.1, 2.0);
    assert_eq!(th.len(), 1);
    assert!((th[0] - 1.5).abs() < 1e-10);

    let th = count_thresholds(1, 2, 0.1, 3.0);
    assert_eq!(th.len(), 1);
    assert!((th[0] - 2.0).abs() < 1e-10);
}

#[test]
fn sweep_validation() {
    assert!(threshold_scan(1, 2, 0.0, 1.0, 10).is_err());
    assert!(threshold_scan(1, 2, 2.0, 1.0, 10).is_err());
    assert!(threshold_scan(1, 2, 0.5, 1.0, 1).is_err());
    assert!(threshold_scan(2, 4, 0.5, 1.0, 10).is_err());
}

#[test]
fn sweep_is_deterministic() {
    let a = threshold_scan(3, 5, 0.1, 4.0, 150).unwrap();
    let b = threshold_scan(3, 5, 0.1, 4.0, 150).unwrap();
    assert_eq!(a, b);
}

fn pair() -> impl Strategy<Value = (u32, u32)> {
    prop::sample::select(coprime_pairs(12))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn boundary_is_even((m, n) in pair(), t in 0.05f64..6.0, theta in -PI..PI) {
        let p = params(m, n, t);
        let f = p.boundary();
        prop_assert_eq!(f.value(theta), f.value(-theta));
        prop_assert!((f.value(theta) - chord_f(m, n, t, theta)).abs() <= 1e-12 * (1.0 + t * t));
    }

    #[test]
    fn reduction_factors_boundary((m, n) in pair(), t in 0.05f64..6.0, theta in 0.0f64..PI) {
        let s = reciprocal_reduction(&params(m, n, t));
        let big_m = 2.0 * theta.cos();
        let lhs = chord_f(m, n, t, theta);
        let rhs = (2.0 - big_m) * s.eval(big_m);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + t * t));
        prop_assert!(s.degree() <= m.max(n) as usize);
    }

    #[test]
    fn roots_match_oracle((m, n) in pair(), t in 0.05f64..6.0) {
        let got = find_unit_roots(&params(m, n, t));
        prop_assume!(!got.at_threshold());
        let want = oracle_roots(m, n, t);
        prop_assert_eq!(got.roots.len(), want.len());
        for (g, w) in got.sigmas().iter().zip(&want) {
            prop_assert!((g - w).abs() <= 1e-12);
        }
    }

    #[test]
    fn roots_are_certified((m, n) in pair(), t in 0.05f64..6.0) {
        let p = params(m, n, t);
        let roots = find_unit_roots(&p);
        let f = p.boundary();
        let s = roots.sigmas();
        for w in s.windows(2) {
            prop_assert!(w[1] > w[0]);
        }
        for &x in &s {
            prop_assert!(x > 0.0 && x < PI);
            prop_assert!(f.value(x).abs() <= 1e-12 * (1.0 + t * t));
            prop_assert!(f.value(x - 1e-9) * f.value(x + 1e-9) < 0.0);
        }
        let deg = reciprocal_reduction(&p).degree();
        prop_assert!(s.len() <= deg && deg <= m.max(n) as usize);
    }

    #[test]
    fn reduction_roots_map_to_unit_roots((m, n) in pair(), t in 0.05f64..6.0) {
        let p = params(m, n, t);
        let roots = find_unit_roots(&p);
        prop_assume!(!roots.at_threshold());
        let s = reciprocal_reduction(&p);
        // odd-multiplicity roots of S in (-2, 2), found by sign changes
        let grid = 20_000;
        let mut from_s = Vec::new();
        for i in 0..grid {
            let a = -2.0 + 4.0 * i as f64 / grid as f64;
            let b = -2.0 + 4.0 * (i + 1) as f64 / grid as f64;
            if s.eval(a) * s.eval(b) < 0.0 {
                from_s.push((bisect(|x| s.eval(x), a, b) / 2.0).acos());
            }
        }
        from_s.sort_by(f64::total_cmp);
        prop_assert_eq!(from_s.len(), roots.roots.len());
        for (a, b) in from_s.iter().zip(roots.sigmas()) {
            prop_assert!((a - b).abs() <= 1e-12 / (1.0 - (a.cos()).powi(2)).sqrt().max(1e-3));
        }
    }
}
