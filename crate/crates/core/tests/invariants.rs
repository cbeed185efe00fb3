use std::f64::consts::{PI, TAU};

use pbg_core::*;
use proptest::prelude::*;

fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

#[test]
fn zero_rate_is_a_power_law() {
    for &t in &[0.1, 1.0, 10.0] {
        let got = frac_exp(FracExpArg::half(Complex64::new(0.0, 0.0), t)).unwrap();
        let want = t.sqrt() / gamma(1.5);
        assert!(
            (got.re - want).abs() <= 1e-12 * want && got.im == 0.0,
            "t={t}"
        );
    }
}

#[test]
fn degenerate_branch_meets_generic_branch() {
    for &f in &[1.0, 0.7, 1.6] {
        let edge = f64::powf(f, -3.0);
        let at = ReservoirParams::with_all(1.0, f, edge).unwrap();
        assert!(at.is_degenerate());
        for sign in [-1.0, 1.0] {
            let near =
                ReservoirParams::with_all(1.0, f, edge + sign * 10.0 * DEGENERACY_TOL).unwrap();
            assert!(!near.is_degenerate());
            for i in 0..=1000 {
                let t = i as f64 * 0.01;
                let gap = (envelope_amplitude(&near, t).unwrap()
                    - envelope_amplitude(&at, t).unwrap())
                .norm();
                assert!(gap <= 1e-6, "f={f} sign={sign} t={t} gap={gap:e}");
            }
        }
    }
}

#[test]
fn amplitude_never_exceeds_one() {
    for &d in &[-10.0, -5.0, -1.0, 0.0, 1.0, 2.0] {
        let params = ReservoirParams::new(d).unwrap();
        for i in 0..=5000 {
            let t = i as f64 * 0.01;
            let u = excited_amplitude(&params, t).unwrap();
            assert!(u.norm() <= 1.0 + 1e-9, "delta={d} t={t} |u|={}", u.norm());
        }
    }
}

#[test]
fn entropy_vanishes_for_pure_excited_states() {
    let init = BlochInit::excited();
    for u in [
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::from_polar(1.0, 2.0),
    ] {
        assert_eq!(von_neumann_entropy(&density_matrix(&init, u).unwrap()), 0.0);
    }
}

#[test]
fn density_invariants_hold_along_trajectories() {
    let grid = GridSpec::new(30.0, 600).unwrap();
    for &d in &[-10.0, -5.0, -1.0, 0.0, 2.0] {
        let params = ReservoirParams::new(d).unwrap();
        for &(theta, phi) in &[(0.0, 0.0), (0.7, 1.3), (PI / 2.0, 4.0), (2.5, 6.0)] {
            let init = BlochInit::new(theta, phi).unwrap();
            for t in grid.times() {
                let u = excited_amplitude(&params, t).unwrap();
                density_matrix(&init, u)
                    .unwrap()
                    .check_invariants(1e-12)
                    .unwrap();
            }
        }
    }
}

#[test]
fn steady_concurrence_tracks_gap_depth() {
    for family in [Family::Phi, Family::Psi] {
        let init = TwoQubitInit::bell(family);
        for &d in &[0.0, 0.5, 1.0, 2.0] {
            let value = steady_concurrence(&init, &ReservoirParams::new(d).unwrap()).unwrap();
            assert_eq!(value, 0.0, "{family} delta={d}");
        }
        let trapped: Vec<f64> = [-1.0, -2.0, -5.0, -10.0]
            .iter()
            .map(|&d| steady_concurrence(&init, &ReservoirParams::new(d).unwrap()).unwrap())
            .collect();
        assert!(
            trapped.windows(2).all(|w| w[1] > w[0]),
            "{family}: {trapped:?}"
        );
    }
}

#[test]
fn unclamped_psi_argument_dips_for_small_alpha() {
    // below the trapping region the expression first falls, then rises
    let init = TwoQubitInit::from_alpha2(Family::Psi, 0.1).unwrap();
    assert!(concurrence_argument(&init, 0.1) < concurrence_argument(&init, 0.0));
    assert!(concurrence_argument(&init, 1.0) > concurrence_argument(&init, 0.1));
}

#[test]
fn psi_threshold_at_gap_depth_five() {
    let p = steady_probability(&ReservoirParams::new(-5.0).unwrap()).unwrap();
    let threshold = (1.0 - p).powi(2) / (1.0 + (1.0 - p).powi(2));
    let below = TwoQubitInit::from_alpha2(Family::Psi, threshold - 1e-6).unwrap();
    let above = TwoQubitInit::from_alpha2(Family::Psi, threshold + 1e-6).unwrap();
    assert!(concurrence_argument(&below, p) < 0.0);
    assert!(concurrence_argument(&above, p) > 0.0);
    assert!(threshold < 1.0 / 3.0);
}

fn amplitude() -> impl Strategy<Value = Complex64> {
    (0.0..=1.0f64, 0.0..TAU).prop_map(|(r, phase)| Complex64::from_polar(r, phase))
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::Phi), Just(Family::Psi)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn series_matches_closed_form(r in 0.05..=3.0f64, phase in -PI..PI, t in 0.01..=2.0f64) {
        let a = Complex64::from_polar(r, phase);
        let series = frac_exp_series(FracExpArg::half(a, t), 1e-15).unwrap();
        let closed = frac_exp_closed(a, t).unwrap();
        prop_assert!((series - closed).norm() <= 1e-10 * closed.norm());
    }

    #[test]
    fn vieta_relations(delta in -20.0..20.0f64, f in 0.3..3.0f64) {
        let params = ReservoirParams::with_all(1.0, f, delta).unwrap();
        prop_assert!(indicial_roots(&params).vieta_residual(&params) < 1e-12);
    }

    #[test]
    fn entropy_ignores_initial_phase(theta in 0.0..=PI, phi in 0.0..TAU, u in amplitude()) {
        let reference = von_neumann_entropy(&density_matrix(&BlochInit::new(theta, 0.0).unwrap(), u).unwrap());
        let rotated = von_neumann_entropy(&density_matrix(&BlochInit::new(theta, phi).unwrap(), u).unwrap());
        prop_assert!((reference - rotated).abs() < 1e-12);
    }

    #[test]
    fn concurrence_ignores_gamma_phase(fam in family(), alpha in 0.0..=1.0f64, phase in 0.0..TAU, u in amplitude()) {
        let reference = concurrence(&TwoQubitInit::new(fam, alpha, 0.0).unwrap(), u).unwrap();
        let rotated = TwoQubitInit::new(fam, alpha, phase).unwrap();
        prop_assert!((concurrence(&rotated, u).unwrap() - reference).abs() < 1e-15);
        let generic = two_qubit_elements(&rotated, u).unwrap().concurrence(fam);
        prop_assert!((generic - reference).abs() < 1e-12);
    }

    #[test]
    fn concurrence_grows_with_excitation(fam in family(), alpha in 0.0..=1.0f64, p in 0.0..1.0f64, dp in 0.0..1.0f64) {
        let init = TwoQubitInit::new(fam, alpha, 0.0).unwrap();
        let q = (p + dp * (1.0 - p)).min(1.0);
        let (lo, hi) = (concurrence_argument(&init, p), concurrence_argument(&init, q));
        prop_assert!(hi.max(0.0) >= lo.max(0.0) - 1e-15);
        if lo >= 0.0 || alpha >= init.gamma_modulus() {
            prop_assert!(hi >= lo - 1e-15);
        }
    }

    #[test]
    fn trapping_condition_is_exact(alpha2 in 0.0..1.0f64, delta in -12.0..-0.2f64) {
        let p = steady_probability(&ReservoirParams::new(delta).unwrap()).unwrap();
        let init = TwoQubitInit::from_alpha2(Family::Psi, alpha2).unwrap();
        let ratio = alpha2.sqrt() / (1.0 - alpha2).sqrt();
        prop_assume!((ratio - (1.0 - p)).abs() > 1e-9);
        prop_assert_eq!(concurrence_argument(&init, p) > 0.0, ratio > 1.0 - p);
    }
}
