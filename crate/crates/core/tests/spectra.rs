use kdp_core::fields::Gauge;
use kdp_core::scalar::q;
use kdp_core::spectra::{
    gauge_difference, gauge_levels, residuals_spin0, residuals_spin1, spin0_b_sign_difference,
    spin0_finite_difference, spin1_b_sign_mirror, spin1_route, LandauParams, Route,
};
use kdp_core::KdpError;

#[test]
fn landau_and_symmetric_gauge_agree() {
    let p = LandauParams::default();
    assert!(gauge_difference(&p).unwrap() < 1e-6);
    let symmetric = gauge_levels(-0.5, Gauge::Symmetric, 4, 14, 1e-8).unwrap();
    for (n, v) in symmetric.iter().enumerate() {
        assert!((v - 0.5 * (2 * n + 1) as f64).abs() < 1e-10, "n={n}: {v}");
    }
}

#[test]
fn spin0_is_even_in_b() {
    let p = LandauParams { grid_n: 256, ..Default::default() };
    assert!(spin0_b_sign_difference(&p).unwrap() < 1e-12);
}

#[test]
fn spin1_projections_swap_under_b_flip() {
    let p = LandauParams { grid_n: 128, n_max: 2, box_lengths: 30.0, ..LandauParams::spin1_default() };
    assert!(spin1_b_sign_mirror(&p, Route::FourthOrder).unwrap() < 1e-10);
}

#[test]
fn spin0_levels_follow_the_closed_form() {
    let p = LandauParams { p_z: q(1, 2), b: q(-2, 1), ..Default::default() };
    for l in spin0_finite_difference(&p).unwrap() {
        let exact = p.exact_spin0(l.n);
        assert!(((l.e2 - exact) / exact).abs() < 1e-6, "n={}: {} vs {exact}", l.n, l.e2);
        assert!((l.e * l.e - l.e2).abs() < 1e-12);
    }
}

#[test]
fn spin1_lowest_level_has_aligned_spin() {
    let p = LandauParams { n_max: 1, ..LandauParams::spin1_default() };
    let levels = spin1_route(&p, Route::FourthOrder).unwrap();
    let lowest = levels.iter().min_by(|a, b| a.e2.total_cmp(&b.e2)).unwrap();
    assert_eq!((lowest.spin_projection, lowest.n), (1, 0));
    assert!((lowest.e2 - 1.0).abs() < 1e-6);
}

#[test]
fn spin0_residuals_cover_every_relation() {
    let p = LandauParams::default();
    let reports = residuals_spin0(&p, &[0, 1, 2, 3, 4], 1e-6).unwrap();
    for r in &reports {
        assert!(r.passed, "n={}: {:?}", r.n, r.residuals);
        let names: Vec<&str> = r.residuals.iter().map(|x| x.name.as_str()).collect();
        for needed in ["klein-gordon", "lambda", "constraint", "3.3[nu=1]", "3.7-first"] {
            assert!(names.contains(&needed), "{needed} missing from {names:?}");
        }
    }
}

#[test]
fn spin1_residuals_at_default_grid() {
    let p = LandauParams { n_max: 1, ..LandauParams::spin1_default() };
    let levels: Vec<(i8, usize)> = [1i8, 0, -1].iter().flat_map(|&s| (0..=1).map(move |n| (s, n))).collect();
    for r in residuals_spin1(&p, &levels, 1e-5).unwrap() {
        assert!(r.passed, "s={} n={}: {:?}", r.spin_projection, r.n, r.residuals);
    }
}

#[test]
fn invalid_parameters_are_rejected() {
    let zero_b = LandauParams { b: q(0, 1), ..Default::default() };
    assert!(matches!(spin0_finite_difference(&zero_b), Err(KdpError::InvalidParameter(_))));
    let neutral = LandauParams { charge: q(0, 1), ..LandauParams::spin1_default() };
    assert!(matches!(spin1_route(&neutral, Route::ORedEigen), Err(KdpError::InvalidParameter(_))));
    assert!(residuals_spin1(&LandauParams::spin1_default(), &[(2, 0)], 1e-5).is_err());
}
