use casimir_core::constants::{EPSILON_0, ZETA_3};
use casimir_core::corrections::{
    linear_correction_expansion, linear_correction_plasma, BetaParameter,
};
use casimir_core::dielectric::DielectricModel;
use casimir_core::lifshitz::{
    matsubara_force, mode_integral, reflection_factors, zero_temperature_force, Geometry,
    Prescription, ThermalState,
};
use casimir_core::numerics::integrate_adaptive;
use casimir_core::poisson::PhiProfile;
use casimir_core::Permittivity;
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn metal(kind: u8, wp: f64, wt: f64) -> DielectricModel {
    match kind % 4 {
        0 => DielectricModel::IdealMirror,
        1 => DielectricModel::plasma(wp).unwrap(),
        2 => DielectricModel::drude(wp, wt).unwrap(),
        _ => DielectricModel::conductor(wt / (EPSILON_0 * wp * wp)).unwrap(),
    }
}

fn room() -> ThermalState {
    ThermalState::new(300.0).unwrap()
}

#[test]
fn log_factor_integral_is_minus_zeta3() {
    let q = integrate_adaptive(
        |x: f64| {
            if x == 0.0 {
                0.0
            } else {
                x * (-(-x).exp_m1()).ln()
            }
        },
        0.0,
        60.0,
        1e-12,
        0.0,
    );
    assert!(q.converged);
    assert!((q.value + ZETA_3).abs() < 1e-11);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn second_factor_dominates(eps in 1.0f64..1e8, x_n in 1e-4f64..40.0, dx in 0.0f64..30.0) {
        let x = x_n + dx;
        let (g1, g2) = reflection_factors(Permittivity::Finite(eps), x, x_n).unwrap();
        prop_assert!((0.0..=1.0).contains(&g1) && (0.0..=1.0).contains(&g2));
        prop_assert!(g2 >= g1, "G1={g1} G2={g2}");
    }

    #[test]
    fn forces_attract_and_terms_share_sign(
        kind in 0u8..4,
        wp_exp in 15.5f64..16.8,
        wt_exp in 12.0f64..14.5,
        a_nm in 60.0f64..2000.0,
        direct in any::<bool>(),
    ) {
        let m = metal(kind, 10f64.powf(wp_exp), 10f64.powf(wt_exp));
        let g = Geometry::sphere_plate(a_nm * 1e-9, 1e-4).unwrap();
        let presc = if direct { Prescription::Direct } else { Prescription::Schwinger };
        let r = matsubara_force(&m, &g, &room(), presc, TOL).unwrap();
        prop_assert!(r.valid);
        prop_assert!(r.total > 0.0 && r.n_zero > 0.0);
        prop_assert!(r.terms.iter().all(|&t| t > 0.0));
        prop_assert!((r.total - r.n_zero - r.positive_terms_sum()).abs() <= r.abs_error + 1e-13 * r.total);
    }

    #[test]
    fn force_decreases_with_separation(
        kind in 0u8..4,
        a_nm in 60.0f64..1500.0,
        ratio in 1.05f64..3.0,
    ) {
        let m = metal(kind, 2e16, 5e13);
        let near = Geometry::sphere_plate(a_nm * 1e-9, 1e-4).unwrap();
        let far = Geometry::sphere_plate(a_nm * ratio * 1e-9, 1e-4).unwrap();
        let fn_ = matsubara_force(&m, &near, &room(), Prescription::Schwinger, TOL).unwrap().total;
        let ff = matsubara_force(&m, &far, &room(), Prescription::Schwinger, TOL).unwrap().total;
        prop_assert!(fn_ > ff);
        let zn = zero_temperature_force(&m, &near, TOL).unwrap().value;
        let zf = zero_temperature_force(&m, &far, TOL).unwrap().value;
        prop_assert!(zn > zf);
    }

    #[test]
    fn mirrors_bound_every_term(kind in 1u8..4, a_nm in 60.0f64..1500.0, wp_exp in 15.5f64..16.8) {
        let m = metal(kind, 10f64.powf(wp_exp), 5e13);
        let g = Geometry::sphere_plate(a_nm * 1e-9, 1e-4).unwrap();
        let ideal = matsubara_force(&DielectricModel::IdealMirror, &g, &room(), Prescription::Direct, TOL).unwrap();
        let real = matsubara_force(&m, &g, &room(), Prescription::Direct, TOL).unwrap();
        prop_assert!(real.total <= ideal.total);
        prop_assert!(real.n_zero <= ideal.n_zero * (1.0 + 1e-12));
        for (r, i) in real.terms.iter().zip(&ideal.terms) {
            prop_assert!(*r <= *i);
        }
    }

    #[test]
    fn prescription_touches_only_static_term(kind in 0u8..4, a_nm in 60.0f64..1500.0) {
        let m = metal(kind, 2e16, 5e13);
        let g = Geometry::sphere_plate(a_nm * 1e-9, 1e-4).unwrap();
        let s = matsubara_force(&m, &g, &room(), Prescription::Schwinger, TOL).unwrap();
        let d = matsubara_force(&m, &g, &room(), Prescription::Direct, TOL).unwrap();
        prop_assert_eq!(s.terms, d.terms);
    }

    #[test]
    fn plasma_correction_positive_and_falls_with_omega_p(
        wp_exp in 15.3f64..17.0,
        step in 0.05f64..0.5,
        a_nm in 60.0f64..2000.0,
    ) {
        let g = Geometry::sphere_plate(a_nm * 1e-9, 1e-4).unwrap();
        let lo = linear_correction_plasma(10f64.powf(wp_exp), &g, &room(), TOL).unwrap().value;
        let hi = linear_correction_plasma(10f64.powf(wp_exp + step), &g, &room(), TOL).unwrap().value;
        prop_assert!(lo > 0.0 && hi > 0.0);
        prop_assert!(hi < lo);
    }

    #[test]
    fn profile_bounds(kind in 0u8..4, z in 0.0f64..40.0, dz in 0.01f64..5.0) {
        let m = metal(kind, 2e16, 5e13);
        let a = mode_integral(&m, 1e-7, z, TOL).unwrap().value;
        let b = mode_integral(&m, 1e-7, z + dz, TOL).unwrap().value;
        prop_assert!(a <= 0.0 && b <= 0.0);
        prop_assert!(a.abs() <= 2.0 * ZETA_3 * (1.0 + 1e-12));
        prop_assert!(b >= a);
    }
}

#[test]
fn profile_cache_follows_quadrature() {
    let m = DielectricModel::drude(2e16, 5e13).unwrap();
    let p = PhiProfile::new(&m, 1e-7, TOL).unwrap();
    for z in [1e-9, 1e-5, 1.87e-4, 3e-3, 0.2, 1.0, 7.5, 30.0] {
        let direct = mode_integral(&m, 1e-7, z, 1e-11).unwrap().value;
        assert!(
            (p.eval(z) - direct).abs() <= 1e-9 * direct.abs().max(1e-3),
            "z={z}"
        );
    }
}

#[test]
fn expansion_error_is_first_order_in_beta() {
    // The exact correction is 8βζ(3)(1 - 6β + O(β²)), so the truncated
    // form with (1 - 3β) is off by 3β at leading order.
    let g = Geometry::sphere_plate(1e-6, 1e-3).unwrap();
    let t = room();
    let mut prev = None;
    for beta in [0.02, 0.01, 0.005, 0.0025] {
        let wp = BetaParameter::new(1.0, g.separation).unwrap().value() / beta;
        let full = linear_correction_plasma(wp, &g, &t, 1e-11).unwrap().value;
        let expanded = linear_correction_expansion(wp, &g, &t).unwrap();
        let rel = (full - expanded).abs() / full;
        assert!(
            (rel / beta - 3.0).abs() < 0.6,
            "beta={beta}: rel/beta = {}",
            rel / beta
        );
        if let Some(p) = prev {
            let shrink: f64 = p / rel;
            assert!(
                shrink > 1.8 && shrink < 2.3,
                "halving beta shrank the error by {shrink}"
            );
        }
        prev = Some(rel);
    }
}
