//! wasm-bindgen entry points for `www/index.html`.
//!
//! Every export returns a flat `Float64Array` of fixed-width rows; the
//! row layout is given on each function. The `*_rows` functions hold the
//! logic and are plain Rust so they can be tested natively.

use casimir_core::constants::C;
use casimir_core::corrections::{
    linear_correction_expansion, linear_correction_plasma, temperature_correction,
};
use casimir_core::lifshitz::{extract_alpha, Geometry, Prescription, ThermalState};
use casimir_core::DielectricModel;
use wasm_bindgen::prelude::*;

const TOL: f64 = 1e-8;
const MAX_POINTS: usize = 400;

fn log_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, String> {
    if !(lo > 0.0 && hi > lo && lo.is_finite() && hi.is_finite()) {
        return Err(format!("need 0 < lo < hi, got [{lo}, {hi}]"));
    }
    if !(2..=MAX_POINTS).contains(&n) {
        return Err(format!("point count must be in 2..={MAX_POINTS}"));
    }
    Ok((0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect())
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Rows `[ζ, ε_plasma − 1, ε_drude − 1]` on a log grid in ζ (rad/s).
pub fn permittivity_rows(
    omega_p: f64,
    omega_tau: f64,
    zeta_lo: f64,
    zeta_hi: f64,
    n: usize,
) -> Result<Vec<f64>, String> {
    let plasma = DielectricModel::plasma(omega_p).map_err(err)?;
    let drude = DielectricModel::drude(omega_p, omega_tau).map_err(err)?;
    let mut out = Vec::with_capacity(3 * n);
    for z in log_grid(zeta_lo, zeta_hi, n)? {
        out.extend([
            z,
            plasma.eps_minus_one(z).map_err(err)?,
            drude.eps_minus_one(z).map_err(err)?,
        ]);
    }
    Ok(out)
}

/// Rows `[a, ΔF_plasma, ΔF_drude, linear, expansion]` in metres and newtons
/// over a log grid of separations. `ΔF` is sum minus integral (Schwinger);
/// `linear` is the first-order plasma correction by quadrature and
/// `expansion` its small-β closed form (NaN where β is too large).
pub fn correction_rows(
    omega_p: f64,
    omega_tau: f64,
    radius: f64,
    temperature: f64,
    a_lo: f64,
    a_hi: f64,
    n: usize,
) -> Result<Vec<f64>, String> {
    let plasma = DielectricModel::plasma(omega_p).map_err(err)?;
    let drude = DielectricModel::drude(omega_p, omega_tau).map_err(err)?;
    let t = ThermalState::new(temperature).map_err(err)?;
    let mut out = Vec::with_capacity(5 * n);
    for a in log_grid(a_lo, a_hi, n)? {
        let g = Geometry::sphere_plate(a, radius).map_err(err)?;
        let dp =
            temperature_correction(&plasma, &g, &t, Prescription::Schwinger, TOL).map_err(err)?;
        let dd =
            temperature_correction(&drude, &g, &t, Prescription::Schwinger, TOL).map_err(err)?;
        let lin = linear_correction_plasma(omega_p, &g, &t, TOL).map_err(err)?;
        let exp = linear_correction_expansion(omega_p, &g, &t).unwrap_or(f64::NAN);
        out.extend([a, dp.value, dd.value, lin.value, exp]);
    }
    Ok(out)
}

/// Rows `[β, α_plasma, α_drude, 1 − 4β]` for the direct prescription, with
/// `β = c / 2aω_p` swept at fixed separation `a`.
pub fn alpha_rows(
    separation: f64,
    omega_tau_over_omega_p: f64,
    beta_lo: f64,
    beta_hi: f64,
    n: usize,
) -> Result<Vec<f64>, String> {
    let g = Geometry::sphere_plate(separation, 1e3 * separation).map_err(err)?;
    let t = ThermalState::new(300.0).map_err(err)?;
    let mut out = Vec::with_capacity(4 * n);
    for beta in log_grid(beta_lo, beta_hi, n)? {
        let wp = C / (2.0 * separation * beta);
        let plasma = DielectricModel::plasma(wp).map_err(err)?;
        let drude = DielectricModel::drude(wp, omega_tau_over_omega_p * wp).map_err(err)?;
        let ap = extract_alpha(&plasma, &g, &t, Prescription::Direct, TOL).map_err(err)?;
        let ad = extract_alpha(&drude, &g, &t, Prescription::Direct, TOL).map_err(err)?;
        out.extend([beta, ap, ad, 1.0 - 4.0 * beta]);
    }
    Ok(out)
}

fn js(r: Result<Vec<f64>, String>) -> Result<Vec<f64>, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn permittivity(
    omega_p: f64,
    omega_tau: f64,
    zeta_lo: f64,
    zeta_hi: f64,
    n: usize,
) -> Result<Vec<f64>, JsError> {
    js(permittivity_rows(omega_p, omega_tau, zeta_lo, zeta_hi, n))
}

#[wasm_bindgen]
pub fn corrections(
    omega_p: f64,
    omega_tau: f64,
    radius: f64,
    temperature: f64,
    a_lo: f64,
    a_hi: f64,
    n: usize,
) -> Result<Vec<f64>, JsError> {
    js(correction_rows(
        omega_p,
        omega_tau,
        radius,
        temperature,
        a_lo,
        a_hi,
        n,
    ))
}

#[wasm_bindgen]
pub fn alpha(
    separation: f64,
    omega_tau_over_omega_p: f64,
    beta_lo: f64,
    beta_hi: f64,
    n: usize,
) -> Result<Vec<f64>, JsError> {
    js(alpha_rows(
        separation,
        omega_tau_over_omega_p,
        beta_lo,
        beta_hi,
        n,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permittivity_rows_shape_and_order() {
        let r = permittivity_rows(2e16, 5e13, 1e12, 1e18, 7).unwrap();
        assert_eq!(r.len(), 21);
        for row in r.chunks(3) {
            assert!(row[1] > row[2] && row[2] > 0.0);
        }
        assert!((r[18] - 1e18).abs() < 1e6);
    }

    #[test]
    fn correction_rows_match_afm_numbers() {
        let r = correction_rows(2e16, 5e13, 1e-4, 300.0, 1e-7, 2e-7, 2).unwrap();
        assert_eq!(r.len(), 10);
        assert!((r[3] / 2.53e-12 - 1.0).abs() < 0.01);
        assert!((r[4] / 2.89e-12 - 1.0).abs() < 0.01);
        assert!(r[2] > r[1] && r[1] > 0.0);
    }

    #[test]
    fn alpha_rows_limits() {
        let r = alpha_rows(1e-7, 2.5e-3, 0.01, 0.1, 3).unwrap();
        for row in r.chunks(4) {
            assert!((row[2] - 0.5).abs() < 1e-6);
            assert!(row[1] < 1.0 && row[1] > row[3]);
        }
    }

    #[test]
    fn bad_ranges_are_errors() {
        assert!(permittivity_rows(2e16, 5e13, 1e15, 1e12, 5).is_err());
        assert!(correction_rows(2e16, 5e13, 1e-4, 300.0, 1e-7, 1e-6, 1).is_err());
        assert!(alpha_rows(-1.0, 0.0, 0.01, 0.1, 3).is_err());
    }
}
