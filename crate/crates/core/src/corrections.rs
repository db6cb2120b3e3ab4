//! Temperature corrections to the Casimir force.

use crate::constants::{C, ZETA_3};
use crate::dielectric::DielectricModel;
use crate::error::{domain, CasimirError, Result};
use crate::lifshitz::{
    ideal_zero_temperature_force, matsubara_force, zero_temperature_force, Geometry, Prescription,
    ThermalState,
};
use crate::numerics::{integrate_breakpoints, Estimate};
use std::f64::consts::PI;

/// `β = c/2aω_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaParameter(f64);

impl BetaParameter {
    pub fn new(omega_p: f64, separation: f64) -> Result<Self> {
        if !(omega_p.is_finite() && omega_p > 0.0) {
            return Err(domain(
                "omega_p",
                format!("must be positive, got {omega_p}"),
            ));
        }
        if !(separation.is_finite() && separation > 0.0) {
            return Err(domain(
                "separation",
                format!("must be positive, got {separation}"),
            ));
        }
        Ok(Self(C / (2.0 * separation * omega_p)))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

fn prefactor(geom: &Geometry, thermal: &ThermalState) -> f64 {
    thermal.kt() * geom.radius / (8.0 * geom.separation * geom.separation)
}

fn positive_temperature(thermal: &ThermalState) -> Result<()> {
    if thermal.temperature > 0.0 {
        Ok(())
    } else {
        Err(domain("temperature", "must be positive"))
    }
}

/// Matsubara sum minus its zero-temperature integral.
pub fn temperature_correction(
    model: &DielectricModel,
    geom: &Geometry,
    thermal: &ThermalState,
    presc: Prescription,
    tol: f64,
) -> Result<Estimate> {
    let sum = matsubara_force(model, geom, thermal, presc, 0.5 * tol)?;
    if !sum.valid {
        return Err(CasimirError::Series { terms: sum.n_max });
    }
    let int = zero_temperature_force(model, geom, 0.5 * tol)?;
    Ok(Estimate::new(
        sum.total - int.value,
        sum.abs_error + int.abs_error,
    ))
}

/// Linear-in-`T` correction for the plasma model,
/// `(kTR/8a²)[ζ(3) + ∫₀^∞ x ln(1 - G1 e^{-x}) dx]` with `κ = β⁻²`.
pub fn linear_correction_plasma(
    omega_p: f64,
    geom: &Geometry,
    thermal: &ThermalState,
    tol: f64,
) -> Result<Estimate> {
    positive_temperature(thermal)?;
    let beta = BetaParameter::new(omega_p, geom.separation)?.value();
    let kappa = beta.powi(-2);
    let scale = 1.0 / beta;
    // ζ(3) + ∫x ln(1 - G1e^{-x}) = ∫x ln(1 + (1 - G1)/(e^x - 1)), no cancellation.
    let f = |x: f64| {
        if x == 0.0 {
            return 0.0;
        }
        let s = (kappa + x * x).sqrt();
        let xs = x + s;
        let one_minus_g1 = 4.0 * x * s / (xs * xs);
        x * (one_minus_g1 / x.exp_m1()).ln_1p()
    };
    let mut breaks = vec![0.0, 0.5, 2.0, 8.0, 20.0, 60.0];
    if scale < 60.0 {
        breaks.push(scale);
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
    }
    let q = integrate_breakpoints(f, &breaks, tol, 1e-300);
    if !q.converged {
        return Err(CasimirError::Quadrature {
            value: q.value,
            error: q.abs_error,
        });
    }
    let p = prefactor(geom, thermal);
    Ok(Estimate::new(p * q.value, p * q.abs_error))
}

/// Small-β expansion `(kTR/8a²) ζ(3) 8β(1 - 3β)`.
pub fn linear_correction_expansion(
    omega_p: f64,
    geom: &Geometry,
    thermal: &ThermalState,
) -> Result<f64> {
    positive_temperature(thermal)?;
    let beta = BetaParameter::new(omega_p, geom.separation)?.value();
    if beta >= 0.5 {
        return Err(CasimirError::Expansion(format!(
            "beta = {beta:.4} is not below 0.5"
        )));
    }
    if beta > 0.2 {
        log::warn!("beta = {beta:.3} is large; the expansion is unreliable");
    }
    Ok(prefactor(geom, thermal) * ZETA_3 * 8.0 * beta * (1.0 - 3.0 * beta))
}

/// Ideal-metal force `F₀[1 + (45ζ(3)/π³)t³ - t⁴]`, `t = T/T_eff < 1`.
pub fn ideal_metal_small_t(geom: &Geometry, thermal: &ThermalState) -> Result<f64> {
    let t = thermal.reduced(geom.separation);
    if t >= 1.0 {
        return Err(CasimirError::Expansion(format!(
            "T/T_eff = {t:.4} is not below 1"
        )));
    }
    let f0 = ideal_zero_temperature_force(geom);
    Ok(f0 * (1.0 + 45.0 * ZETA_3 / PI.powi(3) * t.powi(3) - t.powi(4)))
}
