//! Self-check: the resummed force against the Matsubara sum, and the
//! static-term coefficient under both prescriptions.

use casimir_core::constants::C;
use casimir_core::lifshitz::{
    extract_alpha, matsubara_force, Geometry, Prescription, ThermalState,
};
use casimir_core::poisson::{poisson_force_with, PhiProfile};
use casimir_core::{DielectricModel, Result};
use std::f64::consts::PI;

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: String) -> Check {
    Check {
        name: name.into(),
        passed,
        detail,
    }
}

fn alpha_checks(out: &mut Vec<Check>) -> Result<()> {
    let g = Geometry::sphere_plate(1e-7, 1e-4)?;
    let t = ThermalState::new(300.0)?;
    let models = [
        DielectricModel::IdealMirror,
        DielectricModel::plasma(2e16)?,
        DielectricModel::drude(2e16, 5e13)?,
        DielectricModel::conductor(2.2e-8)?,
    ];
    for m in &models {
        let a = extract_alpha(m, &g, &t, Prescription::Schwinger, 1e-10)?;
        out.push(check(
            format!("alpha schwinger {}", m.kind()),
            (a - 1.0).abs() < 1e-8,
            format!("{a:.10}"),
        ));
    }
    let drude = extract_alpha(&models[2], &g, &t, Prescription::Direct, 1e-10)?;
    out.push(check(
        "alpha direct drude",
        (drude - 0.5).abs() < 1e-8,
        format!("{drude:.10}"),
    ));

    // Direct plasma: α → 1 − 4β with a quadratic remainder.
    let a = 1e-6;
    let g = Geometry::sphere_plate(a, 1e-4)?;
    for beta in [0.01, 0.005] {
        let m = DielectricModel::plasma(C / (2.0 * a * beta))?;
        let v = extract_alpha(&m, &g, &t, Prescription::Direct, 1e-11)?;
        let k = (v - (1.0 - 4.0 * beta)) / (beta * beta);
        out.push(check(
            format!("alpha direct plasma beta={beta}"),
            k.abs() < 40.0,
            format!("{v:.8}, remainder {k:.2} beta^2"),
        ));
    }
    Ok(())
}

fn poisson_checks(out: &mut Vec<Check>) -> Result<()> {
    let g = Geometry::sphere_plate(1e-7, 1e-4)?;
    let models = [
        DielectricModel::IdealMirror,
        DielectricModel::plasma(2e16)?,
        DielectricModel::drude(2e16, 5e13)?,
    ];
    for m in &models {
        let profile = PhiProfile::new(m, g.separation, 1e-9)?;
        for tau in [0.5, 3.0] {
            let t = ThermalState::new(tau / (2.0 * PI) * ThermalState::t_eff(g.separation))?;
            for presc in [Prescription::Schwinger, Prescription::Direct] {
                let sum = matsubara_force(m, &g, &t, presc, 1e-9)?.total;
                let res = poisson_force_with(&profile, &g, &t, presc, 64, 1e-9)?;
                let rel = ((res.total - sum) / sum).abs();
                out.push(check(
                    format!("poisson {} tau={tau} {presc}", m.kind()),
                    res.converged && rel < 1e-6,
                    format!("rel {rel:.2e}"),
                ));
            }
        }
    }
    Ok(())
}

/// Run every check. An evaluation error becomes a failed check.
pub fn verify() -> Vec<Check> {
    let mut out = Vec::new();
    if let Err(e) = alpha_checks(&mut out) {
        out.push(check("alpha suite", false, e.to_string()));
    }
    if let Err(e) = poisson_checks(&mut out) {
        out.push(check("poisson suite", false, e.to_string()));
    }
    out
}
