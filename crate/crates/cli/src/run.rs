//! Dispatch a scenario over its sweep.

use crate::error::{CliError, Result};
use crate::scenario::{Kind, Point, Scenario};
use casimir_core::constants::CONSTANTS_VERSION;
use casimir_core::corrections::{
    linear_correction_expansion, linear_correction_plasma, temperature_correction,
};
use casimir_core::lifshitz::{
    extract_alpha, matsubara_force, n_zero_term, plate_plate_pressure, zero_temperature_force,
    Configuration, ThermalState,
};
use casimir_core::poisson::{poisson_force, DEFAULT_M_MAX};
use casimir_core::AbsorptionTable;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// One sweep point. `value` is in newtons (N/m² for plate–plate force,
/// dimensionless for `alpha_extract`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub param: Option<f64>,
    pub value: Option<f64>,
    pub abs_error: Option<f64>,
    pub n_zero: Option<f64>,
    pub n_terms: Option<usize>,
    pub converged: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub constants_version: String,
    pub kind: String,
    pub model: String,
    pub prescription: String,
    pub configuration: String,
    pub tolerance: f64,
    pub sweep_parameter: Option<String>,
    pub threads: usize,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub metadata: Metadata,
    pub records: Vec<Record>,
}

impl RunReport {
    pub fn failed_all(&self) -> bool {
        !self.records.is_empty() && self.records.iter().all(|r| r.error.is_some())
    }
}

struct Value {
    value: f64,
    abs_error: f64,
    n_zero: Option<f64>,
    n_terms: Option<usize>,
    converged: bool,
}

impl Value {
    fn plain(value: f64, abs_error: f64) -> Self {
        Self {
            value,
            abs_error,
            n_zero: None,
            n_terms: None,
            converged: true,
        }
    }
}

fn evaluate(kind: Kind, p: &Point, m_max: usize) -> Result<Value> {
    let (m, g, t, presc, tol) = (
        &p.model,
        &p.geometry,
        &p.thermal,
        p.prescription,
        p.tolerance,
    );
    let plate = g.configuration == Configuration::PlatePlate;
    Ok(match kind {
        Kind::Force if plate => {
            let r = plate_plate_pressure(m, g.separation, t, presc, tol)?;
            Value::plain(r.pressure, r.abs_error)
        }
        Kind::Force if t.temperature > 0.0 => {
            let r = matsubara_force(m, g, t, presc, tol)?;
            Value {
                value: r.total,
                abs_error: r.abs_error,
                n_zero: Some(r.n_zero),
                n_terms: Some(r.n_max),
                converged: r.valid,
            }
        }
        Kind::Force => {
            let r = zero_temperature_force(m, g, tol)?;
            Value::plain(r.value, r.abs_error)
        }
        Kind::ZeroTForce if plate => {
            let r = plate_plate_pressure(m, g.separation, &ThermalState::new(0.0)?, presc, tol)?;
            Value::plain(r.pressure, r.abs_error)
        }
        Kind::ZeroTForce => {
            let r = zero_temperature_force(m, g, tol)?;
            Value::plain(r.value, r.abs_error)
        }
        Kind::Correction => {
            let r = temperature_correction(m, g, t, presc, tol)?;
            Value::plain(r.value, r.abs_error)
        }
        Kind::LinearPlasma => {
            let r = linear_correction_plasma(plasma_frequency(p)?, g, t, tol)?;
            Value::plain(r.value, r.abs_error)
        }
        Kind::Expansion => Value::plain(
            linear_correction_expansion(plasma_frequency(p)?, g, t)?,
            0.0,
        ),
        Kind::PoissonCheck => {
            let res = poisson_force(m, g, t, presc, m_max, tol)?;
            let sum = matsubara_force(m, g, t, presc, tol)?;
            Value {
                value: res.total,
                abs_error: (res.total - sum.total).abs().max(res.abs_error),
                n_zero: Some(sum.n_zero),
                n_terms: Some(res.m_max),
                converged: res.converged && sum.valid,
            }
        }
        Kind::AlphaExtract => {
            let alpha = extract_alpha(m, g, t, presc, tol)?;
            let n0 = n_zero_term(m, g, t, presc, tol)?;
            Value {
                value: alpha,
                abs_error: alpha * n0.abs_error / n0.value,
                n_zero: Some(n0.value),
                n_terms: None,
                converged: true,
            }
        }
    })
}

fn plasma_frequency(p: &Point) -> Result<f64> {
    match p.model {
        casimir_core::DielectricModel::Plasma { omega_p } => Ok(omega_p),
        _ => Err(CliError::Scenario("plasma model required".into())),
    }
}

fn run_point(sc: &Scenario, table: Option<&AbsorptionTable>, param: Option<f64>) -> Record {
    let m_max = sc.m_max.unwrap_or(DEFAULT_M_MAX);
    let outcome = sc.point(table).and_then(|p| evaluate(sc.kind, &p, m_max));
    match outcome {
        Ok(v) => Record {
            param,
            value: Some(v.value),
            abs_error: Some(v.abs_error),
            n_zero: v.n_zero,
            n_terms: v.n_terms,
            converged: v.converged,
            error: None,
        },
        Err(e) => {
            log::warn!("point {param:?} failed: {e}");
            Record {
                param,
                value: None,
                abs_error: None,
                n_zero: None,
                n_terms: None,
                converged: false,
                error: Some(e.to_string()),
            }
        }
    }
}

/// Worker count from `CASIMIR_THREADS`, or rayon's default.
pub fn thread_cap() -> Option<usize> {
    std::env::var("CASIMIR_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Evaluate every sweep point (concurrently) and collect in input order.
/// Point failures are recorded, not returned; see [`RunReport::failed_all`].
pub fn run(sc: &Scenario) -> Result<RunReport> {
    sc.validate()?;
    let start = Instant::now();
    let table = sc.load_table()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap() {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Scenario(e.to_string()))?;
    let records = pool.install(|| match &sc.sweep {
        None => vec![run_point(sc, table.as_ref(), None)],
        Some(sw) => sw
            .values()
            .into_par_iter()
            .map(|v| run_point(&sc.with_parameter(sw.parameter, v), table.as_ref(), Some(v)))
            .collect(),
    });
    let metadata = Metadata {
        constants_version: CONSTANTS_VERSION.to_string(),
        kind: sc.kind.as_str().to_string(),
        model: format!("{:?}", sc.model.model_type).to_lowercase(),
        prescription: casimir_core::Prescription::from(sc.prescription).to_string(),
        configuration: match sc.geometry.configuration {
            crate::scenario::ConfigurationSpec::SpherePlate => "sphere_plate".into(),
            crate::scenario::ConfigurationSpec::PlatePlate => "plate_plate".into(),
        },
        tolerance: sc.tolerance,
        sweep_parameter: sc.sweep.as_ref().map(|s| s.parameter.as_str().to_string()),
        threads: pool.current_num_threads(),
        wall_time_s: start.elapsed().as_secs_f64(),
    };
    Ok(RunReport { metadata, records })
}
