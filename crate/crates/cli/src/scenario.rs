//! Scenario files: one computation, optionally swept over one parameter.

use crate::error::{CliError, Result};
use casimir_core::lifshitz::{Configuration, Geometry, Prescription, ThermalState};
use casimir_core::{AbsorptionTable, DielectricModel};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Force,
    #[serde(rename = "zero_T_force", alias = "zero_t_force")]
    ZeroTForce,
    Correction,
    LinearPlasma,
    Expansion,
    PoissonCheck,
    AlphaExtract,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Force => "force",
            Kind::ZeroTForce => "zero_T_force",
            Kind::Correction => "correction",
            Kind::LinearPlasma => "linear_plasma",
            Kind::Expansion => "expansion",
            Kind::PoissonCheck => "poisson_check",
            Kind::AlphaExtract => "alpha_extract",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrescriptionSpec {
    #[default]
    Schwinger,
    Direct,
}

impl From<PrescriptionSpec> for Prescription {
    fn from(p: PrescriptionSpec) -> Self {
        match p {
            PrescriptionSpec::Schwinger => Prescription::Schwinger,
            PrescriptionSpec::Direct => Prescription::Direct,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelType {
    Ideal,
    Plasma,
    Drude,
    Conductor,
    Tabulated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    #[serde(rename = "type")]
    pub model_type: ModelType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_p_rad_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_tau_rad_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resistivity_ohm_m: Option<f64>,
    /// CSV with header `omega_rad_s,eps_imag`; relative paths resolve against the scenario file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfigurationSpec {
    #[default]
    SpherePlate,
    PlatePlate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySpec {
    pub separation_m: f64,
    pub radius_m: f64,
    #[serde(default)]
    pub configuration: ConfigurationSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    SeparationM,
    RadiusM,
    TemperatureK,
    OmegaPRadS,
    OmegaTauRadS,
    ResistivityOhmM,
}

impl SweepParameter {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::SeparationM => "separation_m",
            Self::RadiusM => "radius_m",
            Self::TemperatureK => "temperature_k",
            Self::OmegaPRadS => "omega_p_rad_s",
            Self::OmegaTauRadS => "omega_tau_rad_s",
            Self::ResistivityOhmM => "resistivity_ohm_m",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl SweepSpec {
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                if n == 1 {
                    return self.start;
                }
                let f = i as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.start + f * (self.stop - self.start),
                    Spacing::Log => self.start * (self.stop / self.start).powf(f),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub kind: Kind,
    #[serde(default)]
    pub prescription: PrescriptionSpec,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub temperature_k: f64,
    /// Fourier terms for `poisson_check`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_max: Option<usize>,
    pub model: ModelSpec,
    pub geometry: GeometrySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
}

fn default_tolerance() -> f64 {
    casimir_core::lifshitz::DEFAULT_TOL
}

/// Everything a single point needs, already validated.
#[derive(Debug, Clone)]
pub struct Point {
    pub model: DielectricModel,
    pub geometry: Geometry,
    pub thermal: ThermalState,
    pub prescription: Prescription,
    pub tolerance: f64,
}

impl Scenario {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let sc: Scenario = toml::from_str(s).map_err(|e| CliError::Scenario(e.to_string()))?;
        sc.validate()?;
        Ok(sc)
    }

    /// Parse and resolve `table_csv` relative to the file.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut sc = Self::from_toml_str(&text)?;
        if let Some(t) = &sc.model.table_csv {
            if t.is_relative() {
                let base = path.parent().unwrap_or(Path::new("."));
                sc.model.table_csv = Some(base.join(t));
            }
        }
        Ok(sc)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("scenario serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance < 1.0) {
            return Err(CliError::Scenario(format!(
                "tolerance must be in (0, 1), got {}",
                self.tolerance
            )));
        }
        if !(self.temperature_k >= 0.0 && self.temperature_k.is_finite()) {
            return Err(CliError::Scenario(
                "temperature_k must be non-negative".into(),
            ));
        }
        if let Some(sw) = &self.sweep {
            if !(sw.start > 0.0 && sw.stop > 0.0 && sw.start.is_finite() && sw.stop.is_finite()) {
                return Err(CliError::Scenario("sweep range must be positive".into()));
            }
            if sw.stop < sw.start || (sw.stop == sw.start && sw.points > 1) {
                return Err(CliError::Scenario(
                    "sweep range must be ordered, start < stop".into(),
                ));
            }
        }
        let needs = |field: Option<f64>, name: &str| {
            field
                .map(|_| ())
                .ok_or_else(|| CliError::Scenario(format!("model needs `{name}`")))
        };
        match self.model.model_type {
            ModelType::Ideal => {}
            ModelType::Plasma => needs(self.model.omega_p_rad_s, "omega_p_rad_s")?,
            ModelType::Drude => {
                needs(self.model.omega_p_rad_s, "omega_p_rad_s")?;
                needs(self.model.omega_tau_rad_s, "omega_tau_rad_s")?;
            }
            ModelType::Conductor => needs(self.model.resistivity_ohm_m, "resistivity_ohm_m")?,
            ModelType::Tabulated => {
                if self.model.table_csv.is_none() {
                    return Err(CliError::Scenario("model needs `table_csv`".into()));
                }
            }
        }
        if matches!(self.kind, Kind::LinearPlasma | Kind::Expansion)
            && self.model.model_type != ModelType::Plasma
        {
            return Err(CliError::Scenario(format!(
                "`{}` is defined for the plasma model only",
                self.kind.as_str()
            )));
        }
        Ok(())
    }

    /// Copy with the swept parameter set to `value`.
    pub fn with_parameter(&self, param: SweepParameter, value: f64) -> Self {
        let mut s = self.clone();
        match param {
            SweepParameter::SeparationM => s.geometry.separation_m = value,
            SweepParameter::RadiusM => s.geometry.radius_m = value,
            SweepParameter::TemperatureK => s.temperature_k = value,
            SweepParameter::OmegaPRadS => s.model.omega_p_rad_s = Some(value),
            SweepParameter::OmegaTauRadS => s.model.omega_tau_rad_s = Some(value),
            SweepParameter::ResistivityOhmM => s.model.resistivity_ohm_m = Some(value),
        }
        s
    }

    pub fn build_model(&self, table: Option<&AbsorptionTable>) -> Result<DielectricModel> {
        let m = &self.model;
        let wp = m.omega_p_rad_s.unwrap_or(0.0);
        let wt = m.omega_tau_rad_s.unwrap_or(0.0);
        Ok(match m.model_type {
            ModelType::Ideal => DielectricModel::IdealMirror,
            ModelType::Plasma => DielectricModel::plasma(wp)?,
            ModelType::Drude => DielectricModel::drude(wp, wt)?,
            ModelType::Conductor => DielectricModel::conductor(m.resistivity_ohm_m.unwrap_or(0.0))?,
            ModelType::Tabulated => {
                let table = table
                    .ok_or_else(|| CliError::Scenario("absorption table not loaded".into()))?;
                DielectricModel::tabulated(table.clone(), wp, wt)?
            }
        })
    }

    pub fn load_table(&self) -> Result<Option<AbsorptionTable>> {
        match (&self.model.model_type, &self.model.table_csv) {
            (ModelType::Tabulated, Some(path)) => Ok(Some(AbsorptionTable::from_csv_path(path)?)),
            _ => Ok(None),
        }
    }

    pub fn point(&self, table: Option<&AbsorptionTable>) -> Result<Point> {
        let configuration = match self.geometry.configuration {
            ConfigurationSpec::SpherePlate => Configuration::SpherePlate,
            ConfigurationSpec::PlatePlate => Configuration::PlatePlate,
        };
        Ok(Point {
            model: self.build_model(table)?,
            geometry: Geometry::new(
                self.geometry.separation_m,
                self.geometry.radius_m,
                configuration,
            )?,
            thermal: ThermalState::new(self.temperature_k)?,
            prescription: self.prescription.into(),
            tolerance: self.tolerance,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
kind = "correction"
prescription = "direct"
temperature_k = 300.0

[model]
type = "drude"
omega_p_rad_s = 2e16
omega_tau_rad_s = 5e13

[geometry]
separation_m = 1e-7
radius_m = 1e-4

[sweep]
parameter = "separation_m"
start = 1e-7
stop = 1e-6
points = 4
spacing = "log"
"#;

    #[test]
    fn parses_sample() {
        let s = Scenario::from_toml_str(SAMPLE).unwrap();
        assert_eq!(s.kind, Kind::Correction);
        assert_eq!(s.prescription, PrescriptionSpec::Direct);
        assert_eq!(s.tolerance, 1e-9);
        let v = s.sweep.as_ref().unwrap().values();
        assert_eq!(v.len(), 4);
        assert!((v[1] / 1e-7 - 10f64.powf(1.0 / 3.0)).abs() < 1e-12);
        assert!((v[3] - 1e-6).abs() < 1e-20);
    }

    #[test]
    fn round_trips_through_toml() {
        let s = Scenario::from_toml_str(SAMPLE).unwrap();
        assert_eq!(Scenario::from_toml_str(&s.to_toml_string()).unwrap(), s);
    }

    #[test]
    fn rejects_bad_input() {
        let unordered = SAMPLE.replace("stop = 1e-6", "stop = 1e-8");
        assert!(Scenario::from_toml_str(&unordered).is_err());
        let unknown = SAMPLE.replace("omega_tau_rad_s = 5e13", "omega_tau = 5e13");
        assert!(Scenario::from_toml_str(&unknown).is_err());
        let missing = SAMPLE.replace("omega_tau_rad_s = 5e13", "");
        assert!(Scenario::from_toml_str(&missing).is_err());
        let wrong = SAMPLE.replace("\"correction\"", "\"linear_plasma\"");
        assert!(Scenario::from_toml_str(&wrong).is_err());
        let negative = SAMPLE.replace("start = 1e-7", "start = -1e-7");
        assert!(Scenario::from_toml_str(&negative).is_err());
    }

    #[test]
    fn linear_sweep_endpoints() {
        let sw = SweepSpec {
            parameter: SweepParameter::TemperatureK,
            start: 100.0,
            stop: 300.0,
            points: 3,
            spacing: Spacing::Linear,
        };
        assert_eq!(sw.values(), vec![100.0, 200.0, 300.0]);
        assert!(SweepSpec {
            points: 0,
            ..sw.clone()
        }
        .values()
        .is_empty());
        assert_eq!(SweepSpec { points: 1, ..sw }.values(), vec![100.0]);
    }
}
