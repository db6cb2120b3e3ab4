//! Parameter sets of the three experiments discussed alongside the correction formulas.

use crate::error::{CliError, Result};
use crate::scenario::{
    ConfigurationSpec, GeometrySpec, Kind, ModelSpec, ModelType, PrescriptionSpec, Scenario,
};

pub const NAMES: [&str; 3] = ["afm", "torsion", "hcm"];

fn scenario(
    description: &str,
    kind: Kind,
    model: ModelSpec,
    separation_m: f64,
    radius_m: f64,
) -> Scenario {
    Scenario {
        description: Some(description.into()),
        kind,
        prescription: PrescriptionSpec::Schwinger,
        tolerance: casimir_core::lifshitz::DEFAULT_TOL,
        temperature_k: 300.0,
        m_max: None,
        model,
        geometry: GeometrySpec {
            separation_m,
            radius_m,
            configuration: ConfigurationSpec::SpherePlate,
        },
        sweep: None,
    }
}

fn drude(omega_p: f64, omega_tau: f64) -> ModelSpec {
    ModelSpec {
        model_type: ModelType::Drude,
        omega_p_rad_s: Some(omega_p),
        omega_tau_rad_s: Some(omega_tau),
        resistivity_ohm_m: None,
        table_csv: None,
    }
}

pub fn preset(name: &str) -> Result<Scenario> {
    Ok(match name {
        "afm" => scenario(
            "AFM sphere-plate, Drude gold-like metal; temperature correction at 0.1 um",
            Kind::Correction,
            drude(2e16, 5e13),
            1e-7,
            1e-4,
        ),
        "torsion" => scenario(
            "Torsion pendulum, plasma metal, R = 12.5 cm; linear-in-T correction at 0.6 um",
            Kind::LinearPlasma,
            ModelSpec {
                model_type: ModelType::Plasma,
                omega_p_rad_s: Some(1.4e16),
                omega_tau_rad_s: None,
                resistivity_ohm_m: None,
                table_csv: None,
            },
            6e-7,
            0.125,
        ),
        "hcm" => scenario(
            "Approximate: a = 63 nm with the AFM radius and Drude parameters; \
             the original material values are not known, expect only order-of-magnitude agreement",
            Kind::Correction,
            drude(2e16, 5e13),
            63e-9,
            1e-4,
        ),
        other => return Err(CliError::UnknownPreset(other.into())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_values_are_exact() {
        let afm = preset("afm").unwrap();
        assert_eq!(afm.kind, Kind::Correction);
        assert_eq!(afm.model.model_type, ModelType::Drude);
        assert_eq!(afm.model.omega_p_rad_s, Some(2e16));
        assert_eq!(afm.model.omega_tau_rad_s, Some(5e13));
        assert_eq!(afm.geometry.separation_m, 1e-7);
        assert_eq!(afm.geometry.radius_m, 1e-4);
        assert_eq!(afm.temperature_k, 300.0);

        let t = preset("torsion").unwrap();
        assert_eq!(t.kind, Kind::LinearPlasma);
        assert_eq!(t.model.model_type, ModelType::Plasma);
        assert_eq!(t.model.omega_p_rad_s, Some(1.4e16));
        assert_eq!(t.geometry.separation_m, 6e-7);
        assert_eq!(t.geometry.radius_m, 0.125);
        assert_eq!(t.temperature_k, 300.0);

        let h = preset("hcm").unwrap();
        assert_eq!(h.geometry.separation_m, 63e-9);
        assert_eq!(h.geometry.radius_m, 1e-4);
        assert_eq!(h.model.omega_p_rad_s, Some(2e16));
        assert_eq!(h.model.omega_tau_rad_s, Some(5e13));
        assert!(h.description.as_deref().unwrap().starts_with("Approximate"));
    }

    #[test]
    fn presets_survive_toml() {
        for n in NAMES {
            let s = preset(n).unwrap();
            assert_eq!(Scenario::from_toml_str(&s.to_toml_string()).unwrap(), s);
        }
        assert!(matches!(preset("lab"), Err(CliError::UnknownPreset(_))));
    }
}
