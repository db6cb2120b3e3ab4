//! Dielectric response on the imaginary frequency axis.
//!
//! Every model returns `ε(iζ)` for `ζ > 0`. The static point `ζ = 0` is
//! never evaluated here; how the zero-frequency Matsubara term is taken is
//! decided by [`crate::lifshitz::Prescription`]. What a model does know is
//! its own low-frequency character ([`LowFrequency`]), which fixes the
//! direct `ζ → 0` limit of the reflection factors.

mod table;

pub use table::AbsorptionTable;

use crate::constants::{C, EPSILON_0};
use crate::error::{domain, Result};
use std::sync::Arc;

/// `ε(iζ)`, or the ideal-mirror marker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Permittivity {
    Finite(f64),
    Infinite,
}

impl Permittivity {
    pub fn value(self) -> f64 {
        match self {
            Permittivity::Finite(v) => v,
            Permittivity::Infinite => f64::INFINITY,
        }
    }
}

/// How `ε(iζ)` behaves as `ζ → 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LowFrequency {
    /// `ε = ∞` at every frequency.
    Mirror,
    /// `ε - 1 ≈ ω_p²/ζ²`.
    Plasma { omega_p: f64 },
    /// `ε - 1 ∝ 1/ζ` (finite DC conductivity).
    Conducting,
    /// Finite static permittivity.
    Dielectric { eps_static: f64 },
}

/// Supported metal (and tabulated) models.
#[derive(Debug, Clone, PartialEq)]
pub enum DielectricModel {
    IdealMirror,
    Plasma {
        omega_p: f64,
    },
    Drude {
        omega_p: f64,
        omega_tau: f64,
    },
    /// Low-frequency conductor `ε = 1 + 1/(ε₀ρζ)`.
    Conductor {
        resistivity: f64,
    },
    /// Absorption data continued to imaginary frequencies by the dispersion
    /// relation, with Drude extrapolation below the first sample.
    Tabulated {
        table: Arc<AbsorptionTable>,
        omega_p: f64,
        omega_tau: f64,
    },
}

impl DielectricModel {
    pub fn plasma(omega_p: f64) -> Result<Self> {
        check_positive("omega_p", omega_p)?;
        Ok(Self::Plasma { omega_p })
    }

    pub fn drude(omega_p: f64, omega_tau: f64) -> Result<Self> {
        check_positive("omega_p", omega_p)?;
        check_non_negative("omega_tau", omega_tau)?;
        Ok(Self::Drude { omega_p, omega_tau })
    }

    pub fn conductor(resistivity: f64) -> Result<Self> {
        check_positive("resistivity", resistivity)?;
        Ok(Self::Conductor { resistivity })
    }

    pub fn tabulated(table: AbsorptionTable, omega_p: f64, omega_tau: f64) -> Result<Self> {
        check_non_negative("omega_p", omega_p)?;
        check_non_negative("omega_tau", omega_tau)?;
        Ok(Self::Tabulated {
            table: Arc::new(table),
            omega_p,
            omega_tau,
        })
    }

    /// Short lowercase tag used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::IdealMirror => "ideal",
            Self::Plasma { .. } => "plasma",
            Self::Drude { .. } => "drude",
            Self::Conductor { .. } => "conductor",
            Self::Tabulated { .. } => "tabulated",
        }
    }

    /// `ε(iζ)` for `ζ > 0`.
    pub fn eps(&self, zeta: f64) -> Result<Permittivity> {
        Ok(match self.eps_minus_one(zeta)? {
            v if v.is_infinite() => Permittivity::Infinite,
            v => Permittivity::Finite(1.0 + v),
        })
    }

    /// `ε(iζ) - 1`, computed without forming `ε` first so that it keeps full
    /// relative precision at high frequency. Infinite for the ideal mirror.
    pub fn eps_minus_one(&self, zeta: f64) -> Result<f64> {
        check_frequency(zeta)?;
        Ok(match self {
            Self::IdealMirror => f64::INFINITY,
            Self::Plasma { omega_p } => omega_p * omega_p / (zeta * zeta),
            Self::Drude { omega_p, omega_tau } => omega_p * omega_p / (zeta * (zeta + omega_tau)),
            Self::Conductor { resistivity } => 1.0 / (EPSILON_0 * resistivity * zeta),
            Self::Tabulated {
                table,
                omega_p,
                omega_tau,
            } => table.eps_minus_one(*omega_p, *omega_tau, zeta),
        })
    }

    pub fn low_frequency(&self) -> LowFrequency {
        match self {
            Self::IdealMirror => LowFrequency::Mirror,
            Self::Plasma { omega_p } => LowFrequency::Plasma { omega_p: *omega_p },
            Self::Drude { omega_p, omega_tau } if *omega_tau == 0.0 => {
                LowFrequency::Plasma { omega_p: *omega_p }
            }
            Self::Drude { .. } | Self::Conductor { .. } => LowFrequency::Conducting,
            Self::Tabulated {
                table,
                omega_p,
                omega_tau,
            } => {
                if *omega_p > 0.0 && *omega_tau > 0.0 {
                    LowFrequency::Conducting
                } else if *omega_p > 0.0 {
                    LowFrequency::Plasma { omega_p: *omega_p }
                } else {
                    LowFrequency::Dielectric {
                        eps_static: 1.0 + table.eps_minus_one(0.0, 0.0, 0.0),
                    }
                }
            }
        }
    }

    /// `x_n²(ε - 1)` at dimensionless frequency `z = 2ζa/c`, the quantity
    /// entering the transverse wave number `s`.
    pub fn reduced_kappa(&self, separation: f64, z: f64) -> Result<f64> {
        let zeta = z * C / (2.0 * separation);
        let em1 = self.eps_minus_one(zeta)?;
        Ok(match self {
            // Exact cancellation of ζ² keeps this finite for tiny z.
            Self::Plasma { omega_p } => (2.0 * separation * omega_p / C).powi(2),
            _ => z * z * em1,
        })
    }
}

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(domain(
            name,
            format!("must be positive and finite, got {v}"),
        ))
    }
}

fn check_non_negative(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(domain(
            name,
            format!("must be non-negative and finite, got {v}"),
        ))
    }
}

fn check_frequency(zeta: f64) -> Result<()> {
    if zeta == 0.0 {
        return Err(domain(
            "zeta",
            "the static point is set by the zero-frequency prescription, not by the model",
        ));
    }
    check_positive("zeta", zeta)
}

/// Plasma model `1 + ω_p²/ζ²`.
pub fn eval_plasma(omega_p: f64, zeta: f64) -> Result<f64> {
    Ok(DielectricModel::plasma(omega_p)?.eps(zeta)?.value())
}

/// Drude model `1 + ω_p²/(ζ(ζ + ω_τ))`.
pub fn eval_drude(omega_p: f64, omega_tau: f64, zeta: f64) -> Result<f64> {
    Ok(DielectricModel::drude(omega_p, omega_tau)?
        .eps(zeta)?
        .value())
}

/// DC conductor `1 + 1/(ε₀ρζ)`.
pub fn eval_conductor(resistivity: f64, zeta: f64) -> Result<f64> {
    Ok(DielectricModel::conductor(resistivity)?.eps(zeta)?.value())
}

/// Tabulated absorption continued by the dispersion relation.
pub fn eval_tabulated(
    table: &AbsorptionTable,
    omega_p: f64,
    omega_tau: f64,
    zeta: f64,
) -> Result<f64> {
    check_non_negative("omega_p", omega_p)?;
    check_non_negative("omega_tau", omega_tau)?;
    check_frequency(zeta)?;
    Ok(1.0 + table.eps_minus_one(omega_p, omega_tau, zeta))
}

/// Length `L = cρε₀` set by the DC resistivity.
pub fn conductivity_length_scale(resistivity: f64) -> Result<f64> {
    check_non_negative("resistivity", resistivity)?;
    Ok(C * resistivity * EPSILON_0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn plasma_examples() {
        let wp = 3.0e15;
        assert_eq!(eval_plasma(wp, wp).unwrap(), 2.0);
        assert_eq!(eval_plasma(wp, wp / 2.0).unwrap(), 5.0);
        assert!((eval_plasma(2e16, 1e15).unwrap() - 401.0).abs() < 1e-12);
    }

    #[test]
    fn static_point_is_rejected() {
        assert!(eval_plasma(1e16, 0.0).is_err());
        assert!(eval_drude(1e16, 1e13, 0.0).is_err());
        assert!(eval_conductor(1e-7, 0.0).is_err());
        assert!(DielectricModel::IdealMirror.eps(0.0).is_err());
    }

    #[test]
    fn drude_examples() {
        let zeta = 7.3e14;
        assert_eq!(
            eval_drude(2e16, 0.0, zeta).unwrap(),
            eval_plasma(2e16, zeta).unwrap()
        );
        // 1 + 4e32 / (2e16 * 2.005e16) by hand
        let want = 1.0 + 4e32 / (2e16 * 2.005e16);
        let got = eval_drude(2e16, 5e13, 2e16).unwrap();
        assert!((got - want).abs() < 1e-15);
        assert!((got - 1.997_506_234).abs() < 1e-9);
    }

    #[test]
    fn drude_approaches_conductor_below_relaxation() {
        let (wp, wt) = (2e16, 5e13);
        let rho = wt / (EPSILON_0 * wp * wp);
        for zeta in [wt * 1e-3, wt * 1e-5, wt * 1e-8] {
            let d = eval_drude(wp, wt, zeta).unwrap();
            let c = eval_conductor(rho, zeta).unwrap();
            assert!(((d - c) / c).abs() <= 1e-3, "zeta={zeta}");
        }
    }

    #[test]
    fn conductor_examples() {
        let a = eval_conductor(1e-7, 1e10).unwrap();
        assert!((a / (1.0 + 1.0 / (8.854_187_812_8e-12 * 1e-7 * 1e10)) - 1.0).abs() < 1e-15);
        assert!((a / 1.1294e8 - 1.0).abs() < 1e-4);
        let b = eval_conductor(1e-7, 1e13).unwrap();
        assert!((b / 1.1294e5 - 1.0).abs() < 1e-4);
        let mut prev = f64::INFINITY;
        for k in 8..20 {
            let v = eval_conductor(1e-7, 10f64.powi(k)).unwrap();
            assert!(v < prev && v > 1.0);
            prev = v;
        }
    }

    #[test]
    fn length_scale() {
        let l = conductivity_length_scale(1e-7).unwrap();
        assert!((l - 2.654e-10).abs() < 1e-13);
        assert!(l <= 3e-10);
        assert_eq!(conductivity_length_scale(0.0).unwrap(), 0.0);
        assert_eq!(conductivity_length_scale(2e-7).unwrap(), 2.0 * l);
    }

    #[test]
    fn low_frequency_classes() {
        assert_eq!(
            DielectricModel::IdealMirror.low_frequency(),
            LowFrequency::Mirror
        );
        assert_eq!(
            DielectricModel::drude(1e16, 0.0).unwrap().low_frequency(),
            LowFrequency::Plasma { omega_p: 1e16 }
        );
        assert_eq!(
            DielectricModel::drude(1e16, 1e13).unwrap().low_frequency(),
            LowFrequency::Conducting
        );
        assert_eq!(
            DielectricModel::conductor(1e-7).unwrap().low_frequency(),
            LowFrequency::Conducting
        );
    }

    #[test]
    fn constructors_validate() {
        assert!(DielectricModel::plasma(-1.0).is_err());
        assert!(DielectricModel::drude(1e16, -1.0).is_err());
        assert!(DielectricModel::conductor(0.0).is_err());
        assert!(DielectricModel::plasma(f64::NAN).is_err());
    }

    fn models() -> Vec<DielectricModel> {
        vec![
            DielectricModel::plasma(2e16).unwrap(),
            DielectricModel::drude(2e16, 5e13).unwrap(),
            DielectricModel::drude(1.4e16, 0.0).unwrap(),
            DielectricModel::conductor(1e-7).unwrap(),
            DielectricModel::conductor(3e-8).unwrap(),
        ]
    }

    proptest! {
        #[test]
        fn eps_at_least_one_and_decreasing(e1 in 8.0f64..18.0, de in 1e-6f64..2.0) {
            let (z1, z2) = (10f64.powf(e1), 10f64.powf(e1 + de));
            for m in models() {
                let a = m.eps(z1).unwrap().value();
                let b = m.eps(z2).unwrap().value();
                prop_assert!(a >= 1.0 && b >= 1.0);
                prop_assert!(a > b, "{} not decreasing at {z1}", m.kind());
            }
            prop_assert_eq!(DielectricModel::IdealMirror.eps(z1).unwrap(), Permittivity::Infinite);
        }

        #[test]
        fn drude_plasma_degeneracy(wp in 1e14f64..1e17, e in 8.0f64..18.0) {
            let zeta = 10f64.powf(e);
            prop_assert_eq!(eval_drude(wp, 0.0, zeta).unwrap(), eval_plasma(wp, zeta).unwrap());
        }
    }
}
