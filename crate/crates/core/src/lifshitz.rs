//! Lifshitz force in the sphere–plate geometry.
//!
//! All quadratures are done in the dimensionless variables `x = 2aq/c`-style
//! units used throughout: `x_n = nτ`, `ζ_n = c x_n / 2a`. Forces are returned
//! as positive attraction magnitudes.

use crate::constants::{C, HBAR_C, K_B, ZETA_3};
use crate::dielectric::{DielectricModel, LowFrequency, Permittivity};
use crate::error::{domain, CasimirError, Result};
use crate::numerics::{
    differentiate, integrate_breakpoints, sum_until, Estimate, QuadratureResult,
};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Upper limit of the mode integral in `u = x - x_n`.
const U_MAX: f64 = 60.0;
/// Matsubara terms with `x_n` beyond this are dropped.
const X_N_MAX: f64 = 45.0;
/// Default relative tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Configuration {
    #[default]
    SpherePlate,
    PlatePlate,
}

impl FromStr for Configuration {
    type Err = CasimirError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sphere_plate" => Ok(Self::SpherePlate),
            "plate_plate" => Ok(Self::PlatePlate),
            other => Err(domain(
                "configuration",
                format!("unknown configuration `{other}`"),
            )),
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::SpherePlate => "sphere_plate",
            Self::PlatePlate => "plate_plate",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    /// Separation `a` in meters.
    pub separation: f64,
    /// Sphere radius `R` in meters.
    pub radius: f64,
    pub configuration: Configuration,
}

impl Geometry {
    pub fn new(separation: f64, radius: f64, configuration: Configuration) -> Result<Self> {
        if !(separation.is_finite() && separation > 0.0) {
            return Err(domain(
                "separation",
                format!("must be positive, got {separation}"),
            ));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(domain("radius", format!("must be positive, got {radius}")));
        }
        if separation / radius > 0.01 {
            log::warn!(
                "a/R = {:.3} exceeds 0.01; the proximity force theorem is unreliable",
                separation / radius
            );
        }
        Ok(Self {
            separation,
            radius,
            configuration,
        })
    }

    pub fn sphere_plate(separation: f64, radius: f64) -> Result<Self> {
        Self::new(separation, radius, Configuration::SpherePlate)
    }

    fn at_separation(&self, separation: f64) -> Self {
        Self {
            separation,
            ..*self
        }
    }
}

/// Temperature; the derived quantities depend on the separation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalState {
    pub temperature: f64,
}

impl ThermalState {
    pub fn new(temperature: f64) -> Result<Self> {
        if !(temperature.is_finite() && temperature >= 0.0) {
            return Err(domain(
                "temperature",
                format!("must be non-negative, got {temperature}"),
            ));
        }
        Ok(Self { temperature })
    }

    /// `T_eff` with `k T_eff = ħc/2a`.
    pub fn t_eff(separation: f64) -> f64 {
        HBAR_C / (2.0 * separation * K_B)
    }

    /// `T/T_eff`.
    pub fn reduced(&self, separation: f64) -> f64 {
        2.0 * separation * K_B * self.temperature / HBAR_C
    }

    /// `τ = 2πT/T_eff`, the Matsubara spacing in `x`.
    pub fn tau(&self, separation: f64) -> f64 {
        2.0 * PI * self.reduced(separation)
    }

    pub fn kt(&self) -> f64 {
        K_B * self.temperature
    }

    fn require_positive(&self) -> Result<()> {
        if self.temperature > 0.0 {
            Ok(())
        } else {
            Err(domain(
                "temperature",
                "must be positive for the Matsubara sum",
            ))
        }
    }
}

/// Treatment of the zero-frequency Matsubara term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Prescription {
    /// `ε → ∞` before `ζ → 0`: `G1 = G2 = 1`.
    #[default]
    Schwinger,
    /// The model's own `ζ → 0` limit.
    Direct,
}

impl FromStr for Prescription {
    type Err = CasimirError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "schwinger" => Ok(Self::Schwinger),
            "direct" => Ok(Self::Direct),
            other => Err(domain(
                "prescription",
                format!("unknown prescription `{other}`"),
            )),
        }
    }
}

impl fmt::Display for Prescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Schwinger => "schwinger",
            Self::Direct => "direct",
        })
    }
}

/// Matsubara sum with its breakdown. All forces in newtons.
#[derive(Debug, Clone, PartialEq)]
pub struct ForceResult {
    pub total: f64,
    /// Half-weight `n = 0` contribution.
    pub n_zero: f64,
    /// Contributions of `n = 1, 2, ...`.
    pub terms: Vec<f64>,
    /// Index of the last term included.
    pub n_max: usize,
    pub abs_error: f64,
    /// False if a quadrature or the series truncation did not converge.
    pub valid: bool,
}

impl ForceResult {
    pub fn positive_terms_sum(&self) -> f64 {
        self.terms.iter().sum()
    }
}

/// `(G1, G2)` at `ε`, `x ≥ x_n ≥ 0`.
pub fn reflection_factors(eps: Permittivity, x: f64, x_n: f64) -> Result<(f64, f64)> {
    if !(x_n >= 0.0 && x >= x_n) {
        return Err(domain(
            "x",
            format!("need x >= x_n >= 0, got x={x}, x_n={x_n}"),
        ));
    }
    match eps {
        Permittivity::Infinite => Ok((1.0, 1.0)),
        Permittivity::Finite(e) => {
            if e.is_nan() || e < 1.0 {
                return Err(domain("eps", format!("must be at least 1, got {e}")));
            }
            let f = Factors::finite(x_n, x_n * x_n * (e - 1.0), e - 1.0, x);
            Ok((f.g1, f.g2))
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Factors {
    g1: f64,
    one_minus_g1: f64,
    g2: f64,
    one_minus_g2: f64,
}

impl Factors {
    fn finite(z: f64, kappa: f64, em1: f64, x: f64) -> Self {
        if em1.is_infinite() {
            return Self::mirror();
        }
        let (g1, one_minus_g1) = first_factor(kappa, x);
        let s = (kappa + x * x).sqrt();
        let eps = 1.0 + em1;
        let ex = eps * x;
        let exs = ex + s;
        // εx - s without cancellation.
        let d = em1 * ((eps + 1.0) * x * x - z * z) / exs;
        let g2 = (d / exs).powi(2);
        let one_minus_g2 = 4.0 * ex * s / (exs * exs);
        Self {
            g1,
            one_minus_g1,
            g2,
            one_minus_g2,
        }
    }

    fn mirror() -> Self {
        Self {
            g1: 1.0,
            one_minus_g1: 0.0,
            g2: 1.0,
            one_minus_g2: 0.0,
        }
    }
}

/// `G1` and `1 - G1` using `x - s = -κ/(x + s)`.
fn first_factor(kappa: f64, x: f64) -> (f64, f64) {
    let s = (kappa + x * x).sqrt();
    let xs = x + s;
    ((kappa / (xs * xs)).powi(2), 4.0 * x * s / (xs * xs))
}

/// `ln(1 - G e^{-x})` given `G` and `1 - G` separately.
fn ln_factor(g: f64, one_minus_g: f64, x: f64) -> f64 {
    let ge = g * (-x).exp();
    if ge < 0.5 {
        (-ge).ln_1p()
    } else {
        (one_minus_g - g * (-x).exp_m1()).ln()
    }
}

/// Reflection data for one frequency.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Mode {
    /// `G1 = G2 = 1` from `x = z` upward.
    Mirror {
        z: f64,
    },
    Finite {
        z: f64,
        kappa: f64,
        em1: f64,
    },
    /// Zero-frequency limit: `G1` from `κ₀` (zero if `κ₀ = 0`), constant `G2`.
    Static {
        kappa0: f64,
        g2: f64,
    },
}

impl Mode {
    /// Mode at dimensionless frequency `z > 0`.
    pub(crate) fn at(model: &DielectricModel, separation: f64, z: f64) -> Result<Self> {
        if z == 0.0 {
            return Ok(Self::direct_static(model, separation));
        }
        let zeta = z * C / (2.0 * separation);
        let em1 = model.eps_minus_one(zeta)?;
        if em1.is_infinite() {
            return Ok(Self::Mirror { z });
        }
        let kappa = model.reduced_kappa(separation, z)?;
        Ok(Self::Finite { z, kappa, em1 })
    }

    pub(crate) fn direct_static(model: &DielectricModel, separation: f64) -> Self {
        match model.low_frequency() {
            LowFrequency::Mirror => Self::Mirror { z: 0.0 },
            LowFrequency::Plasma { omega_p } => Self::Static {
                kappa0: (2.0 * separation * omega_p / C).powi(2),
                g2: 1.0,
            },
            LowFrequency::Conducting => Self::Static {
                kappa0: 0.0,
                g2: 1.0,
            },
            LowFrequency::Dielectric { eps_static } => Self::Static {
                kappa0: 0.0,
                g2: ((eps_static - 1.0) / (eps_static + 1.0)).powi(2),
            },
        }
    }

    fn static_for(model: &DielectricModel, separation: f64, presc: Prescription) -> Self {
        match presc {
            Prescription::Schwinger => Self::Mirror { z: 0.0 },
            Prescription::Direct => Self::direct_static(model, separation),
        }
    }

    fn lower(&self) -> f64 {
        match self {
            Self::Finite { z, .. } | Self::Mirror { z } => *z,
            Self::Static { .. } => 0.0,
        }
    }

    fn factors(&self, x: f64) -> Factors {
        match *self {
            Self::Mirror { .. } => Factors::mirror(),
            Self::Finite { z, kappa, em1 } => Factors::finite(z, kappa, em1, x),
            Self::Static { kappa0, g2 } => {
                let (g1, one_minus_g1) = if kappa0 == 0.0 {
                    (0.0, 1.0)
                } else {
                    first_factor(kappa0, x)
                };
                Factors {
                    g1,
                    one_minus_g1,
                    g2,
                    one_minus_g2: 1.0 - g2,
                }
            }
        }
    }

    /// `x ln[(1 - G1 e^{-x})(1 - G2 e^{-x})]`.
    pub(crate) fn integrand(&self, x: f64) -> f64 {
        if x == 0.0 {
            return 0.0;
        }
        let f = self.factors(x);
        x * (ln_factor(f.g1, f.one_minus_g1, x) + ln_factor(f.g2, f.one_minus_g2, x))
    }

    /// `∫_{x_n}^∞ x ln[...] dx`, negative.
    pub(crate) fn integral(&self, tol: f64) -> QuadratureResult {
        let z = self.lower();
        let mut breaks = vec![0.0, U_MAX];
        let mut extra = vec![0.5, 2.0, 8.0, 20.0];
        let scale = match *self {
            Self::Finite { kappa, .. } => kappa.sqrt() - z,
            Self::Static { kappa0, .. } => kappa0.sqrt(),
            Self::Mirror { .. } => 0.0,
        };
        if scale > 0.0 {
            extra.push(scale);
            extra.push(0.1 * scale);
        }
        extra.retain(|&b| b > 1e-12 && b < U_MAX);
        breaks.extend(extra);
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        integrate_breakpoints(|u| self.integrand(z + u), &breaks, tol, 1e-300)
    }
}

/// Mode integral `φ(z) = ∫_z^∞ x ln[(1 - G1 e^{-x})(1 - G2 e^{-x})] dx` at
/// continuous frequency; `z = 0` gives the model's direct static limit.
pub fn mode_integral(
    model: &DielectricModel,
    separation: f64,
    z: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    if !(z >= 0.0 && z.is_finite()) {
        return Err(domain("z", format!("must be non-negative, got {z}")));
    }
    check_tol(tol)?;
    Ok(Mode::at(model, separation, z)?.integral(tol))
}

/// Static mode integral under a prescription.
pub fn static_mode_integral(
    model: &DielectricModel,
    separation: f64,
    presc: Prescription,
    tol: f64,
) -> Result<QuadratureResult> {
    check_tol(tol)?;
    Ok(Mode::static_for(model, separation, presc).integral(tol))
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 && tol < 1.0 {
        Ok(())
    } else {
        Err(domain("tol", format!("must be in (0, 1), got {tol}")))
    }
}

fn converged(q: QuadratureResult) -> Result<QuadratureResult> {
    if q.converged {
        Ok(q)
    } else {
        Err(CasimirError::Quadrature {
            value: q.value,
            error: q.abs_error,
        })
    }
}

/// Prefactor `kTR/4a²` of the Matsubara sum.
fn sum_prefactor(geom: &Geometry, thermal: &ThermalState) -> f64 {
    thermal.kt() * geom.radius / (4.0 * geom.separation * geom.separation)
}

/// Half-weight zero-frequency term, `-(kTR/8a²) φ_static`.
pub fn n_zero_term(
    model: &DielectricModel,
    geom: &Geometry,
    thermal: &ThermalState,
    presc: Prescription,
    tol: f64,
) -> Result<Estimate> {
    thermal.require_positive()?;
    let q = converged(static_mode_integral(model, geom.separation, presc, tol)?)?;
    let scale = 0.5 * sum_prefactor(geom, thermal);
    Ok(Estimate::new(-scale * q.value, scale * q.abs_error))
}

/// Sphere–plate force from the Matsubara sum.
pub fn matsubara_force(
    model: &DielectricModel,
    geom: &Geometry,
    thermal: &ThermalState,
    presc: Prescription,
    tol: f64,
) -> Result<ForceResult> {
    check_tol(tol)?;
    let n0 = n_zero_term(model, geom, thermal, presc, tol)?;
    let a = geom.separation;
    let tau = thermal.tau(a);
    let scale = sum_prefactor(geom, thermal);

    let mut terms = Vec::new();
    let mut quad_error = 0.0;
    let mut all_converged = true;
    let mut failure = None;
    let budget = (X_N_MAX / tau).ceil() as usize + 8;
    let series = sum_until(
        |n| {
            let z = n as f64 * tau;
            if z > X_N_MAX || failure.is_some() {
                return 0.0;
            }
            match Mode::at(model, a, z) {
                Ok(mode) => {
                    let q = mode.integral(tol);
                    all_converged &= q.converged;
                    quad_error += scale * q.abs_error;
                    let t = -scale * q.value;
                    terms.push(t);
                    t
                }
                Err(e) => {
                    failure = Some(e);
                    0.0
                }
            }
        },
        1,
        tol / 10.0,
        budget,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    // The remaining terms fall off at least like e^{-nτ}.
    let ratio = (-tau).exp();
    let tail = series.last_term * ratio / (1.0 - ratio);
    Ok(ForceResult {
        total: n0.value + series.sum,
        n_zero: n0.value,
        n_max: terms.len(),
        terms,
        abs_error: n0.abs_error + quad_error + tail,
        valid: series.converged && all_converged,
    })
}

/// `∫₀^∞ φ(ν) dν` for the continuum replacement.
fn frequency_integral(
    model: &DielectricModel,
    separation: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    let mut failure = None;
    let inner_tol = (0.1 * tol).max(1e-14);
    let mut breaks: Vec<f64> = (-12..=-1).step_by(1).map(|k| 10f64.powi(k)).collect();
    breaks.insert(0, 0.0);
    breaks.extend([0.3, 1.0, 3.0, 8.0, 20.0, U_MAX]);
    let q = integrate_breakpoints(
        |nu| match Mode::at(model, separation, nu) {
            Ok(m) => m.integral(inner_tol).value,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        &breaks,
        tol,
        1e-300,
    );
    match failure {
        Some(e) => Err(e),
        None => Ok(q),
    }
}

/// Zero-temperature force, `-(ħcR/16πa³) ∫₀^∞ φ(ν) dν`.
pub fn zero_temperature_force(
    model: &DielectricModel,
    geom: &Geometry,
    tol: f64,
) -> Result<Estimate> {
    check_tol(tol)?;
    let a = geom.separation;
    let q = converged(frequency_integral(model, a, tol)?)?;
    let scale = HBAR_C * geom.radius / (16.0 * PI * a * a * a);
    Ok(Estimate::new(-scale * q.value, scale * q.abs_error))
}

/// Ideal-mirror zero-temperature force `π³ħcR/360a³`.
pub fn ideal_zero_temperature_force(geom: &Geometry) -> f64 {
    PI.powi(3) * HBAR_C * geom.radius / (360.0 * geom.separation.powi(3))
}

/// Plate–plate pressure `-F'(a)/2πR` (positive for attraction), with the
/// step used by the finite difference.
pub fn plate_plate_pressure(
    model: &DielectricModel,
    separation: f64,
    thermal: &ThermalState,
    presc: Prescription,
    tol: f64,
) -> Result<PressureResult> {
    check_tol(tol)?;
    // R cancels; unit radius keeps the numbers O(F/R).
    let geom = Geometry {
        separation,
        radius: 1.0,
        configuration: Configuration::PlatePlate,
    };
    if !(separation.is_finite() && separation > 0.0) {
        return Err(domain(
            "separation",
            format!("must be positive, got {separation}"),
        ));
    }
    // Differencing amplifies quadrature noise by 1/h.
    let inner = (tol * 1e-3).max(1e-13);
    let h = 1e-4 * separation;
    let force = |a: f64| -> Result<f64> {
        let g = geom.at_separation(a);
        if thermal.temperature == 0.0 {
            Ok(zero_temperature_force(model, &g, inner)?.value)
        } else {
            Ok(matsubara_force(model, &g, thermal, presc, inner)?.total)
        }
    };
    let d = differentiate(force, separation, h)?;
    let scale = 1.0 / (2.0 * PI);
    Ok(PressureResult {
        pressure: -scale * d.value,
        abs_error: scale * d.abs_error,
        step: d.step,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureResult {
    /// N/m², positive for attraction.
    pub pressure: f64,
    pub abs_error: f64,
    pub step: f64,
}

/// `α` such that the zero-frequency term equals `α kTRζ(3)/4a²`.
pub fn extract_alpha(
    model: &DielectricModel,
    geom: &Geometry,
    thermal: &ThermalState,
    presc: Prescription,
    tol: f64,
) -> Result<f64> {
    let n0 = n_zero_term(model, geom, thermal, presc, tol)?;
    Ok(n0.value / (sum_prefactor(geom, thermal) * ZETA_3))
}
