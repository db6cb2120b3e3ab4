//! Fourier (Poisson-resummed) form of the Matsubara sum.
//!
//! `Σ'ₙ φ(nτ) = 2 Σ'ₘ c_m` with `c_m = (1/τ)∫₀^∞ cos(2πmz/τ) φ(z) dz`.
//! The profile `φ` is evaluated at continuous frequency, so its value at
//! `z = 0` is the model's own limit: the resummed form reproduces the
//! direct prescription. The Schwinger variant swaps that term afterwards.
//!
//! `φ` is cached once per `(model, a)` as a piecewise Chebyshev interpolant
//! on panels that are geometrically graded toward `z = 0`, where the Drude
//! profile has structure on the scale `z*` at which `x_n²(ε - 1) = 1`.

use crate::constants::{K_B, ZETA_3};
use crate::dielectric::DielectricModel;
use crate::error::{domain, CasimirError, Result};
use crate::lifshitz::{Geometry, Mode, Prescription, ThermalState};
use crate::numerics::chebyshev::graded_breaks;
use crate::numerics::{sine_integral, PiecewiseChebyshev};
use std::f64::consts::PI;

/// Upper end of the cached domain; `|φ| < 1e-23` beyond.
const Z_MAX: f64 = 64.0;
const DEGREE: usize = 16;
/// Default number of Fourier terms.
pub const DEFAULT_M_MAX: usize = 64;

/// Cached `φ(z)` for one model and separation.
#[derive(Debug, Clone)]
pub struct PhiProfile {
    separation: f64,
    kind: &'static str,
    phi0: f64,
    /// `z*`, or infinity if `κ` never crosses 1 on the domain.
    crossover: f64,
    phi: PiecewiseChebyshev,
    /// `(φ(z) - φ(0)e^{-z})/z`.
    psi: PiecewiseChebyshev,
    z_phi: PiecewiseChebyshev,
    z3_phi: PiecewiseChebyshev,
}

/// `z` where `x_n²(ε - 1)` first reaches 1, by bisection in `ln z`.
fn crossover(model: &DielectricModel, a: f64) -> Result<f64> {
    if let DielectricModel::IdealMirror = model {
        return Ok(f64::INFINITY);
    }
    let kappa = |z: f64| model.reduced_kappa(a, z);
    let (mut lo, mut hi) = (1e-16_f64, Z_MAX);
    if kappa(lo)? >= 1.0 {
        return Ok(lo);
    }
    if kappa(hi)? < 1.0 {
        return Ok(f64::INFINITY);
    }
    for _ in 0..100 {
        let mid = (lo * hi).sqrt();
        if kappa(mid)? < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo * hi).sqrt())
}

impl PhiProfile {
    pub fn new(model: &DielectricModel, separation: f64, tol: f64) -> Result<Self> {
        if !(separation.is_finite() && separation > 0.0) {
            return Err(domain(
                "separation",
                format!("must be positive, got {separation}"),
            ));
        }
        let z_star = crossover(model, separation)?;
        let first = (1e-6 * z_star).min(1e-12);
        let breaks = graded_breaks(first, 1.0, Z_MAX);
        let mut failure = None;
        let phi = PiecewiseChebyshev::try_fit(&breaks, DEGREE, |z| {
            let q = Mode::at(model, separation, z)?.integral(tol);
            if !q.converged && failure.is_none() {
                failure = Some(CasimirError::Quadrature {
                    value: q.value,
                    error: q.abs_error,
                });
            }
            Ok(q.value)
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
        let phi0 = Mode::direct_static(model, separation).integral(tol).value;
        let psi = phi.refit(DEGREE, |z| (phi.eval(z) - phi0 * (-z).exp()) / z);
        let z_phi = phi.refit(DEGREE, |z| z * phi.eval(z));
        let z3_phi = phi.refit(DEGREE, |z| z.powi(3) * phi.eval(z));
        Ok(Self {
            separation,
            kind: model.kind(),
            phi0,
            crossover: z_star,
            phi,
            psi,
            z_phi,
            z3_phi,
        })
    }

    pub fn separation(&self) -> f64 {
        self.separation
    }

    pub fn model_kind(&self) -> &'static str {
        self.kind
    }

    /// `φ(z)`; `z = 0` gives the static value.
    pub fn eval(&self, z: f64) -> f64 {
        if z == 0.0 {
            self.phi0
        } else {
            self.phi.eval(z)
        }
    }

    pub fn at_zero(&self) -> f64 {
        self.phi0
    }

    /// Crossover `z*` where `κ(z) = 1`.
    pub fn crossover(&self) -> f64 {
        self.crossover
    }

    /// `c(μ)` at continuous index `μ`.
    fn coefficient(&self, tau: f64, mu: f64) -> f64 {
        self.phi.cosine_transform(2.0 * PI * mu / tau) / tau
    }

    /// Euler–Maclaurin estimate of `Σ_{m > M} c_m`.
    fn tail(&self, tau: f64, m: usize) -> f64 {
        let mu = m as f64;
        let k = 2.0 * PI * mu / tau;
        let integral =
            0.25 * self.phi0 - (self.phi0 * k.atan() + self.psi.sine_transform(k)) / (2.0 * PI);
        let c = self.coefficient(tau, mu);
        let w = 2.0 * PI / tau;
        let c1 = -w / tau * self.z_phi.sine_transform(k);
        let c3 = w.powi(3) / tau * self.z3_phi.sine_transform(k);
        integral - 0.5 * c - c1 / 12.0 + c3 / 720.0
    }

    /// `∫₀^∞ φ(z) sin(Kz)/z dz` by splitting off `φ(0)e^{-z}`.
    fn sinc_integral(&self, k: f64) -> f64 {
        self.phi0 * k.atan() + self.psi.sine_transform(k)
    }
}

/// `φ(z)` evaluated directly by quadrature.
pub fn phi(model: &DielectricModel, separation: f64, z: f64, tol: f64) -> Result<f64> {
    let q = crate::lifshitz::mode_integral(model, separation, z, tol)?;
    if q.converged {
        Ok(q.value)
    } else {
        Err(CasimirError::Quadrature {
            value: q.value,
            error: q.abs_error,
        })
    }
}

/// Resummed force with its convergence diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonResult {
    pub total: f64,
    /// Spread of the tail-corrected sums at `M`, `M - 1`, `M - 2`.
    pub abs_error: f64,
    pub m_max: usize,
    pub converged: bool,
}

/// Fourier terms `c_0, ..., c_M` for `φ(τt)` (dimensionless).
pub fn fourier_terms(profile: &PhiProfile, tau: f64, m_max: usize) -> Vec<f64> {
    (0..=m_max)
        .map(|m| profile.coefficient(tau, m as f64))
        .collect()
}

fn check_tau(thermal: &ThermalState, a: f64) -> Result<f64> {
    if thermal.temperature > 0.0 {
        Ok(thermal.tau(a))
    } else {
        Err(domain("temperature", "must be positive"))
    }
}

/// `-(kTR/2a²) Σ'ₘ c_m` from a prepared profile.
pub fn poisson_force_with(
    profile: &PhiProfile,
    geom: &Geometry,
    thermal: &ThermalState,
    presc: Prescription,
    m_max: usize,
    tol: f64,
) -> Result<PoissonResult> {
    let a = geom.separation;
    if (profile.separation - a).abs() > 1e-12 * a {
        return Err(domain(
            "separation",
            "profile was built for a different separation",
        ));
    }
    let tau = check_tau(thermal, a)?;
    let m_max = m_max.max(2);
    let c = fourier_terms(profile, tau, m_max);
    let partial = |m: usize| 0.5 * c[0] + c[1..=m].iter().sum::<f64>();
    let sums: Vec<f64> = (m_max - 2..=m_max)
        .map(|m| partial(m) + profile.tail(tau, m))
        .collect();
    let s = sums[2];
    let spread = sums.iter().fold(0.0_f64, |acc, v| acc.max((v - s).abs()));
    let scale = K_B * thermal.temperature * geom.radius / (2.0 * a * a);
    let mut total = -scale * s;
    if presc == Prescription::Schwinger {
        // Mirror static term: φ(0) = -2ζ(3).
        total -= 0.25 * scale * (-2.0 * ZETA_3 - profile.phi0);
    }
    let converged = spread <= (10.0 * tol).max(1e-7) * s.abs();
    if !converged {
        log::warn!("Fourier series not converged at M = {m_max}: spread {spread:e}");
    }
    Ok(PoissonResult {
        total,
        abs_error: scale * spread,
        m_max,
        converged,
    })
}

/// `-(kTR/2a²) Σ'ₘ ∫₀^∞ cos(2πmt) φ(τt) dt`.
pub fn poisson_force(
    model: &DielectricModel,
    geom: &Geometry,
    thermal: &ThermalState,
    presc: Prescription,
    m_max: usize,
    tol: f64,
) -> Result<PoissonResult> {
    check_tau(thermal, geom.separation)?;
    let profile = PhiProfile::new(model, geom.separation, tol)?;
    poisson_force_with(&profile, geom, thermal, presc, m_max, tol)
}

/// `1/sin(πy/τ) - τ/(πy)`.
fn kernel_remainder(y: f64, tau: f64) -> f64 {
    let t = PI * y / tau;
    if t.abs() < 1e-3 {
        let t2 = t * t;
        t * (1.0 / 6.0 + t2 * (7.0 / 360.0 + t2 * 31.0 / 15120.0))
    } else {
        1.0 / t.sin() - 1.0 / t
    }
}

/// Partial sum through `m = M` written with the Dirichlet kernel and its
/// small-angle form, both in newtons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticPartialSum {
    pub m: usize,
    /// `-(kTR/4a²τ) ∫ φ(z) sin(Kz)/sin(πz/τ) dz`, `K = π(2M+1)/τ`.
    pub dirichlet: f64,
    /// `-(kTR/4πa²) ∫ sin(y)/y φ(y/K) dy`.
    pub small_angle: f64,
}

fn check_static(tau: f64, m: usize) -> Result<()> {
    if tau < 10.0 {
        return Err(domain(
            "tau",
            format!("static limit needs tau >= 10, got {tau:.3}"),
        ));
    }
    if (m as f64) < 10.0 * tau {
        return Err(domain(
            "M",
            format!("need M >= 10 tau = {:.1}, got {m}", 10.0 * tau),
        ));
    }
    Ok(())
}

/// Dirichlet-kernel integral split into windows of width `τ` centred on
/// the Matsubara points, where the kernel is `sin(Ky)/sin(πy/τ)`.
fn dirichlet_integral(profile: &PhiProfile, tau: f64, k: f64) -> f64 {
    let cache_breaks = profile.phi.breaks();
    let half = 0.5 * tau;
    let mut total = 0.0;
    let mut n = 0usize;
    loop {
        let c = n as f64 * tau;
        let lo = (c - half).max(0.0);
        let hi = (c + half).min(Z_MAX);
        if lo >= hi {
            break;
        }
        let mut breaks: Vec<f64> = cache_breaks
            .iter()
            .copied()
            .filter(|&z| z > lo && z < hi)
            .collect();
        breaks.extend([lo, hi]);
        if c > lo && c < hi {
            breaks.push(c);
        }
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        let ys: Vec<f64> = breaks.iter().map(|z| z - c).collect();
        let phi_c = profile.eval(c);
        let g = PiecewiseChebyshev::fit(&ys, DEGREE, |y| (profile.eval(c + y) - phi_c) / y);
        let rphi = PiecewiseChebyshev::fit(&ys, DEGREE, |y| {
            kernel_remainder(y, tau) * profile.eval(c + y)
        });
        let (y_lo, y_hi) = (lo - c, hi - c);
        let si = sine_integral(k * y_hi) - sine_integral(k * y_lo);
        total += tau / PI * (phi_c * si + g.sine_transform(k)) + rphi.sine_transform(k);
        n += 1;
    }
    total
}

/// Static-limit partial sum at `M` (direct profile). Requires `τ ≥ 10`, `M ≥ 10τ`.
pub fn static_limit_partial_sum_with(
    profile: &PhiProfile,
    geom: &Geometry,
    thermal: &ThermalState,
    m: usize,
) -> Result<StaticPartialSum> {
    let a = geom.separation;
    let tau = check_tau(thermal, a)?;
    check_static(tau, m)?;
    let k = PI * (2 * m + 1) as f64 / tau;
    let kt_r = K_B * thermal.temperature * geom.radius;
    let dirichlet = -kt_r / (4.0 * a * a * tau) * dirichlet_integral(profile, tau, k);
    let small_angle = -kt_r / (4.0 * PI * a * a) * profile.sinc_integral(k);
    Ok(StaticPartialSum {
        m,
        dirichlet,
        small_angle,
    })
}

pub fn static_limit_partial_sum(
    model: &DielectricModel,
    geom: &Geometry,
    thermal: &ThermalState,
    m: usize,
    tol: f64,
) -> Result<StaticPartialSum> {
    let tau = check_tau(thermal, geom.separation)?;
    check_static(tau, m)?;
    let profile = PhiProfile::new(model, geom.separation, tol)?;
    static_limit_partial_sum_with(&profile, geom, thermal, m)
}

/// `M → ∞` extrapolation of the static-limit partial sums.
#[derive(Debug, Clone, PartialEq)]
pub struct StaticLimit {
    pub extrapolated: f64,
    pub ladder: Vec<StaticPartialSum>,
}

/// Smallest `M` whose kernel resolves the profile's structure at `z*`.
pub fn resolving_m(profile: &PhiProfile, tau: f64) -> usize {
    let from_scale = 50.0 * tau / (PI * profile.crossover());
    (10.0 * tau).max(from_scale).ceil() as usize
}

/// Fit `F(h) = F∞ + b h + c h ln h`, `h = 1/M`, through three partial sums
/// with `M ∈ M₀{1, 3, 10}`, `M₀` from [`resolving_m`].
pub fn static_limit_extrapolate(
    model: &DielectricModel,
    geom: &Geometry,
    thermal: &ThermalState,
    tol: f64,
) -> Result<StaticLimit> {
    let tau = check_tau(thermal, geom.separation)?;
    let profile = PhiProfile::new(model, geom.separation, tol)?;
    let m0 = resolving_m(&profile, tau);
    let ladder = [1, 3, 10]
        .iter()
        .map(|&f| static_limit_partial_sum_with(&profile, geom, thermal, m0 * f))
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<[f64; 4]> = ladder
        .iter()
        .map(|p| {
            let h = 1.0 / p.m as f64;
            [1.0, h, h * h.ln(), p.dirichlet]
        })
        .collect();
    let extrapolated = solve3(&rows)[0];
    Ok(StaticLimit {
        extrapolated,
        ladder,
    })
}

/// Gaussian elimination with partial pivoting on an augmented 3×4 system.
fn solve3(rows: &[[f64; 4]]) -> [f64; 3] {
    let mut m = [rows[0], rows[1], rows[2]];
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .expect("nonempty");
        m.swap(col, pivot);
        for r in col + 1..3 {
            let f = m[r][col] / m[col][col];
            let pivot_row = m[col];
            for (dst, src) in m[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *dst -= f * src;
            }
        }
    }
    let mut x = [0.0; 3];
    for r in (0..3).rev() {
        let s: f64 = (r + 1..3).map(|c| m[r][c] * x[c]).sum();
        x[r] = (m[r][3] - s) / m[r][r];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_profile_at_zero() {
        let p = PhiProfile::new(&DielectricModel::IdealMirror, 1e-7, 1e-10).unwrap();
        assert!((p.at_zero() + 2.0 * ZETA_3).abs() < 1e-9);
        assert!((p.eval(1e-9) + 2.0 * ZETA_3).abs() < 1e-6);
    }

    #[test]
    fn profile_tail_is_negligible() {
        let m = DielectricModel::drude(2e16, 5e13).unwrap();
        let v = phi(&m, 1e-7, 60.0, 1e-9).unwrap();
        assert!(v <= 0.0 && v.abs() < 1e-20);
    }

    #[test]
    fn drude_profile_is_continuous_at_zero() {
        let m = DielectricModel::drude(2e16, 5e13).unwrap();
        let p = PhiProfile::new(&m, 1e-7, 1e-10).unwrap();
        assert!((p.at_zero() + ZETA_3).abs() < 1e-9);
        assert!((phi(&m, 1e-7, 1e-13, 1e-10).unwrap() - p.at_zero()).abs() < 1e-6);
        assert!(
            (p.crossover() * 5324.0 - 1.0).abs() < 0.02,
            "{}",
            p.crossover()
        );
    }

    #[test]
    fn solve3_recovers_coefficients() {
        let f = |h: f64| 2.0 - 3.0 * h + 0.5 * h * h.ln();
        let rows: Vec<[f64; 4]> = [0.1f64, 0.03, 0.01]
            .iter()
            .map(|&h| [1.0, h, h * h.ln(), f(h)])
            .collect();
        let x = solve3(&rows);
        assert!(
            (x[0] - 2.0).abs() < 1e-12 && (x[1] + 3.0).abs() < 1e-10 && (x[2] - 0.5).abs() < 1e-10
        );
    }

    #[test]
    fn kernel_remainder_is_smooth() {
        let tau = 30.0;
        for y in [1e-6, 1e-3, 0.0143, 0.5, 7.0, 15.0] {
            let t = PI * y / tau;
            let direct = 1.0 / t.sin() - 1.0 / t;
            assert!((kernel_remainder(y, tau) - direct).abs() < 1e-9);
        }
    }

    #[test]
    fn static_limit_domain() {
        let g = Geometry::sphere_plate(1e-7, 1e-4).unwrap();
        let t = ThermalState::new(300.0).unwrap();
        let m = DielectricModel::IdealMirror;
        assert!(static_limit_partial_sum(&m, &g, &t, 1000, 1e-9).is_err());
    }
}
