//! Piecewise Chebyshev interpolants with exact Fourier moments.
//!
//! Used to cache expensive smooth profiles once and then take many
//! oscillatory integrals against them: each panel integral of
//! `P(z) e^{ikz}` is done by subdivided Gauss–Legendre when the panel
//! holds few oscillations, and by exact integration by parts of the
//! panel polynomial otherwise. Either way the cost per panel is bounded
//! independently of `k` once `k` is large.

use super::quadrature::gauss_legendre;
use crate::error::Result;
use num_complex::Complex64;
use std::sync::OnceLock;

const GL_ORDER: usize = 32;
/// Oscillation phase per Gauss–Legendre sub-panel.
const PHASE_PER_SUBPANEL: f64 = 12.0;

fn gl_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(GL_ORDER))
}

#[derive(Debug, Clone)]
struct ChebPanel {
    lo: f64,
    hi: f64,
    coeffs: Vec<f64>,
}

impl ChebPanel {
    fn center(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    fn half(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    /// Clenshaw evaluation at local coordinate `u ∈ [-1, 1]`.
    fn eval_local(&self, u: f64) -> f64 {
        clenshaw(&self.coeffs, u)
    }

    /// `∫_{-1}^{1} P(u) e^{iκu} du`.
    fn local_fourier(&self, kappa: f64) -> Complex64 {
        let degree = self.coeffs.len() - 1;
        let ibp_threshold = 2.0 * ((degree + 1) as f64).powi(2);
        if kappa.abs() > ibp_threshold {
            return self.local_fourier_by_parts(kappa);
        }
        let (nodes, weights) = gl_rule();
        let subpanels = ((kappa.abs() / PHASE_PER_SUBPANEL).ceil() as usize).max(1);
        let width = 2.0 / subpanels as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for s in 0..subpanels {
            let c = -1.0 + width * (s as f64 + 0.5);
            let h = 0.5 * width;
            for (x, w) in nodes.iter().zip(weights) {
                let u = c + h * x;
                let p = self.eval_local(u);
                acc += Complex64::from_polar(w * h * p, kappa * u);
            }
        }
        acc
    }

    /// Exact for the panel polynomial:
    /// `Σ_j (-1)^j [P^{(j)}(u) e^{iκu}]_{-1}^{1} / (iκ)^{j+1}`.
    fn local_fourier_by_parts(&self, kappa: f64) -> Complex64 {
        let e_hi = Complex64::from_polar(1.0, kappa);
        let e_lo = e_hi.conj();
        let ik = Complex64::new(0.0, kappa);
        let mut deriv = self.coeffs.clone();
        let mut denom = ik;
        let mut sign = 1.0;
        let mut acc = Complex64::new(0.0, 0.0);
        while !deriv.is_empty() {
            let at_hi: f64 = deriv.iter().sum();
            let at_lo: f64 = deriv
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 0 { *c } else { -c })
                .sum();
            acc += (e_hi * at_hi - e_lo * at_lo) * sign / denom;
            deriv = chebyshev_derivative(&deriv);
            denom *= ik;
            sign = -sign;
        }
        acc
    }
}

fn clenshaw(coeffs: &[f64], u: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &c in coeffs.iter().skip(1).rev() {
        let b0 = 2.0 * u * b1 - b2 + c;
        b2 = b1;
        b1 = b0;
    }
    u * b1 - b2 + coeffs[0]
}

/// Chebyshev coefficients of the derivative (with respect to the local coordinate).
fn chebyshev_derivative(c: &[f64]) -> Vec<f64> {
    let n = c.len();
    if n <= 1 {
        return Vec::new();
    }
    let mut d = vec![0.0; n - 1];
    for k in (1..n).rev() {
        let next = if k + 1 < n - 1 { d[k + 1] } else { 0.0 };
        d[k - 1] = next + 2.0 * k as f64 * c[k];
    }
    d[0] *= 0.5;
    d
}

/// A piecewise Chebyshev interpolant on consecutive panels.
#[derive(Debug, Clone)]
pub struct PiecewiseChebyshev {
    panels: Vec<ChebPanel>,
}

impl PiecewiseChebyshev {
    /// Interpolate `f` at the first-kind Chebyshev nodes of each panel.
    /// Nodes never touch the breakpoints.
    pub fn fit<F: FnMut(f64) -> f64>(breaks: &[f64], degree: usize, mut f: F) -> Self {
        Self::try_fit(breaks, degree, |z| Ok(f(z))).expect("infallible sampler")
    }

    pub fn try_fit<F: FnMut(f64) -> Result<f64>>(
        breaks: &[f64],
        degree: usize,
        mut f: F,
    ) -> Result<Self> {
        assert!(breaks.len() >= 2, "need at least one panel");
        let n = degree + 1;
        let angles: Vec<f64> = (0..n)
            .map(|j| std::f64::consts::PI * (j as f64 + 0.5) / n as f64)
            .collect();
        let mut panels = Vec::with_capacity(breaks.len() - 1);
        for w in breaks.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            assert!(hi > lo, "breakpoints must increase");
            let c = 0.5 * (lo + hi);
            let h = 0.5 * (hi - lo);
            let mut values = Vec::with_capacity(n);
            for a in &angles {
                values.push(f(c + h * a.cos())?);
            }
            let coeffs = (0..n)
                .map(|k| {
                    let s: f64 = values
                        .iter()
                        .zip(&angles)
                        .map(|(v, a)| v * (k as f64 * a).cos())
                        .sum();
                    let scale = if k == 0 { 1.0 } else { 2.0 };
                    scale * s / n as f64
                })
                .collect();
            panels.push(ChebPanel { lo, hi, coeffs });
        }
        Ok(Self { panels })
    }

    /// Refit another function on the same panels.
    pub fn refit<F: FnMut(f64) -> f64>(&self, degree: usize, f: F) -> Self {
        Self::fit(&self.breaks(), degree, f)
    }

    pub fn breaks(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self.panels.iter().map(|p| p.lo).collect();
        b.push(self.panels.last().expect("nonempty").hi);
        b
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.panels[0].lo, self.panels[self.panels.len() - 1].hi)
    }

    /// Value at `z`; zero outside the domain.
    pub fn eval(&self, z: f64) -> f64 {
        let (lo, hi) = self.domain();
        if !(lo..=hi).contains(&z) {
            return 0.0;
        }
        let idx = self
            .panels
            .partition_point(|p| p.hi < z)
            .min(self.panels.len() - 1);
        let p = &self.panels[idx];
        p.eval_local((z - p.center()) / p.half())
    }

    /// `∫ P(z) dz` over the whole domain.
    pub fn integral(&self) -> f64 {
        self.panels
            .iter()
            .map(|p| {
                let s: f64 = p
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| k % 2 == 0)
                    .map(|(k, c)| c * 2.0 / (1.0 - (k * k) as f64))
                    .sum();
                s * p.half()
            })
            .sum()
    }

    /// `∫ P(z) e^{ikz} dz` over the whole domain.
    pub fn fourier(&self, k: f64) -> Complex64 {
        self.panels
            .iter()
            .map(|p| {
                let h = p.half();
                Complex64::from_polar(h, k * p.center()) * p.local_fourier(k * h)
            })
            .sum()
    }

    /// `∫ P(z) cos(kz) dz`.
    pub fn cosine_transform(&self, k: f64) -> f64 {
        self.fourier(k).re
    }

    /// `∫ P(z) sin(kz) dz`.
    pub fn sine_transform(&self, k: f64) -> f64 {
        self.fourier(k).im
    }
}

/// Breakpoints growing geometrically by factor 2 from `first` up to 1,
/// then uniformly with spacing `step` up to `end`, preceded by 0.
pub fn graded_breaks(first: f64, step: f64, end: f64) -> Vec<f64> {
    let mut b = vec![0.0];
    let mut z = first;
    while z < 1.0 {
        b.push(z);
        z *= 2.0;
    }
    let mut z = 1.0;
    while z < end - 1e-12 {
        b.push(z);
        z += step;
    }
    b.push(end);
    b
}
