//! Adaptive Gauss–Kronrod quadrature and fixed Gauss–Legendre rules.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Absolute error estimate.
    pub abs_error: f64,
    /// Number of panels in the final partition.
    pub subdivisions: usize,
    pub converged: bool,
}

impl QuadratureResult {
    fn zero() -> Self {
        Self {
            value: 0.0,
            abs_error: 0.0,
            subdivisions: 0,
            converged: true,
        }
    }

    /// Sum of two independent results over adjacent intervals.
    pub fn combine(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            abs_error: self.abs_error + other.abs_error,
            subdivisions: self.subdivisions + other.subdivisions,
            converged: self.converged && other.converged,
        }
    }
}

/// Maximum number of panels before [`integrate_adaptive`] gives up.
pub const DEFAULT_BUDGET: usize = 2000;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One 15-point Kronrod panel with the embedded 7-point Gauss estimate.
/// Error scaling follows QUADPACK's `qk15`.
fn gk15<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64) -> Panel {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    if !value.is_finite() {
        error = f64::INFINITY;
    }
    Panel {
        lo,
        hi,
        value,
        error,
    }
}

/// Globally adaptive bisection with the 7/15 Gauss–Kronrod pair.
///
/// Converges when the summed error estimate is at most
/// `max(abs_tol, rel_tol * |value|)`. Finite panels are required; use
/// [`integrate_semi_infinite`] for decaying integrands on `[lo, ∞)`.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> QuadratureResult {
    integrate_adaptive_budget(f, lo, hi, rel_tol, abs_tol, DEFAULT_BUDGET)
}

pub fn integrate_adaptive_budget<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    rel_tol: f64,
    abs_tol: f64,
    budget: usize,
) -> QuadratureResult {
    if hi == lo {
        return QuadratureResult::zero();
    }
    let first = gk15(&mut f, lo, hi);
    let mut total = first.value;
    let mut total_err = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let target = |v: f64| abs_tol.max(rel_tol * v.abs());
    while total_err > target(total) && heap.len() < budget.max(1) {
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        // Interval has shrunk to rounding level; further bisection is pointless.
        if mid <= worst.lo.min(worst.hi) || mid >= worst.lo.max(worst.hi) {
            heap.push(worst);
            break;
        }
        let left = gk15(&mut f, worst.lo, mid);
        let right = gk15(&mut f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed drift from the incremental updates.
    let (value, abs_error) = heap
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
    QuadratureResult {
        value,
        abs_error,
        subdivisions: heap.len(),
        converged: abs_error <= target(value) && value.is_finite(),
    }
}

/// Integrate adaptively over consecutive breakpoints, splitting the tolerance.
pub fn integrate_breakpoints<F: FnMut(f64) -> f64>(
    mut f: F,
    breaks: &[f64],
    rel_tol: f64,
    abs_tol: f64,
) -> QuadratureResult {
    let pieces = breaks.len().saturating_sub(1).max(1) as f64;
    breaks
        .windows(2)
        .map(|w| integrate_adaptive(&mut f, w[0], w[1], rel_tol, abs_tol / pieces))
        .fold(QuadratureResult::zero(), QuadratureResult::combine)
}

/// Integrate a decaying integrand on `[lo, ∞)`.
///
/// The domain is truncated where the probed envelope drops below
/// `rel_tol * 1e-3` of the largest sampled magnitude; the probe doubles
/// the distance from `lo` until two consecutive samples are below that
/// floor. The next doubling interval is integrated as well and counted in
/// the error estimate.
pub fn integrate_semi_infinite<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    rel_tol: f64,
) -> QuadratureResult {
    let mut peak = 0.0_f64;
    for k in 1..=16 {
        peak = peak.max(f(lo + k as f64 / 16.0).abs());
    }
    let mut cutoff = None;
    for k in 0..64 {
        let d = 2f64.powi(k);
        let a = f(lo + d).abs();
        let b = f(lo + 1.5 * d).abs();
        peak = peak.max(a).max(b);
        let floor = rel_tol * 1e-3 * peak;
        if a <= floor && b <= floor && d >= 1.0 {
            cutoff = Some(lo + 2.0 * d);
            break;
        }
    }
    let Some(hi) = cutoff else {
        return QuadratureResult {
            value: f64::NAN,
            abs_error: f64::INFINITY,
            subdivisions: 0,
            converged: false,
        };
    };
    let body = integrate_adaptive(&mut f, lo, hi, rel_tol, 0.0);
    let tail = integrate_adaptive(&mut f, hi, hi + (hi - lo), rel_tol, 0.0);
    let mut out = body.combine(tail);
    out.abs_error += tail.value.abs();
    out.converged =
        body.converged && out.abs_error <= rel_tol * out.value.abs() + f64::MIN_POSITIVE;
    out
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss–Legendre rule needs at least one node");
    if n == 1 {
        return (vec![0.0], vec![2.0]);
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}
