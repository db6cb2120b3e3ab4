use crate::error::{CasimirError, Result};
use crate::numerics::integrate_adaptive;
use std::f64::consts::{FRAC_2_PI, FRAC_PI_2};
use std::io::Read;
use std::path::Path;

const HEADER: [&str; 2] = ["omega_rad_s", "eps_imag"];

/// Absorption spectrum `ε″(ω)` sampled at strictly increasing real frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsorptionTable {
    omega: Vec<f64>,
    eps_imag: Vec<f64>,
}

fn table_err(line: usize, reason: impl Into<String>) -> CasimirError {
    CasimirError::Table {
        line,
        reason: reason.into(),
    }
}

impl AbsorptionTable {
    /// Validate samples. Row numbers in errors are 1-based sample indices.
    pub fn new(omega: Vec<f64>, eps_imag: Vec<f64>) -> Result<Self> {
        Self::validated(omega, eps_imag, |i| i + 1)
    }

    fn validated(
        omega: Vec<f64>,
        eps_imag: Vec<f64>,
        line_of: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        if omega.is_empty() {
            return Err(table_err(0, "table is empty"));
        }
        if omega.len() != eps_imag.len() {
            return Err(table_err(
                0,
                "frequency and absorption columns differ in length",
            ));
        }
        for (i, (&w, &e)) in omega.iter().zip(&eps_imag).enumerate() {
            if !(w.is_finite() && w > 0.0) {
                return Err(table_err(
                    line_of(i),
                    format!("frequency must be positive, got {w}"),
                ));
            }
            if !(e.is_finite() && e >= 0.0) {
                return Err(table_err(
                    line_of(i),
                    format!("eps_imag must be non-negative, got {e}"),
                ));
            }
            if i > 0 && w <= omega[i - 1] {
                return Err(table_err(
                    line_of(i),
                    "frequencies must be strictly increasing",
                ));
            }
        }
        Ok(Self { omega, eps_imag })
    }

    /// Parse CSV with header `omega_rad_s,eps_imag`. Errors carry the file line.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr
            .headers()
            .map_err(|e| table_err(1, e.to_string()))?
            .clone();
        if headers.iter().collect::<Vec<_>>() != HEADER {
            return Err(table_err(
                1,
                format!("expected header `{}`", HEADER.join(",")),
            ));
        }
        let mut omega = Vec::new();
        let mut eps = Vec::new();
        let mut lines = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line() as usize);
                table_err(line, e.to_string())
            })?;
            let line = rec.position().map_or(0, |p| p.line() as usize);
            let field = |i: usize| -> Result<f64> {
                rec.get(i)
                    .ok_or_else(|| table_err(line, "missing column"))?
                    .parse::<f64>()
                    .map_err(|e| table_err(line, format!("{e}: `{}`", &rec[i])))
            };
            omega.push(field(0)?);
            eps.push(field(1)?);
            lines.push(line);
        }
        Self::validated(omega, eps, |i| lines[i])
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path)
            .map_err(|e| table_err(0, format!("{}: {e}", path.display())))?;
        Self::from_csv_reader(file)
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.omega
    }

    pub fn absorption(&self) -> &[f64] {
        &self.eps_imag
    }

    /// `ε(iζ) - 1 = (2/π)∫₀^∞ ω ε″(ω)/(ω² + ζ²) dω`.
    ///
    /// Below the first sample `ε″` is the Drude form with `(ω_p, ω_τ)`,
    /// between samples it is log-log linear (linear where a sample is zero),
    /// and above the last sample it decays as `ω⁻³`. `ζ = 0` is accepted here
    /// for the static permittivity of non-conducting tables.
    pub(crate) fn eps_minus_one(&self, omega_p: f64, omega_tau: f64, zeta: f64) -> f64 {
        let low = drude_head(omega_p, omega_tau, self.omega[0], zeta);
        let body: f64 = (0..self.omega.len() - 1)
            .map(|k| self.segment(k, zeta))
            .sum();
        let n = self.omega.len() - 1;
        let high = self.eps_imag[n] * cubic_tail(zeta / self.omega[n]);
        FRAC_2_PI * (low + body + high)
    }

    fn segment(&self, k: usize, zeta: f64) -> f64 {
        let (w0, w1) = (self.omega[k], self.omega[k + 1]);
        let (e0, e1) = (self.eps_imag[k], self.eps_imag[k + 1]);
        if e0 == 0.0 && e1 == 0.0 {
            return 0.0;
        }
        let z2 = zeta * zeta;
        if e0 > 0.0 && e1 > 0.0 {
            let (t0, t1) = (w0.ln(), w1.ln());
            let slope = (e1 / e0).ln() / (t1 - t0);
            let f = |t: f64| {
                let w = t.exp();
                let e = e0 * (slope * (t - t0)).exp();
                w * w * e / (w * w + z2)
            };
            integrate_adaptive(f, t0, t1, 1e-12, 0.0).value
        } else {
            let f = |w: f64| {
                let e = e0 + (e1 - e0) * (w - w0) / (w1 - w0);
                w * e / (w * w + z2)
            };
            integrate_adaptive(f, w0, w1, 1e-12, 0.0).value
        }
    }
}

/// `ω_p²ω_τ ∫₀^{w} dω / ((ω² + ω_τ²)(ω² + ζ²))`, the Drude part below the table.
fn drude_head(omega_p: f64, omega_tau: f64, w: f64, zeta: f64) -> f64 {
    if omega_p == 0.0 {
        return 0.0;
    }
    let wp2 = omega_p * omega_p;
    if omega_tau == 0.0 {
        // ε″ collapses onto ω = 0 with total weight (π/2)ω_p².
        return wp2 * FRAC_PI_2 / (zeta * zeta);
    }
    let (a, b) = (omega_tau, zeta);
    if ((b - a) / a).abs() < 1e-6 {
        let a2 = a * a;
        return wp2 * a * (w / (w * w + a2) + (w / a).atan() / a) / (2.0 * a2);
    }
    if b == 0.0 {
        // Diverges like 1/ω near zero: a conductor has no static permittivity.
        return f64::INFINITY;
    }
    let head_a = (w / a).atan() / a;
    let head_b = (w / b).atan() / b;
    wp2 * a * (head_a - head_b) / (b * b - a * a)
}

/// `(1 - atan(u)/u)/u²`: the `ω⁻³` tail integral in units of the last sample.
fn cubic_tail(u: f64) -> f64 {
    if u < 1e-3 {
        let u2 = u * u;
        1.0 / 3.0 - u2 / 5.0 + u2 * u2 / 7.0
    } else {
        (1.0 - u.atan() / u) / (u * u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dielectric::{eval_drude, eval_tabulated};

    fn drude_eps_imag(wp: f64, wt: f64, w: f64) -> f64 {
        wp * wp * wt / (w * (w * w + wt * wt))
    }

    fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
            .collect()
    }

    #[test]
    fn reproduces_drude_from_its_absorption() {
        let (wp, wt) = (2e16, 5e13);
        let omega = log_grid(1e11, 1e19, 1200);
        let eps: Vec<f64> = omega.iter().map(|&w| drude_eps_imag(wp, wt, w)).collect();
        let table = AbsorptionTable::new(omega, eps).unwrap();
        for zeta in log_grid(1e12, 1e18, 13) {
            let got = eval_tabulated(&table, wp, wt, zeta).unwrap();
            let want = eval_drude(wp, wt, zeta).unwrap();
            assert!(
                ((got - want) / want).abs() < 1e-3,
                "zeta={zeta:e}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn vacuum_table() {
        let table = AbsorptionTable::new(vec![1e12, 1e13, 1e14], vec![0.0; 3]).unwrap();
        assert_eq!(eval_tabulated(&table, 0.0, 0.0, 1e13).unwrap(), 1.0);
    }

    #[test]
    fn narrow_line() {
        let (w0, sigma, height) = (1e15, 1e11, 3.0);
        let n = 4001;
        let omega: Vec<f64> = (0..n)
            .map(|i| w0 + sigma * 12.0 * (i as f64 / (n - 1) as f64 - 0.5))
            .collect();
        let eps: Vec<f64> = omega
            .iter()
            .map(|w| height * (-0.5 * ((w - w0) / sigma).powi(2)).exp())
            .collect();
        let weight = height * sigma * (2.0 * std::f64::consts::PI).sqrt();
        let table = AbsorptionTable::new(omega, eps).unwrap();
        for zeta in [1e13, 1e15, 3e16] {
            let got = eval_tabulated(&table, 0.0, 0.0, zeta).unwrap();
            let want = 1.0 + FRAC_2_PI * weight * w0 / (w0 * w0 + zeta * zeta);
            assert!(
                ((got - want) / (want - 1.0)).abs() < 1e-4,
                "{got} vs {want}"
            );
        }
    }

    #[test]
    fn plasma_extrapolation_limit() {
        let table = AbsorptionTable::new(vec![1e14, 1e15], vec![0.0, 0.0]).unwrap();
        let got = eval_tabulated(&table, 1e16, 0.0, 1e15).unwrap();
        assert!((got - 101.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(AbsorptionTable::new(vec![], vec![]).is_err());
        let e = AbsorptionTable::new(vec![1.0, 2.0, 2.0], vec![0.1; 3]).unwrap_err();
        assert_eq!(e, table_err(3, "frequencies must be strictly increasing"));
        assert!(AbsorptionTable::new(vec![1.0, 2.0], vec![0.1, -0.1]).is_err());
    }

    #[test]
    fn csv_round_trip_and_line_numbers() {
        let ok = "omega_rad_s,eps_imag\n1e13,2.5\n1e14,0.3\n";
        let t = AbsorptionTable::from_csv_reader(ok.as_bytes()).unwrap();
        assert_eq!(t.frequencies(), &[1e13, 1e14]);
        assert_eq!(t.absorption(), &[2.5, 0.3]);

        let bad = "omega_rad_s,eps_imag\n1e13,2.5\n1e14,abc\n";
        match AbsorptionTable::from_csv_reader(bad.as_bytes()).unwrap_err() {
            CasimirError::Table { line, .. } => assert_eq!(line, 3),
            e => panic!("unexpected {e:?}"),
        }
        let unsorted = "omega_rad_s,eps_imag\n1e14,2.5\n1e13,0.3\n";
        match AbsorptionTable::from_csv_reader(unsorted.as_bytes()).unwrap_err() {
            CasimirError::Table { line, .. } => assert_eq!(line, 3),
            e => panic!("unexpected {e:?}"),
        }
        let header = "omega,eps\n1,2\n";
        assert!(AbsorptionTable::from_csv_reader(header.as_bytes()).is_err());
    }

    #[test]
    fn static_permittivity_of_dielectric_table() {
        // Narrow line at w0 with weight W: ε(0) - 1 = (2/π) W / w0.
        let table = AbsorptionTable::new(vec![0.9e15, 1e15, 1.1e15], vec![0.0, 1.0, 0.0]).unwrap();
        let static_part = table.eps_minus_one(0.0, 0.0, 0.0);
        assert!(static_part > 0.0 && static_part.is_finite());
    }
}
