//! Sine integral.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

/// `Si(x) = ∫₀ˣ sin(t)/t dt`.
///
/// Power series below 2, continued fraction for `E₁(ix)` above
/// (modified Lentz).
pub fn sine_integral(x: f64) -> f64 {
    let t = x.abs();
    let v = if t == 0.0 {
        0.0
    } else if t <= 2.0 {
        let t2 = t * t;
        let mut term = t;
        let mut sum = t;
        for k in 1..60 {
            let n = 2 * k + 1;
            term *= -t2 / ((n - 1) * n) as f64;
            let add = term / n as f64;
            sum += add;
            if add.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        sum
    } else {
        let tiny = 1e-300;
        let mut b = Complex64::new(1.0, t);
        let mut c = Complex64::new(1.0 / tiny, 0.0);
        let mut d = b.inv();
        let mut h = d;
        for i in 2..200 {
            let a = -((i - 1) as f64).powi(2);
            b += 2.0;
            d = (d * a + b).inv();
            c = b + c.inv() * a;
            let del = c * d;
            h *= del;
            if (del - 1.0).norm() < 1e-16 {
                break;
            }
        }
        let h = Complex64::new(t.cos(), -t.sin()) * h;
        FRAC_PI_2 + h.im
    };
    v.copysign(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        // Abramowitz & Stegun table 5.1 and high-precision references.
        let cases = [
            (0.5, 0.493_107_418_043_066_7),
            (1.0, 0.946_083_070_367_183_0),
            (2.0, 1.605_412_976_802_694_8),
            (std::f64::consts::PI, 1.851_937_051_982_466_2),
            (5.0, 1.549_931_244_944_674_1),
            (10.0, 1.658_347_594_218_874_0),
            (100.0, 1.562_225_466_889_056_3),
        ];
        for (x, want) in cases {
            let got = sine_integral(x);
            assert!((got - want).abs() < 1e-14, "Si({x}) = {got}, want {want}");
            assert_eq!(sine_integral(-x), -got);
        }
    }

    #[test]
    fn large_argument_limit() {
        for x in [1e4, 1e6, 1e9] {
            let s = sine_integral(x);
            assert!((s - FRAC_PI_2).abs() < 1.01 / x);
        }
    }

    #[test]
    fn continuous_at_switch() {
        let below = sine_integral(2.0 - 1e-12);
        let above = sine_integral(2.0 + 1e-12);
        assert!((above - below).abs() < 1e-11);
    }
}
