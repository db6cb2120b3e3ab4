//! Central finite differences with one Richardson level.

use crate::error::{CasimirError, Result};

/// Derivative estimate and its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: f64,
    pub abs_error: f64,
    /// Base step used.
    pub step: f64,
}

/// `f'(x0)` from central differences at steps `h0` and `h0/2`, combined by
/// one Richardson step. The error estimate is the disagreement between the
/// extrapolated value and the finer central difference.
pub fn differentiate<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    x0: f64,
    h0: f64,
) -> Result<Derivative> {
    let mut sample = |x: f64| -> Result<f64> {
        let v = f(x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(CasimirError::NonFinite { at: x })
        }
    };
    let h1 = 0.5 * h0;
    let d0 = (sample(x0 + h0)? - sample(x0 - h0)?) / (2.0 * h0);
    let d1 = (sample(x0 + h1)? - sample(x0 - h1)?) / (2.0 * h1);
    let value = (4.0 * d1 - d0) / 3.0;
    Ok(Derivative {
        value,
        abs_error: (value - d1).abs(),
        step: h0,
    })
}
