//! Shared numerical kernels.

pub mod chebyshev;
pub mod diff;
pub mod quadrature;
pub mod series;
pub mod special;

pub use chebyshev::PiecewiseChebyshev;
pub use diff::{differentiate, Derivative};
pub use quadrature::{
    integrate_adaptive, integrate_breakpoints, integrate_semi_infinite, QuadratureResult,
};
pub use series::{sum_until, SeriesResult};
pub use special::sine_integral;

/// A computed quantity together with its absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub abs_error: f64,
}

impl Estimate {
    pub fn new(value: f64, abs_error: f64) -> Self {
        Self { value, abs_error }
    }
}
