//! Physical and mathematical constants (CODATA 2018, SI).

/// Speed of light in vacuum, m/s.
pub const C: f64 = 2.997_924_58e8;
/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K.
pub const K_B: f64 = 1.380_649e-23;
/// Vacuum permittivity, F/m.
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;

/// Apéry's constant ζ(3).
pub const ZETA_3: f64 = 1.202_056_903_159_594_285_4;

/// Tag written into run reports so output can be traced to a constants set.
pub const CONSTANTS_VERSION: &str = "CODATA-2018";

/// `ħc`, J·m.
pub const HBAR_C: f64 = HBAR * C;
