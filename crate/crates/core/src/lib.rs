//! Finite-temperature Casimir force between real metals.
//!
//! The force between a sphere and a plate is evaluated from the Lifshitz
//! sum over Matsubara frequencies with the proximity force theorem. The
//! zero-frequency term can be taken either with the Schwinger
//! prescription (mirror limit first) or directly from the dielectric
//! model, and the linear-in-temperature correction is available both by
//! definition (sum minus zero-temperature integral) and in closed form.

#![allow(clippy::excessive_precision)]

pub mod constants;
pub mod corrections;
pub mod dielectric;
pub mod error;
pub mod lifshitz;
pub mod numerics;
pub mod poisson;

pub use dielectric::{AbsorptionTable, DielectricModel, Permittivity};
pub use error::{CasimirError, Result};
pub use lifshitz::{Configuration, ForceResult, Geometry, Prescription, ThermalState};
