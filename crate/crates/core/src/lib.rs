pub mod cli;
pub mod cyclotomic;
pub mod dirac_spectrum;
pub mod error;
pub mod eta_invariant;
pub mod lambda_adic;
pub mod lens_geometry;
pub mod modular;
mod poly;
pub mod residue_analysis;
pub mod sweep;

pub use cyclotomic::{CycloNum, RootSum};
pub use error::{Error, Result};
pub use lens_geometry::{LensSpace, Sign, SpinLensSpace};
