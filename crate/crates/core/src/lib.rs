pub mod dirac;
pub mod error;
pub mod extension;
pub mod quadrature;
pub mod resolvent;
pub mod scattering;
pub mod specfun;
pub mod symmetry;

pub use error::{Error, Result};
