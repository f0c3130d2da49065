//! Clifford-analysis numerics for monogenic functions on strips and
//! half-spaces: reproducing kernels, spectral Hardy decomposition and
//! Paley-Wiener extension.

pub mod bessel;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod gridfile;
pub mod kernels;
pub mod quadrature;
pub mod radial;
pub mod spectral;
pub mod verify;

pub use clifford::{Multivector, ParaVector};
pub use error::{Error, Result};
