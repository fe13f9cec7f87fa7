//! Numerical toolkit for supersymmetric quantum mechanics: the SWKB
//! quantization condition over a catalog of solvable superpotentials, its
//! inverse problem, and an eigensolver for piecewise-quadratic oscillators
//! together with Darboux–Crum deformations and Wigner functions.

pub mod catalog;
pub mod error;
pub mod inverse;
pub mod isospectral;
pub mod numeric;
pub mod orthopoly;
pub mod piecewise;
pub mod specfun;
pub mod swkb;
pub mod wigner;

pub use error::{Error, Result};
