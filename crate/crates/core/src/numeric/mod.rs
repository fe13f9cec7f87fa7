//! Numerical infrastructure: quadrature, root bracketing, Taylor jets and
//! monotone interpolation.

pub mod jet;
pub mod pchip;
pub mod quad;
pub mod roots;
