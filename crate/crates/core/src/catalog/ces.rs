//! Conditionally exactly solvable extension of the harmonic oscillator.
//!
//! W = ωx + ħu′/u, where u solves ħ²u″ + 2ħωx u′ − bħω u = 0:
//! u = ₁F₁(−b/4; 1/2; −ξ²) + βξ ₁F₁(1/2 − b/4; 3/2; −ξ²), ξ = √(ω/ħ)x.
//! The shift b is measured in units of ħω.

use super::{Descriptor, Domain, Params, SuperpotentialSpec};
use crate::error::{Error, Result};
use crate::specfun::{kummer_1f1, kummer_1f1_dz, log_gamma, KummerParams};
use std::sync::Arc;

/// The Condition II bound on |β|: 2Γ(b/4 + 1)/Γ(b/4 + 1/2).
pub fn ces_beta_bound(b: f64) -> Result<f64> {
    let (l1, s1) = log_gamma(b / 4.0 + 1.0)?;
    let (l2, s2) = log_gamma(b / 4.0 + 0.5)?;
    Ok(2.0 * (s1 * s2) as f64 * (l1 - l2).exp())
}

/// (u, du/dξ) at ξ.
fn u_and_derivative(b: f64, beta: f64, xi: f64) -> Result<(f64, f64)> {
    let z = -xi * xi;
    let a1 = -b / 4.0;
    let a2 = 0.5 - b / 4.0;
    let m1 = kummer_1f1(KummerParams::new(a1, 0.5, z))?;
    let m1p = kummer_1f1_dz(KummerParams::new(a1, 0.5, z))?;
    if beta == 0.0 {
        return Ok((m1, -2.0 * xi * m1p));
    }
    let m2 = kummer_1f1(KummerParams::new(a2, 1.5, z))?;
    let m2p = kummer_1f1_dz(KummerParams::new(a2, 1.5, z))?;
    let u = m1 + beta * xi * m2;
    let du = -2.0 * xi * m1p + beta * m2 - 2.0 * beta * xi * xi * m2p;
    Ok((u, du))
}

/// Builds the conditionally exactly solvable oscillator with shift `b` and mixing `beta`.
pub fn make_ces(b: f64, beta: f64, params: &Params) -> Result<SuperpotentialSpec> {
    params.check_units()?;
    if !(b > -2.0) {
        return Err(Error::InvalidParameter(format!("condition I requires b > -2, got {b}")));
    }
    let bound = ces_beta_bound(b)?;
    if !(beta.abs() < bound) {
        return Err(Error::InvalidParameter(format!("condition II requires |beta| < {bound}, got {beta}")));
    }
    let hb = params.hbar;
    let om = params.omega;
    let k = (om / hb).sqrt();
    let desc = Descriptor::Ces { b, beta, params: *params };
    // W = ωx + ħ k (du/dξ)/u; W′ from the ODE for u: u_ξξ = b u − 2ξ u_ξ.
    let w = move |x: f64| match u_and_derivative(b, beta, k * x) {
        Ok((u, du)) => om * x + hb * k * du / u,
        Err(_) => f64::NAN,
    };
    let w_prime = move |x: f64| {
        let xi = k * x;
        match u_and_derivative(b, beta, xi) {
            Ok((u, du)) => {
                let r = du / u;
                let d2 = b - 2.0 * xi * r;
                om + hb * k * k * (d2 - r * r)
            }
            Err(_) => f64::NAN,
        }
    };
    Ok(SuperpotentialSpec::new(
        desc,
        Domain::real_line(),
        Arc::new(w),
        Arc::new(w_prime),
        Arc::new(move |n| if n == 0 { 0.0 } else { (2.0 * n as f64 + b) * hb * om }),
    ))
}
