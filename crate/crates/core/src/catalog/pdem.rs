//! Systems with a position-dependent effective mass m(x) = 1/(2η(x)²).

use super::{Descriptor, Domain, Params, SuperpotentialSpec};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum PdemKind {
    /// W = ωx with η = 1 + αx²; ℰ_n = 2nħω + ħ²αn².
    DeformedHo { alpha: f64 },
    /// W = ωx√(a/(x+a)) with η = √((x+a)/a) on (−a, ∞); ℰ_n = 2nħω.
    Semiconfined { a: f64 },
}

pub fn make_pdem(kind: PdemKind, params: &Params) -> Result<SuperpotentialSpec> {
    params.check_units()?;
    let hb = params.hbar;
    let om = params.omega;
    let desc = Descriptor::Pdem { pdem: kind, params: *params };
    match kind {
        PdemKind::DeformedHo { alpha } => {
            if !(alpha >= 0.0 && alpha.is_finite()) {
                return Err(Error::InvalidParameter(format!("deformation alpha must be non-negative, got {alpha}")));
            }
            Ok(SuperpotentialSpec::new(
                desc,
                Domain::real_line(),
                Arc::new(move |x| om * x),
                Arc::new(move |_| om),
                Arc::new(move |n| {
                    let n = n as f64;
                    2.0 * n * hb * om + hb * hb * alpha * n * n
                }),
            )
            .with_eta(Arc::new(move |x| 1.0 + alpha * x * x)))
        }
        PdemKind::Semiconfined { a } => {
            if !(a > 0.0 && a.is_finite()) {
                return Err(Error::InvalidParameter(format!("semi-confinement length a must be positive, got {a}")));
            }
            Ok(SuperpotentialSpec::new(
                desc,
                Domain::new(-a, f64::INFINITY),
                Arc::new(move |x| if x > -a { om * x * (a / (x + a)).sqrt() } else { f64::NEG_INFINITY }),
                Arc::new(move |x| {
                    let s = x + a;
                    om * a.sqrt() * (s.powf(-0.5) - 0.5 * x * s.powf(-1.5))
                }),
                Arc::new(move |n| 2.0 * n as f64 * hb * om),
            )
            .with_eta(Arc::new(move |x| if x > -a { ((x + a) / a).sqrt() } else { f64::INFINITY })))
        }
    }
}
