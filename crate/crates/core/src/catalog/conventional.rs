//! The conventional shape-invariant superpotentials.

use super::{Descriptor, Domain, Params, RealFn, SuperpotentialSpec};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conventional {
    /// 1-d harmonic oscillator, W = ωx.
    Harmonic,
    /// Radial oscillator, W = ωx − ħg/x.
    Radial,
    /// Trigonometric Pöschl–Teller, W = −ħ(g cot x − h tan x).
    PoschlTeller,
    /// W = −ħg cot x on (0, π).
    InverseSinSquared,
    Coulomb,
    KeplerHypersphere,
    Morse,
    /// W = ħh tanh x.
    InverseCoshSquared,
    RosenMorse,
    HyperbolicSymmetricTop,
    Eckart,
    HyperbolicPoschlTeller,
}

impl Conventional {
    pub const ALL: [Conventional; 12] = [
        Conventional::Harmonic,
        Conventional::Radial,
        Conventional::PoschlTeller,
        Conventional::InverseSinSquared,
        Conventional::Coulomb,
        Conventional::KeplerHypersphere,
        Conventional::Morse,
        Conventional::InverseCoshSquared,
        Conventional::RosenMorse,
        Conventional::HyperbolicSymmetricTop,
        Conventional::Eckart,
        Conventional::HyperbolicPoschlTeller,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Conventional::Harmonic => "harmonic",
            Conventional::Radial => "radial",
            Conventional::PoschlTeller => "poschl-teller",
            Conventional::InverseSinSquared => "inverse-sin-squared",
            Conventional::Coulomb => "coulomb",
            Conventional::KeplerHypersphere => "kepler-hypersphere",
            Conventional::Morse => "morse",
            Conventional::InverseCoshSquared => "inverse-cosh-squared",
            Conventional::RosenMorse => "rosen-morse",
            Conventional::HyperbolicSymmetricTop => "hyperbolic-symmetric-top",
            Conventional::Eckart => "eckart",
            Conventional::HyperbolicPoschlTeller => "hyperbolic-poschl-teller",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        let s = s.to_ascii_lowercase();
        let alias = match s.as_str() {
            "h" | "ho" => Some(Conventional::Harmonic),
            "l" => Some(Conventional::Radial),
            "j" | "pt" => Some(Conventional::PoschlTeller),
            "sin2" => Some(Conventional::InverseSinSquared),
            "kepler" => Some(Conventional::KeplerHypersphere),
            "cosh2" => Some(Conventional::InverseCoshSquared),
            "symtop" => Some(Conventional::HyperbolicSymmetricTop),
            "hpt" => Some(Conventional::HyperbolicPoschlTeller),
            _ => None,
        };
        alias.or_else(|| Self::ALL.iter().copied().find(|f| f.name() == s))
    }

    pub fn parameter_names(self) -> &'static str {
        match self {
            Conventional::Harmonic => "",
            Conventional::Radial | Conventional::InverseSinSquared => "g",
            Conventional::PoschlTeller | Conventional::HyperbolicPoschlTeller => "g, h",
            Conventional::Coulomb => "e2, g",
            Conventional::KeplerHypersphere | Conventional::Eckart => "mu, g",
            Conventional::Morse | Conventional::RosenMorse | Conventional::HyperbolicSymmetricTop => "mu, h",
            Conventional::InverseCoshSquared => "h",
        }
    }

    pub fn constraints(self) -> &'static str {
        match self {
            Conventional::Harmonic => "omega > 0",
            Conventional::Radial | Conventional::InverseSinSquared | Conventional::Coulomb => "g > 1/2",
            Conventional::PoschlTeller => "g, h > 1/2",
            Conventional::KeplerHypersphere => "g > 3/2, mu > 0",
            Conventional::Morse | Conventional::HyperbolicSymmetricTop => "h, mu > 0",
            Conventional::InverseCoshSquared => "h > 1/2",
            Conventional::RosenMorse => "h > sqrt(mu) > 0",
            Conventional::Eckart => "sqrt(mu) > g > 1/2",
            Conventional::HyperbolicPoschlTeller => "h > g > 1/2",
        }
    }

    /// A representative admissible parameter set, with several bound states
    /// for the families that have a finite number of them.
    pub fn example_params(self) -> Params {
        let p = Params::default();
        match self {
            Conventional::Harmonic => p,
            Conventional::Radial => p.with_g(3.0),
            Conventional::PoschlTeller => p.with_g(2.0).with_h(3.0),
            Conventional::InverseSinSquared => p.with_g(2.0),
            Conventional::Coulomb => p.with_g(2.0).with_e2(1.0),
            Conventional::KeplerHypersphere => p.with_g(2.0).with_mu(1.0),
            Conventional::Morse => p.with_h(5.5).with_mu(1.0),
            Conventional::InverseCoshSquared => p.with_h(6.5),
            Conventional::RosenMorse => p.with_h(8.0).with_mu(2.0),
            Conventional::HyperbolicSymmetricTop => p.with_h(6.5).with_mu(1.0),
            Conventional::Eckart => p.with_g(1.0).with_mu(64.0),
            Conventional::HyperbolicPoschlTeller => p.with_g(1.0).with_h(12.0),
        }
    }

    pub fn spectrum_text(self) -> &'static str {
        match self {
            Conventional::Harmonic => "2 n hbar omega",
            Conventional::Radial => "4 n hbar omega",
            Conventional::PoschlTeller => "4 hbar^2 n(n + g + h)",
            Conventional::InverseSinSquared => "hbar^2 n(n + 2g)",
            Conventional::Coulomb => "e^4/(4 hbar^2 g^2) - e^4/(4 hbar^2 (g+n)^2)",
            Conventional::KeplerHypersphere => "hbar^2 [mu^2/g^2 - mu^2/(g+n)^2 + (g+n)^2 - g^2]",
            Conventional::Morse | Conventional::InverseCoshSquared | Conventional::HyperbolicSymmetricTop => {
                "hbar^2 (2nh - n^2), n < h"
            }
            Conventional::RosenMorse => "hbar^2 [h^2 - (h-n)^2 + mu^2/h^2 - mu^2/(h-n)^2], h - n > sqrt(mu)",
            Conventional::Eckart => "hbar^2 [g^2 - (g+n)^2 + mu^2/g^2 - mu^2/(g+n)^2], g + n < sqrt(mu)",
            Conventional::HyperbolicPoschlTeller => "4 hbar^2 n(h - g - n), n < (h - g)/2",
        }
    }
}

fn invalid(msg: String) -> Error {
    Error::InvalidParameter(msg)
}

/// Largest integer n with n < bound (bound > 0).
fn last_below(bound: f64) -> usize {
    (bound.ceil() - 1.0).max(0.0) as usize
}

fn f(w: impl Fn(f64) -> f64 + Send + Sync + 'static) -> RealFn {
    Arc::new(w)
}

/// Builds a conventional shape-invariant system.
pub fn make_conventional(family: Conventional, params: &Params) -> Result<SuperpotentialSpec> {
    params.check_units()?;
    let hb = params.hbar;
    let om = params.omega;
    let desc = Descriptor::Conventional { family, params: *params };
    let spec = match family {
        Conventional::Harmonic => SuperpotentialSpec::new(
            desc,
            Domain::real_line(),
            f(move |x| om * x),
            f(move |_| om),
            Arc::new(move |n| 2.0 * n as f64 * hb * om),
        ),
        Conventional::Radial => {
            let g = params.require("g")?;
            if g <= 0.5 {
                return Err(invalid(format!("radial oscillator needs g > 1/2, got {g}")));
            }
            SuperpotentialSpec::new(
                desc,
                Domain::new(0.0, f64::INFINITY),
                f(move |x| om * x - hb * g / x),
                f(move |x| om + hb * g / (x * x)),
                Arc::new(move |n| 4.0 * n as f64 * hb * om),
            )
        }
        Conventional::PoschlTeller => {
            let g = params.require("g")?;
            let h = params.require("h")?;
            if g <= 0.5 || h <= 0.5 {
                return Err(invalid(format!("Pöschl–Teller needs g, h > 1/2, got ({g}, {h})")));
            }
            SuperpotentialSpec::new(
                desc,
                Domain::new(0.0, FRAC_PI_2),
                f(move |x| -hb * (g / x.tan() - h * x.tan())),
                f(move |x| hb * (g / x.sin().powi(2) + h / x.cos().powi(2))),
                Arc::new(move |n| {
                    let n = n as f64;
                    4.0 * hb * hb * n * (n + g + h)
                }),
            )
        }
        Conventional::InverseSinSquared => {
            let g = params.require("g")?;
            if g <= 0.5 {
                return Err(invalid(format!("1/sin² potential needs g > 1/2, got {g}")));
            }
            SuperpotentialSpec::new(
                desc,
                Domain::new(0.0, PI),
                f(move |x| -hb * g / x.tan()),
                f(move |x| hb * g / x.sin().powi(2)),
                Arc::new(move |n| {
                    let n = n as f64;
                    hb * hb * n * (n + 2.0 * g)
                }),
            )
        }
        Conventional::Coulomb => {
            let g = params.require("g")?;
            let e2 = params.require("e2")?;
            if g <= 0.5 || e2 <= 0.0 {
                return Err(invalid(format!("Coulomb needs g > 1/2 and e² > 0, got g = {g}, e² = {e2}")));
            }
            SuperpotentialSpec::new(
                desc,
                Domain::new(0.0, f64::INFINITY),
                f(move |x| e2 / (2.0 * hb * g) - hb * g / x),
                f(move |x| hb * g / (x * x)),
                Arc::new(move |n| {
                    let gn = g + n as f64;
                    e2 * e2 / (4.0 * hb * hb) * (1.0 / (g * g) - 1.0 / (gn * gn))
                }),
            )
        }
        Conventional::KeplerHypersphere => {
            let g = params.require("g")?;
            let mu = params.require("mu")?;
            if g <= 1.5 || mu <= 0.0 {
                return Err(invalid(format!("Kepler on a hypersphere needs g > 3/2, mu > 0, got ({g}, {mu})")));
            }
            SuperpotentialSpec::new(
                desc,
                Domain::new(0.0, PI),
                f(move |x| hb * mu / g - hb * g / x.tan()),
                f(move |x| hb * g / x.sin().powi(2)),
                Arc::new(move |n| {
                    let gn = g + n as f64;
                    hb * hb * (mu * mu / (g * g) - mu * mu / (gn * gn) + gn * gn - g * g)
                }),
            )
        }
        Conventional::Morse => {
            let h = params.require("h")?;
            let mu = params.require("mu")?;
            if h <= 0.0 || mu <= 0.0 {
                return Err(invalid(format!("Morse needs h, mu > 0, got ({h}, {mu})")));
            }
            SuperpotentialSpec::new(
                desc,
                Domain::real_line(),
                f(move |x| hb * (mu * x.exp() - h)),
                f(move |x| hb * mu * x.exp()),
                Arc::new(move |n| {
                    let n = n as f64;
                    hb * hb * (2.0 * n * h - n * n)
                }),
            )
            .with_n_max(Some(last_below(h)))
        }
        Conventional::InverseCoshSquared => {
            let h = params.require("h")?;
            if h <= 0.5 {
                return Err(invalid(format!("1/cosh² potential needs h > 1/2, got {h}")));
            }
            SuperpotentialSpec::new(
                desc,
                Domain::real_line(),
                f(move |x| hb * h * x.tanh()),
                f(move |x| hb * h / x.cosh().powi(2)),
                Arc::new(move |n| {
                    let n = n as f64;
                    hb * hb * (2.0 * n * h - n * n)
                }),
            )
            .with_n_max(Some(last_below(h)))
        }
        Conventional::RosenMorse => {
            let h = params.require("h")?;
            let mu = params.require("mu")?;
            if !(mu > 0.0 && h > mu.sqrt()) {
                return Err(invalid(format!("Rosen–Morse needs h > sqrt(mu) > 0, got (h, mu) = ({h}, {mu})")));
            }
            SuperpotentialSpec::new(
                desc,
                Domain::real_line(),
                f(move |x| hb * mu / h + hb * h * x.tanh()),
                f(move |x| hb * h / x.cosh().powi(2)),
                Arc::new(move |n| {
                    let hn = h - n as f64;
                    hb * hb * (h * h - hn * hn + mu * mu / (h * h) - mu * mu / (hn * hn))
                }),
            )
            .with_n_max(Some(last_below(h - mu.sqrt())))
        }
        Conventional::HyperbolicSymmetricTop => {
            let h = params.require("h")?;
            let mu = params.require("mu")?;
            if h <= 0.0 || mu <= 0.0 {
                return Err(invalid(format!("hyperbolic symmetric top II needs h, mu > 0, got ({h}, {mu})")));
            }
            SuperpotentialSpec::new(
                desc,
                Domain::real_line(),
                f(move |x| hb * mu / x.cosh() + hb * h * x.tanh()),
                f(move |x| hb * (h - mu * x.sinh()) / x.cosh().powi(2)),
                Arc::new(move |n| {
                    let n = n as f64;
                    hb * hb * (2.0 * n * h - n * n)
                }),
            )
            .with_n_max(Some(last_below(h)))
        }
        Conventional::Eckart => {
            let g = params.require("g")?;
            let mu = params.require("mu")?;
            if !(g > 0.5 && mu > 0.0 && mu.sqrt() > g) {
                return Err(invalid(format!("Eckart needs sqrt(mu) > g > 1/2, got (mu, g) = ({mu}, {g})")));
            }
            SuperpotentialSpec::new(
                desc,
                Domain::new(0.0, f64::INFINITY),
                f(move |x| hb * mu / g - hb * g / x.tanh()),
                f(move |x| hb * g / x.sinh().powi(2)),
                Arc::new(move |n| {
                    let gn = g + n as f64;
                    hb * hb * (g * g - gn * gn + mu * mu / (g * g) - mu * mu / (gn * gn))
                }),
            )
            .with_n_max(Some(last_below(mu.sqrt() - g)))
        }
        Conventional::HyperbolicPoschlTeller => {
            let g = params.require("g")?;
            let h = params.require("h")?;
            if !(h > g && g > 0.5) {
                return Err(invalid(format!("hyperbolic Pöschl–Teller needs h > g > 1/2, got (g, h) = ({g}, {h})")));
            }
            SuperpotentialSpec::new(
                desc,
                Domain::new(0.0, f64::INFINITY),
                f(move |x| -hb * (g / x.tanh() - h * x.tanh())),
                f(move |x| hb * (g / x.sinh().powi(2) + h / x.cosh().powi(2))),
                Arc::new(move |n| {
                    let n = n as f64;
                    4.0 * hb * hb * n * (h - g - n)
                }),
            )
            .with_n_max(Some(last_below((h - g) / 2.0)))
        }
    };
    Ok(spec)
}
