//! Registry of solvable superpotentials.
//!
//! Every system is exposed as a [`SuperpotentialSpec`]: an open domain, the
//! superpotential `W` and its derivative, the exact spectrum `ℰ_n` (with
//! `ℰ_0 = 0`), an optional mass-deformation function `η` and, for systems
//! with finitely many bound states, the index of the last one.
//!
//! Specs are built from a serializable [`Descriptor`], so a spec can be
//! written out as JSON and rebuilt bit-for-bit.

mod ces;
mod conventional;
mod derived;
mod pdem;
pub(crate) mod quasi;

pub use ces::{ces_beta_bound, make_ces};
pub use conventional::{make_conventional, Conventional};
pub use derived::{make_krein_adler, make_multi_indexed, DeletionSet, KaBase, MiBase};
pub use pdem::{make_pdem, PdemKind};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Shared real-valued evaluator.
pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Physical and shape parameters. Unused entries stay `None`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub hbar: f64,
    pub omega: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e2: Option<f64>,
}

impl Default for Params {
    fn default() -> Self {
        Self { hbar: 1.0, omega: 1.0, g: None, h: None, mu: None, e2: None }
    }
}

impl Params {
    pub fn with_g(mut self, g: f64) -> Self {
        self.g = Some(g);
        self
    }

    pub fn with_h(mut self, h: f64) -> Self {
        self.h = Some(h);
        self
    }

    pub fn with_mu(mut self, mu: f64) -> Self {
        self.mu = Some(mu);
        self
    }

    pub fn with_e2(mut self, e2: f64) -> Self {
        self.e2 = Some(e2);
        self
    }

    pub fn with_units(mut self, hbar: f64, omega: f64) -> Self {
        self.hbar = hbar;
        self.omega = omega;
        self
    }

    pub(crate) fn require(&self, name: &str) -> Result<f64> {
        let v = match name {
            "g" => self.g,
            "h" => self.h,
            "mu" => self.mu,
            "e2" => self.e2,
            _ => None,
        };
        v.filter(|x| x.is_finite())
            .ok_or_else(|| Error::InvalidParameter(format!("parameter `{name}` is required")))
    }

    pub(crate) fn check_units(&self) -> Result<()> {
        if !(self.hbar > 0.0 && self.hbar.is_finite() && self.omega > 0.0 && self.omega.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "hbar and omega must be positive (got {}, {})",
                self.hbar, self.omega
            )));
        }
        Ok(())
    }
}

/// Everything needed to rebuild a spec.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Descriptor {
    Conventional { family: Conventional, params: Params },
    KreinAdler { base: KaBase, d: usize, params: Params },
    MultiIndexed { base: MiBase, d1: Vec<usize>, d2: Vec<usize>, params: Params },
    Ces { b: f64, beta: f64, params: Params },
    Pdem { pdem: PdemKind, params: Params },
    /// A superpotential supplied as code (for example a reconstruction);
    /// it can be described but not rebuilt from the descriptor alone.
    Custom { label: String, params: Params },
}

impl Descriptor {
    pub fn params(&self) -> &Params {
        match self {
            Descriptor::Conventional { params, .. }
            | Descriptor::KreinAdler { params, .. }
            | Descriptor::MultiIndexed { params, .. }
            | Descriptor::Ces { params, .. }
            | Descriptor::Pdem { params, .. }
            | Descriptor::Custom { params, .. } => params,
        }
    }

    /// Builds the spec this descriptor names.
    pub fn build(&self) -> Result<SuperpotentialSpec> {
        match self {
            Descriptor::Conventional { family, params } => make_conventional(*family, params),
            Descriptor::KreinAdler { base, d, params } => make_krein_adler(*base, *d, params),
            Descriptor::MultiIndexed { base, d1, d2, params } => {
                make_multi_indexed(*base, &DeletionSet::new(d1.clone()), &DeletionSet::new(d2.clone()), params)
            }
            Descriptor::Ces { b, beta, params } => make_ces(*b, *beta, params),
            Descriptor::Pdem { pdem, params } => make_pdem(*pdem, params),
            Descriptor::Custom { label, .. } => {
                Err(Error::InvalidParameter(format!("custom spec `{label}` has no closed-form constructor")))
            }
        }
    }
}

/// Open interval `(lo, hi)`; infinite ends are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
}

impl Domain {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn real_line() -> Self {
        Self::new(f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }
}

/// A solvable system ready for SWKB analysis.
#[derive(Clone)]
pub struct SuperpotentialSpec {
    descriptor: Descriptor,
    domain: Domain,
    w: RealFn,
    w_prime: RealFn,
    spectrum: Arc<dyn Fn(usize) -> f64 + Send + Sync>,
    eta: Option<RealFn>,
    n_max: Option<usize>,
}

impl fmt::Debug for SuperpotentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SuperpotentialSpec")
            .field("descriptor", &self.descriptor)
            .field("domain", &self.domain)
            .field("n_max", &self.n_max)
            .field("has_eta", &self.eta.is_some())
            .finish()
    }
}

impl SuperpotentialSpec {
    pub(crate) fn new(
        descriptor: Descriptor,
        domain: Domain,
        w: RealFn,
        w_prime: RealFn,
        spectrum: Arc<dyn Fn(usize) -> f64 + Send + Sync>,
    ) -> Self {
        Self { descriptor, domain, w, w_prime, spectrum, eta: None, n_max: None }
    }

    /// Attaches a mass-deformation function η(x) > 0.
    pub fn with_eta(mut self, eta: RealFn) -> Self {
        self.eta = Some(eta);
        self
    }

    /// Declares levels 0..=n_max as the only bound states.
    pub fn with_bound_levels(self, n_max: usize) -> Self {
        self.with_n_max(Some(n_max))
    }

    pub(crate) fn with_n_max(mut self, n_max: Option<usize>) -> Self {
        self.n_max = n_max;
        self
    }

    pub fn descriptor(&self) -> &Descriptor {
        &self.descriptor
    }

    pub fn params(&self) -> &Params {
        self.descriptor.params()
    }

    pub fn hbar(&self) -> f64 {
        self.params().hbar
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn w(&self, x: f64) -> f64 {
        (self.w)(x)
    }

    pub fn w_prime(&self, x: f64) -> f64 {
        (self.w_prime)(x)
    }

    /// V(x) = W² − ħW′, the potential with its ground energy shifted to zero.
    pub fn potential(&self, x: f64) -> f64 {
        let w = self.w(x);
        w * w - self.hbar() * self.w_prime(x)
    }

    /// Index of the last bound state, if there are finitely many.
    pub fn n_max(&self) -> Option<usize> {
        self.n_max
    }

    /// Exact energy ℰ_n; rejects levels past `n_max`.
    pub fn energy(&self, n: usize) -> Result<f64> {
        if let Some(m) = self.n_max {
            if n > m {
                return Err(Error::LevelOutOfRange { n, n_max: m });
            }
        }
        Ok((self.spectrum)(n))
    }

    pub fn has_eta(&self) -> bool {
        self.eta.is_some()
    }

    /// Mass-deformation function η(x), if present.
    pub fn eta(&self, x: f64) -> Option<f64> {
        self.eta.as_ref().map(|e| e(x))
    }

    /// The same spec with η removed, for comparing the plain and extended integrals.
    pub fn without_eta(&self) -> Self {
        let mut s = self.clone();
        s.eta = None;
        s
    }

    /// A spec with a user-supplied W on the given domain. The spectrum is
    /// whatever the caller asserts; it is used by the inverse module to feed
    /// reconstructed superpotentials back into the direct problem.
    pub fn custom(
        label: &str,
        domain: Domain,
        hbar: f64,
        w: RealFn,
        w_prime: RealFn,
        spectrum: Arc<dyn Fn(usize) -> f64 + Send + Sync>,
    ) -> Self {
        let descriptor = Descriptor::Custom { label: label.to_string(), params: Params { hbar, ..Params::default() } };
        Self::new(descriptor, domain, w, w_prime, spectrum)
    }
}

/// One row of the family listing.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyInfo {
    pub name: &'static str,
    pub kind: &'static str,
    pub parameters: &'static str,
    pub constraints: &'static str,
    pub spectrum: &'static str,
}

/// Every constructible family with its parameter constraints.
pub fn family_table() -> Vec<FamilyInfo> {
    let mut rows: Vec<FamilyInfo> = Conventional::ALL
        .iter()
        .map(|f| FamilyInfo {
            name: f.name(),
            kind: "conventional",
            parameters: f.parameter_names(),
            constraints: f.constraints(),
            spectrum: f.spectrum_text(),
        })
        .collect();
    rows.extend([
        FamilyInfo {
            name: "ka-h",
            kind: "krein-adler",
            parameters: "d",
            constraints: "d >= 1, deletes {d, d+1}",
            spectrum: "2 n' hbar omega, n' = n (n < d), n + 2 (n >= d)",
        },
        FamilyInfo {
            name: "ka-l",
            kind: "krein-adler",
            parameters: "d, g",
            constraints: "d >= 1, g > 1/2",
            spectrum: "4 n' hbar omega",
        },
        FamilyInfo {
            name: "ka-j",
            kind: "krein-adler",
            parameters: "d, g, h",
            constraints: "d >= 1, g, h > 1/2",
            spectrum: "4 hbar^2 n'(n' + g + h)",
        },
        FamilyInfo {
            name: "mi-l",
            kind: "multi-indexed",
            parameters: "d1, d2, g",
            constraints: "g > max(|d2| + 3/2, max d2 + 1/2)",
            spectrum: "4 n hbar omega",
        },
        FamilyInfo {
            name: "mi-j",
            kind: "multi-indexed",
            parameters: "d1, d2, g, h",
            constraints: "g > max(|d2| + 2, max d2 + 1/2), h > max(|d1| + 2, max d1 + 1/2)",
            spectrum: "4 hbar^2 n(n + g + h)",
        },
        FamilyInfo {
            name: "ces",
            kind: "conditionally-exact",
            parameters: "b, beta",
            constraints: "b > -2, |beta| < 2 Gamma(b/4 + 1)/Gamma(b/4 + 1/2)",
            spectrum: "0, (2n + b) hbar omega for n >= 1",
        },
        FamilyInfo {
            name: "deformed-ho",
            kind: "position-dependent-mass",
            parameters: "alpha",
            constraints: "alpha >= 0",
            spectrum: "2 n hbar omega + hbar^2 alpha n^2",
        },
        FamilyInfo {
            name: "semiconfined",
            kind: "position-dependent-mass",
            parameters: "a",
            constraints: "a > 0",
            spectrum: "2 n hbar omega",
        },
    ]);
    rows
}
