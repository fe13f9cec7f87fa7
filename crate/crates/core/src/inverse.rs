//! The inverse SWKB problem: recover |W| from a spectrum ℰ(n).
//!
//! Differentiating the SWKB condition in ℰ and applying an Abel inversion
//! gives the width of the classically allowed region as a function of W²:
//!
//! `x₊(W²) − x₋(W²) = 2ħ ∫₀^{W²} (dℰ/dn)⁻¹ (W² − ℰ)^{−1/2} dℰ`.
//!
//! A shape ansatz `x₋ = f(x₊)` then splits that width into the two branches.
//! Reconstructed superpotentials take the sign convention W < 0 left of the
//! minimum of W² and W > 0 to its right, which makes the ground state
//! normalizable.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catalog::{Domain, SuperpotentialSpec};
use crate::error::{Error, Result};
use crate::numeric::pchip::Pchip;
use crate::numeric::quad::{integrate, integrate_pieces, QuadConfig};
use crate::numeric::roots::brent;

/// Functional form of ℰ(n).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectrumKind {
    /// ℰ = c·n.
    Linear { c: f64 },
    /// ℰ = c1·n + c2·n².
    Quadratic { c1: f64, c2: f64 },
    /// Monotone cubic interpolation of ℰ_0, ℰ_1, … at integer n.
    Tabulated,
}

/// A spectrum ℰ(n) continued to real n ≥ 0, together with ħ.
#[derive(Debug, Clone)]
pub struct SpectrumSpec {
    kind: SpectrumKind,
    hbar: f64,
    table: Option<Pchip>,
}

impl SpectrumSpec {
    pub fn linear(c: f64, hbar: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(Error::InvalidParameter(format!("linear spectrum needs c > 0, got {c}")));
        }
        Self::checked(SpectrumKind::Linear { c }, hbar, None)
    }

    /// ℰ = c1·n + c2·n²; c2 may be negative (finitely many levels) as long
    /// as dℰ/dn > 0 at n = 0.
    pub fn quadratic(c1: f64, c2: f64, hbar: f64) -> Result<Self> {
        if !(c1 > 0.0 || (c1 == 0.0 && c2 > 0.0)) {
            return Err(Error::InvalidParameter(format!("quadratic spectrum needs c1 > 0 (or c1 = 0 < c2), got ({c1}, {c2})")));
        }
        Self::checked(SpectrumKind::Quadratic { c1, c2 }, hbar, None)
    }

    /// Levels ℰ_0 = 0 < ℰ_1 < … at n = 0, 1, 2, …
    pub fn tabulated(levels: &[f64], hbar: f64) -> Result<Self> {
        if levels.len() < 2 {
            return Err(Error::InvalidParameter("a tabulated spectrum needs at least two levels".into()));
        }
        if levels[0] != 0.0 {
            return Err(Error::InvalidParameter(format!("the ground level must be 0, got {}", levels[0])));
        }
        if levels.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter("tabulated levels must increase strictly".into()));
        }
        let n: Vec<f64> = (0..levels.len()).map(|k| k as f64).collect();
        Self::checked(SpectrumKind::Tabulated, hbar, Some(Pchip::new(&n, levels)?))
    }

    fn checked(kind: SpectrumKind, hbar: f64, table: Option<Pchip>) -> Result<Self> {
        if !(hbar > 0.0) {
            return Err(Error::InvalidParameter(format!("hbar must be positive, got {hbar}")));
        }
        Ok(Self { kind, hbar, table })
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Largest n for which ℰ(n) is defined and increasing.
    pub fn n_limit(&self) -> f64 {
        match self.kind {
            SpectrumKind::Quadratic { c1, c2 } if c2 < 0.0 => -c1 / (2.0 * c2),
            SpectrumKind::Tabulated => self.table.as_ref().unwrap().domain().1,
            _ => f64::INFINITY,
        }
    }

    pub fn energy(&self, n: f64) -> Result<f64> {
        self.energy_and_slope(n).map(|v| v.0)
    }

    /// dℰ/dn.
    pub fn slope(&self, n: f64) -> Result<f64> {
        self.energy_and_slope(n).map(|v| v.1)
    }

    fn energy_and_slope(&self, n: f64) -> Result<(f64, f64)> {
        if !(n >= 0.0 && n <= self.n_limit()) {
            return Err(Error::InvalidParameter(format!("n = {n} lies outside the spectrum's range")));
        }
        Ok(match self.kind {
            SpectrumKind::Linear { c } => (c * n, c),
            SpectrumKind::Quadratic { c1, c2 } => (c1 * n + c2 * n * n, c1 + 2.0 * c2 * n),
            SpectrumKind::Tabulated => self.table.as_ref().unwrap().eval_with_derivative(n).unwrap(),
        })
    }

    /// The continuous level index with ℰ(n) = e.
    pub fn level_of(&self, e: f64) -> Result<f64> {
        if e < 0.0 {
            return Err(Error::InvalidParameter(format!("negative energy {e}")));
        }
        match self.kind {
            SpectrumKind::Linear { c } => Ok(e / c),
            SpectrumKind::Quadratic { c1, c2 } if c2 == 0.0 => Ok(e / c1),
            SpectrumKind::Quadratic { c1, c2 } => {
                let disc = c1 * c1 + 4.0 * c2 * e;
                if disc < 0.0 {
                    return Err(Error::InvalidParameter(format!("energy {e} exceeds the top of the spectrum")));
                }
                // Stable form of (−c1 + √disc)/(2 c2).
                Ok(2.0 * e / (c1 + disc.sqrt()))
            }
            SpectrumKind::Tabulated => {
                let top = self.n_limit();
                let e_top = self.energy(top)?;
                if e > e_top {
                    return Err(Error::InvalidParameter(format!("energy {e} exceeds the last tabulated level {e_top}")));
                }
                brent(|n| self.energy(n).unwrap() - e, 0.0, top, 1e-15 * top)
            }
        }
    }
}

/// `x₋ = f(x₊)` relating the two turning points at equal W².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShapeAnsatz {
    /// x₋ = −x₊.
    Mirror,
    /// x₊ = −γ x₋.
    GammaMirror { gamma: f64 },
    /// x₋ x₊ = x₀².
    Product { x0: f64 },
    /// tan x₋ · tan x₊ = tan² x₀, on (0, π/2).
    TanProduct { x0: f64 },
}

impl ShapeAnsatz {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ShapeAnsatz::Mirror => Ok(()),
            ShapeAnsatz::GammaMirror { gamma } if gamma > 0.0 => Ok(()),
            ShapeAnsatz::Product { x0 } if x0 > 0.0 => Ok(()),
            ShapeAnsatz::TanProduct { x0 } if x0 > 0.0 && x0 < FRAC_PI_2 => Ok(()),
            a => Err(Error::InvalidParameter(format!("invalid ansatz parameters {a:?}"))),
        }
    }

    /// Position of the minimum of W², where both branches meet.
    pub fn centre(&self) -> f64 {
        match *self {
            ShapeAnsatz::Mirror | ShapeAnsatz::GammaMirror { .. } => 0.0,
            ShapeAnsatz::Product { x0 } | ShapeAnsatz::TanProduct { x0 } => x0,
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            ShapeAnsatz::Mirror | ShapeAnsatz::GammaMirror { .. } => Domain::real_line(),
            ShapeAnsatz::Product { .. } => Domain::new(0.0, f64::INFINITY),
            ShapeAnsatz::TanProduct { .. } => Domain::new(0.0, FRAC_PI_2),
        }
    }

    /// x₋ as a function of x₊.
    pub fn minus_of(&self, xp: f64) -> f64 {
        match *self {
            ShapeAnsatz::Mirror => -xp,
            ShapeAnsatz::GammaMirror { gamma } => -xp / gamma,
            ShapeAnsatz::Product { x0 } => x0 * x0 / xp,
            ShapeAnsatz::TanProduct { x0 } => (x0.tan().powi(2) / xp.tan()).atan(),
        }
    }

    /// x₊ as a function of x₋.
    pub fn plus_of(&self, xm: f64) -> f64 {
        match *self {
            ShapeAnsatz::GammaMirror { gamma } => -gamma * xm,
            // The other relations are involutions.
            _ => self.minus_of(xm),
        }
    }

    /// Solves x₊ − f(x₊) = gap for x₊.
    pub fn solve_plus(&self, gap: f64) -> Result<f64> {
        if gap <= 0.0 {
            return Ok(self.centre());
        }
        match *self {
            ShapeAnsatz::Mirror => Ok(0.5 * gap),
            ShapeAnsatz::GammaMirror { gamma } => Ok(gamma * gap / (1.0 + gamma)),
            ShapeAnsatz::Product { x0 } => Ok(0.5 * (gap + (gap * gap + 4.0 * x0 * x0).sqrt())),
            ShapeAnsatz::TanProduct { x0 } => {
                if gap >= FRAC_PI_2 {
                    return Err(Error::InvalidParameter(format!("width {gap} does not fit into (0, π/2)")));
                }
                brent(|xp| xp - self.minus_of(xp) - gap, x0, FRAC_PI_2, 1e-15)
            }
        }
    }
}

/// Right-hand side of the inversion formula: the width x₊ − x₋ at the given W².
pub fn abel_rhs(spec: &SpectrumSpec, wsq: f64) -> Result<f64> {
    if wsq < 0.0 {
        return Err(Error::InvalidParameter(format!("W² must be non-negative, got {wsq}")));
    }
    if wsq == 0.0 {
        return Ok(0.0);
    }
    let hb = spec.hbar;
    let w = wsq.sqrt();
    match spec.kind {
        SpectrumKind::Linear { c } => Ok(4.0 * hb * w / c),
        SpectrumKind::Quadratic { c1, c2 } if c2 == 0.0 => Ok(4.0 * hb * w / c1),
        SpectrumKind::Quadratic { c1, c2 } if c2 > 0.0 => {
            let r = c2.sqrt();
            Ok(2.0 * hb / r * (2.0 * r * w).atan2(c1))
        }
        SpectrumKind::Quadratic { c1, c2 } => {
            let r = (-c2).sqrt();
            let z = 2.0 * r * w / c1;
            if z >= 1.0 {
                return Err(Error::InvalidParameter(format!("W² = {wsq} is at or above the top of the spectrum")));
            }
            Ok(2.0 * hb / r * z.atanh())
        }
        SpectrumKind::Tabulated => abel_rhs_numeric(spec, wsq),
    }
}

/// 2ħ ∫₀^{n*} dn /√(W² − ℰ(n)) with n = n* − u², which removes the
/// inverse-square-root endpoint singularity at n* = n(W²).
fn abel_rhs_numeric(spec: &SpectrumSpec, wsq: f64) -> Result<f64> {
    let n_star = spec.level_of(wsq)?;
    let slope_star = spec.slope(n_star)?;
    if !(slope_star > 0.0) {
        return Err(Error::InvalidParameter(format!("dℰ/dn vanishes at W² = {wsq}; the integral diverges")));
    }
    let limit = 2.0 / slope_star.sqrt();
    let f = |u: f64| {
        // Close to n* the difference W² − ℰ loses all digits; the integrand
        // is within O(u²) of its limit there.
        if u * u <= 1e-9 * n_star.max(1.0) {
            return limit;
        }
        let n = (n_star - u * u).max(0.0);
        let gap = wsq - spec.energy(n).unwrap_or(f64::NAN);
        if gap > 0.0 {
            2.0 * u / gap.sqrt()
        } else {
            limit
        }
    };
    // Break at integer n, where a tabulated spectrum's curvature jumps.
    let top = n_star.sqrt();
    let mut pts = vec![0.0];
    if spec.kind == SpectrumKind::Tabulated {
        for k in (0..n_star.ceil() as usize).rev() {
            let u = (n_star - k as f64).sqrt();
            if u > pts.last().unwrap() + 1e-6 * top && u < top * (1.0 - 1e-6) {
                pts.push(u);
            }
        }
    }
    pts.push(top);
    let scale = limit * top;
    let v = integrate_pieces(f, &pts, QuadConfig::new(1e-13 * scale.max(1e-300), 1e-12))?;
    Ok(2.0 * spec.hbar * v.value)
}

/// Inverse of `abel_rhs` in W²: the W² whose allowed region has the given width.
pub fn wsq_for_width(spec: &SpectrumSpec, width: f64) -> Result<f64> {
    if width <= 0.0 {
        return Ok(0.0);
    }
    let hb = spec.hbar;
    match spec.kind {
        SpectrumKind::Linear { c } => Ok((c * width / (4.0 * hb)).powi(2)),
        SpectrumKind::Quadratic { c1, c2 } if c2 == 0.0 => Ok((c1 * width / (4.0 * hb)).powi(2)),
        SpectrumKind::Quadratic { c1, c2 } if c2 > 0.0 => {
            let r = c2.sqrt();
            let t = width * r / (2.0 * hb);
            if t >= FRAC_PI_2 {
                return Err(Error::InvalidParameter(format!("width {width} exceeds the largest allowed region")));
            }
            Ok((c1 * t.tan() / (2.0 * r)).powi(2))
        }
        SpectrumKind::Quadratic { c1, c2 } => {
            let r = (-c2).sqrt();
            Ok((c1 * (width * r / (2.0 * hb)).tanh() / (2.0 * r)).powi(2))
        }
        SpectrumKind::Tabulated => {
            let cap = spec.energy(spec.n_limit()).map_or(f64::INFINITY, |e| e * (1.0 - 1e-9));
            let mut hi: f64 = 1.0f64.min(cap);
            loop {
                if abel_rhs(spec, hi)? >= width {
                    break;
                }
                if hi >= cap || !hi.is_finite() {
                    return Err(Error::InvalidParameter(format!("width {width} exceeds the range covered by the spectrum")));
                }
                hi = (2.0 * hi).min(cap);
            }
            brent(|s| abel_rhs(spec, s).map_or(f64::NAN, |v| v - width), 0.0, hi, 1e-15 * hi)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Left,
    Right,
}

/// One sample of a reconstructed branch: position and |W| (or U for the
/// classical problem).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchPoint {
    pub x: f64,
    pub value: f64,
    pub branch: Branch,
}

/// A reconstructed superpotential, sampled and evaluable.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub spectrum: SpectrumSpec,
    pub ansatz: ShapeAnsatz,
    pub points: Vec<BranchPoint>,
}

/// Samples both branches at the given W² values.
pub fn reconstruct(spec: &SpectrumSpec, ansatz: ShapeAnsatz, wsq_grid: &[f64]) -> Result<Reconstruction> {
    ansatz.validate()?;
    if wsq_grid.iter().any(|&s| !(s > 0.0)) || wsq_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter("the W² grid must be positive and increasing".into()));
    }
    let mut left = Vec::with_capacity(wsq_grid.len());
    let mut right = Vec::with_capacity(wsq_grid.len());
    for &s in wsq_grid {
        let gap = abel_rhs(spec, s)?;
        let xp = ansatz.solve_plus(gap)?;
        let xm = ansatz.minus_of(xp);
        let w = s.sqrt();
        left.push(BranchPoint { x: xm, value: w, branch: Branch::Left });
        right.push(BranchPoint { x: xp, value: w, branch: Branch::Right });
    }
    left.reverse();
    left.extend(right);
    Ok(Reconstruction { spectrum: spec.clone(), ansatz, points: left })
}

impl Reconstruction {
    /// Signed W at any x in the ansatz domain.
    pub fn w(&self, x: f64) -> Result<f64> {
        let c = self.ansatz.centre();
        if x == c {
            return Ok(0.0);
        }
        let xp = if x > c { x } else { self.ansatz.plus_of(x) };
        let width = xp - self.ansatz.minus_of(xp);
        let w = wsq_for_width(&self.spectrum, width)?.sqrt();
        Ok(if x > c { w } else { -w })
    }

    /// Signed W at every sample.
    pub fn signed_samples(&self) -> Vec<(f64, f64)> {
        self.points
            .iter()
            .map(|p| (p.x, if p.branch == Branch::Left { -p.value } else { p.value }))
            .collect()
    }

    /// A superpotential spec for the direct problem; W′ by central differences.
    /// Its declared spectrum is the input ℰ(n) at integer n.
    pub fn to_spec(&self, label: &str) -> SuperpotentialSpec {
        let me = Arc::new(self.clone());
        let (m1, m2, m3) = (Arc::clone(&me), Arc::clone(&me), Arc::clone(&me));
        let w = move |x: f64| m1.w(x).unwrap_or(f64::NAN);
        let wp = move |x: f64| {
            let h = 1e-6 * x.abs().max(1.0);
            (m2.w(x + h).unwrap_or(f64::NAN) - m2.w(x - h).unwrap_or(f64::NAN)) / (2.0 * h)
        };
        let spectrum = move |n: usize| m3.spectrum.energy(n as f64).unwrap_or(f64::NAN);
        let mut spec = SuperpotentialSpec::custom(label, self.ansatz.domain(), self.spectrum.hbar, Arc::new(w), Arc::new(wp), Arc::new(spectrum));
        if let SpectrumKind::Quadratic { c1, c2 } = self.spectrum.kind {
            if c2 < 0.0 {
                spec = spec.with_bound_levels((-c1 / (2.0 * c2)).ceil() as usize - 1);
            }
        }
        if self.spectrum.kind == SpectrumKind::Tabulated {
            spec = spec.with_bound_levels(self.spectrum.n_limit() as usize);
        }
        spec
    }

    /// Compares the samples with the closed form implied by the spectrum and
    /// ansatz, where one is known.
    pub fn closed_form(&self) -> Option<ClosedFormFit> {
        let hb = self.spectrum.hbar;
        let (label, f): (String, Box<dyn Fn(f64) -> f64>) = match (self.spectrum.kind, self.ansatz) {
            (SpectrumKind::Linear { c }, ShapeAnsatz::Mirror) => {
                let k = c / (2.0 * hb);
                (format!("W = {k} x"), Box::new(move |x| k * x))
            }
            (SpectrumKind::Linear { c }, ShapeAnsatz::GammaMirror { gamma }) => {
                let k = c / (2.0 * hb);
                let (l, r) = (k * (1.0 + gamma) / 2.0, k * (1.0 + gamma) / (2.0 * gamma));
                (format!("W = {l} x (x < 0), {r} x (x > 0)"), Box::new(move |x| if x < 0.0 { l * x } else { r * x }))
            }
            (SpectrumKind::Linear { c }, ShapeAnsatz::Product { x0 }) => {
                let k = c / (4.0 * hb);
                (format!("W = {k} (x - {}/x)", x0 * x0), Box::new(move |x| k * (x - x0 * x0 / x)))
            }
            (SpectrumKind::Quadratic { c1, c2 }, ShapeAnsatz::TanProduct { x0 }) if (c2 - 4.0 * hb * hb).abs() <= 1e-12 * c2 => {
                let a = c1 / (4.0 * hb);
                let (cc, ss) = (x0.cos().powi(2), x0.sin().powi(2));
                (
                    format!("W = {} tan x - {} cot x", a * cc, a * ss),
                    Box::new(move |x: f64| a * (cc * x.tan() - ss / x.tan())),
                )
            }
            _ => return None,
        };
        let max_residual = self.signed_samples().iter().map(|&(x, w)| (w - f(x)).abs()).fold(0.0, f64::max);
        Some(ClosedFormFit { form: label, max_residual })
    }
}

/// A recognised closed form and the largest deviation of the samples from it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedFormFit {
    pub form: String,
    pub max_residual: f64,
}

/// Least-squares slopes of W = k x through the origin on the left and right
/// branches.
pub fn fit_slopes(rec: &Reconstruction) -> (f64, f64) {
    let fit = |b: Branch| {
        let (mut sxy, mut sxx) = (0.0, 0.0);
        for p in rec.points.iter().filter(|p| p.branch == b) {
            let w = if b == Branch::Left { -p.value } else { p.value };
            sxy += p.x * w;
            sxx += p.x * p.x;
        }
        sxy / sxx
    };
    (fit(Branch::Left), fit(Branch::Right))
}

/// The classical counterpart: the potential U(x) of a particle of mass 1/2
/// whose period of oscillation at energy E is `period(E)`. The width of the
/// allowed region is `(1/π) ∫₀^U T(E) (U − E)^{−1/2} dE`.
pub fn classical_period_inverse(period: &dyn Fn(f64) -> f64, ansatz: ShapeAnsatz, u_grid: &[f64]) -> Result<Vec<BranchPoint>> {
    ansatz.validate()?;
    let mut left = Vec::new();
    let mut right = Vec::new();
    for &u in u_grid {
        if !(u > 0.0) {
            return Err(Error::InvalidParameter(format!("potential values must be positive, got {u}")));
        }
        let r = u.sqrt();
        let g = |phi: f64| {
            let s = phi.sin();
            period(u * s * s) * 2.0 * r * s
        };
        let width = integrate(g, 0.0, FRAC_PI_2, QuadConfig::new(1e-14, 1e-13))?.value / PI;
        let xp = ansatz.solve_plus(width)?;
        left.push(BranchPoint { x: ansatz.minus_of(xp), value: u, branch: Branch::Left });
        right.push(BranchPoint { x: xp, value: u, branch: Branch::Right });
    }
    left.reverse();
    left.extend(right);
    Ok(left)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oscillator_width_is_two_w_over_omega() {
        let s = SpectrumSpec::linear(2.0, 1.0).unwrap();
        assert!((abel_rhs(&s, 1.0).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(abel_rhs(&s, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn quadratic_closed_form_matches_quadrature() {
        let (g, h) = (2.0, 3.0);
        let s = SpectrumSpec::quadratic(4.0 * (g + h), 4.0, 1.0).unwrap();
        for wsq in [0.3, 4.0, 50.0] {
            let closed = abel_rhs(&s, wsq).unwrap();
            assert!((closed - (wsq.sqrt() / (g + h)).atan()).abs() < 1e-15);
            let numeric = abel_rhs_numeric(&s, wsq).unwrap();
            assert!((closed - numeric).abs() < 1e-12, "{closed} vs {numeric}");
        }
        let bounded = SpectrumSpec::quadratic(20.0, -1.0, 1.0).unwrap();
        for wsq in [0.3, 9.0, 64.0, 99.0] {
            let closed = abel_rhs(&bounded, wsq).unwrap();
            let numeric = abel_rhs_numeric(&bounded, wsq).unwrap();
            assert!((closed - numeric).abs() < 1e-10 * closed, "{wsq}: {closed} vs {numeric}");
        }
    }

    #[test]
    fn width_inversion_round_trips() {
        let specs = [
            SpectrumSpec::linear(2.0, 1.0).unwrap(),
            SpectrumSpec::quadratic(20.0, 4.0, 1.0).unwrap(),
            SpectrumSpec::quadratic(10.0, -1.0, 1.0).unwrap(),
            SpectrumSpec::tabulated(&[0.0, 2.0, 4.5, 7.0, 10.0, 13.5], 1.0).unwrap(),
        ];
        for s in &specs {
            for wsq in [0.5, 3.0, 9.0] {
                let width = abel_rhs(s, wsq).unwrap();
                let back = wsq_for_width(s, width).unwrap();
                assert!((back - wsq).abs() < 1e-10 * wsq, "{:?}: {wsq} -> {back}", s.kind());
            }
        }
    }

    #[test]
    fn ansatz_relations_invert() {
        for a in [
            ShapeAnsatz::Mirror,
            ShapeAnsatz::GammaMirror { gamma: 0.4 },
            ShapeAnsatz::Product { x0: 1.5 },
            ShapeAnsatz::TanProduct { x0: 0.6 },
        ] {
            let xp = a.solve_plus(0.7).unwrap();
            assert!((xp - a.minus_of(xp) - 0.7).abs() < 1e-14);
            assert!((a.plus_of(a.minus_of(xp)) - xp).abs() < 1e-14);
        }
    }
}
