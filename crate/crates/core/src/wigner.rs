//! Wigner quasiprobability distributions of real bound states on the line.
//!
//! For real ψ the integrand ψ(x − u)ψ(x + u) is even in u, so
//!
//!   W(p, x) = (2/π) ∫₀^∞ ψ(x − u) ψ(x + u) cos(2pu) du,
//!
//! which is real and even in p by construction. The integral is split at
//! u = |x|, where one factor crosses the gluing point of a piecewise state.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::quad::{integrate, integrate_pieces, QuadConfig};
use crate::piecewise::Eigenfunction;

/// A real, L²-normalized wavefunction with bounded support.
pub trait RealState {
    fn value(&self, x: f64) -> f64;
    /// Interval outside which the state is negligible.
    fn support(&self) -> (f64, f64);
    /// Points where the state is not smooth.
    fn kinks(&self) -> Vec<f64> {
        Vec::new()
    }
}

impl RealState for Eigenfunction {
    fn value(&self, x: f64) -> f64 {
        Eigenfunction::value(self, x)
    }

    fn support(&self) -> (f64, f64) {
        self.resolved_range()
    }

    fn kinks(&self) -> Vec<f64> {
        vec![0.0]
    }
}

/// Any closure with a declared support.
pub struct FnState<F: Fn(f64) -> f64> {
    pub f: F,
    pub lo: f64,
    pub hi: f64,
}

impl<F: Fn(f64) -> f64> RealState for FnState<F> {
    fn value(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    fn support(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }
}

const MAX_PANELS: usize = 100_000;

fn quad_cfg() -> QuadConfig {
    QuadConfig { abs_tol: 1e-12, rel_tol: 1e-10, max_intervals: 20_000 }
}

/// W(p, x) for a normalized real state.
pub fn wigner_point(state: &dyn RealState, p: f64, x: f64) -> Result<f64> {
    if !(p.is_finite() && x.is_finite()) {
        return Err(Error::InvalidParameter(format!("phase-space point ({p}, {x}) is not finite")));
    }
    let (lo, hi) = state.support();
    let u_max = (x - lo).min(hi - x);
    if u_max <= 0.0 {
        return Ok(0.0);
    }
    let mut pts = vec![0.0];
    for k in state.kinks() {
        let u = (x - k).abs();
        if u > 0.0 && u < u_max {
            pts.push(u);
        }
    }
    pts.push(u_max);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    // Oscillations need panels shorter than a period.
    if p.abs() > 0.0 {
        let period = std::f64::consts::PI / p.abs();
        if u_max / period > MAX_PANELS as f64 {
            return Err(Error::NonConvergence(format!("|p| = {} needs more than {MAX_PANELS} quadrature panels", p.abs())));
        }
        let mut fine = vec![pts[0]];
        for w in pts.windows(2) {
            let n = ((w[1] - w[0]) / period).ceil().max(1.0) as usize;
            fine.extend((1..=n).map(|i| w[0] + (w[1] - w[0]) * i as f64 / n as f64));
        }
        pts = fine;
    }
    let r = integrate_pieces(|u| state.value(x - u) * state.value(x + u) * (2.0 * p * u).cos(), &pts, quad_cfg())
        .map_err(|e| Error::NonConvergence(format!("Wigner integral at (p, x) = ({p}, {x}): {e}")))?;
    Ok(2.0 / std::f64::consts::PI * r.value)
}

/// A rectangular phase-space grid with symmetric momentum range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub p_max: f64,
    pub np: usize,
}

impl PhaseGrid {
    pub fn new(x_min: f64, x_max: f64, nx: usize, p_max: f64, np: usize) -> Result<Self> {
        if !(x_min < x_max && p_max > 0.0 && nx >= 2 && np >= 2) {
            return Err(Error::InvalidParameter(format!("bad phase grid x∈[{x_min}, {x_max}]×{nx}, |p|≤{p_max}×{np}")));
        }
        Ok(Self { x_min, x_max, nx, p_max, np })
    }

    pub fn xs(&self) -> Vec<f64> {
        linspace(self.x_min, self.x_max, self.nx)
    }

    pub fn ps(&self) -> Vec<f64> {
        linspace(-self.p_max, self.p_max, self.np)
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 }).collect()
}

fn trapezoid(y: &[f64], h: f64) -> f64 {
    let n = y.len();
    h * (y.iter().sum::<f64>() - 0.5 * (y[0] + y[n - 1]))
}

#[derive(Debug, Clone, Serialize)]
pub struct WignerMap {
    pub grid: PhaseGrid,
    /// values[i][j] = W(p_j, x_i).
    pub values: Vec<Vec<f64>>,
    /// ∬ W dp dx by the trapezoidal rule on the grid.
    pub normalization: f64,
    /// max_i |∫ W(p, x_i) dp − ψ(x_i)²| on the grid.
    pub marginal_error: f64,
    /// The smallest sampled value and where it occurs, (W, p, x).
    pub minimum: (f64, f64, f64),
}

pub fn wigner_grid(state: &dyn RealState, grid: PhaseGrid) -> Result<WignerMap> {
    let xs = grid.xs();
    let ps = grid.ps();
    let hp = 2.0 * grid.p_max / (grid.np - 1) as f64;
    let hx = (grid.x_max - grid.x_min) / (grid.nx - 1) as f64;
    let mut values = Vec::with_capacity(xs.len());
    let mut minimum = (f64::INFINITY, 0.0, 0.0);
    let mut marginal_error: f64 = 0.0;
    let mut rows = Vec::with_capacity(xs.len());
    for &x in &xs {
        // W is even in p: evaluate the non-negative half and mirror it.
        let mut row = vec![0.0; ps.len()];
        for (j, &p) in ps.iter().enumerate() {
            let mirror = ps.len() - 1 - j;
            row[j] = if mirror < j { row[mirror] } else { wigner_point(state, p.abs(), x)? };
            if row[j] < minimum.0 {
                minimum = (row[j], p, x);
            }
        }
        let m = trapezoid(&row, hp);
        let psi = state.value(x);
        marginal_error = marginal_error.max((m - psi * psi).abs());
        rows.push(m);
        values.push(row);
    }
    let normalization = trapezoid(&rows, hx);
    Ok(WignerMap { grid, values, normalization, marginal_error, minimum })
}

/// ∫ W(p, x) dp over the whole momentum line, which equals ψ(x)².
pub fn position_marginal(state: &dyn RealState, x: f64, p_max: f64) -> Result<f64> {
    let mut err = None;
    let r = integrate(
        |p| match wigner_point(state, p, x) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                f64::NAN
            }
        },
        0.0,
        p_max,
        QuadConfig::new(1e-10, 1e-8),
    );
    if let Some(e) = err {
        return Err(e);
    }
    Ok(2.0 * r?.value)
}

/// ∫ W(p, x) dx at fixed p, which equals the momentum density.
pub fn momentum_marginal(state: &dyn RealState, p: f64) -> Result<f64> {
    let (lo, hi) = state.support();
    let mut err = None;
    let r = integrate_pieces(
        |x| match wigner_point(state, p, x) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                f64::NAN
            }
        },
        &[lo, 0.0f64.clamp(lo, hi), hi],
        QuadConfig::new(1e-10, 1e-8),
    );
    if let Some(e) = err {
        return Err(e);
    }
    Ok(r?.value)
}

/// |ψ̃(p)|² with ψ̃(p) = (2π)^{−1/2} ∫ ψ(x) e^{−ipx} dx, by direct quadrature.
pub fn momentum_density(state: &dyn RealState, p: f64) -> Result<f64> {
    let (lo, hi) = state.support();
    let mut pts = vec![lo];
    pts.extend(state.kinks().into_iter().filter(|&k| k > lo && k < hi));
    pts.push(hi);
    let cfg = QuadConfig::new(1e-12, 1e-10);
    let re = integrate_pieces(|x| state.value(x) * (p * x).cos(), &pts, cfg)?.value;
    let im = integrate_pieces(|x| state.value(x) * (p * x).sin(), &pts, cfg)?.value;
    Ok((re * re + im * im) / (2.0 * std::f64::consts::PI))
}

/// Largest spread max − min of W along circles p² + x² = r², sampled at
/// `angles` directions. Zero for a rotationally symmetric distribution.
pub fn anisotropy(state: &dyn RealState, radii: &[f64], angles: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &r in radii {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for k in 0..angles.max(1) {
            let t = 2.0 * std::f64::consts::PI * k as f64 / angles.max(1) as f64;
            let w = wigner_point(state, r * t.sin(), r * t.cos())?;
            lo = lo.min(w);
            hi = hi.max(w);
        }
        worst = worst.max(hi - lo);
    }
    Ok(worst)
}
