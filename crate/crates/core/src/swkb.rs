//! The direct SWKB problem.
//!
//! For a superpotential W and energy ℰ the SWKB integral is
//! `I(ℰ) = Σ ∫ √(ℰ − W²) dx` over the maximal intervals where ℰ > W².
//! The condition `I(ℰ_n) = nπħ` holds exactly for the conventional
//! shape-invariant systems; the residual `Err(n) = (I − nπħ)/I` measures how
//! far another system is from that class.

use crate::catalog::{Conventional, Descriptor, SuperpotentialSpec};
use crate::error::{Error, Result};
use crate::numeric::quad::{integrate, QuadConfig};
use crate::numeric::roots::{bisect, bracket_increasing, brent};
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};

/// Per-level SWKB record.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SwkbReport {
    pub n: usize,
    pub energy: f64,
    /// The SWKB integral I.
    pub integral: f64,
    pub i_over_pi_hbar: f64,
    /// Err(n) = (I − nπħ)/I, and 0 for n = 0.
    pub err: f64,
    /// sgn(Err)·2^{log₁₀|Err|}, the compressed scale used for error plots.
    pub err_rescaled: f64,
    /// Δ = nπħ − I.
    pub delta: f64,
    pub intervals: Vec<(f64, f64)>,
}

/// Numerical controls.
#[derive(Debug, Clone, Copy)]
pub struct SwkbConfig {
    /// Uniform sign-scan points across the search box.
    pub scan_points: usize,
    /// Absolute tolerance on turning points.
    pub root_tol: f64,
    /// Intervals narrower than this are treated as pinched off.
    pub min_width: f64,
    pub quad: QuadConfig,
}

impl Default for SwkbConfig {
    fn default() -> Self {
        Self { scan_points: 8192, root_tol: 1e-12, min_width: 1e-10, quad: QuadConfig::new(1e-13, 1e-13) }
    }
}

/// sgn(e)·2^{log₁₀|e|}; zero maps to zero.
pub fn rescaled_error(err: f64) -> f64 {
    if err == 0.0 {
        0.0
    } else {
        err.signum() * 2f64.powf(err.abs().log10())
    }
}

/// Finite search box inside the domain. Infinite sides are probed at
/// geometrically spaced distances (16 per octave, out to 2^40); the box ends
/// at twice the farthest probe where ℰ − W² is still positive.
fn search_box(spec: &SuperpotentialSpec, e: f64) -> Result<(f64, f64)> {
    let d = spec.domain();
    let f = |x: f64| e - spec.w(x).powi(2);
    let grow = |anchor: f64, dir: f64| -> Result<f64> {
        let step = 2f64.powf(1.0 / 16.0);
        let mut last_pos = 1.0f64;
        let mut r = 2f64.powi(-10);
        while r <= 2f64.powi(40) {
            if f(anchor + dir * r) > 0.0 {
                last_pos = last_pos.max(r);
            }
            r *= step;
        }
        if last_pos >= 2f64.powi(39) {
            return Err(Error::BracketFailure(format!("ℰ = {e} is not confined: ℰ − W² stays positive toward infinity")));
        }
        Ok(anchor + dir * 2.0 * last_pos)
    };
    let centre = match (d.lo.is_finite(), d.hi.is_finite()) {
        (true, true) => 0.5 * (d.lo + d.hi),
        (true, false) => d.lo,
        (false, true) => d.hi,
        (false, false) => 0.0,
    };
    let lo = if d.lo.is_finite() { d.lo } else { grow(centre, -1.0)? };
    let hi = if d.hi.is_finite() { d.hi } else { grow(centre, 1.0)? };
    Ok((lo, hi))
}

/// Scan abscissae: a uniform grid plus geometric refinement towards finite
/// (open) domain ends.
fn scan_grid(lo: f64, hi: f64, open_lo: bool, open_hi: bool, n: usize) -> Vec<f64> {
    let w = hi - lo;
    let mut xs: Vec<f64> = (1..n).map(|i| lo + w * i as f64 / n as f64).collect();
    for j in 1..60 {
        let t = w / n as f64 * 0.5f64.powi(j);
        if open_lo {
            xs.push(lo + t);
        }
        if open_hi {
            xs.push(hi - t);
        }
    }
    if !open_lo {
        xs.push(lo);
    }
    if !open_hi {
        xs.push(hi);
    }
    xs.retain(|x| x.is_finite() && *x >= lo && *x <= hi);
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

fn positive_part(v: f64) -> f64 {
    if v.is_nan() {
        -1.0
    } else {
        v
    }
}

/// Maximal intervals where ℰ − W(x)² > 0, with endpoints refined by bisection.
pub fn turning_intervals(spec: &SuperpotentialSpec, e: f64) -> Result<Vec<(f64, f64)>> {
    turning_intervals_with(spec, e, &SwkbConfig::default())
}

pub fn turning_intervals_with(spec: &SuperpotentialSpec, e: f64, cfg: &SwkbConfig) -> Result<Vec<(f64, f64)>> {
    if e < 0.0 {
        return Ok(Vec::new());
    }
    if e == 0.0 {
        return Ok(w_zero(spec, cfg)?.map(|x0| vec![(x0, x0)]).unwrap_or_default());
    }
    let d = spec.domain();
    let (lo, hi) = search_box(spec, e)?;
    let xs = scan_grid(lo, hi, d.lo.is_finite(), d.hi.is_finite(), cfg.scan_points);
    let f = |x: f64| positive_part(e - spec.w(x).powi(2));
    let vals: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut out = Vec::new();
    let mut start: Option<f64> = if vals[0] > 0.0 { Some(xs[0]) } else { None };
    for i in 1..xs.len() {
        let (a, b) = (xs[i - 1], xs[i]);
        if vals[i - 1] <= 0.0 && vals[i] > 0.0 {
            start = Some(bisect(f, a, b, cfg.root_tol)?);
        } else if vals[i - 1] > 0.0 && vals[i] <= 0.0 {
            let end = bisect(f, a, b, cfg.root_tol)?;
            if let Some(s) = start.take() {
                if end - s > cfg.min_width {
                    out.push((s, end));
                }
            }
        }
    }
    if let Some(s) = start {
        if *xs.last().unwrap() - s > cfg.min_width {
            out.push((s, *xs.last().unwrap()));
        }
    }
    Ok(out)
}

/// The zero of W (the E = 0 degenerate turning point), if W changes sign.
fn w_zero(spec: &SuperpotentialSpec, cfg: &SwkbConfig) -> Result<Option<f64>> {
    let d = spec.domain();
    // Any positive energy gives a box that contains the zero of W.
    let (lo, hi) = search_box(spec, 1e-6 * spec.hbar().powi(2)).or_else(|_| search_box(spec, 1e-12))?;
    let xs = scan_grid(lo, hi, d.lo.is_finite(), d.hi.is_finite(), cfg.scan_points);
    for w in xs.windows(2) {
        let (a, b) = (spec.w(w[0]), spec.w(w[1]));
        if a.is_finite() && b.is_finite() && a != b && (a == 0.0 || a.signum() != b.signum()) {
            return Ok(Some(bisect(|x| spec.w(x), w[0], w[1], cfg.root_tol)?));
        }
    }
    Ok(None)
}

/// Σ ∫ √(ℰ − W²)/η dx over the given intervals, each mapped by x = m + h sin θ.
fn integrate_intervals(
    spec: &SuperpotentialSpec,
    e: f64,
    intervals: &[(f64, f64)],
    extended: bool,
    cfg: &SwkbConfig,
) -> Result<f64> {
    let mut total = 0.0;
    for &(a, b) in intervals {
        let m = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let g = |t: f64| {
            let (s, c) = t.sin_cos();
            let x = m + h * s;
            let v = (e - spec.w(x).powi(2)).max(0.0);
            let weight = if extended { spec.eta(x).map(|y| 1.0 / y).unwrap_or(1.0) } else { 1.0 };
            let r = v.sqrt() * h * c * weight;
            if r.is_finite() {
                r
            } else {
                0.0
            }
        };
        total += integrate(g, -FRAC_PI_2, FRAC_PI_2, cfg.quad)?.value;
    }
    Ok(total)
}

/// SWKB integral at an arbitrary energy, with the turning intervals used.
pub fn integral_at(spec: &SuperpotentialSpec, e: f64, extended: bool, cfg: &SwkbConfig) -> Result<(f64, Vec<(f64, f64)>)> {
    if extended && !spec.has_eta() {
        return Err(Error::InvalidParameter("extended SWKB integral needs a mass-deformation function".into()));
    }
    let iv = turning_intervals_with(spec, e, cfg)?;
    if e <= 0.0 {
        return Ok((0.0, iv));
    }
    let v = integrate_intervals(spec, e, &iv, extended, cfg)?;
    Ok((v, iv))
}

/// Closed-form SWKB integral for the three basic families, where known.
pub fn closed_form_integral(spec: &SuperpotentialSpec, e: f64) -> Option<f64> {
    let Descriptor::Conventional { family, params } = spec.descriptor() else {
        return None;
    };
    match family {
        Conventional::Harmonic => Some(PI * e / (2.0 * params.omega)),
        Conventional::Radial => Some(PI * e / (4.0 * params.omega)),
        Conventional::PoschlTeller => {
            let gh = params.hbar * (params.g? + params.h?);
            Some(FRAC_PI_2 * ((e + gh * gh).sqrt() - gh))
        }
        _ => None,
    }
}

fn report(spec: &SuperpotentialSpec, n: usize, e: f64, integral: f64, intervals: Vec<(f64, f64)>) -> SwkbReport {
    let target = n as f64 * PI * spec.hbar();
    let err = if n == 0 || integral == 0.0 { 0.0 } else { (integral - target) / integral };
    SwkbReport {
        n,
        energy: e,
        integral,
        i_over_pi_hbar: integral / (PI * spec.hbar()),
        err,
        err_rescaled: rescaled_error(err),
        delta: target - integral,
        intervals,
    }
}

/// SWKB integral at the exact level ℰ_n.
pub fn swkb_integral(spec: &SuperpotentialSpec, n: usize) -> Result<SwkbReport> {
    swkb_integral_with(spec, n, &SwkbConfig::default())
}

pub fn swkb_integral_with(spec: &SuperpotentialSpec, n: usize, cfg: &SwkbConfig) -> Result<SwkbReport> {
    let e = spec.energy(n)?;
    let (i, iv) = integral_at(spec, e, false, cfg)?;
    Ok(report(spec, n, e, i, iv))
}

/// Extended SWKB integral Σ ∫ √(ℰ_n − W²)/η dx for position-dependent mass.
pub fn swkb_extended_integral(spec: &SuperpotentialSpec, n: usize) -> Result<SwkbReport> {
    swkb_extended_integral_with(spec, n, &SwkbConfig::default())
}

pub fn swkb_extended_integral_with(spec: &SuperpotentialSpec, n: usize, cfg: &SwkbConfig) -> Result<SwkbReport> {
    let e = spec.energy(n)?;
    let (i, iv) = integral_at(spec, e, true, cfg)?;
    Ok(report(spec, n, e, i, iv))
}

/// Energy ℰ with I(ℰ) = nπħ, found by bracketing the increasing map ℰ ↦ I(ℰ).
/// Uses the extended integral when the spec carries η.
pub fn quantize_energy(spec: &SuperpotentialSpec, n: usize) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    let cfg = SwkbConfig::default();
    let extended = spec.has_eta();
    let target = n as f64 * PI * spec.hbar();
    let i_of = |e: f64| integral_at(spec, e, extended, &cfg).map(|(v, _)| v);
    let start = spec.energy(n).ok().filter(|v| *v > 0.0).map(|v| 0.5 * v).unwrap_or(1.0);
    let (lo, hi) = bracket_increasing(i_of, 0.0, start, target)?;
    let scale = hi.abs().max(1.0);
    let e = brent(
        |x| match integral_at(spec, x, extended, &cfg) {
            Ok((v, _)) => v - target,
            Err(_) => f64::NAN,
        },
        lo,
        hi,
        1e-13 * scale,
    )?;
    Ok(e)
}

/// Reports for n = lo..=hi (capped at the last bound state).
pub fn err_table(spec: &SuperpotentialSpec, lo: usize, hi: usize) -> Result<Vec<SwkbReport>> {
    if lo > hi {
        return Err(Error::InvalidParameter(format!("empty level range {lo}..={hi}")));
    }
    let hi = spec.n_max().map_or(hi, |m| hi.min(m));
    (lo..=hi).map(|n| swkb_integral(spec, n)).collect()
}
