//! Darboux–Crum and Krein–Adler deformations of the piecewise-quadratic
//! systems, built from their numerically solved eigenstates.
//!
//! Every derivative is propagated as a Taylor jet: the eigenstates satisfy
//! ψ″ = (V − E)ψ with V a quadratic on each side, so their Taylor series at
//! any point follow from (ψ, ψ′) alone, and Wronskians with their first two
//! derivatives are determinants of jets. The gluing point is treated as a
//! pair of one-sided limits.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::jet::{det, Jet};
use crate::piecewise::{eigenfunction, lowest_levels, EigenSolution, Eigenfunction, PiecewiseQuadratic, Side};

/// The lowest eigenstates of a piecewise system.
#[derive(Debug, Clone)]
pub struct StateSet {
    pub potential: PiecewiseQuadratic,
    pub states: Vec<EigenSolution>,
    funcs: Vec<Eigenfunction>,
}

impl StateSet {
    pub fn solve(potential: &PiecewiseQuadratic, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidParameter("a state set needs at least one state".into()));
        }
        let states = lowest_levels(potential, count)?;
        let funcs = states.iter().map(|s| eigenfunction(potential, s)).collect::<Result<Vec<_>>>()?;
        Ok(Self { potential: *potential, states, funcs })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn energies(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.energy).collect()
    }

    /// Where every held state is resolved.
    pub fn resolved_range(&self) -> (f64, f64) {
        self.funcs.iter().map(|f| f.resolved_range()).fold((f64::NEG_INFINITY, f64::INFINITY), |(a, b), (c, d)| (a.max(c), b.min(d)))
    }

    fn jet(&self, i: usize, x: f64, order: usize, side: Side) -> Result<Jet> {
        let f = self.funcs.get(i).ok_or_else(|| Error::LevelOutOfRange { n: i, n_max: self.len().saturating_sub(1) })?;
        Ok(Jet::from_coeffs(f.taylor(x, order, side)?))
    }
}

/// Jet of order `order` of W[ψ_{i₁}, …, ψ_{i_m}] at `x`.
pub fn wronskian_jet(set: &StateSet, idx: &[usize], x: f64, side: Side, order: usize) -> Result<Jet> {
    if idx.is_empty() {
        return Ok(Jet::constant(1.0, order));
    }
    let m = idx.len();
    let base: Vec<Jet> = idx.iter().map(|&i| set.jet(i, x, m - 1 + order, side)).collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(m);
    let mut cur = base;
    for _ in 0..m {
        rows.push(cur.iter().map(|j| Jet::from_coeffs(j.coeffs()[..=order].to_vec())).collect::<Vec<_>>());
        cur = cur.iter().map(Jet::differentiate).collect();
    }
    Ok(det(&rows))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WronskianValue {
    pub value: f64,
    /// W′/W.
    pub dlog: f64,
    /// (ln W)″.
    pub d2log: f64,
}

/// W, (ln W)′ and (ln W)″ at `x` (right-hand limit at the origin).
pub fn wronskian_eval(set: &StateSet, idx: &[usize], x: f64) -> Result<WronskianValue> {
    wronskian_eval_sided(set, idx, x, Side::Right)
}

pub fn wronskian_eval_sided(set: &StateSet, idx: &[usize], x: f64, side: Side) -> Result<WronskianValue> {
    let w = wronskian_jet(set, idx, x, side, 2)?;
    if w.value() == 0.0 {
        return Err(Error::Singular(format!("Wronskian of {idx:?} vanishes at x = {x}")));
    }
    Ok(WronskianValue { value: w.value(), dlog: w.dlog(), d2log: w.d2log() })
}

/// A deletion set is admissible when ∏_{d∈D}(m − d) ≥ 0 for every level m,
/// i.e. it is a run starting at 0 followed by adjacent pairs.
pub fn is_admissible(deleted: &[usize]) -> bool {
    let top = deleted.iter().copied().max().unwrap_or(0) + 1;
    (0..=top).all(|m| {
        let neg = deleted.iter().filter(|&&d| m < d).count();
        deleted.contains(&m) || neg % 2 == 0
    })
}

/// A system with the states indexed by `deleted` removed.
#[derive(Debug, Clone)]
pub struct Deformed {
    set: StateSet,
    deleted: Vec<usize>,
    retained: Vec<usize>,
}

/// Deletes the states in `deleted` (Krein–Adler); every other held state is
/// carried over with its energy.
pub fn krein_adler(set: StateSet, deleted: &[usize]) -> Result<Deformed> {
    let mut d = deleted.to_vec();
    d.sort_unstable();
    d.dedup();
    if d.len() != deleted.len() {
        return Err(Error::InvalidParameter(format!("repeated index in deletion set {deleted:?}")));
    }
    if !is_admissible(&d) {
        return Err(Error::Inadmissible(format!("deletion set {d:?} is not a leading run plus adjacent pairs")));
    }
    if let Some(&top) = d.last() {
        if top >= set.len() {
            return Err(Error::LevelOutOfRange { n: top, n_max: set.len().saturating_sub(1) });
        }
    }
    let retained = (0..set.len()).filter(|n| !d.contains(n)).collect();
    let out = Deformed { set, deleted: d, retained };
    out.check_nodeless()?;
    Ok(out)
}

/// Deletes the lowest `m` states (Crum).
pub fn darboux_crum(set: StateSet, m: usize) -> Result<Deformed> {
    if m > set.len() {
        return Err(Error::LevelOutOfRange { n: m - 1, n_max: set.len().saturating_sub(1) });
    }
    let d: Vec<usize> = (0..m).collect();
    krein_adler(set, &d)
}

/// The step system with a = 4ℓ with all ℓ negative-energy states deleted,
/// keeping `keep` states above them. Its spectrum is 0, 2, 4, …
pub fn iso_sequence(ell: usize, keep: usize) -> Result<Deformed> {
    if ell == 0 {
        return Err(Error::InvalidParameter("ℓ must be at least 1".into()));
    }
    let pot = PiecewiseQuadratic::step(4.0 * ell as f64)?;
    darboux_crum(StateSet::solve(&pot, ell + keep)?, ell)
}

impl Deformed {
    pub fn base(&self) -> &StateSet {
        &self.set
    }

    pub fn deleted(&self) -> &[usize] {
        &self.deleted
    }

    /// Original indices of the surviving states, ascending.
    pub fn retained(&self) -> &[usize] {
        &self.retained
    }

    pub fn energies(&self) -> Vec<f64> {
        self.retained.iter().map(|&n| self.set.states[n].energy).collect()
    }

    pub fn resolved_range(&self) -> (f64, f64) {
        self.set.resolved_range()
    }

    /// V(x) − 2 (ln W[ψ_d : d ∈ D])″, right-hand limit at the origin.
    pub fn potential(&self, x: f64) -> Result<f64> {
        self.potential_sided(x, Side::Right)
    }

    pub fn potential_sided(&self, x: f64, side: Side) -> Result<f64> {
        let base = if x < 0.0 || (x == 0.0 && side == Side::Left) { self.set.potential.left.eval(x) } else { self.set.potential.right.eval(x) };
        if self.deleted.is_empty() {
            return Ok(base);
        }
        Ok(base - 2.0 * wronskian_eval_sided(&self.set, &self.deleted, x, side)?.d2log)
    }

    /// Jet of W[ψ_D, ψ_n]/W[ψ_D] for a retained original index `n`.
    pub fn state_jet(&self, n: usize, x: f64, side: Side, order: usize) -> Result<Jet> {
        if self.deleted.contains(&n) {
            return Err(Error::InvalidParameter(format!("state {n} was deleted")));
        }
        if n >= self.set.len() {
            return Err(Error::LevelOutOfRange { n, n_max: self.set.len() - 1 });
        }
        let mut idx = self.deleted.clone();
        idx.push(n);
        let num = wronskian_jet(&self.set, &idx, x, side, order)?;
        let den = wronskian_jet(&self.set, &self.deleted, x, side, order)?;
        if den.value() == 0.0 {
            return Err(Error::Singular(format!("Wronskian of the deleted states vanishes at x = {x}")));
        }
        Ok(num.div(&den))
    }

    /// Unnormalized deformed eigenfunction.
    pub fn state(&self, n: usize, x: f64) -> Result<f64> {
        Ok(self.state_jet(n, x, Side::Right, 0)?.value())
    }

    /// Relative residual |−ψ″ + Vψ − Eψ| / max(|ψ|, |Vψ|, |Eψ|) at `x`.
    pub fn ode_residual(&self, n: usize, x: f64) -> Result<f64> {
        let side = if x < 0.0 { Side::Left } else { Side::Right };
        let j = self.state_jet(n, x, side, 2)?;
        let v = self.potential_sided(x, side)?;
        let e = self.set.states[n].energy;
        let (psi, d2) = (j.value(), j.derivative(2));
        let scale = psi.abs().max((v * psi).abs()).max((e * psi).abs()).max(d2.abs());
        Ok((-d2 + v * psi - e * psi).abs() / scale)
    }

    /// `count` equally spaced samples (x, V) on [lo, hi].
    pub fn sample_potential(&self, lo: f64, hi: f64, count: usize) -> Result<Vec<(f64, f64)>> {
        grid(lo, hi, count).into_iter().map(|x| Ok((x, self.potential(x)?))).collect()
    }

    /// Deformed state `n` on an odd number of equally spaced points over
    /// [lo, hi], scaled to unit L² norm there (Simpson's rule).
    pub fn normalized_state(&self, n: usize, lo: f64, hi: f64, count: usize) -> Result<Vec<(f64, f64)>> {
        let count = count.max(3) | 1;
        let xs = grid(lo, hi, count);
        let mut ys = xs.iter().map(|&x| self.state(n, x)).collect::<Result<Vec<_>>>()?;
        let h = (hi - lo) / (count - 1) as f64;
        let norm = simpson(&ys.iter().map(|y| y * y).collect::<Vec<_>>(), h).sqrt();
        // Sign: positive in the left tail.
        let lead = ys.iter().find(|y| y.abs() > 1e-300).copied().unwrap_or(1.0);
        let c = lead.signum() / norm;
        ys.iter_mut().for_each(|y| *y *= c);
        Ok(xs.into_iter().zip(ys).collect())
    }

    /// The deleted-state Wronskian must keep one sign, or the deformed
    /// potential has poles.
    fn check_nodeless(&self) -> Result<()> {
        if self.deleted.is_empty() {
            return Ok(());
        }
        let (lo, hi) = self.resolved_range();
        let mut sign = 0.0;
        for x in grid(lo, hi, 4001) {
            for side in [Side::Left, Side::Right] {
                let w = wronskian_jet(&self.set, &self.deleted, x, side, 0)?.value();
                if w == 0.0 || (sign != 0.0 && w.signum() != sign) {
                    return Err(Error::Inadmissible(format!("Wronskian of deleted states {:?} changes sign near x = {x}", self.deleted)));
                }
                sign = w.signum();
            }
        }
        Ok(())
    }
}

fn grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count < 2 {
        return vec![lo];
    }
    (0..count).map(|i| if i + 1 == count { hi } else { lo + (hi - lo) * i as f64 / (count - 1) as f64 }).collect()
}

fn simpson(y: &[f64], h: f64) -> f64 {
    let n = y.len() - 1;
    let mut s = y[0] + y[n];
    for (i, v) in y.iter().enumerate().take(n).skip(1) {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * v;
    }
    s * h / 3.0
}

/// Lowest `count` Dirichlet eigenvalues of −ψ″ + V ψ on [lo, hi], found by
/// RK4 shooting from `lo` with step about `h` and bisection on the node
/// count. `v(x, side)` returns the one-sided limit at a discontinuity; the
/// origin is always a grid point when it lies inside the box.
pub fn shooting_levels(v: impl Fn(f64, Side) -> Result<f64>, lo: f64, hi: f64, count: usize, h: f64) -> Result<Vec<f64>> {
    if !(lo < hi) || !(h > 0.0) {
        return Err(Error::InvalidParameter(format!("bad shooting box [{lo}, {hi}] with step {h}")));
    }
    let mut nodes = Vec::new();
    let mut push_run = |a: f64, b: f64| {
        let n = ((b - a) / h).ceil().max(1.0) as usize;
        for i in 0..n {
            nodes.push((a + (b - a) * i as f64 / n as f64, a + (b - a) * (i + 1) as f64 / n as f64));
        }
    };
    if lo < 0.0 && hi > 0.0 {
        push_run(lo, 0.0);
        push_run(0.0, hi);
    } else {
        push_run(lo, hi);
    }
    // (x0, x1, V(x0⁺), V(mid), V(x1⁻)) per step.
    let steps: Vec<(f64, f64, f64, f64, f64)> = nodes
        .iter()
        .map(|&(a, b)| Ok((a, b, v(a, Side::Right)?, v(0.5 * (a + b), Side::Right)?, v(b, Side::Left)?)))
        .collect::<Result<_>>()?;
    let vmin = steps.iter().map(|s| s.2.min(s.3).min(s.4)).fold(f64::INFINITY, f64::min);

    let count_nodes = |e: f64| -> usize {
        let (mut y, mut dy) = (0.0_f64, 1.0_f64);
        let mut last = 0.0_f64;
        let mut zeros = 0;
        for &(a, b, v0, vm, v1) in &steps {
            let hh = b - a;
            let f = |y: f64, vv: f64| (vv - e) * y;
            let (k1y, k1d) = (dy, f(y, v0));
            let (k2y, k2d) = (dy + 0.5 * hh * k1d, f(y + 0.5 * hh * k1y, vm));
            let (k3y, k3d) = (dy + 0.5 * hh * k2d, f(y + 0.5 * hh * k2y, vm));
            let (k4y, k4d) = (dy + hh * k3d, f(y + hh * k3y, v1));
            y += hh / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
            dy += hh / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
            let m = y.abs().max(dy.abs());
            if m > 1e100 {
                y /= m;
                dy /= m;
            }
            if y != 0.0 {
                if last != 0.0 && y.signum() != last {
                    zeros += 1;
                }
                last = y.signum();
            }
        }
        zeros
    };

    let mut levels = Vec::with_capacity(count);
    let mut e_lo = vmin;
    for k in 0..count {
        // Smallest E with more than k nodes, bracketed from above by doubling.
        let mut e_hi = e_lo.max(vmin) + 2.0;
        let mut tries = 0;
        while count_nodes(e_hi) <= k {
            e_hi += 2.0 * (e_hi - vmin).max(1.0);
            tries += 1;
            if tries > 60 {
                return Err(Error::BracketFailure(format!("no level {k} found below E = {e_hi}")));
            }
        }
        let mut a = e_lo;
        let mut b = e_hi;
        while b - a > 1e-11 * b.abs().max(1.0) {
            let m = 0.5 * (a + b);
            if count_nodes(m) > k {
                b = m;
            } else {
                a = m;
            }
        }
        let e = 0.5 * (a + b);
        levels.push(e);
        e_lo = e;
    }
    Ok(levels)
}

impl Deformed {
    /// Re-solves the deformed potential from scratch by shooting on a box
    /// inside the resolved range and returns its lowest `count` levels.
    pub fn resolve_spectrum(&self, count: usize) -> Result<Vec<f64>> {
        let (lo, hi) = self.resolved_range();
        let half = (-lo).min(hi) - 0.5;
        shooting_levels(|x, side| self.potential_sided(x, side), -half, half, count, 2e-3)
    }
}
