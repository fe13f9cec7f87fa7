//! Bound states of −ψ″ + V(x)ψ = Eψ for potentials made of two confining
//! quadratics glued at x = 0: the γ-modulated oscillator, the oscillator with
//! a step, and the oscillator with a step and a ramp.
//!
//! On each half-line the potential is k²(x − s)² + v₀, so with
//! ξ = √k (x − s) the equation becomes ψ_ξξ = (ξ² − ε)ψ, ε = (E − v₀)/k,
//! whose general solution is
//!
//!   e^{−ξ²/2} [α ₁F₁(a₁; ½; ξ²) + β ξ ₁F₁(a₂; 3/2; ξ²)],  a₁ = (1 − ε)/4,  a₂ = a₁ + ½.
//!
//! The combination decaying at infinity carries the coefficients 1/Γ(a₁) and
//! 1/Γ(a₂), both entire in E, so the matching Wronskian at the origin is an
//! entire function of E whose zeros are the eigenvalues.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::roots::brent;
use crate::orthopoly::{count_real_roots, real_roots_in, Bound, RationalPoly};
use crate::specfun::{kummer_1f1, kummer_1f1_dz, recip_gamma, KummerParams};

/// Scan step for the sign search of the spectral determinant.
pub const SCAN_STEP: f64 = 0.05;

/// Grid spacing (in the scaled variable) of the tabulated eigenfunction tails.
const TAIL_STEP: f64 = 1e-3;

/// How far past the turning point the tails are integrated, in scaled units.
const TAIL_REACH: f64 = 12.0;

/// Samples this close (in η) to the far end of a tail still carry the
/// start-up error of the inward integration.
const TAIL_MARGIN: f64 = 2.0;

/// V(x) = c2 x² + c1 x + c0 on one half-line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quadratic {
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl Quadratic {
    pub fn new(c2: f64, c1: f64, c0: f64) -> Self {
        Self { c2, c1, c0 }
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.c2 * x + self.c1) * x + self.c0
    }

    /// Position of the minimum.
    pub fn centre(&self) -> f64 {
        -self.c1 / (2.0 * self.c2)
    }

    /// Value at the minimum.
    pub fn floor(&self) -> f64 {
        self.c0 - self.c1 * self.c1 / (4.0 * self.c2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    /// γ = p/q.
    GammaModulated { p: u64, q: u64 },
    Step { a: f64 },
    StepRamp { a: f64, g: f64 },
    Custom,
}

/// Two quadratics glued at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseQuadratic {
    pub left: Quadratic,
    pub right: Quadratic,
    pub family: Family,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl PiecewiseQuadratic {
    pub fn new(left: Quadratic, right: Quadratic) -> Result<Self> {
        Self::checked(left, right, Family::Custom)
    }

    fn checked(left: Quadratic, right: Quadratic, family: Family) -> Result<Self> {
        for (name, q) in [("left", left), ("right", right)] {
            if !(q.c2 > 0.0 && q.c2.is_finite() && q.c1.is_finite() && q.c0.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} quadratic must be confining with finite coefficients, got {q:?}")));
            }
        }
        Ok(Self { left, right, family })
    }

    /// ((1+γ)/2)² x² − (1+γ)/2 for x < 0 and ((1+γ)/2γ)² x² − (1+γ)/2γ for
    /// x > 0, with γ = p/q reduced to lowest terms. For γ > 1 this is the
    /// mirror image of the 1/γ potential.
    pub fn gamma_modulated(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidParameter(format!("γ = {p}/{q} must be positive")));
        }
        let d = gcd(p, q);
        let (p, q) = (p / d, q / d);
        let kl = (p + q) as f64 / (2 * q) as f64;
        let kr = (p + q) as f64 / (2 * p) as f64;
        Self::checked(Quadratic::new(kl * kl, 0.0, -kl), Quadratic::new(kr * kr, 0.0, -kr), Family::GammaModulated { p, q })
    }

    /// x² − 1 − a for x < 0 and x² − 1 for x > 0.
    pub fn step(a: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::InvalidParameter(format!("step height must be finite, got {a}")));
        }
        Self::checked(Quadratic::new(1.0, 0.0, -1.0 - a), Quadratic::new(1.0, 0.0, -1.0), Family::Step { a })
    }

    /// x² − 1 − a + g x for x < 0 and x² − 1 for x > 0; the left well is
    /// centred at −g/2.
    pub fn step_ramp(a: f64, g: f64) -> Result<Self> {
        if !(a.is_finite() && g.is_finite()) {
            return Err(Error::InvalidParameter(format!("step and ramp parameters must be finite, got ({a}, {g})")));
        }
        Self::checked(Quadratic::new(1.0, g, -1.0 - a), Quadratic::new(1.0, 0.0, -1.0), Family::StepRamp { a, g })
    }

    pub fn potential(&self, x: f64) -> f64 {
        if x < 0.0 {
            self.left.eval(x)
        } else {
            self.right.eval(x)
        }
    }

    pub fn side(&self, side: Side) -> &Quadratic {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    /// γ for the modulated oscillator.
    pub fn gamma(&self) -> Option<f64> {
        match self.family {
            Family::GammaModulated { p, q } => Some(p as f64 / q as f64),
            _ => None,
        }
    }

    /// ℓ when the family is a step of height a = 4ℓ, ℓ ≥ 1.
    pub fn step_ell(&self) -> Option<usize> {
        match self.family {
            Family::Step { a } if a >= 4.0 && (a / 4.0).fract() == 0.0 => Some((a / 4.0) as usize),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// Geometry of one side in the scaled variable η, which points away from
/// the origin: η = ±√k (x − s) with the sign chosen so that η → +∞ at the
/// side's own infinity.
#[derive(Debug, Clone, Copy)]
struct Frame {
    sqrt_k: f64,
    s: f64,
    v0: f64,
    dir: f64,
}

impl Frame {
    fn new(q: &Quadratic, side: Side) -> Self {
        Self {
            sqrt_k: q.c2.sqrt().sqrt(),
            s: q.centre(),
            v0: q.floor(),
            dir: if side == Side::Left { -1.0 } else { 1.0 },
        }
    }

    fn k(&self) -> f64 {
        self.sqrt_k * self.sqrt_k
    }

    fn eps(&self, e: f64) -> f64 {
        (e - self.v0) / self.k()
    }

    fn eta(&self, x: f64) -> f64 {
        self.dir * self.sqrt_k * (x - self.s)
    }

    fn eta0(&self) -> f64 {
        self.eta(0.0)
    }

    /// d/dx in terms of d/dη.
    fn dx_scale(&self) -> f64 {
        self.dir * self.sqrt_k
    }
}

fn kummer_pair(a: f64, c: f64, z: f64) -> Result<(f64, f64)> {
    let p = KummerParams::new(a, c, z);
    Ok((kummer_1f1(p)?, kummer_1f1_dz(p)?))
}

/// The two basis members in ξ and their ξ-derivatives:
/// e^{−ξ²/2}₁F₁(a₁; ½; ξ²) and e^{−ξ²/2} ξ ₁F₁(a₂; 3/2; ξ²).
fn basis_xi(eps: f64, xi: f64) -> Result<[(f64, f64); 2]> {
    let a1 = (1.0 - eps) / 4.0;
    let z = xi * xi;
    let g = (-z / 2.0).exp();
    let (m1, dm1) = kummer_pair(a1, 0.5, z)?;
    let (m2, dm2) = kummer_pair(a1 + 0.5, 1.5, z)?;
    let even = (g * m1, g * xi * (2.0 * dm1 - m1));
    let odd = (g * xi * m2, g * ((1.0 - z) * m2 + 2.0 * z * dm2));
    Ok([even, odd])
}

/// The solution basis on one side at `x`, as (ψ, dψ/dx) pairs: the even
/// member e^{−ξ²/2}₁F₁(a₁; ½; ξ²) and the odd member
/// e^{−ξ²/2} ξ ₁F₁(a₂; 3/2; ξ²), with ξ = √k (x − s) centred on the side's
/// own minimum. Any real `x` is accepted.
pub fn side_solution(pot: &PiecewiseQuadratic, side: Side, e: f64, x: f64) -> Result<[(f64, f64); 2]> {
    let f = Frame::new(pot.side(side), side);
    let xi = f.sqrt_k * (x - f.s);
    let b = basis_xi(f.eps(e), xi)?;
    Ok([(b[0].0, f.sqrt_k * b[0].1), (b[1].0, f.sqrt_k * b[1].1)])
}

/// Coefficients (A, B) of the decaying solution
/// e^{−η²/2}[A ₁F₁(a₁; ½; η²) + B η ₁F₁(a₂; 3/2; η²)] in the outward variable.
fn decaying_coeffs(eps: f64) -> (f64, f64) {
    let a1 = (1.0 - eps) / 4.0;
    let sp = PI.sqrt();
    (sp * recip_gamma(a1 + 0.5), -2.0 * sp * recip_gamma(a1))
}

/// Value and x-derivative at the origin of the side's decaying solution.
fn decaying_at_origin(f: &Frame, e: f64) -> Result<(f64, f64)> {
    let eps = f.eps(e);
    let (a, b) = decaying_coeffs(eps);
    let basis = basis_xi(eps, f.eta0())?;
    let v = a * basis[0].0 + b * basis[1].0;
    let d = a * basis[0].1 + b * basis[1].1;
    Ok((v, f.dx_scale() * d))
}

/// The matching Wronskian ψ₋ψ₊′ − ψ₋′ψ₊ at the origin of the two decaying
/// solutions, divided by the lengths of their (ψ, ψ′) vectors. It is the
/// sine of the angle between them, so it lies in [−1, 1] and vanishes
/// exactly at the eigenvalues.
pub fn spectral_determinant(pot: &PiecewiseQuadratic, e: f64) -> f64 {
    let l = Frame::new(&pot.left, Side::Left);
    let r = Frame::new(&pot.right, Side::Right);
    match (decaying_at_origin(&l, e), decaying_at_origin(&r, e)) {
        (Ok((pl, dl)), Ok((pr, dr))) => {
            let w = pl * dr - dl * pr;
            w / (pl.hypot(dl) * pr.hypot(dr))
        }
        _ => f64::NAN,
    }
}

/// Hermite data of an exactly solvable level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HermiteState {
    pub n: usize,
    pub energy: f64,
    pub left_order: usize,
    pub right_order: usize,
    /// 𝒩₋/𝒩₊ for ψ = 𝒩± e^{−ξ²/2} H_m(ξ) on the two sides, ξ = √k (x − s).
    pub ratio: f64,
    /// The same ratio as an exact fraction, when it is rational.
    #[serde(serialize_with = "ser_opt_rational")]
    pub ratio_exact: Option<BigRational>,
}

fn ser_opt_rational<S: serde::Serializer>(r: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// H_n(t) and H_n′(t) by the three-term recurrence.
fn hermite_with_derivative(n: usize, t: f64) -> (f64, f64) {
    let (mut h0, mut h1) = (1.0, 2.0 * t);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let h2 = 2.0 * t * h1 - 2.0 * k as f64 * h0;
        h0 = h1;
        h1 = h2;
    }
    (h1, 2.0 * n as f64 * h0)
}

/// H_n(0) exactly: 0 for odd n, (−1)^{n/2} n!/(n/2)! otherwise.
fn hermite_at_zero(n: usize) -> BigInt {
    if n % 2 == 1 {
        return BigInt::zero();
    }
    let mut v = BigInt::one();
    for j in n / 2 + 1..=n {
        v *= j;
    }
    if (n / 2) % 2 == 1 {
        -v
    } else {
        v
    }
}

/// The order N with ε = 2N + 1, if ε is (to rounding) such an odd integer.
fn hermite_order(eps: f64) -> Option<usize> {
    let m = (eps - 1.0) / 2.0;
    let r = m.round();
    (r >= 0.0 && (m - r).abs() <= 1e-9 * r.max(1.0)).then_some(r as usize)
}

/// e^{−ξ²/2} H_N(ξ) at the origin and its x-derivative, ξ = √k (x − s).
fn hermite_piece_at_origin(f: &Frame, n: usize) -> (f64, f64) {
    let xi = -f.sqrt_k * f.s;
    let g = (-xi * xi / 2.0).exp();
    let (h, dh) = hermite_with_derivative(n, xi);
    (g * h, f.sqrt_k * g * (dh - xi * h))
}

/// Exactly solvable levels with E ≤ `e_max`: energies where the decaying
/// solutions on both sides are Hermite functions and they can be joined
/// smoothly at the origin.
pub fn hermite_states(pot: &PiecewiseQuadratic, e_max: f64) -> Result<Vec<HermiteState>> {
    let l = Frame::new(&pot.left, Side::Left);
    let r = Frame::new(&pot.right, Side::Right);
    let mut out = Vec::new();
    let kr = pot.right.c2.sqrt();
    let mut nr = 0usize;
    loop {
        let e = r.v0 + kr * (2 * nr + 1) as f64;
        if e > e_max + 1e-12 * e_max.abs().max(1.0) {
            break;
        }
        if let Some(nl) = hermite_order(l.eps(e)) {
            let (pl, dl) = hermite_piece_at_origin(&l, nl);
            let (pr, dr) = hermite_piece_at_origin(&r, nr);
            let w = pl * dr - dl * pr;
            if w.abs() <= 1e-9 * pl.hypot(dl) * pr.hypot(dr) {
                let ratio = (pl * pr + dl * dr) / (pl * pl + dl * dl);
                let centred = l.s == 0.0 && r.s == 0.0;
                let ratio_exact = if centred && nl % 2 == 0 {
                    Some(BigRational::new(hermite_at_zero(nr), hermite_at_zero(nl)))
                } else if centred && l.sqrt_k == r.sqrt_k {
                    // H_N′(0) = 2N H_{N−1}(0).
                    Some(BigRational::new(hermite_at_zero(nr - 1) * (2 * nr), hermite_at_zero(nl - 1) * (2 * nl)))
                } else {
                    None
                };
                let n = hermite_node_count(&l, nl, &r, nr, ratio);
                out.push(HermiteState { n, energy: e, left_order: nl, right_order: nr, ratio, ratio_exact });
            }
        }
        nr += 1;
    }
    Ok(out)
}

/// Zeros of the glued Hermite function: those of H on each open half-line
/// plus one at the origin when both pieces vanish there.
fn hermite_node_count(l: &Frame, nl: usize, r: &Frame, nr: usize, ratio: f64) -> usize {
    let count = |f: &Frame, n: usize| {
        // In η the piece is ±H_n(∓η) e^{−η²/2}, so its zeros are those of H_n
        // in |ξ| terms; scan η from just past the origin to beyond the last zero.
        let eta0 = f.eta0();
        let top = (2.0 * n as f64 + 1.0).sqrt() + 1.0;
        let h = 1e-4;
        let mut last = 0.0_f64;
        let mut c = 0;
        let mut t = eta0 + h;
        while t < top.max(eta0 + 2.0 * h) {
            let xi = f.dir * t;
            let v = hermite_with_derivative(n, xi).0;
            if v != 0.0 {
                if last != 0.0 && v.signum() != last.signum() {
                    c += 1;
                }
                last = v;
            }
            t += h;
        }
        c
    };
    let origin = {
        let (pr, _) = hermite_piece_at_origin(r, nr);
        let (pl, _) = hermite_piece_at_origin(l, nl);
        usize::from(pr.abs() <= 1e-12 && (ratio * pl).abs() <= 1e-12)
    };
    count(l, nl) + count(r, nr) + origin
}

/// The ℓ real roots of −∏(E + 4k − 2) = ∏(E + 4k), k = 1..ℓ: the negative
/// eigenvalues of the step potential with a = 4ℓ, ascending.
pub fn algebraic_eigenvalues(ell: usize) -> Result<Vec<f64>> {
    if ell == 0 {
        return Err(Error::InvalidParameter("ℓ must be at least 1".into()));
    }
    let poly = algebraic_polynomial(ell);
    let total = count_real_roots(&poly, &Bound::NegInf, &Bound::PosInf);
    if total != ell {
        return Err(Error::NonConvergence(format!("expected {ell} real roots, the Sturm count gives {total}")));
    }
    let lo = -4.0 * ell as f64 - 2.0;
    let mut roots = real_roots_in(&poly, lo, 0.0, 1e-15)?;
    roots.sort_by(f64::total_cmp);
    if roots.len() != ell {
        return Err(Error::NonConvergence(format!("isolated {} of {ell} roots", roots.len())));
    }
    // Polish on the product form, which is better conditioned than the
    // expanded coefficients.
    let prod = |e: f64| (1..=ell).map(|k| e + 4.0 * k as f64 - 2.0).product::<f64>() + (1..=ell).map(|k| e + 4.0 * k as f64).product::<f64>();
    for r in roots.iter_mut() {
        let h = 1e-9 * r.abs().max(1.0);
        if prod(*r - h).signum() != prod(*r + h).signum() {
            *r = brent(prod, *r - h, *r + h, 1e-16 * r.abs().max(1.0))?;
        }
    }
    let centre = -2.0 - 4.0 * ell as f64;
    for i in 0..ell {
        let s = roots[i] + roots[ell - 1 - i];
        if (s - centre).abs() > 1e-9 {
            return Err(Error::NonConvergence(format!("root pair {i} sums to {s}, expected {centre}")));
        }
    }
    Ok(roots)
}

/// ∏(E + 4k − 2) + ∏(E + 4k) with exact coefficients.
pub fn algebraic_polynomial(ell: usize) -> RationalPoly {
    let lin = |c: i64| RationalPoly::from_i64(&[c, 1]);
    let (mut a, mut b) = (RationalPoly::one(), RationalPoly::one());
    for k in 1..=ell as i64 {
        a = a.mul(&lin(4 * k - 2));
        b = b.mul(&lin(4 * k));
    }
    a.add(&b)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateTag {
    Hermite { left_order: usize, right_order: usize, ratio: f64 },
    Hypergeometric,
}

/// One eigenvalue with its matched, L²-normalized coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenSolution {
    pub energy: f64,
    /// (α₋, β₋, α₊, β₊) in ψ = e^{−ξ²/2}[α ₁F₁(a₁; ½; ξ²) + β ξ ₁F₁(a₂; 3/2; ξ²)],
    /// ξ = √k (x − s) on each side.
    pub coeffs: [f64; 4],
    pub nodes: usize,
    pub tag: StateTag,
    /// True when the energy is known in closed form (Hermite levels and the
    /// algebraic roots of the a = 4ℓ step).
    pub exact: bool,
    /// |ψ(0⁺) − ψ(0⁻)| + |ψ′(0⁺) − ψ′(0⁻)| relative to max |ψ|.
    pub residual: f64,
}

/// Decaying solution of ψ_ηη = (η² − ε)ψ tabulated on [η₀, η_far], integrated
/// inwards (the stable direction) with classical RK4.
#[derive(Debug, Clone)]
struct Tail {
    frame: Frame,
    eps: f64,
    eta0: f64,
    h: f64,
    /// Samples from η₀ outward: (f, df/dη).
    vals: Vec<(f64, f64)>,
}

impl Tail {
    fn integrate(frame: Frame, eps: f64) -> Tail {
        let eta0 = frame.eta0();
        let far = eta0.max(eps.max(0.0).sqrt()) + TAIL_REACH;
        let n = (((far - eta0) / TAIL_STEP).ceil() as usize).max(2);
        let n = n + n % 2;
        let h = (far - eta0) / n as f64;
        let rhs = |t: f64, y: (f64, f64)| (y.1, (t * t - eps) * y.0);
        let mut y = (1.0, -(far * far - eps).max(1.0).sqrt());
        let mut vals = vec![(0.0, 0.0); n + 1];
        vals[n] = y;
        for i in (0..n).rev() {
            let t = eta0 + (i + 1) as f64 * h;
            let hh = -h;
            let k1 = rhs(t, y);
            let k2 = rhs(t + hh / 2.0, (y.0 + hh / 2.0 * k1.0, y.1 + hh / 2.0 * k1.1));
            let k3 = rhs(t + hh / 2.0, (y.0 + hh / 2.0 * k2.0, y.1 + hh / 2.0 * k2.1));
            let k4 = rhs(t + hh, (y.0 + hh * k3.0, y.1 + hh * k3.1));
            y = (y.0 + hh / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0), y.1 + hh / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1));
            vals[i] = y;
            // Rescale to stay well inside the floating-point range.
            if y.0.abs() > 1e200 {
                for v in vals[i..].iter_mut() {
                    v.0 *= 1e-200;
                    v.1 *= 1e-200;
                }
                y = vals[i];
            }
        }
        Tail { frame, eps, eta0, h, vals }
    }

    fn far(&self) -> f64 {
        self.eta0 + self.h * (self.vals.len() - 1) as f64
    }

    /// Taylor coefficients of f in η at `eta`, to the given order, from the
    /// nearest sample continued by the series of the differential equation.
    fn taylor(&self, eta: f64, order: usize) -> Vec<f64> {
        let i = (((eta - self.eta0) / self.h).round().max(0.0) as usize).min(self.vals.len() - 1);
        let ei = self.eta0 + self.h * i as f64;
        let (mut f, mut df) = (0.0, 0.0);
        let c = ode_series(ei, self.eps, self.vals[i], 18);
        let d = eta - ei;
        for (k, ck) in c.iter().enumerate().rev() {
            f = f * d + ck;
            if k > 0 {
                df = df * d + k as f64 * ck;
            }
        }
        ode_series(eta, self.eps, (f, df), order)
    }

    fn scale(&mut self, c: f64) {
        for v in self.vals.iter_mut() {
            v.0 *= c;
            v.1 *= c;
        }
    }

    /// Cubic Hermite interpolation in η; zero beyond the table.
    fn eval(&self, eta: f64) -> f64 {
        if eta >= self.far() {
            return 0.0;
        }
        let u = ((eta - self.eta0) / self.h).max(0.0);
        let i = (u.floor() as usize).min(self.vals.len() - 2);
        let s = u - i as f64;
        let (y0, d0) = self.vals[i];
        let (y1, d1) = self.vals[i + 1];
        let h = self.h;
        let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1
    }

    /// ∫ f² dx over the side by Simpson's rule on the table.
    fn norm_sq(&self) -> f64 {
        let n = self.vals.len() - 1;
        let mut s = self.vals[0].0.powi(2) + self.vals[n].0.powi(2);
        for i in 1..n {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * self.vals[i].0.powi(2);
        }
        s * self.h / 3.0 / self.frame.sqrt_k
    }

    /// Sign changes from the far end to the origin, ignoring negligible samples.
    fn signs_outward(&self, floor: f64) -> Vec<f64> {
        self.vals.iter().filter(|v| v.0.abs() > floor).map(|v| v.0.signum()).collect()
    }

    fn max_abs(&self) -> f64 {
        self.vals.iter().fold(0.0, |m, v| m.max(v.0.abs()))
    }
}

/// Taylor coefficients at η of the solution of f″ = (η² − ε) f with
/// f(η) = y.0 and f′(η) = y.1.
fn ode_series(eta: f64, eps: f64, y: (f64, f64), order: usize) -> Vec<f64> {
    let mut c = vec![0.0; order.max(1) + 1];
    c[0] = y.0;
    c[1] = y.1;
    // η² − ε about η is (η² − ε) + 2η t + t².
    let w = [eta * eta - eps, 2.0 * eta, 1.0];
    for k in 0..order.saturating_sub(1) {
        let mut s = 0.0;
        for (j, wj) in w.iter().enumerate() {
            if j <= k {
                s += wj * c[k - j];
            }
        }
        c[k + 2] = s / ((k + 2) * (k + 1)) as f64;
    }
    c.truncate(order + 1);
    c
}

/// A normalized eigenfunction, evaluable anywhere on the line.
#[derive(Debug, Clone)]
pub struct Eigenfunction {
    pub energy: f64,
    left: Tail,
    right: Tail,
    /// Mismatch between the tabulated tails and the ₁F₁ form at the origin.
    pub tail_mismatch: f64,
}

impl Eigenfunction {
    pub fn value(&self, x: f64) -> f64 {
        let t = if x < 0.0 { &self.left } else { &self.right };
        t.eval(t.frame.eta(x))
    }

    /// Support outside which |ψ| is below ~e^{−40} of its peak.
    pub fn support(&self) -> (f64, f64) {
        let x_of = |t: &Tail| t.frame.s + t.frame.dir * t.far() / t.frame.sqrt_k;
        (x_of(&self.left), x_of(&self.right))
    }

    /// Interval on which the tabulated tails are accurate to rounding.
    pub fn resolved_range(&self) -> (f64, f64) {
        let x_of = |t: &Tail| t.frame.s + t.frame.dir * (t.far() - TAIL_MARGIN) / t.frame.sqrt_k;
        (x_of(&self.left), x_of(&self.right))
    }

    /// Taylor coefficients ψ, ψ′, ψ″/2!, … at `x`. At the origin, `side`
    /// selects the one-sided limit; elsewhere it is ignored.
    pub fn taylor(&self, x: f64, order: usize, side: Side) -> Result<Vec<f64>> {
        let (lo, hi) = self.resolved_range();
        if !(x >= lo && x <= hi) {
            return Err(Error::InvalidParameter(format!("x = {x} lies outside the resolved range [{lo}, {hi}]")));
        }
        let use_left = x < 0.0 || (x == 0.0 && side == Side::Left);
        let t = if use_left { &self.left } else { &self.right };
        let mut c = t.taylor(t.frame.eta(x), order);
        let s = t.frame.dx_scale();
        let mut p = 1.0;
        for ck in c.iter_mut() {
            *ck *= p;
            p *= s;
        }
        Ok(c)
    }

    /// Sign changes along the line.
    pub fn node_count(&self) -> usize {
        let floor = 1e-12 * self.left.max_abs().max(self.right.max_abs());
        let mut signs = self.left.signs_outward(floor);
        signs.reverse();
        signs.extend(self.right.signs_outward(floor));
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

/// Builds the normalized eigenfunction at an eigenvalue `e`.
fn build_eigenfunction(pot: &PiecewiseQuadratic, e: f64) -> Result<(Eigenfunction, [f64; 4], f64)> {
    let lf = Frame::new(&pot.left, Side::Left);
    let rf = Frame::new(&pot.right, Side::Right);
    let mut left = Tail::integrate(lf, lf.eps(e));
    let mut right = Tail::integrate(rf, rf.eps(e));
    let mut mismatch: f64 = 0.0;
    let mut origin = [(0.0, 0.0); 2];
    let mut ab = [(0.0, 0.0); 2];
    for (i, (t, f)) in [(&mut left, lf), (&mut right, rf)].into_iter().enumerate() {
        let eps = f.eps(e);
        let (a, b) = decaying_coeffs(eps);
        let basis = basis_xi(eps, t.eta0)?;
        let v = (a * basis[0].0 + b * basis[1].0, a * basis[0].1 + b * basis[1].1);
        let w = t.vals[0];
        let c = (v.0 * w.0 + v.1 * w.1) / (w.0 * w.0 + w.1 * w.1);
        mismatch = mismatch.max((v.0 - c * w.0).hypot(v.1 - c * w.1) / v.0.hypot(v.1));
        t.scale(c);
        origin[i] = (v.0, f.dx_scale() * v.1);
        ab[i] = (a, b);
    }
    // Join the sides: scale the left so its (ψ, ψ′) best matches the right.
    let (pl, dl) = origin[0];
    let (pr, dr) = origin[1];
    let cl = (pl * pr + dl * dr) / (pl * pl + dl * dl);
    left.scale(cl);
    let norm = (left.norm_sq() + right.norm_sq()).sqrt();
    let mut sign = 1.0 / norm;
    let lead = left.vals.iter().rev().map(|v| v.0).find(|v| v.abs() > 1e-300).unwrap_or(1.0);
    if lead < 0.0 {
        sign = -sign;
    }
    left.scale(sign);
    right.scale(sign);
    let peak = left.max_abs().max(right.max_abs());
    let (cls, crs) = (cl * sign, sign);
    let residual = ((cls * pl - crs * pr).abs() + (cls * dl - crs * dr).abs()) / peak;
    // Left side: η = −ξ, so the odd coefficient changes sign.
    let coeffs = [cls * ab[0].0, -cls * ab[0].1, crs * ab[1].0, crs * ab[1].1];
    Ok((Eigenfunction { energy: e, left, right, tail_mismatch: mismatch }, coeffs, residual))
}

/// The normalized eigenfunction of a solution returned by [`eigenvalues`].
pub fn eigenfunction(pot: &PiecewiseQuadratic, sol: &EigenSolution) -> Result<Eigenfunction> {
    build_eigenfunction(pot, sol.energy).map(|r| r.0)
}

pub fn node_count(pot: &PiecewiseQuadratic, sol: &EigenSolution) -> Result<usize> {
    Ok(eigenfunction(pot, sol)?.node_count())
}

/// Energies known in closed form inside [e_min, e_max].
fn exact_roots(pot: &PiecewiseQuadratic, e_min: f64, e_max: f64) -> Result<Vec<(f64, Option<HermiteState>)>> {
    let mut out: Vec<(f64, Option<HermiteState>)> =
        hermite_states(pot, e_max)?.into_iter().filter(|h| h.energy >= e_min).map(|h| (h.energy, Some(h))).collect();
    if let Some(ell) = pot.step_ell() {
        out.extend(algebraic_eigenvalues(ell)?.into_iter().filter(|&e| e >= e_min && e <= e_max).map(|e| (e, None)));
    }
    Ok(out)
}

fn scan(pot: &PiecewiseQuadratic, a: f64, b: f64, step: f64) -> Result<Vec<f64>> {
    let n = ((b - a) / step).ceil().max(1.0) as usize;
    let h = (b - a) / n as f64;
    let d = |e: f64| spectral_determinant(pot, e);
    let mut roots = Vec::new();
    let (mut e0, mut f0) = (a, d(a));
    if f0 == 0.0 {
        roots.push(a);
    }
    for i in 1..=n {
        let e1 = if i == n { b } else { a + h * i as f64 };
        let f1 = d(e1);
        if !f1.is_finite() {
            return Err(Error::NonConvergence(format!("spectral determinant undefined at E = {e1}")));
        }
        if f1 == 0.0 {
            roots.push(e1);
        } else if f0 != 0.0 && f0.signum() != f1.signum() {
            roots.push(brent(d, e0, e1, 1e-13 * e1.abs().max(1.0))?);
        }
        e0 = e1;
        f0 = f1;
    }
    Ok(roots)
}

/// Every eigenvalue in [e_min, e_max], ascending, from a sign scan of the
/// spectral determinant with closed-form roots substituted in.
///
/// Consecutive solutions must differ by exactly one node; a larger jump
/// means a pair of roots slipped between scan points, and that interval is
/// rescanned more finely.
pub fn eigenvalues(pot: &PiecewiseQuadratic, e_min: f64, e_max: f64) -> Result<Vec<EigenSolution>> {
    if !(e_min < e_max) {
        return Err(Error::InvalidParameter(format!("empty energy window [{e_min}, {e_max}]")));
    }
    let mut roots = scan(pot, e_min, e_max, SCAN_STEP)?;
    let mut exact_flags = vec![false; roots.len()];
    let mut hermite: Vec<Option<HermiteState>> = vec![None; roots.len()];
    for (e, h) in exact_roots(pot, e_min, e_max)? {
        let d = spectral_determinant(pot, e);
        if d.abs() > 1e-9 {
            return Err(Error::NonConvergence(format!("closed-form root E = {e} leaves determinant {d}")));
        }
        match roots.iter().position(|&r| (r - e).abs() <= 1e-8 * e.abs().max(1.0)) {
            Some(i) => {
                roots[i] = e;
                exact_flags[i] = true;
                hermite[i] = h;
            }
            None => {
                roots.push(e);
                exact_flags.push(true);
                hermite.push(h);
            }
        }
    }
    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&i, &j| roots[i].total_cmp(&roots[j]));
    let mut sols: Vec<EigenSolution> = Vec::new();
    for i in order {
        sols.push(solution_at(pot, roots[i], exact_flags[i], hermite[i].take())?);
    }
    refine_gaps(pot, sols)
}

fn solution_at(pot: &PiecewiseQuadratic, e: f64, exact: bool, h: Option<HermiteState>) -> Result<EigenSolution> {
    let (ef, coeffs, residual) = build_eigenfunction(pot, e)?;
    let tag = match h {
        Some(h) => StateTag::Hermite { left_order: h.left_order, right_order: h.right_order, ratio: h.ratio },
        None => StateTag::Hypergeometric,
    };
    Ok(EigenSolution { energy: e, coeffs, nodes: ef.node_count(), tag, exact, residual })
}

fn refine_gaps(pot: &PiecewiseQuadratic, mut sols: Vec<EigenSolution>) -> Result<Vec<EigenSolution>> {
    let mut i = 0;
    while i + 1 < sols.len() {
        let jump = sols[i + 1].nodes as i64 - sols[i].nodes as i64;
        if jump == 1 {
            i += 1;
            continue;
        }
        if jump < 1 {
            return Err(Error::NonConvergence(format!(
                "levels at E = {} and {} have {} and {} nodes",
                sols[i].energy, sols[i + 1].energy, sols[i].nodes, sols[i + 1].nodes
            )));
        }
        let (a, b) = (sols[i].energy, sols[i + 1].energy);
        let mut step = SCAN_STEP / 8.0;
        let mut found = Vec::new();
        while step > 1e-6 {
            let pad = 1e-9 * a.abs().max(1.0);
            found = scan(pot, a + pad, b - pad, step)?;
            if found.len() as i64 >= jump - 1 {
                break;
            }
            step /= 8.0;
        }
        if (found.len() as i64) < jump - 1 {
            return Err(Error::NonConvergence(format!("missed {} level(s) between E = {a} and E = {b}", jump - 1 - found.len() as i64)));
        }
        let extra: Result<Vec<_>> = found.into_iter().map(|e| solution_at(pot, e, false, None)).collect();
        let tail = sols.split_off(i + 1);
        sols.extend(extra?);
        sols.extend(tail);
    }
    Ok(sols)
}

/// The first `count` eigenvalues, starting below the lowest potential floor.
pub fn lowest_levels(pot: &PiecewiseQuadratic, count: usize) -> Result<Vec<EigenSolution>> {
    let floor = pot.left.floor().min(pot.right.floor()).min(pot.potential(0.0)).min(pot.left.eval(0.0));
    let e_min = floor - 1.0;
    let mut e_max = e_min + 2.5 * count as f64 + 4.0;
    for _ in 0..32 {
        let sols = eigenvalues(pot, e_min, e_max)?;
        if sols.len() > count {
            if sols.first().map_or(false, |s| s.nodes != 0) {
                return Err(Error::NonConvergence(format!("lowest level found has {} nodes", sols[0].nodes)));
            }
            return Ok(sols.into_iter().take(count).collect());
        }
        e_max += 2.0 * count as f64 + 4.0;
    }
    Err(Error::BracketFailure(format!("could not enclose {count} levels")))
}

/// ⟨ψ_a, ψ_b⟩ by Simpson's rule over the union of supports.
pub fn overlap(a: &Eigenfunction, b: &Eigenfunction) -> f64 {
    let (la, ra) = a.support();
    let (lb, rb) = b.support();
    let (lo, hi) = (la.min(lb), ra.max(rb));
    let integrate = |lo: f64, hi: f64| {
        let n = (((hi - lo) / 1e-3).ceil() as usize).max(2);
        let n = n + n % 2;
        let h = (hi - lo) / n as f64;
        let f = |x: f64| a.value(x) * b.value(x);
        let mut s = f(lo) + f(hi);
        for i in 1..n {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(lo + h * i as f64);
        }
        s * h / 3.0
    };
    // Split at the origin, where ψ″ jumps.
    integrate(lo, 0.0) + integrate(0.0, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_side_ground_state_is_gaussian() {
        let pot = PiecewiseQuadratic::step(0.0).unwrap();
        let [even, _] = side_solution(&pot, Side::Right, 0.0, 0.0).unwrap();
        assert_eq!(even, (1.0, 0.0));
        for x in [0.3, 1.1, 2.0] {
            let [even, _] = side_solution(&pot, Side::Right, 0.0, x).unwrap();
            assert!((even.0 - (-x * x / 2.0).exp()).abs() < 1e-14);
        }
    }

    #[test]
    fn terminating_members() {
        let pot = PiecewiseQuadratic::step(0.0).unwrap();
        for x in [0.2, 0.9, 1.7] {
            let g = (-x * x / 2.0_f64).exp();
            let [_, odd] = side_solution(&pot, Side::Right, 2.0, x).unwrap();
            assert!((odd.0 - x * g).abs() < 1e-14);
            // ₁F₁(−1; ½; x²) = 1 − 2x².
            let [even, _] = side_solution(&pot, Side::Right, 4.0, x).unwrap();
            assert!((even.0 - (1.0 - 2.0 * x * x) * g).abs() < 1e-13);
        }
    }

    #[test]
    fn ramp_side_is_centred_at_minus_half_g() {
        let pot = PiecewiseQuadratic::step_ramp(2.0, -1.0).unwrap();
        assert_eq!(pot.left.centre(), 0.5);
        let [even, odd] = side_solution(&pot, Side::Left, 0.3, 0.5).unwrap();
        assert_eq!(even.0, 1.0);
        assert_eq!(odd.0, 0.0);
    }

    #[test]
    fn determinant_vanishes_at_oscillator_levels() {
        let pot = PiecewiseQuadratic::step(0.0).unwrap();
        for n in 0..6 {
            assert!(spectral_determinant(&pot, 2.0 * n as f64).abs() < 1e-14);
            assert!(spectral_determinant(&pot, 2.0 * n as f64 + 1.0).abs() > 0.1);
        }
    }

    #[test]
    fn algebraic_roots_small_ell() {
        assert_eq!(algebraic_eigenvalues(1).unwrap(), vec![-3.0]);
        let r = algebraic_eigenvalues(2).unwrap();
        let s3 = 3f64.sqrt();
        assert!((r[0] - (-5.0 - s3)).abs() < 1e-13 && (r[1] - (-5.0 + s3)).abs() < 1e-13);
    }

    #[test]
    fn hermite_values_at_zero() {
        assert_eq!(hermite_at_zero(0), BigInt::from(1));
        assert_eq!(hermite_at_zero(2), BigInt::from(-2));
        assert_eq!(hermite_at_zero(4), BigInt::from(12));
        assert_eq!(hermite_at_zero(6), BigInt::from(-120));
        assert_eq!(hermite_at_zero(3), BigInt::from(0));
    }

    #[test]
    fn taylor_reproduces_the_gaussian() {
        let pot = PiecewiseQuadratic::step(0.0).unwrap();
        let sols = eigenvalues(&pot, -0.5, 0.5).unwrap();
        let ef = eigenfunction(&pot, &sols[0]).unwrap();
        let norm = PI.powf(-0.25);
        for x in [-2.3, -0.40017, 0.0, 1.23456] {
            let c = ef.taylor(x, 3, Side::Right).unwrap();
            let g = norm * (-x * x / 2.0_f64).exp();
            assert!((c[0] - g).abs() < 1e-12, "{x}");
            assert!((c[1] + x * g).abs() < 1e-12);
            assert!((c[2] - (x * x - 1.0) * g / 2.0).abs() < 1e-12);
        }
        assert!(ef.taylor(40.0, 1, Side::Right).is_err());
    }
}
