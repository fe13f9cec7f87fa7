//! Wronskians of quasi-polynomial functions
//! `f(u) = exp(σ q(u)) · Π ℓ_i(u)^{α_i} · P(u)` sharing one exponent
//! polynomial `q` and one set of linear factors `ℓ_i`.
//!
//! The j-th derivative of such a function keeps the same shape with
//! exponents lowered by j, so the Wronskian factorizes into
//! `exp(Σσ q) · Π ℓ_i^{Σα_i − m(m−1)/2} · det Q`, with `det Q` an exact
//! polynomial. Log-derivatives of ratios of such Wronskians are then
//! evaluated without any numerical differentiation.

use crate::error::{Error, Result};
use crate::orthopoly::{count_real_roots, Bound, RationalPoly};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// The shared exponent polynomial and linear factors.
#[derive(Debug, Clone)]
pub(crate) struct Frame {
    pub q: RationalPoly,
    pub factors: Vec<RationalPoly>,
}

#[derive(Debug, Clone)]
pub(crate) struct QuasiFn {
    pub sigma: BigRational,
    pub alpha: Vec<BigRational>,
    pub p: RationalPoly,
}

/// Wronskian in the variable u, in factored form.
#[derive(Debug, Clone)]
pub(crate) struct QuasiWronskian {
    pub sigma: BigRational,
    pub alpha: Vec<BigRational>,
    pub det: RationalPoly,
}

fn product(polys: &[RationalPoly]) -> RationalPoly {
    polys.iter().fold(RationalPoly::one(), |acc, p| acc.mul(p))
}

/// Polynomial parts Q_0 = P, Q_1, …, Q_{m−1} of the successive derivatives.
fn derivative_parts(frame: &Frame, f: &QuasiFn, m: usize) -> Vec<RationalPoly> {
    let all = product(&frame.factors);
    let dq = frame.q.derivative();
    let mut rows = vec![f.p.clone()];
    for j in 1..m {
        let prev = &rows[j - 1];
        let mut next = dq.mul(&all).mul(prev).scale(&f.sigma).add(&all.mul(&prev.derivative()));
        for (i, li) in frame.factors.iter().enumerate() {
            let others: Vec<RationalPoly> =
                frame.factors.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, l)| l.clone()).collect();
            let exponent = &f.alpha[i] - BigRational::from_integer((j as i64 - 1).into());
            next = next.add(&li.derivative().mul(&product(&others)).mul(prev).scale(&exponent));
        }
        rows.push(next);
    }
    rows
}

pub(crate) fn quasi_wronskian(frame: &Frame, fs: &[QuasiFn]) -> QuasiWronskian {
    let m = fs.len();
    if m == 0 {
        return QuasiWronskian {
            sigma: BigRational::zero(),
            alpha: vec![BigRational::zero(); frame.factors.len()],
            det: RationalPoly::one(),
        };
    }
    let cols: Vec<Vec<RationalPoly>> = fs.iter().map(|f| derivative_parts(frame, f, m)).collect();
    let matrix: Vec<Vec<RationalPoly>> = (0..m).map(|j| (0..m).map(|k| cols[k][j].clone()).collect()).collect();
    let det = crate::orthopoly::poly_det(&matrix);
    let shift = BigRational::from_integer(((m * (m - 1) / 2) as i64).into());
    let sigma = fs.iter().fold(BigRational::zero(), |acc, f| acc + &f.sigma);
    let alpha = (0..frame.factors.len())
        .map(|i| fs.iter().fold(BigRational::zero(), |acc, f| acc + &f.alpha[i]) - &shift)
        .collect();
    QuasiWronskian { sigma, alpha, det }
}

fn f64_of(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `ln |A(u)/B(u)|` for two factored Wronskians, with its first two u-derivatives.
#[derive(Debug, Clone)]
pub(crate) struct LogRatio {
    sigma: f64,
    dq: RationalPoly,
    d2q: RationalPoly,
    factors: Vec<(f64, RationalPoly, f64)>,
    num: [RationalPoly; 3],
    den: [RationalPoly; 3],
}

fn with_derivatives(p: &RationalPoly) -> [RationalPoly; 3] {
    let d = p.derivative();
    let d2 = d.derivative();
    [p.clone(), d, d2]
}

impl LogRatio {
    pub fn new(frame: &Frame, num: &QuasiWronskian, den: &QuasiWronskian) -> Self {
        let factors = frame
            .factors
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let slope = l.derivative().coeffs().first().map(f64_of).unwrap_or(0.0);
                (f64_of(&(&num.alpha[i] - &den.alpha[i])), l.clone(), slope)
            })
            .collect();
        let dq = frame.q.derivative();
        Self {
            sigma: f64_of(&(&num.sigma - &den.sigma)),
            d2q: dq.derivative(),
            dq,
            factors,
            num: with_derivatives(&num.det),
            den: with_derivatives(&den.det),
        }
    }

    /// (d/du, d²/du²) of ln|A/B| at u.
    pub fn derivatives(&self, u: f64) -> Result<(f64, f64)> {
        let mut d1 = self.sigma * self.dq.eval(u);
        let mut d2 = self.sigma * self.d2q.eval(u);
        for (e, l, slope) in &self.factors {
            let r = slope / l.eval(u);
            d1 += e * r;
            d2 -= e * r * r;
        }
        for (sgn, p) in [(1.0, &self.num), (-1.0, &self.den)] {
            let v = p[0].eval(u);
            if v == 0.0 {
                return Err(Error::Singular(format!("Wronskian vanishes at u = {u}")));
            }
            let r1 = p[1].eval(u) / v;
            let r2 = p[2].eval(u) / v;
            d1 += sgn * r1;
            d2 += sgn * (r2 - r1 * r1);
        }
        Ok((d1, d2))
    }
}

/// Change of variable x ↦ u for the three polynomial bases.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Variable {
    /// u = c x.
    Linear { c: f64 },
    /// u = c x².
    Quadratic { c: f64 },
    /// u = cos 2x.
    Cos2x,
}

impl Variable {
    /// (u, u′, u″, u‴) at x.
    fn jet(self, x: f64) -> (f64, f64, f64, f64) {
        match self {
            Variable::Linear { c } => (c * x, c, 0.0, 0.0),
            Variable::Quadratic { c } => (c * x * x, 2.0 * c * x, 2.0 * c, 0.0),
            Variable::Cos2x => {
                let (s, co) = (2.0 * x).sin_cos();
                (co, -2.0 * s, -4.0 * co, 8.0 * s)
            }
        }
    }

    /// Open u-interval swept by the x-domain.
    pub fn u_bounds(self) -> (Bound, Bound) {
        match self {
            Variable::Linear { .. } => (Bound::NegInf, Bound::PosInf),
            Variable::Quadratic { .. } => (Bound::At(BigRational::zero()), Bound::PosInf),
            Variable::Cos2x => (Bound::At(-BigRational::one()), Bound::At(BigRational::one())),
        }
    }
}

/// W(x) = −ħ d/dx ln|φ(x)| for φ = (u′)^M · A(u)/B(u), where A, B are
/// Wronskians in u of M+1 and M functions (the power of u′ converts
/// u-Wronskians into x-Wronskians).
#[derive(Debug, Clone)]
pub(crate) struct RatioSuperpotential {
    pub var: Variable,
    pub ratio: LogRatio,
    pub m: usize,
    pub hbar: f64,
}

impl RatioSuperpotential {
    /// Fails with `Inadmissible` if numerator or denominator has a zero in the domain.
    pub fn new(var: Variable, frame: &Frame, seeds: &[QuasiFn], ground: &QuasiFn, hbar: f64) -> Result<Self> {
        let den = quasi_wronskian(frame, seeds);
        let mut all = seeds.to_vec();
        all.push(ground.clone());
        let num = quasi_wronskian(frame, &all);
        if num.det.is_zero() {
            return Err(Error::Inadmissible("seed functions are linearly dependent".into()));
        }
        let (lo, hi) = var.u_bounds();
        for (what, p) in [("denominator", &den.det), ("ground state", &num.det)] {
            let k = count_real_roots(p, &lo, &hi);
            if k > 0 {
                return Err(Error::Inadmissible(format!("{what} Wronskian has {k} zero(s) inside the domain")));
            }
        }
        Ok(Self { var, ratio: LogRatio::new(frame, &num, &den), m: seeds.len(), hbar })
    }

    pub fn w(&self, x: f64) -> f64 {
        let (u, u1, u2, _) = self.var.jet(x);
        match self.ratio.derivatives(u) {
            Ok((d1, _)) => -self.hbar * (self.m as f64 * u2 / u1 + u1 * d1),
            Err(_) => f64::NAN,
        }
    }

    pub fn w_prime(&self, x: f64) -> f64 {
        let (u, u1, u2, u3) = self.var.jet(x);
        match self.ratio.derivatives(u) {
            Ok((d1, d2)) => {
                let m = self.m as f64;
                -self.hbar * (m * (u3 * u1 - u2 * u2) / (u1 * u1) + u2 * d1 + u1 * u1 * d2)
            }
            Err(_) => f64::NAN,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::{classical_poly, ratio, PolyFamily};

    fn hermite_frame() -> Frame {
        Frame { q: RationalPoly::from_i64(&[0, 0, 1]), factors: vec![] }
    }

    fn hermite_fn(n: usize) -> QuasiFn {
        QuasiFn { sigma: ratio(-1, 2), alpha: vec![], p: classical_poly(&PolyFamily::Hermite, n) }
    }

    #[test]
    fn gaussian_prefactor_cancels_in_hermite_wronskian() {
        // W[e^{-u²/2}H_1, e^{-u²/2}H_2] = e^{-u²} W[H_1, H_2].
        let w = quasi_wronskian(&hermite_frame(), &[hermite_fn(1), hermite_fn(2)]);
        assert_eq!(w.sigma, ratio(-1, 1));
        assert_eq!(w.det, RationalPoly::from_i64(&[4, 0, 8]));
    }

    #[test]
    fn no_seeds_reproduces_the_base_superpotential() {
        let rs = RatioSuperpotential::new(Variable::Linear { c: 1.0 }, &hermite_frame(), &[], &hermite_fn(0), 1.0)
            .unwrap();
        for x in [-2.0, 0.3, 1.7] {
            assert!((rs.w(x) - x).abs() < 1e-14);
            assert!((rs.w_prime(x) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn radial_base_from_laguerre_frame() {
        // φ_0 = e^{-z/2} z^{g/2}, z = x²: W = x − g/x.
        let g = 3.0;
        let frame = Frame { q: RationalPoly::x(), factors: vec![RationalPoly::x()] };
        let ground = QuasiFn { sigma: ratio(-1, 2), alpha: vec![ratio(3, 2)], p: RationalPoly::one() };
        let rs = RatioSuperpotential::new(Variable::Quadratic { c: 1.0 }, &frame, &[], &ground, 1.0).unwrap();
        for x in [0.4, 1.0, 2.5] {
            assert!((rs.w(x) - (x - g / x)).abs() < 1e-13);
            assert!((rs.w_prime(x) - (1.0 + g / (x * x))).abs() < 1e-12);
        }
    }
}
