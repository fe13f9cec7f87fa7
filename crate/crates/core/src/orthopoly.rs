//! Exact rational-coefficient polynomials, the classical orthogonal families
//! (Hermite, Laguerre, Jacobi) and their Wronskians.
//!
//! Coefficients are arbitrary-precision rationals so that Wronskians of high
//! degree keep their exact sign structure. Floating-point evaluation goes
//! through a double-double Horner scheme.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::sync::OnceLock;

/// Builds an exact rational from an `f64` (every finite double is a dyadic rational).
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::InvalidParameter(format!("cannot represent {x} exactly")))
}

/// Exact rational p/q.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Double-double number `hi + lo`, |lo| ≤ ulp(hi)/2.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let bb = s - a;
        (s, (a - (s - bb)) + (b - bb))
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = Self::two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = Self::two_sum(s, e);
        Dd { hi, lo }
    }

    fn mul_f64(self, x: f64) -> Dd {
        let p = self.hi * x;
        let e = self.hi.mul_add(x, -p);
        let e = e + self.lo * x;
        let (hi, lo) = Self::two_sum(p, e);
        Dd { hi, lo }
    }
}

/// Univariate polynomial with exact rational coefficients, ascending degree.
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
    dd: OnceLock<Vec<Dd>>,
}

impl Clone for RationalPoly {
    fn clone(&self) -> Self {
        Self::new(self.coeffs.clone())
    }
}

impl PartialEq for RationalPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().enumerate().map(|(k, c)| format!("({c})x^{k}")).collect();
        write!(f, "RationalPoly[{}]", terms.join(" + "))
    }
}

impl RationalPoly {
    /// Builds a polynomial and strips trailing zero coefficients.
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs, dd: OnceLock::new() }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
    }

    pub fn zero() -> Self {
        Self::new(vec![])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `a + b·x`.
    pub fn linear(a: BigRational, b: BigRational) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigRational::zero();
        Self::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) + o.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-BigRational::one()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Composition `p(q(x))`.
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(q).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Exact value at a rational point.
    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn dd_coeffs(&self) -> &[Dd] {
        self.dd.get_or_init(|| {
            self.coeffs
                .iter()
                .map(|c| {
                    let hi = to_f64(c);
                    let lo = match BigRational::from_float(hi) {
                        Some(h) => to_f64(&(c - h)),
                        None => 0.0,
                    };
                    Dd { hi, lo }
                })
                .collect()
        })
    }

    /// Horner evaluation carried in double-double arithmetic.
    pub fn eval(&self, x: f64) -> f64 {
        let c = self.dd_coeffs();
        let mut acc = Dd { hi: 0.0, lo: 0.0 };
        for k in c.iter().rev() {
            acc = acc.mul_f64(x).add(*k);
        }
        acc.hi + acc.lo
    }

    /// Euclidean division by a non-zero polynomial: `(quotient, remainder)`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap_or(0);
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = &rem[k] / &lead;
            if q.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &q * dc;
                rem[k - dd + j] -= t;
            }
            quot[k - dd] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }
}

/// Classical orthogonal polynomial family with exact rational parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum PolyFamily {
    Hermite,
    Laguerre { alpha: BigRational },
    Jacobi { alpha: BigRational, beta: BigRational },
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Generalized binomial coefficient C(t, m) for rational t.
fn binom(t: &BigRational, m: usize) -> BigRational {
    let mut r = BigRational::one();
    for j in 0..m {
        r = r * (t - int(j)) / int(j + 1);
    }
    r
}

/// Degree-n member of a classical family.
///
/// Hermite and Laguerre use their three-term recurrences. Jacobi uses the
/// explicit binomial sum, which stays valid for parameters where the
/// recurrence denominators vanish (e.g. α + β = −1, as for some virtual states).
pub fn classical_poly(family: &PolyFamily, n: usize) -> RationalPoly {
    match family {
        PolyFamily::Hermite => {
            let two_x = RationalPoly::from_i64(&[0, 2]);
            let (mut p0, mut p1) = (RationalPoly::one(), two_x.clone());
            if n == 0 {
                return p0;
            }
            for k in 1..n {
                let p2 = two_x.mul(&p1).sub(&p0.scale(&int(2 * k)));
                p0 = p1;
                p1 = p2;
            }
            p1
        }
        PolyFamily::Laguerre { alpha } => {
            let mut p0 = RationalPoly::one();
            if n == 0 {
                return p0;
            }
            let one = BigRational::one();
            let mut p1 = RationalPoly::linear(alpha + &one, -one.clone());
            for k in 1..n {
                // (k+1) L_{k+1} = (2k + 1 + α − x) L_k − (k + α) L_{k−1}
                let lin = RationalPoly::linear(int(2 * k + 1) + alpha, -one.clone());
                let p2 = lin.mul(&p1).sub(&p0.scale(&(int(k) + alpha))).scale(&(one.clone() / int(k + 1)));
                p0 = p1;
                p1 = p2;
            }
            p1
        }
        PolyFamily::Jacobi { alpha, beta } => {
            let half = ratio(1, 2);
            let xm = RationalPoly::linear(-half.clone(), half.clone()); // (x − 1)/2
            let xp = RationalPoly::linear(half.clone(), half); // (x + 1)/2
            let na = int(n) + alpha;
            let nb = int(n) + beta;
            let mut acc = RationalPoly::zero();
            let mut xm_pow = vec![RationalPoly::one()];
            let mut xp_pow = vec![RationalPoly::one()];
            for k in 1..=n {
                xm_pow.push(xm_pow[k - 1].mul(&xm));
                xp_pow.push(xp_pow[k - 1].mul(&xp));
            }
            for k in 0..=n {
                let c = binom(&na, n - k) * binom(&nb, k);
                acc = acc.add(&xm_pow[k].mul(&xp_pow[n - k]).scale(&c));
            }
            acc
        }
    }
}

/// Exact determinant of a square polynomial matrix by cofactor expansion.
pub fn poly_det(m: &[Vec<RationalPoly>]) -> RationalPoly {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square polynomial matrix required");
    if n == 1 {
        return m[0][0].clone();
    }
    if n == 2 {
        return m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]));
    }
    let mut acc = RationalPoly::zero();
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<RationalPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = m[0][col].mul(&poly_det(&minor));
        acc = if col % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Wronskian det(d^j p_k / dx^j), expanded exactly.
pub fn poly_wronskian(polys: &[RationalPoly]) -> RationalPoly {
    assert!(!polys.is_empty(), "Wronskian of an empty list");
    let m = polys.len();
    let mut rows: Vec<Vec<RationalPoly>> = vec![polys.to_vec()];
    for j in 1..m {
        let next = rows[j - 1].iter().map(RationalPoly::derivative).collect();
        rows.push(next);
    }
    poly_det(&rows)
}

/// Floating-point value of `p` at `x`.
pub fn poly_eval(p: &RationalPoly, x: f64) -> f64 {
    p.eval(x)
}

/// Logarithmic derivative `p'(x)/p(x)`.
pub fn poly_dlog(p: &RationalPoly, x: f64) -> Result<f64> {
    let v = p.eval(x);
    if v == 0.0 {
        return Err(Error::Singular(format!("polynomial vanishes at x = {x}")));
    }
    Ok(p.derivative().eval(x) / v)
}

/// True if the exact polynomial has a sign change or a root inside `(a, b)`,
/// judged on a dense double-double sampling.
pub fn has_root_in(p: &RationalPoly, a: f64, b: f64, samples: usize) -> bool {
    let mut prev = p.eval(a);
    for i in 1..=samples {
        let x = a + (b - a) * i as f64 / samples as f64;
        let v = p.eval(x);
        if v == 0.0 || v.signum() != prev.signum() {
            return true;
        }
        prev = v;
    }
    false
}

/// Sign of the leading coefficient (zero polynomial → 0).
pub fn leading_sign(p: &RationalPoly) -> i32 {
    let l = p.leading();
    if l.is_zero() {
        0
    } else if l.is_positive() {
        1
    } else {
        -1
    }
}

/// A point of the extended real line used as a Sturm-count endpoint.
#[derive(Debug, Clone, PartialEq)]
pub enum Bound {
    NegInf,
    At(BigRational),
    PosInf,
}

fn sign_of(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_at(p: &RationalPoly, b: &Bound) -> i32 {
    match b {
        Bound::At(x) => sign_of(&p.eval_exact(x)),
        Bound::PosInf => leading_sign(p),
        Bound::NegInf => {
            let deg = p.degree().unwrap_or(0);
            if deg % 2 == 0 {
                leading_sign(p)
            } else {
                -leading_sign(p)
            }
        }
    }
}

/// Sturm sequence p, p', −rem(p, p'), …
pub fn sturm_sequence(p: &RationalPoly) -> Vec<RationalPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r.scale(&-BigRational::one()));
    }
    seq
}

fn sign_variations(seq: &[RationalPoly], b: &Bound) -> usize {
    let signs: Vec<i32> = seq.iter().map(|q| sign_at(q, b)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`, exactly.
///
/// Works on the square-free part with any roots sitting on finite endpoints
/// divided out, so that repeated roots and endpoint roots are handled.
pub fn count_real_roots(p: &RationalPoly, lo: &Bound, hi: &Bound) -> usize {
    if p.is_zero() {
        panic!("root count of the zero polynomial");
    }
    if p.degree() == Some(0) {
        return 0;
    }
    let gcd = sturm_sequence(p).pop().expect("non-empty Sturm sequence");
    let mut q = p.div_rem(&gcd).0;
    for b in [lo, hi] {
        if let Bound::At(x) = b {
            if q.eval_exact(x).is_zero() {
                q = q.div_rem(&RationalPoly::linear(-x.clone(), BigRational::one())).0;
            }
        }
    }
    if q.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(&q);
    sign_variations(&seq, lo).saturating_sub(sign_variations(&seq, hi))
}

/// Isolates and refines every real root of `p` in `(lo, hi)` to `xtol`.
///
/// Intervals are split until each contains one root (counted exactly), then
/// the root is polished by bisection on the double-double evaluation.
pub fn real_roots_in(p: &RationalPoly, lo: f64, hi: f64, xtol: f64) -> Result<Vec<f64>> {
    let to_b = |x: f64| rational_from_f64(x).map(Bound::At);
    let mut stack = vec![(lo, hi)];
    let mut roots = Vec::new();
    while let Some((a, b)) = stack.pop() {
        let k = count_real_roots(p, &to_b(a)?, &to_b(b)?);
        if k == 0 {
            continue;
        }
        if k == 1 {
            let (fa, fb) = (p.eval(a), p.eval(b));
            if fa != 0.0 && fb != 0.0 && fa.signum() != fb.signum() {
                roots.push(crate::numeric::roots::bisect(|x| p.eval(x), a, b, xtol)?);
                continue;
            }
        }
        let m = 0.5 * (a + b);
        if b - a < xtol {
            roots.push(m);
            continue;
        }
        if p.eval_exact(&rational_from_f64(m)?).is_zero() {
            roots.push(m);
        }
        stack.push((a, m));
        stack.push((m, b));
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sturm_count_ignores_endpoint_and_repeated_roots() {
        // (x − 1)²(x + 1)(x − 1/2) on (−1, 1): only 1/2 is interior.
        let p = RationalPoly::from_i64(&[-1, 1])
            .mul(&RationalPoly::from_i64(&[-1, 1]))
            .mul(&RationalPoly::from_i64(&[1, 1]))
            .mul(&RationalPoly::new(vec![ratio(-1, 2), BigRational::one()]));
        let b = |v: i64| Bound::At(BigRational::from_integer(v.into()));
        assert_eq!(count_real_roots(&p, &b(-1), &b(1)), 1);
        assert_eq!(count_real_roots(&p, &Bound::NegInf, &Bound::PosInf), 3);
        assert_eq!(count_real_roots(&p, &b(0), &Bound::PosInf), 2);
    }

    #[test]
    fn sturm_counts_hermite_roots() {
        let h5 = classical_poly(&PolyFamily::Hermite, 5);
        assert_eq!(count_real_roots(&h5, &Bound::NegInf, &Bound::PosInf), 5);
        assert_eq!(count_real_roots(&h5, &Bound::At(BigRational::zero()), &Bound::PosInf), 2);
        let w = RationalPoly::from_i64(&[4, 0, 8]);
        assert_eq!(count_real_roots(&w, &Bound::NegInf, &Bound::PosInf), 0);
        let r = real_roots_in(&h5, -5.0, 5.0, 1e-14).unwrap();
        assert_eq!(r.len(), 5);
        assert!(r[2].abs() < 1e-14);
    }

    #[test]
    fn hermite_three() {
        assert_eq!(classical_poly(&PolyFamily::Hermite, 3), RationalPoly::from_i64(&[0, -12, 0, 8]));
    }

    #[test]
    fn laguerre_one() {
        let a = ratio(5, 2);
        let p = classical_poly(&PolyFamily::Laguerre { alpha: a.clone() }, 1);
        assert_eq!(p, RationalPoly::new(vec![a + BigRational::one(), -BigRational::one()]));
    }

    #[test]
    fn wronskian_h1_h2() {
        let h1 = classical_poly(&PolyFamily::Hermite, 1);
        let h2 = classical_poly(&PolyFamily::Hermite, 2);
        let w = poly_wronskian(&[h1, h2]);
        assert_eq!(w, RationalPoly::from_i64(&[4, 0, 8]));
        assert!((poly_dlog(&w, 1.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn eval_and_dlog() {
        let h2 = classical_poly(&PolyFamily::Hermite, 2);
        assert_eq!(poly_eval(&h2, 1.0), 2.0);
        let x2 = RationalPoly::from_i64(&[0, 0, 1]);
        assert!((poly_dlog(&x2, 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(poly_dlog(&x2, 0.0).is_err());
    }

    #[test]
    fn division_round_trip() {
        let a = classical_poly(&PolyFamily::Hermite, 6);
        let b = classical_poly(&PolyFamily::Hermite, 2);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn double_double_evaluation_resists_cancellation() {
        // H_20 near a zero: compare with exact rational evaluation.
        let h = classical_poly(&PolyFamily::Hermite, 20);
        let x = 1.234_567_f64;
        let exact = to_f64(&h.eval_exact(&BigRational::from_float(x).unwrap()));
        assert!(((h.eval(x) - exact) / exact).abs() < 1e-14);
    }
}
