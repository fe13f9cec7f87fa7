//! Scalar special functions: log-Gamma, reciprocal Gamma and Kummer's
//! confluent hypergeometric function ₁F₁(a; c; z) for real arguments.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Euler–Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

/// Lanczos coefficients for g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Beyond this |z| the series gives way to the large-argument expansion.
pub const KUMMER_CROSSOVER: f64 = 40.0;

/// Arguments of ₁F₁(a; c; z).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KummerParams {
    pub a: f64,
    pub c: f64,
    pub z: f64,
}

impl KummerParams {
    pub fn new(a: f64, c: f64, z: f64) -> Self {
        Self { a, c, z }
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// sin(πx) with exact argument reduction, so zeros at the integers are exact.
fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let s = (PI * r).sin();
    if (n as i64).rem_euclid(2) == 0 {
        s
    } else {
        -s
    }
}

/// ζ(k) for k ≥ 2 by a short direct sum plus Euler–Maclaurin tail.
fn zeta_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = 40.0f64;
        (0..72)
            .map(|k| {
                if k < 2 {
                    return f64::NAN;
                }
                let s = k as f64;
                let head: f64 = (1..40).rev().map(|j| (j as f64).powf(-s)).sum();
                let tail = n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s) + s * n.powf(-s - 1.0) / 12.0
                    - s * (s + 1.0) * (s + 2.0) * n.powf(-s - 3.0) / 720.0
                    + s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * n.powf(-s - 5.0) / 30240.0;
                head + tail
            })
            .collect()
    })
}

/// ln Γ(1 + ε) for |ε| ≤ 1/2 from the Taylor series −γε + Σ (−ε)^k ζ(k)/k.
fn ln_gamma_1p(eps: f64) -> f64 {
    let z = zeta_table();
    let mut sum = -EULER_GAMMA * eps;
    let mut p = -eps;
    for (k, zk) in z.iter().enumerate().skip(2) {
        p *= -eps;
        let term = zk * p / k as f64;
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

fn ln_gamma_lanczos(x: f64) -> f64 {
    // Valid for x ≥ 1/2.
    let xm = x - 1.0;
    let mut a = LANCZOS[0];
    let t = xm + LANCZOS_G + 0.5;
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (xm + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (xm + 0.5) * t.ln() - t + a.ln()
}

/// ln|Γ(x)| for x > 0.
fn ln_gamma_positive(x: f64) -> f64 {
    if x < 0.5 {
        // Γ(x) = Γ(1 + x)/x.
        ln_gamma_1p(x) - x.ln()
    } else if x <= 1.5 {
        ln_gamma_1p(x - 1.0)
    } else if x <= 2.5 {
        let e = x - 2.0;
        e.ln_1p() + ln_gamma_1p(e)
    } else {
        ln_gamma_lanczos(x)
    }
}

/// Returns `(ln|Γ(x)|, sign Γ(x))`.
///
/// Relative accuracy is near machine precision on |x| ≤ 50, including the
/// neighbourhoods of x = 1 and x = 2 where ln Γ vanishes.
pub fn log_gamma(x: f64) -> Result<(f64, i32)> {
    if !x.is_finite() {
        return Err(Error::InvalidParameter(format!("log_gamma of non-finite {x}")));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x > 0.0 {
        return Ok((ln_gamma_positive(x), 1));
    }
    // Reflection Γ(x)Γ(1−x) = π / sin(πx).
    let s = sin_pi(x);
    let lg = PI.ln() - s.abs().ln() - ln_gamma_positive(1.0 - x);
    let sign = if s < 0.0 { -1 } else { 1 };
    Ok((lg, sign))
}

/// 1/Γ(x), an entire function: exactly zero at x = 0, −1, −2, …
pub fn recip_gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x >= 0.5 {
        if x > 180.0 {
            return 0.0;
        }
        (-ln_gamma_positive(x)).exp()
    } else {
        // 1/Γ(x) = Γ(1 − x) sin(πx) / π, smooth through the zeros.
        sin_pi(x) / PI * ln_gamma_positive(1.0 - x).exp()
    }
}

/// Power series Σ (a)_k z^k / ((c)_k k!) with compensated summation.
fn kummer_series(a: f64, c: f64, z: f64) -> Result<f64> {
    let mut sum = 1.0f64;
    let mut comp = 0.0f64;
    let mut term = 1.0f64;
    let kmin = if a < 0.0 { (-a).ceil() as usize } else { 0 };
    let mut small = 0;
    for k in 0..20_000usize {
        let kf = k as f64;
        term *= (a + kf) / (c + kf) * z / (kf + 1.0);
        if term == 0.0 {
            return Ok(sum + comp);
        }
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if k > kmin && kf > z.abs() && term.abs() <= 1e-17 * sum.abs() {
            small += 1;
            if small >= 3 {
                return Ok(sum - comp);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence(format!("1F1 series ({a}, {c}, {z})")))
}

/// Asymptotic sum Σ (p)_k (q)_k / k! · w^{-k}, truncated at its smallest term.
/// Returns `None` if the smallest term is not below the target tolerance.
fn asymptotic_sum(p: f64, q: f64, w: f64) -> Option<f64> {
    let mut sum = 1.0;
    let mut term = 1.0f64;
    let mut prev = f64::INFINITY;
    for k in 0..400usize {
        let kf = k as f64;
        let next = term * (p + kf) * (q + kf) / ((kf + 1.0) * w);
        if next == 0.0 {
            return Some(sum);
        }
        if next.abs() > prev {
            break;
        }
        sum += next;
        if next.abs() <= 1e-16 * sum.abs() {
            return Some(sum);
        }
        prev = next.abs();
        term = next;
    }
    if prev <= 1e-11 * sum.abs() {
        Some(sum)
    } else {
        None
    }
}

/// Large positive z: Γ(c)/Γ(a) e^z z^{a−c} S₁ + Γ(c)/Γ(c−a) cos(πa) z^{−a} S₂.
fn kummer_asymptotic_positive(a: f64, c: f64, z: f64) -> Option<f64> {
    let (lgc, sgc) = log_gamma(c).ok()?;
    let gc = sgc as f64 * lgc.exp();
    let s1 = asymptotic_sum(c - a, 1.0 - a, z)?;
    let dominant = gc * recip_gamma(a) * (z + (a - c) * z.ln()).exp() * s1;
    let s2 = asymptotic_sum(a, a - c + 1.0, -z).unwrap_or(1.0);
    let sub = gc * recip_gamma(c - a) * (PI * a).cos() * (-a * z.ln()).exp() * s2;
    Some(dominant + sub)
}

fn kummer_positive(a: f64, c: f64, z: f64) -> Result<f64> {
    let terminating = is_nonpositive_integer(a);
    if z <= KUMMER_CROSSOVER || terminating {
        return kummer_series(a, c, z);
    }
    match kummer_asymptotic_positive(a, c, z) {
        Some(v) if v.is_finite() => Ok(v),
        _ if z <= 700.0 => kummer_series(a, c, z),
        _ => Err(Error::NonConvergence(format!("1F1 ({a}, {c}, {z}): neither regime converged"))),
    }
}

/// Kummer's function ₁F₁(a; c; z).
///
/// Non-negative arguments are summed directly below the crossover and by the
/// large-argument expansion above it; negative arguments go through Kummer's
/// transformation ₁F₁(a; c; z) = e^z ₁F₁(c − a; c; −z), which avoids the
/// alternating-series cancellation.
pub fn kummer_1f1(p: KummerParams) -> Result<f64> {
    let KummerParams { a, c, z } = p;
    if !(a.is_finite() && c.is_finite() && z.is_finite()) {
        return Err(Error::InvalidParameter(format!("non-finite 1F1 argument ({a}, {c}, {z})")));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::InvalidParameter(format!("1F1 lower parameter c = {c} is a non-positive integer")));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z > 0.0 {
        return kummer_positive(a, c, z);
    }
    if is_nonpositive_integer(a) {
        // Polynomial with sign-coherent terms for z < 0.
        return kummer_series(a, c, z);
    }
    Ok(z.exp() * kummer_positive(c - a, c, -z)?)
}

/// d/dz ₁F₁(a; c; z) = (a/c) ₁F₁(a + 1; c + 1; z).
pub fn kummer_1f1_dz(p: KummerParams) -> Result<f64> {
    if is_nonpositive_integer(p.c) {
        return Err(Error::InvalidParameter(format!("1F1 lower parameter c = {} is a non-positive integer", p.c)));
    }
    if p.a == 0.0 {
        return Ok(0.0);
    }
    Ok(p.a / p.c * kummer_1f1(KummerParams::new(p.a + 1.0, p.c + 1.0, p.z))?)
}
