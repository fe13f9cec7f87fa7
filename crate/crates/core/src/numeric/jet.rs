//! Truncated Taylor series ("jets") for exact propagation of low-order derivatives.
//!
//! A jet of order `k` stores `f(x0), f'(x0), f''(x0)/2!, …, f^(k)(x0)/k!`.
//! Arithmetic is exact up to the truncation order, so determinants of jets
//! give Wronskians together with their first derivatives without finite
//! differences.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    c: Vec<f64>,
}

impl Jet {
    /// Constant jet of the given order.
    pub fn constant(v: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = v;
        Self { c }
    }

    /// Builds a jet from derivative values `[f, f', f'', …]`.
    pub fn from_derivatives(d: &[f64]) -> Self {
        let mut fact = 1.0;
        let c = d
            .iter()
            .enumerate()
            .map(|(k, v)| {
                if k > 1 {
                    fact *= k as f64;
                }
                v / fact
            })
            .collect();
        Self { c }
    }

    /// Builds a jet from Taylor coefficients `[f, f', f''/2!, …]`.
    pub fn from_coeffs(c: Vec<f64>) -> Self {
        assert!(!c.is_empty(), "a jet needs at least one coefficient");
        Self { c }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c
    }

    /// The jet of f′, one order shorter.
    pub fn differentiate(&self) -> Jet {
        if self.c.len() == 1 {
            return Jet::constant(0.0, 0);
        }
        Jet { c: self.c.iter().enumerate().skip(1).map(|(k, v)| k as f64 * v).collect() }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// k-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> f64 {
        let fact: f64 = (1..=k).map(|j| j as f64).product();
        self.c.get(k).copied().unwrap_or(0.0) * fact
    }

    /// Quotient, truncated to the shorter order.
    pub fn div(&self, other: &Jet) -> Jet {
        let n = self.c.len().min(other.c.len());
        let b0 = other.c[0];
        let mut q = vec![0.0; n];
        for k in 0..n {
            let mut s = self.c[k];
            for j in 1..=k {
                s -= other.c[j] * q[k - j];
            }
            q[k] = s / b0;
        }
        Jet { c: q }
    }

    /// Logarithmic derivative `f'/f` as a value.
    pub fn dlog(&self) -> f64 {
        self.c[1] / self.c[0]
    }

    /// Second derivative of `ln f` at the expansion point.
    pub fn d2log(&self) -> f64 {
        let f = self.c[0];
        let f1 = self.c[1];
        let f2 = 2.0 * self.c[2];
        f2 / f - (f1 / f).powi(2)
    }

    pub fn scale(&self, s: f64) -> Jet {
        Jet { c: self.c.iter().map(|v| v * s).collect() }
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        let n = self.c.len().min(rhs.c.len());
        Jet { c: (0..n).map(|k| self.c[k] + rhs.c[k]).collect() }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        let n = self.c.len().min(rhs.c.len());
        Jet { c: (0..n).map(|k| self.c[k] - rhs.c[k]).collect() }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        let n = self.c.len().min(rhs.c.len());
        let mut c = vec![0.0; n];
        for (i, ci) in c.iter_mut().enumerate() {
            *ci = (0..=i).map(|j| self.c[j] * rhs.c[i - j]).sum();
        }
        Jet { c }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

/// Determinant of a square matrix of jets by Laplace expansion along the first row.
pub fn det(m: &[Vec<Jet>]) -> Jet {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square jet matrix required");
    if n == 1 {
        return m[0][0].clone();
    }
    let order = m[0][0].order();
    let mut acc = Jet::constant(0.0, order);
    for col in 0..n {
        let minor: Vec<Vec<Jet>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][col] * &det(&minor);
        acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}
