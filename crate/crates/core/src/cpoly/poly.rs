use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Degree of a polynomial. The zero polynomial has degree `NegInfinity`,
/// so `Finite(0)` always means a nonzero constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Univariate polynomial with complex coefficients in ascending degree.
///
/// The coefficient vector never carries exact trailing zeros, so the last
/// entry (if any) is the nonzero leading coefficient.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "PolyRepr")]
pub struct ComplexPoly {
    coeffs: Vec<C64>,
}

#[derive(Deserialize)]
struct PolyRepr {
    coeffs: Vec<C64>,
}

impl From<PolyRepr> for ComplexPoly {
    fn from(r: PolyRepr) -> Self {
        ComplexPoly::new(r.coeffs)
    }
}

impl ComplexPoly {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == C64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        ComplexPoly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        ComplexPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C64::new(1.0, 0.0))
    }

    pub fn constant(c: C64) -> Self {
        Self::new(vec![c])
    }

    /// `c * z^k`
    pub fn monomial(c: C64, k: usize) -> Self {
        let mut v = vec![C64::new(0.0, 0.0); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Self::monomial(C64::new(1.0, 0.0), 1)
    }

    /// `lead * prod (z - r)^m`
    pub fn from_roots(lead: C64, roots: &[(C64, usize)]) -> Self {
        let mut coeffs = vec![lead];
        for &(r, m) in roots {
            for _ in 0..m {
                coeffs.push(C64::new(0.0, 0.0));
                for k in (1..coeffs.len()).rev() {
                    let prev = coeffs[k - 1];
                    coeffs[k] = prev - r * coeffs[k];
                }
                coeffs[0] *= -r;
            }
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C64> {
        self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree with the zero polynomial mapped to 0; for sizing buffers.
    pub fn len_degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> C64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    /// Largest coefficient modulus.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: C64) -> (C64, C64) {
        let mut p = C64::new(0.0, 0.0);
        let mut dp = C64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = Vec::with_capacity(self.coeffs.len() + 1);
        v.push(C64::new(0.0, 0.0));
        v.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| c / (k + 1) as f64),
        );
        Self::new(v)
    }

    pub fn scaled(&self, s: C64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Polynomial with every coefficient conjugated.
    pub fn conj_coeffs(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    /// `z^n p(1/z)` for `n >= deg p`.
    pub fn reversed(&self, n: usize) -> Self {
        assert!(self.is_zero() || self.len_degree() <= n);
        let mut v = vec![C64::new(0.0, 0.0); n + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            v[n - k] = c;
        }
        Self::new(v)
    }

    /// Multiply by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![C64::new(0.0, 0.0); k];
        v.extend_from_slice(&self.coeffs);
        Self::new(v)
    }

    /// Number of exactly-zero low order coefficients (the multiplicity of
    /// the root at the origin).
    pub fn low_order_zeros(&self) -> usize {
        self.coeffs
            .iter()
            .take_while(|c| **c == C64::new(0.0, 0.0))
            .count()
    }

    /// Divide by `z^k`, dropping the `k` lowest coefficients.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().skip(k).copied().collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Drop leading coefficients whose modulus is below `rel * scale()`.
    pub fn trim_relative(&self, rel: f64) -> Self {
        let thresh = rel * self.scale();
        let mut v = self.coeffs.clone();
        while v.last().is_some_and(|c| c.norm() <= thresh) {
            v.pop();
        }
        Self::new(v)
    }

    /// Polynomial long division, `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &ComplexPoly) -> Result<(ComplexPoly, ComplexPoly)> {
        if d.is_zero() {
            return Err(Error::Domain("polynomial division by zero".into()));
        }
        let dd = d.len_degree();
        if self.is_zero() || self.len_degree() < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut r = self.coeffs.clone();
        let lead = d.leading();
        let qlen = r.len() - dd;
        let mut q = vec![C64::new(0.0, 0.0); qlen];
        for k in (0..qlen).rev() {
            let c = r[k + dd] / lead;
            q[k] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= c * dc;
            }
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    /// Synthetic division by `(z - root)`; returns quotient and remainder.
    pub fn deflate(&self, root: C64) -> (ComplexPoly, C64) {
        if self.is_zero() {
            return (Self::zero(), C64::new(0.0, 0.0));
        }
        let n = self.coeffs.len();
        let mut q = vec![C64::new(0.0, 0.0); n - 1];
        let mut acc = C64::new(0.0, 0.0);
        for k in (0..n).rev() {
            acc = acc * root + self.coeffs[k];
            if k > 0 {
                q[k - 1] = acc;
            }
        }
        (Self::new(q), acc)
    }

    /// Fujiwara bound `2 max |a_k / a_n|^(1/(n-k))` on the root moduli, at
    /// least 1. Unchanged by rescaling the polynomial.
    pub fn root_scale(&self) -> f64 {
        let n = self.len_degree();
        let lead = self.leading().norm();
        let mut b: f64 = 0.0;
        for k in 0..n {
            let mut r = self.coeffs[k].norm() / lead;
            if k == 0 {
                r /= 2.0;
            }
            b = b.max(r.powf(1.0 / (n - k) as f64));
        }
        (2.0 * b).max(1.0)
    }

    /// Quotient by `(z - root)` for a known root, dividing from the low end
    /// when `|root| > 1` so that the recurrence contracts.
    pub fn remove_root(&self, root: C64) -> ComplexPoly {
        if root.norm() <= 1.0 || self.coeffs.len() < 2 {
            return self.deflate(root).0;
        }
        let n = self.coeffs.len();
        let mut q = vec![C64::new(0.0, 0.0); n - 1];
        let mut prev = C64::new(0.0, 0.0);
        for (k, out) in q.iter_mut().enumerate() {
            prev = (prev - self.coeffs[k]) / root;
            *out = prev;
        }
        Self::new(q)
    }

    /// Coefficients of `t -> p(a + t)`, i.e. the Taylor coefficients of
    /// `p` at `a`. The result has the same length as `coeffs()`.
    pub fn taylor_at(&self, a: C64) -> Vec<C64> {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for k in (i..n - 1).rev() {
                let next = c[k + 1];
                c[k] += a * next;
            }
        }
        c
    }
}

impl From<C64> for ComplexPoly {
    fn from(c: C64) -> Self {
        Self::constant(c)
    }
}

impl Add for &ComplexPoly {
    type Output = ComplexPoly;
    fn add(self, rhs: &ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &ComplexPoly {
    type Output = ComplexPoly;
    fn sub(self, rhs: &ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &ComplexPoly {
    type Output = ComplexPoly;
    fn mul(self, rhs: &ComplexPoly) -> ComplexPoly {
        if self.is_zero() || rhs.is_zero() {
            return ComplexPoly::zero();
        }
        let mut v = vec![C64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        ComplexPoly::new(v)
    }
}

impl Neg for &ComplexPoly {
    type Output = ComplexPoly;
    fn neg(self) -> ComplexPoly {
        ComplexPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ComplexPoly {
            type Output = ComplexPoly;
            fn $m(self, rhs: ComplexPoly) -> ComplexPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn zero_polynomial_has_negative_infinite_degree() {
        assert_eq!(ComplexPoly::zero().degree(), Degree::NegInfinity);
        assert_eq!(ComplexPoly::from_real(&[0.0, 0.0]).degree(), Degree::NegInfinity);
        assert_eq!(ComplexPoly::from_real(&[3.0]).degree(), Degree::Finite(0));
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn remove_large_and_small_roots() {
        let roots = [(c(20.0, -5.0), 1), (c(0.01, 0.02), 1), (c(1.5, 0.0), 1)];
        let p = ComplexPoly::from_roots(c(1.0, 0.0), &roots);
        for (r, _) in roots {
            let rest: Vec<_> = roots.iter().filter(|x| x.0 != r).copied().collect();
            let expect = ComplexPoly::from_roots(c(1.0, 0.0), &rest);
            let q = p.remove_root(r);
            for k in 0..3 {
                assert!((q.coeff(k) - expect.coeff(k)).norm() < 1e-12 * expect.scale());
            }
        }
    }

    #[test]
    fn antiderivative_of_3z2() {
        let p = ComplexPoly::from_real(&[0.0, 0.0, 3.0]);
        assert_eq!(p.antiderivative(), ComplexPoly::from_real(&[0.0, 0.0, 0.0, 1.0]));
        assert_eq!(p.antiderivative().derivative(), p);
    }

    #[test]
    fn long_division() {
        // z^3 / (z - 1) = z^2 + z + 1 remainder 1
        let n = ComplexPoly::from_real(&[0.0, 0.0, 0.0, 1.0]);
        let d = ComplexPoly::from_real(&[-1.0, 1.0]);
        let (q, r) = n.div_rem(&d).unwrap();
        assert_eq!(q, ComplexPoly::from_real(&[1.0, 1.0, 1.0]));
        assert_eq!(r, ComplexPoly::from_real(&[1.0]));
        assert!(n.div_rem(&ComplexPoly::zero()).is_err());
    }

    #[test]
    fn from_roots_and_deflate() {
        let p = ComplexPoly::from_roots(c(1.0, 0.0), &[(c(2.0, 0.0), 2), (c(0.5, 0.0), 1)]);
        assert_eq!(p, ComplexPoly::from_real(&[-2.0, 6.0, -4.5, 1.0]));
        let (q, r) = p.deflate(c(0.5, 0.0));
        assert!(r.norm() < 1e-15);
        assert_eq!(q, ComplexPoly::from_real(&[4.0, -4.0, 1.0]));
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let p = ComplexPoly::new(vec![c(1.0, 2.0), c(-0.5, 0.3), c(0.0, 1.0), c(2.0, -1.0)]);
        let a = c(0.3, -0.7);
        let t = ComplexPoly::new(p.taylor_at(a));
        for &h in &[c(0.1, 0.0), c(-0.2, 0.4), c(1.5, 1.0)] {
            assert!((t.eval(h) - p.eval(a + h)).norm() < 1e-13);
        }
    }

    #[test]
    fn reversed_is_reflection() {
        let p = ComplexPoly::new(vec![c(1.0, 0.0), c(0.0, 2.0)]);
        let r = p.reversed(3);
        let z = c(0.4, 0.9);
        assert!((r.eval(z) - z.powi(3) * p.eval(z.inv())).norm() < 1e-13);
    }
}
