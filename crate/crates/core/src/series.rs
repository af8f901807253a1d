//! Truncated power series ("jets") used for Taylor-mode differentiation
//! of closed-form kernels and for local Laurent data.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64 as C64;

use crate::cpoly::{ComplexPoly, RationalFunction};
use crate::error::{Error, Result};

/// Coefficients `c[0..len]` of `sum c_k h^k + O(h^len)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    c: Vec<C64>,
}

impl Series {
    pub fn new(mut c: Vec<C64>, len: usize) -> Self {
        c.resize(len, C64::new(0.0, 0.0));
        Series { c }
    }

    pub fn zeros(len: usize) -> Self {
        Series::new(Vec::new(), len)
    }

    pub fn constant(v: C64, len: usize) -> Self {
        Series::new(vec![v], len)
    }

    /// `center + h`
    pub fn variable(center: C64, len: usize) -> Self {
        Series::new(vec![center, C64::new(1.0, 0.0)], len)
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeff(&self, k: usize) -> C64 {
        self.c.get(k).copied().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.c
    }

    /// `k!` times the `k`-th coefficient.
    pub fn derivative_value(&self, k: usize) -> C64 {
        self.coeff(k) * factorial(k)
    }

    pub fn truncated(&self, len: usize) -> Series {
        Series::new(self.c.clone(), len)
    }

    pub fn scaled(&self, s: C64) -> Series {
        Series {
            c: self.c.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn conj(&self) -> Series {
        Series {
            c: self.c.iter().map(|x| x.conj()).collect(),
        }
    }

    pub fn add_constant(&self, v: C64) -> Series {
        let mut s = self.clone();
        if let Some(c0) = s.c.first_mut() {
            *c0 += v;
        }
        s
    }

    pub fn recip(&self) -> Result<Series> {
        let n = self.len();
        let c0 = self.coeff(0);
        if c0.norm() == 0.0 {
            return Err(Error::Domain("reciprocal of a series with zero constant term".into()));
        }
        let inv0 = c0.inv();
        let mut r = vec![C64::new(0.0, 0.0); n];
        if n > 0 {
            r[0] = inv0;
        }
        for k in 1..n {
            let s: C64 = (1..=k).map(|j| self.c[j] * r[k - j]).sum();
            r[k] = -s * inv0;
        }
        Ok(Series { c: r })
    }

    pub fn div(&self, rhs: &Series) -> Result<Series> {
        Ok(self * &rhs.recip()?)
    }

    pub fn powi(&self, n: usize) -> Series {
        let mut out = Series::constant(C64::new(1.0, 0.0), self.len());
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Term-wise derivative; the result is one order shorter.
    pub fn derivative(&self) -> Series {
        Series {
            c: self
                .c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &x)| x * k as f64)
                .collect(),
        }
    }

    /// `self(inner(h))`, where `inner` has zero constant term.
    pub fn compose(&self, inner: &Series) -> Series {
        debug_assert!(inner.coeff(0).norm() == 0.0);
        let n = inner.len();
        let mut acc = Series::zeros(n);
        for &c in self.c.iter().rev() {
            acc = (&acc * inner).add_constant(c);
        }
        acc
    }

    /// Compositional inverse of a series `d_1 t + d_2 t^2 + ...` with
    /// `d_1 != 0`: returns `t(h)` with `self(t(h)) = h`.
    pub fn revert(&self) -> Result<Series> {
        let n = self.len();
        let d1 = self.coeff(1);
        if self.coeff(0).norm() != 0.0 || d1.norm() == 0.0 {
            return Err(Error::Domain(
                "series reversion needs zero constant and nonzero linear term".into(),
            ));
        }
        let mut t = Series::new(vec![C64::new(0.0, 0.0), d1.inv()], n);
        for k in 2..n {
            let e = self.compose(&t).coeff(k);
            t.c[k] -= e / d1;
        }
        Ok(t)
    }

    /// Taylor coefficients of a polynomial at `a`.
    pub fn of_poly(p: &ComplexPoly, a: C64, len: usize) -> Series {
        Series::new(p.taylor_at(a), len)
    }

    /// Taylor coefficients of a rational function at a regular point.
    pub fn of_rational(r: &RationalFunction, a: C64, len: usize) -> Result<Series> {
        let num = Series::of_poly(r.num(), a, len);
        let den = Series::of_poly(r.den(), a, len);
        if den.coeff(0).norm() == 0.0 {
            return Err(Error::Pole {
                pole: a,
                coordinate: "w",
                principal_part: Vec::new(),
            });
        }
        num.div(&den)
    }
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).map(|j| j as f64).product()
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let n = self.len().min(rhs.len());
        Series {
            c: (0..n).map(|k| self.c[k] + rhs.c[k]).collect(),
        }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let n = self.len().min(rhs.len());
        Series {
            c: (0..n).map(|k| self.c[k] - rhs.c[k]).collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let n = self.len().min(rhs.len());
        let mut c = vec![C64::new(0.0, 0.0); n];
        for i in 0..n {
            if self.c[i] == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n - i {
                c[i + j] += self.c[i] * rhs.c[j];
            }
        }
        Series { c }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn reciprocal_of_one_minus_h() {
        let s = Series::new(vec![c(1.0, 0.0), c(-1.0, 0.0)], 6);
        let r = s.recip().unwrap();
        for k in 0..6 {
            assert_eq!(r.coeff(k), c(1.0, 0.0));
        }
    }

    #[test]
    fn reversion_inverts_quadratic() {
        // t + 0.4 t^2 = h  =>  t = (-1 + sqrt(1 + 1.6 h)) / 0.8
        let d = Series::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.4, 0.0)], 10);
        let t = d.revert().unwrap();
        let back = d.compose(&t);
        assert!((back.coeff(1) - 1.0).norm() < 1e-15);
        for k in 2..10 {
            assert!(back.coeff(k).norm() < 1e-12, "k={k}");
        }
        let h: f64 = 0.05;
        let exact = (-1.0 + (1.0 + 1.6 * h).sqrt()) / 0.8;
        let approx: C64 = (0..10).map(|k| t.coeff(k) * h.powi(k as i32)).sum();
        assert!((approx.re - exact).abs() < 1e-12);
    }

    #[test]
    fn rational_taylor() {
        // 1/(2 - z) at z = 1: sum (h)^k
        let r = RationalFunction::new(ComplexPoly::one(), ComplexPoly::from_real(&[2.0, -1.0]))
            .unwrap();
        let s = Series::of_rational(&r, c(1.0, 0.0), 5).unwrap();
        for k in 0..5 {
            assert!((s.coeff(k) - 1.0).norm() < 1e-14);
        }
    }
}
