use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::poly::ComplexPoly;
use super::roots::{roots_with, RootOptions};
use crate::error::{Error, Result};

/// Coefficients below this fraction of the largest one are treated as
/// cancellation noise when normalizing.
pub(crate) const COEFF_NOISE: f64 = 1e-13;

/// Quotient `num / den` of complex polynomials; `den` is never zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RationalRepr")]
pub struct RationalFunction {
    num: ComplexPoly,
    den: ComplexPoly,
}

#[derive(Deserialize)]
struct RationalRepr {
    num: ComplexPoly,
    den: ComplexPoly,
}

impl TryFrom<RationalRepr> for RationalFunction {
    type Error = Error;
    fn try_from(r: RationalRepr) -> Result<Self> {
        RationalFunction::new(r.num, r.den)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RationalFunction {
    /// Builds `num / den` with `den` scaled to be monic.
    pub fn new(num: ComplexPoly, den: ComplexPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        let lead = den.leading();
        let s = lead.inv();
        Ok(RationalFunction {
            num: num.scaled(s),
            den: den.scaled(s),
        })
    }

    pub fn from_poly(p: ComplexPoly) -> Self {
        RationalFunction {
            num: p,
            den: ComplexPoly::one(),
        }
    }

    pub fn constant(c: C64) -> Self {
        Self::from_poly(ComplexPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(ComplexPoly::zero())
    }

    pub fn num(&self) -> &ComplexPoly {
        &self.num
    }

    pub fn den(&self) -> &ComplexPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.len_degree() == 0
    }

    /// `max(deg num, deg den)`
    pub fn degree(&self) -> usize {
        self.num.len_degree().max(self.den.len_degree())
    }

    /// Plain quotient of the two Horner values; infinite at a pole.
    pub fn eval(&self, z: C64) -> C64 {
        self.num.eval(z) / self.den.eval(z)
    }

    /// Value at infinity, if finite.
    pub fn at_infinity(&self) -> Option<C64> {
        let (dn, dd) = (self.num.len_degree(), self.den.len_degree());
        if self.num.is_zero() || dn < dd {
            Some(C64::new(0.0, 0.0))
        } else if dn == dd {
            Some(self.num.leading() / self.den.leading())
        } else {
            None
        }
    }

    /// Cancels common roots, drops noise-level leading coefficients and
    /// makes the denominator monic.
    pub fn normalize(&self) -> Result<Self> {
        self.normalize_with(&RootOptions::default())
    }

    pub fn normalize_with(&self, opts: &RootOptions) -> Result<Self> {
        let mut num = self.num.trim_relative(COEFF_NOISE);
        let mut den = self.den.trim_relative(COEFF_NOISE);
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let k = num.low_order_zeros().min(den.low_order_zeros());
        num = num.shift_down(k);
        den = den.shift_down(k);
        // deflation would smear rounding into exact low-order zeros
        let (kn, kd) = (num.low_order_zeros(), den.low_order_zeros());
        num = num.shift_down(kn);
        den = den.shift_down(kd);
        if num.len_degree() >= 1 && den.len_degree() >= 1 {
            let radius = 1e-8f64.max(opts.tol * num.root_scale().min(den.root_scale()));
            let nr = roots_with(&num, opts)?;
            let dr = roots_with(&den, opts)?;
            let mut nr_left: Vec<(C64, usize)> = nr;
            for (r, m) in dr {
                if let Some(slot) = nr_left
                    .iter_mut()
                    .filter(|s| s.1 > 0)
                    .min_by(|a, b| (a.0 - r).norm().total_cmp(&(b.0 - r).norm()))
                {
                    if (slot.0 - r).norm() <= radius {
                        let common = slot.1.min(m);
                        let root = (slot.0 + r) * 0.5;
                        for _ in 0..common {
                            num = num.remove_root(root);
                            den = den.remove_root(root);
                        }
                        slot.1 -= common;
                    }
                }
            }
        }
        Self::new(num.shift_up(kn), den.shift_up(kd))
    }

    pub fn derivative(&self) -> Self {
        let (n, dn) = (&self.num, self.num.derivative());
        let (d, dd) = (&self.den, self.den.derivative());
        let num = &(&dn * d) - &(n * &dd);
        let den = d * d;
        RationalFunction::new(num, den).expect("square of nonzero denominator")
    }

    /// `w -> conj(r(1/conj(w)))`, which equals `conj(r(w))` on the unit
    /// circle and moves every pole `a` to `1/conj(a)`.
    pub fn conj_reflect(&self) -> Self {
        let k = self.degree();
        let num = self.num.conj_coeffs().reversed(k);
        let den = self.den.conj_coeffs().reversed(k);
        let z = num.low_order_zeros().min(den.low_order_zeros());
        RationalFunction::new(num.shift_down(z), den.shift_down(z)).expect("nonzero denominator")
    }

    /// `u -> r(1/u)`
    pub fn at_reciprocal(&self) -> Self {
        let k = self.degree();
        let num = self.num.reversed(k);
        let den = self.den.reversed(k);
        let z = num.low_order_zeros().min(den.low_order_zeros());
        RationalFunction::new(num.shift_down(z), den.shift_down(z)).expect("nonzero denominator")
    }

    pub fn scaled(&self, s: C64) -> Self {
        RationalFunction {
            num: self.num.scaled(s),
            den: self.den.clone(),
        }
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::Domain("division by the zero rational function".into()));
        }
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// Poles of the (normalized) function with multiplicities.
    pub fn poles(&self, opts: &RootOptions) -> Result<Vec<(C64, usize)>> {
        if self.den.len_degree() == 0 {
            return Ok(Vec::new());
        }
        roots_with(&self.den, opts)
    }
}

/// One of the four field operations; only division can fail.
pub fn arith(a: &RationalFunction, b: &RationalFunction, op: ArithOp) -> Result<RationalFunction> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl From<ComplexPoly> for RationalFunction {
    fn from(p: ComplexPoly) -> Self {
        Self::from_poly(p)
    }
}

fn combine(a: &RationalFunction, b: &RationalFunction, sign: f64) -> RationalFunction {
    if a.den == b.den {
        let num = &a.num + &b.num.scaled(C64::new(sign, 0.0));
        return RationalFunction {
            num,
            den: a.den.clone(),
        };
    }
    let num = &(&a.num * &b.den) + &(&b.num * &a.den).scaled(C64::new(sign, 0.0));
    RationalFunction::new(num, &a.den * &b.den).expect("nonzero denominator")
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        combine(self, rhs, 1.0)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        combine(self, rhs, -1.0)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominator")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}
