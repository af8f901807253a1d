use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::poly::ComplexPoly;
use super::rational::RationalFunction;
use super::roots::{roots_with, RootOptions};
use crate::error::{Error, Result};
use crate::series::Series;

/// Principal part at one pole: `sum_n coeffs[n-1] (z - pole)^-n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrincipalPart {
    pub pole: C64,
    pub coeffs: Vec<C64>,
}

impl PrincipalPart {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, z: C64) -> C64 {
        let t = (z - self.pole).inv();
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| (acc + c) * t)
    }
}

/// One term `coeff * (z - pole)^-order`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PfTerm {
    pub pole: C64,
    pub order: usize,
    pub coeff: C64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartialFractions {
    pub poly_part: ComplexPoly,
    pub parts: Vec<PrincipalPart>,
}

impl PartialFractions {
    pub fn terms(&self) -> Vec<PfTerm> {
        self.parts
            .iter()
            .flat_map(|p| {
                p.coeffs.iter().enumerate().map(move |(k, &c)| PfTerm {
                    pole: p.pole,
                    order: k + 1,
                    coeff: c,
                })
            })
            .collect()
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.poly_part.eval(z) + self.parts.iter().map(|p| p.eval(z)).sum::<C64>()
    }

    /// Recombines over the common denominator `prod (z - pole)^order`.
    pub fn to_rational(&self) -> Result<RationalFunction> {
        let one = C64::new(1.0, 0.0);
        let factors: Vec<(C64, usize)> = self.parts.iter().map(|p| (p.pole, p.order())).collect();
        let den = ComplexPoly::from_roots(one, &factors);
        let mut num = &self.poly_part * &den;
        for (k, part) in self.parts.iter().enumerate() {
            let others: Vec<(C64, usize)> = factors
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, f)| *f)
                .collect();
            let rest = ComplexPoly::from_roots(one, &others);
            let lin = ComplexPoly::new(vec![-part.pole, one]);
            let n = part.order();
            for (j, &c) in part.coeffs.iter().enumerate() {
                num = &num + &(&lin.pow(n - j - 1) * &rest).scaled(c);
            }
        }
        RationalFunction::new(num, den)
    }

    /// Sup of `|recombined - r| / max(1, |r|)` over 64 points of `|z| = radius`.
    pub fn recombination_residual(&self, r: &RationalFunction, radius: f64) -> f64 {
        crate::unit_circle_samples(64, 0.0137)
            .into_iter()
            .map(|w| w * radius)
            .filter(|&z| self.parts.iter().all(|p| (z - p.pole).norm() > 1e-3))
            .map(|z| {
                let v = r.eval(z);
                (self.eval(z) - v).norm() / v.norm().max(1.0)
            })
            .fold(0.0, f64::max)
    }
}

pub fn partial_fractions(r: &RationalFunction) -> Result<PartialFractions> {
    partial_fractions_with(r, &RootOptions::default())
}

/// Polynomial part by long division; each principal part from the Taylor
/// coefficients of `num / q_a` at the pole `a`, where `q_a` is the
/// denominator with the factor `(z - a)^m` removed.
pub fn partial_fractions_with(r: &RationalFunction, opts: &RootOptions) -> Result<PartialFractions> {
    if r.den().len_degree() == 0 || r.num().is_zero() {
        return partial_fractions_at(r, &[]);
    }
    let poles = roots_with(r.den(), opts)?;
    partial_fractions_at(r, &poles)
}

/// Partial fractions when the poles of `r` (with multiplicities, covering
/// the whole denominator) are already known.
pub fn partial_fractions_at(r: &RationalFunction, poles: &[(C64, usize)]) -> Result<PartialFractions> {
    let (poly_part, _) = r.num().div_rem(r.den())?;
    let total: usize = poles.iter().map(|p| p.1).sum();
    if total != r.den().len_degree() && !r.num().is_zero() {
        return Err(Error::Domain(format!(
            "{total} poles given for a denominator of degree {}",
            r.den().len_degree()
        )));
    }
    if total == 0 || r.num().is_zero() {
        return Ok(PartialFractions {
            poly_part,
            parts: Vec::new(),
        });
    }
    let lead = r.den().leading();
    let mut parts = Vec::with_capacity(poles.len());
    for (i, &(a, m)) in poles.iter().enumerate() {
        let others: Vec<(C64, usize)> = poles
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| *p)
            .collect();
        let q = ComplexPoly::from_roots(lead, &others);
        let h = Series::of_poly(r.num(), a, m).div(&Series::of_poly(&q, a, m))?;
        let coeffs = (1..=m).map(|n| h.coeff(m - n)).collect();
        parts.push(PrincipalPart { pole: a, coeffs });
    }
    Ok(PartialFractions { poly_part, parts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn recombination_is_exact() {
        let r = RationalFunction::new(
            ComplexPoly::from_real(&[1.0, -2.0, 0.5, 3.0]),
            ComplexPoly::from_roots(C64::new(1.0, 0.0), &[(C64::new(0.5, 0.0), 2), (C64::new(-2.0, 1.0), 1)]),
        )
        .unwrap();
        let back = partial_fractions(&r).unwrap().to_rational().unwrap();
        for z in crate::unit_circle_samples(8, 0.2) {
            assert!((back.eval(z) - r.eval(z)).norm() < 1e-12);
        }
    }

    #[test]
    fn two_simple_poles() {
        // -z/((z-2)(z-0.5)) = (-4/3)/(z-2) + (1/3)/(z-0.5)
        let r = RationalFunction::new(
            ComplexPoly::from_real(&[0.0, -1.0]),
            ComplexPoly::from_real(&[1.0, -2.5, 1.0]),
        )
        .unwrap();
        let pf = partial_fractions(&r).unwrap();
        assert!(pf.poly_part.is_zero());
        assert_eq!(pf.parts.len(), 2);
        for p in &pf.parts {
            assert_eq!(p.order(), 1);
            let expect = if (p.pole - 2.0).norm() < 1e-9 { -4.0 / 3.0 } else { 1.0 / 3.0 };
            assert!((p.coeffs[0] - expect).norm() < 1e-13);
        }
        assert!(pf.recombination_residual(&r, 2.0) < 1e-12);
    }

    #[test]
    fn already_a_partial_fraction() {
        let r = RationalFunction::new(ComplexPoly::one(), ComplexPoly::from_real(&[0.0, 0.0, 1.0]))
            .unwrap();
        let pf = partial_fractions(&r).unwrap();
        let t = pf.terms();
        assert_eq!(t.len(), 2);
        assert_eq!(t[1], PfTerm { pole: c(0.0), order: 2, coeff: c(1.0) });
        assert_eq!(t[0].coeff, c(0.0));
    }

    #[test]
    fn polynomial_part_from_long_division() {
        let r = RationalFunction::new(
            ComplexPoly::from_real(&[0.0, 0.0, 0.0, 1.0]),
            ComplexPoly::from_real(&[-1.0, 1.0]),
        )
        .unwrap();
        let pf = partial_fractions(&r).unwrap();
        assert_eq!(pf.poly_part, ComplexPoly::from_real(&[1.0, 1.0, 1.0]));
        assert_eq!(pf.parts.len(), 1);
        assert!((pf.parts[0].coeffs[0] - 1.0).norm() < 1e-14);
    }

    #[test]
    fn double_pole_coefficients() {
        // (z + 3) / (z - 1)^2 = 1/(z-1) + 4/(z-1)^2
        let r = RationalFunction::new(
            ComplexPoly::from_real(&[3.0, 1.0]),
            ComplexPoly::from_real(&[1.0, -2.0, 1.0]),
        )
        .unwrap();
        let pf = partial_fractions(&r).unwrap();
        assert_eq!(pf.parts.len(), 1);
        assert!((pf.parts[0].coeffs[0] - 1.0).norm() < 1e-12);
        assert!((pf.parts[0].coeffs[1] - 4.0).norm() < 1e-12);
    }
}
