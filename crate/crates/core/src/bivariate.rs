//! Polynomials and rational functions in `z` and `conj(z)`.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::cpoly::{ComplexPoly, RationalFunction};
use crate::error::{Error, Result};

/// `sum coeffs[i][j] z^i zbar^j`, where `zbar` is an independent variable
/// until the polynomial is evaluated on a curve.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct BivariatePoly {
    pub coeffs: Vec<Vec<C64>>,
}

impl BivariatePoly {
    pub fn new(coeffs: Vec<Vec<C64>>) -> Self {
        BivariatePoly { coeffs }
    }

    pub fn from_real(coeffs: &[&[f64]]) -> Self {
        BivariatePoly::new(
            coeffs
                .iter()
                .map(|row| row.iter().map(|&c| C64::new(c, 0.0)).collect())
                .collect(),
        )
    }

    pub fn constant(c: C64) -> Self {
        BivariatePoly::new(vec![vec![c]])
    }

    /// `c z^i zbar^j`
    pub fn monomial(c: C64, i: usize, j: usize) -> Self {
        let mut coeffs = vec![vec![C64::new(0.0, 0.0); j + 1]; i + 1];
        coeffs[i][j] = c;
        BivariatePoly::new(coeffs)
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .copied()
            .unwrap_or_default()
    }

    fn nonzero(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        self.coeffs.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| **c != C64::new(0.0, 0.0))
                .map(move |(j, &c)| (i, j, c))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero().next().is_none()
    }

    /// Highest powers of `z` and `zbar` with a nonzero coefficient.
    pub fn degrees(&self) -> (usize, usize) {
        self.nonzero()
            .fold((0, 0), |(a, b), (i, j, _)| (a.max(i), b.max(j)))
    }

    pub fn scale(&self) -> f64 {
        self.nonzero().map(|(_, _, c)| c.norm()).fold(0.0, f64::max)
    }

    /// Evaluate with independent values for `z` and `zbar`.
    pub fn eval2(&self, z: C64, zb: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, row| {
                acc * z + row.iter().rev().fold(C64::new(0.0, 0.0), |a, &c| a * zb + c)
            })
    }

    /// Evaluate on the real plane, `zbar = conj(z)`.
    pub fn eval(&self, z: C64) -> C64 {
        self.eval2(z, z.conj())
    }

    /// `sum |c_ij| |z|^(i+j)`: the size of the terms that cancel in `eval(z)`.
    pub fn eval_scale(&self, z: C64) -> f64 {
        let r = z.norm();
        self.nonzero()
            .map(|(i, j, c)| c.norm() * r.powi((i + j) as i32))
            .sum()
    }

    /// The polynomial whose values on the plane are the conjugates of ours.
    pub fn conj(&self) -> Self {
        let (di, dj) = self.degrees();
        let mut out = vec![vec![C64::new(0.0, 0.0); di + 1]; dj + 1];
        for (i, j, c) in self.nonzero() {
            out[j][i] = c.conj();
        }
        BivariatePoly::new(out)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (a, b) = self.degrees();
        let (c, d) = rhs.degrees();
        let mut out = vec![vec![C64::new(0.0, 0.0); b.max(d) + 1]; a.max(c) + 1];
        for (i, j, v) in self.nonzero().chain(rhs.nonzero()) {
            out[i][j] += v;
        }
        BivariatePoly::new(out)
    }

    pub fn scaled(&self, s: C64) -> Self {
        BivariatePoly::new(
            self.coeffs
                .iter()
                .map(|r| r.iter().map(|&c| c * s).collect())
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = self.degrees();
        let (c, d) = rhs.degrees();
        let mut out = vec![vec![C64::new(0.0, 0.0); b + d + 1]; a + c + 1];
        for (i, j, u) in self.nonzero() {
            for (k, l, v) in rhs.nonzero() {
                out[i + k][j + l] += u * v;
            }
        }
        BivariatePoly::new(out)
    }

    /// Product `p(z) q(zbar)` of two univariate polynomials.
    pub fn outer(p: &ComplexPoly, q: &ComplexPoly) -> Self {
        BivariatePoly::new(
            p.coeffs()
                .iter()
                .map(|&a| q.coeffs().iter().map(|&b| a * b).collect())
                .collect(),
        )
    }

    /// Rewrite a polynomial in the real coordinates, `coeffs[a][b]` for
    /// `x^a y^b`, through `x = (z + zbar)/2`, `y = (z - zbar)/(2i)`.
    pub fn from_xy(xy: &[Vec<C64>]) -> Self {
        let half = C64::new(0.5, 0.0);
        let x = BivariatePoly::new(vec![vec![C64::new(0.0, 0.0), half], vec![half]]);
        let y = BivariatePoly::new(vec![
            vec![C64::new(0.0, 0.0), C64::new(0.0, 0.5)],
            vec![C64::new(0.0, -0.5)],
        ]);
        let mut out = BivariatePoly::default();
        let mut xpow = BivariatePoly::constant(C64::new(1.0, 0.0));
        for row in xy {
            let mut term = xpow.clone();
            for &c in row {
                if c != C64::new(0.0, 0.0) {
                    out = out.add(&term.scaled(c));
                }
                term = term.mul(&y);
            }
            xpow = xpow.mul(&x);
        }
        out
    }

    /// Substitute `z = zr(w)`, `zbar = zbr(w)` and clear the denominators
    /// `zr.den^deg_z * zbr.den^deg_zbar`; the bounds must be at least the
    /// polynomial's own degrees so numerator and denominator of a
    /// quotient can share them.
    pub fn substitute(
        &self,
        zr: &RationalFunction,
        zbr: &RationalFunction,
        deg_z: usize,
        deg_zb: usize,
    ) -> ComplexPoly {
        let (a, b) = self.degrees();
        assert!(a <= deg_z && b <= deg_zb);
        let num_pows = powers(zr.num(), deg_z);
        let den_pows = powers(zr.den(), deg_z);
        let bnum_pows = powers(zbr.num(), deg_zb);
        let bden_pows = powers(zbr.den(), deg_zb);
        let mut out = ComplexPoly::zero();
        for (i, j, c) in self.nonzero() {
            let t = &(&num_pows[i] * &den_pows[deg_z - i]) * &(&bnum_pows[j] * &bden_pows[deg_zb - j]);
            out = &out + &t.scaled(c);
        }
        out
    }
}

fn powers(p: &ComplexPoly, n: usize) -> Vec<ComplexPoly> {
    let mut v = vec![ComplexPoly::one()];
    for k in 1..=n {
        let next = &v[k - 1] * p;
        v.push(next);
    }
    v
}

/// `R(z, zbar) = P(z, zbar) / Q(z, zbar)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BivRepr")]
pub struct BivariateRational {
    pub num: BivariatePoly,
    pub den: BivariatePoly,
}

#[derive(Deserialize)]
struct BivRepr {
    num: BivariatePoly,
    den: BivariatePoly,
}

impl TryFrom<BivRepr> for BivariateRational {
    type Error = Error;
    fn try_from(r: BivRepr) -> Result<Self> {
        BivariateRational::new(r.num, r.den)
    }
}

impl BivariateRational {
    pub fn new(num: BivariatePoly, den: BivariatePoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Degenerate("denominator is the zero polynomial".into()));
        }
        Ok(BivariateRational { num, den })
    }

    pub fn polynomial(num: BivariatePoly) -> Self {
        BivariateRational {
            num,
            den: BivariatePoly::constant(C64::new(1.0, 0.0)),
        }
    }

    pub fn constant(c: C64) -> Self {
        Self::polynomial(BivariatePoly::constant(c))
    }

    /// The function `conj(z)`.
    pub fn zbar() -> Self {
        Self::polynomial(BivariatePoly::monomial(C64::new(1.0, 0.0), 0, 1))
    }

    /// The function `x = Re z`.
    pub fn re_z() -> Self {
        Self::polynomial(BivariatePoly::from_real(&[&[0.0, 0.5], &[0.5]]))
    }

    /// Real rational data `p(x, y) / q(x, y)`.
    pub fn from_xy(p: &[Vec<C64>], q: &[Vec<C64>]) -> Result<Self> {
        Self::new(BivariatePoly::from_xy(p), BivariatePoly::from_xy(q))
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.num.eval(z) / self.den.eval(z)
    }

    pub fn eval2(&self, z: C64, zb: C64) -> C64 {
        self.num.eval2(z, zb) / self.den.eval2(z, zb)
    }

    pub fn conj(&self) -> Self {
        BivariateRational {
            num: self.num.conj(),
            den: self.den.conj(),
        }
    }

    /// Joint degree bounds of numerator and denominator.
    pub fn degrees(&self) -> (usize, usize) {
        let (a, b) = self.num.degrees();
        let (c, d) = self.den.degrees();
        (a.max(c), b.max(d))
    }

    /// Rational function of `w` obtained by substituting `z = zr(w)` and
    /// `zbar = zbr(w)`. Not normalized.
    pub fn substitute(&self, zr: &RationalFunction, zbr: &RationalFunction) -> Result<RationalFunction> {
        let (a, b) = self.degrees();
        let num = self.num.substitute(zr, zbr, a, b);
        let den = self.den.substitute(zr, zbr, a, b);
        if den.trim_relative(crate::cpoly::COEFF_NOISE).is_zero() {
            return Err(Error::Degenerate(
                "denominator vanishes identically on the curve".into(),
            ));
        }
        RationalFunction::new(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xy_conversion() {
        // x^2 + y^2 = z zbar
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let p = BivariatePoly::from_xy(&[vec![zero, zero, one], vec![], vec![one]]);
        let z = C64::new(0.3, -1.7);
        assert!((p.eval(z) - z.norm_sqr()).norm() < 1e-14);
        assert!((p.get(1, 1) - one).norm() < 1e-15);
        assert!(p.get(2, 0).norm() < 1e-15 && p.get(0, 2).norm() < 1e-15);
    }

    #[test]
    fn conj_matches_pointwise() {
        let p = BivariatePoly::new(vec![
            vec![C64::new(1.0, 2.0), C64::new(0.0, 1.0)],
            vec![C64::new(-0.5, 0.0)],
            vec![C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(2.0, -1.0)],
        ]);
        let z = C64::new(0.8, 0.1);
        assert!((p.conj().eval(z) - p.eval(z).conj()).norm() < 1e-14);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(BivariateRational::new(BivariatePoly::constant(C64::new(1.0, 0.0)), BivariatePoly::default()).is_err());
    }
}
