//! Simply connected area quadrature domains given as images of the unit
//! disc under a rational conformal map `P`.

mod boundary;
mod checks;
mod implicit;
mod quadrature;

use std::f64::consts::TAU;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::cpoly::{partial_fractions, roots, ComplexPoly, RationalFunction};
use crate::error::{Error, Result};
use crate::series::Series;
use crate::I;

pub use boundary::{boundary_description, BoundaryDescription};
pub use checks::{invariant_report, monomial_derivative, InvariantReport};
pub use implicit::{implicitize, implicitize_polynomial, ImplicitCurve};
pub use quadrature::{quadrature_data, QuadratureData, QuadratureNode};

/// Poles of the map must satisfy `|w| > 1 + POLE_MARGIN`.
pub const POLE_MARGIN: f64 = 1e-6;
/// Closed-domain membership: `|inverse_map(z)| <= 1 + BOUNDARY_TOL`.
pub const BOUNDARY_TOL: f64 = 1e-9;
/// Number of boundary samples in the self-intersection scan.
pub const JORDAN_SAMPLES: usize = 512;

/// Serialized form of a domain: `{"map": <rational>}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DomainSpec {
    pub map: RationalFunction,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DomainSpec", into = "DomainSpec")]
pub struct QuadratureDomain {
    map: RationalFunction,
    dmap: RationalFunction,
    schwarz_w: RationalFunction,
    base: C64,
    degree: usize,
    validated: bool,
}

impl TryFrom<DomainSpec> for QuadratureDomain {
    type Error = Error;
    fn try_from(s: DomainSpec) -> Result<Self> {
        QuadratureDomain::new(s.map)
    }
}

impl From<QuadratureDomain> for DomainSpec {
    fn from(d: QuadratureDomain) -> Self {
        DomainSpec { map: d.map }
    }
}

/// A reflected point in disc coordinates; the reflection of the base
/// point is the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ReflectedPoint {
    Finite(C64),
    Infinity,
}

impl QuadratureDomain {
    /// Validates analyticity on the closed disc, `P' != 0` there and that
    /// the boundary image is a Jordan curve.
    pub fn new(map: RationalFunction) -> Result<Self> {
        let dom = Self::build(map, true)?;
        dom.check_poles()?;
        dom.check_critical_points()?;
        dom.check_jordan()?;
        Ok(dom)
    }

    /// Skips the univalence and analyticity checks. Only for operations
    /// that are purely algebraic in the map, such as implicitization of a
    /// cusped curve.
    pub fn new_unchecked(map: RationalFunction) -> Result<Self> {
        Self::build(map, false)
    }

    pub fn from_polynomial(coeffs: Vec<C64>) -> Result<Self> {
        Self::new(RationalFunction::from_poly(ComplexPoly::new(coeffs)))
    }

    /// The unit disc, `P(w) = w`.
    pub fn disc() -> Self {
        Self::from_polynomial(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]).expect("disc is valid")
    }

    /// The limacon `P(w) = w + c w^2`, univalent for `|c| < 1/2`.
    pub fn cardioid(c: C64) -> Result<Self> {
        Self::from_polynomial(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0), c])
    }

    fn build(map: RationalFunction, validated: bool) -> Result<Self> {
        let map = if map.is_polynomial() { map } else { map.normalize()? };
        let dmap = map.derivative();
        if dmap.num().trim_relative(1e-14).is_zero() {
            return Err(Error::InvalidDomain("constant map".into()));
        }
        let base = map.eval(C64::new(0.0, 0.0));
        if !base.is_finite() {
            return Err(Error::InvalidDomain("map has a pole at the origin".into()));
        }
        let schwarz_w = map.conj_reflect();
        let degree = map.degree();
        Ok(QuadratureDomain {
            map,
            dmap,
            schwarz_w,
            base,
            degree,
            validated,
        })
    }

    fn check_poles(&self) -> Result<()> {
        for (p, _) in self.map.poles(&Default::default())? {
            if p.norm() <= 1.0 + POLE_MARGIN {
                return Err(Error::InvalidDomain(format!(
                    "map has a pole at {p} inside the closed disc"
                )));
            }
        }
        Ok(())
    }

    fn check_critical_points(&self) -> Result<()> {
        let num = self.dmap.num();
        if num.len_degree() == 0 {
            return Ok(());
        }
        for (r, _) in roots(num, 1e-6)? {
            if r.norm() <= 1.0 + BOUNDARY_TOL {
                return Err(Error::NotUnivalent(format!(
                    "derivative vanishes at disc point {r}"
                )));
            }
        }
        Ok(())
    }

    /// Scans the boundary polygon through `JORDAN_SAMPLES` points for
    /// crossings between non-adjacent edges.
    fn check_jordan(&self) -> Result<()> {
        let pts: Vec<C64> = crate::unit_circle_samples(JORDAN_SAMPLES, 0.0)
            .into_iter()
            .map(|w| self.map.eval(w))
            .collect();
        let n = pts.len();
        for i in 0..n {
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (c, d) = (pts[j], pts[(j + 1) % n]);
                if segments_cross(a, b, c, d) {
                    return Err(Error::NotUnivalent(format!(
                        "boundary self-intersection between samples {i} and {j}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn map(&self) -> &RationalFunction {
        &self.map
    }

    pub fn map_derivative(&self) -> &RationalFunction {
        &self.dmap
    }

    /// `b = P(0)`.
    pub fn base(&self) -> C64 {
        self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_polynomial()
            && self.map.num().len_degree() == 1
            && self.map.num().coeff(0).norm() == 0.0
            && (self.map.num().coeff(1) - 1.0).norm() == 0.0
    }

    /// `P(w)`
    pub fn eval(&self, w: C64) -> C64 {
        self.map.eval(w)
    }

    /// `P'(w)`
    pub fn eval_derivative(&self, w: C64) -> C64 {
        self.dmap.eval(w)
    }

    /// `z(theta) = P(e^{i theta})`
    pub fn boundary_point(&self, theta: f64) -> C64 {
        self.map.eval(C64::from_polar(1.0, theta))
    }

    /// The Riemann map `f = P^{-1}`: the unique `w` in the closed disc
    /// with `P(w) = z`.
    pub fn inverse_map(&self, z: C64) -> Result<C64> {
        let eq = self.map.num() - &self.map.den().scaled(z);
        let candidates: Vec<C64> = if eq.len_degree() == 1 {
            vec![-eq.coeff(0) / eq.coeff(1)]
        } else {
            roots(&eq, 1e-8)?.into_iter().map(|(r, _)| r).collect()
        };
        let inside: Vec<C64> = candidates
            .into_iter()
            .filter(|w| w.norm() <= 1.0 + BOUNDARY_TOL)
            .collect();
        match inside.as_slice() {
            [] => Err(Error::OutsideDomain(z)),
            [w] => Ok(self.polish_inverse(*w, z)),
            _ => Err(Error::NotUnivalent(format!(
                "{} preimages of {z} in the closed disc",
                inside.len()
            ))),
        }
    }

    fn polish_inverse(&self, mut w: C64, z: C64) -> C64 {
        let mut err = (self.map.eval(w) - z).norm();
        for _ in 0..3 {
            let cand = w - (self.map.eval(w) - z) / self.dmap.eval(w);
            let e = (self.map.eval(cand) - z).norm();
            if e < err {
                w = cand;
                err = e;
            } else {
                break;
            }
        }
        w
    }

    /// Strict interior test, `|f(z)| < 1 - margin`.
    pub fn contains(&self, z: C64, margin: f64) -> bool {
        self.inverse_map(z).map(|w| w.norm() < 1.0 - margin).unwrap_or(false)
    }

    pub fn schwarz(&self) -> SchwarzFunction<'_> {
        SchwarzFunction { owner: self }
    }

    /// Unit tangent `z'(theta)/|z'(theta)|` in the positive orientation.
    pub fn tangent(&self, theta: f64) -> C64 {
        let w = C64::from_polar(1.0, theta);
        let dz = I * w * self.dmap.eval(w);
        dz / dz.norm()
    }

    /// `-w^2 P'(w) / conj(P'(1/conj w))`, the rational function of `w` that
    /// agrees with `T^2` on the unit circle.
    pub fn tangent_squared_rational(&self) -> RationalFunction {
        let w2 = RationalFunction::from_poly(ComplexPoly::monomial(C64::new(-1.0, 0.0), 2));
        (&w2 * &self.dmap)
            .checked_div(&self.dmap.conj_reflect())
            .expect("nonzero derivative")
    }

    pub fn reflect(&self, a: C64) -> Result<ReflectedPoint> {
        let alpha = self.inverse_map(a)?;
        if alpha.norm() >= 1.0 - BOUNDARY_TOL {
            return Err(Error::Domain(format!("{a} is not strictly inside the domain")));
        }
        if alpha.norm() < 1e-14 {
            return Ok(ReflectedPoint::Infinity);
        }
        Ok(ReflectedPoint::Finite(alpha.conj().inv()))
    }

    /// Taylor coefficients of the Riemann map at `P(alpha)`:
    /// `f(P(alpha) + h) = sum c_k h^k`, `len` terms.
    pub fn riemann_map_series(&self, alpha: C64, len: usize) -> Result<Series> {
        let p = Series::of_rational(&self.map, alpha, len)?;
        let delta = p.add_constant(-p.coeff(0));
        Ok(delta.revert()?.add_constant(alpha))
    }

    /// Rows `theta, re z, im z, re S, im S, re T, im T` at `n` boundary samples.
    pub fn boundary_table(&self, n: usize) -> Vec<[f64; 7]> {
        (0..n)
            .map(|j| {
                let theta = TAU * j as f64 / n as f64;
                let w = C64::from_polar(1.0, theta);
                let z = self.map.eval(w);
                let s = self.schwarz_w.eval(w);
                let t = self.tangent(theta);
                [theta, z.re, z.im, s.re, s.im, t.re, t.im]
            })
            .collect()
    }
}

fn orient(a: C64, b: C64, c: C64) -> f64 {
    ((b - a).conj() * (c - a)).im
}

fn segments_cross(a: C64, b: C64, c: C64, d: C64) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    (d1 > 0.0) != (d2 > 0.0) && (d3 > 0.0) != (d4 > 0.0) && d1 != 0.0 && d2 != 0.0
}

/// The Schwarz function of the boundary curve, carried in the disc
/// coordinate as `S(P(w)) = conj(P(1/conj w))`.
#[derive(Clone, Copy, Debug)]
pub struct SchwarzFunction<'a> {
    owner: &'a QuadratureDomain,
}

impl<'a> SchwarzFunction<'a> {
    pub fn owner(&self) -> &'a QuadratureDomain {
        self.owner
    }

    pub fn as_w_rational(&self) -> &'a RationalFunction {
        &self.owner.schwarz_w
    }

    pub fn eval_w(&self, w: C64) -> C64 {
        self.owner.schwarz_w.eval(w)
    }

    /// `S(z)` for `z` in the closed domain. At a pole of the meromorphic
    /// extension the error carries the principal part in the `w` coordinate.
    pub fn eval(&self, z: C64) -> Result<C64> {
        let w = self.owner.inverse_map(z)?;
        let s = &self.owner.schwarz_w;
        if s.den().eval(w).norm() <= 1e-12 * s.den().scale().max(1.0) {
            let pf = partial_fractions(s)?;
            let part = pf
                .parts
                .into_iter()
                .min_by(|a, b| (a.pole - w).norm().total_cmp(&(b.pole - w).norm()));
            return Err(Error::Pole {
                pole: z,
                coordinate: "w",
                principal_part: part.map(|p| p.coeffs).unwrap_or_default(),
            });
        }
        Ok(s.eval(w))
    }

    /// `S'(z) = (dS/dw) / P'(w)`.
    pub fn derivative(&self, z: C64) -> Result<C64> {
        let w = self.owner.inverse_map(z)?;
        Ok(self.owner.schwarz_w.derivative().eval(w) / self.owner.dmap.eval(w))
    }

    /// Poles of the meromorphic extension inside the domain, as
    /// `(disc point, order)`.
    pub fn poles_in_disc(&self) -> Result<Vec<(C64, usize)>> {
        Ok(self
            .owner
            .schwarz_w
            .poles(&Default::default())?
            .into_iter()
            .filter(|(p, _)| p.norm() < 1.0)
            .collect())
    }
}
