use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::{implicitize, quadrature_data, QuadratureDomain};
use crate::error::Result;
use crate::numerics::area_integral_with_scale;

pub const SCHWARZ_TOL: f64 = 1e-10;
pub const TANGENT_TOL: f64 = 1e-12;
pub const QUADRATURE_TOL: f64 = 1e-6;
pub const IMPLICIT_TOL: f64 = 1e-8;

/// Residuals of the structural identities every valid domain satisfies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub validated: bool,
    /// `sup |S(z) - conj z|` on the boundary.
    pub schwarz_boundary: f64,
    /// `sup |T^2 - (-w^2 P'/conj(P')(1/w))|` on the boundary.
    pub tangent_squared: f64,
    /// For polynomial maps: the Schwarz function has a single pole of order
    /// `deg P` at the base point.
    pub pole_structure: Option<bool>,
    /// Error of the quadrature identity for `(z - b)^m`, `m <= max_monomial`,
    /// relative to `int |z - b|^m dA`.
    pub quadrature: f64,
    /// For polynomial maps: boundary value of the implicit curve over its
    /// coefficient scale.
    pub implicit_boundary: Option<f64>,
    /// For polynomial maps: the same at the base point.
    pub implicit_at_base: Option<f64>,
}

impl InvariantReport {
    pub fn passes(&self) -> bool {
        self.validated
            && self.schwarz_boundary < SCHWARZ_TOL
            && self.tangent_squared < TANGENT_TOL
            && self.pole_structure.unwrap_or(true)
            && self.quadrature < QUADRATURE_TOL
            && self.implicit_boundary.is_none_or(|r| r < IMPLICIT_TOL)
            && self.implicit_at_base.is_none_or(|r| r >= 1e-6)
    }
}

/// Runs the suite with boundary sums over `n` samples and the quadrature
/// identity for monomials up to `max_monomial`.
pub fn invariant_report(dom: &QuadratureDomain, n: usize, max_monomial: u32) -> Result<InvariantReport> {
    let s = dom.schwarz();
    let t2 = dom.tangent_squared_rational();
    let mut schwarz_boundary: f64 = 0.0;
    let mut tangent_squared: f64 = 0.0;
    for j in 0..n {
        let th = std::f64::consts::TAU * j as f64 / n as f64;
        let w = C64::from_polar(1.0, th);
        let z = dom.eval(w);
        schwarz_boundary = schwarz_boundary.max((s.eval_w(w) - z.conj()).norm() / z.norm().max(1.0));
        let t = dom.tangent(th);
        tangent_squared = tangent_squared.max((t * t - t2.eval(w)).norm());
    }

    let poly = dom.map().is_polynomial();
    let pole_structure = if poly {
        let poles = s.poles_in_disc()?;
        Some(poles.len() == 1 && poles[0].0.norm() < 1e-9 && poles[0].1 == dom.degree())
    } else {
        None
    };

    let data = quadrature_data(dom)?;
    let b = dom.base();
    let mut quadrature: f64 = 0.0;
    for m in 0..=max_monomial {
        let (oracle, scale) = area_integral_with_scale(dom, |z| (z - b).powu(m), 1e-12)?;
        let rhs = data.apply(|a, k| monomial_derivative(a - b, m, k));
        quadrature = quadrature.max((oracle - rhs).norm() / scale);
    }

    let (implicit_boundary, implicit_at_base) = if poly {
        let curve = implicitize(dom)?;
        (Some(curve.boundary_residual(dom, n)), Some(curve.relative_value(b)))
    } else {
        (None, None)
    };

    Ok(InvariantReport {
        validated: dom.is_validated(),
        schwarz_boundary,
        tangent_squared,
        pole_structure,
        quadrature,
        implicit_boundary,
        implicit_at_base,
    })
}

/// `d^k/dz^k z^m` at `z`.
pub fn monomial_derivative(z: C64, m: u32, k: usize) -> C64 {
    if k as u32 > m {
        return C64::new(0.0, 0.0);
    }
    let falling: f64 = (0..k as u32).map(|i| (m - i) as f64).product();
    z.powu(m - k as u32) * falling
}
