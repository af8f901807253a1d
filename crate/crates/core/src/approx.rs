//! Nearby quadrature domains from an analytic conformal map `g` of the
//! unit disc: polynomial truncation gives an area quadrature domain, and
//! integrating the square of a truncated `sqrt(g')` gives a domain that is
//! also an arclength quadrature domain.

use num_complex::Complex64 as C64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::cpoly::ComplexPoly;
use crate::error::{Error, Result};
use crate::kernels::winding_number;
use crate::qdomain::QuadratureDomain;
use crate::I;

/// Negative-frequency energy allowed in sampled input, relative to scale.
pub const NEGATIVE_FREQUENCY_TOL: f64 = 1e-8;
/// Minimum number of boundary samples for error reports.
pub const REPORT_SAMPLES: usize = 1024;

/// The inverse Riemann map `g`, as Taylor coefficients or as boundary
/// values at `2^k` equally spaced angles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnalyticMapInput {
    Series(Vec<C64>),
    Samples(Vec<C64>),
}

impl AnalyticMapInput {
    /// Taylor coefficients; for samples, the non-negative Fourier modes.
    pub fn coefficients(&self) -> Result<Vec<C64>> {
        match self {
            AnalyticMapInput::Series(c) => {
                if c.is_empty() {
                    return Err(Error::Config("empty series".into()));
                }
                Ok(c.clone())
            }
            AnalyticMapInput::Samples(v) => {
                let n = v.len();
                if n < 256 || !n.is_power_of_two() {
                    return Err(Error::Config(format!(
                        "need 2^k >= 256 boundary samples, got {n}"
                    )));
                }
                let mut buf = v.clone();
                FftPlanner::new().plan_fft_forward(n).process(&mut buf);
                for c in buf.iter_mut() {
                    *c /= n as f64;
                }
                let scale = buf.iter().map(|c| c.norm()).fold(0.0, f64::max);
                let neg = buf[n / 2..].iter().map(|c| c.norm()).fold(0.0, f64::max);
                if neg >= NEGATIVE_FREQUENCY_TOL * scale {
                    return Err(Error::NotHolomorphic(format!(
                        "negative Fourier modes up to {neg:.3e} (scale {scale:.3e})"
                    )));
                }
                buf.truncate(n / 2);
                Ok(buf)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ApproxKind {
    Area,
    AreaAndArclength,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproximationReport {
    pub domain: QuadratureDomain,
    /// `sup |g - P|` on the unit circle.
    pub sup_error: f64,
    /// `sup |g' - P'|` on the unit circle.
    pub derivative_error: f64,
    pub kind: ApproxKind,
    /// `p` with `P' = p^2`, arclength construction only.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sqrt_derivative: Option<ComplexPoly>,
    /// Largest deviation of the unit tangent from `i w p(w) / conj(p)(1/w)`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tangent_residual: Option<f64>,
}

/// Degree-`n` truncation of the Taylor series of `g`.
pub fn approximate_area_qd(g: &AnalyticMapInput, n: usize) -> Result<ApproximationReport> {
    if n == 0 {
        return Err(Error::Config("truncation degree must be at least 1".into()));
    }
    let coeffs = g.coefficients()?;
    let p = ComplexPoly::new(coeffs.iter().take(n + 1).copied().collect());
    let domain = build_domain(p, n)?;
    report(&coeffs, domain, ApproxKind::Area, None)
}

/// `P = g(0) + int p^2` with `p` the degree-`n` truncation of `sqrt(g')`.
pub fn approximate_arclength_qd(g: &AnalyticMapInput, n: usize) -> Result<ApproximationReport> {
    let coeffs = g.coefficients()?;
    let gp = ComplexPoly::new(coeffs.clone()).derivative();
    check_nonvanishing(&gp)?;
    let p = ComplexPoly::new(sqrt_series(gp.coeffs(), n + 1)?);
    let p2 = &p * &p;
    let big_p = &p2.antiderivative() + &ComplexPoly::constant(coeffs[0]);
    let domain = build_domain(big_p, n)?;
    let mut rep = report(&coeffs, domain, ApproxKind::AreaAndArclength, Some(p))?;
    rep.tangent_residual = Some(tangent_residual(&rep)?);
    Ok(rep)
}

fn build_domain(p: ComplexPoly, n: usize) -> Result<QuadratureDomain> {
    QuadratureDomain::from_polynomial(p.into_coeffs()).map_err(|e| match e {
        Error::NotUnivalent(msg) => Error::NotUnivalent(format!(
            "truncation at N = {n} is not univalent on the closed disc ({msg}); raise N"
        )),
        other => other,
    })
}

fn check_nonvanishing(gp: &ComplexPoly) -> Result<()> {
    let vals: Vec<C64> = crate::unit_circle_samples(REPORT_SAMPLES, 0.0)
        .into_iter()
        .map(|w| gp.eval(w))
        .collect();
    let min = vals.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
    let scale = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if min <= 1e-12 * scale || winding_number(&vals).abs() > 0.5 {
        return Err(Error::Domain("g' vanishes in the closed disc".into()));
    }
    Ok(())
}

/// First `len` coefficients of the square root of the series `a`, on the
/// branch with `sqrt(a(0))` principal.
fn sqrt_series(a: &[C64], len: usize) -> Result<Vec<C64>> {
    let a0 = a.first().copied().unwrap_or_default();
    if a0.norm() == 0.0 {
        return Err(Error::Domain("g'(0) = 0".into()));
    }
    let r0 = a0.sqrt();
    let mut r = vec![C64::new(0.0, 0.0); len];
    r[0] = r0;
    for k in 1..len {
        let mut s = a.get(k).copied().unwrap_or_default();
        for j in 1..k {
            s -= r[j] * r[k - j];
        }
        r[k] = s / (2.0 * r0);
    }
    Ok(r)
}

fn report(
    g: &[C64],
    domain: QuadratureDomain,
    kind: ApproxKind,
    sqrt_derivative: Option<ComplexPoly>,
) -> Result<ApproximationReport> {
    let gpoly = ComplexPoly::new(g.to_vec());
    let mut sup_error: f64 = 0.0;
    let mut derivative_error: f64 = 0.0;
    for w in crate::unit_circle_samples(REPORT_SAMPLES.max(2 * g.len()), 0.0) {
        let (gv, gd) = gpoly.eval_with_derivative(w);
        sup_error = sup_error.max((gv - domain.eval(w)).norm());
        derivative_error = derivative_error.max((gd - domain.eval_derivative(w)).norm());
    }
    Ok(ApproximationReport {
        domain,
        sup_error,
        derivative_error,
        kind,
        sqrt_derivative,
        tangent_residual: None,
    })
}

fn tangent_residual(rep: &ApproximationReport) -> Result<f64> {
    let p = rep
        .sqrt_derivative
        .as_ref()
        .ok_or_else(|| Error::Config("not an arclength construction".into()))?;
    let pbar = p.conj_coeffs();
    let n = 1024;
    Ok((0..n)
        .map(|j| {
            let th = std::f64::consts::TAU * j as f64 / n as f64;
            let w = C64::from_polar(1.0, th);
            let t = I * w * p.eval(w) / pbar.eval(w.inv());
            (t - rep.domain.tangent(th)).norm()
        })
        .fold(0.0, f64::max))
}

/// `P' - p^2`, coefficientwise, for an arclength report.
pub fn square_defect(rep: &ApproximationReport) -> Option<f64> {
    let p = rep.sqrt_derivative.as_ref()?;
    let d = rep.domain.map().num().derivative();
    let p2 = p * p;
    let diff = &d - &p2;
    Some(diff.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max))
}
