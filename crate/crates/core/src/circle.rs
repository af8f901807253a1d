//! Decompositions of `R(z, conj z)` on the unit circle as
//! `r1(z) + conj(r2(z))` with `r1`, `r2` rational, using `conj z = 1/z`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::bivariate::BivariateRational;
use crate::cpoly::{
    partial_fractions_with, ComplexPoly, PartialFractions, PrincipalPart, RationalFunction, RootOptions,
};
use crate::error::{Error, Result};

/// Poles this close to the unit circle are treated as boundary poles.
pub const BOUNDARY_POLE_TOL: f64 = 1e-8;
const DEGENERATE_TOL: f64 = 1e-10;
const ORIGIN_SNAP: f64 = 1e-8;
const DEGENERATE_SAMPLES: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CircleForm {
    PolesOutside,
    PolesInside,
    HoloRestriction,
    AntiholoRestriction,
}

impl CircleForm {
    pub const ALL: [CircleForm; 4] = [
        CircleForm::PolesOutside,
        CircleForm::PolesInside,
        CircleForm::HoloRestriction,
        CircleForm::AntiholoRestriction,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CircleForm::PolesOutside => "poles_outside",
            CircleForm::PolesInside => "poles_inside",
            CircleForm::HoloRestriction => "holo_restriction",
            CircleForm::AntiholoRestriction => "antiholo_restriction",
        }
    }
}

impl fmt::Display for CircleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CircleForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CircleForm::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown circle form '{s}'")))
    }
}

/// `R = r1(z) + conj(r2(z))` on `|z| = 1`.
///
/// The constant lives in `r1`; `r2` has no constant term in its partial
/// fraction expansion. Poles on the circle stay in `r1` and are listed in
/// `boundary_poles`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleDecomposition {
    pub form: CircleForm,
    pub r1: RationalFunction,
    pub r2: RationalFunction,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub boundary_poles: Vec<C64>,
}

impl CircleDecomposition {
    pub fn eval(&self, z: C64) -> C64 {
        self.r1.eval(z) + self.r2.eval(z).conj()
    }

    /// Whether the data is smooth on the circle.
    pub fn smooth_on_circle(&self) -> bool {
        self.boundary_poles.is_empty()
    }

    /// Largest `|r1 + conj r2 - R| / max(1, sup |R|)` over `n` circle samples
    /// at distance at least `1e-3` from boundary poles.
    pub fn residual(&self, r: &BivariateRational, n: usize) -> f64 {
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 1.0;
        for z in crate::unit_circle_samples(n, 0.00731) {
            if self.boundary_poles.iter().any(|p| (z - p).norm() < 1e-3) {
                continue;
            }
            let target = r.eval(z);
            scale = scale.max(target.norm());
            worst = worst.max((self.eval(z) - target).norm());
        }
        worst / scale
    }
}

/// `q(z) = R(z, 1/z)`, equal to `R(z, conj z)` on the circle.
pub fn holo_restriction(r: &BivariateRational) -> Result<RationalFunction> {
    let den_scale = r.den.scale();
    let den_max = crate::unit_circle_samples(DEGENERATE_SAMPLES, 0.0)
        .into_iter()
        .map(|z| r.den.eval(z).norm())
        .fold(0.0, f64::max);
    if den_max <= DEGENERATE_TOL * den_scale {
        return Err(Error::Degenerate(
            "denominator vanishes identically on the unit circle".into(),
        ));
    }
    let z = RationalFunction::from_poly(ComplexPoly::z());
    let zinv = RationalFunction::new(ComplexPoly::one(), ComplexPoly::z())?;
    r.substitute(&z, &zinv)?.normalize()
}

pub fn decompose(r: &BivariateRational, form: CircleForm) -> Result<CircleDecomposition> {
    decompose_with(r, form, &RootOptions::default())
}

pub fn decompose_with(r: &BivariateRational, form: CircleForm, opts: &RootOptions) -> Result<CircleDecomposition> {
    let q = holo_restriction(r)?;
    decompose_restriction(&q, form, opts)
}

/// Decomposition of data given by its holomorphic restriction `q`.
pub fn decompose_restriction(q: &RationalFunction, form: CircleForm, opts: &RootOptions) -> Result<CircleDecomposition> {
    let pf = if q.is_polynomial() || q.is_zero() {
        let (p, _) = q.num().div_rem(q.den())?;
        PartialFractions {
            poly_part: p,
            parts: Vec::new(),
        }
    } else {
        partial_fractions_with(q, opts)?
    };
    let pf = snap_origin(pf);
    let boundary: Vec<PrincipalPart> = pf
        .parts
        .iter()
        .filter(|p| (p.pole.norm() - 1.0).abs() < BOUNDARY_POLE_TOL)
        .cloned()
        .collect();
    let boundary_poles: Vec<C64> = boundary.iter().map(|p| p.pole).collect();
    let (inside, outside): (Vec<PrincipalPart>, Vec<PrincipalPart>) = pf
        .parts
        .iter()
        .filter(|p| (p.pole.norm() - 1.0).abs() >= BOUNDARY_POLE_TOL)
        .cloned()
        .partition(|p| p.pole.norm() < 1.0);
    let c0 = pf.poly_part.coeff(0);
    let poly_pos = &pf.poly_part - &ComplexPoly::constant(c0);

    let (r1, r2) = match form {
        CircleForm::HoloRestriction => (q.clone(), RationalFunction::zero()),
        CircleForm::AntiholoRestriction => (RationalFunction::zero(), q.conj_reflect()),
        CircleForm::PolesOutside => {
            let reflected = reflect(&inside, &ComplexPoly::zero());
            split(outside, boundary, poly_pos, c0, reflected)?
        }
        CircleForm::PolesInside => {
            let reflected = reflect(&outside, &poly_pos);
            split(inside, boundary, ComplexPoly::zero(), c0, reflected)?
        }
    };
    Ok(CircleDecomposition {
        form,
        r1,
        r2,
        boundary_poles,
    })
}

/// Poles within the clustering floor of the origin are rounding noise on a
/// pole at 0; reflecting them as-is would put a pole near infinity.
fn snap_origin(mut pf: PartialFractions) -> PartialFractions {
    let zero = C64::new(0.0, 0.0);
    let mut at_zero: Vec<C64> = Vec::new();
    pf.parts.retain(|p| {
        if p.pole.norm() >= ORIGIN_SNAP {
            return true;
        }
        if at_zero.len() < p.coeffs.len() {
            at_zero.resize(p.coeffs.len(), zero);
        }
        for (a, c) in at_zero.iter_mut().zip(&p.coeffs) {
            *a += c;
        }
        false
    });
    if !at_zero.is_empty() {
        pf.parts.push(PrincipalPart {
            pole: zero,
            coeffs: at_zero,
        });
    }
    pf
}

fn split(
    mut kept: Vec<PrincipalPart>,
    boundary: Vec<PrincipalPart>,
    poly: ComplexPoly,
    c0: C64,
    mut reflected: PartialFractions,
) -> Result<(RationalFunction, RationalFunction)> {
    let c2 = reflected.poly_part.coeff(0);
    reflected.poly_part = &reflected.poly_part - &ComplexPoly::constant(c2);
    kept.extend(boundary);
    let r1 = PartialFractions {
        poly_part: &poly + &ComplexPoly::constant(c0 + c2.conj()),
        parts: kept,
    };
    Ok((r1.to_rational()?, reflected.to_rational()?))
}

/// The function `g` with `conj(g(z)) = sum parts + poly` on `|z| = 1`, in
/// partial-fraction form.
fn reflect(parts: &[PrincipalPart], poly: &ComplexPoly) -> PartialFractions {
    let zero = C64::new(0.0, 0.0);
    let mut poly_part = vec![zero; poly.len_degree() + 1];
    let mut out = Vec::new();
    // c z^n -> conj(c) z^-n
    let mut at_zero = vec![zero; poly.len_degree()];
    for n in 1..=poly.len_degree() {
        at_zero[n - 1] = poly.coeff(n).conj();
    }
    poly_part[0] = poly.coeff(0).conj();
    for part in parts {
        if part.pole == zero {
            // c z^-n -> conj(c) z^n
            for (j, &c) in part.coeffs.iter().enumerate() {
                if poly_part.len() <= j + 1 {
                    poly_part.resize(j + 2, zero);
                }
                poly_part[j + 1] += c.conj();
            }
            continue;
        }
        // c (z - p)^-n -> conj(c) (1/z - conj p)^-n
        //   = conj(c) (-1/conj p)^n (1 + sum_j C(n,j) q^j (z - q)^-j),  q = 1/conj p
        let q = part.pole.conj().inv();
        let mut coeffs = vec![zero; part.order()];
        for (k, &c) in part.coeffs.iter().enumerate() {
            let n = k + 1;
            let f = c.conj() * (-q).powi(n as i32);
            poly_part[0] += f;
            let mut binom = 1.0;
            for j in 1..=n {
                binom = binom * (n + 1 - j) as f64 / j as f64;
                coeffs[j - 1] += f * binom * q.powi(j as i32);
            }
        }
        out.push(PrincipalPart { pole: q, coeffs });
    }
    if at_zero.iter().any(|c| *c != zero) {
        out.push(PrincipalPart {
            pole: zero,
            coeffs: at_zero,
        });
    }
    PartialFractions {
        poly_part: ComplexPoly::new(poly_part),
        parts: out,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniquenessReport {
    /// Spread of `r1 - r1'` over the samples; zero when they differ by a constant.
    pub r1_spread: f64,
    pub r2_spread: f64,
    /// Largest pointwise difference of either part.
    pub max_difference: f64,
    pub agree_up_to_constant: bool,
    /// Both decompositions follow the constant placement convention.
    pub convention_ok: bool,
}

pub const UNIQUENESS_TOL: f64 = 1e-9;

/// Compares two decompositions of the same data in the same form on 128
/// points of `|z| = 1.05` and `|z| = 0.95` away from poles.
pub fn uniqueness_check(d1: &CircleDecomposition, d2: &CircleDecomposition) -> UniquenessReport {
    let mut diffs1 = Vec::new();
    let mut diffs2 = Vec::new();
    for (i, z) in crate::unit_circle_samples(128, 0.013).into_iter().enumerate() {
        let z = z * if i % 2 == 0 { 1.05 } else { 0.95 };
        let a = d1.r1.eval(z) - d2.r1.eval(z);
        let b = d1.r2.eval(z) - d2.r2.eval(z);
        if a.is_finite() && b.is_finite() && a.norm() < 1e12 && b.norm() < 1e12 {
            diffs1.push(a);
            diffs2.push(b);
        }
    }
    let spread = |v: &[C64]| {
        let m = v.iter().sum::<C64>() / v.len().max(1) as f64;
        v.iter().map(|x| (x - m).norm()).fold(0.0, f64::max)
    };
    let maxabs = |v: &[C64]| v.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let r1_spread = spread(&diffs1);
    let r2_spread = spread(&diffs2);
    let max_difference = maxabs(&diffs1).max(maxabs(&diffs2));
    UniquenessReport {
        r1_spread,
        r2_spread,
        max_difference,
        agree_up_to_constant: r1_spread < UNIQUENESS_TOL && r2_spread < UNIQUENESS_TOL,
        convention_ok: max_difference < UNIQUENESS_TOL,
    }
}
