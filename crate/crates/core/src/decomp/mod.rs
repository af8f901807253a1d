//! Decompositions of boundary data `R(z, conj z)` on a quadrature domain
//! into a constant plus antiderivative kernel terms.
//!
//! `R` extends to the double as `M(w) = R(P(w), conj(P)(1/w))`. Poles of
//! `M` inside the unit disc are matched by `lambda_a^m` terms, poles
//! outside (and the polynomial part, a pole at infinity) by `k_a^m`
//! terms. What remains has no poles on the sphere and is the constant.

mod dirichlet;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::bivariate::BivariateRational;
use crate::cpoly::{partial_fractions_at, roots, ComplexPoly, RootOptions, PartialFractions, PrincipalPart, RationalFunction};
use crate::error::{Error, Result};
use crate::kernels::{KernelFamily, KernelKind, KernelTerm, TermEvaluator};
use crate::qdomain::QuadratureDomain;

pub use dirichlet::{
    dirichlet_solve, dtn, dtn_preimage, dtn_rational, fd_normal_derivative, DirichletSolution, DtnImage,
    PoissonReference,
};

/// Poles of `M` closer than this to the unit circle put `R` outside the
/// admissible class.
pub const MEMBERSHIP_TOL: f64 = 1e-8;
/// Allowed spread of the leftover constant, relative to the data scale.
pub const CONSTANT_TOL: f64 = 1e-9;
const CONDITION_LIMIT: f64 = 1e13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DecompositionForm {
    /// `c + sum k + sum lambda`
    #[serde(rename = "k_lambda")]
    KLambda,
    /// `c + sum k + conj(sum k)`
    #[serde(rename = "k_kbar")]
    KKbar,
    /// `c + sum lambda + conj(sum lambda)`
    #[serde(rename = "lambda_lambdabar")]
    LambdaLambdabar,
}

impl DecompositionForm {
    pub const ALL: [DecompositionForm; 3] = [
        DecompositionForm::KLambda,
        DecompositionForm::KKbar,
        DecompositionForm::LambdaLambdabar,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            DecompositionForm::KLambda => "k_lambda",
            DecompositionForm::KKbar => "k_kbar",
            DecompositionForm::LambdaLambdabar => "lambda_lambdabar",
        }
    }

    fn second_is_conjugated(&self) -> bool {
        !matches!(self, DecompositionForm::KLambda)
    }
}

impl fmt::Display for DecompositionForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DecompositionForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "k_lambda" => Ok(DecompositionForm::KLambda),
            "k_kbar" => Ok(DecompositionForm::KKbar),
            "lambda_lambdabar" => Ok(DecompositionForm::LambdaLambdabar),
            _ => Err(Error::Config(format!("unknown decomposition form '{s}'"))),
        }
    }
}

/// `constant + sum(first) + second`, where `second` enters conjugated in
/// the `k_kbar` and `lambda_lambdabar` forms.
///
/// `first` holds the `k` terms in the `k_lambda` and `k_kbar` forms and the
/// `lambda` terms in the `lambda_lambdabar` form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub form: DecompositionForm,
    pub constant: C64,
    #[serde(rename = "k_terms")]
    pub first: Vec<KernelTerm>,
    #[serde(rename = "lambda_terms")]
    pub second: Vec<KernelTerm>,
}

impl Decomposition {
    pub fn constant_only(c: C64) -> Self {
        Decomposition {
            form: DecompositionForm::KLambda,
            constant: c,
            first: Vec::new(),
            second: Vec::new(),
        }
    }

    pub fn term_count(&self) -> usize {
        self.first.len() + self.second.len()
    }

    pub fn evaluator(&self, dom: &QuadratureDomain) -> Result<DecompositionEvaluator> {
        Ok(DecompositionEvaluator {
            constant: self.constant,
            conj_second: self.form.second_is_conjugated(),
            first: TermEvaluator::new(dom, &self.first)?,
            second: TermEvaluator::new(dom, &self.second)?,
        })
    }

    /// The boundary values as a rational function of the disc coordinate:
    /// `M(w)` with `M(e^{it}) = constant + terms` at `P(e^{it})`.
    pub fn extension(&self, dom: &QuadratureDomain) -> Result<RationalFunction> {
        let d = convert(self, DecompositionForm::KLambda);
        let mut lambda_parts: Vec<PrincipalPart> = Vec::new();
        let mut k_parts: Vec<PrincipalPart> = Vec::new();
        let add = |parts: &mut Vec<PrincipalPart>, pole: C64, pp: &[C64], c: C64| {
            let slot = match parts.iter().position(|p| (p.pole - pole).norm() < 1e-14) {
                Some(i) => i,
                None => {
                    parts.push(PrincipalPart {
                        pole,
                        coeffs: Vec::new(),
                    });
                    parts.len() - 1
                }
            };
            let coeffs = &mut parts[slot].coeffs;
            if coeffs.len() < pp.len() {
                coeffs.resize(pp.len(), C64::new(0.0, 0.0));
            }
            for (a, &b) in coeffs.iter_mut().zip(pp) {
                *a += c * b;
            }
        };
        for t in &d.first {
            let fam = KernelFamily::new(dom, t.a, t.m)?;
            add(&mut k_parts, fam.alpha().conj(), fam.k_principal(t.m), t.coeff);
        }
        for t in &d.second {
            let fam = KernelFamily::new(dom, t.a, t.m)?;
            add(&mut lambda_parts, fam.alpha(), fam.lambda_principal(t.m), t.coeff);
        }
        let as_rational = |parts: Vec<PrincipalPart>, constant: C64| {
            PartialFractions {
                poly_part: ComplexPoly::constant(constant),
                parts,
            }
            .to_rational()
        };
        let lambda = as_rational(lambda_parts, d.constant)?;
        let k = as_rational(k_parts, C64::new(0.0, 0.0))?.at_reciprocal();
        (&lambda + &k).normalize()
    }

    /// Largest `|value - R| / max(1, sup |R|)` over `n` boundary samples.
    pub fn boundary_residual(&self, dom: &QuadratureDomain, r: &BivariateRational, n: usize) -> Result<f64> {
        let ev = self.evaluator(dom)?;
        let mut scale: f64 = 1.0;
        let mut worst: f64 = 0.0;
        for w in crate::unit_circle_samples(n, 0.0031) {
            let z = dom.eval(w);
            let target = r.eval(z);
            scale = scale.max(target.norm());
            worst = worst.max((ev.eval_w(dom, w)? - target).norm());
        }
        Ok(worst / scale)
    }
}

/// A decomposition bound to its domain for repeated evaluation.
#[derive(Clone, Debug)]
pub struct DecompositionEvaluator {
    constant: C64,
    conj_second: bool,
    first: TermEvaluator,
    second: TermEvaluator,
}

impl DecompositionEvaluator {
    pub fn eval_w(&self, dom: &QuadratureDomain, w: C64) -> Result<C64> {
        let s2 = self.second.eval_w(dom, w)?;
        let s2 = if self.conj_second { s2.conj() } else { s2 };
        Ok(self.constant + self.first.eval_w(dom, w)? + s2)
    }

    pub fn eval(&self, dom: &QuadratureDomain, z: C64) -> Result<C64> {
        self.eval_w(dom, dom.inverse_map(z)?)
    }

    /// `d/dw` of the two holomorphic sums.
    pub(crate) fn dw_parts(&self, w: C64) -> Result<(C64, C64)> {
        Ok((self.first.eval_dw(w)?, self.second.eval_dw(w)?))
    }
}

/// `M(w) = R(P(w), conj(P)(1/w))`, normalized. Fails when `M` has a pole
/// on or within `MEMBERSHIP_TOL` of the unit circle.
pub fn extend_to_double(dom: &QuadratureDomain, r: &BivariateRational) -> Result<RationalFunction> {
    let p = dom.map();
    let m = r.substitute(p, &p.conj_reflect())?.normalize()?;
    check_membership(dom, &m)?;
    Ok(m)
}

fn check_membership(dom: &QuadratureDomain, m: &RationalFunction) -> Result<()> {
    check_poles(dom, &m.poles(&Default::default())?)
}

fn check_poles(dom: &QuadratureDomain, poles: &[(C64, usize)]) -> Result<()> {
    for &(w0, _) in poles {
        if (w0.norm() - 1.0).abs() < MEMBERSHIP_TOL {
            return Err(Error::NotSmoothOnBoundary(dom.eval(w0 / w0.norm())));
        }
    }
    Ok(())
}

/// Decomposition of `R` in the `k_lambda` form.
pub fn decompose(dom: &QuadratureDomain, r: &BivariateRational) -> Result<Decomposition> {
    let m = extend_to_double(dom, r)?;
    decompose_rational(dom, &m)
}

/// Decomposition of boundary data given directly by its extension `M` to
/// the double.
pub fn decompose_rational(dom: &QuadratureDomain, m: &RationalFunction) -> Result<Decomposition> {
    let poles = if m.den().len_degree() == 0 {
        Vec::new()
    } else {
        roots(m.den(), RootOptions::default().tol)?
    };
    check_poles(dom, &poles)?;
    let inside = partial_fractions_at(m, &poles)?;
    // poles of M(1/u) are the reciprocals; reusing them keeps multiplicities
    let mut reciprocal: Vec<(C64, usize)> = poles
        .iter()
        .filter(|p| p.0.norm() > 0.0)
        .map(|&(p, k)| (p.inv(), k))
        .collect();
    let excess = m.num().len_degree().saturating_sub(m.den().len_degree());
    if excess > 0 {
        reciprocal.push((C64::new(0.0, 0.0), excess));
    }
    let outside = partial_fractions_at(&m.at_reciprocal(), &reciprocal)?;

    let mut lambda_terms = Vec::new();
    for part in inside.parts.iter().filter(|p| p.pole.norm() < 1.0) {
        let fam = KernelFamily::at_disc_point(dom, part.pole, part.order() - 1)?;
        let coeffs = match_principal(part, |m| fam.lambda_principal(m))?;
        push_terms(&mut lambda_terms, KernelKind::LambdaLower, fam.a(), &coeffs);
    }
    let mut k_terms = Vec::new();
    for part in outside.parts.iter().filter(|p| p.pole.norm() < 1.0) {
        let fam = KernelFamily::at_disc_point(dom, part.pole.conj(), part.order() - 1)?;
        let coeffs = match_principal(part, |m| fam.k_principal(m))?;
        push_terms(&mut k_terms, KernelKind::KLower, fam.a(), &coeffs);
    }

    let mut d = Decomposition {
        form: DecompositionForm::KLambda,
        constant: C64::new(0.0, 0.0),
        first: k_terms,
        second: lambda_terms,
    };
    d.constant = leftover_constant(dom, m, &d, &inside.parts, &outside.parts)?;
    Ok(d)
}

fn push_terms(out: &mut Vec<KernelTerm>, kind: KernelKind, a: C64, coeffs: &[C64]) {
    for (m, &c) in coeffs.iter().enumerate() {
        out.push(KernelTerm::new(kind, a, m, c));
    }
}

/// Solves `target[j] = sum_{m >= j} d_m pp(m)[j]` by back substitution.
fn match_principal<'a>(part: &PrincipalPart, pp: impl Fn(usize) -> &'a [C64]) -> Result<Vec<C64>> {
    let n = part.order();
    let diag: Vec<C64> = (0..n).map(|m| pp(m)[m]).collect();
    let dmin = diag.iter().map(|c| c.norm()).fold(f64::INFINITY, f64::min);
    let dmax = (0..n)
        .flat_map(|m| pp(m).iter().map(|c| c.norm()))
        .fold(0.0, f64::max);
    let condition = dmax / dmin;
    if !condition.is_finite() || condition > CONDITION_LIMIT {
        return Err(Error::IllConditioned { condition });
    }
    let mut d = vec![C64::new(0.0, 0.0); n];
    for j in (0..n).rev() {
        let mut rhs = part.coeffs[j];
        for (m, dm) in d.iter().enumerate().skip(j + 1) {
            rhs -= dm * pp(m)[j];
        }
        d[j] = rhs / diag[j];
    }
    Ok(d)
}

fn leftover_constant(
    dom: &QuadratureDomain,
    m: &RationalFunction,
    d: &Decomposition,
    inside: &[PrincipalPart],
    outside: &[PrincipalPart],
) -> Result<C64> {
    let k = TermEvaluator::new(dom, &d.first)?;
    let l = TermEvaluator::new(dom, &d.second)?;
    let poles: Vec<C64> = inside
        .iter()
        .map(|p| p.pole)
        .chain(outside.iter().filter(|p| p.pole.norm() > 1e-12).map(|p| p.pole.inv()))
        .collect();
    let mut vals = Vec::with_capacity(64);
    let mut scale: f64 = 1.0;
    for j in 0..96 {
        if vals.len() == 64 {
            break;
        }
        let radius = [0.5, 1.0, 2.0][j % 3];
        let w = C64::from_polar(radius, 0.377 + std::f64::consts::TAU * j as f64 / 96.0);
        if poles.iter().any(|p| (w - p).norm() < 0.05 * radius) {
            continue;
        }
        let mv = m.eval(w);
        scale = scale.max(mv.norm());
        vals.push(mv - k.eval_w(dom, w)? - l.eval_w(dom, w)?);
    }
    if vals.is_empty() {
        return Err(Error::Degenerate("no admissible samples for the constant".into()));
    }
    let c = vals.iter().sum::<C64>() / vals.len() as f64;
    let spread = vals.iter().map(|v| (v - c).norm()).fold(0.0, f64::max);
    if spread > CONSTANT_TOL * scale {
        return Err(Error::Degenerate(format!(
            "residual after principal-part matching is not constant (spread {spread:.3e})"
        )));
    }
    Ok(c)
}

fn conj_swap(terms: &[KernelTerm], kind: KernelKind) -> Vec<KernelTerm> {
    terms
        .iter()
        .map(|t| KernelTerm::new(kind, t.a, t.m, -t.coeff.conj()))
        .collect()
}

/// Rewrites `d` in `target` form using `k_a^m = -conj(lambda_a^m)` on the
/// boundary.
pub fn convert(d: &Decomposition, target: DecompositionForm) -> Decomposition {
    use DecompositionForm::*;
    let (k, l) = match d.form {
        KLambda => (d.first.clone(), d.second.clone()),
        KKbar => (d.first.clone(), conj_swap(&d.second, KernelKind::LambdaLower)),
        LambdaLambdabar => (conj_swap(&d.second, KernelKind::KLower), d.first.clone()),
    };
    let (first, second) = match target {
        KLambda => (k, l),
        KKbar => (k, conj_swap(&l, KernelKind::KLower)),
        LambdaLambdabar => (l, conj_swap(&k, KernelKind::LambdaLower)),
    };
    Decomposition {
        form: target,
        constant: d.constant,
        first,
        second,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bivariate::BivariatePoly;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn zbar() -> BivariateRational {
        BivariateRational::zbar()
    }

    #[test]
    fn extension_examples() {
        let d = QuadratureDomain::disc();
        let zz = BivariateRational::polynomial(BivariatePoly::monomial(c(1.0, 0.0), 1, 1));
        let m = extend_to_double(&d, &zz).unwrap();
        assert!((m.eval(c(0.3, 0.9)) - 1.0).norm() < 1e-14);

        let cc = c(0.3, 0.1);
        let card = QuadratureDomain::cardioid(cc).unwrap();
        let m = extend_to_double(&card, &zbar()).unwrap();
        let w = c(0.4, -0.7);
        assert!((m.eval(w) - (w.inv() + cc.conj() / (w * w))).norm() < 1e-13);
    }

    #[test]
    fn cardioid_zbar() {
        let cc = 0.4;
        let card = QuadratureDomain::cardioid(c(cc, 0.0)).unwrap();
        let d = decompose(&card, &zbar()).unwrap();
        assert!(d.first.is_empty());
        assert_eq!(d.second.len(), 2);
        let t0 = d.second.iter().find(|t| t.m == 0).unwrap();
        let t1 = d.second.iter().find(|t| t.m == 1).unwrap();
        assert!((t0.coeff + PI * (1.0 + 2.0 * cc * cc)).norm() < 1e-10);
        assert!((t1.coeff + PI * cc).norm() < 1e-10);
        assert!(d.constant.norm() < 1e-10);
        assert!(d.boundary_residual(&card, &zbar(), 256).unwrap() < 1e-9);
    }

    #[test]
    fn circle_real_part() {
        let d = QuadratureDomain::disc();
        let x = BivariateRational::re_z();
        let dec = decompose(&d, &x).unwrap();
        assert_eq!(dec.first.len(), 1);
        assert_eq!(dec.second.len(), 1);
        assert!((dec.first[0].coeff - PI / 2.0).norm() < 1e-12);
        assert!((dec.second[0].coeff + PI / 2.0).norm() < 1e-12);
        let kk = convert(&dec, DecompositionForm::KKbar);
        assert!((kk.second[0].coeff - kk.first[0].coeff.conj()).norm() < 1e-12);
    }

    #[test]
    fn conversions_round_trip() {
        let card = QuadratureDomain::cardioid(c(0.25, 0.1)).unwrap();
        let r = BivariateRational::new(
            BivariatePoly::monomial(c(1.0, 0.5), 2, 1),
            BivariatePoly::from_xy(&[vec![c(3.0, 0.0), c(1.0, 0.0)]]),
        )
        .unwrap();
        let d = decompose(&card, &r).unwrap();
        for f in DecompositionForm::ALL {
            let e = convert(&d, f);
            assert!(e.boundary_residual(&card, &r, 256).unwrap() < 1e-8, "{f}");
            assert_eq!(convert(&e, DecompositionForm::KLambda), d);
        }
    }

    #[test]
    fn constants_and_membership() {
        let card = QuadratureDomain::cardioid(c(0.2, 0.0)).unwrap();
        let g = c(1.5, -2.0);
        let d = decompose(&card, &BivariateRational::constant(g)).unwrap();
        assert_eq!(d.term_count(), 0);
        assert!((d.constant - g).norm() < 1e-14);

        // 1/(z - 1) has a pole on the unit circle
        let disc = QuadratureDomain::disc();
        let r = BivariateRational::new(
            BivariatePoly::constant(c(1.0, 0.0)),
            BivariatePoly::new(vec![vec![c(-1.0, 0.0)], vec![c(1.0, 0.0)]]),
        )
        .unwrap();
        assert!(matches!(decompose(&disc, &r), Err(Error::NotSmoothOnBoundary(_))));
    }

    #[test]
    fn form_names() {
        for f in DecompositionForm::ALL {
            assert_eq!(f.as_str().parse::<DecompositionForm>().unwrap(), f);
        }
        assert!("kk".parse::<DecompositionForm>().is_err());
    }
}
