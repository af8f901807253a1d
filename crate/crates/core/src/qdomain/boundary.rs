use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::QuadratureDomain;
use crate::bivariate::BivariatePoly;
use crate::cpoly::{ComplexPoly, RationalFunction};
use crate::decomp::{convert, decompose_rational, DecompositionForm};
use crate::error::{Error, Result};
use crate::kernels::{KernelFamily, KernelTerm, TermEvaluator};

const ON_BOUNDARY_TOL: f64 = 1e-8;

/// The boundary as the zero set of
/// `1/(conj z - conj a) - conj(k2(z)) - A/(z - a) - c - k1(z)`
/// for a boundary point `a`, with `k1`, `k2` in the span of the `k_b^m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryDescription {
    pub a: C64,
    pub a_disc: C64,
    #[serde(rename = "A")]
    pub residue: C64,
    #[serde(rename = "c")]
    pub constant: C64,
    pub k1: Vec<KernelTerm>,
    pub k2: Vec<KernelTerm>,
    pub equation: String,
    /// The equation with denominators cleared, for affine maps only.
    pub cleared: Option<BivariatePoly>,
}

impl BoundaryDescription {
    /// `lhs - rhs` at `z = P(w)`.
    pub fn defect_w(&self, dom: &QuadratureDomain, w: C64) -> Result<(C64, f64)> {
        let k1 = TermEvaluator::new(dom, &self.k1)?;
        let k2 = TermEvaluator::new(dom, &self.k2)?;
        self.defect_with(dom, &k1, &k2, w)
    }

    fn defect_with(
        &self,
        dom: &QuadratureDomain,
        k1: &TermEvaluator,
        k2: &TermEvaluator,
        w: C64,
    ) -> Result<(C64, f64)> {
        let z = dom.eval(w);
        let lhs_pole = (z.conj() - self.a.conj()).inv();
        let lhs = lhs_pole - k2.eval_w(dom, w)?.conj();
        let rhs_pole = self.residue / (z - self.a);
        let rhs = rhs_pole + self.constant + k1.eval_w(dom, w)?;
        let scale = lhs_pole.norm().max(rhs_pole.norm()).max(1.0);
        Ok((lhs - rhs, scale))
    }

    /// Largest relative defect over `n` boundary samples, skipping those
    /// within `1e-3` of `a`.
    pub fn residual(&self, dom: &QuadratureDomain, n: usize) -> Result<f64> {
        let k1 = TermEvaluator::new(dom, &self.k1)?;
        let k2 = TermEvaluator::new(dom, &self.k2)?;
        let mut worst: f64 = 0.0;
        for w in crate::unit_circle_samples(n, 0.0123) {
            if (w - self.a_disc).norm() < 1e-3 {
                continue;
            }
            let (d, s) = self.defect_with(dom, &k1, &k2, w)?;
            worst = worst.max(d.norm() / s);
        }
        Ok(worst)
    }
}

pub fn boundary_description(dom: &QuadratureDomain, a: C64) -> Result<BoundaryDescription> {
    let wa = dom.inverse_map(a)?;
    if (wa.norm() - 1.0).abs() > ON_BOUNDARY_TOL {
        return Err(Error::Domain(format!("{a} is not on the boundary")));
    }
    let wa = wa / wa.norm();
    let a = dom.eval(wa);
    let s = dom.schwarz();
    let sw = s.as_w_rational();
    let ds = sw.derivative().eval(wa) / dom.eval_derivative(wa);
    if ds.norm() < 1e-12 {
        return Err(Error::Degenerate(format!("S'(a) vanishes at {a}")));
    }
    let residue = ds.inv();

    // 1/(s - conj a) - A/(P - a) over a common denominator, with the
    // removable double factor (w - wa)^2 divided out.
    let (n1, d1) = (sw.num(), sw.den());
    let (n2, d2) = (dom.map().num(), dom.map().den());
    let e1 = n1 - &d1.scaled(a.conj());
    let e2 = n2 - &d2.scaled(a);
    let num = &(d1 * &e2) - &(&(d2 * &e1).scaled(residue));
    let den = &e1 * &e2;
    let num = num.deflate(wa).0.deflate(wa).0;
    let den = den.deflate(wa).0.deflate(wa).0;
    let m = RationalFunction::new(num, den)?.normalize()?;
    if m.is_zero() {
        return Err(Error::Degenerate("boundary data vanishes identically".into()));
    }

    let d = convert(&decompose_rational(dom, &m)?, DecompositionForm::KKbar);
    let mut out = BoundaryDescription {
        a,
        a_disc: wa,
        residue,
        constant: d.constant,
        k1: d.first,
        k2: d.second,
        equation: String::new(),
        cleared: None,
    };
    out.equation = render(&out);
    out.cleared = cleared_equation(dom, &out)?;
    Ok(out)
}

fn fmt_c(c: C64) -> String {
    format!("({:.12}{:+.12}i)", c.re, c.im)
}

fn fmt_terms(terms: &[KernelTerm]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|t| format!("{}*k[a={},m={}](z)", fmt_c(t.coeff), fmt_c(t.a), t.m))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn render(d: &BoundaryDescription) -> String {
    format!(
        "1/(conj(z) - conj{}) - conj({}) = {}/(z - {}) + {} + {}",
        fmt_c(d.a),
        fmt_terms(&d.k2),
        fmt_c(d.residue),
        fmt_c(d.a),
        fmt_c(d.constant),
        fmt_terms(&d.k1)
    )
}

/// Sum of `k` terms as a rational function of `w`.
fn k_rational(dom: &QuadratureDomain, terms: &[KernelTerm]) -> Result<RationalFunction> {
    let mut acc = RationalFunction::zero();
    for t in terms {
        let fam = KernelFamily::new(dom, t.a, t.m)?;
        let q = ComplexPoly::new(vec![C64::new(1.0, 0.0), -fam.alpha().conj()]);
        let n = t.m + 1;
        let mut num = ComplexPoly::zero();
        for (j, &c) in fam.k_principal(t.m).iter().enumerate() {
            num = &num + &(&ComplexPoly::monomial(c, j + 1) * &q.pow(n - j - 1));
        }
        let term = RationalFunction::new(num.scaled(t.coeff), q.pow(n))?;
        acc = &acc + &term;
    }
    Ok(acc)
}

/// `p((t - p0)/p1)` as a polynomial in `t`.
fn compose_affine(p: &ComplexPoly, p0: C64, p1: C64) -> ComplexPoly {
    let lin = ComplexPoly::new(vec![-p0 / p1, p1.inv()]);
    p.coeffs()
        .iter()
        .rev()
        .fold(ComplexPoly::zero(), |acc, &c| &(&acc * &lin) + &ComplexPoly::constant(c))
}

fn cleared_equation(dom: &QuadratureDomain, d: &BoundaryDescription) -> Result<Option<BivariatePoly>> {
    let map = dom.map();
    if !map.is_polynomial() || map.num().len_degree() > 1 {
        return Ok(None);
    }
    let (p0, p1) = (map.num().coeff(0), map.num().coeff(1));
    let one = C64::new(1.0, 0.0);
    // F(z) = A/(z - a) + c + k1(z)
    let k1 = k_rational(dom, &d.k1)?;
    let (k1n, k1d) = (compose_affine(k1.num(), p0, p1), compose_affine(k1.den(), p0, p1));
    let za = ComplexPoly::new(vec![-d.a, one]);
    let f_den = &za * &k1d;
    let f_num = &(&(&k1d.scaled(d.residue) + &(&za * &k1d).scaled(d.constant)) + &(&za * &k1n));
    // G(zbar) = 1/(zbar - conj a) - conj(k2(z))
    let k2 = k_rational(dom, &d.k2)?;
    let (k2n, k2d) = (
        compose_affine(&k2.num().conj_coeffs(), p0.conj(), p1.conj()),
        compose_affine(&k2.den().conj_coeffs(), p0.conj(), p1.conj()),
    );
    let zba = ComplexPoly::new(vec![-d.a.conj(), one]);
    let g_den = &zba * &k2d;
    let g_num = &k2d - &(&zba * &k2n);
    let poly = BivariatePoly::outer(&f_den, &g_num)
        .add(&BivariatePoly::outer(f_num, &g_den).scaled(-one));
    let (dz, dzb) = poly.degrees();
    let lead = (0..=dz + dzb)
        .rev()
        .find_map(|tot| {
            (0..=tot)
                .map(|i| poly.get(i, tot - i))
                .filter(|c| c.norm() > 1e-12 * poly.scale())
                .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        })
        .ok_or_else(|| Error::Degenerate("cleared boundary equation vanishes".into()))?;
    Ok(Some(poly.scaled(lead.inv())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn disc_at_one() {
        let d = QuadratureDomain::disc();
        let b = boundary_description(&d, c(1.0, 0.0)).unwrap();
        assert!((b.residue + 1.0).norm() < 1e-14);
        assert!((b.constant + 1.0).norm() < 1e-12);
        assert!(b.k1.iter().chain(&b.k2).all(|t| t.coeff.norm() < 1e-12));
        let p = b.cleared.clone().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = match (i, j) {
                    (1, 1) => 1.0,
                    (0, 0) => -1.0,
                    _ => 0.0,
                };
                assert!((p.get(i, j) - expect).norm() < 1e-10, "{i} {j} {}", p.get(i, j));
            }
        }
    }

    #[test]
    fn disc_at_i_and_cardioid() {
        let d = QuadratureDomain::disc();
        let b = boundary_description(&d, c(0.0, 1.0)).unwrap();
        assert!(b.residual(&d, 256).unwrap() < 1e-10);
        let card = QuadratureDomain::cardioid(c(0.4, 0.0)).unwrap();
        let b = boundary_description(&card, card.eval(c(1.0, 0.0))).unwrap();
        assert!(b.residual(&card, 256).unwrap() < 1e-8);
        assert!(b.cleared.is_none());
        assert!(boundary_description(&card, c(0.1, 0.0)).is_err());
    }
}
