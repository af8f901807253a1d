//! Bergman kernel `K`, complementary kernel `Lambda`, their derivative
//! families `K_a^m`, `Lambda_a^m` and the normalized antiderivatives
//! `k_a^m`, `lambda_a^m`.
//!
//! With `f = P^{-1}` the Riemann map and `w = f(z)`:
//!
//! ```text
//! K(z, a)        = f'(z) conj(f'(a)) / (pi (1 - w conj f(a))^2)
//! Lambda(z, a)   = f'(z) f'(a) / (pi (f(a) - w)^2)
//! k_a^0(z)       = w conj(f'(a)) / (pi (1 - w conj f(a)))
//! lambda_a^0(z)  = f'(a) / (pi (f(a) - w))
//! ```
//!
//! Higher orders differentiate in `conj(a)` (for `K`, `k`) or `a` (for
//! `Lambda`, `lambda`) with truncated power series in the base point. In
//! the disc coordinate `lambda_a^m` is a pure principal part at
//! `w = f(a)` and `k_a^m` a pure principal part at the reflected point
//! `1/conj f(a)`, written in the variable `1/w`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qdomain::{QuadratureDomain, BOUNDARY_TOL};
use crate::series::{factorial, Series};

pub const DEFAULT_MAX_ORDER: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelKind {
    #[serde(rename = "K")]
    K,
    #[serde(rename = "Lambda")]
    Lambda,
    #[serde(rename = "k_lower")]
    KLower,
    #[serde(rename = "lambda_lower")]
    LambdaLower,
}

/// `coeff * kind_a^m`
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelTerm {
    pub kind: KernelKind,
    pub a: C64,
    pub m: usize,
    pub coeff: C64,
}

impl KernelTerm {
    pub fn new(kind: KernelKind, a: C64, m: usize, coeff: C64) -> Self {
        KernelTerm { kind, a, m, coeff }
    }

    /// Checks that `a` is strictly interior and `m` within `max_order`.
    pub fn validate(&self, dom: &QuadratureDomain, max_order: usize) -> Result<()> {
        if self.m > max_order {
            return Err(Error::Config(format!(
                "derivative order {} exceeds the maximum {max_order}",
                self.m
            )));
        }
        let alpha = dom.inverse_map(self.a)?;
        if alpha.norm() >= 1.0 - BOUNDARY_TOL {
            return Err(Error::Domain(format!("base point {} is not interior", self.a)));
        }
        Ok(())
    }
}

/// Generic principal-part family: the Laurent coefficients in
/// `t = x - phi(0)` of `(1/pi) d^m/dh^m [phi'(h) / (phi(h) - x)]` at `h = 0`,
/// for `m = 0..=max_m`. Entry `[m][n-1]` multiplies `t^-n`.
fn pole_family(phi: &Series, max_m: usize) -> Vec<Vec<C64>> {
    let len = max_m + 1;
    let dphi = phi.derivative().truncated(len);
    let delta = phi.add_constant(-phi.coeff(0)).truncated(len);
    let mut out: Vec<Vec<C64>> = (0..=max_m).map(|m| vec![C64::new(0.0, 0.0); m + 1]).collect();
    let mut prod = dphi;
    for n in 0..=max_m {
        for (m, row) in out.iter_mut().enumerate().skip(n) {
            row[n] = -prod.coeff(m) * factorial(m) / PI;
        }
        prod = &prod * &delta;
    }
    out
}

/// Local data of all four kernel families at one base point.
#[derive(Clone, Debug)]
pub struct KernelFamily {
    a: C64,
    alpha: C64,
    max_m: usize,
    /// Taylor series of the Riemann map at `a`, length `max_m + 2`.
    f_series: Series,
    lambda_pp: Vec<Vec<C64>>,
    k_pp: Vec<Vec<C64>>,
}

impl KernelFamily {
    pub fn new(dom: &QuadratureDomain, a: C64, max_m: usize) -> Result<Self> {
        let alpha = dom.inverse_map(a)?;
        Self::at_disc_point(dom, alpha, max_m)
    }

    /// Family at `a = P(alpha)`.
    pub fn at_disc_point(dom: &QuadratureDomain, alpha: C64, max_m: usize) -> Result<Self> {
        if alpha.norm() >= 1.0 - BOUNDARY_TOL {
            return Err(Error::Domain(format!(
                "base point with disc coordinate {alpha} is not interior"
            )));
        }
        let f_series = dom.riemann_map_series(alpha, max_m + 2)?;
        let lambda_pp = pole_family(&f_series, max_m);
        // k_a^0 = -g'(s) / (pi (g(s) - 1/w)) with g(s) = conj f(conj s)
        let k_pp = pole_family(&f_series.conj(), max_m)
            .into_iter()
            .map(|row| row.into_iter().map(|c| -c).collect())
            .collect();
        Ok(KernelFamily {
            a: dom.eval(alpha),
            alpha,
            max_m,
            f_series,
            lambda_pp,
            k_pp,
        })
    }

    pub fn a(&self) -> C64 {
        self.a
    }

    /// `f(a)`
    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    /// `f'(a)`
    pub fn f_prime(&self) -> C64 {
        self.f_series.coeff(1)
    }

    pub fn max_order(&self) -> usize {
        self.max_m
    }

    fn check_order(&self, m: usize) -> Result<()> {
        if m > self.max_m {
            return Err(Error::Config(format!(
                "order {m} exceeds the family's maximum {}",
                self.max_m
            )));
        }
        Ok(())
    }

    /// Coefficients of `(w - f(a))^-n`, `n = 1..=m+1`, of `lambda_a^m`.
    pub fn lambda_principal(&self, m: usize) -> &[C64] {
        &self.lambda_pp[m]
    }

    /// Coefficients of `(1/w - conj f(a))^-n`, `n = 1..=m+1`, of `k_a^m`.
    pub fn k_principal(&self, m: usize) -> &[C64] {
        &self.k_pp[m]
    }

    /// `k_a^m` at disc point `w`; vanishes at `w = 0`.
    pub fn k_lower_w(&self, m: usize, w: C64) -> C64 {
        let y = w / (C64::new(1.0, 0.0) - self.alpha.conj() * w);
        self.k_pp[m]
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &c| (acc + c) * y)
    }

    /// `d/dw k_a^m` at disc point `w`.
    pub fn k_lower_dw(&self, m: usize, w: C64) -> C64 {
        let one = C64::new(1.0, 0.0);
        let den = one - self.alpha.conj() * w;
        let y = w / den;
        let dy = (den * den).inv();
        let mut s = C64::new(0.0, 0.0);
        for (n, &c) in self.k_pp[m].iter().enumerate().rev() {
            s = s * y + c * (n + 1) as f64;
        }
        s * dy
    }

    /// `lambda_a^m` at disc point `w`; the pole at `w = f(a)` is an error.
    pub fn lambda_lower_w(&self, m: usize, w: C64) -> Result<C64> {
        let t = w - self.alpha;
        if t.norm() < 1e-300 {
            return Err(Error::Pole {
                pole: self.a,
                coordinate: "w",
                principal_part: self.lambda_pp[m].clone(),
            });
        }
        let ti = t.inv();
        Ok(self.lambda_pp[m]
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &c| (acc + c) * ti))
    }

    /// `d/dw lambda_a^m`.
    pub fn lambda_lower_dw(&self, m: usize, w: C64) -> Result<C64> {
        let t = w - self.alpha;
        if t.norm() < 1e-300 {
            return Err(Error::Pole {
                pole: self.a,
                coordinate: "w",
                principal_part: self.lambda_pp[m].clone(),
            });
        }
        let ti = t.inv();
        let mut s = C64::new(0.0, 0.0);
        for (n, &c) in self.lambda_pp[m].iter().enumerate().rev() {
            s = (s - c * (n + 1) as f64) * ti;
        }
        Ok(s * ti)
    }

    /// `K_a^m(P(w))`, by Taylor-mode differentiation of the closed form in
    /// `conj(a)`.
    pub fn bergman_deriv_w(&self, dom: &QuadratureDomain, m: usize, w: C64) -> Result<C64> {
        self.check_order(m)?;
        let len = m + 1;
        let g = self.f_series.conj();
        let dg = g.derivative().truncated(len);
        let one_minus = g.truncated(len).scaled(-w).add_constant(C64::new(1.0, 0.0));
        let q = dg.div(&(&one_minus * &one_minus)).map_err(|_| {
            Error::Domain("boundary-diagonal evaluation of the Bergman kernel".into())
        })?;
        Ok(q.derivative_value(m) / (PI * dom.eval_derivative(w)))
    }

    /// `Lambda_a^m(P(w))`, by Taylor-mode differentiation in `a`.
    pub fn lambda_deriv_w(&self, dom: &QuadratureDomain, m: usize, w: C64) -> Result<C64> {
        self.check_order(m)?;
        let len = m + 1;
        let df = self.f_series.derivative().truncated(len);
        let diff = self.f_series.truncated(len).add_constant(-w);
        let q = df.div(&(&diff * &diff)).map_err(|_| Error::Pole {
            pole: self.a,
            coordinate: "w",
            principal_part: Vec::new(),
        })?;
        Ok(q.derivative_value(m) / (PI * dom.eval_derivative(w)))
    }

    /// Value of `coeff * kind_a^m` at disc point `w`.
    pub fn eval_term_w(&self, dom: &QuadratureDomain, kind: KernelKind, m: usize, w: C64) -> Result<C64> {
        self.check_order(m)?;
        match kind {
            KernelKind::KLower => Ok(self.k_lower_w(m, w)),
            KernelKind::LambdaLower => self.lambda_lower_w(m, w),
            KernelKind::K => self.bergman_deriv_w(dom, m, w),
            KernelKind::Lambda => self.lambda_deriv_w(dom, m, w),
        }
    }
}

/// Families for a list of terms, one per distinct base point.
#[derive(Clone, Debug)]
pub struct TermEvaluator {
    families: Vec<KernelFamily>,
    terms: Vec<(usize, KernelTerm)>,
}

impl TermEvaluator {
    pub fn new(dom: &QuadratureDomain, terms: &[KernelTerm]) -> Result<Self> {
        let mut families: Vec<KernelFamily> = Vec::new();
        let mut indexed = Vec::with_capacity(terms.len());
        for t in terms {
            let max_m = terms
                .iter()
                .filter(|s| s.a == t.a)
                .map(|s| s.m)
                .max()
                .unwrap_or(0);
            let idx = match families.iter().position(|f| f.a == t.a) {
                Some(i) => i,
                None => {
                    let mut fam = KernelFamily::new(dom, t.a, max_m)?;
                    fam.a = t.a;
                    families.push(fam);
                    families.len() - 1
                }
            };
            indexed.push((idx, *t));
        }
        Ok(TermEvaluator {
            families,
            terms: indexed,
        })
    }

    /// `sum coeff * kind_a^m` at disc point `w`.
    pub fn eval_w(&self, dom: &QuadratureDomain, w: C64) -> Result<C64> {
        let mut s = C64::new(0.0, 0.0);
        for (i, t) in &self.terms {
            s += t.coeff * self.families[*i].eval_term_w(dom, t.kind, t.m, w)?;
        }
        Ok(s)
    }

    /// `d/dw` of the sum; only for antiderivative kinds.
    pub fn eval_dw(&self, w: C64) -> Result<C64> {
        let mut s = C64::new(0.0, 0.0);
        for (i, t) in &self.terms {
            let fam = &self.families[*i];
            s += t.coeff
                * match t.kind {
                    KernelKind::KLower => fam.k_lower_dw(t.m, w),
                    KernelKind::LambdaLower => fam.lambda_lower_dw(t.m, w)?,
                    _ => return Err(Error::Config("derivative of a kernel term".into())),
                };
        }
        Ok(s)
    }
}

/// `K(z, w) = f'(z) conj(f'(w)) / (pi (1 - f(z) conj f(w))^2)`.
pub fn bergman_k(dom: &QuadratureDomain, z: C64, w: C64) -> Result<C64> {
    let u = dom.inverse_map(z)?;
    let v = dom.inverse_map(w)?;
    bergman_k_disc(dom, u, v)
}

/// Bergman kernel with both arguments given by disc coordinates.
pub fn bergman_k_disc(dom: &QuadratureDomain, u: C64, v: C64) -> Result<C64> {
    let d = C64::new(1.0, 0.0) - u * v.conj();
    if d.norm() < 1e-12 {
        return Err(Error::Domain(
            "Bergman kernel evaluated on the boundary diagonal".into(),
        ));
    }
    let fu = dom.eval_derivative(u).inv();
    let fv = dom.eval_derivative(v).inv();
    Ok(fu * fv.conj() / (PI * d * d))
}

/// `Lambda(z, w) = f'(z) f'(w) / (pi (f(z) - f(w))^2)`.
pub fn lambda_l(dom: &QuadratureDomain, z: C64, w: C64) -> Result<C64> {
    let u = dom.inverse_map(z)?;
    let v = dom.inverse_map(w)?;
    lambda_l_disc(dom, u, v)
}

pub fn lambda_l_disc(dom: &QuadratureDomain, u: C64, v: C64) -> Result<C64> {
    let d = u - v;
    if d.norm() < 1e-14 {
        return Err(Error::Pole {
            pole: dom.eval(v),
            coordinate: "w",
            principal_part: Vec::new(),
        });
    }
    let fu = dom.eval_derivative(u).inv();
    let fv = dom.eval_derivative(v).inv();
    Ok(fu * fv / (PI * d * d))
}

pub fn k_deriv(dom: &QuadratureDomain, a: C64, m: usize, z: C64) -> Result<C64> {
    check_order(m)?;
    let fam = KernelFamily::new(dom, a, m)?;
    fam.bergman_deriv_w(dom, m, dom.inverse_map(z)?)
}

pub fn lambda_deriv(dom: &QuadratureDomain, a: C64, m: usize, z: C64) -> Result<C64> {
    check_order(m)?;
    let fam = KernelFamily::new(dom, a, m)?;
    fam.lambda_deriv_w(dom, m, dom.inverse_map(z)?)
}

pub fn k_lower(dom: &QuadratureDomain, a: C64, m: usize, z: C64) -> Result<C64> {
    check_order(m)?;
    let fam = KernelFamily::new(dom, a, m)?;
    Ok(fam.k_lower_w(m, dom.inverse_map(z)?))
}

pub fn lambda_lower(dom: &QuadratureDomain, a: C64, m: usize, z: C64) -> Result<C64> {
    check_order(m)?;
    let fam = KernelFamily::new(dom, a, m)?;
    fam.lambda_lower_w(m, dom.inverse_map(z)?)
}

fn check_order(m: usize) -> Result<()> {
    if m > DEFAULT_MAX_ORDER {
        return Err(Error::Config(format!(
            "derivative order {m} exceeds the maximum {DEFAULT_MAX_ORDER}"
        )));
    }
    Ok(())
}

/// Disc coordinates of the nine interior test points used by the
/// identity reports.
pub fn interior_test_points() -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0)];
    for k in 0..4 {
        let th = 0.3 + std::f64::consts::FRAC_PI_2 * k as f64;
        v.push(C64::from_polar(0.3, th));
        v.push(C64::from_polar(0.6, th + 0.5));
    }
    v
}

/// Maximum residuals of the boundary identities relating the two kernels.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    /// `K(z,w) T + conj(Lambda(z,w)) conj(T)` on the boundary.
    pub kl: f64,
    /// Same for the order `m <= 2` derivative families.
    pub kl_m: f64,
    /// `T(z) K(z,w) conj(T(w)) + conj(T(z) Lambda(z,w) T(w))`, both on the boundary.
    pub both_boundary: f64,
    /// `k_a^m + conj(lambda_a^m)` on the boundary, `m <= 2`.
    pub k_lambda: f64,
}

impl IdentityReport {
    pub fn max(&self) -> f64 {
        self.kl.max(self.kl_m).max(self.both_boundary).max(self.k_lambda)
    }
}

/// Residuals over `n_boundary` boundary points and the nine interior
/// base points. Each residual is relative to the size of the terms.
pub fn boundary_identities(dom: &QuadratureDomain, n_boundary: usize) -> Result<IdentityReport> {
    let mut rep = IdentityReport::default();
    let thetas: Vec<f64> = (0..n_boundary)
        .map(|j| std::f64::consts::TAU * j as f64 / n_boundary as f64 + 0.01)
        .collect();
    let bases = interior_test_points();
    for &alpha in &bases {
        let fam = KernelFamily::at_disc_point(dom, alpha, 2)?;
        for &th in &thetas {
            let w = C64::from_polar(1.0, th);
            let t = dom.tangent(th);
            let kk = bergman_k_disc(dom, w, alpha)?;
            let ll = lambda_l_disc(dom, w, alpha)?;
            rep.kl = rep.kl.max(rel(kk * t + ll.conj() * t.conj(), kk.norm() + ll.norm()));
            for m in 0..=2 {
                let km = fam.bergman_deriv_w(dom, m, w)?;
                let lm = fam.lambda_deriv_w(dom, m, w)?;
                rep.kl_m = rep.kl_m.max(rel(km * t + lm.conj() * t.conj(), km.norm() + lm.norm()));
                let k = fam.k_lower_w(m, w);
                let l = fam.lambda_lower_w(m, w)?;
                rep.k_lambda = rep.k_lambda.max(rel(k + l.conj(), k.norm() + l.norm()));
            }
        }
    }
    for (i, &th1) in thetas.iter().enumerate() {
        for &th2 in thetas.iter().skip(i + 1).step_by(7) {
            let (w1, w2) = (C64::from_polar(1.0, th1), C64::from_polar(1.0, th2));
            let (t1, t2) = (dom.tangent(th1), dom.tangent(th2));
            let lhs = t1 * bergman_k_disc(dom, w1, w2)? * t2.conj();
            let rhs = -(t1 * lambda_l_disc(dom, w1, w2)? * t2).conj();
            rep.both_boundary = rep.both_boundary.max(rel(lhs - rhs, lhs.norm() + rhs.norm()));
        }
    }
    Ok(rep)
}

fn rel(err: C64, scale: f64) -> f64 {
    err.norm() / scale.max(1.0)
}

/// Argument-principle count (zeros minus poles inside) of a function
/// given on the boundary by its values at `w = e^{i theta}`.
pub fn winding_number(values: &[C64]) -> f64 {
    let n = values.len();
    let mut total = 0.0;
    for j in 0..n {
        total += (values[(j + 1) % n] / values[j]).arg();
    }
    total / std::f64::consts::TAU
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    /// Mean of `k_b^0 / lambda_b^0 / f^2` over the interior sample.
    pub constant: C64,
    /// Largest deviation from that mean.
    pub spread: f64,
    /// `| |constant| - 1 |`
    pub unimodular_error: f64,
    /// Zero count of `k_a^0` in the closed domain.
    pub k_zeros: i64,
    /// Zero count of `lambda_a^0` in the closed domain.
    pub lambda_zeros: i64,
    /// Distance of the raw winding numbers from the nearest integers.
    pub rounding_gap: f64,
}

/// The ratio `k_b^0 / lambda_b^0` against `f^2` and the zero counts of
/// `k_a^0` and `lambda_a^0` for a base point with disc coordinate `alpha`.
pub fn ratio_checks(dom: &QuadratureDomain, alpha: C64) -> Result<RatioReport> {
    let fb = KernelFamily::at_disc_point(dom, C64::new(0.0, 0.0), 0)?;
    let mut ratios = Vec::with_capacity(16);
    for k in 0..16 {
        let w = C64::from_polar(0.15 + 0.05 * (k % 4) as f64 * 3.0, 0.4 * k as f64 + 0.1);
        let r = fb.k_lower_w(0, w) / fb.lambda_lower_w(0, w)? / (w * w);
        ratios.push(r);
    }
    let constant = ratios.iter().sum::<C64>() / ratios.len() as f64;
    let spread = ratios.iter().map(|r| (r - constant).norm()).fold(0.0, f64::max);

    let fa = KernelFamily::at_disc_point(dom, alpha, 0)?;
    let circle = crate::unit_circle_samples(1024, 0.0);
    let kv: Vec<C64> = circle.iter().map(|&w| fa.k_lower_w(0, w)).collect();
    let lv: Vec<C64> = circle
        .iter()
        .map(|&w| fa.lambda_lower_w(0, w))
        .collect::<Result<_>>()?;
    let wk = winding_number(&kv);
    let wl = winding_number(&lv);
    let gap = (wk - wk.round()).abs().max((wl - wl.round()).abs());
    if gap > 0.1 {
        return Err(Error::Domain(format!(
            "winding numbers {wk}, {wl} are not close to integers"
        )));
    }
    Ok(RatioReport {
        constant,
        spread,
        unimodular_error: (constant.norm() - 1.0).abs(),
        k_zeros: wk.round() as i64,
        // lambda_a^0 has exactly one simple pole (at a) in the domain
        lambda_zeros: wl.round() as i64 + 1,
        rounding_gap: gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn disc_spot_values() {
        let d = QuadratureDomain::disc();
        assert!((bergman_k(&d, c(0.0, 0.0), c(0.0, 0.0)).unwrap() - 1.0 / PI).norm() < 1e-15);
        let v = bergman_k(&d, c(0.5, 0.0), c(0.5, 0.0)).unwrap();
        assert!((v - 16.0 / (9.0 * PI)).norm() < 1e-14);
        let l = lambda_l(&d, c(0.5, 0.0), c(0.0, 0.0)).unwrap();
        assert!((l - 4.0 / PI).norm() < 1e-14);
        assert!(lambda_l(&d, c(0.5, 0.0), c(0.5, 0.0)).is_err());
        assert!(bergman_k(&d, c(1.0, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn disc_derivative_families() {
        let d = QuadratureDomain::disc();
        let z = c(0.3, -0.2);
        let k1 = k_deriv(&d, c(0.0, 0.0), 1, z).unwrap();
        assert!((k1 - 2.0 * z / PI).norm() < 1e-14);
        let l0 = lambda_deriv(&d, c(0.0, 0.0), 0, z).unwrap();
        assert!((l0 - (PI * z * z).inv()).norm() < 1e-13);
    }

    #[test]
    fn disc_antiderivative_closed_forms() {
        let d = QuadratureDomain::disc();
        let k = k_lower(&d, c(0.5, 0.0), 0, c(0.5, 0.0)).unwrap();
        assert!((k - 2.0 / (3.0 * PI)).norm() < 1e-15);
        let z = c(0.1, 0.6);
        assert!((k_lower(&d, c(0.0, 0.0), 0, z).unwrap() - z / PI).norm() < 1e-15);
        let l = lambda_lower(&d, c(0.5, 0.0), 0, c(0.0, 0.0)).unwrap();
        assert!((l - 2.0 / PI).norm() < 1e-15);
        assert!((lambda_lower(&d, c(0.0, 0.0), 0, z).unwrap() + (PI * z).inv()).norm() < 1e-14);
        assert!(matches!(
            lambda_lower(&d, c(0.5, 0.0), 0, c(0.5, 0.0)),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn cardioid_lambda_b1() {
        let cc = 0.4;
        let d = QuadratureDomain::cardioid(c(cc, 0.0)).unwrap();
        let fam = KernelFamily::at_disc_point(&d, c(0.0, 0.0), 1).unwrap();
        let w = c(0.3, 0.5);
        let expect = (2.0 * cc / w - 1.0 / (w * w)) / PI;
        assert!((fam.lambda_lower_w(1, w).unwrap() - expect).norm() < 1e-14);
    }

    #[test]
    fn k_pole_is_at_reflected_point() {
        let d = QuadratureDomain::disc();
        let fam = KernelFamily::new(&d, c(0.5, 0.0), 0).unwrap();
        // single simple pole in 1/w - 1/2, i.e. at w = 2
        assert_eq!(fam.k_principal(0).len(), 1);
        assert!(fam.k_lower_w(0, c(2.0 - 1e-9, 0.0)).norm() > 1e6);
        assert!(fam.k_lower_w(0, c(0.0, 0.0)).norm() == 0.0);
    }

    #[test]
    fn order_limit_is_a_configuration_error() {
        let d = QuadratureDomain::disc();
        assert!(matches!(
            k_deriv(&d, c(0.0, 0.0), DEFAULT_MAX_ORDER + 1, c(0.1, 0.0)),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn ratio_on_disc() {
        let r = ratio_checks(&QuadratureDomain::disc(), c(0.3, 0.2)).unwrap();
        assert!((r.constant + 1.0).norm() < 1e-12);
        assert_eq!(r.k_zeros, 1);
        assert_eq!(r.lambda_zeros, 0);
    }
}
