use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::QuadratureDomain;
use crate::bivariate::BivariatePoly;
use crate::cpoly::ComplexPoly;
use crate::error::{Error, Result};

/// Polynomial `Q(z, zbar)` vanishing on the boundary curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImplicitCurve {
    pub coeffs: Vec<Vec<C64>>,
    pub var_order: String,
}

impl ImplicitCurve {
    pub fn poly(&self) -> BivariatePoly {
        BivariatePoly::new(self.coeffs.clone())
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.poly().eval(z)
    }

    /// `|Q(z, conj z)| / sum |q_ij| |z|^(i+j)`
    pub fn relative_value(&self, z: C64) -> f64 {
        let p = self.poly();
        p.eval(z).norm() / p.eval_scale(z)
    }

    /// `|Q(z, conj z)|` over the coefficient scale.
    pub fn scaled_value(&self, z: C64) -> f64 {
        let p = self.poly();
        p.eval(z).norm() / p.scale()
    }

    /// Largest scaled value at `n` boundary samples.
    pub fn boundary_residual(&self, dom: &QuadratureDomain, n: usize) -> f64 {
        crate::unit_circle_samples(n, 0.0)
            .into_iter()
            .map(|w| self.scaled_value(dom.eval(w)))
            .fold(0.0, f64::max)
    }
}

/// Resultant implicitization of a polynomial domain.
pub fn implicitize(dom: &QuadratureDomain) -> Result<ImplicitCurve> {
    if !dom.map().is_polynomial() {
        return Err(Error::Domain(
            "implicitization is only implemented for polynomial maps".into(),
        ));
    }
    let p = dom.map().num().scaled(dom.map().den().leading().inv());
    implicitize_polynomial(&p)
}

/// `Res_w(P(w) - z, zbar w^d - w^d conj(P)(1/w))` for a polynomial `P` of
/// degree `d`, recovered by evaluating Sylvester determinants on a
/// `(d+1) x (d+1)` grid of scaled roots of unity and inverting the 2-D DFT.
pub fn implicitize_polynomial(p: &ComplexPoly) -> Result<ImplicitCurve> {
    let d = match p.degree().finite() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::Domain("implicitization needs a nonconstant map".into())),
    };
    let n = d + 1;
    let rho = crate::unit_circle_samples(64, 0.0)
        .into_iter()
        .map(|w| p.eval(w).norm())
        .fold(0.0, f64::max)
        .max(1e-3);
    let nodes: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(1.0, TAU * k as f64 / n as f64))
        .collect();
    let mut vals = vec![vec![C64::new(0.0, 0.0); n]; n];
    for (i, &wi) in nodes.iter().enumerate() {
        for (j, &wj) in nodes.iter().enumerate() {
            vals[i][j] = resultant_at(p, d, wi * rho, wj * rho);
        }
    }
    let mut coeffs = vec![vec![C64::new(0.0, 0.0); n]; n];
    for (k, row) in coeffs.iter_mut().enumerate() {
        for (l, out) in row.iter_mut().enumerate() {
            let mut s = C64::new(0.0, 0.0);
            for (i, vi) in vals.iter().enumerate() {
                for (j, &v) in vi.iter().enumerate() {
                    s += v * C64::from_polar(1.0, -TAU * ((i * k + j * l) % n) as f64 / n as f64);
                }
            }
            *out = s / (n * n) as f64 / rho.powi((k + l) as i32);
        }
    }
    let poly = BivariatePoly::new(coeffs.clone());
    // a posteriori degree-bound check at off-grid points
    let mut worst: f64 = 0.0;
    for t in 0..8 {
        let z = C64::from_polar(rho * (0.3 + 0.09 * t as f64), 0.7 + 1.3 * t as f64);
        let zb = C64::from_polar(rho * (0.95 - 0.08 * t as f64), -0.4 + 2.1 * t as f64);
        let direct = resultant_at(p, d, z, zb);
        let interp = poly.eval2(z, zb);
        let mag = poly_abs_eval(&poly, z, zb).max(direct.norm());
        worst = worst.max((direct - interp).norm() / mag.max(f64::MIN_POSITIVE));
    }
    if worst > 1e-8 {
        return Err(Error::DegreeBound { residual: worst });
    }
    let coeffs = refine(p, d, coeffs);
    let scale = BivariatePoly::new(coeffs.clone()).scale();
    let lead = coeffs[d][d];
    let norm = if lead.norm() > 1e-8 * scale {
        lead
    } else {
        coeffs
            .iter()
            .flatten()
            .copied()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .unwrap_or(C64::new(1.0, 0.0))
    };
    let coeffs = coeffs
        .into_iter()
        .map(|r| r.into_iter().map(|c| c / norm).collect())
        .collect();
    Ok(ImplicitCurve {
        coeffs,
        var_order: "z,zbar".into(),
    })
}

/// Least-squares polish: with the largest coefficient held fixed, minimize the
/// Laurent coefficients of `Q(P(w), conj(P)(1/w))`, i.e. the L2 norm of `Q`
/// on the boundary. Keeps whichever of the two coefficient sets does better.
fn refine(p: &ComplexPoly, d: usize, coeffs: Vec<Vec<C64>>) -> Vec<Vec<C64>> {
    let n = d + 1;
    let (fi, fj) = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .max_by(|&(a, b), &(c, e)| coeffs[a][b].norm().total_cmp(&coeffs[c][e].norm()))
        .unwrap_or((d, d));
    let fixed = coeffs[fi][fj];
    let pows: Vec<ComplexPoly> = (0..n).map(|k| p.pow(k)).collect();
    let rows = 2 * d * d + 1;
    let column = |i: usize, j: usize| {
        let mut col = vec![C64::new(0.0, 0.0); rows];
        for (m, &am) in pows[i].coeffs().iter().enumerate() {
            for (k, bk) in pows[j].coeffs().iter().enumerate() {
                col[m + d * d - k] += am * bk.conj();
            }
        }
        col
    };
    let unknowns: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&ij| ij != (fi, fj))
        .collect();
    let mut a = DMatrix::<C64>::zeros(rows, unknowns.len());
    let mut colscale = vec![1.0; unknowns.len()];
    for (c, &(i, j)) in unknowns.iter().enumerate() {
        let col = column(i, j);
        let nrm = col.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
        colscale[c] = nrm;
        for (r, v) in col.into_iter().enumerate() {
            a[(r, c)] = v / nrm;
        }
    }
    let rhs = nalgebra::DVector::from_iterator(rows, column(fi, fj).into_iter().map(|v| -v * fixed));
    let Ok(x) = a.svd(true, true).solve(&rhs, 1e-14) else {
        return coeffs;
    };
    let mut refined = vec![vec![C64::new(0.0, 0.0); n]; n];
    refined[fi][fj] = fixed;
    for (c, &(i, j)) in unknowns.iter().enumerate() {
        refined[i][j] = x[c] / colscale[c];
    }
    let residual = |q: &[Vec<C64>]| {
        let poly = BivariatePoly::new(q.to_vec());
        let scale = poly.scale();
        crate::unit_circle_samples(4 * n * n, 0.0)
            .into_iter()
            .map(|w| poly.eval(p.eval(w)).norm() / scale)
            .fold(0.0, f64::max)
    };
    if residual(&refined) < residual(&coeffs) {
        refined
    } else {
        coeffs
    }
}

fn poly_abs_eval(p: &BivariatePoly, z: C64, zb: C64) -> f64 {
    p.coeffs
        .iter()
        .enumerate()
        .flat_map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(move |(j, c)| c.norm() * z.norm().powi(i as i32) * zb.norm().powi(j as i32))
        })
        .sum()
}

/// Sylvester determinant of `A(w) = P(w) - z` and
/// `B(w) = zb w^d - sum_k conj(p_k) w^(d-k)`, both of formal degree `d`.
fn resultant_at(p: &ComplexPoly, d: usize, z: C64, zb: C64) -> C64 {
    let a: Vec<C64> = (0..=d)
        .map(|k| if k == 0 { p.coeff(0) - z } else { p.coeff(k) })
        .collect();
    let mut b: Vec<C64> = (0..=d).map(|j| -p.coeff(d - j).conj()).collect();
    b[d] += zb;
    let size = 2 * d;
    let mut m = DMatrix::<C64>::zeros(size, size);
    // rows 0..d: shifts of A; rows d..2d: shifts of B; columns by descending power
    for r in 0..d {
        for k in 0..=d {
            m[(r, r + d - k)] = a[k];
            m[(d + r, r + d - k)] = b[k];
        }
    }
    m.lu().determinant()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disc_gives_z_zbar_minus_one() {
        let q = implicitize(&QuadratureDomain::disc()).unwrap();
        let expect = [[-1.0, 0.0], [0.0, 1.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((q.coeffs[i][j] - expect[i][j]).norm() < 1e-12, "{i}{j}: {}", q.coeffs[i][j]);
            }
        }
    }

    #[test]
    fn cardioid_curve_vanishes_on_boundary() {
        let dom = QuadratureDomain::cardioid(C64::new(0.3, 0.2)).unwrap();
        let q = implicitize(&dom).unwrap();
        assert!(q.boundary_residual(&dom, 256) < 1e-10);
        assert!(q.relative_value(dom.base()) > 1e-6);
    }
}
