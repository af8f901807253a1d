//! Small quadrature helpers used by checks and test oracles.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::qdomain::QuadratureDomain;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut t = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, t);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * t * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
            }
            dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
            let dt = p1 / dp;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

fn pullback_sum(dom: &QuadratureDomain, h: &dyn Fn(C64) -> C64, nr: usize, nt: usize) -> (C64, f64) {
    let (x, w) = gauss_legendre(nr);
    let mut s = C64::new(0.0, 0.0);
    let mut abs = 0.0;
    for (xi, wi) in x.iter().zip(&w) {
        let r = 0.5 * (xi + 1.0);
        let mut ring = C64::new(0.0, 0.0);
        let mut ring_abs = 0.0;
        for j in 0..nt {
            let v = C64::from_polar(r, TAU * j as f64 / nt as f64);
            let f = h(dom.eval(v)) * dom.eval_derivative(v).norm_sqr();
            ring += f;
            ring_abs += f.norm();
        }
        let scale = 0.5 * wi * r * TAU / nt as f64;
        s += ring * scale;
        abs += ring_abs * scale;
    }
    (s, abs)
}

/// `int_Omega h dA`, computed on the disc as `int h(P(w)) |P'(w)|^2 dA(w)`
/// with Gauss-Legendre in the radius and the trapezoid rule in the angle,
/// doubling both until two successive values agree to `rel_tol` times
/// `int |h| dA`.
pub fn area_integral(dom: &QuadratureDomain, h: impl Fn(C64) -> C64, rel_tol: f64) -> Result<C64> {
    area_integral_with_scale(dom, h, rel_tol).map(|(v, _)| v)
}

/// Like [`area_integral`], also returning `int |h| dA`.
pub fn area_integral_with_scale(
    dom: &QuadratureDomain,
    h: impl Fn(C64) -> C64,
    rel_tol: f64,
) -> Result<(C64, f64)> {
    let (mut nr, mut nt) = (16, 64);
    let (mut prev, _) = pullback_sum(dom, &h, nr, nt);
    while nr <= 512 {
        nr *= 2;
        nt *= 2;
        let (next, abs) = pullback_sum(dom, &h, nr, nt);
        if (next - prev).norm() <= rel_tol * abs {
            return Ok((next, abs));
        }
        prev = next;
    }
    Err(Error::Degenerate("area integral did not converge".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_exactness() {
        for n in [1, 2, 5, 12] {
            let (x, w) = gauss_legendre(n);
            for k in 0..2 * n {
                let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k + 1) as f64 };
                let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k as i32)).sum();
                assert!((s - exact).abs() < 1e-13, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn disc_area() {
        let a = area_integral(&QuadratureDomain::disc(), |_| C64::new(1.0, 0.0), 1e-12).unwrap();
        assert!((a.re - PI).abs() < 1e-12);
    }
}
