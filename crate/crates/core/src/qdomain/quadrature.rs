use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::QuadratureDomain;
use crate::cpoly::partial_fractions;
use crate::error::Result;
use crate::series::{factorial, Series};

/// One quadrature node `a` with weights `weights[m]` multiplying `h^(m)(a)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureNode {
    pub a: C64,
    pub disc_point: C64,
    pub weights: Vec<C64>,
}

impl QuadratureNode {
    pub fn max_order(&self) -> usize {
        self.weights.len() - 1
    }
}

/// Area quadrature identity `int_Omega h dA = sum c_{a,m} h^(m)(a)` for
/// functions `h` holomorphic on the closed domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureData {
    pub nodes: Vec<QuadratureNode>,
}

impl QuadratureData {
    /// Right-hand side of the identity; `derivs(a, m)` returns `h^(m)(a)`.
    pub fn apply(&self, derivs: impl Fn(C64, usize) -> C64) -> C64 {
        let derivs = &derivs;
        self.nodes
            .iter()
            .flat_map(|n| n.weights.iter().enumerate().map(move |(m, &c)| c * derivs(n.a, m)))
            .sum()
    }

    /// Area of the domain, the weight of `h = 1`.
    pub fn area(&self) -> f64 {
        self.nodes.iter().map(|n| n.weights[0]).sum::<C64>().re
    }
}

/// Weights from the residues of `h(P(w)) S(P(w)) P'(w)` at the poles of the
/// Schwarz function inside the disc, using `int h dA = (1/2i) oint h zbar dz`.
pub fn quadrature_data(dom: &QuadratureDomain) -> Result<QuadratureData> {
    let schwarz = dom.schwarz().as_w_rational().normalize()?;
    let pf = partial_fractions(&schwarz)?;
    let mut nodes = Vec::new();
    for part in pf.parts.iter().filter(|p| p.pole.norm() < 1.0) {
        let w0 = part.pole;
        let order = part.order();
        let dp = Series::of_rational(dom.map_derivative(), w0, order)?;
        // principal part of S * P' at w0: g[n-1] multiplies t^-n
        let g: Vec<C64> = (1..=order)
            .map(|n| {
                (0..=order - n)
                    .map(|j| part.coeffs[n + j - 1] * dp.coeff(j))
                    .sum()
            })
            .collect();
        let p = Series::of_rational(dom.map(), w0, order)?;
        let delta = p.add_constant(-p.coeff(0));
        let mut weights = Vec::with_capacity(order);
        let mut dpow = Series::constant(C64::new(1.0, 0.0), order);
        for m in 0..order {
            let c: C64 = (1..=order).map(|n| g[n - 1] * dpow.coeff(n - 1)).sum();
            weights.push(c * PI / factorial(m));
            dpow = &dpow * &delta;
        }
        nodes.push(QuadratureNode {
            a: dom.eval(w0),
            disc_point: w0,
            weights,
        });
    }
    Ok(QuadratureData { nodes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disc_mean_value() {
        let q = quadrature_data(&QuadratureDomain::disc()).unwrap();
        assert_eq!(q.nodes.len(), 1);
        assert_eq!(q.nodes[0].weights.len(), 1);
        assert!((q.nodes[0].weights[0] - PI).norm() < 1e-14);
    }

    #[test]
    fn cardioid_weights() {
        let c = C64::new(0.3, 0.1);
        let q = quadrature_data(&QuadratureDomain::cardioid(c).unwrap()).unwrap();
        assert_eq!(q.nodes.len(), 1);
        let n = &q.nodes[0];
        assert!(n.a.norm() < 1e-15);
        assert!((n.weights[0] - PI * (1.0 + 2.0 * c.norm_sqr())).norm() < 1e-13);
        assert!((n.weights[1] - PI * c.conj()).norm() < 1e-13);
    }
}
