use std::f64::consts::TAU;

use num_complex::Complex64 as C64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::{
    convert, decompose, decompose_rational, extend_to_double, Decomposition, DecompositionEvaluator,
    DecompositionForm,
};
use crate::bivariate::BivariateRational;
use crate::cpoly::RationalFunction;
use crate::error::{Error, Result};
use crate::kernels::{KernelKind, KernelTerm, TermEvaluator};
use crate::qdomain::QuadratureDomain;
use crate::I;

/// Harmonic extension `u = c + k1 + conj(k2)` of boundary data.
#[derive(Clone, Debug)]
pub struct DirichletSolution {
    domain: QuadratureDomain,
    decomposition: Decomposition,
    evaluator: DecompositionEvaluator,
}

impl DirichletSolution {
    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    pub fn domain(&self) -> &QuadratureDomain {
        &self.domain
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        self.evaluator.eval(&self.domain, z)
    }

    /// Value at `P(w)`, `|w| <= 1`.
    pub fn eval_w(&self, w: C64) -> Result<C64> {
        self.evaluator.eval_w(&self.domain, w)
    }

    /// Outward normal derivative at the boundary point `P(e^{i theta})`,
    /// `k1' n + conj(k2' n)` with `n` the unit outward normal.
    pub fn normal_derivative(&self, theta: f64) -> Result<C64> {
        let w = C64::from_polar(1.0, theta);
        let (d1, d2) = self.evaluator.dw_parts(w)?;
        let dz = self.domain.eval_derivative(w);
        let n = -I * self.domain.tangent(theta);
        Ok(d1 / dz * n + (d2 / dz * n).conj())
    }
}

pub fn dirichlet_solve(dom: &QuadratureDomain, r: &BivariateRational) -> Result<DirichletSolution> {
    let d = convert(&decompose(dom, r)?, DecompositionForm::KKbar);
    Ok(DirichletSolution {
        domain: dom.clone(),
        evaluator: d.evaluator(dom)?,
        decomposition: d,
    })
}

/// Image of the Dirichlet-to-Neumann map,
/// `du/dn = -i kappa1 T + i conj(kappa2 T)` with `kappa1, kappa2` in the
/// Bergman span.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DtnImage {
    pub kappa1: Vec<KernelTerm>,
    pub kappa2: Vec<KernelTerm>,
}

impl DtnImage {
    pub fn is_zero(&self) -> bool {
        self.kappa1.is_empty() && self.kappa2.is_empty()
    }

    /// Values at `P(e^{i theta})` for each `theta`.
    pub fn boundary_values(&self, dom: &QuadratureDomain, thetas: &[f64]) -> Result<Vec<C64>> {
        let k1 = TermEvaluator::new(dom, &self.kappa1)?;
        let k2 = TermEvaluator::new(dom, &self.kappa2)?;
        thetas
            .iter()
            .map(|&th| {
                let w = C64::from_polar(1.0, th);
                let t = dom.tangent(th);
                Ok(-I * k1.eval_w(dom, w)? * t + I * (k2.eval_w(dom, w)? * t).conj())
            })
            .collect()
    }
}

pub fn dtn(dom: &QuadratureDomain, r: &BivariateRational) -> Result<DtnImage> {
    dtn_rational(dom, &extend_to_double(dom, r)?)
}

/// Image of boundary data given by its extension `M` to the double.
pub fn dtn_rational(dom: &QuadratureDomain, m: &RationalFunction) -> Result<DtnImage> {
    let d = convert(&decompose_rational(dom, m)?, DecompositionForm::KKbar);
    let relabel = |terms: &[KernelTerm]| -> Vec<KernelTerm> {
        terms
            .iter()
            .map(|t| KernelTerm::new(KernelKind::K, t.a, t.m, t.coeff))
            .collect()
    };
    Ok(DtnImage {
        kappa1: relabel(&d.first),
        kappa2: relabel(&d.second),
    })
}

/// Boundary data (as `M(w)`) whose image is `image`: each `K_a^m` term
/// lifts to `k_a^m`, so `u = k1 + conj(k2)` with the same coefficients.
pub fn dtn_preimage(dom: &QuadratureDomain, image: &DtnImage) -> Result<RationalFunction> {
    let lift = |terms: &[KernelTerm]| -> Result<Vec<KernelTerm>> {
        terms
            .iter()
            .map(|t| {
                if t.kind != KernelKind::K {
                    return Err(Error::Config(format!("expected K terms in a DtN image, got {:?}", t.kind)));
                }
                Ok(KernelTerm::new(KernelKind::KLower, t.a, t.m, t.coeff))
            })
            .collect()
    };
    Decomposition {
        form: DecompositionForm::KKbar,
        constant: C64::new(0.0, 0.0),
        first: lift(&image.kappa1)?,
        second: lift(&image.kappa2)?,
    }
    .extension(dom)
}

/// Fourier-Poisson solution of the Dirichlet problem on the disc pulled
/// back by `P`, independent of the kernel machinery.
#[derive(Clone, Debug)]
pub struct PoissonReference {
    /// Coefficients of `w^k`, `k >= 0`.
    pos: Vec<C64>,
    /// Coefficients of `conj(w)^k`, `k >= 1` (index 0 unused).
    neg: Vec<C64>,
}

impl PoissonReference {
    /// From boundary values `data(z)` sampled at `n` points.
    pub fn new(dom: &QuadratureDomain, data: impl Fn(C64) -> C64, n: usize) -> Self {
        let mut buf: Vec<C64> = (0..n)
            .map(|j| data(dom.boundary_point(TAU * j as f64 / n as f64)))
            .collect();
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        let half = n.div_ceil(2);
        let scale = 1.0 / n as f64;
        let pos = buf[..half].iter().map(|v| v * scale).collect();
        let mut neg = vec![C64::new(0.0, 0.0)];
        neg.extend((1..half).map(|k| buf[n - k] * scale));
        PoissonReference { pos, neg }
    }

    pub fn from_rational(dom: &QuadratureDomain, r: &BivariateRational, n: usize) -> Self {
        Self::new(dom, |z| r.eval(z), n)
    }

    pub fn eval_w(&self, w: C64) -> C64 {
        let horner = |c: &[C64], x: C64| c.iter().rev().fold(C64::new(0.0, 0.0), |acc, &v| acc * x + v);
        horner(&self.pos, w) + horner(&self.neg, w.conj())
    }

    pub fn eval(&self, dom: &QuadratureDomain, z: C64) -> Result<C64> {
        Ok(self.eval_w(dom.inverse_map(z)?))
    }
}

/// Outward normal derivative of `u` at `z0` by a fourth-order one-sided
/// difference along `-normal` with step `h`.
pub fn fd_normal_derivative(
    u: impl Fn(C64) -> Result<C64>,
    z0: C64,
    normal: C64,
    h: f64,
) -> Result<C64> {
    const W: [f64; 5] = [-25.0, 48.0, -36.0, 16.0, -3.0];
    let mut s = C64::new(0.0, 0.0);
    for (j, &c) in W.iter().enumerate() {
        s += c * u(z0 - normal * (j as f64 * h))?;
    }
    Ok(-s / (12.0 * h))
}
