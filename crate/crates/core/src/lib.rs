//! Partial-fraction style decompositions of rational functions of `z` and
//! `conj(z)` restricted to the boundary of simply connected area quadrature
//! domains.
//!
//! A domain is given as the image of the unit disc under a rational
//! conformal map `P`. Every computation is carried out in the disc
//! coordinate `w`, where the double of the domain becomes the Riemann
//! sphere with the reflection `w -> 1/conj(w)`. In that picture the
//! Schwarz function, the antiderivatives `k_a^m` of the Bergman kernel
//! derivatives and the antiderivatives `lambda_a^m` of the complementary
//! kernel derivatives are all rational functions of `w`, and decomposing
//! boundary data reduces to matching principal parts.
//!
//! Modules:
//! - [`cpoly`]: univariate complex polynomials, rational functions, roots
//!   and partial fractions.
//! - [`circle`]: the unit-circle decompositions (poles outside, poles
//!   inside, holomorphic and antiholomorphic restrictions).
//! - [`qdomain`]: the quadrature domain model, Schwarz function,
//!   quadrature identity, implicit boundary equation.
//! - [`kernels`]: Bergman kernel, complementary kernel and their
//!   derivative and antiderivative families.
//! - [`decomp`]: decompositions on a quadrature domain, Dirichlet
//!   solutions and Dirichlet-to-Neumann images.
//! - [`approx`]: nearby quadrature domains from analytic conformal maps.

pub mod approx;
pub mod bivariate;
pub mod circle;
pub mod cpoly;
pub mod decomp;
mod error;
pub mod kernels;
pub mod numerics;
pub mod qdomain;
pub mod series;

pub use num_complex::Complex64;

pub use crate::bivariate::{BivariatePoly, BivariateRational};
pub use crate::cpoly::{ComplexPoly, Degree, PartialFractions, RationalFunction};
pub use crate::decomp::{Decomposition, DecompositionForm, DtnImage};
pub use crate::error::{Error, Result};
pub use crate::kernels::{KernelFamily, KernelKind, KernelTerm};
pub use crate::qdomain::QuadratureDomain;

/// Shorthand used throughout the crate.
pub type C64 = Complex64;

pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// `n` equally spaced points `exp(i(2 pi j / n + offset))` on the unit circle.
pub fn unit_circle_samples(n: usize, offset: f64) -> Vec<C64> {
    (0..n)
        .map(|j| C64::from_polar(1.0, std::f64::consts::TAU * j as f64 / n as f64 + offset))
        .collect()
}
