//! Univariate complex polynomial and rational-function algebra.

mod pfrac;
mod poly;
mod rational;
mod roots;

pub use pfrac::{partial_fractions, partial_fractions_at, partial_fractions_with, PartialFractions, PfTerm, PrincipalPart};
pub use poly::{ComplexPoly, Degree};
pub use rational::{arith, ArithOp, RationalFunction};
pub(crate) use rational::COEFF_NOISE;
pub use roots::{roots, roots_with, RootOptions};
