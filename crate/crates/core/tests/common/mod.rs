#![allow(dead_code)]

use quaddec::{BivariatePoly, BivariateRational, QuadratureDomain, RationalFunction, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn cardioid(re: f64, im: f64) -> QuadratureDomain {
    QuadratureDomain::cardioid(c(re, im)).unwrap()
}

/// Disc, cardioids, a cubic and a rational map.
pub fn domain_corpus() -> Vec<(&'static str, QuadratureDomain)> {
    let cubic = QuadratureDomain::from_polynomial(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.2, 0.0), c(0.05, 0.0)]).unwrap();
    // w + 0.2 w / (w - 2)
    let rational = QuadratureDomain::new(
        RationalFunction::new(
            quaddec::ComplexPoly::new(vec![c(0.0, 0.0), c(-1.8, 0.0), c(1.0, 0.0)]),
            quaddec::ComplexPoly::new(vec![c(-2.0, 0.0), c(1.0, 0.0)]),
        )
        .unwrap(),
    )
    .unwrap();
    vec![
        ("disc", QuadratureDomain::disc()),
        ("cardioid 0.1", cardioid(0.1, 0.0)),
        ("cardioid 0.25", cardioid(0.25, 0.0)),
        ("cardioid 0.4", cardioid(0.4, 0.0)),
        ("cardioid 0.2+0.15i", cardioid(0.2, 0.15)),
        ("cubic", cubic),
        ("rational", rational),
    ]
}

pub fn zz() -> BivariateRational {
    BivariateRational::polynomial(BivariatePoly::monomial(c(1.0, 0.0), 1, 1))
}

/// `1/(2.5 - z - zbar)`
pub fn worked_example() -> BivariateRational {
    BivariateRational::new(
        BivariatePoly::constant(c(1.0, 0.0)),
        BivariatePoly::new(vec![vec![c(2.5, 0.0), c(-1.0, 0.0)], vec![c(-1.0, 0.0)]]),
    )
    .unwrap()
}

/// Boundary data smooth on every domain of [`domain_corpus`].
pub fn data_corpus() -> Vec<(&'static str, BivariateRational)> {
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    vec![
        ("zbar", BivariateRational::zbar()),
        ("x", BivariateRational::re_z()),
        ("z zbar", zz()),
        (
            "1/(3 - z)",
            BivariateRational::new(
                BivariatePoly::constant(one),
                BivariatePoly::new(vec![vec![c(3.0, 0.0)], vec![-one]]),
            )
            .unwrap(),
        ),
        (
            "(z + zbar^2)/(4 - z zbar)",
            BivariateRational::new(
                BivariatePoly::new(vec![vec![zero, zero, one], vec![one]]),
                BivariatePoly::new(vec![vec![c(4.0, 0.0)], vec![zero, -one]]),
            )
            .unwrap(),
        ),
        (
            "x y^2",
            BivariateRational::polynomial(BivariatePoly::from_xy(&[vec![], vec![zero, zero, one]])),
        ),
    ]
}

fn random_c(rng: &mut ChaCha8Rng) -> C64 {
    c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Modulus in `[0.2, 0.8]` or `[1.25, 3]`, random argument.
fn off_annulus_point(rng: &mut ChaCha8Rng) -> C64 {
    let r = if rng.random_bool(0.5) {
        rng.random_range(0.2..0.8)
    } else {
        rng.random_range(1.25..3.0)
    };
    C64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
}

/// Random `R(z, zbar)` with numerator of total degree at most 4 and a
/// denominator of degree at most 3 built from factors that do not vanish
/// on `0.9 < |z| < 1.1`.
pub fn random_rational(rng: &mut ChaCha8Rng) -> BivariateRational {
    let dn = rng.random_range(0..=4usize);
    let mut num = vec![vec![c(0.0, 0.0); dn + 1]; dn + 1];
    for (i, row) in num.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            if i + j <= dn {
                *v = random_c(rng);
            }
        }
    }
    let mut den = BivariatePoly::constant(c(1.0, 0.0));
    for _ in 0..rng.random_range(1..=3) {
        let p = off_annulus_point(rng);
        let factor = match rng.random_range(0..3) {
            0 => BivariatePoly::new(vec![vec![-p], vec![c(1.0, 0.0)]]),
            1 => BivariatePoly::new(vec![vec![-p, c(1.0, 0.0)]]),
            _ => {
                // a - b z - conj(b) zbar with |a| > 2.4 |b|
                let b = random_c(rng);
                let a = 2.4 * b.norm() + rng.random_range(0.2..1.0);
                BivariatePoly::new(vec![vec![c(a, 0.0), -b.conj()], vec![-b]])
            }
        };
        den = den.mul(&factor);
    }
    BivariateRational::new(BivariatePoly::new(num), den).unwrap()
}

pub fn rational_corpus(n: usize, seed: u64) -> Vec<BivariateRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_rational(&mut rng)).collect()
}

/// Interior points `P(w)` for `w` on a 5 x 5 grid in `[-0.6, 0.6]^2`.
pub fn interior_grid(dom: &QuadratureDomain) -> Vec<C64> {
    let s = [-0.6, -0.3, 0.0, 0.3, 0.6];
    s.iter()
        .flat_map(|&x| s.iter().map(move |&y| c(x, y)))
        .map(|w| dom.eval(w))
        .collect()
}

/// Five-point Laplacian with step `h`.
pub fn laplacian(u: impl Fn(C64) -> C64, z: C64, h: f64) -> C64 {
    (u(z + h) + u(z - h) + u(z + c(0.0, h)) + u(z - c(0.0, h)) - 4.0 * u(z)) / (h * h)
}

/// `int_Omega g dA` pulled back to the disc, with `nr` Gauss-Legendre
/// radii and `nt` equally spaced angles.
pub fn disc_integral(dom: &QuadratureDomain, g: impl Fn(C64, C64) -> C64, nr: usize, nt: usize) -> C64 {
    let (x, wx) = quaddec::numerics::gauss_legendre(nr);
    let mut s = c(0.0, 0.0);
    for (&xi, &wi) in x.iter().zip(&wx) {
        let r = 0.5 * (xi + 1.0);
        for j in 0..nt {
            let w = C64::from_polar(r, std::f64::consts::TAU * j as f64 / nt as f64);
            let jac = dom.eval_derivative(w).norm_sqr();
            s += g(dom.eval(w), w) * (jac * r * 0.5 * wi * std::f64::consts::TAU / nt as f64);
        }
    }
    s
}
