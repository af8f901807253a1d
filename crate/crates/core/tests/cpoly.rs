mod common;

use common::c;
use nalgebra::DMatrix;
use proptest::prelude::*;
use quaddec::cpoly::{partial_fractions, roots, roots_with, RootOptions};
use quaddec::{ComplexPoly, RationalFunction, C64};

fn companion_eigenvalues(p: &ComplexPoly) -> Vec<C64> {
    let n = p.coeffs().len() - 1;
    let lead = p.leading();
    let mut m = DMatrix::<C64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = c(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -p.coeff(i) / lead;
    }
    m.eigenvalues().map(|v| v.iter().copied().collect()).unwrap_or_else(|| {
        // fall back to the Schur form diagonal
        let s = m.schur();
        let (_, t) = s.unpack();
        (0..n).map(|i| t[(i, i)]).collect()
    })
}

fn arb_c() -> impl Strategy<Value = C64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| c(a, b))
}

#[test]
fn roots_match_companion_eigenvalues() {
    let p = ComplexPoly::new(vec![c(1.0, 0.5), c(-2.0, 0.0), c(0.3, -1.0), c(0.0, 2.0), c(1.0, 0.0)]);
    let mine: Vec<C64> = roots(&p, 1e-10)
        .unwrap()
        .into_iter()
        .flat_map(|(r, k)| std::iter::repeat_n(r, k))
        .collect();
    let oracle = companion_eigenvalues(&p);
    assert_eq!(mine.len(), oracle.len());
    for o in oracle {
        let d = mine.iter().map(|r| (r - o).norm()).fold(f64::INFINITY, f64::min);
        assert!(d < 1e-10, "eigenvalue {o} has no matching root ({d:.1e})");
    }
}

#[test]
fn repeated_roots_are_clustered() {
    let p = ComplexPoly::from_roots(c(2.0, 0.0), &[(c(0.5, 0.5), 3), (c(-1.0, 0.0), 1)]);
    let r = roots_with(&p, &RootOptions { tol: 1e-5, ..RootOptions::default() }).unwrap();
    let triple = r.iter().find(|(_, k)| *k == 3).expect("triple root");
    assert!((triple.0 - c(0.5, 0.5)).norm() < 1e-8);
}

#[test]
fn normalize_cancels_common_factor() {
    let num = ComplexPoly::from_roots(c(1.0, 0.0), &[(c(0.3, 0.0), 1), (c(2.0, 1.0), 1)]);
    let den = ComplexPoly::from_roots(c(1.0, 0.0), &[(c(0.3, 0.0), 1), (c(-1.0, 0.0), 2)]);
    let r = RationalFunction::new(num, den).unwrap().normalize().unwrap();
    assert_eq!(r.den().coeffs().len(), 3);
    let z = c(0.7, -0.2);
    let expect = (z - c(2.0, 1.0)) / ((z + 1.0) * (z + 1.0));
    assert!((r.eval(z) - expect).norm() < 1e-12);
}

#[test]
fn partial_fraction_residue_matches_contour_integral() {
    // residue by trapezoid rule on a small circle, an independent oracle
    let den = ComplexPoly::from_roots(c(1.0, 0.0), &[(c(0.4, 0.1), 2), (c(-1.5, 0.0), 1)]);
    let num = ComplexPoly::new(vec![c(1.0, 0.0), c(0.0, 1.0), c(0.5, 0.0)]);
    let r = RationalFunction::new(num, den).unwrap();
    let pf = partial_fractions(&r).unwrap();
    for part in &pf.parts {
        let n = 256;
        let rad = 0.1;
        let integral: C64 = quaddec::unit_circle_samples(n, 0.0)
            .into_iter()
            .map(|u| r.eval(part.pole + u * rad) * u * rad)
            .sum::<C64>()
            / n as f64;
        assert!((part.coeffs[0] - integral).norm() < 1e-10, "{} vs {integral}", part.coeffs[0]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_fractions_recombine(
        poles in prop::collection::vec(arb_c(), 1..4),
        num in prop::collection::vec(arb_c(), 1..5),
    ) {
        let mut poles = poles;
        poles.dedup_by(|a, b| (*a - *b).norm() < 0.2);
        prop_assume!(poles.iter().enumerate().all(|(i, a)| poles[..i].iter().all(|b| (a - b).norm() > 0.2)));
        let den = ComplexPoly::from_roots(c(1.0, 0.0), &poles.iter().map(|&p| (p, 1)).collect::<Vec<_>>());
        let r = RationalFunction::new(ComplexPoly::new(num), den).unwrap();
        let pf = partial_fractions(&r).unwrap();
        prop_assert!(pf.recombination_residual(&r, 3.0) < 1e-8);
        let back = pf.to_rational().unwrap();
        for z in quaddec::unit_circle_samples(16, 0.1) {
            let z = z * 2.7;
            let scale = r.eval(z).norm().max(1.0);
            prop_assert!((back.eval(z) - r.eval(z)).norm() / scale < 1e-8);
        }
    }

    #[test]
    fn derivative_of_antiderivative_is_identity(coeffs in prop::collection::vec(arb_c(), 1..8)) {
        let p = ComplexPoly::new(coeffs);
        let q = p.antiderivative().derivative();
        for (a, b) in p.coeffs().iter().zip(q.coeffs()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn conj_reflect_is_an_involution(num in prop::collection::vec(arb_c(), 1..4), p in arb_c()) {
        prop_assume!(p.norm() > 0.1);
        let den = ComplexPoly::new(vec![-p, c(1.0, 0.0)]);
        let r = RationalFunction::new(ComplexPoly::new(num), den).unwrap();
        let rr = r.conj_reflect().conj_reflect();
        for z in quaddec::unit_circle_samples(8, 0.3) {
            let z = z * 0.5 + c(0.05, 0.0);
            prop_assume!((z - p).norm() > 1e-3);
            prop_assert!((rr.eval(z) - r.eval(z)).norm() < 1e-9 * r.eval(z).norm().max(1.0));
        }
    }
}
