mod common;

use std::f64::consts::PI;

use common::{c, cardioid, random_rational, worked_example};
use proptest::prelude::*;
use quaddec::cpoly::{partial_fractions, RootOptions};
use quaddec::decomp::{convert, decompose, dtn, dtn_preimage, dtn_rational, extend_to_double};
use quaddec::kernels::KernelTerm;
use quaddec::{
    BivariatePoly, BivariateRational, Decomposition, DecompositionForm, DtnImage, Error, KernelKind,
    QuadratureDomain, RationalFunction, C64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn domains() -> Vec<QuadratureDomain> {
    vec![QuadratureDomain::disc(), cardioid(0.05, 0.0), cardioid(0.03, -0.04)]
}

fn coeff_of(terms: &[KernelTerm], a: C64, m: usize) -> C64 {
    terms
        .iter()
        .filter(|t| (t.a - a).norm() < 1e-12 && t.m == m)
        .map(|t| t.coeff)
        .sum()
}

#[test]
fn extension_examples() {
    let disc = QuadratureDomain::disc();
    let zz = BivariateRational::polynomial(BivariatePoly::monomial(c(1.0, 0.0), 1, 1));
    let m = extend_to_double(&disc, &zz).unwrap();
    assert!((m.eval(c(0.3, 0.7)) - 1.0).norm() < 1e-14);
    let m = extend_to_double(&disc, &worked_example()).unwrap();
    for w in [c(0.3, 0.1), c(-1.0, 2.0), c(5.0, 0.0)] {
        let expect = -w / ((w - 2.0) * (w - 0.5));
        assert!((m.eval(w) - expect).norm() < 1e-13);
    }
    let cc = c(0.3, 0.2);
    let m = extend_to_double(&QuadratureDomain::cardioid(cc).unwrap(), &BivariateRational::zbar()).unwrap();
    for w in [c(0.3, 0.1), c(-1.0, 2.0)] {
        assert!((m.eval(w) - (1.0 / w + cc.conj() / (w * w))).norm() < 1e-13);
    }
}

#[test]
fn half_sum_on_the_circle() {
    let disc = QuadratureDomain::disc();
    let d = decompose(&disc, &BivariateRational::re_z()).unwrap();
    assert!(d.constant.norm() < 1e-14);
    assert!((coeff_of(&d.first, c(0.0, 0.0), 0) - PI / 2.0).norm() < 1e-13);
    assert!((coeff_of(&d.second, c(0.0, 0.0), 0) + PI / 2.0).norm() < 1e-13);
}

#[test]
fn constant_data_has_no_terms() {
    let g = c(2.0, -0.5);
    for dom in domains() {
        let d = decompose(&dom, &BivariateRational::constant(g)).unwrap();
        assert_eq!(d.term_count(), 0);
        assert!((d.constant - g).norm() < 1e-14);
        assert!(dtn(&dom, &BivariateRational::constant(g)).unwrap().is_zero());
    }
}

#[test]
fn boundary_pole_is_rejected() {
    let r = BivariateRational::new(
        BivariatePoly::constant(c(1.0, 0.0)),
        BivariatePoly::new(vec![vec![c(-1.0, 0.0)], vec![c(1.0, 0.0)]]),
    )
    .unwrap();
    let err = decompose(&QuadratureDomain::disc(), &r).unwrap_err();
    assert!(matches!(err, Error::NotSmoothOnBoundary(_)), "{err}");
}

#[test]
fn real_data_gives_conjugate_k_lists() {
    let dom = cardioid(0.4, 0.0);
    let d = convert(&decompose(&dom, &BivariateRational::re_z()).unwrap(), DecompositionForm::KKbar);
    assert!(d.constant.im.abs() < 1e-12);
    for t in &d.first {
        let other = coeff_of(&d.second, t.a, t.m);
        assert!((other - t.coeff.conj()).norm() < 1e-10, "{:?}", t);
    }
}

#[test]
fn json_uses_the_documented_field_names() {
    let d = decompose(&cardioid(0.25, 0.0), &BivariateRational::zbar()).unwrap();
    let v: serde_json::Value = serde_json::to_value(&d).unwrap();
    assert_eq!(v["form"], "k_lambda");
    assert!(v["k_terms"].is_array() && v["lambda_terms"].is_array());
    let back: Decomposition = serde_json::from_value(v).unwrap();
    assert_eq!(back, d);
}

fn data(seed: u64) -> BivariateRational {
    random_rational(&mut ChaCha8Rng::seed_from_u64(seed))
}

fn pole_orders(m: &RationalFunction) -> (usize, usize) {
    let inside: usize = partial_fractions(m)
        .unwrap()
        .parts
        .iter()
        .filter(|p| p.pole.norm() < 1.0)
        .map(|p| p.order())
        .sum();
    let outside: usize = partial_fractions(&m.at_reciprocal())
        .unwrap()
        .parts
        .iter()
        .filter(|p| p.pole.norm() < 1.0)
        .map(|p| p.order())
        .sum();
    (inside, outside)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn every_form_reproduces_the_data(seed in any::<u64>(), k in 0usize..3) {
        let dom = &domains()[k];
        let r = data(seed);
        let d = decompose(dom, &r);
        prop_assume!(!matches!(d, Err(Error::NotSmoothOnBoundary(_))));
        let d = d.unwrap();
        for f in DecompositionForm::ALL {
            let e = convert(&d, f);
            prop_assert!(e.boundary_residual(dom, &r, 256).unwrap() < 1e-8, "{f}");
        }
    }

    #[test]
    fn conversion_round_trips(seed in any::<u64>(), k in 0usize..3) {
        let dom = &domains()[k];
        let Ok(d) = decompose(dom, &data(seed)) else { return Ok(()); };
        for f in DecompositionForm::ALL {
            for g in DecompositionForm::ALL {
                let back = convert(&convert(&convert(&d, f), g), DecompositionForm::KLambda);
                prop_assert_eq!(back.first.len(), d.first.len());
                for (a, b) in back.first.iter().chain(&back.second).zip(d.first.iter().chain(&d.second)) {
                    prop_assert!((a.coeff - b.coeff).norm() <= 1e-12 * b.coeff.norm().max(1.0));
                    prop_assert_eq!(a.kind, b.kind);
                }
            }
        }
    }

    #[test]
    fn term_counts_match_pole_orders(seed in any::<u64>(), k in 0usize..3) {
        let dom = &domains()[k];
        let r = data(seed);
        let Ok(m) = extend_to_double(dom, &r) else { return Ok(()); };
        let d = decompose(dom, &r).unwrap();
        let (inside, outside) = pole_orders(&m);
        prop_assert_eq!(d.second.len(), inside);
        prop_assert_eq!(d.first.len(), outside);
    }

    #[test]
    fn extension_matches_the_extended_data(seed in any::<u64>(), k in 0usize..3) {
        let dom = &domains()[k];
        let r = data(seed);
        let Ok(m) = extend_to_double(dom, &r) else { return Ok(()); };
        let d = decompose(dom, &r).unwrap();
        let e = d.extension(dom).unwrap();
        for w in quaddec::unit_circle_samples(32, 0.21) {
            for w in [w * 0.7, w, w * 1.6] {
                let scale = m.eval(w).norm().max(1.0);
                prop_assert!((e.eval(w) - m.eval(w)).norm() < 1e-7 * scale);
            }
        }
    }

    #[test]
    fn dtn_ignores_constants_and_repeats(seed in any::<u64>(), g in (-3.0..3.0f64, -3.0..3.0f64)) {
        let dom = cardioid(0.05, 0.0);
        let r = data(seed);
        let Ok(a) = dtn(&dom, &r) else { return Ok(()); };
        prop_assert_eq!(&a, &dtn(&dom, &r).unwrap());
        let shifted = BivariateRational::new(
            r.num.add(&r.den.scaled(c(g.0, g.1))),
            r.den.clone(),
        ).unwrap();
        let b = dtn(&dom, &shifted).unwrap();
        let thetas: Vec<f64> = (0..64).map(|j| 0.1 + j as f64 * std::f64::consts::TAU / 64.0).collect();
        let va = a.boundary_values(&dom, &thetas).unwrap();
        let vb = b.boundary_values(&dom, &thetas).unwrap();
        let scale = va.iter().map(|v| v.norm()).fold(1.0, f64::max);
        // close pole clusters in random data limit the attainable accuracy
        let resid = decompose(&dom, &r).unwrap().boundary_residual(&dom, &r, 256).unwrap()
            + decompose(&dom, &shifted).unwrap().boundary_residual(&dom, &shifted, 256).unwrap();
        let tol = 1e-8f64.max(1e3 * resid) * scale;
        for (x, y) in va.iter().zip(&vb) {
            prop_assert!((x - y).norm() < tol);
        }
    }
}

#[test]
fn dtn_coefficients_ignore_constants() {
    for (_, dom) in common::domain_corpus() {
        for (name, r) in common::data_corpus() {
            let a = dtn(&dom, &r).unwrap();
            let shifted = BivariateRational::new(r.num.add(&r.den.scaled(c(-1.5, 0.75))), r.den.clone()).unwrap();
            let b = dtn(&dom, &shifted).unwrap();
            for (xs, ys) in [(&a.kappa1, &b.kappa1), (&a.kappa2, &b.kappa2)] {
                assert_eq!(xs.len(), ys.len(), "{name}");
                for x in xs {
                    let y = ys
                        .iter()
                        .find(|y| (y.a - x.a).norm() < 1e-8 && y.m == x.m)
                        .expect("matching term");
                    assert!((x.coeff - y.coeff).norm() < 1e-10 * x.coeff.norm().max(1.0), "{name}: {x:?} vs {y:?}");
                }
            }
        }
    }
}

/// Hand-built Bergman-span elements are hit by the lifted `k` data.
#[test]
fn span_elements_have_preimages() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for dom in [cardioid(0.4, 0.0), cardioid(0.2, 0.15), QuadratureDomain::disc()] {
        let mut pick = |n: usize| -> Vec<KernelTerm> {
            (0..n)
                .flat_map(|_| {
                    let w = C64::from_polar(rng.random_range(0.0..0.6), rng.random_range(0.0..6.28));
                    let a = dom.eval(w);
                    let order = rng.random_range(0..3usize);
                    (0..=order)
                        .map(|m| {
                            KernelTerm::new(
                                KernelKind::K,
                                a,
                                m,
                                c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                            )
                        })
                        .collect::<Vec<_>>()
                })
                .collect()
        };
        let image = DtnImage { kappa1: pick(2), kappa2: pick(1) };
        let m = dtn_preimage(&dom, &image).unwrap();
        let back = dtn_rational(&dom, &m).unwrap();
        for (want, got) in [(&image.kappa1, &back.kappa1), (&image.kappa2, &back.kappa2)] {
            for t in want.iter() {
                let g = coeff_of(got, t.a, t.m);
                assert!((g - t.coeff).norm() < 1e-8, "{:?} -> {g}", t);
            }
            assert_eq!(want.len(), got.len());
        }
    }
}

#[test]
fn root_seed_does_not_change_the_decomposition() {
    let dom = cardioid(0.1, 0.05);
    let r = worked_example();
    let m = extend_to_double(&dom, &r).unwrap();
    let a = quaddec::decomp::decompose_rational(&dom, &m).unwrap();
    let m2 = m.normalize_with(&RootOptions { seed: 41, ..Default::default() }).unwrap();
    let b = quaddec::decomp::decompose_rational(&dom, &m2).unwrap();
    assert!((a.constant - b.constant).norm() < 1e-9);
    for (x, y) in a.first.iter().chain(&a.second).zip(b.first.iter().chain(&b.second)) {
        assert!((x.coeff - y.coeff).norm() < 1e-9 * x.coeff.norm().max(1.0));
    }
}
