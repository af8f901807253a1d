mod common;

use std::f64::consts::{PI, TAU};

use common::{c, cardioid, disc_integral, domain_corpus};
use proptest::prelude::*;
use quaddec::kernels::{bergman_k, k_deriv, k_lower, lambda_deriv, lambda_l, lambda_lower};
use quaddec::{QuadratureDomain, C64};

fn falling(j: usize, m: usize) -> f64 {
    (0..m).map(|i| (j as f64) - i as f64).product()
}

#[test]
fn bergman_derivatives_reproduce_derivatives() {
    let doms = [cardioid(0.25, 0.0), cardioid(0.2, 0.15), domain_corpus()[5].1.clone()];
    for dom in &doms {
        let a = dom.eval(c(0.3, 0.2));
        let fam = quaddec::KernelFamily::new(dom, a, 2).unwrap();
        for m in 0..=2 {
            for j in 0..=3usize {
                let got = disc_integral(
                    dom,
                    |z, w| z.powu(j as u32) * fam.bergman_deriv_w(dom, m, w).unwrap().conj(),
                    48,
                    192,
                );
                let want = if j >= m {
                    a.powu((j - m) as u32) * falling(j, m)
                } else {
                    c(0.0, 0.0)
                };
                assert!((got - want).norm() < 1e-10 * want.norm().max(1.0), "m={m} j={j}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn bergman_kernel_of_the_disc() {
    let dom = QuadratureDomain::disc();
    for (z, a) in [(c(0.1, 0.2), c(-0.3, 0.4)), (c(0.5, -0.5), c(0.0, 0.0)), (c(-0.7, 0.1), c(0.6, 0.2))] {
        let want = 1.0 / (PI * (c(1.0, 0.0) - z * a.conj()).powu(2));
        assert!((bergman_k(&dom, z, a).unwrap() - want).norm() < 1e-14);
        let want = 1.0 / (PI * (z - a).powu(2));
        assert!((lambda_l(&dom, z, a).unwrap() - want).norm() < 1e-12 * want.norm());
    }
}

#[test]
fn antiderivatives_differentiate_to_the_kernels() {
    let h = 1e-5;
    for (_, dom) in domain_corpus() {
        let a = dom.eval(c(-0.2, 0.35));
        for z in [dom.eval(c(0.4, 0.1)), dom.eval(c(-0.1, -0.6))] {
            for m in 0..=3 {
                let dk = (k_lower(&dom, a, m, z + h).unwrap() - k_lower(&dom, a, m, z - h).unwrap()) / (2.0 * h);
                let want = k_deriv(&dom, a, m, z).unwrap();
                assert!((dk - want).norm() < 1e-6 * want.norm().max(1.0), "k m={m}: {dk} vs {want}");
                let dl = (lambda_lower(&dom, a, m, z + h).unwrap() - lambda_lower(&dom, a, m, z - h).unwrap())
                    / (2.0 * h);
                let want = lambda_deriv(&dom, a, m, z).unwrap();
                assert!((dl - want).norm() < 1e-6 * want.norm().max(1.0), "lambda m={m}: {dl} vs {want}");
            }
        }
    }
}

#[test]
fn derivative_families_differentiate_in_the_base_point() {
    let h = 1e-5;
    for (_, dom) in domain_corpus() {
        let a = dom.eval(c(0.15, -0.3));
        let z = dom.eval(c(-0.5, 0.2));
        for m in 1..=3 {
            // K is antiholomorphic in a, so d/dx = d/d(conj a)
            let dk = (k_deriv(&dom, a + h, m - 1, z).unwrap() - k_deriv(&dom, a - h, m - 1, z).unwrap()) / (2.0 * h);
            let want = k_deriv(&dom, a, m, z).unwrap();
            assert!((dk - want).norm() < 1e-6 * want.norm().max(1.0));
            let dl = (lambda_deriv(&dom, a + h, m - 1, z).unwrap() - lambda_deriv(&dom, a - h, m - 1, z).unwrap())
                / (2.0 * h);
            let want = lambda_deriv(&dom, a, m, z).unwrap();
            assert!((dl - want).norm() < 1e-6 * want.norm().max(1.0));
        }
        assert!((k_deriv(&dom, a, 0, z).unwrap() - bergman_k(&dom, z, a).unwrap()).norm() < 1e-12);
        assert!((lambda_deriv(&dom, a, 0, z).unwrap() - lambda_l(&dom, z, a).unwrap()).norm() < 1e-12);
    }
}

#[test]
fn order_above_maximum_is_rejected() {
    let dom = cardioid(0.25, 0.0);
    assert!(k_lower(&dom, c(0.1, 0.0), 17, c(0.2, 0.0)).is_err());
    assert!(k_lower(&dom, c(5.0, 0.0), 0, c(0.2, 0.0)).is_err());
}

fn disc_point(r: f64, t: f64) -> C64 {
    C64::from_polar(r, t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernels_are_symmetric(
        cr in 0.0..0.4f64, ct in 0.0..TAU,
        r1 in 0.0..0.85f64, t1 in 0.0..TAU, r2 in 0.0..0.85f64, t2 in 0.0..TAU,
    ) {
        let dom = QuadratureDomain::cardioid(C64::from_polar(cr, ct)).unwrap();
        let (z, a) = (dom.eval(disc_point(r1, t1)), dom.eval(disc_point(r2, t2)));
        let (kza, kaz) = (bergman_k(&dom, z, a).unwrap(), bergman_k(&dom, a, z).unwrap());
        prop_assert!((kza - kaz.conj()).norm() < 1e-10 * kza.norm().max(1.0));
        prop_assume!((z - a).norm() > 1e-3);
        let (lza, laz) = (lambda_l(&dom, z, a).unwrap(), lambda_l(&dom, a, z).unwrap());
        prop_assert!((lza - laz).norm() < 1e-10 * lza.norm().max(1.0));
    }

    #[test]
    fn bergman_kernel_is_positive_on_the_diagonal(cr in 0.0..0.4f64, ct in 0.0..TAU, r in 0.0..0.9f64, t in 0.0..TAU) {
        let dom = QuadratureDomain::cardioid(C64::from_polar(cr, ct)).unwrap();
        let z = dom.eval(disc_point(r, t));
        let k = bergman_k(&dom, z, z).unwrap();
        prop_assert!(k.re > 0.0);
        prop_assert!(k.im.abs() < 1e-10 * k.re);
    }

    #[test]
    fn antiderivatives_are_minus_conjugates_on_the_boundary(
        cr in 0.0..0.4f64, ct in 0.0..TAU, r in 0.0..0.8f64, t in 0.0..TAU, m in 0usize..4,
    ) {
        let dom = QuadratureDomain::cardioid(C64::from_polar(cr, ct)).unwrap();
        let a = dom.eval(disc_point(r, t));
        let fam = quaddec::KernelFamily::new(&dom, a, m).unwrap();
        let sums: Vec<C64> = quaddec::unit_circle_samples(24, 0.1)
            .into_iter()
            .map(|w| fam.k_lower_w(m, w) + fam.lambda_lower_w(m, w).unwrap().conj())
            .collect();
        let scale = sums.iter().map(|s| s.norm()).fold(1.0, f64::max);
        for s in &sums {
            prop_assert!((s - sums[0]).norm() < 1e-9 * scale);
        }
    }
}
