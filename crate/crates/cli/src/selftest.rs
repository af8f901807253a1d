use std::f64::consts::{PI, TAU};

use quaddec::approx::{approximate_arclength_qd, approximate_area_qd, square_defect, AnalyticMapInput};
use quaddec::circle::{self, CircleForm};
use quaddec::decomp::{convert, decompose, dirichlet_solve, dtn, fd_normal_derivative, PoissonReference};
use quaddec::kernels::boundary_identities;
use quaddec::qdomain::invariant_report;
use quaddec::{BivariatePoly, BivariateRational, DecompositionForm, QuadratureDomain, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::commands::{FD_GATE, FD_STEP, POISSON_SAMPLES};
use crate::{CliError, Common, Gate, Outcome, Table};

const RANDOM_CASES: usize = 20;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn domains() -> Vec<(String, QuadratureDomain)> {
    let mut v = vec![("disc".to_string(), QuadratureDomain::disc())];
    for a in [0.1, 0.25, 0.4] {
        v.push((format!("cardioid {a}"), QuadratureDomain::cardioid(c(a, 0.0)).expect("valid cardioid")));
    }
    v.push((
        "cubic".to_string(),
        QuadratureDomain::from_polynomial(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.2, 0.0), c(0.05, 0.0)])
            .expect("valid cubic"),
    ));
    v
}

fn random_c(rng: &mut ChaCha8Rng) -> C64 {
    c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// A point with modulus in `[0.3, 0.8]` or `[1.25, 3]`.
fn off_annulus(rng: &mut ChaCha8Rng) -> C64 {
    let r = if rng.random_bool(0.5) {
        rng.random_range(0.3..0.8)
    } else {
        rng.random_range(1.25..3.0)
    };
    C64::from_polar(r, rng.random_range(0.0..TAU))
}

/// Polynomial numerator over a product of factors `z - p` and `zbar - p`
/// that vanish away from the annulus `0.8 < |z| < 1.25`.
fn random_data(rng: &mut ChaCha8Rng) -> BivariateRational {
    let dn = rng.random_range(0..=3usize);
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
        let p = off_annulus(rng);
        let factor = if rng.random_bool(0.5) {
            BivariatePoly::new(vec![vec![-p], vec![c(1.0, 0.0)]])
        } else {
            BivariatePoly::new(vec![vec![-p, c(1.0, 0.0)]])
        };
        den = den.mul(&factor);
    }
    BivariateRational::new(BivariatePoly::new(num), den).expect("nonzero denominator")
}

struct Suite {
    name: &'static str,
    gates: Vec<Gate>,
}

pub fn run(common: &Common) -> Result<Outcome, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
    let corpus: Vec<BivariateRational> = (0..RANDOM_CASES).map(|_| random_data(&mut rng)).collect();
    let suites = vec![
        circle_suite(&corpus, common)?,
        kernel_suite(common)?,
        domain_suite(common)?,
        decomposition_suite(&corpus, common)?,
        dirichlet_suite(common)?,
        approximation_suite(common)?,
    ];
    let mut table = Table::new(&["suite", "gate", "value", "limit", "pass"]);
    let mut gates = Vec::new();
    let mut json_suites = Vec::new();
    for s in suites {
        for g in &s.gates {
            table.push(vec![
                s.name.to_string(),
                g.name.clone(),
                crate::fmt_f64(g.value),
                crate::fmt_f64(g.limit),
                g.pass.to_string(),
            ]);
        }
        let max = s.gates.iter().map(|g| g.value).fold(0.0, f64::max);
        json_suites.push(json!({
            "suite": s.name,
            "pass": s.gates.iter().all(|g| g.pass),
            "max_residual": max,
            "gates": s.gates,
        }));
        gates.extend(s.gates.into_iter().map(|mut g| {
            g.name = format!("{}: {}", s.name, g.name);
            g
        }));
    }
    Ok(Outcome {
        json: json!({"seed": common.seed, "suites": json_suites}),
        table,
        gates,
    })
}

fn circle_suite(corpus: &[BivariateRational], common: &Common) -> Result<Suite, CliError> {
    let mut worst: f64 = 0.0;
    let mut cross: f64 = 0.0;
    for r in corpus {
        let ds: Vec<_> = CircleForm::ALL
            .iter()
            .map(|&f| circle::decompose(r, f))
            .collect::<Result<_, _>>()?;
        for d in &ds {
            worst = worst.max(d.residual(r, common.samples));
        }
        for z in quaddec::unit_circle_samples(64, 0.3) {
            let v0 = ds[0].eval(z);
            for d in &ds[1..] {
                cross = cross.max((d.eval(z) - v0).norm() / v0.norm().max(1.0));
            }
        }
    }
    Ok(Suite {
        name: "circle",
        gates: vec![
            Gate::below(format!("residual over {} random data", corpus.len()), worst, common.tol),
            Gate::below("cross-form agreement", cross, common.tol),
        ],
    })
}

fn kernel_suite(common: &Common) -> Result<Suite, CliError> {
    let mut gates = Vec::new();
    for (name, dom) in domains() {
        let rep = boundary_identities(&dom, 64)?;
        gates.push(Gate::below(format!("boundary identities on {name}"), rep.max(), common.tol));
    }
    // disc: k_a^0 at a = z = 1/2 is 2/(3 pi), lambda_a^0 at a = 1/2, z = 0 is 2/pi
    let disc = QuadratureDomain::disc();
    let k = quaddec::kernels::k_lower(&disc, c(0.5, 0.0), 0, c(0.5, 0.0))?;
    let l = quaddec::kernels::lambda_lower(&disc, c(0.5, 0.0), 0, c(0.0, 0.0))?;
    let spot = (k - 2.0 / (3.0 * PI)).norm().max((l - 2.0 / PI).norm());
    gates.push(Gate::below("disc closed forms", spot, common.tol));
    Ok(Suite { name: "kernels", gates })
}

fn domain_suite(common: &Common) -> Result<Suite, CliError> {
    let mut gates = Vec::new();
    for (name, dom) in domains() {
        let rep = invariant_report(&dom, common.samples, 5)?;
        gates.push(Gate::check(format!("invariants on {name}"), rep.passes()));
        gates.push(Gate::below(format!("quadrature identity on {name}"), rep.quadrature, common.tol));
    }
    Ok(Suite { name: "domains", gates })
}

fn decomposition_suite(corpus: &[BivariateRational], common: &Common) -> Result<Suite, CliError> {
    let mut gates = Vec::new();
    // zbar on the cardioid w + 0.4 w^2
    let dom = QuadratureDomain::cardioid(c(0.4, 0.0))?;
    let d = decompose(&dom, &BivariateRational::zbar())?;
    let mut coeffs: Vec<C64> = d.second.iter().map(|t| t.coeff).collect();
    coeffs.sort_by(|a, b| a.re.total_cmp(&b.re));
    let want = [-PI * (1.0 + 2.0 * 0.16), -PI * 0.4];
    let err = if coeffs.len() == 2 && d.first.is_empty() {
        coeffs
            .iter()
            .zip(want)
            .map(|(a, b)| (a - b).norm())
            .fold(d.constant.norm(), f64::max)
    } else {
        f64::INFINITY
    };
    gates.push(Gate::below("zbar on the cardioid 0.4", err, common.tol));
    for (name, dom) in domains().into_iter().take(3) {
        let mut worst: f64 = 0.0;
        let mut skipped = 0;
        for r in corpus {
            match decompose(&dom, r) {
                Ok(d) => {
                    for f in DecompositionForm::ALL {
                        worst = worst.max(convert(&d, f).boundary_residual(&dom, r, common.samples)?);
                    }
                }
                Err(quaddec::Error::NotSmoothOnBoundary(_)) => skipped += 1,
                Err(e) => return Err(e.into()),
            }
        }
        log::info!("{name}: {skipped} random data with boundary poles skipped");
        gates.push(Gate::below(format!("random data on {name}, all forms"), worst, common.tol));
    }
    Ok(Suite {
        name: "decompositions",
        gates,
    })
}

fn dirichlet_suite(common: &Common) -> Result<Suite, CliError> {
    let data = [
        ("zbar", BivariateRational::zbar()),
        ("x", BivariateRational::re_z()),
        (
            "1/(3 - z - zbar)",
            BivariateRational::new(
                BivariatePoly::constant(c(1.0, 0.0)),
                BivariatePoly::new(vec![vec![c(3.0, 0.0), c(-1.0, 0.0)], vec![c(-1.0, 0.0)]]),
            )?,
        ),
    ];
    let mut gates = Vec::new();
    for (dn, dom) in domains() {
        let (mut oracle, mut fd): (f64, f64) = (0.0, 0.0);
        for (_, r) in &data {
            let u = dirichlet_solve(&dom, r)?;
            let reference = PoissonReference::from_rational(&dom, r, POISSON_SAMPLES);
            for w in quaddec::kernels::interior_test_points() {
                let p = reference.eval_w(w);
                oracle = oracle.max((u.eval_w(w)? - p).norm() / p.norm().max(1.0));
            }
            let img = dtn(&dom, r)?;
            let ths: Vec<f64> = (0..16).map(|k| 0.05 + TAU * k as f64 / 16.0).collect();
            for (&th, v) in ths.iter().zip(img.boundary_values(&dom, &ths)?) {
                let z0 = dom.boundary_point(th);
                let n = C64::new(0.0, -1.0) * dom.tangent(th);
                let f = fd_normal_derivative(|z| u.eval(z), z0, n, FD_STEP)?;
                fd = fd.max((f - v).norm() / v.norm().max(1.0));
            }
        }
        gates.push(Gate::below(format!("Fourier reference on {dn}"), oracle, common.tol));
        gates.push(Gate::below(format!("normal derivative on {dn}"), fd, FD_GATE));
    }
    Ok(Suite { name: "dirichlet", gates })
}

fn approximation_suite(common: &Common) -> Result<Suite, CliError> {
    // w / (1 - q w)
    let q = c(0.3, 0.2);
    let mut series = vec![c(0.0, 0.0)];
    series.extend((1..80).map(|k| q.powu(k as u32 - 1)));
    let g = AnalyticMapInput::Series(series.clone());
    let mut gates = Vec::new();
    let mut ratio: f64 = 0.0;
    let mut defect: f64 = 0.0;
    for n in 1..=8 {
        let rep = approximate_area_qd(&g, n)?;
        let tail: f64 = series.iter().skip(n + 1).map(|x| x.norm()).sum();
        ratio = ratio.max(rep.sup_error / tail);
        let rep = approximate_arclength_qd(&g, n)?;
        defect = defect.max(square_defect(&rep).unwrap_or(f64::INFINITY));
        defect = defect.max(rep.tangent_residual.unwrap_or(f64::INFINITY));
    }
    gates.push(Gate::at_most("area error over tail bound", ratio, 1.0 + 1e-9));
    gates.push(Gate::below("arclength square and tangent defects", defect, common.tol));
    Ok(Suite {
        name: "approximation",
        gates,
    })
}
