use std::f64::consts::TAU;

use quaddec::approx::{
    approximate_arclength_qd, approximate_area_qd, square_defect, AnalyticMapInput, ApproximationReport,
};
use quaddec::circle::{self, CircleForm};
use quaddec::cpoly::RootOptions;
use quaddec::decomp::{convert, decompose, dirichlet_solve, dtn, fd_normal_derivative, PoissonReference};
use quaddec::kernels::{boundary_identities, interior_test_points};
use quaddec::qdomain::{boundary_description, implicitize, invariant_report, quadrature_data};
use quaddec::{BivariateRational, DecompositionForm, KernelFamily, KernelKind, QuadratureDomain, C64};
use serde_json::json;

use crate::{read_json, selftest, ApproxKindArg, CliError, Command, Common, Gate, Outcome, Table};

/// Agreement required between the computed normal derivative and a
/// one-sided finite difference, which is limited by truncation error.
pub const FD_GATE: f64 = 1e-5;
/// Step of the finite-difference normal derivative.
pub const FD_STEP: f64 = 1e-3;
/// Boundary samples of the Fourier reference for Dirichlet problems.
pub const POISSON_SAMPLES: usize = 4096;

pub fn dispatch(cmd: &Command, common: &Common) -> Result<Outcome, CliError> {
    match cmd {
        Command::DecomposeCircle { data, form } => {
            let form: CircleForm = form.parse().map_err(|e: quaddec::Error| CliError::Input(e.to_string()))?;
            decompose_circle(&read_json(data)?, form, common)
        }
        Command::Decompose { domain, data, form } => {
            let form: DecompositionForm =
                form.parse().map_err(|e: quaddec::Error| CliError::Input(e.to_string()))?;
            decompose_domain(&read_json(domain)?, &read_json(data)?, form, common)
        }
        Command::Schwarz { domain } => schwarz(&read_json(domain)?, common),
        Command::Implicitize { domain } => implicit(&read_json(domain)?, common),
        Command::Quadrature { domain } => quadrature(&read_json(domain)?, common),
        Command::BoundaryEq { domain, theta } => boundary_eq(&read_json(domain)?, *theta, common),
        Command::Kernels { domain, base, order } => kernels(&read_json(domain)?, *base, *order, common),
        Command::Dirichlet { domain, data } => dirichlet(&read_json(domain)?, &read_json(data)?, common),
        Command::Dtn { domain, data } => dtn_cmd(&read_json(domain)?, &read_json(data)?, common),
        Command::Approximate { data, kind, degree } => approximate(&read_json(data)?, *kind, *degree, common),
        Command::Selftest => selftest::run(common),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable output")
}

fn thetas(n: usize) -> Vec<f64> {
    (0..n).map(|j| TAU * j as f64 / n as f64).collect()
}

fn decompose_circle(r: &BivariateRational, form: CircleForm, common: &Common) -> Result<Outcome, CliError> {
    let opts = RootOptions {
        seed: common.seed,
        ..Default::default()
    };
    let d = circle::decompose_with(r, form, &opts)?;
    let mut table = Table::new(&["theta", "re_data", "im_data", "re_decomposition", "im_decomposition", "abs_error"]);
    for th in thetas(common.samples) {
        let z = C64::from_polar(1.0, th);
        let (a, b) = (r.eval(z), d.eval(z));
        table.push_floats(&[th, a.re, a.im, b.re, b.im, (a - b).norm()]);
    }
    let gates = vec![
        Gate::check("smooth on the circle", d.smooth_on_circle()),
        Gate::below("circle residual", d.residual(r, common.samples), common.tol),
    ];
    Ok(Outcome {
        json: to_json(&d),
        table,
        gates,
    })
}

fn decompose_domain(
    dom: &QuadratureDomain,
    r: &BivariateRational,
    form: DecompositionForm,
    common: &Common,
) -> Result<Outcome, CliError> {
    let d = convert(&decompose(dom, r)?, form);
    let ev = d.evaluator(dom)?;
    let mut table = Table::new(&[
        "theta",
        "re_z",
        "im_z",
        "re_data",
        "im_data",
        "re_decomposition",
        "im_decomposition",
        "abs_error",
    ]);
    for th in thetas(common.samples) {
        let w = C64::from_polar(1.0, th);
        let z = dom.eval(w);
        let (a, b) = (r.eval(z), ev.eval_w(dom, w)?);
        table.push_floats(&[th, z.re, z.im, a.re, a.im, b.re, b.im, (a - b).norm()]);
    }
    let gates = vec![Gate::below(
        "boundary residual",
        d.boundary_residual(dom, r, common.samples)?,
        common.tol,
    )];
    Ok(Outcome {
        json: to_json(&d),
        table,
        gates,
    })
}

fn schwarz(dom: &QuadratureDomain, common: &Common) -> Result<Outcome, CliError> {
    let s = dom.schwarz();
    let poles = s.poles_in_disc()?;
    let mut table = Table::new(&["theta", "re_z", "im_z", "re_S", "im_S", "re_T", "im_T"]);
    let mut worst: f64 = 0.0;
    for row in dom.boundary_table(common.samples) {
        let (z, sv) = (C64::new(row[1], row[2]), C64::new(row[3], row[4]));
        worst = worst.max((sv - z.conj()).norm() / z.norm().max(1.0));
        table.push_floats(&row);
    }
    let json = json!({
        "schwarz_w": to_json(s.as_w_rational()),
        "poles_in_disc": poles
            .iter()
            .map(|(w, m)| json!({"w": to_json(w), "z": to_json(&dom.eval(*w)), "order": m}))
            .collect::<Vec<_>>(),
    });
    Ok(Outcome {
        json,
        table,
        gates: vec![Gate::below("sup |S(z) - conj z| on the boundary", worst, common.tol)],
    })
}

fn implicit(dom: &QuadratureDomain, common: &Common) -> Result<Outcome, CliError> {
    let curve = implicitize(dom)?;
    let mut table = Table::new(&["i", "j", "re", "im"]);
    for (i, row) in curve.coeffs.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            table.push(vec![i.to_string(), j.to_string(), crate::fmt_f64(c.re), crate::fmt_f64(c.im)]);
        }
    }
    let gates = vec![Gate::below(
        "boundary value over coefficient scale",
        curve.boundary_residual(dom, common.samples),
        common.tol,
    )];
    Ok(Outcome {
        json: to_json(&curve),
        table,
        gates,
    })
}

fn quadrature(dom: &QuadratureDomain, common: &Common) -> Result<Outcome, CliError> {
    let q = quadrature_data(dom)?;
    let mut table = Table::new(&["re_a", "im_a", "m", "re_weight", "im_weight"]);
    for n in &q.nodes {
        for (m, w) in n.weights.iter().enumerate() {
            table.push(vec![
                crate::fmt_f64(n.a.re),
                crate::fmt_f64(n.a.im),
                m.to_string(),
                crate::fmt_f64(w.re),
                crate::fmt_f64(w.im),
            ]);
        }
    }
    let report = invariant_report(dom, common.samples, 4)?;
    Ok(Outcome {
        json: to_json(&q),
        table,
        gates: vec![Gate::below(
            "quadrature identity for (z - b)^m, m <= 4",
            report.quadrature,
            common.tol,
        )],
    })
}

fn boundary_eq(dom: &QuadratureDomain, theta: f64, common: &Common) -> Result<Outcome, CliError> {
    let d = boundary_description(dom, dom.boundary_point(theta))?;
    let mut table = Table::new(&["theta", "re_z", "im_z", "relative_defect"]);
    for th in thetas(common.samples) {
        let w = C64::from_polar(1.0, th);
        if (w - d.a_disc).norm() < 1e-3 {
            continue;
        }
        let z = dom.eval(w);
        let (defect, scale) = d.defect_w(dom, w)?;
        table.push_floats(&[th, z.re, z.im, defect.norm() / scale]);
    }
    let gates = vec![Gate::below("boundary equation defect", d.residual(dom, common.samples)?, common.tol)];
    Ok(Outcome {
        json: to_json(&d),
        table,
        gates,
    })
}

fn kernels(dom: &QuadratureDomain, base: Option<C64>, order: usize, common: &Common) -> Result<Outcome, CliError> {
    let a = base.unwrap_or_else(|| dom.eval(C64::new(0.3, 0.0)));
    let fam = KernelFamily::new(dom, a, order)?;
    let mut table = Table::new(&["kind", "m", "re_z", "im_z", "re_value", "im_value"]);
    let mut values = Vec::new();
    let kinds = [KernelKind::K, KernelKind::Lambda, KernelKind::KLower, KernelKind::LambdaLower];
    for w in interior_test_points() {
        if (w - fam.alpha()).norm() < 1e-9 {
            continue;
        }
        let z = dom.eval(w);
        for kind in kinds {
            for m in 0..=order {
                let v = fam.eval_term_w(dom, kind, m, w)?;
                let name = to_json(&kind);
                let label = name.as_str().unwrap_or_default().to_string();
                table.push(vec![
                    label,
                    m.to_string(),
                    crate::fmt_f64(z.re),
                    crate::fmt_f64(z.im),
                    crate::fmt_f64(v.re),
                    crate::fmt_f64(v.im),
                ]);
                values.push(json!({"kind": name, "m": m, "z": to_json(&z), "value": to_json(&v)}));
            }
        }
    }
    let ids = boundary_identities(dom, common.samples)?;
    Ok(Outcome {
        json: json!({"a": to_json(&a), "identities": to_json(&ids), "values": values}),
        table,
        gates: vec![
            Gate::below("K/Lambda boundary identity", ids.kl, common.tol),
            Gate::below("derivative families boundary identity", ids.kl_m, common.tol),
            Gate::below("both-boundary identity", ids.both_boundary, common.tol),
            Gate::below("k = -conj(lambda) on the boundary", ids.k_lambda, common.tol),
        ],
    })
}

fn dirichlet(dom: &QuadratureDomain, r: &BivariateRational, common: &Common) -> Result<Outcome, CliError> {
    let u = dirichlet_solve(dom, r)?;
    let reference = PoissonReference::from_rational(dom, r, POISSON_SAMPLES);
    let mut table = Table::new(&["re_z", "im_z", "re_u", "im_u", "re_reference", "im_reference"]);
    let mut grid = Vec::new();
    let (mut worst, mut scale): (f64, f64) = (0.0, 1.0);
    let nt = (common.samples / 8).max(8);
    for i in 0..10 {
        let rad = 0.05 + 0.1 * i as f64;
        for j in 0..nt {
            let w = C64::from_polar(rad, TAU * j as f64 / nt as f64);
            let z = dom.eval(w);
            let (v, p) = (u.eval_w(w)?, reference.eval_w(w));
            worst = worst.max((v - p).norm());
            scale = scale.max(p.norm());
            table.push_floats(&[z.re, z.im, v.re, v.im, p.re, p.im]);
            grid.push(json!({"z": to_json(&z), "u": to_json(&v), "reference": to_json(&p)}));
        }
    }
    let err = worst / scale;
    Ok(Outcome {
        json: json!({
            "decomposition": to_json(u.decomposition()),
            "grid": grid,
            "max_oracle_error": err,
        }),
        table,
        gates: vec![Gate::below("interior error against the Fourier reference", err, common.tol)],
    })
}

fn dtn_cmd(dom: &QuadratureDomain, r: &BivariateRational, common: &Common) -> Result<Outcome, CliError> {
    let img = dtn(dom, r)?;
    let u = dirichlet_solve(dom, r)?;
    let ths = thetas(common.samples);
    let vals = img.boundary_values(dom, &ths)?;
    let mut table = Table::new(&["theta", "re_z", "im_z", "re_dn", "im_dn", "re_fd", "im_fd"]);
    let (mut worst, mut scale): (f64, f64) = (0.0, 1.0);
    for (&th, v) in ths.iter().zip(&vals) {
        let z0 = dom.boundary_point(th);
        let n = C64::new(0.0, -1.0) * dom.tangent(th);
        let fd = fd_normal_derivative(|z| u.eval(z), z0, n, FD_STEP)?;
        worst = worst.max((fd - v).norm());
        scale = scale.max(v.norm());
        table.push_floats(&[th, z0.re, z0.im, v.re, v.im, fd.re, fd.im]);
    }
    Ok(Outcome {
        json: to_json(&img),
        table,
        gates: vec![Gate::below("finite-difference normal derivative", worst / scale, FD_GATE)],
    })
}

fn approximate(g: &AnalyticMapInput, kind: ApproxKindArg, degree: usize, common: &Common) -> Result<Outcome, CliError> {
    let rep: ApproximationReport = match kind {
        ApproxKindArg::Area => approximate_area_qd(g, degree)?,
        ApproxKindArg::Arclength => approximate_arclength_qd(g, degree)?,
    };
    let coeffs = g.coefficients()?;
    let horner = |w: C64| coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * w + c);
    let mut table = Table::new(&["theta", "re_g", "im_g", "re_P", "im_P"]);
    for th in thetas(common.samples) {
        let w = C64::from_polar(1.0, th);
        let (a, b) = (horner(w), rep.domain.eval(w));
        table.push_floats(&[th, a.re, a.im, b.re, b.im]);
    }
    let mut gates = Vec::new();
    match kind {
        ApproxKindArg::Area => {
            let tail: f64 = coeffs.iter().skip(degree + 1).map(|c| c.norm()).sum();
            gates.push(Gate::at_most("sup error within the tail bound", rep.sup_error, tail * (1.0 + 1e-9) + 1e-15));
        }
        ApproxKindArg::Arclength => {
            let scale = rep.domain.map().num().scale().max(1.0);
            gates.push(Gate::below(
                "P' - p^2",
                square_defect(&rep).unwrap_or(f64::INFINITY) / scale,
                common.tol,
            ));
            gates.push(Gate::below(
                "tangent against i w p / conj(p)(1/w)",
                rep.tangent_residual.unwrap_or(f64::INFINITY),
                common.tol,
            ));
        }
    }
    Ok(Outcome {
        json: to_json(&rep),
        table,
        gates,
    })
}
