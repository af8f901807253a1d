//! Simultaneous root finding (Aberth-Ehrlich) with multiplicity clustering.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::poly::ComplexPoly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct RootOptions {
    /// Relative tolerance: drives the cluster radius and the
    /// recombination gate.
    pub tol: f64,
    /// Rotates the initial guesses; different seeds must give the same
    /// roots up to rounding.
    pub seed: u64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            tol: 1e-6,
            seed: 0,
            max_iter: 500,
        }
    }
}

/// Roots of `p` grouped into `(root, multiplicity)` clusters.
pub fn roots(p: &ComplexPoly, tol: f64) -> Result<Vec<(C64, usize)>> {
    roots_with(
        p,
        &RootOptions {
            tol,
            ..RootOptions::default()
        },
    )
}

pub fn roots_with(p: &ComplexPoly, opts: &RootOptions) -> Result<Vec<(C64, usize)>> {
    let n = match p.degree().finite() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::Domain(
                "root finding needs a polynomial of degree >= 1".into(),
            ))
        }
    };
    let zeros = p.low_order_zeros();
    let q = p.shift_down(zeros);
    let mut raw = vec![C64::new(0.0, 0.0); zeros];
    if q.len_degree() >= 1 {
        raw.extend(simple_roots(&q, opts)?);
    }
    debug_assert_eq!(raw.len(), n);

    let clusters = cluster(&raw, opts.tol);
    let refined: Vec<(C64, usize)> = clusters
        .into_iter()
        .map(|(r, m)| (refine_cluster(p, r, m), m))
        .collect();
    let refined = merge_clusters(p, refined, opts.tol);

    let rebuilt = ComplexPoly::from_roots(p.leading(), &refined);
    let scale = p.scale();
    let err = (0..=n)
        .map(|k| (rebuilt.coeff(k) - p.coeff(k)).norm())
        .fold(0.0, f64::max);
    if err > opts.tol * n as f64 * scale {
        return Err(Error::RootFinding(format!(
            "recombination error {:e} exceeds gate {:e}",
            err / scale,
            opts.tol * n as f64
        )));
    }
    Ok(refined)
}

/// All roots of `q` (with `q(0) != 0`), each listed once per multiplicity.
fn simple_roots(q: &ComplexPoly, opts: &RootOptions) -> Result<Vec<C64>> {
    let n = q.len_degree();
    if n == 1 {
        return Ok(vec![-q.coeff(0) / q.coeff(1)]);
    }
    let mut z = match aberth(q, opts) {
        Some(z) => z,
        None => companion_roots(q)?,
    };
    for r in z.iter_mut() {
        *r = newton_polish(q, *r);
    }
    Ok(z)
}

/// Horner rounding bound `sum |a_k| |z|^k`.
fn horner_bound(abs_coeffs: &[f64], z: C64) -> f64 {
    let r = z.norm();
    abs_coeffs.iter().rev().fold(0.0, |acc, &a| acc * r + a)
}

fn aberth(q: &ComplexPoly, opts: &RootOptions) -> Option<Vec<C64>> {
    let n = q.len_degree();
    let abs: Vec<f64> = q.coeffs().iter().map(|c| c.norm()).collect();
    let radius = (q.coeff(0).norm() / q.leading().norm()).powf(1.0 / n as f64);
    let offset = 0.4 + 0.7 * (opts.seed % 97) as f64 / 97.0;
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            C64::from_polar(
                radius,
                std::f64::consts::TAU * k as f64 / n as f64 + offset,
            )
        })
        .collect();
    let mut done = vec![false; n];
    let eps = f64::EPSILON;
    for _ in 0..opts.max_iter {
        let mut all = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (pv, dpv) = q.eval_with_derivative(z[k]);
            if pv.norm() <= 16.0 * eps * horner_bound(&abs, z[k]) {
                done[k] = true;
                continue;
            }
            all = false;
            let ratio = pv / dpv;
            let sum: C64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (C64::new(1.0, 0.0) - ratio * sum);
            if !step.is_finite() {
                return None;
            }
            z[k] -= step;
            if step.norm() <= eps * z[k].norm() {
                done[k] = true;
            }
        }
        if all {
            return Some(z);
        }
    }
    if done.iter().all(|d| *d) {
        Some(z)
    } else {
        None
    }
}

fn companion_roots(q: &ComplexPoly) -> Result<Vec<C64>> {
    let n = q.len_degree();
    let lead = q.leading();
    let mut m = DMatrix::<C64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -q.coeff(i) / lead;
    }
    let schur = nalgebra::linalg::Schur::try_new(m, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::RootFinding("companion eigensolve did not converge".into()))?;
    let ev = schur
        .eigenvalues()
        .ok_or_else(|| Error::RootFinding("companion eigensolve failed".into()))?;
    Ok(ev.iter().copied().collect())
}

fn newton_polish(q: &ComplexPoly, mut z: C64) -> C64 {
    let mut pv = q.eval(z).norm();
    for _ in 0..4 {
        let (v, dv) = q.eval_with_derivative(z);
        if dv.norm() == 0.0 {
            break;
        }
        let cand = z - v / dv;
        let cv = q.eval(cand).norm();
        if cv < pv {
            z = cand;
            pv = cv;
        } else {
            break;
        }
    }
    z
}

/// Merge roots closer than `max(1e-8, tol * max(1, |a|, |b|))` into
/// clusters, represented by their centroid and size.
pub(crate) fn cluster(raw: &[C64], tol: f64) -> Vec<(C64, usize)> {
    let n = raw.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut j = i;
        while p[j] != r {
            let nx = p[j];
            p[j] = r;
            j = nx;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let radius = tol * raw[i].norm().max(raw[j].norm()).max(1.0);
            if (raw[i] - raw[j]).norm() <= 1e-8f64.max(radius) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[b] = a;
                }
            }
        }
    }
    let mut groups: Vec<(usize, C64, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 += raw[i];
                g.2 += 1;
            }
            None => groups.push((r, raw[i], 1)),
        }
    }
    groups
        .into_iter()
        .map(|(_, s, m)| (s / m as f64, m))
        .collect()
}

const MULTIPLE_ROOT_NOISE: f64 = 1e4;

/// An `m`-fold root perturbed by rounding splits by about `eps^(1/m)`, so
/// clusters further apart than the base radius may still be one root.
fn merge_radius(p: &ComplexPoly, m: usize, tol: f64) -> f64 {
    let n = p.len_degree() as f64;
    p.root_scale() * tol.max((1e3 * n * f64::EPSILON).powf(1.0 / m as f64))
}

/// Whether `p` has an `m`-fold root at `c` up to coefficient noise: the
/// Taylor coefficients `t_j`, `j < m`, at the refined centroid are at the
/// rounding level of their Horner bounds.
fn is_multiple_root(p: &ComplexPoly, c: C64, m: usize) -> bool {
    let t = p.taylor_at(c);
    let abs = ComplexPoly::new(p.coeffs().iter().map(|a| C64::new(a.norm(), 0.0)).collect());
    let bound = abs.taylor_at(C64::new(c.norm(), 0.0));
    let n = p.len_degree() as f64;
    t[m].norm() > 0.0 && (0..m).all(|j| t[j].norm() <= MULTIPLE_ROOT_NOISE * n * f64::EPSILON * bound[j].norm())
}

/// For each cluster, merges it with the largest group of its nearest
/// neighbours that lies within [`merge_radius`] and passes
/// [`is_multiple_root`]; repeats until nothing merges.
fn merge_clusters(p: &ComplexPoly, mut clusters: Vec<(C64, usize)>, tol: f64) -> Vec<(C64, usize)> {
    'outer: loop {
        for i in 0..clusters.len() {
            let mut near: Vec<usize> = (0..clusters.len()).filter(|&j| j != i).collect();
            near.sort_by(|&a, &b| {
                let da = (clusters[a].0 - clusters[i].0).norm();
                let db = (clusters[b].0 - clusters[i].0).norm();
                da.total_cmp(&db)
            });
            for k in (1..=near.len()).rev() {
                let group: Vec<usize> = std::iter::once(i).chain(near[..k].iter().copied()).collect();
                let m: usize = group.iter().map(|&g| clusters[g].1).sum();
                let centroid = group.iter().map(|&g| clusters[g].0 * clusters[g].1 as f64).sum::<C64>() / m as f64;
                let radius = merge_radius(p, m, tol);
                if group.iter().any(|&g| (clusters[g].0 - centroid).norm() > radius) {
                    continue;
                }
                let c = refine_cluster(p, centroid, m);
                if is_multiple_root(p, c, m) {
                    let mut merged: Vec<(C64, usize)> = clusters
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| !group.contains(j))
                        .map(|(_, x)| *x)
                        .collect();
                    merged.push((c, m));
                    clusters = merged;
                    continue 'outer;
                }
            }
        }
        return clusters;
    }
}

/// Newton on the `(m-1)`-th derivative, which has a simple root at an
/// `m`-fold root of `p`.
fn refine_cluster(p: &ComplexPoly, r: C64, m: usize) -> C64 {
    if r == C64::new(0.0, 0.0) && p.low_order_zeros() >= m {
        return r;
    }
    let mut d = p.clone();
    for _ in 1..m {
        d = d.derivative();
    }
    newton_polish(&d, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<(C64, usize)>) -> Vec<(C64, usize)> {
        v.sort_by(|a, b| a.0.re.partial_cmp(&b.0.re).unwrap());
        v
    }

    #[test]
    fn high_multiplicity_is_recovered() {
        let r0 = C64::new(0.3, 0.55);
        let p = ComplexPoly::from_roots(C64::new(1.5, 0.0), &[(r0, 4), (C64::new(-1.2, 0.1), 1)]);
        let r = roots(&p, 1e-6).unwrap();
        let four = r.iter().find(|x| x.1 == 4).expect("4-fold root");
        assert!((four.0 - r0).norm() < 1e-8);
    }

    #[test]
    fn close_distinct_roots_stay_apart() {
        let a = C64::new(0.5, 0.0);
        let p = ComplexPoly::from_roots(C64::new(1.0, 0.0), &[(a, 1), (a + 1e-4, 1), (C64::new(2.0, 0.0), 1)]);
        let r = roots(&p, 1e-6).unwrap();
        assert_eq!(r.len(), 3);
    }

    #[test]
    fn quadratic() {
        let r = sorted(roots(&ComplexPoly::from_real(&[-1.0, 0.0, 1.0]), 1e-6).unwrap());
        assert_eq!(r.len(), 2);
        assert!((r[0].0 + 1.0).norm() < 1e-14 && r[0].1 == 1);
        assert!((r[1].0 - 1.0).norm() < 1e-14 && r[1].1 == 1);
    }

    #[test]
    fn double_root_is_clustered() {
        let p = ComplexPoly::from_real(&[-2.0, 6.0, -4.5, 1.0]);
        let r = sorted(roots(&p, 1e-6).unwrap());
        assert_eq!(r.len(), 2);
        assert!((r[0].0 - 0.5).norm() < 1e-12 && r[0].1 == 1);
        assert!((r[1].0 - 2.0).norm() < 1e-12 && r[1].1 == 2);
    }

    #[test]
    fn zero_roots_are_exact() {
        let p = ComplexPoly::from_real(&[0.0, 0.0, 0.0, 2.0, 1.0]);
        let r = sorted(roots(&p, 1e-6).unwrap());
        assert_eq!(r.len(), 2);
        assert_eq!(r[1], (C64::new(0.0, 0.0), 3));
        assert!((r[0].0 + 2.0).norm() < 1e-14);
    }

    #[test]
    fn constant_is_a_domain_error() {
        assert!(matches!(
            roots(&ComplexPoly::from_real(&[2.0]), 1e-6),
            Err(Error::Domain(_))
        ));
        assert!(roots(&ComplexPoly::zero(), 1e-6).is_err());
    }

    #[test]
    fn seeds_agree() {
        let p = ComplexPoly::new(vec![
            C64::new(0.3, 1.0),
            C64::new(-2.0, 0.5),
            C64::new(0.0, 0.0),
            C64::new(1.0, -1.0),
            C64::new(0.7, 0.2),
        ]);
        let a = roots_with(&p, &RootOptions { seed: 1, ..Default::default() }).unwrap();
        let b = roots_with(&p, &RootOptions { seed: 42, ..Default::default() }).unwrap();
        for (r, _) in &a {
            let best = b.iter().map(|(s, _)| (s - r).norm()).fold(f64::MAX, f64::min);
            assert!(best < 1e-13);
        }
    }

    #[test]
    fn triple_root() {
        let p = ComplexPoly::from_roots(
            C64::new(1.0, 0.0),
            &[(C64::new(0.3, 0.4), 3), (C64::new(-1.0, 2.0), 1)],
        );
        let r = roots(&p, 1e-4).unwrap();
        assert_eq!(r.len(), 2);
        let triple = r.iter().find(|x| x.1 == 3).unwrap();
        assert!((triple.0 - C64::new(0.3, 0.4)).norm() < 1e-10);
    }
}
