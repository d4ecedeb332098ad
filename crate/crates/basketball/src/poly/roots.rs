//! Simultaneous root finding (Aberth–Ehrlich) with cluster detection.

use num_complex::Complex64;

use super::ComplexPoly;
use crate::error::{Error, Result};
use crate::scalar::CDd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Precision {
    #[default]
    Double,
    /// Newton polishing of simple roots with compensated (double-double) evaluation.
    Extended,
}

#[derive(Clone, Debug)]
pub struct RootConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub precision: Precision,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig { tol: 1e-8, max_iter: 200, precision: Precision::Double }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootCluster {
    pub center: Complex64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct Roots {
    /// All roots, repeated according to multiplicity.
    pub roots: Vec<Complex64>,
    pub clusters: Vec<RootCluster>,
}

fn fujiwara(f: &ComplexPoly) -> f64 {
    let n = f.deg();
    let mut b: f64 = 0.0;
    for k in 1..=n {
        let c = f.coeff(n - k).norm();
        let c = if k == n { c / 2.0 } else { c };
        b = b.max(c.powf(1.0 / k as f64));
    }
    2.0 * b
}

/// Raw simultaneous iteration; roots listed with multiplicity, unclustered.
pub(crate) fn aberth(f: &ComplexPoly, cfg: &RootConfig) -> Result<Vec<Complex64>> {
    let n = f
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::Degenerate("root finding needs degree at least 1".into()))?;
    let f = f.monic();
    let scale = f.scale_factor();
    let bound = fujiwara(&f);
    if bound == 0.0 {
        return Ok(vec![Complex64::new(0.0, 0.0); n]);
    }
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(bound, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let stop = 8.0 * n as f64 * f64::EPSILON;
    let mut iterations = 0;
    for it in 0..cfg.max_iter {
        iterations = it + 1;
        let mut done = true;
        for i in 0..n {
            let (p, dp) = f.eval_with_derivative(z[i]);
            if p.norm() <= stop * f.magnitude_at(z[i].norm()) {
                continue;
            }
            done = false;
            let ratio = if dp.norm() == 0.0 { p * 1e-8 } else { p / dp };
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        s += 1.0 / d;
                    }
                }
            }
            let den = Complex64::new(1.0, 0.0) - ratio * s;
            let w = if den.norm() == 0.0 { ratio } else { ratio / den };
            z[i] -= w;
        }
        if done {
            break;
        }
    }
    for r in &z {
        let res = f.evaluate(r).norm();
        let allowed = cfg.tol * scale * r.norm().max(1.0).powi(n as i32);
        if !res.is_finite() || res > allowed {
            return Err(Error::SolverFailure { iterations, best: z });
        }
    }
    Ok(z)
}

/// All roots of `f` with multiplicity, grouped into clusters of radius `tol^{1/2}·scale`.
pub fn all_roots(f: &ComplexPoly, cfg: &RootConfig) -> Result<Roots> {
    let z = aberth(f, cfg)?;
    let radius = cfg.tol.sqrt() * f.monic().scale_factor();
    let mut clusters = cluster(&z, radius);
    let fm = f.monic();
    for c in clusters.iter_mut() {
        if c.multiplicity > 1 {
            c.center = refine_multiple(&fm, c.center, c.multiplicity, radius);
        } else if cfg.precision == Precision::Extended {
            c.center = polish(&fm, c.center);
        }
    }
    Ok(Roots::from_clusters(clusters))
}

impl Roots {
    pub(crate) fn from_clusters(clusters: Vec<RootCluster>) -> Roots {
        let mut roots = Vec::new();
        for c in &clusters {
            roots.extend(std::iter::repeat(c.center).take(c.multiplicity));
        }
        Roots { roots, clusters }
    }
}

/// Single-linkage clustering; centers are means, ordered by (re, im).
pub(crate) fn cluster(z: &[Complex64], radius: f64) -> Vec<RootCluster> {
    let n = z.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
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
            if (z[i] - z[j]).norm() <= radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Complex64>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => g.1.push(z[i]),
            None => groups.push((r, vec![z[i]])),
        }
    }
    let mut out: Vec<RootCluster> = groups
        .into_iter()
        .map(|(_, pts)| {
            let m = pts.len();
            let center = pts.iter().sum::<Complex64>() / m as f64;
            RootCluster { center, multiplicity: m }
        })
        .collect();
    out.sort_by(|a, b| {
        a.center
            .re
            .total_cmp(&b.center.re)
            .then(a.center.im.total_cmp(&b.center.im))
    });
    out
}

/// A root of multiplicity `m` is a simple root of `f^{(m-1)}`; Newton on that
/// derivative sharpens the cluster mean. Steps leaving the cluster are refused.
fn refine_multiple(f: &ComplexPoly, center: Complex64, m: usize, radius: f64) -> Complex64 {
    let mut g = f.clone();
    for _ in 0..m - 1 {
        g = g.derivative();
    }
    let mut z = center;
    for _ in 0..8 {
        let (p, dp) = g.eval_with_derivative(z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        if (z - step - center).norm() > radius {
            return center;
        }
        z -= step;
        if step.norm() <= f64::EPSILON * z.norm().max(1.0) {
            break;
        }
    }
    z
}

fn eval_compensated(f: &ComplexPoly, z: Complex64) -> (Complex64, Complex64) {
    let zz = CDd::from(z);
    let mut p = CDd::default();
    let mut dp = CDd::default();
    for c in f.coeffs().iter().rev() {
        dp = dp.mul(zz).add(p);
        p = p.mul(zz).add(CDd::from(*c));
    }
    (p.to_c64(), dp.to_c64())
}

pub(crate) fn polish(f: &ComplexPoly, mut z: Complex64) -> Complex64 {
    for _ in 0..4 {
        let (p, dp) = eval_compensated(f, z);
        if dp.norm() == 0.0 || p.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        z -= step;
        if step.norm() <= f64::EPSILON * z.norm() {
            break;
        }
    }
    z
}

#[derive(Clone, Debug)]
pub struct CriticalData {
    /// Roots of `f'`, repeated by multiplicity.
    pub critical_points: Vec<Complex64>,
    pub critical_values: Vec<Complex64>,
    /// Distinct critical points with their order as zeros of `f'`.
    pub clusters: Vec<RootCluster>,
    pub cluster_values: Vec<Complex64>,
    pub distinct_re: Vec<f64>,
    pub distinct_im: Vec<f64>,
}

fn distinct_sorted(mut v: Vec<f64>, tol: f64) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    let mut out: Vec<Vec<f64>> = Vec::new();
    for x in v {
        match out.last_mut() {
            Some(g) if (x - g[g.len() - 1]).abs() <= tol => g.push(x),
            _ => out.push(vec![x]),
        }
    }
    out.into_iter().map(|g| g.iter().sum::<f64>() / g.len() as f64).collect()
}

/// Critical points and values; real and imaginary parts of the values are
/// merged when closer than `cluster_tol` times their magnitude (at least 1).
pub fn critical_data(f: &ComplexPoly, cluster_tol: f64, cfg: &RootConfig) -> Result<CriticalData> {
    let n = f.deg();
    if n < 2 {
        return Ok(CriticalData {
            critical_points: vec![],
            critical_values: vec![],
            clusters: vec![],
            cluster_values: vec![],
            distinct_re: vec![],
            distinct_im: vec![],
        });
    }
    let r = all_roots(&f.derivative(), cfg)?;
    let cluster_values: Vec<Complex64> = r.clusters.iter().map(|c| f.evaluate(&c.center)).collect();
    let mut critical_values = Vec::new();
    for (c, v) in r.clusters.iter().zip(&cluster_values) {
        critical_values.extend(std::iter::repeat(*v).take(c.multiplicity));
    }
    let mag = cluster_values.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let tol = cluster_tol * mag;
    let distinct_re = distinct_sorted(cluster_values.iter().map(|v| v.re).collect(), tol);
    let distinct_im = distinct_sorted(cluster_values.iter().map(|v| v.im).collect(), tol);
    Ok(CriticalData {
        critical_points: r.roots,
        critical_values,
        clusters: r.clusters,
        cluster_values,
        distinct_re,
        distinct_im,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn has_root(r: &Roots, z: Complex64, m: usize, eps: f64) -> bool {
        r.clusters.iter().any(|cl| (cl.center - z).norm() < eps && cl.multiplicity == m)
    }

    #[test]
    fn quadratic_roots() {
        let f = ComplexPoly::from_descending(vec![c(1., 0.), c(0., 0.), c(-1., 0.)]);
        let r = all_roots(&f, &RootConfig::default()).unwrap();
        assert!(has_root(&r, c(1., 0.), 1, 1e-12));
        assert!(has_root(&r, c(-1., 0.), 1, 1e-12));
    }

    #[test]
    fn non_monic_input() {
        // 3z² + 6i: z² = -2i
        let f = ComplexPoly::from_descending(vec![c(3., 0.), c(0., 0.), c(0., 6.)]);
        let r = all_roots(&f, &RootConfig::default()).unwrap();
        assert!(has_root(&r, c(1., -1.), 1, 1e-12));
        assert!(has_root(&r, c(-1., 1.), 1, 1e-12));
        for z in &r.roots {
            assert!(f.evaluate(z).norm() < 1e-12);
        }
    }

    #[test]
    fn multiplicities_of_the_quintic() {
        // (z-1)^3 (z+1)^2 = z^5 - z^4 - 2z^3 + 2z^2 + z - 1
        let f = ComplexPoly::new(
            [-1., 1., 2., -2., -1., 1.].iter().map(|&x| c(x, 0.)).collect(),
        );
        let r = all_roots(&f, &RootConfig::default()).unwrap();
        assert_eq!(r.roots.len(), 5);
        assert!(has_root(&r, c(1., 0.), 3, 1e-9));
        assert!(has_root(&r, c(-1., 0.), 2, 1e-6));
    }

    #[test]
    fn pure_power() {
        let f = ComplexPoly::monomial(c(1., 0.), 6);
        let r = all_roots(&f, &RootConfig::default()).unwrap();
        assert_eq!(r.clusters.len(), 1);
        assert_eq!(r.clusters[0].multiplicity, 6);
    }

    #[test]
    fn reexpansion_matches() {
        let f = ComplexPoly::from_descending(vec![c(1., 0.), c(0., 0.), c(0.3, -2.), c(1., 1.), c(-0.5, 0.25)]);
        let r = all_roots(&f, &RootConfig::default()).unwrap();
        let mut g = ComplexPoly::constant(c(1., 0.));
        for z in &r.roots {
            g = g.mul(&ComplexPoly::new(vec![-z, c(1., 0.)]));
        }
        for k in 0..=4 {
            assert!((g.coeff(k) - f.coeff(k)).norm() < 1e-10 * f.scale_factor());
        }
    }

    #[test]
    fn extended_polish_reduces_residual() {
        let f = ComplexPoly::from_descending(vec![c(1., 0.), c(-7., 1.), c(3., 0.5), c(2., -2.), c(0.1, 0.)]);
        let cfg = RootConfig { precision: Precision::Extended, ..RootConfig::default() };
        let r = all_roots(&f, &cfg).unwrap();
        for z in &r.roots {
            assert!(f.evaluate(z).norm() <= 1e-13 * f.magnitude_at(z.norm()));
        }
    }

    #[test]
    fn critical_data_examples() {
        let f = ComplexPoly::from_descending(vec![c(1., 0.), c(0., 0.), c(0., 6.), c(0., 0.)]);
        let cd = critical_data(&f, 1e-9, &RootConfig::default()).unwrap();
        let mut vals = cd.critical_values.clone();
        vals.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((vals[0] - c(-4., -4.)).norm() < 1e-12);
        assert!((vals[1] - c(4., 4.)).norm() < 1e-12);
        assert_eq!(cd.distinct_re.len(), 2);
        assert!((cd.distinct_re[0] + 4.0).abs() < 1e-12 && (cd.distinct_im[1] - 4.0).abs() < 1e-12);

        let g = ComplexPoly::from_descending(vec![c(1., 0.), c(0., 0.), c(-3., 0.), c(2., 0.)]);
        let cd = critical_data(&g, 1e-9, &RootConfig::default()).unwrap();
        let mut pts: Vec<(f64, f64)> = cd.clusters.iter().zip(&cd.cluster_values).map(|(p, v)| (p.center.re, v.re)).collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        assert!((pts[0].0 + 1.0).abs() < 1e-12 && (pts[0].1 - 4.0).abs() < 1e-12);
        assert!((pts[1].0 - 1.0).abs() < 1e-12 && pts[1].1.abs() < 1e-12);

        let h = ComplexPoly::monomial(c(1., 0.), 5);
        let cd = critical_data(&h, 1e-9, &RootConfig::default()).unwrap();
        assert_eq!(cd.clusters.len(), 1);
        assert_eq!(cd.clusters[0].multiplicity, 4);
        assert_eq!(cd.cluster_values[0], c(0., 0.));
    }
}
