use num_complex::Complex64;

use super::{basketball_of, basketball_of_exact, trace_curve, Curve, TraceConfig, TraceResult};
use crate::error::{Error, Result};
use crate::forest::{Branch, Matching};
use crate::poly::{all_roots, ComplexPoly, ExactPoly};

fn doubled_union(tr: &TraceResult) -> Result<Matching> {
    let m = 4 * tr.n() as u32;
    let pairs: Vec<(u32, u32)> = tr
        .r_matching
        .branches()
        .iter()
        .chain(tr.i_matching.branches())
        .map(|b| (2 * b.a, 2 * b.b))
        .collect();
    Matching::new(2 * m, &pairs)
}

fn square_matching(paths: &[super::BranchPath], circle: u32) -> Result<Matching> {
    for p in paths {
        if !paths.iter().any(|q| q.start_leaf == p.end_leaf && q.end_leaf == p.start_leaf) {
            return Err(Error::Inconsistent(format!("leaf {} of the square has no return path", p.end_leaf)));
        }
    }
    let pairs: Vec<(u32, u32)> =
        paths.iter().filter(|p| p.start_leaf < p.end_leaf).map(|p| (p.start_leaf, p.end_leaf)).collect();
    Matching::new(circle, &pairs)
}

const SQUARE_DEGREE_CAP: usize = 5;

/// `Im(f²) = 2·Re f·Im f`, so the imaginary curve of `f²` on `8n` leaves is the
/// union of both curves of `f`, leaf `k` of `f` becoming leaf `2k`.
pub fn union_self_check(f: &ComplexPoly, cfg: &TraceConfig) -> Result<bool> {
    if f.deg() > SQUARE_DEGREE_CAP {
        return Err(Error::Capacity { what: "degree for the square check", limit: SQUARE_DEGREE_CAP, requested: f.deg() });
    }
    let tr = basketball_of(f, cfg)?;
    let g = f.mul(f);
    let paths = trace_curve(&g, Curve::I, None, cfg)?;
    Ok(square_matching(&paths, 8 * tr.n() as u32)? == doubled_union(&tr)?)
}

/// [`union_self_check`] with exact on-axis decisions for both traces.
pub fn union_self_check_exact(f: &ExactPoly, cfg: &TraceConfig) -> Result<bool> {
    if f.deg() > SQUARE_DEGREE_CAP {
        return Err(Error::Capacity { what: "degree for the square check", limit: SQUARE_DEGREE_CAP, requested: f.deg() });
    }
    let tr = basketball_of_exact(f, cfg)?;
    let g = f.mul(f);
    let paths = trace_curve(&g.to_complex(), Curve::I, Some(&g), cfg)?;
    Ok(square_matching(&paths, 8 * tr.n() as u32)? == doubled_union(&tr)?)
}

/// For a real polynomial with distinct real roots summing to zero: `I` pairs `0`
/// with `2n` and `k` with `−k`, `R` is non-crossing, and along the real axis the
/// vertices alternate between roots of `f` and of `f'`, the `j`-th from the
/// right lying on the branch `{j, −j}`.
pub fn real_rooted_check(f: &ComplexPoly, cfg: &TraceConfig) -> Result<bool> {
    let n = f.deg();
    if f.coeffs().iter().any(|c| c.im != 0.0) {
        return Err(Error::Domain("coefficients must be real".into()));
    }
    if n >= 1 && f.coeff(n - 1).norm() > 1e-12 * f.scale_factor() {
        return Err(Error::Domain("roots must sum to zero".into()));
    }
    let roots = all_roots(f, &cfg.roots)?;
    let scale = roots.roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if roots.clusters.len() != n || roots.roots.iter().any(|z| z.im.abs() > 1e-9 * scale) {
        return Err(Error::Domain("roots must be real and distinct".into()));
    }
    let tr = basketball_of(f, cfg)?;
    let m = 4 * n as u32;
    let mut want = vec![(0, 2 * n as u32)];
    want.extend((1..n as u32).map(|j| (2 * j, m - 2 * j)));
    if tr.i_matching != Matching::new(m, &want)? || !tr.r_matching.is_noncrossing() {
        return Ok(false);
    }
    if tr.basketball.i().components().len() != 1 {
        return Ok(false);
    }
    // sites on the real axis, from +∞ to −∞
    let mut axis: Vec<(usize, &super::VertexSite)> =
        tr.vertices.iter().enumerate().filter(|(_, v)| v.position.im.abs() <= 1e-7 * scale).collect();
    axis.sort_by(|a, b| b.1.position.re.total_cmp(&a.1.position.re));
    if axis.len() != 2 * n - 1 {
        return Ok(false);
    }
    for (j, (id, site)) in axis.iter().enumerate() {
        let j = j as u32 + 1;
        if site.is_root != (j % 2 == 1) {
            return Ok(false);
        }
        let branch = Branch::new(j, m - j)?;
        let on_branch = if j % 2 == 0 {
            tr.branches.iter().any(|p| Branch::new(p.start_leaf, p.end_leaf).ok() == Some(branch) && p.visited_vertices.contains(id))
        } else {
            tr.branches.iter().any(|p| {
                Branch::new(p.start_leaf, p.end_leaf).ok() == Some(branch)
                    && crosses_near(&p.polyline, site.position, 1e-3 * tr.radius)
            })
        };
        if !on_branch {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True when the polyline passes within `eps` of `z`.
fn crosses_near(poly: &[Complex64], z: Complex64, eps: f64) -> bool {
    poly.windows(2).any(|w| {
        let (a, b) = (w[0], w[1]);
        let d = b - a;
        let t = if d.norm_sqr() == 0.0 { 0.0 } else { ((z - a) * d.conj()).re / d.norm_sqr() };
        let p = a + d * t.clamp(0.0, 1.0);
        (p - z).norm() <= eps
    })
}
