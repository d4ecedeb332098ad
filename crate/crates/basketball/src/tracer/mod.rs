//! Numerical tracing of `Re f = 0` and `Im f = 0` from the leaves at infinity.
//!
//! Each leaf is anchored on a circle of radius `R₀` enclosing every root and
//! critical point, then followed inward by predictor-corrector continuation.
//! A branch meets a vertex exactly at a critical point whose value lies on the
//! relevant axis; there the curve has `2m` rays and the branch leaves along
//! the ray opposite to the one it came in on.

mod checks;
mod svg;

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forest::{basketball_admissible, Basketball, Matching};
use crate::poly::{
    all_roots, axis_critical_parameters, critical_data, refine_root, Axis, ComplexPoly, ExactPoly, RootConfig,
};
use crate::scalar::rat_to_f64;

pub use checks::{real_rooted_check, union_self_check, union_self_check_exact};
pub use svg::{render_svg, svg_string};

#[derive(Clone, Debug)]
pub struct TraceConfig {
    /// `R₀` is at least this multiple of every root and critical point modulus.
    pub radius_safety: f64,
    /// Largest step, relative to `R₀`.
    pub step_max: f64,
    /// Corrector stops when `|u| ≤ corrector_tol · Σ|c_k||z|^k`.
    pub corrector_tol: f64,
    /// Snap radius relative to `R₀`, before adaptive shrinking.
    pub vertex_snap_radius_factor: f64,
    /// A critical value lies on an axis when its other coordinate is below this, relatively.
    pub on_curve_tol: f64,
    pub max_steps: usize,
    pub roots: RootConfig,
}

impl Default for TraceConfig {
    fn default() -> Self {
        TraceConfig {
            radius_safety: 2.0,
            step_max: 0.02,
            corrector_tol: 1e-10,
            vertex_snap_radius_factor: 1e-3,
            on_curve_tol: 1e-9,
            max_steps: 200_000,
            roots: RootConfig::default(),
        }
    }
}

/// Which of the two curves a leaf belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Curve {
    /// `Re f = 0`, odd leaves.
    R,
    /// `Im f = 0`, even leaves.
    I,
}

impl Curve {
    pub fn of_leaf(k: u32) -> Curve {
        if k % 2 == 1 {
            Curve::R
        } else {
            Curve::I
        }
    }

    /// `σ` with the curve being `Re(σ f) = 0`.
    fn sigma(self) -> Complex64 {
        match self {
            Curve::R => Complex64::new(1.0, 0.0),
            Curve::I => Complex64::new(0.0, -1.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchPath {
    pub start_leaf: u32,
    pub end_leaf: u32,
    pub polyline: Vec<Complex64>,
    /// Ids of the vertex sites passed, in order.
    pub visited_vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VertexSite {
    pub position: Complex64,
    pub m_r: usize,
    pub m_i: usize,
    pub is_root: bool,
}

#[derive(Clone, Debug)]
pub struct TraceResult {
    pub radius: f64,
    pub r_matching: Matching,
    pub i_matching: Matching,
    /// One path per branch, traced from its smaller leaf.
    pub branches: Vec<BranchPath>,
    pub vertices: Vec<VertexSite>,
    pub basketball: Basketball,
}

impl TraceResult {
    pub fn n(&self) -> usize {
        self.basketball.n()
    }

    pub fn degree(&self) -> i64 {
        self.basketball.degree()
    }
}

fn require_monic(f: &ComplexPoly) -> Result<usize> {
    let n = f.degree().filter(|&d| d >= 1).ok_or_else(|| Error::Domain("degree must be at least 1".into()))?;
    if (f.lc() - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(Error::Domain("polynomial must be monic".into()));
    }
    for c in f.coeffs() {
        crate::scalar::check_finite(*c)?;
    }
    Ok(n)
}

/// Radius beyond which `zⁿ` dominates the rest of `f` twice over and which
/// encloses every root and critical point by the safety factor.
pub fn boundary_radius(f: &ComplexPoly, cfg: &TraceConfig) -> Result<f64> {
    let n = require_monic(f)?;
    let roots = all_roots(f, &cfg.roots)?;
    let crit = critical_data(f, 1e-9, &cfg.roots)?;
    Ok(radius_from(f, n, roots.roots.iter().chain(&crit.critical_points), cfg))
}

fn radius_from<'a>(f: &ComplexPoly, n: usize, pts: impl Iterator<Item = &'a Complex64>, cfg: &TraceConfig) -> f64 {
    let mut r0 = cfg.radius_safety;
    for z in pts {
        r0 = r0.max(cfg.radius_safety * z.norm());
    }
    for k in 1..=n {
        let c = f.coeff(n - k).norm();
        if c > 0.0 {
            r0 = r0.max((2.0 * n as f64 * c).powf(1.0 / k as f64));
        }
    }
    r0
}

/// A critical point (cluster) of `f` and the curves it lies on.
#[derive(Clone, Debug)]
struct CritSite {
    pos: Complex64,
    /// Order as a zero of `f'`; the curves through it have `order + 1` branches.
    order: usize,
    on_r: bool,
    on_i: bool,
    /// Radius at which a branch is handed over to the vertex crossing.
    snap: f64,
}

/// Exact decisions of which critical values lie on each axis.
#[derive(Clone, Debug, Default)]
struct AxisParameters {
    r: Vec<f64>,
    i: Vec<f64>,
}

struct Tracer<'a> {
    f: &'a ComplexPoly,
    n: usize,
    r0: f64,
    sites: Vec<CritSite>,
    anchors: Vec<Complex64>,
    cfg: &'a TraceConfig,
}

impl<'a> Tracer<'a> {
    fn new(f: &'a ComplexPoly, exact: Option<&AxisParameters>, cfg: &'a TraceConfig) -> Result<Self> {
        let n = require_monic(f)?;
        let roots = all_roots(f, &cfg.roots)?;
        let crit = critical_data(f, 1e-9, &cfg.roots)?;
        let value_scale = crit.cluster_values.iter().map(|v| v.norm()).fold(1.0, f64::max);
        let mut sites = Vec::new();
        for (cl, v) in crit.clusters.iter().zip(&crit.cluster_values) {
            let s = f.magnitude_at(cl.center.norm()).max(1.0);
            let (on_r, on_i) = match exact {
                Some(p) => {
                    let near = |ts: &[f64], x: f64| ts.iter().any(|&t| (t - x).abs() <= 1e-8 * value_scale);
                    // on R: v = i·t; on I: v = t
                    (
                        v.re.abs() <= 1e-8 * value_scale && near(&p.r, v.im),
                        v.im.abs() <= 1e-8 * value_scale && near(&p.i, v.re),
                    )
                }
                None => {
                    let tol = cfg.on_curve_tol * s;
                    for x in [v.re.abs(), v.im.abs()] {
                        if x > tol && x <= 100.0 * tol {
                            return Err(Error::Degenerate(format!(
                                "critical value {v} is too close to an axis to decide at working precision"
                            )));
                        }
                    }
                    (v.re.abs() <= tol, v.im.abs() <= tol)
                }
            };
            sites.push(CritSite { pos: cl.center, order: cl.multiplicity, on_r, on_i, snap: 0.0 });
        }
        let mut r0 = radius_from(f, n, roots.roots.iter().chain(&crit.critical_points), cfg);
        let mut sep = f64::INFINITY;
        for (j, a) in sites.iter().enumerate() {
            for b in &sites[j + 1..] {
                sep = sep.min((a.pos - b.pos).norm());
            }
        }
        let mut anchors = None;
        for _ in 0..=6 {
            match anchor_all(f, n, r0) {
                Some(a) => {
                    anchors = Some(a);
                    break;
                }
                None => r0 *= 2.0,
            }
        }
        let anchors = anchors.ok_or_else(|| Error::Trace("leaf anchors did not settle after 6 doublings".into()))?;
        let snap = (cfg.vertex_snap_radius_factor * r0).min(0.25 * sep);
        if snap < 1e-9 * r0 {
            return Err(Error::Degenerate("critical points too close to separate at working precision".into()));
        }
        // Near a degenerate vertex u grows like |a|ρ^{k+1}; below the radius
        // where that drops under the corrector tolerance the curve is not resolved.
        let positions: Vec<Complex64> = sites.iter().map(|s| s.pos).collect();
        for (j, site) in sites.iter_mut().enumerate() {
            let k = site.order + 1;
            let mut d = f.clone();
            let mut fact = 1.0;
            for i in 1..=k {
                d = d.derivative();
                fact *= i as f64;
            }
            let a = d.evaluate(&site.pos).norm() / fact;
            let floor = 1e3 * cfg.corrector_tol * f.magnitude_at(site.pos.norm()).max(1.0);
            let local = if a > 0.0 { (floor / a).powf(1.0 / k as f64) } else { 0.0 };
            let sep_j = positions
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != j)
                .map(|(_, p)| (p - site.pos).norm())
                .fold(f64::INFINITY, f64::min);
            site.snap = snap.max(local.min(0.25 * sep_j).min(0.1 * r0));
        }
        Ok(Tracer { f, n, r0, sites, anchors, cfg })
    }

    fn u(&self, z: Complex64, curve: Curve) -> f64 {
        (curve.sigma() * self.f.evaluate(&z)).re
    }

    fn project(&self, mut z: Complex64, curve: Curve) -> Option<Complex64> {
        let s = curve.sigma();
        for _ in 0..12 {
            let (p, dp) = self.f.eval_with_derivative(z);
            let u = (s * p).re;
            if u.abs() <= self.cfg.corrector_tol * self.f.magnitude_at(z.norm()).max(1.0) {
                return Some(z);
            }
            let d = s * dp;
            if d.norm() == 0.0 {
                return None;
            }
            z -= u / d;
            if !z.re.is_finite() || !z.im.is_finite() {
                return None;
            }
        }
        None
    }

    fn tangent(&self, z: Complex64, curve: Curve) -> Option<Complex64> {
        let d = curve.sigma() * self.f.eval_with_derivative(z).1;
        let t = Complex64::new(0.0, 1.0) * d.conj();
        let m = t.norm();
        (m > 0.0).then(|| t / m)
    }

    fn step_size(&self, z: Complex64) -> f64 {
        let mut h = self.cfg.step_max * self.r0;
        for s in &self.sites {
            h = h.min(0.1 * (z - s.pos).norm());
        }
        let (_, d1, d2) = self.f.eval3(z);
        if d2.norm() > 0.0 {
            h = h.min(0.25 * d1.norm() / d2.norm());
        }
        h
    }

    /// Point where the curve crosses the circle of `radius` around `centre` within
    /// `±half` of angle `beta`.
    fn exit_point(&self, centre: Complex64, radius: f64, beta: f64, half: f64, curve: Curve) -> Result<Complex64> {
        let at = |phi: f64| centre + Complex64::from_polar(radius, phi);
        let (mut lo, mut hi) = (beta - half, beta + half);
        let (ulo, uhi) = (self.u(at(lo), curve), self.u(at(hi), curve));
        if ulo.signum() == uhi.signum() {
            return Err(Error::Trace(format!("no outgoing ray found at vertex {centre}")));
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.u(at(mid), curve).signum() == ulo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(at(0.5 * (lo + hi)))
    }

    fn on(&self, s: &CritSite, curve: Curve) -> bool {
        match curve {
            Curve::R => s.on_r,
            Curve::I => s.on_i,
        }
    }

    fn trace(&self, start: u32) -> Result<BranchPath> {
        let curve = Curve::of_leaf(start);
        let m = 4 * self.n as u32;
        let mut z = self.anchors[start as usize];
        let mut poly = vec![z];
        let mut visited = Vec::new();
        let mut dir = {
            let t = self.tangent(z, curve).ok_or_else(|| Error::Trace("stationary leaf".into()))?;
            if (t * z.conj()).re > 0.0 {
                -t
            } else {
                t
            }
        };
        let mut leaving: Option<usize> = None;
        let mut h = self.step_size(z);
        for _ in 0..self.cfg.max_steps {
            h = h.min(self.step_size(z));
            let (next, tnext) = loop {
                if h < 1e-14 * self.r0 {
                    return Err(Error::Trace(format!("step underflow near {z} on the branch from leaf {start}")));
                }
                let pred = z + dir * h;
                if let Some(c) = self.project(pred, curve) {
                    if (c - pred).norm() <= 0.5 * h {
                        if let Some(t) = self.tangent(c, curve) {
                            let t = if (t * dir.conj()).re < 0.0 { -t } else { t };
                            if (t * dir.conj()).re >= std::f64::consts::FRAC_1_SQRT_2 {
                                break (c, t);
                            }
                        }
                    }
                }
                h *= 0.5;
            };
            z = next;
            dir = tnext;
            poly.push(z);
            h *= 1.5;

            if let Some(j) = leaving {
                if (z - self.sites[j].pos).norm() > 2.0 * self.sites[j].snap {
                    leaving = None;
                }
            }
            let hit = self
                .sites
                .iter()
                .enumerate()
                .find(|(j, s)| Some(*j) != leaving && self.on(s, curve) && (z - s.pos).norm() < s.snap);
            if let Some((j, s)) = hit {
                let alpha = (z - s.pos).arg();
                let rays = (s.order + 1) as f64;
                let exit = self.exit_point(s.pos, s.snap, alpha + PI, PI / (2.0 * rays), curve)?;
                poly.push(s.pos);
                poly.push(exit);
                visited.push(j);
                z = exit;
                let t = self.tangent(z, curve).ok_or_else(|| Error::Trace("stationary exit".into()))?;
                dir = if (t * (z - s.pos).conj()).re < 0.0 { -t } else { t };
                leaving = Some(j);
                h = self.step_size(z);
                continue;
            }

            if z.norm() >= self.r0 && (dir * z.conj()).re > 0.0 {
                let k = (z.arg() * 2.0 * self.n as f64 / PI).round().rem_euclid(m as f64) as u32;
                let ideal = k as f64 * PI / (2.0 * self.n as f64);
                let dev = (z.arg() - ideal + PI).rem_euclid(2.0 * PI) - PI;
                if Curve::of_leaf(k) != curve || dev.abs() >= PI / (4.0 * self.n as f64) {
                    return Err(Error::Trace(format!("branch from leaf {start} left the disc away from a leaf")));
                }
                poly.pop();
                poly.push(self.anchors[k as usize]);
                return Ok(BranchPath { start_leaf: start, end_leaf: k, polyline: poly, visited_vertices: visited });
            }
        }
        Err(Error::Trace(format!("branch from leaf {start} exceeded {} steps", self.cfg.max_steps)))
    }
}

/// Leaf positions on `|z| = r`, by bisection within a quarter spacing of the
/// ideal angles `kπ/(2n)`; `None` if some window shows no sign change.
fn anchor_all(f: &ComplexPoly, n: usize, r: f64) -> Option<Vec<Complex64>> {
    (0..4 * n as u32)
        .map(|k| {
            let curve = Curve::of_leaf(k);
            let u = |phi: f64| (curve.sigma() * f.evaluate(&Complex64::from_polar(r, phi))).re;
            let ideal = k as f64 * PI / (2.0 * n as f64);
            let half = PI / (4.0 * n as f64);
            let (mut lo, mut hi) = (ideal - half, ideal + half);
            let ulo = u(lo);
            if ulo.signum() == u(hi).signum() {
                return None;
            }
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if u(mid).signum() == ulo.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Some(Complex64::from_polar(r, 0.5 * (lo + hi)))
        })
        .collect()
}

/// Trace the branch starting at `start_leaf`.
pub fn trace_branch(f: &ComplexPoly, start_leaf: u32, cfg: &TraceConfig) -> Result<BranchPath> {
    let t = Tracer::new(f, None, cfg)?;
    if start_leaf >= 4 * t.n as u32 {
        return Err(Error::Domain(format!("leaf {start_leaf} out of range")));
    }
    t.trace(start_leaf)
}

/// Trace only the leaves of one curve; returns the paths indexed by start leaf.
pub(crate) fn trace_curve(f: &ComplexPoly, curve: Curve, exact: Option<&ExactPoly>, cfg: &TraceConfig) -> Result<Vec<BranchPath>> {
    let params = exact.map(exact_parameters).transpose()?;
    let t = Tracer::new(f, params.as_ref(), cfg)?;
    let leaves: Vec<u32> = (0..4 * t.n as u32).filter(|&k| Curve::of_leaf(k) == curve).collect();
    leaves.par_iter().map(|&k| t.trace(k)).collect()
}

fn exact_parameters(f: &ExactPoly) -> Result<AxisParameters> {
    let solve = |axis| -> Result<Vec<f64>> {
        let (g, ivs) = axis_critical_parameters(f, axis)?;
        let width = BigRational::from_f64(1e-13).expect("finite");
        ivs.iter()
            .map(|iv| {
                let r = refine_root(&g, iv, &width)?;
                Ok(rat_to_f64(&((r.lo + r.hi) / BigRational::from_integer(2.into()))))
            })
            .collect()
    };
    if f.deg() < 2 {
        return Ok(AxisParameters::default());
    }
    Ok(AxisParameters { r: solve(Axis::Imaginary)?, i: solve(Axis::Real)? })
}

fn assemble(t: &Tracer, paths: Vec<BranchPath>) -> Result<TraceResult> {
    let m = 4 * t.n as u32;
    for p in &paths {
        let back = &paths[p.end_leaf as usize];
        if back.end_leaf != p.start_leaf {
            return Err(Error::Inconsistent(format!(
                "leaf {} reaches {} but {} reaches {}",
                p.start_leaf, p.end_leaf, back.start_leaf, back.end_leaf
            )));
        }
        let mut rev = back.visited_vertices.clone();
        rev.reverse();
        if rev != p.visited_vertices {
            return Err(Error::Inconsistent(format!(
                "branch {{{}, {}}} passes different vertices in the two directions",
                p.start_leaf, p.end_leaf
            )));
        }
    }
    let pairs = |parity: u32| -> Vec<(u32, u32)> {
        paths.iter().filter(|p| p.start_leaf % 2 == parity && p.start_leaf < p.end_leaf).map(|p| (p.start_leaf, p.end_leaf)).collect()
    };
    let r_matching = Matching::new(m, &pairs(1))?;
    let i_matching = Matching::new(m, &pairs(0))?;
    let basketball = basketball_admissible(&r_matching, &i_matching)
        .map_err(|e| Error::Inconsistent(format!("traced pair {r_matching} / {i_matching} is not admissible: {e:?}")))?;

    // vertex sites: critical points on a curve, then simple roots
    let mut vertices = Vec::new();
    for (j, s) in t.sites.iter().enumerate() {
        if !(s.on_r || s.on_i) {
            continue;
        }
        let rays = s.order + 1;
        for (curve, on) in [(Curve::R, s.on_r), (Curve::I, s.on_i)] {
            let visits: usize = paths
                .iter()
                .filter(|p| Curve::of_leaf(p.start_leaf) == curve)
                .map(|p| p.visited_vertices.iter().filter(|&&v| v == j).count())
                .sum();
            let want = if on { 2 * rays } else { 0 };
            if visits != want {
                return Err(Error::Inconsistent(format!(
                    "vertex at {} is crossed {visits} times by {curve:?} paths, expected {want}",
                    s.pos
                )));
            }
        }
        vertices.push(VertexSite {
            position: s.pos,
            m_r: if s.on_r { rays } else { 0 },
            m_i: if s.on_i { rays } else { 0 },
            is_root: s.on_r && s.on_i,
        });
    }
    let roots = all_roots(t.f, &t.cfg.roots)?;
    for c in roots.clusters.iter().filter(|c| c.multiplicity == 1) {
        vertices.push(VertexSite { position: c.center, m_r: 1, m_i: 1, is_root: true });
    }
    let mut seen: Vec<(usize, usize)> = vertices.iter().map(|v| (v.m_r, v.m_i)).collect();
    let mut want: Vec<(usize, usize)> = basketball.vertices().iter().map(|v| (v.m_r, v.m_i)).collect();
    seen.sort_unstable();
    want.sort_unstable();
    if seen != want {
        return Err(Error::Inconsistent(format!(
            "vertex sites {seen:?} disagree with the combinatorial vertices {want:?}"
        )));
    }
    let branches = paths.into_iter().filter(|p| p.start_leaf < p.end_leaf).collect();
    Ok(TraceResult { radius: t.r0, r_matching, i_matching, branches, vertices, basketball })
}

fn trace_all(f: &ComplexPoly, params: Option<&AxisParameters>, cfg: &TraceConfig) -> Result<TraceResult> {
    let t = Tracer::new(f, params, cfg)?;
    let paths: Vec<BranchPath> = (0..4 * t.n as u32).into_par_iter().map(|k| t.trace(k)).collect::<Result<_>>()?;
    assemble(&t, paths)
}

/// Trace both curves of a monic polynomial given in floating point.
pub fn basketball_of(f: &ComplexPoly, cfg: &TraceConfig) -> Result<TraceResult> {
    trace_all(f, None, cfg)
}

/// Trace a monic polynomial with Gaussian-rational coefficients, deciding
/// exactly which critical values lie on the axes.
pub fn basketball_of_exact(f: &ExactPoly, cfg: &TraceConfig) -> Result<TraceResult> {
    if f.is_zero() || !f.lc().re.is_integer() || f.lc().re != BigRational::from_integer(1.into()) || !f.lc().im.is_zero() {
        return Err(Error::Domain("polynomial must be monic".into()));
    }
    let params = exact_parameters(f)?;
    trace_all(&f.to_complex(), Some(&params), cfg)
}
