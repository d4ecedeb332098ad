//! Cells of the plane of translates `f − α`: the basketball changes only when
//! `Re α` or `Im α` crosses the corresponding part of a critical value.

use num_complex::Complex64;

use crate::enumeration::CellEnumerator;
use crate::error::{Error, Result};
use crate::poly::{critical_data, ComplexPoly, RootConfig};
use crate::tracer::Curve;

/// Position along one axis: on the `j`-th cut, or in the gap before it
/// (`Gap(0)` is below every cut, `Gap(len)` above).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Span {
    Cut(usize),
    Gap(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridCell {
    pub dim: usize,
    pub a: Span,
    pub b: Span,
    /// A value of `α` inside the cell.
    pub representative: Complex64,
}

impl GridCell {
    /// `f − α` at the cell's representative.
    pub fn polynomial(&self, f: &ComplexPoly) -> ComplexPoly {
        f.sub(&ComplexPoly::constant(self.representative))
    }
}

#[derive(Clone, Debug)]
pub struct GridDecomposition {
    /// Number of distinct real parts of critical values.
    pub l: usize,
    /// Number of distinct imaginary parts.
    pub m: usize,
    pub a_cuts: Vec<f64>,
    pub b_cuts: Vec<f64>,
    pub cells: Vec<GridCell>,
    /// Counted from `cells`.
    pub enumerator: CellEnumerator,
}

/// `mℓ + (2mℓ+m+ℓ)x + (mℓ+m+ℓ+1)x²`.
pub fn grid_formula(l: usize, m: usize) -> CellEnumerator {
    let (l, m) = (l as u64, m as u64);
    CellEnumerator::from_counts(&[m * l, 2 * m * l + m + l, m * l + m + l + 1])
}

fn spans(cuts: &[f64]) -> Vec<(Span, f64)> {
    let mut out = Vec::with_capacity(2 * cuts.len() + 1);
    for j in 0..=cuts.len() {
        let mid = match (j.checked_sub(1).map(|k| cuts[k]), cuts.get(j)) {
            (None, None) => 0.0,
            (None, Some(&hi)) => hi - 1.0,
            (Some(lo), None) => lo + 1.0,
            (Some(lo), Some(&hi)) => 0.5 * (lo + hi),
        };
        out.push((Span::Gap(j), mid));
        if let Some(&c) = cuts.get(j) {
            out.push((Span::Cut(j), c));
        }
    }
    out
}

/// Cuts at the distinct real and imaginary parts of the critical values of `f`
/// (merged within `cluster_tol` relatively), and the resulting cells.
pub fn critical_grid(f: &ComplexPoly, cluster_tol: f64) -> Result<GridDecomposition> {
    if f.deg() < 2 {
        return Err(Error::Domain("the grid needs degree at least 2".into()));
    }
    let cd = critical_data(f, cluster_tol, &RootConfig::default())?;
    let (a_cuts, b_cuts) = (cd.distinct_re, cd.distinct_im);
    let mut cells = Vec::new();
    let mut counts = [0u64; 3];
    for &(sa, x) in &spans(&a_cuts) {
        for &(sb, y) in &spans(&b_cuts) {
            let dim = matches!(sa, Span::Gap(_)) as usize + matches!(sb, Span::Gap(_)) as usize;
            counts[dim] += 1;
            cells.push(GridCell { dim, a: sa, b: sb, representative: Complex64::new(x, y) });
        }
    }
    Ok(GridDecomposition {
        l: a_cuts.len(),
        m: b_cuts.len(),
        a_cuts,
        b_cuts,
        cells,
        enumerator: CellEnumerator::from_counts(&counts),
    })
}

fn value_scale(values: &[Complex64]) -> f64 {
    values.iter().map(|v| v.norm()).fold(1.0, f64::max)
}

/// `R(f)` (resp. `I(f)`) is connected exactly when every critical value of `f`
/// has zero real (resp. imaginary) part.
pub fn is_tree_component(f: &ComplexPoly, component: Curve, tol: f64) -> Result<bool> {
    let cd = critical_data(f, tol, &RootConfig::default())?;
    let scale = value_scale(&cd.cluster_values);
    Ok(cd.cluster_values.iter().all(|v| {
        let part = match component {
            Curve::R => v.re,
            Curve::I => v.im,
        };
        part.abs() <= tol * scale
    }))
}

/// Whether `f` has exactly two distinct critical values, and those values.
pub fn shabat_check(f: &ComplexPoly, tol: f64) -> Result<(bool, Vec<Complex64>)> {
    if f.deg() < 2 {
        return Err(Error::Domain("a Shabat polynomial has degree at least 2".into()));
    }
    let cd = critical_data(f, tol, &RootConfig::default())?;
    let scale = value_scale(&cd.cluster_values);
    let mut distinct: Vec<Complex64> = Vec::new();
    for v in cd.cluster_values {
        if !distinct.iter().any(|u| (u - v).norm() <= tol * scale) {
            distinct.push(v);
        }
    }
    distinct.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok((distinct.len() == 2, distinct))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cube_plus_six_iz() {
        let f = ComplexPoly::from_descending(vec![c(1., 0.), c(0., 0.), c(0., 6.), c(0., 0.)]);
        let g = critical_grid(&f, 1e-9).unwrap();
        assert_eq!((g.l, g.m), (2, 2));
        assert_eq!(g.enumerator.to_u64(), vec![4, 12, 9]);
        assert_eq!(g.enumerator, grid_formula(2, 2));
        assert!((g.a_cuts[0] + 4.0).abs() < 1e-12 && (g.b_cuts[1] - 4.0).abs() < 1e-12);
        assert!(!is_tree_component(&f, Curve::R, 1e-9).unwrap());
        let (two, vals) = shabat_check(&f, 1e-9).unwrap();
        assert!(two);
        assert!((vals[0] - c(-4., -4.)).norm() < 1e-12);
    }

    #[test]
    fn square() {
        let f = ComplexPoly::from_descending(vec![c(1., 0.), c(0., 0.), c(0., 0.)]);
        let g = critical_grid(&f, 1e-9).unwrap();
        assert_eq!(g.enumerator.to_u64(), vec![1, 4, 4]);
        assert_eq!(g.cells.iter().filter(|x| x.dim == 2).count(), 4);
        assert!(is_tree_component(&f, Curve::R, 1e-9).unwrap());
        assert!(is_tree_component(&f, Curve::I, 1e-9).unwrap());
        assert!(!shabat_check(&f, 1e-9).unwrap().0);
    }

    #[test]
    fn representatives_avoid_the_cuts() {
        let f = ComplexPoly::from_descending(vec![c(1., 0.), c(0.5, 1.), c(-2., 0.), c(0., 3.), c(1., 1.)]);
        let g = critical_grid(&f, 1e-9).unwrap();
        assert_eq!(g.enumerator, grid_formula(g.l, g.m));
        for cell in g.cells.iter().filter(|x| x.dim == 2) {
            assert!(g.a_cuts.iter().all(|a| (a - cell.representative.re).abs() > 1e-6));
            assert!(g.b_cuts.iter().all(|b| (b - cell.representative.im).abs() > 1e-6));
        }
    }
}
