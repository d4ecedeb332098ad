//! Exact and semi-exact classification of polynomials into cells: singularity
//! verdicts by elimination, the cubic discriminants, the full cell structure of
//! centred cubics, the critical-value grid of `f − α`, and the family `Qₙ`.

mod classify3;
mod grid;
mod qn;

pub use classify3::{
    classify3, classify3_consistency, cubic_from_params, orbit_cells_census, random_params, stratified_params,
    Case3, CellDescriptor3, ConsistencyReport, Disagreement, Params3, Position,
};
pub use grid::{critical_grid, grid_formula, is_tree_component, shabat_check, GridCell, GridDecomposition, Span};
pub use qn::{qn_critical_values, qn_critical_values_check, qn_self_intersection, qn_stratum, QnLocus};

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::forest::DihedralElement;
use crate::poly::{disc_in_t, gcd, real_roots, resultant, resultant_in_t, split_re_im, Axis, ComplexPoly, ExactPoly, Interval, RealUniPoly};
use crate::tracer::Curve;

#[derive(Clone, Debug, PartialEq)]
pub struct SingularityVerdict {
    pub component: Curve,
    /// Resultant of the real and imaginary parts of `Disc_z(f − εt)`.
    pub resultant_value: BigRational,
    pub has_real_witness: bool,
    /// Isolating intervals for the real `t` with `f − εt` having a multiple root.
    pub witness_intervals: Vec<Interval>,
}

impl SingularityVerdict {
    pub fn resultant_zero(&self) -> bool {
        self.resultant_value.is_zero()
    }
}

fn axis_of(component: Curve) -> Axis {
    match component {
        Curve::R => Axis::Imaginary,
        Curve::I => Axis::Real,
    }
}

/// Whether `R(f)` (resp. `I(f)`) is singular, decided by elimination.
///
/// A vanishing resultant only says that `Disc_z(f − εt)` has a common complex
/// root in its real and imaginary parts; a real one is certified by isolating
/// the real roots of their gcd.
pub fn singularity_verdict(f: &ExactPoly, component: Curve) -> Result<SingularityVerdict> {
    let none = |value: BigRational| SingularityVerdict {
        component,
        resultant_value: value,
        has_real_witness: false,
        witness_intervals: Vec::new(),
    };
    if f.deg() < 2 {
        return Ok(none(BigRational::one()));
    }
    let p = disc_in_t(f, axis_of(component))?;
    let (re, im) = split_re_im(&p);
    let (value, common) = if im.is_zero() {
        (BigRational::zero(), re)
    } else {
        let v = resultant_in_t(&re, &im)?;
        if !v.is_zero() {
            return Ok(none(v));
        }
        (v, gcd(&re, &im))
    };
    let witness_intervals = if common.deg() == 0 { Vec::new() } else { real_roots(&common)? };
    Ok(SingularityVerdict {
        component,
        resultant_value: value,
        has_real_witness: !witness_intervals.is_empty(),
        witness_intervals,
    })
}

fn cube(x: &BigRational) -> BigRational {
    x * x * x
}

/// `(2c² − a(a²−3b²))² − (a²+b²)³`, vanishing exactly when some critical value
/// of `z³ − 3(a+bi)z + 2c` is purely imaginary (or on a real codimension-two set).
pub fn delta3(a: &BigRational, b: &BigRational, c: &BigRational) -> BigRational {
    let two = BigRational::from_integer(2.into());
    let three = BigRational::from_integer(3.into());
    let p = a * (a * a - three * b * b);
    let t = two * c * c - p;
    &t * &t - cube(&(a * a + b * b))
}

/// `(2d² + a(a²−3b²))² − (a²+b²)³`, the counterpart of [`delta3`] for `I`.
pub fn delta3_prime(a: &BigRational, b: &BigRational, d: &BigRational) -> BigRational {
    let two = BigRational::from_integer(2.into());
    let three = BigRational::from_integer(3.into());
    let p = a * (a * a - three * b * b);
    let t = two * d * d + p;
    &t * &t - cube(&(a * a + b * b))
}

pub fn delta3_cylindrical(r: f64, theta: f64, c: f64) -> f64 {
    let r3 = r * r * r;
    let h = 1.5 * theta;
    4.0 * (c * c - r3 * h.cos().powi(2)) * (c * c + r3 * h.sin().powi(2))
}

pub fn delta3_prime_cylindrical(r: f64, theta: f64, d: f64) -> f64 {
    let r3 = r * r * r;
    let h = 1.5 * theta;
    4.0 * (d * d + r3 * h.cos().powi(2)) * (d * d - r3 * h.sin().powi(2))
}

fn delta3_f64(a: f64, b: f64, c: f64) -> f64 {
    (2.0 * c * c - a * (a * a - 3.0 * b * b)).powi(2) - (a * a + b * b).powi(3)
}

fn delta3_prime_f64(a: f64, b: f64, d: f64) -> f64 {
    (2.0 * d * d + a * (a * a - 3.0 * b * b)).powi(2) - (a * a + b * b).powi(3)
}

/// Random `(r, θ, c, d)` with `r ∈ (0, 2]`, `θ ∈ [0, 4π)` and `c, d ∈ [−3, 3]`.
pub fn cylindrical_samples(count: usize, seed: u64) -> Vec<[f64; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = 2.0 - rng.gen_range(0.0..2.0);
            [r, rng.gen_range(0.0..4.0 * PI), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)]
        })
        .collect()
}

/// Cartesian and cylindrical forms of `Δ₃` and `Δ'₃` agree to `1e−10` relative
/// at every sample `(r, θ, c, d)`.
pub fn cylindrical_identity_check(samples: &[[f64; 4]]) -> bool {
    samples.iter().all(|&[r, theta, c, d]| {
        let (a, b) = (r * theta.cos(), r * theta.sin());
        let scale_c = (c * c + r.powi(3)).powi(2).max(1.0);
        let scale_d = (d * d + r.powi(3)).powi(2).max(1.0);
        (delta3_f64(a, b, c) - delta3_cylindrical(r, theta, c)).abs() <= 1e-10 * scale_c
            && (delta3_prime_f64(a, b, d) - delta3_prime_cylindrical(r, theta, d)).abs() <= 1e-10 * scale_d
    })
}

/// Discriminant of `Δ₃(a, b, ·)` as a quartic in `c`, computed as `Res(g, g')/lc(g)`.
pub fn delta3_c_discriminant(a: &BigRational, b: &BigRational) -> Result<BigRational> {
    let coeffs: Vec<BigRational> = (0..5)
        .map(|k| BigRational::from_integer(k.into()))
        .map(|c| delta3(a, b, &c))
        .collect();
    let g = interpolate_integer_nodes(&coeffs);
    let lc = g.lc();
    Ok(resultant(&g, &g.derivative())? / lc)
}

fn interpolate_integer_nodes(values: &[BigRational]) -> RealUniPoly {
    let mut p = RealUniPoly::zero();
    for (j, vj) in values.iter().enumerate() {
        let mut basis = RealUniPoly::constant(vj.clone());
        for k in 0..values.len() {
            if k != j {
                let tk = BigRational::from_integer((k as i64).into());
                let lin = RealUniPoly::new(vec![-tk, BigRational::one()]);
                let denom = BigRational::from_integer((j as i64 - k as i64).into());
                basis = basis.mul(&lin).scale(&(BigRational::one() / denom));
            }
        }
        p = p.add(&basis);
    }
    p
}

/// The polynomial image of `f` under a dihedral element: reflection
/// `f ↦ conj f(conj z)` first, then `ρ` times `f ↦ i f(e^{−iπ/2n} z)`. The
/// leaves are relabelled by `k ↦ ±k + ρ`.
pub fn act_on_poly(f: &ComplexPoly, g: &DihedralElement) -> ComplexPoly {
    let n = f.deg().max(1);
    let mut h = if g.flip { f.map(|c| c.conj()) } else { f.clone() };
    let rot = Complex64::from_polar(1.0, -PI / (2 * n) as f64);
    for _ in 0..g.rotation {
        h = h.dilate(&rot).scale(&Complex64::new(0.0, 1.0));
    }
    h
}
