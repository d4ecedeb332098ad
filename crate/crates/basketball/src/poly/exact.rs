//! Exact elimination over ℚ and ℚ(i): gcd, resultants, discriminants in a
//! sliding parameter, square-free parts and Sturm real-root isolation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::roots::{aberth, polish, RootCluster, RootConfig, Roots};
use super::{ExactPoly, Poly, RealUniPoly};
use crate::error::{Error, Result};
use crate::scalar::{Field, RationalComplex};

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.div_rem(&b).expect("nonzero divisor").1;
        a = b;
        b = r;
    }
    a.monic()
}

fn pow<F: Field>(x: &F, k: usize) -> F {
    let mut acc = F::one();
    for _ in 0..k {
        acc = acc * x.clone();
    }
    acc
}

/// Resultant with the conventions `res(p, c) = c^{deg p}` for a constant `c`
/// and `res(0, q) = 0` for non-constant `q`.
pub fn resultant<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<F> {
    match (a.degree(), b.degree()) {
        (None, None) => Err(Error::Degenerate("resultant of two zero polynomials".into())),
        (None, Some(0)) | (Some(0), None) => Ok(F::one()),
        (None, Some(_)) | (Some(_), None) => Ok(F::zero()),
        (Some(da), Some(0)) => Ok(pow(&b.lc(), da)),
        (Some(0), Some(db)) => Ok(pow(&a.lc(), db)),
        (Some(da), Some(db)) if da < db => {
            let r = resultant(b, a)?;
            Ok(if (da * db) % 2 == 1 { -r } else { r })
        }
        (Some(da), Some(db)) => {
            let r = a.div_rem(b)?.1;
            let Some(dr) = r.degree() else {
                return Ok(F::zero());
            };
            let inner = resultant(b, &r)?;
            let v = pow(&b.lc(), da - dr) * inner;
            Ok(if (da * db) % 2 == 1 { -v } else { v })
        }
    }
}

pub fn resultant_in_t(p: &RealUniPoly, q: &RealUniPoly) -> Result<BigRational> {
    resultant(p, q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    /// `ε = i`: singularities of the real component.
    Imaginary,
    /// `ε = 1`: singularities of the imaginary component.
    Real,
}

impl Axis {
    fn epsilon(self) -> RationalComplex {
        match self {
            Axis::Imaginary => RationalComplex::i(),
            Axis::Real => RationalComplex::from_ints(1, 0),
        }
    }
}

/// `Disc_z(f(z) − εt)` as a polynomial in `t`, made monic. Computed as the
/// resultant of `f − εt` and `f'` at `n` integer values of `t`, then interpolated.
pub fn disc_in_t(f: &ExactPoly, axis: Axis) -> Result<ExactPoly> {
    let n = f
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::Degenerate("discriminant needs degree at least 1".into()))?;
    let fp = f.derivative();
    let eps = axis.epsilon();
    let ts: Vec<RationalComplex> = (0..n as i64).map(RationalComplex::from_i64).collect();
    let mut values = Vec::with_capacity(n);
    for t in &ts {
        let g = f.sub(&ExactPoly::constant(eps.clone() * t.clone()));
        values.push(resultant(&g, &fp)?);
    }
    let mut p = ExactPoly::zero();
    for (j, tj) in ts.iter().enumerate() {
        let mut basis = ExactPoly::constant(values[j].clone());
        for (k, tk) in ts.iter().enumerate() {
            if k != j {
                let lin = ExactPoly::new(vec![-tk.clone(), RationalComplex::from_i64(1)]);
                basis = basis.mul(&lin).scale(&(RationalComplex::from_i64(1) / (tj.clone() - tk.clone())));
            }
        }
        p = p.add(&basis);
    }
    if p.is_zero() {
        return Err(Error::Degenerate("vanishing discriminant polynomial".into()));
    }
    Ok(p.monic())
}

/// Real and imaginary parts of a polynomial with Gaussian-rational coefficients,
/// for real values of the variable.
pub fn split_re_im(p: &ExactPoly) -> (RealUniPoly, RealUniPoly) {
    (p.map(|c| c.re.clone()), p.map(|c| c.im.clone()))
}

/// Yun's algorithm: monic square-free factors paired with their multiplicity.
pub fn squarefree_decomposition<F: Field>(f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let f = f.monic();
    let fp = f.derivative();
    let c = gcd(&f, &fp);
    let mut w = f.div_rem(&c).expect("gcd nonzero").0;
    let mut y = fp.div_rem(&c).expect("gcd nonzero").0;
    let mut z = y.sub(&w.derivative());
    let mut i = 1;
    while w.deg() > 0 {
        let g = gcd(&w, &z);
        if g.deg() > 0 {
            out.push((g.clone(), i));
        }
        w = w.div_rem(&g).expect("nonzero").0;
        y = z.div_rem(&g).expect("nonzero").0;
        z = y.sub(&w.derivative());
        i += 1;
    }
    out
}

/// Roots of an exact polynomial with exact multiplicities: each square-free
/// factor is solved numerically and its simple roots polished.
pub fn exact_roots(f: &ExactPoly, cfg: &RootConfig) -> Result<Roots> {
    if f.deg() == 0 {
        return Err(Error::Degenerate("root finding needs degree at least 1".into()));
    }
    let mut clusters = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        let gc = g.to_complex();
        for z in aberth(&gc, cfg)? {
            clusters.push(RootCluster { center: polish(&gc, z), multiplicity: m });
        }
    }
    clusters.sort_by(|a, b| {
        a.center
            .re
            .total_cmp(&b.center.re)
            .then(a.center.im.total_cmp(&b.center.im))
    });
    Ok(Roots::from_clusters(clusters))
}

/// Closed isolating interval `[lo, hi]` holding exactly one distinct real root.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

fn sturm_sequence(p: &RealUniPoly) -> Vec<RealUniPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let k = seq.len();
        if seq[k - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[k - 2].div_rem(&seq[k - 1]).expect("nonzero").1;
        if r.is_zero() {
            break;
        }
        seq.push(r.scale(&BigRational::from_i64(-1)));
    }
    seq
}

fn variations(seq: &[RealUniPoly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let v = p.evaluate(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots in `(a, b]`.
pub fn sturm_count(p: &RealUniPoly, a: &BigRational, b: &BigRational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::Degenerate("Sturm count of the zero polynomial".into()));
    }
    let seq = sturm_sequence(p);
    Ok(variations(&seq, a).saturating_sub(variations(&seq, b)))
}

/// Isolating intervals for the distinct real roots, in increasing order.
pub fn real_roots(p: &RealUniPoly) -> Result<Vec<Interval>> {
    if p.is_zero() {
        return Err(Error::Degenerate("real roots of the zero polynomial".into()));
    }
    if p.deg() == 0 {
        return Ok(vec![]);
    }
    let sf = p.div_rem(&gcd(p, &p.derivative()))?.0;
    let seq = sturm_sequence(&sf);
    let lc = sf.lc();
    let mut bound = BigRational::from_i64(1);
    for c in &sf.coeffs()[..sf.deg()] {
        let q = (c / &lc).abs() + BigRational::from_i64(1);
        if q > bound {
            bound = q;
        }
    }
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    let two = BigRational::from_integer(BigInt::from(2));
    while let Some((a, b)) = stack.pop() {
        let k = variations(&seq, &a).saturating_sub(variations(&seq, &b));
        if k == 0 {
            continue;
        }
        if k == 1 {
            out.push(Interval { lo: a, hi: b });
            continue;
        }
        let m = (&a + &b) / &two;
        stack.push((m.clone(), b));
        stack.push((a, m));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    for iv in &mut out {
        if Zero::is_zero(&sf.evaluate(&iv.hi)) {
            iv.lo = iv.hi.clone();
        }
    }
    Ok(out)
}

/// Shrink an isolating interval of a root of `p` below `width` by bisection.
pub fn refine_root(p: &RealUniPoly, iv: &Interval, width: &BigRational) -> Result<Interval> {
    let sf = p.div_rem(&gcd(p, &p.derivative()))?.0;
    let seq = sturm_sequence(&sf);
    let two = BigRational::from_integer(BigInt::from(2));
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        if Zero::is_zero(&sf.evaluate(&mid)) {
            return Ok(Interval { lo: mid.clone(), hi: mid });
        }
        if variations(&seq, &lo).saturating_sub(variations(&seq, &mid)) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Interval { lo, hi })
}

/// Real `t` for which `f − εt` has a multiple root, i.e. the critical values of `f`
/// on the axis `ε·ℝ`, as isolating intervals. These are the common real roots of
/// the real and imaginary parts of `disc_in_t(f, axis)`.
pub fn axis_critical_parameters(f: &ExactPoly, axis: Axis) -> Result<(RealUniPoly, Vec<Interval>)> {
    let p = disc_in_t(f, axis)?;
    let (a, b) = split_re_im(&p);
    let g = if b.is_zero() { a } else { gcd(&a, &b) };
    if g.deg() == 0 {
        return Ok((g, Vec::new()));
    }
    let roots = real_roots(&g)?;
    Ok((g, roots))
}
