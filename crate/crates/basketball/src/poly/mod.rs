//! Univariate polynomials over a [`Field`], stored lowest degree first.

mod exact;
mod roots;

pub use exact::{
    axis_critical_parameters, disc_in_t, exact_roots, gcd, real_roots, refine_root, resultant, resultant_in_t,
    split_re_im, squarefree_decomposition,
    sturm_count, Axis, Interval,
};
pub use roots::{all_roots, critical_data, CriticalData, Precision, RootCluster, RootConfig, Roots};

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::{check_finite, Field, RationalComplex};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
}

pub type ComplexPoly = Poly<Complex64>;
pub type ExactPoly = Poly<RationalComplex>;
pub type RealUniPoly = Poly<BigRational>;

impl<F: Field> Poly<F> {
    /// From coefficients listed constant term first.
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// From coefficients listed leading term first.
    pub fn from_descending(mut coeffs: Vec<F>) -> Self {
        coeffs.reverse();
        Poly::new(coeffs)
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `z`.
    pub fn x() -> Self {
        Poly::new(vec![F::zero(), F::one()])
    }

    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k];
        v.push(c);
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.lc() == F::one()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lc();
        self.map(|c| c.clone() / l.clone())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn evaluate(&self, z: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v)
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::Degenerate("division by the zero polynomial".into()))?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let l = d.lc();
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() / l.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].clone() - c.clone() * dc.clone();
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    /// Substitute `z ↦ a·z` coefficientwise.
    pub fn dilate(&self, a: &F) -> Self {
        let mut p = F::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            v.push(c.clone() * p.clone());
            p = p * a.clone();
        }
        Poly::new(v)
    }
}

impl ComplexPoly {
    /// Rejects NaN and infinite coefficients.
    pub fn checked(coeffs_desc: Vec<Complex64>) -> Result<Self> {
        for c in &coeffs_desc {
            check_finite(*c)?;
        }
        Ok(Poly::from_descending(coeffs_desc))
    }

    /// Largest coefficient modulus, at least 1.
    pub fn scale_factor(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max)
    }

    /// Σ|c_k||z|^k: the natural size of `f(z)` for residual tests.
    pub fn magnitude_at(&self, r: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * r + c.norm();
        }
        acc
    }

    /// `f(z)` and `f'(z)` by Horner.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// Values of `f`, `f'` and `f''` at `z`.
    pub fn eval3(&self, z: Complex64) -> (Complex64, Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let (mut p, mut d1, mut d2) = (zero, zero, zero);
        for c in self.coeffs.iter().rev() {
            d2 = d2 * z + d1;
            d1 = d1 * z + p;
            p = p * z + c;
        }
        (p, d1, d2 * 2.0)
    }
}

impl ExactPoly {
    pub fn to_complex(&self) -> ComplexPoly {
        self.map(|c| c.to_c64())
    }
}

impl RealUniPoly {
    pub fn to_exact(&self) -> ExactPoly {
        self.map(|c| RationalComplex::real(c.clone()))
    }
}

impl<F: Field + fmt::Display> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        Ok(())
    }
}
