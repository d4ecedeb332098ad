//! Scalars: floating complex numbers and exact Gaussian rationals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient arithmetic needed by [`crate::poly::Poly`].
pub trait Field:
    Clone
    + fmt::Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(k: i64) -> Self;
}

impl Field for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_i64(k: i64) -> Self {
        Complex64::new(k as f64, 0.0)
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        <BigRational as Zero>::is_zero(self)
    }
    fn from_i64(k: i64) -> Self {
        BigRational::from_integer(BigInt::from(k))
    }
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // numerator or denominator beyond f64 range: scale down both
        let n = q.numer().bits() as i64;
        let d = q.denom().bits() as i64;
        let shift = (n.max(d) - 1000).max(0) as usize;
        let nn = (q.numer() >> shift).to_f64().unwrap_or(0.0);
        let dd = (q.denom() >> shift).to_f64().unwrap_or(1.0);
        nn / dd
    })
}

/// Exact conversion of a finite double to a rational.
pub fn f64_to_rat(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::NonFinite(format!("{x}")))
}

/// Gaussian rational `re + im·i`; `BigRational` keeps both parts in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl RationalComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        RationalComplex { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        RationalComplex::new(BigRational::from_i64(re), BigRational::from_i64(im))
    }

    pub fn real(re: BigRational) -> Self {
        RationalComplex::new(re, <BigRational as Zero>::zero())
    }

    pub fn i() -> Self {
        RationalComplex::from_ints(0, 1)
    }

    pub fn conj(&self) -> Self {
        RationalComplex::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    pub fn from_c64(z: Complex64) -> Result<Self> {
        Ok(RationalComplex::new(f64_to_rat(z.re)?, f64_to_rat(z.im)?))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = <Self as Field>::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }
}

impl fmt::Display for RationalComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if <BigRational as Zero>::is_zero(&self.im) {
            write!(f, "{}", self.re)
        } else if <BigRational as Zero>::is_zero(&self.re) {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for RationalComplex {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        RationalComplex::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for RationalComplex {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        RationalComplex::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for RationalComplex {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        RationalComplex::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Div for RationalComplex {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let d = o.norm_sqr();
        let num = self * o.conj();
        RationalComplex::new(num.re / &d, num.im / d)
    }
}

impl Neg for RationalComplex {
    type Output = Self;
    fn neg(self) -> Self {
        RationalComplex::new(-self.re, -self.im)
    }
}

impl Field for RationalComplex {
    fn zero() -> Self {
        RationalComplex::from_ints(0, 0)
    }
    fn one() -> Self {
        RationalComplex::from_ints(1, 0)
    }
    fn is_zero(&self) -> bool {
        <BigRational as Zero>::is_zero(&self.re) && <BigRational as Zero>::is_zero(&self.im)
    }
    fn from_i64(k: i64) -> Self {
        RationalComplex::from_ints(k, 0)
    }
}

pub fn check_finite(z: Complex64) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(format!("{z}")))
    }
}

// Error-free transformations for compensated evaluation.

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Double-double real: value `hi + lo`.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }
    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = two_sum(s, e);
        Dd { hi, lo }
    }
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = two_sum(p, e);
        Dd { hi, lo }
    }
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// Complex double-double.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub fn from(z: Complex64) -> CDd {
        CDd { re: Dd::from(z.re), im: Dd::from(z.im) }
    }
    pub fn add(self, o: CDd) -> CDd {
        CDd { re: self.re.add(o.re), im: self.im.add(o.im) }
    }
    pub fn mul(self, o: CDd) -> CDd {
        CDd {
            re: self.re.mul(o.re).add(self.im.mul(o.im).neg()),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }
    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_rational_arithmetic() {
        let a = RationalComplex::from_ints(1, -1);
        let b = RationalComplex::from_ints(2, 3);
        let q = a.clone() / b.clone();
        assert_eq!(q * b, a);
        assert_eq!(RationalComplex::i().pow(2), RationalComplex::from_ints(-1, 0));
    }

    #[test]
    fn lowest_terms() {
        let z = RationalComplex::new(rat(2, 4), rat(-6, 3));
        assert_eq!(z.re, rat(1, 2));
        assert_eq!(z.im, rat(-2, 1));
    }

    #[test]
    fn double_double_product_keeps_low_bits() {
        let x = Dd::from(1.0 + f64::EPSILON);
        let sq = x.mul(x);
        assert_eq!(sq.hi, 1.0 + 2.0 * f64::EPSILON);
        assert_eq!(sq.lo, f64::EPSILON * f64::EPSILON);
    }

    #[test]
    fn rejects_nan() {
        assert!(check_finite(Complex64::new(f64::NAN, 0.0)).is_err());
        assert!(f64_to_rat(f64::INFINITY).is_err());
    }
}
