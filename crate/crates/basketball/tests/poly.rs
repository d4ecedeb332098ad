use basketball::poly::{
    all_roots, disc_in_t, gcd, resultant_in_t, split_re_im, Axis, ComplexPoly, ExactPoly, RealUniPoly, RootConfig,
};
use basketball::scalar::RationalComplex;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn gaussian() -> impl Strategy<Value = RationalComplex> {
    (rational(), rational()).prop_map(|(a, b)| RationalComplex::new(a, b))
}

fn real_poly(max_deg: usize) -> impl Strategy<Value = RealUniPoly> {
    prop::collection::vec(rational(), 1..=max_deg + 1).prop_map(RealUniPoly::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn derivative_evaluates_termwise(cs in prop::collection::vec(gaussian(), 1..8), z in gaussian()) {
        let f = ExactPoly::new(cs.clone());
        let mut want = RationalComplex::from_ints(0, 0);
        for (k, c) in cs.iter().enumerate().skip(1) {
            want = want + RationalComplex::from_ints(k as i64, 0) * c.clone() * z.pow(k as u32 - 1);
        }
        prop_assert_eq!(f.derivative().evaluate(&z), want);
    }

    #[test]
    fn resultant_vanishes_with_a_common_factor(a in real_poly(3), b in real_poly(3), c in real_poly(2), plant in any::<bool>()) {
        prop_assume!(a.deg() >= 1 && b.deg() >= 1);
        let (a, b) = if plant && c.deg() >= 1 { (a.mul(&c), b.mul(&c)) } else { (a, b) };
        let r = resultant_in_t(&a, &b).unwrap();
        prop_assert_eq!(r.is_zero(), gcd(&a, &b).deg() >= 1);
        if plant && c.deg() >= 1 {
            prop_assert!(r.is_zero());
        }
    }

    #[test]
    fn roots_reexpand(cs in prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 1..8)) {
        let mut coeffs: Vec<Complex64> = cs.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
        coeffs.push(Complex64::new(1.0, 0.0));
        let f = ComplexPoly::new(coeffs);
        let roots = all_roots(&f, &RootConfig::default()).unwrap();
        prop_assert_eq!(roots.roots.len(), f.deg());
        let mut g = ComplexPoly::constant(Complex64::new(1.0, 0.0));
        for r in &roots.roots {
            g = g.mul(&ComplexPoly::new(vec![-r, Complex64::new(1.0, 0.0)]));
        }
        let scale = f.coeffs().iter().map(|c| c.norm()).fold(1.0, f64::max);
        for k in 0..=f.deg() {
            prop_assert!((f.coeff(k) - g.coeff(k)).norm() <= 1e-8 * scale.powi(f.deg() as i32));
        }
    }

    /// `f − εt₀` with a planted double root: the discriminant in `t` vanishes at `t₀`.
    #[test]
    fn planted_double_roots(s in gaussian(), rest in prop::collection::vec(gaussian(), 0..3), t0 in rational(), imaginary in any::<bool>()) {
        let one = RationalComplex::from_ints(1, 0);
        let mut g = ExactPoly::new(vec![-s.clone(), one.clone()]);
        g = g.mul(&g);
        for r in &rest {
            g = g.mul(&ExactPoly::new(vec![-r.clone(), one.clone()]));
        }
        let (axis, eps) = if imaginary { (Axis::Imaginary, RationalComplex::i()) } else { (Axis::Real, one) };
        let f = g.add(&ExactPoly::constant(eps * RationalComplex::real(t0.clone())));
        let d = disc_in_t(&f, axis).unwrap();
        prop_assert!(d.evaluate(&RationalComplex::real(t0.clone())) == RationalComplex::from_ints(0, 0));
        let (re, im) = split_re_im(&d);
        prop_assert!(re.evaluate(&t0).is_zero() && im.evaluate(&t0).is_zero());
    }
}
