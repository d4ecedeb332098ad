//! Cells of the centred cubics `z³ − 3(a+bi)z + 2(c+di)`.
//!
//! With `w² = a+bi` and `s = c+di` the critical values are `v± = 2(s ± w³)`,
//! and the cell is read off from where the pair `{v₊, v₋}` sits relative to the
//! axes. `w³` is never extracted: writing `(a+bi)³ = p+qi`, its coordinates
//! `X ≥ 0` and `Y` satisfy `X² − Y² = p`, `2XY = q`, so every comparison
//! `c ≶ ±X` or `d ≶ ±Y` reduces to the sign of an even quartic at `c` or `d`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{act_on_poly, singularity_verdict};
use crate::error::Result;
use crate::forest::{basketball_admissible, Basketball, DihedralElement, Matching};
use crate::poly::ExactPoly;
use crate::scalar::{rat, RationalComplex};
use crate::tracer::{basketball_of, basketball_of_exact, Curve, TraceConfig, TraceResult};

/// `(a, b, c, d)`.
pub type Params3 = [BigRational; 4];

/// Lower-case labels are the singular cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Case3 {
    A1,
    A2,
    B,
    LowerA1,
    LowerA2,
    LowerB1,
    LowerB2,
    LowerB3,
    LowerC1,
    LowerC2,
    LowerC3,
    LowerC4,
}

impl Case3 {
    pub const ALL: [Case3; 12] = [
        Case3::A1,
        Case3::A2,
        Case3::B,
        Case3::LowerA1,
        Case3::LowerA2,
        Case3::LowerB1,
        Case3::LowerB2,
        Case3::LowerB3,
        Case3::LowerC1,
        Case3::LowerC2,
        Case3::LowerC3,
        Case3::LowerC4,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Case3::A1 => "A.1",
            Case3::A2 => "A.2",
            Case3::B => "B",
            Case3::LowerA1 => "a.1",
            Case3::LowerA2 => "a.2",
            Case3::LowerB1 => "b.1",
            Case3::LowerB2 => "b.2",
            Case3::LowerB3 => "b.3",
            Case3::LowerC1 => "c.1",
            Case3::LowerC2 => "c.2",
            Case3::LowerC3 => "c.3",
            Case3::LowerC4 => "c.4",
        }
    }

    pub fn from_label(s: &str) -> Option<Case3> {
        Case3::ALL.into_iter().find(|c| c.label() == s)
    }

    pub fn degree(self) -> i64 {
        match self {
            Case3::A1 | Case3::A2 | Case3::B => 4,
            Case3::LowerA1 => 0,
            Case3::LowerA2 | Case3::LowerB1 => 1,
            Case3::LowerB2 | Case3::LowerB3 | Case3::LowerC2 | Case3::LowerC4 => 2,
            Case3::LowerC1 | Case3::LowerC3 => 3,
        }
    }

    /// Number of cells in the orbit under the dihedral group of order 24.
    pub fn orbit_length(self) -> usize {
        match self {
            Case3::LowerA1 => 1,
            Case3::A1 | Case3::LowerA2 => 4,
            Case3::B | Case3::LowerB3 => 6,
            Case3::A2 | Case3::LowerB1 | Case3::LowerB2 | Case3::LowerC2 | Case3::LowerC4 => 12,
            Case3::LowerC1 | Case3::LowerC3 => 24,
        }
    }

    /// `(a, b, c, d)` of the representative cubic.
    pub fn representative(self) -> Params3 {
        let q = |a: i64, b: i64, c: (i64, i64), d: (i64, i64)| [rat(a, 1), rat(b, 1), rat(c.0, c.1), rat(d.0, d.1)];
        match self {
            // z³ + 1 − i
            Case3::A1 => q(0, 0, (1, 2), (-1, 2)),
            // z³ − (9+12i)z + 6
            Case3::A2 => q(3, 4, (3, 1), (0, 1)),
            // z³ − 3(1+i)z
            Case3::B => q(1, 1, (0, 1), (0, 1)),
            Case3::LowerA1 => q(0, 0, (0, 1), (0, 1)),
            // z³ − 2i
            Case3::LowerA2 => q(0, 0, (0, 1), (-1, 1)),
            // z³ + 3z − 2i, z³ + 3z − 4i, z³ + 3z − i
            Case3::LowerB1 => q(-1, 0, (0, 1), (-1, 1)),
            Case3::LowerB2 => q(-1, 0, (0, 1), (-2, 1)),
            Case3::LowerB3 => q(-1, 0, (0, 1), (-1, 2)),
            // z³ − (9+12i)z + 2(2+11i) + 2di with d = −23, −22, −11, 0
            Case3::LowerC1 => q(3, 4, (2, 1), (-12, 1)),
            Case3::LowerC2 => q(3, 4, (2, 1), (-11, 1)),
            Case3::LowerC3 => q(3, 4, (2, 1), (0, 1)),
            Case3::LowerC4 => q(3, 4, (2, 1), (11, 1)),
        }
    }

    /// `R` and `I` of the representative.
    pub fn canonical_matchings(self) -> (Matching, Matching) {
        let diam_r = [(1, 7), (3, 9), (5, 11)];
        let nested_r = [(1, 3), (5, 7), (9, 11)];
        let b_r = [(1, 5), (3, 9), (7, 11)];
        let c_r = [(1, 9), (3, 11), (5, 7)];
        let (r, i): (&[(u32, u32)], &[(u32, u32)]) = match self {
            Case3::A1 => (&nested_r, &[(0, 2), (4, 6), (8, 10)]),
            Case3::A2 => (&nested_r, &[(0, 2), (4, 10), (6, 8)]),
            Case3::B => (&[(1, 11), (3, 9), (5, 7)], &[(0, 2), (4, 10), (6, 8)]),
            Case3::LowerA1 => (&diam_r, &[(0, 6), (2, 8), (4, 10)]),
            Case3::LowerA2 => (&diam_r, &[(0, 2), (4, 6), (8, 10)]),
            Case3::LowerB1 => (&b_r, &[(0, 4), (2, 6), (8, 10)]),
            Case3::LowerB2 => (&b_r, &[(0, 2), (4, 6), (8, 10)]),
            Case3::LowerB3 => (&b_r, &[(0, 6), (2, 4), (8, 10)]),
            Case3::LowerC1 => (&c_r, &[(0, 2), (4, 6), (8, 10)]),
            Case3::LowerC2 => (&c_r, &[(0, 2), (4, 8), (6, 10)]),
            Case3::LowerC3 => (&c_r, &[(0, 2), (4, 10), (6, 8)]),
            Case3::LowerC4 => (&c_r, &[(0, 4), (2, 10), (6, 8)]),
        };
        let m = |p: &[(u32, u32)]| Matching::new(12, p).expect("static matching");
        (m(r), m(i))
    }

    pub fn canonical_basketball(self) -> Basketball {
        let (r, i) = self.canonical_matchings();
        basketball_admissible(&r, &i).expect("canonical basketballs are admissible")
    }
}

impl fmt::Display for Case3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Where a critical value sits: the origin, an open half-axis (`0` positive
/// real, then counterclockwise) or an open quadrant (`0` the first, then
/// counterclockwise).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Position {
    Origin,
    HalfAxis(u8),
    Quadrant(u8),
}

impl Position {
    fn from_signs(re: Ordering, im: Ordering) -> Position {
        use Ordering::*;
        match (re, im) {
            (Equal, Equal) => Position::Origin,
            (Greater, Equal) => Position::HalfAxis(0),
            (Equal, Greater) => Position::HalfAxis(1),
            (Less, Equal) => Position::HalfAxis(2),
            (Equal, Less) => Position::HalfAxis(3),
            (Greater, Greater) => Position::Quadrant(0),
            (Less, Greater) => Position::Quadrant(1),
            (Less, Less) => Position::Quadrant(2),
            (Greater, Less) => Position::Quadrant(3),
        }
    }

    /// Multiplication by `i`.
    fn rotate(self) -> Position {
        match self {
            Position::Origin => Position::Origin,
            Position::HalfAxis(k) => Position::HalfAxis((k + 1) % 4),
            Position::Quadrant(k) => Position::Quadrant((k + 1) % 4),
        }
    }

    fn conj(self) -> Position {
        match self {
            Position::Origin => Position::Origin,
            Position::HalfAxis(k) => Position::HalfAxis((4 - k) % 4),
            Position::Quadrant(k) => Position::Quadrant(3 - k),
        }
    }

    fn cost(self) -> i64 {
        match self {
            Position::Origin => 2,
            Position::HalfAxis(_) => 1,
            Position::Quadrant(_) => 0,
        }
    }

    /// The critical value has zero real part.
    pub fn on_imaginary_axis(self) -> bool {
        matches!(self, Position::Origin | Position::HalfAxis(1) | Position::HalfAxis(3))
    }

    pub fn on_real_axis(self) -> bool {
        matches!(self, Position::Origin | Position::HalfAxis(0) | Position::HalfAxis(2))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellDescriptor3 {
    pub case: Case3,
    pub degree: i64,
    /// Carries the cell onto the representative's cell up to `ψ⁴`: the rotation
    /// is taken mod 4 since `f(z) ↦ f(e^{2πi/3} z)` fixes the critical values.
    pub orbit_element: DihedralElement,
    /// Positions of the two critical values, sorted.
    pub positions: [Position; 2],
    /// The critical point is double (`w = 0`).
    pub double_critical_point: bool,
    pub expected_r: Matching,
    pub expected_i: Matching,
}

impl CellDescriptor3 {
    pub fn r_singular(&self) -> bool {
        self.positions.iter().any(|p| p.on_imaginary_axis())
    }

    pub fn i_singular(&self) -> bool {
        self.positions.iter().any(|p| p.on_real_axis())
    }

    /// The three label elements `ψ^{ρ+4j}` (with the same reflection) one of
    /// which carries the traced basketball to the representative's.
    pub fn candidate_elements(&self) -> Vec<DihedralElement> {
        (0..3)
            .map(|j| DihedralElement {
                rotation: (self.orbit_element.rotation + 4 * j) % 12,
                flip: self.orbit_element.flip,
                modulus: 12,
            })
            .collect()
    }
}

/// `z³ − 3(a+bi)z + 2(c+di)`.
pub fn cubic_from_params(p: &Params3) -> ExactPoly {
    let [a, b, c, d] = p;
    let three = rat(3, 1);
    let two = rat(2, 1);
    ExactPoly::from_descending(vec![
        RationalComplex::from_ints(1, 0),
        RationalComplex::from_ints(0, 0),
        RationalComplex::new(-(&three * a), -(&three * b)),
        RationalComplex::new(&two * c, &two * d),
    ])
}

fn sign(x: &BigRational) -> Ordering {
    x.cmp(&BigRational::zero())
}

fn flip_ord(o: Ordering) -> Ordering {
    o.reverse()
}

/// Signs of `x − r` and `x + r` for `r = √u₀ ≥ 0`; `cmp_sq(x)` is the sign of `x² − u₀`.
fn around(x: &BigRational, root_is_zero: bool, cmp_sq: impl Fn(&BigRational) -> Ordering) -> (Ordering, Ordering) {
    if root_is_zero {
        return (sign(x), sign(x));
    }
    let minus = if sign(x) != Ordering::Greater { Ordering::Less } else { cmp_sq(x) };
    let plus = if sign(x) != Ordering::Less { Ordering::Greater } else { flip_ord(cmp_sq(x)) };
    (minus, plus)
}

/// Positions of `v₋ = 2(s − w³)` and `v₊ = 2(s + w³)`, and whether `w = 0`.
fn positions_of(params: &Params3) -> ([Position; 2], bool) {
    let [a, b, c, d] = params;
    if a.is_zero() && b.is_zero() {
        let p = Position::from_signs(sign(c), sign(d));
        return ([p, p], true);
    }
    let three = rat(3, 1);
    let quarter = rat(1, 4);
    let p = a * a * a - &three * a * b * b;
    let q = &three * a * a * b - b * b * b;
    let q2 = &q * &q * &quarter;
    let (x_zero, y_zero) = if q.is_zero() { (p.is_negative(), p.is_positive()) } else { (false, false) };
    // X² is the positive root of u² − pu − q²/4, Y² that of u² + pu − q²/4
    let cmp_x = |x: &BigRational| {
        let x2 = x * x;
        if q.is_zero() {
            (&x2 - &p).cmp(&BigRational::zero())
        } else {
            (&x2 * &x2 - &p * &x2 - &q2).cmp(&BigRational::zero())
        }
    };
    let cmp_y = |y: &BigRational| {
        let y2 = y * y;
        if q.is_zero() {
            (&y2 + &p).cmp(&BigRational::zero())
        } else {
            (&y2 * &y2 + &p * &y2 - &q2).cmp(&BigRational::zero())
        }
    };
    let (re_minus, re_plus) = around(c, x_zero, cmp_x);
    let (mut im_minus, mut im_plus) = around(d, y_zero, cmp_y);
    // Y carries the sign of q
    if q.is_negative() {
        std::mem::swap(&mut im_minus, &mut im_plus);
    }
    let mut pos = [Position::from_signs(re_minus, im_minus), Position::from_signs(re_plus, im_plus)];
    pos.sort();
    (pos, false)
}

fn case_of(pos: [Position; 2], w_zero: bool) -> Case3 {
    use Position::*;
    if w_zero {
        return match pos[0] {
            Origin => Case3::LowerA1,
            HalfAxis(_) => Case3::LowerA2,
            Quadrant(_) => Case3::A1,
        };
    }
    match (pos[0], pos[1]) {
        (Quadrant(x), Quadrant(y)) => match (y + 4 - x) % 4 {
            0 => Case3::A1,
            2 => Case3::B,
            _ => Case3::A2,
        },
        (Origin, HalfAxis(_)) => Case3::LowerB1,
        (Origin, Quadrant(_)) => Case3::LowerC4,
        (HalfAxis(x), HalfAxis(y)) => match (y + 4 - x) % 4 {
            0 => Case3::LowerB2,
            2 => Case3::LowerB3,
            _ => Case3::LowerC2,
        },
        (HalfAxis(h), Quadrant(q)) => {
            if q == h || q == (h + 3) % 4 {
                Case3::LowerC1
            } else {
                Case3::LowerC3
            }
        }
        // both critical values at the origin forces w = 0
        (Origin, Origin) => Case3::LowerA1,
        _ => unreachable!("positions are sorted"),
    }
}

fn degree_of(pos: [Position; 2], w_zero: bool) -> i64 {
    if w_zero {
        return match pos[0] {
            Position::Origin => 0,
            Position::HalfAxis(_) => 1,
            Position::Quadrant(_) => 4,
        };
    }
    4 - pos[0].cost() - pos[1].cost()
}

fn transform(pos: [Position; 2], rho: u32, flip: bool) -> [Position; 2] {
    let mut out = pos.map(|p| {
        let mut q = if flip { p.conj() } else { p };
        for _ in 0..rho {
            q = q.rotate();
        }
        q
    });
    out.sort();
    out
}

/// Case, degree and orbit position of `z³ − 3(a+bi)z + 2(c+di)`, exactly.
pub fn classify3(params: &Params3) -> CellDescriptor3 {
    let (pos, w_zero) = positions_of(params);
    let case = case_of(pos, w_zero);
    let (target, _) = positions_of(&case.representative());
    let (rho, flip) = (0..4u32)
        .flat_map(|r| [(r, false), (r, true)])
        .find(|&(r, fl)| transform(pos, r, fl) == target)
        .expect("each case is a single orbit of critical-value configurations");
    let (expected_r, expected_i) = case.canonical_matchings();
    CellDescriptor3 {
        case,
        degree: degree_of(pos, w_zero),
        orbit_element: DihedralElement { rotation: rho, flip, modulus: 12 },
        positions: pos,
        double_critical_point: w_zero,
        expected_r,
        expected_i,
    }
}

fn random_rational(rng: &mut ChaCha8Rng, max: i64) -> BigRational {
    let den = rng.gen_range(1..=4);
    BigRational::new(BigInt::from(rng.gen_range(-max * den..=max * den)), BigInt::from(den))
}

fn random_positive(rng: &mut ChaCha8Rng) -> BigRational {
    let den = rng.gen_range(1..=4);
    BigRational::new(BigInt::from(rng.gen_range(1..=5 * den)), BigInt::from(den))
}

/// Uniform in `(0, 1)` on a small grid.
fn random_fraction(rng: &mut ChaCha8Rng) -> BigRational {
    let den = rng.gen_range(2..=9);
    BigRational::new(BigInt::from(rng.gen_range(1..den)), BigInt::from(den))
}

fn random_sign(rng: &mut ChaCha8Rng) -> BigRational {
    if rng.gen_bool(0.5) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// Random `(a, b, c, d)` with entries `p/q`, `|p/q| ≤ 3`, `q ≤ 4`.
pub fn random_params(rng: &mut ChaCha8Rng) -> Params3 {
    [(); 4].map(|_| random_rational(rng, 3))
}

/// `w` with both coordinates nonzero, so that `w³` lies in an open quadrant.
fn generic_w(rng: &mut ChaCha8Rng) -> RationalComplex {
    let x = random_positive(rng) * random_sign(rng);
    let y = random_positive(rng) * random_sign(rng);
    RationalComplex::new(x / rat(2, 1), y / rat(2, 1))
}

fn axis_w(rng: &mut ChaCha8Rng) -> RationalComplex {
    let t = random_positive(rng) * random_sign(rng) / rat(2, 1);
    if rng.gen_bool(0.5) {
        RationalComplex::new(t, BigRational::zero())
    } else {
        RationalComplex::new(BigRational::zero(), t)
    }
}

fn params_of(w: &RationalComplex, s: &RationalComplex) -> Params3 {
    let w2 = w.clone() * w.clone();
    [w2.re, w2.im, s.re.clone(), s.im.clone()]
}

fn unit(rng: &mut ChaCha8Rng) -> RationalComplex {
    match rng.gen_range(0..4) {
        0 => RationalComplex::from_ints(1, 0),
        1 => RationalComplex::from_ints(0, 1),
        2 => RationalComplex::from_ints(-1, 0),
        _ => RationalComplex::from_ints(0, -1),
    }
}

fn scalar(x: BigRational) -> RationalComplex {
    RationalComplex::real(x)
}

/// Random rational parameters inside the cells of the given case.
pub fn stratified_params(case: Case3, rng: &mut ChaCha8Rng) -> Params3 {
    let zero = RationalComplex::from_ints(0, 0);
    match case {
        Case3::LowerA1 => params_of(&zero, &zero),
        Case3::LowerA2 => params_of(&zero, &(unit(rng) * scalar(random_positive(rng)))),
        Case3::A1 => {
            let sx = random_sign(rng);
            let sy = random_sign(rng);
            if rng.gen_bool(0.3) {
                let s = RationalComplex::new(sx * random_positive(rng), sy * random_positive(rng));
                return params_of(&zero, &s);
            }
            let w = generic_w(rng);
            let big = w.pow(3);
            let s = RationalComplex::new(
                sx * (big.re.abs() + random_positive(rng)),
                sy * (big.im.abs() + random_positive(rng)),
            );
            params_of(&w, &s)
        }
        Case3::A2 => {
            let w = generic_w(rng);
            let big = w.pow(3);
            let large = |rng: &mut ChaCha8Rng, x: &BigRational| random_sign(rng) * (x.abs() + random_positive(rng));
            let small = |rng: &mut ChaCha8Rng, x: &BigRational| {
                random_sign(rng) * x.abs() * if rng.gen_bool(0.2) { BigRational::zero() } else { random_fraction(rng) }
            };
            let s = if rng.gen_bool(0.5) {
                RationalComplex::new(large(rng, &big.re), small(rng, &big.im))
            } else {
                RationalComplex::new(small(rng, &big.re), large(rng, &big.im))
            };
            params_of(&w, &s)
        }
        Case3::B => {
            let w = generic_w(rng);
            let big = w.pow(3);
            let s = RationalComplex::new(
                random_sign(rng) * random_fraction(rng) * big.re.abs(),
                random_sign(rng) * random_fraction(rng) * big.im.abs(),
            );
            params_of(&w, &s)
        }
        Case3::LowerB1 | Case3::LowerB2 | Case3::LowerB3 => {
            let w = axis_w(rng);
            let big = w.pow(3);
            let t = match case {
                Case3::LowerB1 => BigRational::one(),
                Case3::LowerB2 => BigRational::one() + random_positive(rng),
                _ => random_fraction(rng) * random_sign(rng),
            };
            params_of(&w, &(big * scalar(t * random_sign(rng))))
        }
        Case3::LowerC4 => {
            let w = generic_w(rng);
            params_of(&w, &(w.pow(3) * scalar(random_sign(rng))))
        }
        Case3::LowerC2 => {
            let w = generic_w(rng);
            params_of(&w, &(w.pow(3).conj() * scalar(random_sign(rng))))
        }
        Case3::LowerC1 | Case3::LowerC3 => {
            let w = generic_w(rng);
            let big = w.pow(3) * scalar(random_sign(rng));
            // s − W = α·e on an axis; s + W = α·e + 2W
            let (e, coord) = if rng.gen_bool(0.5) {
                (RationalComplex::from_ints(1, 0), big.re.clone())
            } else {
                (RationalComplex::from_ints(0, 1), big.im.clone())
            };
            let alpha = if case == Case3::LowerC1 {
                random_sign(rng) * (rat(2, 1) * coord.abs() + random_positive(rng))
            } else {
                -coord.signum() * rat(2, 1) * coord.abs() * random_fraction(rng)
            };
            params_of(&w, &(big + e * scalar(alpha)))
        }
    }
}

#[derive(Clone, Debug)]
pub struct Disagreement {
    pub params: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default)]
pub struct ConsistencyReport {
    pub checked: usize,
    pub agreed: usize,
    pub disagreements: Vec<Disagreement>,
    /// Tracer failures (snap radius floor and the like), with their messages.
    pub trace_errors: Vec<Disagreement>,
    pub case_counts: BTreeMap<Case3, usize>,
}

impl ConsistencyReport {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty() && self.trace_errors.is_empty() && self.agreed == self.checked
    }
}

fn show(p: &Params3) -> String {
    format!("(a,b,c,d) = ({}, {}, {}, {})", p[0], p[1], p[2], p[3])
}

fn compare(desc: &CellDescriptor3, params: &Params3, t: &TraceResult) -> std::result::Result<(), String> {
    if desc.degree != t.degree() {
        return Err(format!("{}: degree {} but traced {}", desc.case, desc.degree, t.degree()));
    }
    let f = cubic_from_params(params);
    let traced_r = t.basketball.vertices().iter().any(|v| v.m_r >= 2);
    let traced_i = t.basketball.vertices().iter().any(|v| v.m_i >= 2);
    let verdict_r = singularity_verdict(&f, Curve::R).map_err(|e| e.to_string())?.has_real_witness;
    let verdict_i = singularity_verdict(&f, Curve::I).map_err(|e| e.to_string())?.has_real_witness;
    if (verdict_r, verdict_i) != (traced_r, traced_i) || (desc.r_singular(), desc.i_singular()) != (traced_r, traced_i) {
        return Err(format!(
            "{}: singular (R, I) verdict ({verdict_r}, {verdict_i}), classified ({}, {}), traced ({traced_r}, {traced_i})",
            desc.case,
            desc.r_singular(),
            desc.i_singular()
        ));
    }
    let target = desc.case.canonical_basketball().key();
    if !desc.candidate_elements().iter().any(|g| t.basketball.act(g).key() == target) {
        return Err(format!(
            "{}: traced R {} I {} is not carried to the representative by {:?}",
            desc.case, t.r_matching, t.i_matching, desc.orbit_element
        ));
    }
    Ok(())
}

/// Classify, trace and decide singularity for `random` random cubics and
/// `per_case` stratified samples in each of the twelve cases.
pub fn classify3_consistency(random: usize, per_case: usize, seed: u64, cfg: &TraceConfig) -> ConsistencyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples: Vec<(Params3, Option<Case3>)> = (0..random).map(|_| (random_params(&mut rng), None)).collect();
    for case in Case3::ALL {
        for _ in 0..per_case {
            samples.push((stratified_params(case, &mut rng), Some(case)));
        }
    }
    let mut report = ConsistencyReport::default();
    for (params, family) in samples {
        report.checked += 1;
        let desc = classify3(&params);
        *report.case_counts.entry(desc.case).or_default() += 1;
        if let Some(c) = family {
            if c != desc.case {
                report.disagreements.push(Disagreement {
                    params: show(&params),
                    reason: format!("sampled in {c} but classified {}", desc.case),
                });
                continue;
            }
        }
        match basketball_of_exact(&cubic_from_params(&params), cfg) {
            Err(e) => report.trace_errors.push(Disagreement { params: show(&params), reason: e.to_string() }),
            Ok(t) => match compare(&desc, &params, &t) {
                Ok(()) => report.agreed += 1,
                Err(reason) => report.disagreements.push(Disagreement { params: show(&params), reason }),
            },
        }
    }
    report
}

/// Traces the 24 images of every representative and returns the distinct
/// basketballs found, checking each against the relabelled representative.
pub fn orbit_cells_census(cfg: &TraceConfig) -> Result<BTreeSet<(Matching, Matching)>> {
    let mut cells = BTreeSet::new();
    for case in Case3::ALL {
        let f = cubic_from_params(&case.representative()).to_complex();
        let canonical = case.canonical_basketball();
        for g in DihedralElement::all(12) {
            let t = basketball_of(&act_on_poly(&f, &g), cfg)?;
            let expected = canonical.act(&g).key();
            if t.basketball.key() != expected {
                return Err(crate::error::Error::Inconsistent(format!(
                    "{case} under {g:?}: traced R {} I {}",
                    t.r_matching, t.i_matching
                )));
            }
            cells.insert(expected);
        }
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: i64, b: i64, c: i64, d: i64) -> Params3 {
        [rat(a, 1), rat(b, 1), rat(c, 1), rat(d, 1)]
    }

    #[test]
    fn examples() {
        let z3 = classify3(&p(0, 0, 0, 0));
        assert_eq!((z3.case, z3.degree), (Case3::LowerA1, 0));
        let b = classify3(&p(1, 1, 0, 0));
        assert_eq!((b.case, b.degree), (Case3::B, 4));
        // z³ − 3z + 2 = (z − 1)²(z + 2): critical values 0 and 4
        let wall = classify3(&p(1, 0, 1, 0));
        assert_eq!((wall.case, wall.degree), (Case3::LowerB1, 1));
        assert_eq!(wall.positions, [Position::Origin, Position::HalfAxis(0)]);
    }

    #[test]
    fn representatives_classify_to_themselves() {
        for case in Case3::ALL {
            let d = classify3(&case.representative());
            assert_eq!(d.case, case);
            assert_eq!(d.orbit_element, DihedralElement::identity(12));
            assert_eq!(d.degree, case.degree());
            assert_eq!(d.expected_r, case.canonical_matchings().0);
        }
    }

    #[test]
    fn canonical_degrees() {
        for case in Case3::ALL {
            assert_eq!(case.canonical_basketball().degree(), case.degree(), "{case}");
        }
        let total: usize = Case3::ALL.iter().map(|c| c.orbit_length()).sum();
        assert_eq!(total, 129);
    }

    #[test]
    fn stratified_samples_land_in_their_case() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for case in Case3::ALL {
            for _ in 0..40 {
                let params = stratified_params(case, &mut rng);
                assert_eq!(classify3(&params).case, case, "{}", show(&params));
            }
        }
    }

    #[test]
    fn irrational_crossings() {
        // w² = 2i: X = Y... take (a+bi)³ = −8i so W = ±(2 − 2i); c = 2 puts v₋ on the imaginary axis
        let d = classify3(&p(0, 2, 2, 0));
        assert!(d.r_singular());
        // w² = 1 + i: X = 2^{3/4}cos(3π/8) is irrational, so no rational c sits on it
        for c in [rat(1, 1), rat(3, 4), rat(4, 5)] {
            let d = classify3(&[rat(1, 1), rat(1, 1), c, rat(1, 3)]);
            assert!(!d.r_singular());
        }
    }
}
