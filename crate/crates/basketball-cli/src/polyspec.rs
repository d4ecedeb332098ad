//! Textual coefficient lists: `"1, 0, -3-3i, 2"`, degree-descending, with
//! decimal or `p/q` components. Decimals are read exactly.

use std::fmt;

use basketball::poly::ExactPoly;
use basketball::scalar::RationalComplex;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Character offset into the input.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError { pos, msg: msg.into() }
}

/// Exact value of a decimal (`-1.25`, `3e-2`) or a fraction (`-7/3`).
pub fn parse_real(s: &str) -> Option<BigRational> {
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.parse().ok()?;
        let q: BigInt = q.parse().ok()?;
        return (!q.is_zero()).then(|| BigRational::new(p, q));
    }
    let (body, exp) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], s[k + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (sign, body) = match body.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, body.strip_prefix('+').unwrap_or(body)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let ten = BigInt::from(10);
    let shift = exp - frac.len() as i32;
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    let value = if shift >= 0 {
        BigRational::from_integer(digits * scale)
    } else {
        BigRational::new(digits, scale)
    };
    Some(if sign < 0 { -value } else { value })
}

/// One entry: `RE`, `IMi`, or `RE±IMi`. A bare `i` or `-i` has unit modulus.
pub fn parse_complex(s: &str) -> Option<RationalComplex> {
    let Some(body) = s.strip_suffix('i') else {
        return parse_real(s).map(RationalComplex::real);
    };
    // the split is at the last sign that is neither leading nor an exponent sign
    let b = body.as_bytes();
    let split = (1..b.len()).rev().find(|&k| (b[k] == b'+' || b[k] == b'-') && !matches!(b[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_real(&body[..k])?, &body[k..]),
        None => (BigRational::zero(), body),
    };
    let im = match im {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        t => parse_real(t)?,
    };
    Some(RationalComplex::new(re, im))
}

/// Parse a monic polynomial of degree at least one.
pub fn parse_poly(text: &str) -> Result<ExactPoly, ParseError> {
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for raw in text.split(',') {
        let lead = raw.chars().take_while(|c| c.is_whitespace()).count();
        let entry: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        let pos = offset + lead;
        if entry.is_empty() {
            return Err(err(pos, "empty coefficient"));
        }
        let c = parse_complex(&entry).ok_or_else(|| err(pos, format!("cannot read coefficient '{entry}'")))?;
        coeffs.push(c);
        offset += raw.chars().count() + 1;
    }
    if coeffs.len() < 2 {
        return Err(err(0, "need at least two coefficients"));
    }
    if coeffs[0] != RationalComplex::from_ints(1, 0) {
        return Err(err(0, format!("leading coefficient must be 1, got {}", coeffs[0])));
    }
    Ok(ExactPoly::from_descending(coeffs))
}

/// Comma-separated rationals, e.g. `classify3` parameters.
pub fn parse_reals(text: &str, count: usize) -> Result<Vec<BigRational>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for raw in text.split(',') {
        let lead = raw.chars().take_while(|c| c.is_whitespace()).count();
        let entry = raw.trim();
        let v = parse_real(entry).ok_or_else(|| err(offset + lead, format!("cannot read rational '{entry}'")))?;
        out.push(v);
        offset += raw.chars().count() + 1;
    }
    if out.len() != count {
        return Err(err(0, format!("expected {count} values, got {}", out.len())));
    }
    Ok(out)
}
