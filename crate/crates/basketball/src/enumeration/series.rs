use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest truncation order accepted by [`gf_tree`].
pub const TREE_ORDER_CAP: usize = 200;
/// Largest truncation order accepted by [`gf_even_noncrossing`].
pub const PARTITION_ORDER_CAP: usize = 40;

type TPoly = Vec<BigInt>;

fn tpoly_trim(mut p: TPoly) -> TPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn tpoly_add_assign(acc: &mut TPoly, p: &[BigInt]) {
    if acc.len() < p.len() {
        acc.resize(p.len(), BigInt::zero());
    }
    for (a, b) in acc.iter_mut().zip(p) {
        *a += b;
    }
}

fn tpoly_mul_add(acc: &mut TPoly, p: &[BigInt], q: &[BigInt]) {
    if p.is_empty() || q.is_empty() {
        return;
    }
    if acc.len() < p.len() + q.len() - 1 {
        acc.resize(p.len() + q.len() - 1, BigInt::zero());
    }
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            if !b.is_zero() {
                acc[i + j] += a * b;
            }
        }
    }
}

/// Power series in `x`, truncated after `x^order`, with polynomial coefficients in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    order: usize,
    coeffs: Vec<TPoly>,
}

impl BivariateSeries {
    pub fn zero(order: usize) -> Self {
        BivariateSeries { order, coeffs: vec![Vec::new(); order + 1] }
    }

    /// `x` itself.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = vec![BigInt::one()];
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `x^k` as a `t`-polynomial, ascending; empty past the truncation.
    pub fn coeff(&self, k: usize) -> &[BigInt] {
        self.coeffs.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub(crate) fn set(&mut self, k: usize, p: TPoly) {
        self.coeffs[k] = tpoly_trim(p);
    }

    fn check_order(&self, o: &Self) -> Result<usize> {
        if self.order != o.order {
            return Err(Error::Domain(format!("series orders {} and {} differ", self.order, o.order)));
        }
        Ok(self.order)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let n = self.check_order(o)?;
        let mut r = self.clone();
        for k in 0..=n {
            tpoly_add_assign(&mut r.coeffs[k], &o.coeffs[k]);
            r.coeffs[k] = tpoly_trim(std::mem::take(&mut r.coeffs[k]));
        }
        Ok(r)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let n = self.check_order(o)?;
        let mut r = Self::zero(n);
        for i in 0..=n {
            if self.coeffs[i].is_empty() {
                continue;
            }
            for j in 0..=n - i {
                tpoly_mul_add(&mut r.coeffs[i + j], &self.coeffs[i], &o.coeffs[j]);
            }
        }
        for c in &mut r.coeffs {
            *c = tpoly_trim(std::mem::take(c));
        }
        Ok(r)
    }

    /// Multiply by the monomial `c·t^e`.
    pub fn scale_t(&self, c: i64, e: usize) -> Self {
        let mut r = self.clone();
        for p in &mut r.coeffs {
            if !p.is_empty() {
                let mut q = vec![BigInt::zero(); e];
                q.extend(p.iter().map(|a| a * c));
                *p = tpoly_trim(q);
            }
        }
        r
    }

    /// `1 / (1 − self)`; requires a vanishing constant term.
    pub fn geometric(&self) -> Result<Self> {
        if !self.coeffs[0].is_empty() {
            return Err(Error::Domain("geometric series of a series with constant term".into()));
        }
        let n = self.order;
        let mut r = Self::zero(n);
        r.coeffs[0] = vec![BigInt::one()];
        for k in 1..=n {
            let mut acc = Vec::new();
            for j in 1..=k {
                tpoly_mul_add(&mut acc, &self.coeffs[j], &r.coeffs[k - j]);
            }
            r.coeffs[k] = tpoly_trim(acc);
        }
        Ok(r)
    }

    /// Row in the form `x^9: [0,1,15,55,55]`.
    pub fn row(&self, k: usize) -> String {
        let body: Vec<String> = self.coeff(k).iter().map(ToString::to_string).collect();
        format!("x^{k}: [{}]", body.join(","))
    }
}

/// Series of circular trees, counted by leaves (`x`) and internal vertices (`t`):
/// the solution of `A = x + t·A³/(1 − A²)`.
///
/// Clearing the denominator gives `A = x − x·A² + (1+t)·A³`, whose `x^m`
/// coefficient only involves coefficients of `A` of order at most `m − 2`,
/// so the fixed point is reached one order at a time.
pub fn gf_tree(order: usize) -> Result<BivariateSeries> {
    if order > TREE_ORDER_CAP {
        return Err(Error::Capacity { what: "tree series order", limit: TREE_ORDER_CAP, requested: order });
    }
    let mut a = BivariateSeries::zero(order);
    let mut a2: Vec<TPoly> = vec![Vec::new(); order + 1];
    let mut a3: Vec<TPoly> = vec![Vec::new(); order + 1];
    for m in 1..=order {
        // a2[m−1] and a3[m] need coefficients of A below m − 1
        let mut s2 = Vec::new();
        for i in 1..m.saturating_sub(1) {
            tpoly_mul_add(&mut s2, &a.coeffs[i], &a.coeffs[m - 1 - i]);
        }
        a2[m - 1] = tpoly_trim(s2);
        let mut s3 = Vec::new();
        for i in 1..m.saturating_sub(1) {
            tpoly_mul_add(&mut s3, &a.coeffs[i], &a2[m - i]);
        }
        // a2[m − i] for i ≥ 1 was filled at an earlier step, except a2[m−1] just above
        a3[m] = tpoly_trim(s3);
        let mut c: TPoly = if m == 1 { vec![BigInt::one()] } else { Vec::new() };
        for (k, v) in a2[m - 1].iter().enumerate() {
            if c.len() <= k {
                c.resize(k + 1, BigInt::zero());
            }
            c[k] -= v;
        }
        // (1 + t)·a3[m]
        tpoly_add_assign(&mut c, &a3[m]);
        let mut shifted = vec![BigInt::zero()];
        shifted.extend(a3[m].iter().cloned());
        tpoly_add_assign(&mut c, &shifted);
        a.set(m, c);
    }
    Ok(a)
}

/// A monomial `p₂^e₁ p₄^e₂ …`, stored as the exponent vector `[e₁, e₂, …]`.
pub type Monomial = Vec<u32>;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut r = vec![0; a.len().max(b.len())];
    for (k, e) in a.iter().enumerate() {
        r[k] += e;
    }
    for (k, e) in b.iter().enumerate() {
        r[k] += e;
    }
    r
}

type PPoly = BTreeMap<Monomial, BigInt>;

fn ppoly_mul_add(acc: &mut PPoly, p: &PPoly, q: &PPoly) {
    for (ma, ca) in p {
        for (mb, cb) in q {
            let e = acc.entry(mono_mul(ma, mb)).or_insert_with(BigInt::zero);
            *e += ca * cb;
        }
    }
}

/// Even non-crossing partitions of `2m` points on a circle, each weighted by
/// `Π p_{|B|}` over its blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionWeightSeries {
    order: usize,
    /// Coefficient of `x^{2m}` at index `m`.
    terms: Vec<PPoly>,
}

impl PartitionWeightSeries {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `x^k`; zero for odd `k`.
    pub fn coeff(&self, k: usize) -> Vec<(Monomial, BigInt)> {
        if k % 2 == 1 || k > self.order {
            return Vec::new();
        }
        self.terms[k / 2].iter().rev().map(|(m, c)| (m.clone(), c.clone())).collect()
    }

    /// Evaluate the `x^k` coefficient with `p_{2j} ↦ values(j)`.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn evaluate<V: Clone>(
        &self,
        k: usize,
        one: V,
        values: impl Fn(usize) -> V,
        mul: impl Fn(&V, &V) -> V,
        scale: impl Fn(&V, &BigInt) -> V,
        add: impl Fn(&V, &V) -> V,
        zero: V,
    ) -> V {
        let mut total = zero;
        for (m, c) in self.coeff(k) {
            let mut term = one.clone();
            for (j, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    term = mul(&term, &values(j + 1));
                }
            }
            total = add(&total, &scale(&term, &c));
        }
        total
    }

    /// `2p2^2 + p4` style rendering of the `x^k` coefficient.
    pub fn format_coeff(&self, k: usize) -> String {
        let terms: Vec<String> = self
            .coeff(k)
            .into_iter()
            .map(|(m, c)| {
                let mut s = if c.is_one() { String::new() } else { c.to_string() };
                for (j, &e) in m.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => s.push_str(&format!("p{}", 2 * (j + 1))),
                        _ => s.push_str(&format!("p{}^{e}", 2 * (j + 1))),
                    }
                }
                if s.is_empty() {
                    s.push('1');
                }
                s
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Weighted even non-crossing partitions, built by choosing the block of the
/// first point; the `2j` gaps it leaves are filled independently.
pub fn gf_even_noncrossing(order: usize) -> Result<PartitionWeightSeries> {
    if order > PARTITION_ORDER_CAP {
        return Err(Error::Capacity { what: "partition series order", limit: PARTITION_ORDER_CAP, requested: order });
    }
    let mmax = order / 2;
    let unit: PPoly = BTreeMap::from([(Vec::new(), BigInt::one())]);
    let mut theta: Vec<PPoly> = vec![unit.clone()];
    // pw[r][s] = [y^s] Θ(y)^r
    let mut pw: Vec<Vec<PPoly>> = (0..=2 * mmax).map(|r| vec![if r == 0 { unit.clone() } else { PPoly::new() }]).collect();
    pw[0][0] = unit.clone();
    for r in 1..=2 * mmax {
        pw[r][0] = unit.clone();
    }
    for m in 1..=mmax {
        let mut t = PPoly::new();
        for j in 1..=m {
            let mut block = vec![0u32; j];
            block[j - 1] = 1;
            let pj: PPoly = BTreeMap::from([(block, BigInt::one())]);
            ppoly_mul_add(&mut t, &pj, &pw[2 * j][m - j]);
        }
        t.retain(|_, c| !c.is_zero());
        theta.push(t);
        pw[0].push(PPoly::new());
        for r in 1..=2 * mmax {
            let mut acc = PPoly::new();
            for k in 0..=m {
                ppoly_mul_add(&mut acc, &theta[k], &pw[r - 1][m - k]);
            }
            acc.retain(|_, c| !c.is_zero());
            pw[r].push(acc);
        }
    }
    Ok(PartitionWeightSeries { order, terms: theta })
}

/// Circular forests by leaves and internal vertices: substitute `p_{2k} ↦ [x^{2k−1}]A`
/// into the even-partition series.
pub fn gf_forest_from(a: &BivariateSeries, theta: &PartitionWeightSeries) -> Result<BivariateSeries> {
    let order = theta.order();
    if a.order() + 1 < order {
        return Err(Error::Domain(format!(
            "tree series to order {} cannot feed partitions to order {order}",
            a.order()
        )));
    }
    let mut f = BivariateSeries::zero(order);
    for k in (0..=order).step_by(2) {
        let v = theta.evaluate(
            k,
            vec![BigInt::one()],
            |j| a.coeff(2 * j - 1).to_vec(),
            |p, q| {
                let mut r = Vec::new();
                tpoly_mul_add(&mut r, p, q);
                r
            },
            |p, c| p.iter().map(|x| x * c).collect(),
            |p, q| {
                let mut r = p.clone();
                tpoly_add_assign(&mut r, q);
                r
            },
            Vec::new(),
        );
        f.set(k, v);
    }
    Ok(f)
}

pub fn gf_forest(order: usize) -> Result<BivariateSeries> {
    gf_forest_from(&gf_tree(order)?, &gf_even_noncrossing(order)?)
}
