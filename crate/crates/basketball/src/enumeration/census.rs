use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forest::{basketball_admissible, degree_forest, forest_valid, Basketball, DihedralElement, Matching};

/// Largest number of points [`all_matchings`] will pair up.
pub const MATCHING_CAP: usize = 16;
/// Largest `n` for [`forest_census`] (on `2n` points).
pub const FOREST_CENSUS_CAP: usize = 8;
/// Largest `n` for [`basketball_census`] (on `4n` points).
pub const BASKETBALL_CENSUS_CAP: usize = 5;

/// `Σ c_d x^d` over cells, indexed by degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CellEnumerator {
    coefficients: Vec<BigUint>,
}

impl CellEnumerator {
    pub fn new(coefficients: Vec<BigUint>) -> Self {
        let mut e = CellEnumerator { coefficients };
        while e.coefficients.last().is_some_and(Zero::is_zero) {
            e.coefficients.pop();
        }
        e
    }

    pub fn from_counts(counts: &[u64]) -> Self {
        CellEnumerator::new(counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    /// Tally degrees; negative degrees are a caller bug.
    pub fn from_degrees(degrees: impl IntoIterator<Item = i64>) -> Self {
        let mut counts: Vec<u64> = Vec::new();
        for d in degrees {
            let d = usize::try_from(d).expect("cell degrees are nonnegative");
            if counts.len() <= d {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
        CellEnumerator::from_counts(&counts)
    }

    pub fn coefficients(&self) -> &[BigUint] {
        &self.coefficients
    }

    pub fn coeff(&self, d: usize) -> BigUint {
        self.coefficients.get(d).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.coefficients.iter().sum()
    }

    /// Small coefficients as machine integers, for comparisons in tests and tools.
    pub fn to_u64(&self) -> Vec<u64> {
        self.coefficients.iter().map(|c| c.to_u64().expect("coefficient fits in u64")).collect()
    }
}

impl fmt::Display for CellEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.coefficients.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

fn pairings(labels: &[u32], acc: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
    let Some((&first, rest)) = labels.split_first() else {
        out.push(acc.clone());
        return;
    };
    for j in 0..rest.len() {
        let mut remaining = rest.to_vec();
        let partner = remaining.remove(j);
        acc.push((first, partner));
        pairings(&remaining, acc, out);
        acc.pop();
    }
}

/// Every perfect matching of `labels` on a circle of `circle` points, in
/// lexicographic order of the partner of the smallest remaining label.
pub fn all_matchings(labels: &[u32], circle: u32) -> Result<Vec<Matching>> {
    if labels.len() > MATCHING_CAP {
        return Err(Error::Capacity { what: "matching points", limit: MATCHING_CAP, requested: labels.len() });
    }
    if labels.len() % 2 == 1 {
        return Err(Error::Domain(format!("cannot match {} points", labels.len())));
    }
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    pairings(&sorted, &mut Vec::new(), &mut out);
    out.into_iter().map(|p| Matching::new(circle, &p)).collect()
}

fn points(n: usize, parity: Option<u32>) -> (Vec<u32>, u32) {
    match parity {
        None => ((0..2 * n as u32).collect(), 2 * n as u32),
        Some(p) => ((0..4 * n as u32).filter(|k| k % 2 == p).collect(), 4 * n as u32),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestCensus {
    /// Number of valid forests with `k` internal vertices, at index `k`.
    pub by_vertex_count: Vec<u64>,
    pub by_degree: CellEnumerator,
}

/// All valid circular forests on `2n` points.
pub fn valid_forests(n: usize) -> Result<Vec<crate::forest::CircularForest>> {
    if n > FOREST_CENSUS_CAP {
        return Err(Error::Capacity { what: "forest census", limit: FOREST_CENSUS_CAP, requested: n });
    }
    let (labels, circle) = points(n, None);
    let all = all_matchings(&labels, circle)?;
    Ok(all.par_iter().filter_map(|m| forest_valid(m).ok()).collect())
}

pub fn forest_census(n: usize) -> Result<ForestCensus> {
    let forests = valid_forests(n)?;
    let mut by_vertex_count = Vec::new();
    for f in &forests {
        let k = f.vertices().len();
        if by_vertex_count.len() <= k {
            by_vertex_count.resize(k + 1, 0);
        }
        by_vertex_count[k] += 1;
    }
    let by_degree = CellEnumerator::from_degrees(forests.iter().map(degree_forest));
    Ok(ForestCensus { by_vertex_count, by_degree })
}

/// Valid forests on the `R` (odd) or `I` (even) leaves of a `4n` circle.
fn component_forests(n: usize, parity: u32) -> Result<Vec<Matching>> {
    let (labels, circle) = points(n, Some(parity));
    let all = all_matchings(&labels, circle)?;
    Ok(all.into_par_iter().filter(|m| forest_valid(m).is_ok()).collect())
}

/// All admissible basketballs with `4n` leaves, in deterministic order.
pub fn all_basketballs(n: usize) -> Result<Vec<Basketball>> {
    if n == 0 || n > BASKETBALL_CENSUS_CAP {
        return Err(Error::Capacity { what: "basketball census", limit: BASKETBALL_CENSUS_CAP, requested: n });
    }
    let rs = component_forests(n, 1)?;
    let is = component_forests(n, 0)?;
    Ok(rs
        .par_iter()
        .flat_map_iter(|r| is.iter().filter_map(move |i| basketball_admissible(r, i).ok()))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasketballCensus {
    pub enumerator: CellEnumerator,
    pub total: u64,
}

pub fn basketball_census(n: usize) -> Result<BasketballCensus> {
    let all = all_basketballs(n)?;
    Ok(BasketballCensus {
        enumerator: CellEnumerator::from_degrees(all.iter().map(Basketball::degree)),
        total: all.len() as u64,
    })
}

/// Brute-force count of admissible pairs of non-crossing matchings.
pub fn nonsingular_count(n: usize) -> Result<u64> {
    if n == 0 || n > BASKETBALL_CENSUS_CAP {
        return Err(Error::Capacity { what: "non-singular census", limit: BASKETBALL_CENSUS_CAP, requested: n });
    }
    let nc = |p| -> Result<Vec<Matching>> {
        let (labels, circle) = points(n, Some(p));
        Ok(all_matchings(&labels, circle)?.into_iter().filter(Matching::is_noncrossing).collect())
    };
    let (rs, is) = (nc(1)?, nc(0)?);
    Ok(rs
        .par_iter()
        .map(|r| is.iter().filter(|i| basketball_admissible(r, i).is_ok()).count() as u64)
        .sum())
}

/// `C(4n, n) / (3n + 1)`.
pub fn nonsingular_formula(n: usize) -> BigUint {
    let mut c = BigUint::one();
    for k in 0..n {
        c = c * BigUint::from(4 * n - k) / BigUint::from(k + 1);
    }
    c / BigUint::from(3 * n + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitGroup {
    /// All `8n` relabellings `k ↦ ±k + r`.
    Full,
    /// Rotations by an even number of leaves, which keep `R` and `I` apart.
    ColorPreserving,
}

impl OrbitGroup {
    pub fn elements(self, n: usize) -> Vec<DihedralElement> {
        let m = 4 * n as u32;
        match self {
            OrbitGroup::Full => DihedralElement::all(m),
            OrbitGroup::ColorPreserving => DihedralElement::rotations(m, 2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub representative: Matching,
    pub degree: i64,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCensus {
    pub enumerator: CellEnumerator,
    pub orbits: Vec<Orbit>,
}

impl OrbitCensus {
    /// Orbit sizes with multiplicity, ascending.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.orbits.iter().map(|o| o.size).collect();
        s.sort_unstable();
        s
    }
}

/// Split `items` (keyed by matching, with a degree) into orbits under `group`.
pub(crate) fn orbits_of(items: &[(Matching, i64)], group: &[DihedralElement]) -> Result<OrbitCensus> {
    let index: HashMap<&Matching, usize> = items.iter().enumerate().map(|(k, (m, _))| (m, k)).collect();
    let mut seen = vec![false; items.len()];
    let mut orbits = Vec::new();
    for (k, (m, d)) in items.iter().enumerate() {
        if seen[k] {
            continue;
        }
        let mut size = 0;
        for g in group {
            let image = g.act(m);
            let &j = index
                .get(&image)
                .ok_or_else(|| Error::Inconsistent(format!("image {image} of {m} is not in the census")))?;
            if items[j].1 != *d {
                return Err(Error::Inconsistent(format!("{m} and {image} have different degrees")));
            }
            if !seen[j] {
                seen[j] = true;
                size += 1;
            }
        }
        orbits.push(Orbit { representative: m.clone(), degree: *d, size });
    }
    Ok(OrbitCensus { enumerator: CellEnumerator::from_degrees(orbits.iter().map(|o| o.degree)), orbits })
}

/// Orbits of basketballs, keyed by their union matching.
pub fn orbit_census(n: usize, group: OrbitGroup) -> Result<OrbitCensus> {
    let items: Vec<(Matching, i64)> =
        all_basketballs(n)?.iter().map(|b| (b.union().matching().clone(), b.degree())).collect();
    orbits_of(&items, &group.elements(n))
}

/// Orbits of non-singular basketballs under `group`.
pub fn nonsingular_orbits(n: usize, group: OrbitGroup) -> Result<OrbitCensus> {
    let items: Vec<(Matching, i64)> = all_basketballs(n)?
        .iter()
        .filter(|b| b.is_nonsingular())
        .map(|b| (b.union().matching().clone(), b.degree()))
        .collect();
    orbits_of(&items, &group.elements(n))
}

/// Orbits of valid forests on `2n` points under the dihedral group of order `4n`.
pub fn forest_orbit_census(n: usize) -> Result<OrbitCensus> {
    let items: Vec<(Matching, i64)> =
        valid_forests(n)?.iter().map(|f| (f.matching().clone(), degree_forest(f))).collect();
    orbits_of(&items, &DihedralElement::all(2 * n as u32))
}

/// Degree histogram of any collection of basketballs.
pub fn degree_histogram<'a>(bs: impl IntoIterator<Item = &'a Basketball>) -> BTreeMap<i64, usize> {
    let mut h = BTreeMap::new();
    for b in bs {
        *h.entry(b.degree()).or_insert(0) += 1;
    }
    h
}
