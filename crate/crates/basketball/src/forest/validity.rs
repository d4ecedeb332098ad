use std::collections::BTreeSet;

use super::{crosses_unchecked, sommet_check, Branch, Matching};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invalidity {
    /// The common crossers of a crossing pair do not pairwise cross, so the
    /// pair lies in two distinct maximal vertex candidates.
    TwoMaximalSets { pair: (Branch, Branch) },
    /// A maximal candidate fails the joint offset condition.
    JointCheckFailed { branches: Vec<Branch> },
    /// Branches and vertices form a cycle in the incidence graph.
    IncidenceCycle,
}

/// A valid circular forest: its matching and its internal vertices, each a
/// sorted list of indices into `matching().branches()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircularForest {
    matching: Matching,
    vertices: Vec<Vec<usize>>,
}

impl CircularForest {
    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    pub fn vertex_branches(&self, v: usize) -> Vec<Branch> {
        self.vertices[v].iter().map(|&i| self.matching.branches()[i]).collect()
    }

    /// Leaf sets of the connected components.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let bs = self.matching.branches();
        let mut parent: Vec<usize> = (0..bs.len()).collect();
        for v in &self.vertices {
            for &i in &v[1..] {
                let (a, b) = (root(&mut parent, v[0]), root(&mut parent, i));
                parent[a] = b;
            }
        }
        let mut blocks: Vec<(usize, Vec<u32>)> = Vec::new();
        for (i, b) in bs.iter().enumerate() {
            let r = root(&mut parent, i);
            match blocks.iter_mut().find(|x| x.0 == r) {
                Some(x) => x.1.extend([b.a, b.b]),
                None => blocks.push((r, vec![b.a, b.b])),
            }
        }
        let mut out: Vec<Vec<u32>> = blocks
            .into_iter()
            .map(|(_, mut v)| {
                v.sort_unstable();
                v
            })
            .collect();
        out.sort();
        out
    }
}

pub(crate) fn root(p: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while p[r] != r {
        r = p[r];
    }
    let mut j = i;
    while p[j] != r {
        let nx = p[j];
        p[j] = r;
        j = nx;
    }
    r
}

/// Vertices as maximal sets of branches through a common point.
pub fn vertices_of(m: &Matching) -> std::result::Result<Vec<Vec<usize>>, Invalidity> {
    let bs = m.branches();
    let k = bs.len();
    let cross: Vec<Vec<bool>> =
        (0..k).map(|i| (0..k).map(|j| i != j && crosses_unchecked(bs[i], bs[j])).collect()).collect();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in 0..k {
        for j in i + 1..k {
            if !cross[i][j] {
                continue;
            }
            let common: Vec<usize> = (0..k).filter(|&x| cross[x][i] && cross[x][j]).collect();
            let clique = common.iter().enumerate().all(|(p, &x)| common[p + 1..].iter().all(|&y| cross[x][y]));
            if !clique {
                return Err(Invalidity::TwoMaximalSets { pair: (bs[i], bs[j]) });
            }
            let mut v = common;
            v.push(i);
            v.push(j);
            v.sort_unstable();
            let members: Vec<Branch> = v.iter().map(|&x| bs[x]).collect();
            if !sommet_check(&members) {
                return Err(Invalidity::JointCheckFailed { branches: members });
            }
            found.insert(v);
        }
    }
    Ok(found.into_iter().collect())
}

/// Vertices plus acyclicity of the branch/vertex incidence graph.
pub fn forest_valid(m: &Matching) -> std::result::Result<CircularForest, Invalidity> {
    let vertices = vertices_of(m)?;
    let k = m.len();
    let mut parent: Vec<usize> = (0..k + vertices.len()).collect();
    for (vi, v) in vertices.iter().enumerate() {
        for &b in v {
            let (x, y) = (root(&mut parent, k + vi), root(&mut parent, b));
            if x == y {
                return Err(Invalidity::IncidenceCycle);
            }
            parent[x] = y;
        }
    }
    Ok(CircularForest { matching: m.clone(), vertices })
}

/// Independent validity test: every cyclic sequence of pairwise-consecutive
/// crossing branches must pass through one vertex.
pub fn crossing_cycle_oracle(m: &Matching) -> Result<bool> {
    let bs = m.branches();
    let k = bs.len();
    if k > 10 {
        return Err(Error::Capacity { what: "crossing-cycle oracle branches", limit: 10, requested: k });
    }
    let adj: Vec<u32> = (0..k)
        .map(|i| (0..k).filter(|&j| j != i && crosses_unchecked(bs[i], bs[j])).fold(0u32, |acc, j| acc | (1 << j)))
        .collect();
    let full = 1usize << k;
    // reach[s] has bit v set when a crossing path from the lowest member of s
    // visits exactly s and ends at v
    let mut reach = vec![0u32; full];
    for s in 0..k {
        reach[1 << s] = 1 << s;
    }
    for set in 1..full {
        let start = set.trailing_zeros() as usize;
        let ends = reach[set];
        if ends == 0 {
            continue;
        }
        for v in 0..k {
            if ends & (1 << v) == 0 {
                continue;
            }
            let mut next = adj[v] & !(set as u32);
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                if w > start {
                    reach[set | (1 << w)] |= 1 << w;
                }
            }
        }
        if set.count_ones() >= 3 && ends & adj[start] != 0 {
            let members: Vec<Branch> = (0..k).filter(|&i| set & (1 << i) != 0).map(|i| bs[i]).collect();
            if !sommet_check(&members) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Co-dimension bookkeeping: `2(n−1) − Σ (2m−3)` over vertices of multiplicity `m`.
pub fn degree_forest(f: &CircularForest) -> i64 {
    let n = f.matching().len() as i64;
    2 * (n - 1) - f.vertices().iter().map(|v| 2 * v.len() as i64 - 3).sum::<i64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(circle: u32, p: &[(u32, u32)]) -> Matching {
        Matching::new(circle, p).unwrap()
    }

    #[test]
    fn triple_vertex() {
        let f = forest_valid(&m(12, &[(1, 7), (3, 9), (5, 11)])).unwrap();
        assert_eq!(f.vertices().len(), 1);
        assert_eq!(f.vertices()[0].len(), 3);
        assert_eq!(degree_forest(&f), 1);
    }

    #[test]
    fn two_simple_crossings() {
        let f = forest_valid(&m(12, &[(0, 6), (2, 10), (4, 8)])).unwrap();
        let vs: Vec<Vec<Branch>> = (0..2).map(|v| f.vertex_branches(v)).collect();
        assert_eq!(vs.len(), 2);
        assert!(vs.iter().all(|v| v.len() == 2 && v.contains(&Branch { a: 0, b: 6 })));
    }

    #[test]
    fn noncrossing_has_no_vertices() {
        let f = forest_valid(&m(6, &[(0, 1), (2, 5), (3, 4)])).unwrap();
        assert!(f.vertices().is_empty());
        assert_eq!(degree_forest(&f), 4);
    }

    #[test]
    fn shared_pair_is_invalid() {
        // {1,5} and {2,6} are crossed by both {0,3} and {4,7}, which do not cross
        let bad = m(8, &[(0, 3), (1, 5), (2, 6), (4, 7)]);
        assert!(matches!(forest_valid(&bad), Err(Invalidity::TwoMaximalSets { .. })));
        assert!(!crossing_cycle_oracle(&bad).unwrap());
        let single = m(4, &[(0, 2), (1, 3)]);
        assert!(crossing_cycle_oracle(&single).unwrap());
    }

    #[test]
    fn oracle_capacity() {
        let pairs: Vec<(u32, u32)> = (0..11).map(|i| (2 * i, 2 * i + 1)).collect();
        assert!(crossing_cycle_oracle(&m(22, &pairs)).is_err());
    }
}
