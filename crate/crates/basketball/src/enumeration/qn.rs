//! Real components of the family `zⁿ − n(a+bi)z + (n−1)(c+di)`.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::CellEnumerator;
use crate::error::{Error, Result};
use crate::forest::{forest_valid, Matching};

/// Largest `n` for [`qn_embedding_census`].
pub const QN_EMBEDDING_CAP: usize = 6;

/// `x + (n²−2n)x² + (2n²−4n)x³ + (n²−2n+2)x⁴`: cells of `(a, b, c)`-space,
/// graded by dimension plus one.
pub fn qn_enumerator(n: usize) -> Result<CellEnumerator> {
    if n < 2 {
        return Err(Error::Domain(format!("the family needs n ≥ 2, got {n}")));
    }
    let n = n as u64;
    let m = n * n - 2 * n;
    Ok(CellEnumerator::from_counts(&[0, 1, m, 2 * m, m + 2]))
}

/// The total `3n² − 5n + 3` quoted alongside the enumerator. It agrees with the
/// enumerator's coefficient sum `4n² − 8n + 3` only at `n = 3`.
pub fn qn_quoted_total(n: usize) -> u64 {
    let n = n as u64;
    3 * n * n + 3 - 5 * n
}

/// A circular `k`-tree on the odd leaves `1, 3, …, 4k−1`, with the leaves
/// hanging from each internal node.
struct KTree {
    branches: &'static [(u32, u32)],
    nodes: &'static [&'static [u32]],
}

const CATALOGUE: &[KTree] = &[
    KTree { branches: &[(1, 3)], nodes: &[] },
    KTree { branches: &[(1, 5), (3, 7)], nodes: &[&[1, 3, 5, 7]] },
    KTree { branches: &[(1, 5), (3, 9), (7, 11)], nodes: &[&[1, 3, 5], &[7, 9, 11]] },
    KTree { branches: &[(1, 7), (3, 11), (5, 9)], nodes: &[&[11, 1, 3], &[5, 7, 9]] },
    KTree { branches: &[(1, 9), (3, 7), (5, 11)], nodes: &[&[3, 5, 7], &[9, 11, 1]] },
];

/// True when the positions (indices into a cycle of length `len`) form one run.
fn cyclic_run(pos: &[usize], len: usize) -> bool {
    let mut p = pos.to_vec();
    p.sort_unstable();
    let breaks = (0..p.len()).filter(|&j| (p[(j + 1) % p.len()] + len - p[j]) % len != 1).count();
    breaks <= 1 || p.len() == len
}

/// Matching on the odd leaves of a `4n` circle obtained by embedding `tree`
/// at the leaf positions `image` (increasing indices into `1, 3, …, 4n−1`),
/// or `None` when conditions (2) or (3) fail.
fn embed(tree: &KTree, image: &[usize], n: usize) -> Option<Matching> {
    let npts = 2 * n;
    let label = |p: usize| 2 * p as u32 + 1;
    let k = tree.branches.len();
    // position of tree leaf 2j+1 is image[j]
    let pos_of = |leaf: u32| image[(leaf as usize - 1) / 2];
    match k {
        2 => {
            let ok = cyclic_run(image, npts)
                || (0..4).any(|skip| {
                    let rest: Vec<usize> = image.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &p)| p).collect();
                    cyclic_run(&rest, npts)
                });
            if !ok {
                return None;
            }
        }
        3 => {
            for node in tree.nodes {
                let ps: Vec<usize> = node.iter().map(|&l| pos_of(l)).collect();
                if !cyclic_run(&ps, npts) {
                    return None;
                }
            }
        }
        _ => {}
    }
    let mut pairs: Vec<(u32, u32)> = tree.branches.iter().map(|&(a, b)| (label(pos_of(a)), label(pos_of(b)))).collect();
    for j in 0..image.len() {
        let (c, e) = (image[j], image[(j + 1) % image.len()]);
        let gap: Vec<usize> = (1..).map(|s| (c + s) % npts).take_while(|&p| p != e).collect();
        if gap.len() % 2 == 1 {
            return None;
        }
        for w in gap.chunks(2) {
            pairs.push((label(w[0]), label(w[1])));
        }
    }
    Matching::new(4 * n as u32, &pairs).ok()
}

fn subsets(len: usize, k: usize, start: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if acc.len() == k {
        out.push(acc.clone());
        return;
    }
    for p in start..len {
        if len - p < k - acc.len() {
            break;
        }
        acc.push(p);
        subsets(len, k, p + 1, acc, out);
        acc.pop();
    }
}

/// The matching of `zⁿ + di`: every leaf joined to its antipode.
pub fn qn_diametric(n: usize) -> Matching {
    let c = 4 * n as u32;
    let pairs: Vec<(u32, u32)> = (0..n as u32).map(|j| (2 * j + 1, 2 * j + 1 + 2 * n as u32)).collect();
    Matching::new(c, &pairs).expect("antipodal pairs")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QnEmbeddingCensus {
    /// Distinct real-component matchings, each with its grading (cell dimension plus one).
    pub forests: BTreeMap<Matching, usize>,
}

impl QnEmbeddingCensus {
    pub fn count(&self) -> usize {
        self.forests.len()
    }

    pub fn enumerator(&self) -> CellEnumerator {
        CellEnumerator::from_degrees(self.forests.values().map(|&d| d as i64))
    }
}

/// All `n`-embeddings of the `k`-trees with `k ≤ 3` whose nodes have at most
/// four neighbours, together with the `zⁿ` pattern.
pub fn qn_embedding_census(n: usize) -> Result<QnEmbeddingCensus> {
    if !(3..=QN_EMBEDDING_CAP).contains(&n) {
        return Err(Error::Capacity { what: "embedding census", limit: QN_EMBEDDING_CAP, requested: n });
    }
    let mut forests = BTreeMap::new();
    for tree in CATALOGUE {
        let k = tree.branches.len();
        let mut images = Vec::new();
        subsets(2 * n, 2 * k, 0, &mut Vec::new(), &mut images);
        for image in images {
            if let Some(m) = embed(tree, &image, n) {
                if forest_valid(&m).is_err() {
                    return Err(Error::Inconsistent(format!("embedding produced invalid forest {m}")));
                }
                let grade = 5 - k;
                if let Some(old) = forests.insert(m.clone(), grade) {
                    if old != grade {
                        return Err(Error::Inconsistent(format!("{m} embeds trees of different sizes")));
                    }
                }
            }
        }
    }
    forests.insert(qn_diametric(n), 1);
    Ok(QnEmbeddingCensus { forests })
}

/// `BigUint` total of [`qn_enumerator`].
pub fn qn_enumerator_total(n: usize) -> Result<BigUint> {
    Ok(qn_enumerator(n)?.total())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerator_rows() {
        assert_eq!(qn_enumerator(3).unwrap().to_u64(), vec![0, 1, 3, 6, 5]);
        assert_eq!(qn_enumerator(4).unwrap().to_u64(), vec![0, 1, 8, 16, 10]);
        assert_eq!(qn_enumerator(4).unwrap().total(), BigUint::from(35u32));
        assert!(qn_enumerator(1).is_err());
        assert_eq!(qn_quoted_total(3), 15);
    }

    #[test]
    fn embeddings_n3_are_the_cubic_forests() {
        let c = qn_embedding_census(3).unwrap();
        assert_eq!(c.count(), 15);
        assert_eq!(c.enumerator().to_u64(), vec![0, 1, 3, 6, 5]);
    }

    #[test]
    fn embeddings_follow_enumerator() {
        for n in 3..=6 {
            assert_eq!(qn_embedding_census(n).unwrap().enumerator(), qn_enumerator(n).unwrap(), "n={n}");
        }
    }
}
