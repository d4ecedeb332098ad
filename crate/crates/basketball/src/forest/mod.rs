//! Circular forests: matchings on cyclically labelled leaves, their internal
//! vertices, validity, crossing sets and the dihedral action.

mod basketball;
mod dihedral;
mod order;
mod validity;

pub use basketball::{basketball_admissible, Basketball, BasketballVertex, Inadmissible, VertexKind};
pub use dihedral::DihedralElement;
pub use order::{crossing_set, down_set, poset_leq};
pub use validity::{crossing_cycle_oracle, degree_forest, forest_valid, vertices_of, CircularForest, Invalidity};

use std::fmt;

use crate::error::{Error, Result};

/// Unordered pair of leaf labels, stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Branch {
    pub a: u32,
    pub b: u32,
}

impl Branch {
    pub fn new(x: u32, y: u32) -> Result<Branch> {
        if x == y {
            return Err(Error::InvalidBranch(format!("degenerate branch {{{x},{y}}}")));
        }
        Ok(Branch { a: x.min(y), b: x.max(y) })
    }

    pub fn has(&self, k: u32) -> bool {
        self.a == k || self.b == k
    }

    pub fn other(&self, k: u32) -> u32 {
        if self.a == k {
            self.b
        } else {
            self.a
        }
    }

    /// Strictly between the endpoints, going up from `a`.
    #[inline]
    pub fn inside(&self, k: u32) -> bool {
        self.a < k && k < self.b
    }
}

#[inline]
pub(crate) fn crosses_unchecked(p: Branch, q: Branch) -> bool {
    p.inside(q.a) != p.inside(q.b)
}

/// Cyclic interleaving of endpoints.
pub fn crosses(p: Branch, q: Branch) -> Result<bool> {
    if p.has(q.a) || p.has(q.b) {
        return Err(Error::InvalidBranch(format!(
            "branches {{{},{}}} and {{{},{}}} share an endpoint",
            p.a, p.b, q.a, q.b
        )));
    }
    Ok(crosses_unchecked(p, q))
}

/// The branches pass through one vertex: in cyclic endpoint order each
/// endpoint is paired with the one `m` places further on.
pub fn sommet_check(branches: &[Branch]) -> bool {
    let m = branches.len();
    if m < 2 {
        return false;
    }
    let mut ends: Vec<u32> = branches.iter().flat_map(|b| [b.a, b.b]).collect();
    ends.sort_unstable();
    if ends.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    branches.iter().all(|br| {
        let i = ends.binary_search(&br.a).unwrap();
        let j = ends.binary_search(&br.b).unwrap();
        j - i == m
    })
}

/// Perfect matching of a set of labels on a circle of `circle` leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    circle: u32,
    branches: Vec<Branch>,
}

impl Matching {
    pub fn new(circle: u32, pairs: &[(u32, u32)]) -> Result<Matching> {
        let mut seen = vec![false; circle as usize];
        let mut branches = Vec::with_capacity(pairs.len());
        for &(x, y) in pairs {
            let br = Branch::new(x, y)?;
            for k in [br.a, br.b] {
                if k >= circle {
                    return Err(Error::InvalidBranch(format!("label {k} outside circle of {circle}")));
                }
                if seen[k as usize] {
                    return Err(Error::InvalidBranch(format!("label {k} used twice")));
                }
                seen[k as usize] = true;
            }
            branches.push(br);
        }
        branches.sort_unstable();
        Ok(Matching { circle, branches })
    }

    pub(crate) fn from_sorted(circle: u32, branches: Vec<Branch>) -> Matching {
        Matching { circle, branches }
    }

    pub fn circle(&self) -> u32 {
        self.circle
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    pub fn labels(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.branches.iter().flat_map(|b| [b.a, b.b]).collect();
        v.sort_unstable();
        v
    }

    pub fn mate(&self, k: u32) -> Option<u32> {
        self.branches.iter().find(|b| b.has(k)).map(|b| b.other(k))
    }

    pub fn is_noncrossing(&self) -> bool {
        let bs = &self.branches;
        (0..bs.len()).all(|i| (i + 1..bs.len()).all(|j| !crosses_unchecked(bs[i], bs[j])))
    }

    /// Merge two matchings on disjoint label sets of the same circle.
    pub fn union(&self, other: &Matching) -> Result<Matching> {
        if self.circle != other.circle {
            return Err(Error::Domain("matchings live on different circles".into()));
        }
        let pairs: Vec<(u32, u32)> = self.branches.iter().chain(&other.branches).map(|b| (b.a, b.b)).collect();
        Matching::new(self.circle, &pairs)
    }

    /// Parse the canonical text form `[[1,3],[5,7]]`.
    pub fn parse(text: &str, circle: u32) -> Result<Matching> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Domain(format!("malformed matching '{text}'")))?;
        let mut pairs = Vec::new();
        if !inner.is_empty() {
            let body = inner
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| Error::Domain(format!("malformed matching '{text}'")))?;
            for pair in body.split("],[") {
                let nums: Vec<&str> = pair.split(',').collect();
                if nums.len() != 2 {
                    return Err(Error::Domain(format!("malformed pair '{pair}'")));
                }
                let parse = |s: &str| s.parse::<u32>().map_err(|_| Error::Domain(format!("bad label '{s}'")));
                pairs.push((parse(nums[0])?, parse(nums[1])?));
            }
        }
        Matching::new(circle, &pairs)
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, b) in self.branches.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[{},{}]", b.a, b.b)?;
        }
        write!(f, "]")
    }
}

/// Orientation of a basketball branch: from the endpoint ≢ 0,1 (mod 4) to the one ≡ 0,1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Oriented { from: u32, to: u32 },
    Ambiguous,
}

pub fn orient_branch(b: Branch) -> Orientation {
    let head = |k: u32| k % 4 <= 1;
    match (head(b.a), head(b.b)) {
        (false, true) => Orientation::Oriented { from: b.a, to: b.b },
        (true, false) => Orientation::Oriented { from: b.b, to: b.a },
        _ => Orientation::Ambiguous,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn br(a: u32, b: u32) -> Branch {
        Branch::new(a, b).unwrap()
    }

    #[test]
    fn crossing_examples() {
        assert!(crosses(br(1, 5), br(3, 9)).unwrap());
        assert!(!crosses(br(0, 6), br(2, 4)).unwrap());
        assert!(!crosses(br(1, 3), br(5, 7)).unwrap());
        assert!(crosses(br(1, 3), br(3, 7)).is_err());
    }

    #[test]
    fn sommet_examples() {
        assert!(sommet_check(&[br(1, 7), br(3, 9), br(5, 11)]));
        assert!(!sommet_check(&[br(0, 6), br(2, 10), br(4, 8)]));
        assert!(sommet_check(&[br(2, 9), br(4, 11)]));
    }

    #[test]
    fn text_round_trip() {
        let m = Matching::new(12, &[(5, 7), (1, 3), (11, 9)]).unwrap();
        assert_eq!(m.to_string(), "[[1,3],[5,7],[9,11]]");
        assert_eq!(Matching::parse(&m.to_string(), 12).unwrap(), m);
        assert_eq!(Matching::parse("[]", 4).unwrap().len(), 0);
        assert!(Matching::parse("[[1,3],[3,5]]", 8).is_err());
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orient_branch(br(3, 9)), Orientation::Oriented { from: 3, to: 9 });
        assert_eq!(orient_branch(br(0, 6)), Orientation::Oriented { from: 6, to: 0 });
        assert_eq!(orient_branch(br(0, 4)), Orientation::Ambiguous);
    }
}
