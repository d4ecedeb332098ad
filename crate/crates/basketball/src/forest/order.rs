use std::collections::BTreeSet;

use super::{crosses_unchecked, CircularForest};
use crate::error::{Error, Result};

/// Leaf pairs `{j,k}` (with `j < k`) lying on two crossing branches.
pub fn crossing_set(f: &CircularForest) -> BTreeSet<(u32, u32)> {
    let bs = f.matching().branches();
    let mut out = BTreeSet::new();
    for (i, p) in bs.iter().enumerate() {
        for q in &bs[i + 1..] {
            if crosses_unchecked(*p, *q) {
                for x in [p.a, p.b] {
                    for y in [q.a, q.b] {
                        out.insert((x.min(y), x.max(y)));
                    }
                }
            }
        }
    }
    out
}

/// `f1 ≤ f2` when the crossing set of `f1` contains that of `f2`. This is a
/// preorder: distinct forests may share a crossing set.
pub fn poset_leq(f1: &CircularForest, f2: &CircularForest) -> Result<bool> {
    if f1.matching().circle() != f2.matching().circle() || f1.matching().labels() != f2.matching().labels() {
        return Err(Error::Domain("forests on different leaf sets".into()));
    }
    Ok(crossing_set(f2).is_subset(&crossing_set(f1)))
}

pub fn down_set<'a>(f: &CircularForest, universe: &'a [CircularForest]) -> Result<Vec<&'a CircularForest>> {
    let mut out = Vec::new();
    for g in universe {
        if poset_leq(g, f)? {
            out.push(g);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{forest_valid, Matching};

    fn forest(circle: u32, p: &[(u32, u32)]) -> CircularForest {
        forest_valid(&Matching::new(circle, p).unwrap()).unwrap()
    }

    #[test]
    fn crossing_set_examples() {
        assert!(crossing_set(&forest(4, &[(0, 1), (2, 3)])).is_empty());
        assert_eq!(crossing_set(&forest(12, &[(1, 7), (3, 9), (5, 11)])).len(), 12);
        let s = crossing_set(&forest(8, &[(1, 5), (3, 7)]));
        let want: BTreeSet<(u32, u32)> = [(1, 3), (1, 7), (3, 5), (5, 7)].into_iter().collect();
        assert_eq!(s, want);
    }

    #[test]
    fn down_set_for_n2() {
        let universe = vec![forest(4, &[(0, 1), (2, 3)]), forest(4, &[(0, 2), (1, 3)]), forest(4, &[(0, 3), (1, 2)])];
        let d = down_set(&universe[0], &universe).unwrap();
        // both non-crossing forests have empty crossing sets, so they sit below each other
        assert!(d.contains(&&universe[1]));
        assert!(d.contains(&&universe[0]));
        assert_eq!(down_set(&universe[1], &universe).unwrap().len(), 1);
    }
}
