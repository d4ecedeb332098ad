//! Basketballs: orthogonal pairs of circular forests on `4n` interlaced leaves.
//!
//! Odd labels carry the real component `R`, even labels the imaginary component
//! `I`. The arc between leaves `k` and `k+1` lies, near infinity, in the region
//! where `f` takes values in quadrant `k mod 4`. Admissibility asks that every
//! face of the union forest changes colour exactly once along its boundary,
//! that quadrants turn counterclockwise around every root, and that around a
//! self-intersection of one colour only the two quadrants on one side of the
//! corresponding axis appear.

use super::{crosses_unchecked, forest_valid, Branch, CircularForest, DihedralElement, Invalidity, Matching};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    PureR,
    PureI,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasketballVertex {
    pub branches: Vec<Branch>,
    pub m_r: usize,
    pub m_i: usize,
}

impl BasketballVertex {
    pub fn kind(&self) -> VertexKind {
        match (self.m_r, self.m_i) {
            (_, 0) => VertexKind::PureR,
            (0, _) => VertexKind::PureI,
            _ => VertexKind::Mixed,
        }
    }

    /// Codimension of the stratum this vertex imposes.
    pub fn codimension(&self) -> i64 {
        match self.kind() {
            VertexKind::Mixed => 2 * (self.m_r as i64 - 1),
            VertexKind::PureR => 2 * self.m_r as i64 - 3,
            VertexKind::PureI => 2 * self.m_i as i64 - 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inadmissible {
    Parity(String),
    InvalidR(Invalidity),
    InvalidI(Invalidity),
    InvalidUnion(Invalidity),
    IsolatedComponent { leaves: Vec<u32> },
    Unbalanced { m_r: usize, m_i: usize },
    Faces(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basketball {
    n: usize,
    r: CircularForest,
    i: CircularForest,
    union: CircularForest,
    vertices: Vec<BasketballVertex>,
}

impl Basketball {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> &CircularForest {
        &self.r
    }

    pub fn i(&self) -> &CircularForest {
        &self.i
    }

    pub fn union(&self) -> &CircularForest {
        &self.union
    }

    pub fn vertices(&self) -> &[BasketballVertex] {
        &self.vertices
    }

    /// Cell degree `2(n−1) − Σ codim(v)`.
    pub fn degree(&self) -> i64 {
        2 * (self.n as i64 - 1) - self.vertices.iter().map(|v| v.codimension()).sum::<i64>()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.r.vertices().is_empty() && self.i.vertices().is_empty()
    }

    /// Canonical identity of the cell.
    pub fn key(&self) -> (Matching, Matching) {
        (self.r.matching().clone(), self.i.matching().clone())
    }

    /// Relabel; odd rotations exchange the two components.
    pub fn act(&self, g: &DihedralElement) -> Basketball {
        let u = g.act(self.union.matching());
        let (r, i) = split_by_parity(&u);
        basketball_admissible(&r, &i).expect("the dihedral action preserves admissibility")
    }
}

pub(crate) fn split_by_parity(u: &Matching) -> (Matching, Matching) {
    let (odd, even): (Vec<Branch>, Vec<Branch>) = u.branches().iter().partition(|b| b.a % 2 == 1);
    (Matching::from_sorted(u.circle(), odd), Matching::from_sorted(u.circle(), even))
}

fn check_parity(m: &Matching, parity: u32, what: &str) -> Result<(), Inadmissible> {
    let c = m.circle();
    if c % 4 != 0 || c == 0 {
        return Err(Inadmissible::Parity(format!("circle of {c} leaves is not 4n")));
    }
    let want: Vec<u32> = (0..c).filter(|k| k % 2 == parity).collect();
    if m.labels() != want {
        return Err(Inadmissible::Parity(format!("{what} does not match the {what} leaves")));
    }
    Ok(())
}

pub fn basketball_admissible(r: &Matching, i: &Matching) -> Result<Basketball, Inadmissible> {
    check_parity(r, 1, "R")?;
    check_parity(i, 0, "I")?;
    if r.circle() != i.circle() {
        return Err(Inadmissible::Parity("components on different circles".into()));
    }
    let n = (r.circle() / 4) as usize;
    let rf = forest_valid(r).map_err(Inadmissible::InvalidR)?;
    let fi = forest_valid(i).map_err(Inadmissible::InvalidI)?;
    let u = r.union(i).expect("disjoint parities");
    let uf = forest_valid(&u).map_err(Inadmissible::InvalidUnion)?;

    for (own, other) in [(&rf, i), (&fi, r)] {
        for block in own.components() {
            let meets = own
                .matching()
                .branches()
                .iter()
                .filter(|b| block.contains(&b.a))
                .any(|b| other.branches().iter().any(|o| crosses_unchecked(*b, *o)));
            if !meets {
                return Err(Inadmissible::IsolatedComponent { leaves: block });
            }
        }
    }

    let vertices: Vec<BasketballVertex> = (0..uf.vertices().len())
        .map(|v| {
            let branches = uf.vertex_branches(v);
            let m_r = branches.iter().filter(|b| b.a % 2 == 1).count();
            BasketballVertex { m_i: branches.len() - m_r, m_r, branches }
        })
        .collect();
    for v in &vertices {
        if v.kind() == VertexKind::Mixed && v.m_r != v.m_i {
            return Err(Inadmissible::Unbalanced { m_r: v.m_r, m_i: v.m_i });
        }
    }
    check_faces(&uf, &vertices).map_err(Inadmissible::Faces)?;
    Ok(Basketball { n, r: rf, i: fi, union: uf, vertices })
}

/// Walk the boundary of each of the `4n` faces and check the quadrant labels.
fn check_faces(uf: &CircularForest, vertices: &[BasketballVertex]) -> Result<(), String> {
    let m = uf.matching();
    let bs = m.branches();
    let circle = m.circle();
    let branch_of = |leaf: u32| bs.iter().position(|b| b.has(leaf)).expect("perfect matching");

    // vertices met along each branch, ordered from its endpoint `a` to `b`
    let mut along: Vec<Vec<usize>> = vec![Vec::new(); bs.len()];
    for (vi, v) in uf.vertices().iter().enumerate() {
        for &bi in v {
            along[bi].push(vi);
        }
    }
    for (bi, list) in along.iter_mut().enumerate() {
        let br = bs[bi];
        list.sort_by_key(|&vi| {
            uf.vertices()[vi]
                .iter()
                .filter(|&&o| o != bi)
                .flat_map(|&o| [bs[o].a, bs[o].b])
                .filter(|&e| br.inside(e))
                .min()
                .unwrap_or(u32::MAX)
        });
    }
    let ends: Vec<Vec<u32>> = vertices
        .iter()
        .map(|v| {
            let mut e: Vec<u32> = v.branches.iter().flat_map(|b| [b.a, b.b]).collect();
            e.sort_unstable();
            e
        })
        .collect();
    let mut corner: Vec<Vec<Option<u32>>> = ends.iter().map(|e| vec![None; e.len()]).collect();

    for k in 0..circle {
        let start = (k + 1) % circle;
        let mut bi = branch_of(start);
        let mut from = start;
        let mut pos: Option<usize> = None;
        let mut colour = start % 2;
        let mut switches = 0;
        let mut guard = 0;
        loop {
            guard += 1;
            if guard > 4 * circle as usize + 4 {
                return Err(format!("face walk from leaf {start} does not close"));
            }
            let br = bs[bi];
            let list = &along[bi];
            let toward_b = from == br.a;
            let next = match (pos, toward_b) {
                (None, true) => list.first().map(|_| 0),
                (None, false) => list.len().checked_sub(1),
                (Some(p), true) => (p + 1 < list.len()).then_some(p + 1),
                (Some(p), false) => p.checked_sub(1),
            };
            let Some(p) = next else {
                break;
            };
            let vi = list[p];
            let e = &ends[vi];
            let j = e.binary_search(&from).expect("branch passes through vertex");
            let c = (j + e.len() - 1) % e.len();
            if let Some(prev) = corner[vi][c] {
                if prev != k % 4 {
                    return Err(format!("corner lies in quadrants {prev} and {}", k % 4));
                }
            }
            corner[vi][c] = Some(k % 4);
            let leave = e[c];
            if leave % 2 != colour {
                switches += 1;
                colour = leave % 2;
            }
            bi = branch_of(leave);
            from = bs[bi].other(leave);
            pos = along[bi].iter().position(|&x| x == vi);
        }
        if switches != 1 {
            return Err(format!("face between leaves {k} and {start} changes colour {switches} times"));
        }
    }

    for (vi, v) in vertices.iter().enumerate() {
        let res: Vec<u32> = corner[vi]
            .iter()
            .map(|c| c.ok_or_else(|| "corner outside every face".to_string()))
            .collect::<Result<_, _>>()?;
        let len = res.len();
        match v.kind() {
            VertexKind::Mixed => {
                if (0..len).any(|j| (res[(j + 1) % len] + 4 - res[j]) % 4 != 1) {
                    return Err(format!("quadrants do not turn around a root: {res:?}"));
                }
            }
            kind => {
                // the two quadrants on one side of an axis: {0,1} or {2,3} for R, {1,2} or {3,0} for I
                let base = *res.iter().find(|&&q| res.contains(&((q + 1) % 4))).unwrap_or(&res[0]);
                let want_parity = if kind == VertexKind::PureR { 0 } else { 1 };
                let alternate = (0..len).all(|j| res[j] != res[(j + 1) % len])
                    && res.iter().all(|&q| q == base || q == (base + 1) % 4);
                if base % 2 != want_parity || !alternate {
                    return Err(format!("inconsistent quadrants around a self-intersection: {res:?}"));
                }
            }
        }
    }
    Ok(())
}
