use super::Matching;

/// `k ↦ ±k + rotation (mod modulus)`; the sign is negative when `flip` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DihedralElement {
    pub rotation: u32,
    pub flip: bool,
    pub modulus: u32,
}

impl DihedralElement {
    pub fn identity(modulus: u32) -> Self {
        DihedralElement { rotation: 0, flip: false, modulus }
    }

    pub fn rotation(r: u32, modulus: u32) -> Self {
        DihedralElement { rotation: r % modulus, flip: false, modulus }
    }

    /// `k ↦ −k + r`.
    pub fn reflection(r: u32, modulus: u32) -> Self {
        DihedralElement { rotation: r % modulus, flip: true, modulus }
    }

    pub fn apply(&self, k: u32) -> u32 {
        let n = self.modulus;
        if self.flip {
            (self.rotation + n - k % n) % n
        } else {
            (k + self.rotation) % n
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.modulus;
        let r = if self.flip {
            (self.rotation + n - other.rotation) % n
        } else {
            (self.rotation + other.rotation) % n
        };
        DihedralElement { rotation: r, flip: self.flip != other.flip, modulus: n }
    }

    pub fn inverse(&self) -> Self {
        if self.flip {
            *self
        } else {
            DihedralElement::rotation(self.modulus - self.rotation, self.modulus)
        }
    }

    /// All `2·modulus` elements.
    pub fn all(modulus: u32) -> Vec<Self> {
        (0..modulus)
            .flat_map(|r| [DihedralElement::rotation(r, modulus), DihedralElement::reflection(r, modulus)])
            .collect()
    }

    /// The rotations by multiples of `step`.
    pub fn rotations(modulus: u32, step: u32) -> Vec<Self> {
        (0..modulus).step_by(step as usize).map(|r| DihedralElement::rotation(r, modulus)).collect()
    }

    pub fn act(&self, m: &Matching) -> Matching {
        let pairs: Vec<(u32, u32)> = m.branches().iter().map(|b| (self.apply(b.a), self.apply(b.b))).collect();
        Matching::new(m.circle(), &pairs).expect("relabelling is a bijection")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws() {
        let n = 12;
        let all = DihedralElement::all(n);
        assert_eq!(all.len(), 24);
        for g in &all {
            for h in &all {
                let gh = g.compose(h);
                for k in 0..n {
                    assert_eq!(gh.apply(k), g.apply(h.apply(k)));
                }
            }
            assert_eq!(g.compose(&g.inverse()), DihedralElement::identity(n));
        }
        let psi = DihedralElement::rotation(1, n);
        let mut p = DihedralElement::identity(n);
        for _ in 0..n {
            p = p.compose(&psi);
        }
        assert_eq!(p, DihedralElement::identity(n));
        let tau = DihedralElement::reflection(n - 1, n);
        assert_eq!(tau.apply(0), n - 1);
        assert_eq!(tau.compose(&tau), DihedralElement::identity(n));
    }
}
