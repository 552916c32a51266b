//! Simplices and cubes as vertex/corner tuples, with their structure maps.
//!
//! A cube of dimension `n` lists its `2ⁿ` corners by the integer
//! `a = a₁ + 2a₂ + … + 2ⁿ⁻¹aₙ`.

use serde::Serialize;

use super::selector::Interval;
use crate::error::{Error, Result};
use crate::spaces::{FiniteClosureSpace, ProductKind, SpaceMap};

pub(crate) fn insert_bit(b: usize, pos: usize, bit: usize) -> usize {
    let low = b & ((1 << pos) - 1);
    low | bit << pos | (b >> pos) << (pos + 1)
}

pub(crate) fn remove_bit(a: usize, pos: usize) -> usize {
    let low = a & ((1 << pos) - 1);
    low | (a >> (pos + 1)) << pos
}

pub(crate) fn simplex_face_raw(v: &[u8], i: usize) -> Vec<u8> {
    let mut out = v.to_vec();
    out.remove(i);
    out
}

pub(crate) fn simplex_is_degenerate_raw(v: &[u8]) -> bool {
    v.windows(2).any(|w| w[0] == w[1])
}

/// `A_i` for `eps = 0`, `B_i` for `eps = 1`; `i` is 1-based.
pub(crate) fn cube_face_raw(q: &[u8], i: usize, eps: usize) -> Vec<u8> {
    let half = q.len() / 2;
    (0..half).map(|b| q[insert_bit(b, i - 1, eps)]).collect()
}

pub(crate) fn cube_is_degenerate_raw(q: &[u8]) -> bool {
    let n = q.len().trailing_zeros() as usize;
    (0..n).any(|i| (0..q.len()).all(|a| a >> i & 1 == 1 || q[a] == q[a | 1 << i]))
}

/// `(fσ)(a) = σ(ℓ(a))` with `ℓ(a)` the number of leading ones of
/// `(a₁, …, aₙ)`.
pub(crate) fn comparison_raw(v: &[u8]) -> Vec<u8> {
    let n = v.len() - 1;
    (0..1usize << n)
        .map(|a| v[(a.trailing_ones() as usize).min(n)])
        .collect()
}

fn continuous_on(domain: &FiniteClosureSpace, target: &FiniteClosureSpace, f: &[usize]) -> bool {
    (0..domain.len()).all(|a| {
        let c = target.singleton_closure(f[a]);
        domain.singleton_closure(a).iter().all(|b| c.contains(f[b]))
    })
}

/// A singular simplex: vertices `σ(0), …, σ(n)` of a continuous map
/// `Δⁿ_J → X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Simplex {
    vertices: Vec<usize>,
}

impl Simplex {
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::input("a simplex needs at least one vertex"));
        }
        Ok(Simplex { vertices })
    }

    pub(crate) fn from_raw(v: &[u8]) -> Self {
        Simplex {
            vertices: v.iter().map(|&x| x as usize).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// `dᵢ`: deletes vertex `i`.
    pub fn face(&self, i: usize) -> Result<Simplex> {
        let n = self.dim();
        if n == 0 || i > n {
            return Err(Error::index(i, 0, n));
        }
        let mut v = self.vertices.clone();
        v.remove(i);
        Ok(Simplex { vertices: v })
    }

    /// `sᵢ`: repeats vertex `i`.
    pub fn degeneracy(&self, i: usize) -> Result<Simplex> {
        let n = self.dim();
        if i > n {
            return Err(Error::index(i, 0, n));
        }
        let mut v = self.vertices.clone();
        v.insert(i, v[i]);
        Ok(Simplex { vertices: v })
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.windows(2).any(|w| w[0] == w[1])
    }

    /// Whether the vertex sequence is a continuous map out of `Δⁿ_J`.
    pub fn is_valid(&self, space: &FiniteClosureSpace, interval: Interval) -> bool {
        self.vertices.iter().all(|&v| v < space.len())
            && continuous_on(&interval.simplex_domain(self.dim()), space, &self.vertices)
    }

    /// `f ∘ σ`.
    pub fn postcompose(&self, f: &SpaceMap) -> Result<Simplex> {
        f.require_continuous()?;
        Ok(Simplex {
            vertices: self.vertices.iter().map(|&v| f.apply(v)).collect(),
        })
    }

    /// Vertices `0..=p`.
    pub fn front(&self, p: usize) -> Simplex {
        Simplex {
            vertices: self.vertices[..=p].to_vec(),
        }
    }

    /// Vertices `n−q..=n`.
    pub fn back(&self, q: usize) -> Simplex {
        Simplex {
            vertices: self.vertices[self.dim() - q..].to_vec(),
        }
    }
}

/// A singular cube: the corner values of a continuous map `J^{⊗n} → X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cube {
    dim: usize,
    corners: Vec<usize>,
}

impl Cube {
    pub fn new(dim: usize, corners: Vec<usize>) -> Result<Self> {
        if dim > 6 || corners.len() != 1 << dim {
            return Err(Error::input(format!(
                "a {dim}-cube needs 2^{dim} corners, got {}",
                corners.len()
            )));
        }
        Ok(Cube { dim, corners })
    }

    pub(crate) fn from_raw(q: &[u8]) -> Self {
        Cube {
            dim: q.len().trailing_zeros() as usize,
            corners: q.iter().map(|&x| x as usize).collect(),
        }
    }

    fn raw(&self) -> Vec<u8> {
        self.corners.iter().map(|&x| x as u8).collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn corners(&self) -> &[usize] {
        &self.corners
    }

    /// Value at the corner `(a₁, …, aₙ)`.
    pub fn at(&self, coords: &[usize]) -> usize {
        let a = coords
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &x)| acc | (x & 1) << i);
        self.corners[a]
    }

    /// `Aᵢ` (`eps = 0`) or `Bᵢ` (`eps = 1`), for `1 ≤ i ≤ n`.
    pub fn face(&self, i: usize, eps: usize) -> Result<Cube> {
        if i == 0 || i > self.dim || eps > 1 {
            return Err(Error::index(i, 1, self.dim));
        }
        Ok(Cube {
            dim: self.dim - 1,
            corners: (0..1 << (self.dim - 1))
                .map(|b| self.corners[insert_bit(b, i - 1, eps)])
                .collect(),
        })
    }

    /// `sᵢ`: a cube of one dimension more that ignores coordinate `i`,
    /// for `1 ≤ i ≤ n + 1`.
    pub fn degeneracy(&self, i: usize) -> Result<Cube> {
        if i == 0 || i > self.dim + 1 {
            return Err(Error::index(i, 1, self.dim + 1));
        }
        Ok(Cube {
            dim: self.dim + 1,
            corners: (0..1 << (self.dim + 1))
                .map(|a| self.corners[remove_bit(a, i - 1)])
                .collect(),
        })
    }

    /// `Γᵢᵉ`: feeds `m_ε(aᵢ, aᵢ₊₁)` into coordinate `i`, where `m¹ = min`
    /// and `m⁰ = max`; `1 ≤ i ≤ n`.
    pub fn connection(&self, i: usize, eps: usize) -> Result<Cube> {
        if i == 0 || i > self.dim || eps > 1 {
            return Err(Error::index(i, 1, self.dim));
        }
        let p = i - 1;
        let corners = (0..1 << (self.dim + 1))
            .map(|a| {
                let (x, y) = (a >> p & 1, a >> (p + 1) & 1);
                let m = if eps == 1 { x & y } else { x | y };
                let b = remove_bit(a, p + 1);
                self.corners[(b & !(1 << p)) | m << p]
            })
            .collect();
        Ok(Cube {
            dim: self.dim + 1,
            corners,
        })
    }

    /// Some `Aᵢ = Bᵢ`.
    pub fn is_degenerate(&self) -> bool {
        cube_is_degenerate_raw(&self.raw())
    }

    pub fn is_valid(
        &self,
        space: &FiniteClosureSpace,
        interval: Interval,
        product: ProductKind,
    ) -> bool {
        self.corners.iter().all(|&v| v < space.len())
            && interval
                .cube_domain(product, self.dim)
                .is_ok_and(|d| continuous_on(&d, space, &self.corners))
    }

    pub fn postcompose(&self, f: &SpaceMap) -> Result<Cube> {
        f.require_continuous()?;
        Ok(Cube {
            dim: self.dim,
            corners: self.corners.iter().map(|&v| f.apply(v)).collect(),
        })
    }
}

/// The comparison map from simplices to cubes of the product theory.
pub fn comparison_map(s: &Simplex) -> Cube {
    let n = s.dim();
    Cube {
        dim: n,
        corners: (0..1usize << n)
            .map(|a| s.vertices[(a.trailing_ones() as usize).min(n)])
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    fn q(v: &[usize]) -> Cube {
        Cube::new(v.len().trailing_zeros() as usize, v.to_vec()).unwrap()
    }

    #[test]
    fn simplex_operators() {
        assert_eq!(s(&[7, 8, 9]).face(1).unwrap(), s(&[7, 9]));
        assert_eq!(s(&[7, 8]).degeneracy(0).unwrap(), s(&[7, 7, 8]));
        assert!(s(&[7]).face(0).is_err());
        assert!(s(&[7, 8]).degeneracy(2).is_err());
        assert_eq!(s(&[1, 2, 3, 4]).front(1), s(&[1, 2]));
        assert_eq!(s(&[1, 2, 3, 4]).back(1), s(&[3, 4]));
    }

    #[test]
    fn cube_operators() {
        let e = q(&[5, 6]);
        assert_eq!(e.face(1, 0).unwrap(), q(&[5]));
        assert_eq!(e.face(1, 1).unwrap(), q(&[6]));
        assert!(e.face(2, 0).is_err());
        let c = q(&[5]).degeneracy(1).unwrap();
        assert_eq!(c, q(&[5, 5]));
        assert!(c.is_degenerate());
        assert_eq!(e.connection(1, 1).unwrap(), q(&[5, 5, 5, 6]));
        assert_eq!(e.connection(1, 0).unwrap(), q(&[5, 6, 6, 6]));
        assert_eq!(q(&[3, 3]).connection(1, 0).unwrap(), q(&[3; 4]));
        let sq = q(&[0, 1, 2, 3]);
        assert!(!sq.is_degenerate());
        assert_eq!(sq.at(&[0, 1]), 2);
        assert_eq!(sq.face(2, 1).unwrap(), q(&[2, 3]));
    }

    #[test]
    fn comparison_examples() {
        assert_eq!(comparison_map(&s(&[4, 9])), q(&[4, 9]));
        // Corners (a₁,a₂) = (0,0),(1,0),(0,1),(1,1) ↦ p, q, p, r.
        assert_eq!(comparison_map(&s(&[1, 2, 3])), q(&[1, 2, 1, 3]));
        assert_eq!(comparison_map(&s(&[1, 2, 3])).at(&[0, 1]), 1);
        assert_eq!(comparison_map(&s(&[1, 2, 3])).at(&[1, 0]), 2);
    }
}
