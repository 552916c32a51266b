use super::groups::{Coefficients, HomologyGroup};
use crate::error::{Error, Result};
use crate::linalg::{integer_factors, rank_mod, Factors, SparseMatrix};

/// A bounded chain complex of finitely generated free abelian groups in
/// degrees `0..=top`, optionally augmented by a rank-one group in degree −1.
///
/// `boundary(n)` maps `C_n → C_{n−1}`; `boundary(0)` is the augmentation
/// (a `0 × rank(0)` matrix when there is none). A truncated complex has
/// chains above `top` that were not built, so its homology is only known
/// through `top − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
    truncated: bool,
}

impl ChainComplex {
    /// `boundaries[n]` for `n` in `0..=top`; `boundaries[0]` has zero or one rows.
    pub fn new(boundaries: Vec<SparseMatrix>, truncated: bool) -> Result<Self> {
        if boundaries.is_empty() {
            return Err(Error::input("a chain complex needs degree 0"));
        }
        if boundaries[0].rows() > 1 {
            return Err(Error::input("augmentation target must have rank 0 or 1"));
        }
        let ranks: Vec<usize> = boundaries.iter().map(|b| b.cols()).collect();
        for n in 1..boundaries.len() {
            if boundaries[n].rows() != ranks[n - 1] {
                return Err(Error::input(format!(
                    "boundary in degree {n} has {} rows, expected {}",
                    boundaries[n].rows(),
                    ranks[n - 1]
                )));
            }
        }
        Ok(ChainComplex {
            ranks,
            boundaries,
            truncated,
        })
    }

    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn is_augmented(&self) -> bool {
        self.boundaries[0].rows() == 1
    }

    /// Highest degree whose homology is determined, if any.
    pub fn valid_through(&self) -> Option<usize> {
        if self.truncated {
            self.top().checked_sub(1)
        } else {
            Some(self.top())
        }
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundary(&self, n: usize) -> &SparseMatrix {
        &self.boundaries[n]
    }

    /// `∂_{n+1}`, or the zero map when `n` is the top degree.
    pub(crate) fn boundary_above(&self, n: usize) -> SparseMatrix {
        match self.boundaries.get(n + 1) {
            Some(b) => b.clone(),
            None => SparseMatrix::zeros(self.rank(n), 0),
        }
    }

    /// `∂∂ = 0` in every degree, including the augmentation.
    pub fn is_complex(&self) -> bool {
        (1..self.boundaries.len())
            .all(|n| self.boundaries[n - 1].mul(&self.boundaries[n]).is_zero())
    }

    /// Adds the augmentation sending every 0-cell to 1.
    pub fn augmented(&self) -> ChainComplex {
        let mut out = self.clone();
        out.boundaries[0] =
            SparseMatrix::from_columns(1, (0..self.ranks[0]).map(|_| vec![(0, 1)]).collect());
        out
    }

    /// Same complex with degrees above `top` dropped.
    pub fn truncate(&self, top: usize) -> ChainComplex {
        if top >= self.top() {
            return self.clone();
        }
        ChainComplex {
            ranks: self.ranks[..=top].to_vec(),
            boundaries: self.boundaries[..=top].to_vec(),
            truncated: true,
        }
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        match self.valid_through() {
            Some(v) if n <= v => Ok(()),
            _ if !self.truncated => Ok(()),
            _ => Err(Error::input(format!(
                "degree {n} is beyond the computed range of the complex"
            ))),
        }
    }

    /// `H_n` with the given coefficients.
    pub fn homology(&self, n: usize, coeffs: Coefficients) -> Result<HomologyGroup> {
        self.check_degree(n)?;
        if n > self.top() {
            return Ok(HomologyGroup::zero());
        }
        let below = &self.boundaries[n];
        let above = self.boundary_above(n);
        Ok(group(self.ranks[n], below, &above, coeffs))
    }

    /// `H_n` for every degree in the valid range.
    pub fn homology_all(&self, coeffs: Coefficients) -> Vec<HomologyGroup> {
        let Some(v) = self.valid_through() else {
            return vec![];
        };
        let mut out = Vec::with_capacity(v + 1);
        let mut below = facts(&self.boundaries[0], coeffs);
        for n in 0..=v {
            let above = facts(&self.boundary_above(n), coeffs);
            out.push(assemble(self.ranks[n], &below, &above, coeffs));
            below = above;
        }
        out
    }

    /// `Hⁿ`, computed from the transposed boundaries.
    pub fn cohomology(&self, n: usize, coeffs: Coefficients) -> Result<HomologyGroup> {
        self.check_degree(n)?;
        if n > self.top() {
            return Ok(HomologyGroup::zero());
        }
        let delta_prev = self.boundaries[n].transpose();
        let delta = self.boundary_above(n).transpose();
        let into = facts(&delta_prev, coeffs);
        let out = facts(&delta, coeffs);
        Ok(assemble(self.ranks[n], &out, &into, coeffs))
    }

    pub fn cohomology_all(&self, coeffs: Coefficients) -> Vec<HomologyGroup> {
        match self.valid_through() {
            None => vec![],
            Some(v) => (0..=v)
                .map(|n| self.cohomology(n, coeffs).expect("degree in range"))
                .collect(),
        }
    }

    /// `C ⊕ D`; both must agree on augmentation.
    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if self.is_augmented() || other.is_augmented() {
            return Err(Error::input("direct sum of augmented complexes"));
        }
        let eff = |c: &ChainComplex| if c.truncated { c.top() } else { usize::MAX };
        let top = eff(self).min(eff(other)).min(self.top().max(other.top()));
        let bnds = (0..=top)
            .map(|n| pad(self, n).block_diag(&pad(other, n)))
            .collect();
        ChainComplex::new(bnds, self.truncated || other.truncated)
    }

    /// `C ⊗ D` with `∂(a ⊗ b) = ∂a ⊗ b + (−1)^p a ⊗ ∂b`. The basis of
    /// `(C ⊗ D)_n` lists the blocks `C_p ⊗ D_{n−p}` by increasing `p`, each in
    /// Kronecker order.
    pub fn tensor(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if self.is_augmented() || other.is_augmented() {
            return Err(Error::input("tensor product of augmented complexes"));
        }
        let (tc, td) = (self.top(), other.top());
        let top = match (self.truncated, other.truncated) {
            (false, false) => tc + td,
            (true, false) => tc,
            (false, true) => td,
            (true, true) => tc.min(td),
        };
        let truncated = self.truncated || other.truncated;
        let offsets = |n: usize| -> Vec<usize> {
            let mut acc = 0;
            let mut v = Vec::with_capacity(n + 2);
            for p in 0..=n {
                v.push(acc);
                acc += self.rank(p) * other.rank(n - p);
            }
            v.push(acc);
            v
        };
        let mut bnds = Vec::with_capacity(top + 1);
        bnds.push(SparseMatrix::zeros(0, offsets(0)[1]));
        for n in 1..=top {
            let src = offsets(n);
            let dst = offsets(n - 1);
            let mut cols: Vec<Vec<(usize, i64)>> = vec![Vec::new(); src[n + 1]];
            for p in 0..=n {
                let q = n - p;
                let (cp, dq) = (self.rank(p), other.rank(q));
                for a in 0..cp {
                    for b in 0..dq {
                        let col = &mut cols[src[p] + a * dq + b];
                        if p > 0 {
                            let dq_rows = other.rank(q);
                            for (r, v) in self.boundaries[p].column(a) {
                                col.push((dst[p - 1] + r * dq_rows + b, v));
                            }
                        }
                        if q > 0 {
                            let sign = if p % 2 == 0 { 1 } else { -1 };
                            let dq1 = other.rank(q - 1);
                            for (r, v) in other.boundaries[q].column(b) {
                                col.push((dst[p] + a * dq1 + r, sign * v));
                            }
                        }
                    }
                }
            }
            bnds.push(SparseMatrix::from_columns(dst[n], cols));
        }
        ChainComplex::new(bnds, truncated)
    }
}

fn pad(c: &ChainComplex, n: usize) -> SparseMatrix {
    if n <= c.top() {
        c.boundaries[n].clone()
    } else {
        SparseMatrix::zeros(c.rank(n.saturating_sub(1)), 0)
    }
}

/// Rank of a boundary and, over the integers, its torsion.
pub(crate) struct BoundaryFacts {
    rank: usize,
    torsion: Vec<crate::linalg::Integer>,
}

pub(crate) fn facts(m: &SparseMatrix, coeffs: Coefficients) -> BoundaryFacts {
    match coeffs {
        Coefficients::Integers => {
            let Factors { rank, torsion } = integer_factors(m);
            BoundaryFacts { rank, torsion }
        }
        Coefficients::Rationals => BoundaryFacts {
            rank: integer_factors(m).rank,
            torsion: vec![],
        },
        Coefficients::Mod(p) => BoundaryFacts {
            rank: rank_mod(m, p),
            torsion: vec![],
        },
    }
}

/// `ker(out) / im(into)` where `out` leaves and `into` enters a group of
/// the given rank.
fn assemble(
    rank: usize,
    out: &BoundaryFacts,
    into: &BoundaryFacts,
    coeffs: Coefficients,
) -> HomologyGroup {
    let betti = rank - out.rank - into.rank;
    match coeffs {
        Coefficients::Integers => HomologyGroup::from_cyclic(betti, into.torsion.iter().cloned()),
        _ => HomologyGroup::free(betti),
    }
}

fn group(
    rank: usize,
    below: &SparseMatrix,
    above: &SparseMatrix,
    coeffs: Coefficients,
) -> HomologyGroup {
    assemble(rank, &facts(below, coeffs), &facts(above, coeffs), coeffs)
}

/// A degree-wise family of matrices `F_n : C_n → D_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    matrices: Vec<SparseMatrix>,
}

impl ChainMap {
    pub fn new(matrices: Vec<SparseMatrix>) -> Self {
        ChainMap { matrices }
    }

    pub fn identity(c: &ChainComplex) -> Self {
        ChainMap::new(c.ranks.iter().map(|&r| SparseMatrix::identity(r)).collect())
    }

    pub fn top(&self) -> usize {
        self.matrices.len() - 1
    }

    pub fn matrix(&self, n: usize) -> &SparseMatrix {
        &self.matrices[n]
    }

    pub fn matrices(&self) -> &[SparseMatrix] {
        &self.matrices
    }

    /// Shapes agree and `∂F = F∂` in degrees `1..=top`.
    pub fn is_chain_map(&self, src: &ChainComplex, tgt: &ChainComplex) -> bool {
        let top = self.top();
        if top > src.top() || top > tgt.top() {
            return false;
        }
        let shapes = (0..=top).all(|n| {
            self.matrices[n].cols() == src.rank(n) && self.matrices[n].rows() == tgt.rank(n)
        });
        shapes
            && (1..=top).all(|n| {
                tgt.boundary(n).mul(&self.matrices[n]) == self.matrices[n - 1].mul(src.boundary(n))
            })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> ChainMap {
        let top = self.top().min(other.top());
        ChainMap::new(
            (0..=top)
                .map(|n| other.matrices[n].mul(&self.matrices[n]))
                .collect(),
        )
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        let top = self.top().min(other.top());
        ChainMap::new(
            (0..=top)
                .map(|n| self.matrices[n].add(&other.matrices[n].scale(-1)))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Integer;

    /// Cellular circle: one vertex, one loop; and a Möbius-like `RP²` cell
    /// structure with boundary `2`.
    fn rp2() -> ChainComplex {
        ChainComplex::new(
            vec![
                SparseMatrix::zeros(0, 1),
                SparseMatrix::zeros(1, 1),
                SparseMatrix::from_columns(1, vec![vec![(0, 2)]]),
            ],
            false,
        )
        .unwrap()
    }

    #[test]
    fn rp2_homology_and_cohomology() {
        let c = rp2();
        assert!(c.is_complex());
        let h = c.homology_all(Coefficients::Integers);
        assert_eq!(h[0], HomologyGroup::free(1));
        assert_eq!(h[1], HomologyGroup::from_cyclic(0, [Integer::from(2)]));
        assert!(h[2].is_zero());
        let co = c.cohomology_all(Coefficients::Integers);
        assert!(co[1].is_zero());
        assert_eq!(co[2], HomologyGroup::from_cyclic(0, [Integer::from(2)]));
        let h2 = c.homology_all(Coefficients::Mod(2));
        assert_eq!(
            h2.iter().map(|g| g.betti).collect::<Vec<_>>(),
            vec![1, 1, 1]
        );
        assert_eq!(c.homology(2, Coefficients::Rationals).unwrap().betti, 0);
    }

    #[test]
    fn augmentation_reduces_degree_zero() {
        let c = rp2().augmented();
        assert!(c.is_complex());
        assert!(c.homology(0, Coefficients::Integers).unwrap().is_zero());
    }

    #[test]
    fn truncated_range() {
        let c = rp2().truncate(1);
        assert_eq!(c.valid_through(), Some(0));
        assert!(c.homology(1, Coefficients::Integers).is_err());
    }

    #[test]
    fn tensor_of_rp2_with_itself() {
        let c = rp2();
        let t = c.tensor(&c).unwrap();
        assert!(t.is_complex());
        assert_eq!(t.ranks(), &[1, 2, 3, 2, 1]);
        let h = t.homology_all(Coefficients::Integers);
        let z2 = HomologyGroup::from_cyclic(0, [Integer::from(2)]);
        assert_eq!(h[1], z2.direct_sum(&z2));
        assert_eq!(h[2], z2);
        assert_eq!(h[3], z2);
        assert!(h[4].is_zero());
    }

    #[test]
    fn direct_sum_adds() {
        let c = rp2();
        let s = c.direct_sum(&c).unwrap();
        let h = s.homology_all(Coefficients::Integers);
        assert_eq!(h[0], HomologyGroup::free(2));
        assert_eq!(h[1].torsion.len(), 2);
    }
}
