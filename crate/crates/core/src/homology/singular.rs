use std::sync::Arc;

use serde::Serialize;

use super::complex::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::nerves::{
    boundary_raw, comparison_raw, enumerate_raw, is_degenerate_raw, CellTable, Flavor, Limits,
    TheorySelector,
};
use crate::spaces::{Cover, FiniteClosureSpace, PointSet, SpaceMap, SpacePair};

/// Which chains form the basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainModel {
    /// Non-degenerate cells, i.e. the quotient by degenerate chains.
    Normalized,
    /// Every cell.
    Moore,
}

/// Which cells of a space are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Support {
    All,
    /// Cells not contained in the subspace.
    RelativeTo(PointSet),
    /// Cells contained in some part.
    SmallFor(Vec<PointSet>),
}

impl Support {
    fn keeps(&self, image: PointSet) -> bool {
        match self {
            Support::All => true,
            Support::RelativeTo(a) => !image.is_subset(*a),
            Support::SmallFor(parts) => parts.iter().any(|p| image.is_subset(*p)),
        }
    }
}

pub(crate) fn image_of(row: &[u8]) -> PointSet {
    row.iter().map(|&p| p as usize).collect()
}

/// Singular chain complex of a space for one theory, with its cell bases.
///
/// Chains are built through `max_dim + 1`, so homology is exact through
/// `max_dim`.
#[derive(Clone, Debug)]
pub struct SingularComplex {
    space: Arc<FiniteClosureSpace>,
    selector: TheorySelector,
    model: ChainModel,
    support: Support,
    cells: Vec<CellTable>,
    complex: ChainComplex,
}

impl SingularComplex {
    /// Absolute complex.
    pub fn build(
        space: Arc<FiniteClosureSpace>,
        selector: TheorySelector,
        max_dim: usize,
        model: ChainModel,
        limits: Limits,
    ) -> Result<Self> {
        Self::assemble(space, selector, max_dim, model, limits, Support::All)
    }

    /// `C(X, A)`: cells of `X` not contained in `A`, with faces in `A` dropped.
    pub fn relative(
        pair: &SpacePair,
        selector: TheorySelector,
        max_dim: usize,
        model: ChainModel,
        limits: Limits,
    ) -> Result<Self> {
        let support = Support::RelativeTo(pair.subspace_points());
        Self::assemble(
            pair.ambient().clone(),
            selector,
            max_dim,
            model,
            limits,
            support,
        )
    }

    /// Subcomplex of cells lying in some part of an interior cover, and
    /// whether it is the whole complex.
    pub fn cover_subcomplex(
        cover: &Cover,
        selector: TheorySelector,
        max_dim: usize,
        limits: Limits,
    ) -> Result<(Self, bool)> {
        cover.require_interior()?;
        let full = Self::build(
            cover.space().clone(),
            selector,
            max_dim,
            ChainModel::Normalized,
            limits,
        )?;
        let small = Self::assemble(
            cover.space().clone(),
            selector,
            max_dim,
            ChainModel::Normalized,
            limits,
            Support::SmallFor(cover.parts().to_vec()),
        )?;
        let equal = small.cells == full.cells;
        Ok((small, equal))
    }

    fn assemble(
        space: Arc<FiniteClosureSpace>,
        selector: TheorySelector,
        max_dim: usize,
        model: ChainModel,
        limits: Limits,
        support: Support,
    ) -> Result<Self> {
        let top = max_dim + 1;
        let flavor = selector.flavor;
        let mut cells = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let all = enumerate_raw(&space, selector, n, limits)?;
            cells.push(all.filter(|row| {
                (model == ChainModel::Moore || !is_degenerate_raw(flavor, row))
                    && support.keeps(image_of(row))
            }));
        }
        let mut boundaries = Vec::with_capacity(top + 1);
        boundaries.push(SparseMatrix::zeros(0, cells[0].len()));
        for n in 1..=top {
            let below = &cells[n - 1];
            let cols = cells[n]
                .iter()
                .map(|row| {
                    boundary_raw(flavor, row)
                        .into_iter()
                        .filter_map(|(s, face)| below.position(&face).map(|i| (i, s)))
                        .collect()
                })
                .collect();
            boundaries.push(SparseMatrix::from_columns(below.len(), cols));
        }
        let complex = ChainComplex::new(boundaries, true)?;
        Ok(SingularComplex {
            space,
            selector,
            model,
            support,
            cells,
            complex,
        })
    }

    pub fn space(&self) -> &Arc<FiniteClosureSpace> {
        &self.space
    }

    pub fn selector(&self) -> TheorySelector {
        self.selector
    }

    pub fn model(&self) -> ChainModel {
        self.model
    }

    /// Highest degree with exact homology.
    pub fn max_dim(&self) -> usize {
        self.complex.top() - 1
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn cells(&self, n: usize) -> &CellTable {
        &self.cells[n]
    }

    /// Basis elements of degree `n` as `(v₀,…,vₙ)` or `[c₀,…]` in point labels.
    pub fn basis_labels(&self, n: usize) -> Vec<String> {
        let (open, close) = match self.selector.flavor {
            Flavor::Simplicial => ("(", ")"),
            Flavor::Cubical => ("[", "]"),
        };
        self.cells[n]
            .iter()
            .map(|row| {
                let inner: Vec<&str> = row.iter().map(|&p| self.space.label(p as usize)).collect();
                format!("{open}{}{close}", inner.join(","))
            })
            .collect()
    }

    /// Position of a raw cell in the degree-`n` basis.
    pub fn index_of(&self, n: usize, row: &[u8]) -> Option<usize> {
        self.cells.get(n)?.position(row)
    }

    /// Whether a cell outside the basis is legitimately zero in this complex.
    fn vanishes(&self, row: &[u8]) -> bool {
        (self.model == ChainModel::Normalized && is_degenerate_raw(self.selector.flavor, row))
            || !self.support.keeps(image_of(row))
    }

    /// Linear extension of a cell-to-cell function. Images that vanish in
    /// the target map to zero; anything else missing is an error.
    pub(crate) fn cell_map(
        &self,
        target: &SingularComplex,
        top: usize,
        f: impl Fn(&[u8]) -> Vec<u8>,
    ) -> Result<ChainMap> {
        if top > self.complex.top() || top > target.complex.top() {
            return Err(Error::input("chain map beyond the built range"));
        }
        let mut mats = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut cols = Vec::with_capacity(self.cells[n].len());
            for row in self.cells[n].iter() {
                let img = f(row);
                match target.cells[n].position(&img) {
                    Some(i) => cols.push(vec![(i, 1)]),
                    None if target.vanishes(&img) => cols.push(vec![]),
                    None => {
                        return Err(Error::input(format!(
                            "image of a {n}-cell is not a cell of the target complex"
                        )))
                    }
                }
            }
            mats.push(SparseMatrix::from_columns(target.cells[n].len(), cols));
        }
        Ok(ChainMap::new(mats))
    }

    /// `f_#(σ) = f ∘ σ` into a complex of the target space.
    pub fn induced(&self, f: &SpaceMap, target: &SingularComplex) -> Result<ChainMap> {
        f.require_continuous()?;
        if !f.source().same_structure(&self.space) || !f.target().same_structure(&target.space) {
            return Err(Error::input("map does not match the complexes' spaces"));
        }
        if self.selector != target.selector || self.model != target.model {
            return Err(Error::input(
                "induced maps need the same theory on both sides",
            ));
        }
        if let (Support::RelativeTo(a), Support::RelativeTo(b)) = (&self.support, &target.support) {
            if !f.image(*a).is_subset(*b) {
                return Err(Error::input(
                    "map does not send the subspace into the subspace",
                ));
            }
        }
        let top = self.max_dim().min(target.max_dim()) + 1;
        let asg: Vec<u8> = f.assignment().iter().map(|&y| y as u8).collect();
        self.cell_map(target, top, |row| {
            row.iter().map(|&p| asg[p as usize]).collect()
        })
    }

    /// Inclusion of a complex of a subspace, given ambient indices of its points.
    pub fn inclusion_from(&self, sub: &SingularComplex, ambient: &[usize]) -> Result<ChainMap> {
        let top = self.max_dim().min(sub.max_dim()) + 1;
        sub.cell_map(self, top, |row| {
            row.iter().map(|&p| ambient[p as usize] as u8).collect()
        })
    }

    /// Quotient onto the relative complex on the same space and theory.
    pub fn projection_to(&self, relative: &SingularComplex) -> Result<ChainMap> {
        let top = self.max_dim().min(relative.max_dim()) + 1;
        self.cell_map(relative, top, |row| row.to_vec())
    }
}

/// Simplicial complex of a space through `max_dim + 1`.
pub fn simplicial_chain_complex(
    space: Arc<FiniteClosureSpace>,
    selector: TheorySelector,
    max_dim: usize,
    normalize: bool,
) -> Result<SingularComplex> {
    if selector.flavor != Flavor::Simplicial {
        return Err(Error::input("selector is not simplicial"));
    }
    let model = if normalize {
        ChainModel::Normalized
    } else {
        ChainModel::Moore
    };
    SingularComplex::build(space, selector, max_dim, model, limits_for(max_dim))
}

/// Cubical complex (degenerate quotient unless `normalize` is false).
pub fn cubical_chain_complex(
    space: Arc<FiniteClosureSpace>,
    selector: TheorySelector,
    max_dim: usize,
    normalize: bool,
) -> Result<SingularComplex> {
    if selector.flavor != Flavor::Cubical {
        return Err(Error::input("selector is not cubical"));
    }
    let model = if normalize {
        ChainModel::Normalized
    } else {
        ChainModel::Moore
    };
    SingularComplex::build(space, selector, max_dim, model, limits_for(max_dim))
}

/// Default limits, raised to admit cells of degree `max_dim + 1`.
pub fn limits_for(max_dim: usize) -> Limits {
    let d = Limits::default();
    Limits {
        max_dim: d.max_dim.max(max_dim + 1),
        ..d
    }
}

/// The comparison chain map from the Moore simplicial complex to the
/// normalized `(J, ×)` cubical complex of the same space and interval.
pub fn comparison_chain_map(
    simplicial: &SingularComplex,
    cubical: &SingularComplex,
) -> Result<ChainMap> {
    let (s, c) = (simplicial.selector, cubical.selector);
    if s.flavor != Flavor::Simplicial || c.flavor != Flavor::Cubical || s.interval != c.interval {
        return Err(Error::input(
            "comparison runs from a simplicial to a cubical theory of one interval",
        ));
    }
    if !c.is_cross() {
        return Err(Error::Unsupported(
            "comparison targets the product cubical theory".into(),
        ));
    }
    if simplicial.model != ChainModel::Moore || cubical.model != ChainModel::Normalized {
        return Err(Error::input(
            "comparison needs a Moore source and a normalized target",
        ));
    }
    if !simplicial.space.same_structure(&cubical.space) {
        return Err(Error::input("comparison between different spaces"));
    }
    let top = simplicial.max_dim().min(cubical.max_dim()) + 1;
    simplicial.cell_map(cubical, top, comparison_raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{Coefficients, HomologyGroup};
    use crate::nerves::Interval;
    use crate::spaces::{point, standard_space, ProductKind, StandardKind};

    fn arc(kind: StandardKind, m: usize) -> Arc<FiniteClosureSpace> {
        Arc::new(standard_space(kind, m, 0).unwrap())
    }

    fn h(c: &SingularComplex) -> Vec<HomologyGroup> {
        c.complex().homology_all(Coefficients::Integers)
    }

    #[test]
    fn point_ranks() {
        let p = Arc::new(point());
        for sel in TheorySelector::all() {
            let c = SingularComplex::build(
                p.clone(),
                sel,
                3,
                ChainModel::Normalized,
                Limits::default(),
            )
            .unwrap();
            assert_eq!(c.complex().ranks(), &[1, 0, 0, 0, 0], "{sel}");
            let m = SingularComplex::build(p.clone(), sel, 3, ChainModel::Moore, Limits::default())
                .unwrap();
            assert_eq!(m.complex().ranks(), &[1, 1, 1, 1, 1]);
            if sel.flavor == Flavor::Simplicial {
                assert_eq!(h(&m), h(&c));
            }
        }
    }

    #[test]
    fn edge_counts() {
        let j1 = arc(StandardKind::Path, 1);
        let s = simplicial_chain_complex(
            j1.clone(),
            TheorySelector::simplicial(Interval::J1),
            1,
            false,
        )
        .unwrap();
        assert_eq!(s.complex().rank(1), 4);
        let b = cubical_chain_complex(
            j1,
            TheorySelector::cubical(Interval::J1, ProductKind::Inductive),
            1,
            true,
        )
        .unwrap();
        assert_eq!(b.complex().rank(1), 2);
        assert_eq!(b.basis_labels(1), vec!["[0,1]", "[1,0]"]);
    }

    #[test]
    fn cycle_of_four() {
        let c4 = arc(StandardKind::Cycle, 4);
        let z = HomologyGroup::free(1);
        let simp = TheorySelector::simplicial(Interval::J1);
        let cross = TheorySelector::cubical(Interval::J1, ProductKind::Cross);
        let boxed = TheorySelector::cubical(Interval::J1, ProductKind::Inductive);
        let l = Limits::default();
        let hs =
            h(&SingularComplex::build(c4.clone(), simp, 1, ChainModel::Normalized, l).unwrap());
        assert_eq!(hs[1], z);
        let hc =
            h(&SingularComplex::build(c4.clone(), cross, 1, ChainModel::Normalized, l).unwrap());
        assert_eq!(hc[1], z);
        let hb = h(&SingularComplex::build(c4, boxed, 1, ChainModel::Normalized, l).unwrap());
        assert!(hb[1].is_zero());
    }

    #[test]
    fn relative_extremes() {
        let j1 = arc(StandardKind::Path, 1);
        let sel = TheorySelector::simplicial(Interval::J1);
        let l = Limits::default();
        let abs = SingularComplex::build(j1.clone(), sel, 2, ChainModel::Normalized, l).unwrap();
        let empty = SpacePair::new(j1.clone(), PointSet::EMPTY).unwrap();
        let rel = SingularComplex::relative(&empty, sel, 2, ChainModel::Normalized, l).unwrap();
        assert_eq!(rel.complex(), abs.complex());
        let all = SpacePair::new(j1.clone(), j1.points()).unwrap();
        let rel = SingularComplex::relative(&all, sel, 2, ChainModel::Normalized, l).unwrap();
        assert!(rel.complex().ranks().iter().all(|&r| r == 0));
        let vertex = SpacePair::new(j1, PointSet::singleton(0)).unwrap();
        let rel = SingularComplex::relative(&vertex, sel, 2, ChainModel::Normalized, l).unwrap();
        assert!(h(&rel).iter().all(HomologyGroup::is_zero));
    }

    #[test]
    fn comparison_is_a_chain_map() {
        for interval in Interval::ALL {
            let c5 = arc(StandardKind::Cycle, 5);
            let l = Limits::default();
            let s = SingularComplex::build(
                c5.clone(),
                TheorySelector::simplicial(interval),
                2,
                ChainModel::Moore,
                l,
            )
            .unwrap();
            let c = SingularComplex::build(
                c5,
                TheorySelector::cubical(interval, ProductKind::Cross),
                2,
                ChainModel::Normalized,
                l,
            )
            .unwrap();
            let f = comparison_chain_map(&s, &c).unwrap();
            assert!(f.is_chain_map(s.complex(), c.complex()));
        }
    }
}
