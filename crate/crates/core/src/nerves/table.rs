use std::cmp::Ordering;

use super::cells::{
    cube_face_raw, cube_is_degenerate_raw, simplex_face_raw, simplex_is_degenerate_raw,
};
use super::search::MapSearch;
use super::selector::{Flavor, TheorySelector};
use crate::error::{Error, Result};
use crate::spaces::FiniteClosureSpace;

/// Enumeration limits. Exceeding either is a resource error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Most cells enumerated in a single dimension.
    pub max_cells: usize,
    /// Highest dimension enumerated.
    pub max_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_cells: 1_000_000,
            max_dim: 4,
        }
    }
}

/// Cells of one dimension as lexicographically sorted fixed-width rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellTable {
    width: usize,
    data: Vec<u8>,
}

impl CellTable {
    pub(crate) fn from_sorted(width: usize, data: Vec<u8>) -> Self {
        debug_assert!(width == 0 || data.len().is_multiple_of(width));
        CellTable { width, data }
    }

    /// Rows passing `keep`, order preserved.
    pub(crate) fn filter(&self, mut keep: impl FnMut(&[u8]) -> bool) -> CellTable {
        let mut data = Vec::new();
        for row in self.iter() {
            if keep(row) {
                data.extend_from_slice(row);
            }
        }
        CellTable {
            width: self.width,
            data,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.width).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.width..(i + 1) * self.width]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[u8]> + '_ {
        (0..self.len()).map(move |i| self.row(i))
    }

    pub fn position(&self, row: &[u8]) -> Option<usize> {
        if row.len() != self.width {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.row(mid).cmp(row) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// Number of entries in an `n`-cell of the selector's flavor.
fn cell_width(flavor: Flavor, n: usize) -> usize {
    match flavor {
        Flavor::Simplicial => n + 1,
        Flavor::Cubical => 1 << n,
    }
}

/// Every `n`-cell of `space` for the selector, sorted.
pub(crate) fn enumerate_raw(
    space: &FiniteClosureSpace,
    sel: TheorySelector,
    n: usize,
    limits: Limits,
) -> Result<CellTable> {
    if n > limits.max_dim {
        return Err(Error::resource("cell dimension", limits.max_dim));
    }
    let domain = match sel.flavor {
        Flavor::Simplicial => sel.interval.simplex_domain(n),
        Flavor::Cubical => sel.interval.cube_domain(sel.product, n)?,
    };
    let what = format!("{n}-cells");
    let data = MapSearch::new(&domain, space).collect(limits.max_cells, &what)?;
    Ok(CellTable::from_sorted(cell_width(sel.flavor, n), data))
}

/// Number of `n`-cells, without storing them or applying a cap.
pub fn count_cells(space: &FiniteClosureSpace, sel: TheorySelector, n: usize) -> Result<u64> {
    let domain = match sel.flavor {
        Flavor::Simplicial => sel.interval.simplex_domain(n),
        Flavor::Cubical => sel.interval.cube_domain(sel.product, n)?,
    };
    Ok(MapSearch::new(&domain, space).count())
}

pub(crate) fn is_degenerate_raw(flavor: Flavor, row: &[u8]) -> bool {
    match flavor {
        Flavor::Simplicial => simplex_is_degenerate_raw(row),
        Flavor::Cubical => cube_is_degenerate_raw(row),
    }
}

/// Signed faces in the boundary formula: `Σ (−1)ⁱ dᵢ` for simplices and
/// `Σ (−1)ⁱ (Aᵢ − Bᵢ)` for cubes.
pub(crate) fn boundary_raw(flavor: Flavor, row: &[u8]) -> Vec<(i64, Vec<u8>)> {
    match flavor {
        Flavor::Simplicial => {
            if row.len() == 1 {
                return vec![];
            }
            (0..row.len())
                .map(|i| (if i % 2 == 0 { 1 } else { -1 }, simplex_face_raw(row, i)))
                .collect()
        }
        Flavor::Cubical => {
            let n = row.len().trailing_zeros() as usize;
            let mut out = Vec::with_capacity(2 * n);
            for i in 1..=n {
                let s = if i % 2 == 0 { 1 } else { -1 };
                out.push((s, cube_face_raw(row, i, 0)));
                out.push((-s, cube_face_raw(row, i, 1)));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nerves::Interval;
    use crate::spaces::{standard_space, ProductKind, StandardKind};

    #[test]
    fn positions() {
        let t = CellTable::from_sorted(2, vec![0, 0, 0, 1, 1, 1]);
        assert_eq!(t.len(), 3);
        assert_eq!(t.position(&[0, 1]), Some(1));
        assert_eq!(t.position(&[1, 0]), None);
    }

    #[test]
    fn box_cubes_of_an_edge() {
        let j1 = standard_space(StandardKind::Path, 1, 0).unwrap();
        let sel = TheorySelector::cubical(Interval::J1, ProductKind::Inductive);
        let t = enumerate_raw(&j1, sel, 1, Limits::default()).unwrap();
        assert_eq!(t.len(), 4);
        let nondeg = t.filter(|r| !is_degenerate_raw(Flavor::Cubical, r));
        assert_eq!(nondeg.len(), 2);
    }
}
