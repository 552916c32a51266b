//! Singular simplicial and cubical nerves of finite closure spaces.

mod cells;
pub(crate) mod search;
mod selector;
mod table;

pub(crate) use cells::comparison_raw;
pub use cells::{comparison_map, Cube, Simplex};
pub use selector::{Flavor, Interval, TheorySelector};
pub(crate) use table::{boundary_raw, enumerate_raw, is_degenerate_raw};
pub use table::{count_cells, CellTable, Limits};

use crate::error::{Error, Result};
use crate::spaces::FiniteClosureSpace;

/// All continuous `Δⁿ_J → X` in lexicographic order of vertex sequences.
pub fn enumerate_simplices(
    space: &FiniteClosureSpace,
    sel: TheorySelector,
    n: usize,
    limits: Limits,
) -> Result<Vec<Simplex>> {
    if sel.flavor != Flavor::Simplicial {
        return Err(Error::input("simplices need a simplicial selector"));
    }
    Ok(enumerate_raw(space, sel, n, limits)?
        .iter()
        .map(Simplex::from_raw)
        .collect())
}

/// All continuous `J^{⊗n} → X` in lexicographic order of corner values.
pub fn enumerate_cubes(
    space: &FiniteClosureSpace,
    sel: TheorySelector,
    n: usize,
    limits: Limits,
) -> Result<Vec<Cube>> {
    if sel.flavor != Flavor::Cubical {
        return Err(Error::input("cubes need a cubical selector"));
    }
    Ok(enumerate_raw(space, sel, n, limits)?
        .iter()
        .map(Cube::from_raw)
        .collect())
}
