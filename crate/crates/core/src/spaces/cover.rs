use std::sync::Arc;

use super::construct::{is_interior_cover, subspace};
use super::pointset::PointSet;
use super::space::FiniteClosureSpace;
use crate::error::{Error, Result};

/// A finite family of subsets of a space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    space: Arc<FiniteClosureSpace>,
    parts: Vec<PointSet>,
}

impl Cover {
    pub fn new(space: Arc<FiniteClosureSpace>, parts: Vec<PointSet>) -> Result<Self> {
        for &p in &parts {
            space.check_subset(p)?;
        }
        Ok(Cover { space, parts })
    }

    pub fn space(&self) -> &Arc<FiniteClosureSpace> {
        &self.space
    }

    pub fn parts(&self) -> &[PointSet] {
        &self.parts
    }

    pub fn is_interior_cover(&self) -> bool {
        is_interior_cover(&self.space, &self.parts).expect("parts validated")
    }

    /// Errors with the first uncovered point unless this is an interior cover.
    pub fn require_interior(&self) -> Result<()> {
        let covered = self.parts.iter().fold(PointSet::EMPTY, |acc, &u| {
            acc.union(self.space.interior_unchecked(u))
        });
        match self.space.points().difference(covered).first() {
            None => Ok(()),
            Some(p) => Err(Error::NotInteriorCover(format!(
                "`{}` lies in no interior",
                self.space.label(p)
            ))),
        }
    }

    /// Index of some part containing `set`, if any.
    pub fn part_containing(&self, set: PointSet) -> Option<usize> {
        self.parts.iter().position(|&u| set.is_subset(u))
    }
}

/// A space together with a subset, read as the subspace `(X, A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpacePair {
    ambient: Arc<FiniteClosureSpace>,
    sub: PointSet,
}

impl SpacePair {
    pub fn new(ambient: Arc<FiniteClosureSpace>, sub: PointSet) -> Result<Self> {
        ambient.check_subset(sub)?;
        Ok(SpacePair { ambient, sub })
    }

    pub fn ambient(&self) -> &Arc<FiniteClosureSpace> {
        &self.ambient
    }

    pub fn subspace_points(&self) -> PointSet {
        self.sub
    }

    /// The subspace `A` with the ambient index of each of its points.
    pub fn subspace(&self) -> (FiniteClosureSpace, Vec<usize>) {
        subspace(&self.ambient, self.sub).expect("subset validated")
    }
}
