use std::sync::Arc;

use super::space::FiniteClosureSpace;
use crate::error::{Error, Result};

/// A point assignment between two finite closure spaces. Continuity is a
/// predicate, not an invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceMap {
    source: Arc<FiniteClosureSpace>,
    target: Arc<FiniteClosureSpace>,
    assignment: Vec<usize>,
}

impl SpaceMap {
    pub fn new(
        source: Arc<FiniteClosureSpace>,
        target: Arc<FiniteClosureSpace>,
        assignment: Vec<usize>,
    ) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::input(format!(
                "assignment has {} entries for a {}-point source",
                assignment.len(),
                source.len()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&y| y >= target.len()) {
            return Err(Error::UnknownPoint(format!("#{bad}")));
        }
        Ok(SpaceMap {
            source,
            target,
            assignment,
        })
    }

    pub fn identity(space: Arc<FiniteClosureSpace>) -> Self {
        let assignment = (0..space.len()).collect();
        SpaceMap {
            source: space.clone(),
            target: space,
            assignment,
        }
    }

    pub fn constant(
        source: Arc<FiniteClosureSpace>,
        target: Arc<FiniteClosureSpace>,
        value: usize,
    ) -> Result<Self> {
        let assignment = vec![value; source.len()];
        Self::new(source, target, assignment)
    }

    pub fn source(&self) -> &Arc<FiniteClosureSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteClosureSpace> {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, p: usize) -> usize {
        self.assignment[p]
    }

    /// `f(c({x})) ⊆ d({f(x)})` for every point; equivalent to the condition
    /// on all subsets by additivity.
    pub fn is_continuous(&self) -> bool {
        self.first_discontinuity().is_none()
    }

    /// A pair `(x, y)` with `y ∈ c({x})` but `f(y) ∉ d({f(x)})`.
    pub fn first_discontinuity(&self) -> Option<(usize, usize)> {
        (0..self.source.len()).find_map(|x| {
            let cfx = self.target.singleton_closure(self.assignment[x]);
            self.source
                .singleton_closure(x)
                .iter()
                .find(|&y| !cfx.contains(self.assignment[y]))
                .map(|y| (x, y))
        })
    }

    pub fn require_continuous(&self) -> Result<()> {
        match self.first_discontinuity() {
            None => Ok(()),
            Some((x, y)) => Err(Error::NotContinuous(format!(
                "`{}` is in the closure of `{}` but `{}` is not in the closure of `{}`",
                self.source.label(y),
                self.source.label(x),
                self.target.label(self.assignment[y]),
                self.target.label(self.assignment[x]),
            ))),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SpaceMap) -> Result<SpaceMap> {
        if *self.target != *other.source {
            return Err(Error::input("composition of maps with mismatched spaces"));
        }
        let assignment = self
            .assignment
            .iter()
            .map(|&y| other.assignment[y])
            .collect();
        Ok(SpaceMap {
            source: self.source.clone(),
            target: other.target.clone(),
            assignment,
        })
    }

    /// Image of a point set.
    pub fn image(&self, a: super::PointSet) -> super::PointSet {
        a.iter().map(|p| self.assignment[p]).collect()
    }
}
