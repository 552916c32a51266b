use std::collections::HashMap;
use std::fmt;

use super::pointset::{PointSet, MAX_POINTS};
use crate::error::{Error, Result};

/// A finite Čech closure space.
///
/// Every finite closure space is determined by the closures of its
/// singletons: `c(A)` is the union of `c({x})` over `x ∈ A`. The minimal
/// neighborhood `N(x) = { y : x ∈ c({y}) }` is the transpose relation and is
/// derived once at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteClosureSpace {
    labels: Vec<String>,
    closure: Vec<PointSet>,
    neighborhood: Vec<PointSet>,
    index: HashMap<String, usize>,
}

impl FiniteClosureSpace {
    /// Builds a space from point labels and singleton closures (by index).
    pub fn new(labels: Vec<String>, closure: Vec<PointSet>) -> Result<Self> {
        let n = labels.len();
        if n > MAX_POINTS {
            return Err(Error::resource("points in a space", MAX_POINTS));
        }
        if closure.len() != n {
            return Err(Error::input(format!(
                "{} labels but {} closure entries",
                n,
                closure.len()
            )));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::input(format!("duplicate point `{l}`")));
            }
        }
        let full = PointSet::full(n);
        for (i, c) in closure.iter().enumerate() {
            if !c.is_subset(full) {
                return Err(Error::input(format!(
                    "closure of `{}` mentions a point outside the space",
                    labels[i]
                )));
            }
            if !c.contains(i) {
                return Err(Error::input(format!(
                    "closure of `{}` does not contain the point itself",
                    labels[i]
                )));
            }
        }
        let mut neighborhood = vec![PointSet::EMPTY; n];
        for (y, c) in closure.iter().enumerate() {
            for x in c.iter() {
                neighborhood[x].insert(y);
            }
        }
        Ok(FiniteClosureSpace {
            labels,
            closure,
            neighborhood,
            index,
        })
    }

    /// Builds a space with labels `"0", "1", ..` from a closure relation.
    pub fn from_relation(closure: Vec<PointSet>) -> Result<Self> {
        let labels = (0..closure.len()).map(|i| i.to_string()).collect();
        Self::new(labels, closure)
    }

    /// Builds a space from an adjacency predicate: `y ∈ c({x})` iff
    /// `x == y || rel(x, y)`.
    pub fn from_fn(n: usize, rel: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let closure = (0..n)
            .map(|x| (0..n).filter(|&y| x == y || rel(x, y)).collect())
            .collect();
        Self::from_relation(closure)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn points(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: usize) -> &str {
        &self.labels[p]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Resolves labels to a point set.
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<PointSet> {
        labels
            .iter()
            .map(|l| {
                self.index_of(l.as_ref())
                    .ok_or_else(|| Error::UnknownPoint(l.as_ref().to_string()))
            })
            .collect()
    }

    pub fn subset_labels(&self, set: PointSet) -> Vec<String> {
        set.iter().map(|p| self.labels[p].clone()).collect()
    }

    /// `c({p})`.
    pub fn singleton_closure(&self, p: usize) -> PointSet {
        self.closure[p]
    }

    /// Minimal neighborhood `N(p)`.
    pub fn neighborhood(&self, p: usize) -> PointSet {
        self.neighborhood[p]
    }

    pub fn closure_relation(&self) -> &[PointSet] {
        &self.closure
    }

    /// `y ∈ c({x})`.
    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        self.closure[x].contains(y)
    }

    pub(crate) fn check_subset(&self, a: PointSet) -> Result<()> {
        if a.is_subset(self.points()) {
            Ok(())
        } else {
            let bad = a.difference(self.points()).first().unwrap_or(0);
            Err(Error::UnknownPoint(format!("#{bad}")))
        }
    }

    /// Union of singleton closures (additivity makes this the closure).
    pub(crate) fn closure_unchecked(&self, a: PointSet) -> PointSet {
        a.iter()
            .fold(PointSet::EMPTY, |acc, p| acc.union(self.closure[p]))
    }

    pub fn closure(&self, a: PointSet) -> Result<PointSet> {
        self.check_subset(a)?;
        Ok(self.closure_unchecked(a))
    }

    pub(crate) fn interior_unchecked(&self, a: PointSet) -> PointSet {
        let all = self.points();
        all.difference(self.closure_unchecked(all.difference(a)))
    }

    /// `i(A) = X − c(X − A)`.
    pub fn interior(&self, a: PointSet) -> Result<PointSet> {
        self.check_subset(a)?;
        Ok(self.interior_unchecked(a))
    }

    pub fn is_closed(&self, a: PointSet) -> Result<bool> {
        Ok(self.closure(a)? == a)
    }

    pub fn is_open(&self, a: PointSet) -> Result<bool> {
        Ok(self.interior(a)? == a)
    }

    /// Idempotence of the closure, checked on singletons.
    pub fn is_topological(&self) -> bool {
        (0..self.len()).all(|p| self.closure_unchecked(self.closure[p]) == self.closure[p])
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.len()).all(|p| self.closure[p] == PointSet::singleton(p))
    }

    /// Same closure relation up to relabelling by position.
    pub fn same_structure(&self, other: &Self) -> bool {
        self.closure == other.closure
    }
}

impl fmt::Debug for FiniteClosureSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (i, l) in self.labels.iter().enumerate() {
            m.entry(l, &self.subset_labels(self.closure[i]));
        }
        m.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jplus() -> FiniteClosureSpace {
        FiniteClosureSpace::from_relation(vec![
            PointSet::from_bits(0b11),
            PointSet::from_bits(0b10),
        ])
        .unwrap()
    }

    #[test]
    fn rejects_missing_reflexive_point() {
        let err = FiniteClosureSpace::new(
            vec!["a".into(), "b".into()],
            vec![PointSet::from_bits(0b10), PointSet::from_bits(0b10)],
        )
        .unwrap_err();
        assert!(err.to_string().contains("`a`"));
    }

    #[test]
    fn closure_and_interior_of_jplus() {
        let j = jplus();
        assert_eq!(
            j.closure(PointSet::singleton(0)).unwrap(),
            PointSet::from_bits(0b11)
        );
        assert_eq!(j.closure(PointSet::EMPTY).unwrap(), PointSet::EMPTY);
        assert_eq!(j.interior(PointSet::singleton(1)).unwrap(), PointSet::EMPTY);
        assert_eq!(
            j.interior(PointSet::singleton(0)).unwrap(),
            PointSet::singleton(0)
        );
        assert!(j.is_open(PointSet::singleton(0)).unwrap());
        assert!(j.is_closed(PointSet::singleton(1)).unwrap());
        assert!(j.is_open(PointSet::EMPTY).unwrap() && j.is_closed(PointSet::EMPTY).unwrap());
        assert_eq!(j.interior(j.points()).unwrap(), j.points());
        assert!(j.is_topological());
    }

    #[test]
    fn neighborhood_is_transpose() {
        let j = jplus();
        assert_eq!(j.neighborhood(0), PointSet::singleton(0));
        assert_eq!(j.neighborhood(1), PointSet::from_bits(0b11));
    }

    #[test]
    fn unknown_points_are_rejected() {
        let j = jplus();
        assert!(matches!(
            j.closure(PointSet::singleton(5)),
            Err(Error::UnknownPoint(_))
        ));
        assert!(matches!(j.subset(&["7"]), Err(Error::UnknownPoint(l)) if l == "7"));
    }
}
