//! Backtracking enumeration of continuous maps between finite spaces.
//!
//! Domain points are assigned in index order. The candidates for point `k`
//! are cut down by every already assigned point related to `k`: if
//! `k ∈ c(a)` then `f(k) ∈ c(f(a))`, and if `b ∈ c(k)` then
//! `f(b) ∈ c(f(k))`, i.e. `f(k) ∈ N(f(b))`. A complete assignment is
//! therefore continuous, and every continuous map is reached.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::spaces::{FiniteClosureSpace, PointSet};

pub(crate) struct MapSearch<'a> {
    target: &'a FiniteClosureSpace,
    /// Earlier points `a` with `k ∈ c(a)`.
    pred: Vec<PointSet>,
    /// Earlier points `b` with `b ∈ c(k)`.
    succ: Vec<PointSet>,
    allowed: Vec<PointSet>,
}

impl<'a> MapSearch<'a> {
    pub(crate) fn new(domain: &FiniteClosureSpace, target: &'a FiniteClosureSpace) -> Self {
        let n = domain.len();
        let mut pred = vec![PointSet::EMPTY; n];
        let mut succ = vec![PointSet::EMPTY; n];
        for k in 0..n {
            for a in 0..k {
                if domain.adjacent(a, k) {
                    pred[k].insert(a);
                }
                if domain.adjacent(k, a) {
                    succ[k].insert(a);
                }
            }
        }
        MapSearch {
            target,
            pred,
            succ,
            allowed: vec![target.points(); n],
        }
    }

    /// Forces the image of domain point `p`.
    pub(crate) fn fix(&mut self, p: usize, value: usize) {
        self.allowed[p] = PointSet::singleton(value).intersection(self.target.points());
    }

    fn candidates(&self, k: usize, assign: &[u8]) -> PointSet {
        let mut c = self.allowed[k];
        for a in self.pred[k].iter() {
            c = c.intersection(self.target.singleton_closure(assign[a] as usize));
        }
        for b in self.succ[k].iter() {
            c = c.intersection(self.target.neighborhood(assign[b] as usize));
        }
        c
    }

    /// Visits every continuous map in lexicographic order of assignments.
    pub(crate) fn for_each(
        &self,
        mut visit: impl FnMut(&[u8]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let n = self.pred.len();
        if n == 0 {
            return visit(&[]);
        }
        let mut assign = vec![0u8; n];
        let mut cand = vec![PointSet::EMPTY; n];
        cand[0] = self.candidates(0, &assign);
        let mut k = 0;
        loop {
            match cand[k].first() {
                Some(v) => {
                    cand[k].remove(v);
                    assign[k] = v as u8;
                    if k + 1 == n {
                        visit(&assign)?;
                    } else {
                        k += 1;
                        cand[k] = self.candidates(k, &assign);
                    }
                }
                None => {
                    if k == 0 {
                        return ControlFlow::Continue(());
                    }
                    k -= 1;
                }
            }
        }
    }

    /// All maps as one flattened buffer of rows, failing once more than
    /// `cap` maps exist.
    pub(crate) fn collect(&self, cap: usize, what: &str) -> Result<Vec<u8>> {
        let width = self.pred.len();
        let mut out = Vec::new();
        let mut count = 0usize;
        let flow = self.for_each(|row| {
            count += 1;
            if count > cap {
                return ControlFlow::Break(());
            }
            out.extend_from_slice(row);
            ControlFlow::Continue(())
        });
        if flow.is_break() {
            return Err(Error::resource(what, cap));
        }
        debug_assert_eq!(out.len(), count * width);
        Ok(out)
    }

    pub(crate) fn count(&self) -> u64 {
        let mut count = 0u64;
        let _ = self.for_each(|_| {
            count += 1;
            ControlFlow::Continue(())
        });
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{standard_space, SpaceMap, StandardKind};
    use std::sync::Arc;

    /// Raw filter over all |Y|^|X| assignments.
    fn brute(x: &Arc<FiniteClosureSpace>, y: &Arc<FiniteClosureSpace>) -> Vec<Vec<u8>> {
        let (n, m) = (x.len(), y.len());
        let mut out = vec![];
        for code in 0..m.pow(n as u32) {
            let assign: Vec<usize> = (0..n).rev().map(|i| code / m.pow(i as u32) % m).collect();
            let f = SpaceMap::new(x.clone(), y.clone(), assign.clone()).unwrap();
            if f.is_continuous() {
                out.push(assign.iter().map(|&v| v as u8).collect());
            }
        }
        out
    }

    #[test]
    fn agrees_with_brute_force() {
        let spaces = [
            standard_space(StandardKind::JPlus, 1, 0).unwrap(),
            standard_space(StandardKind::Path, 2, 0).unwrap(),
            standard_space(StandardKind::Jmk, 2, 0b10).unwrap(),
            standard_space(StandardKind::Cycle, 4, 0).unwrap(),
        ]
        .map(Arc::new);
        for x in &spaces {
            for y in &spaces {
                let s = MapSearch::new(x, y);
                let rows: Vec<Vec<u8>> = s
                    .collect(usize::MAX, "maps")
                    .unwrap()
                    .chunks(x.len())
                    .map(<[u8]>::to_vec)
                    .collect();
                assert_eq!(rows, brute(x, y));
                assert_eq!(s.count(), rows.len() as u64);
            }
        }
    }

    #[test]
    fn cap_is_a_resource_error() {
        let x = standard_space(StandardKind::Discrete, 3, 0).unwrap();
        let e = MapSearch::new(&x, &x).collect(5, "maps").unwrap_err();
        assert!(e.is_resource());
    }
}
