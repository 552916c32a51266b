//! Seeded random instances for the verification harness.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::homotopy::{are_homotopic, homotopy_classes, Budget, HomotopyWitness};
use crate::linalg::{Integer, Matrix};
use crate::nerves::Interval;
use crate::spaces::{Cover, FiniteClosureSpace, PointSet, ProductKind, SpacePair};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Deterministic generator of spaces, covers, pairs and matrices.
#[derive(Clone, Debug)]
pub struct Corpus {
    rng: ChaCha8Rng,
}

impl Default for Corpus {
    fn default() -> Self {
        Self::new(DEFAULT_SEED)
    }
}

impl Corpus {
    pub fn new(seed: u64) -> Self {
        Corpus {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A space on exactly `n` points where each off-diagonal closure entry
    /// is present with probability `density`.
    pub fn space_of_size(&mut self, n: usize, density: f64) -> FiniteClosureSpace {
        let rel: Vec<Vec<bool>> = (0..n)
            .map(|_| (0..n).map(|_| self.rng.gen_bool(density)).collect())
            .collect();
        FiniteClosureSpace::from_fn(n, |x, y| rel[x][y]).expect("size within bounds")
    }

    /// A space on `1..=max_points` points with a random density.
    pub fn space(&mut self, max_points: usize) -> FiniteClosureSpace {
        let n = self.rng.gen_range(1..=max_points.max(1));
        let density = self.rng.gen_range(0.1..0.7);
        self.space_of_size(n, density)
    }

    /// A reflexive symmetric relation, i.e. a simple graph.
    pub fn graph(&mut self, n: usize, density: f64) -> FiniteClosureSpace {
        let mut edge = vec![vec![false; n]; n];
        for x in 0..n {
            for y in x + 1..n {
                let e = self.rng.gen_bool(density);
                edge[x][y] = e;
                edge[y][x] = e;
            }
        }
        FiniteClosureSpace::from_fn(n, |x, y| edge[x][y]).expect("size within bounds")
    }

    /// A uniformly random subset.
    pub fn subset(&mut self, space: &FiniteClosureSpace) -> PointSet {
        (0..space.len())
            .filter(|_| self.rng.gen_bool(0.5))
            .collect()
    }

    /// A non-empty proper subset when the space has two or more points.
    pub fn proper_subset(&mut self, space: &FiniteClosureSpace) -> PointSet {
        if space.len() < 2 {
            return space.points();
        }
        loop {
            let s = self.subset(space);
            if !s.is_empty() && s != space.points() {
                return s;
            }
        }
    }

    /// Random parts, then each point not yet interior to a part has its
    /// minimal neighborhood added to a random part.
    pub fn interior_cover(&mut self, space: &Arc<FiniteClosureSpace>, parts: usize) -> Cover {
        let k = parts.max(1);
        let mut sets: Vec<PointSet> = (0..k).map(|_| self.subset(space)).collect();
        for x in 0..space.len() {
            let covered = sets
                .iter()
                .any(|&s| space.interior_unchecked(s).contains(x));
            if !covered {
                let j = self.rng.gen_range(0..k);
                sets[j] = sets[j].union(space.neighborhood(x));
            }
        }
        Cover::new(space.clone(), sets).expect("parts are subsets")
    }

    /// A two-part interior cover `{A, B}`.
    pub fn interior_pair(&mut self, space: &Arc<FiniteClosureSpace>) -> (PointSet, PointSet) {
        let c = self.interior_cover(space, 2);
        (c.parts()[0], c.parts()[1])
    }

    pub fn pair(&mut self, space: &Arc<FiniteClosureSpace>) -> SpacePair {
        let a = self.subset(space);
        SpacePair::new(space.clone(), a).expect("subset of the space")
    }

    /// `Z ⊆ A ⊆ X` with `c(Z) ⊆ i(A)`; `Z` is a random subset of the
    /// largest admissible one, resampling `A` until that is non-empty.
    pub fn excision_triple(&mut self, space: &FiniteClosureSpace) -> (PointSet, PointSet) {
        for _ in 0..64 {
            let a = self.subset(space);
            let inner = space.interior_unchecked(a);
            let room: Vec<usize> = a
                .iter()
                .filter(|&z| space.singleton_closure(z).is_subset(inner))
                .collect();
            if room.is_empty() {
                continue;
            }
            let mut z: PointSet = room
                .iter()
                .copied()
                .filter(|_| self.rng.gen_bool(0.5))
                .collect();
            if z.is_empty() {
                z.insert(*room.choose(&mut self.rng).expect("non-empty"));
            }
            return (a, z);
        }
        (space.points(), space.points())
    }

    /// Two members of one homotopy class and a certified chain between
    /// them, distinct whenever some class has more than one map. `None`
    /// when there are no continuous maps or the search runs out of budget.
    pub fn homotopic_pair(
        &mut self,
        x: &Arc<FiniteClosureSpace>,
        y: &Arc<FiniteClosureSpace>,
        interval: Interval,
        product: ProductKind,
        cap: usize,
        budget: Budget,
    ) -> Result<Option<HomotopyWitness>> {
        let classes = homotopy_classes(x, y, interval, product, cap)?;
        let big: Vec<&Vec<_>> = classes.iter().filter(|c| c.len() > 1).collect();
        let class = match big.choose(&mut self.rng) {
            Some(c) => *c,
            None => match classes.choose(&mut self.rng) {
                Some(c) => c,
                None => return Ok(None),
            },
        };
        let picked: Vec<_> = class.choose_multiple(&mut self.rng, 2).collect();
        let (f, g) = match picked.as_slice() {
            [f, g] => (*f, *g),
            [f] => (*f, *f),
            _ => unreachable!("classes are non-empty"),
        };
        Ok(are_homotopic(f, g, interval, product, budget)?.found())
    }

    /// A matrix with entries uniform in `-bound..=bound`.
    pub fn matrix(&mut self, rows: usize, cols: usize, bound: i64) -> Matrix {
        let data: Vec<Vec<i64>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| self.rng.gen_range(-bound..=bound))
                    .collect()
            })
            .collect();
        Matrix::from_fn(rows, cols, |i, j| Integer::from(data[i][j]))
    }

    /// Resamples while `f` fails with a resource error.
    pub fn retry<T>(
        &mut self,
        attempts: usize,
        mut f: impl FnMut(&mut Self) -> Result<T>,
    ) -> Result<T> {
        let mut last = None;
        for _ in 0..attempts.max(1) {
            match f(self) {
                Err(e) if e.is_resource() => last = Some(e),
                other => return other,
            }
        }
        Err(last.expect("at least one attempt"))
    }
}
