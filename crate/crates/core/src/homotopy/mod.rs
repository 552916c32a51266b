//! Path components and homotopy of maps between finite closure spaces.

use std::collections::{HashMap, VecDeque};
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nerves::search::MapSearch;
use crate::nerves::Interval;
use crate::spaces::{product_with, FiniteClosureSpace, PointSet, ProductKind, SpaceMap, UnionFind};

/// `J`-path components. `J₁` joins mutually adjacent points, `J₊` joins `x`
/// to every `y ∈ c({x})`; classes are the generated equivalence.
pub fn pi0(space: &FiniteClosureSpace, interval: Interval) -> Vec<PointSet> {
    let n = space.len();
    let mut uf = UnionFind::new(n);
    for x in 0..n {
        for y in space.singleton_closure(x).iter() {
            if interval == Interval::JPlus || space.adjacent(y, x) {
                uf.union(x, y);
            }
        }
    }
    let class = uf.classes();
    let mut out: Vec<PointSet> = Vec::new();
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for (x, &c) in class.iter().enumerate() {
        let k = *seen.entry(c).or_insert_with(|| {
            out.push(PointSet::EMPTY);
            out.len() - 1
        });
        out[k].insert(x);
    }
    out
}

/// Orientation of a one-step homotopy between consecutive maps `hᵢ`, `hᵢ₊₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `H(−, 0) = hᵢ`, `H(−, 1) = hᵢ₊₁`.
    Forward,
    /// `H(−, 0) = hᵢ₊₁`, `H(−, 1) = hᵢ`.
    Backward,
}

/// Whether `H(x, 0) = at0(x)`, `H(x, 1) = at1(x)` is continuous on `X ⊗ J`.
fn step_is_continuous(
    x: &FiniteClosureSpace,
    y: &FiniteClosureSpace,
    at0: &[usize],
    at1: &[usize],
    interval: Interval,
    product: ProductKind,
) -> bool {
    let h = |p: usize, e: usize| if e == 0 { at0[p] } else { at1[p] };
    (0..x.len()).all(|p| {
        (0..2).all(|e| {
            let target = y.singleton_closure(h(p, e));
            let je = interval.closure_bits(e);
            x.singleton_closure(p).iter().all(|q| {
                (0..2).filter(|&f| je >> f & 1 == 1).all(|f| {
                    let related = match product {
                        ProductKind::Cross => true,
                        ProductKind::Inductive => q == p || f == e,
                    };
                    !related || target.contains(h(q, f))
                })
            })
        })
    })
}

/// A chain `f = h₀, h₁, …, h_m = g` of one-step homotopies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyWitness {
    pub interval: Interval,
    pub product: ProductKind,
    pub maps: Vec<SpaceMap>,
    pub directions: Vec<Direction>,
}

#[derive(Serialize)]
struct WitnessRecord<'a> {
    interval: &'static str,
    product: &'static str,
    maps: Vec<Vec<&'a str>>,
    directions: &'a [Direction],
}

impl HomotopyWitness {
    pub fn steps(&self) -> usize {
        self.directions.len()
    }

    pub fn source(&self) -> &SpaceMap {
        &self.maps[0]
    }

    pub fn target(&self) -> &SpaceMap {
        self.maps.last().expect("at least one map")
    }

    /// Assignments at `0` and `1` of step `i`.
    pub fn step_ends(&self, i: usize) -> (&SpaceMap, &SpaceMap) {
        let (a, b) = (&self.maps[i], &self.maps[i + 1]);
        match self.directions[i] {
            Direction::Forward => (a, b),
            Direction::Backward => (b, a),
        }
    }

    /// The combined map `Hᵢ : X ⊗ J → Y` of step `i`; `(x, e)` has index `2x + e`.
    pub fn step_map(&self, i: usize) -> Result<SpaceMap> {
        let (at0, at1) = self.step_ends(i);
        let x = at0.source();
        let dom = product_with(x, &self.interval.space(), self.product)?;
        let assignment = (0..x.len())
            .flat_map(|p| [at0.apply(p), at1.apply(p)])
            .collect();
        SpaceMap::new(Arc::new(dom), at0.target().clone(), assignment)
    }

    /// Re-checks continuity of every combined step map.
    pub fn verify(&self) -> bool {
        self.maps.len() == self.directions.len() + 1
            && (0..self.steps()).all(|i| self.step_map(i).is_ok_and(|h| h.is_continuous()))
    }

    /// The same chain read from `g` back to `f`.
    pub fn reversed(&self) -> HomotopyWitness {
        let flip = |d: &Direction| match d {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        };
        HomotopyWitness {
            interval: self.interval,
            product: self.product,
            maps: self.maps.iter().rev().cloned().collect(),
            directions: self.directions.iter().rev().map(flip).collect(),
        }
    }

    /// Assignment tables in point labels.
    pub fn to_json(&self) -> serde_json::Value {
        let maps = self
            .maps
            .iter()
            .map(|m| {
                m.assignment()
                    .iter()
                    .map(|&y| m.target().label(y))
                    .collect()
            })
            .collect();
        serde_json::to_value(WitnessRecord {
            interval: self.interval.name(),
            product: self.product.name(),
            maps,
            directions: &self.directions,
        })
        .expect("witness serializes")
    }
}

fn check_pair(f: &SpaceMap, g: &SpaceMap) -> Result<()> {
    f.require_continuous()?;
    g.require_continuous()?;
    if !f.source().same_structure(g.source()) || !f.target().same_structure(g.target()) {
        return Err(Error::input("maps have different source or target spaces"));
    }
    Ok(())
}

/// The unique candidate `H(−,0) = f`, `H(−,1) = g`, if it is continuous.
pub fn one_step_homotopic(
    f: &SpaceMap,
    g: &SpaceMap,
    interval: Interval,
    product: ProductKind,
) -> Result<Option<HomotopyWitness>> {
    check_pair(f, g)?;
    let ok = step_is_continuous(
        f.source(),
        f.target(),
        f.assignment(),
        g.assignment(),
        interval,
        product,
    );
    Ok(ok.then(|| HomotopyWitness {
        interval,
        product,
        maps: vec![f.clone(), g.clone()],
        directions: vec![Direction::Forward],
    }))
}

/// Search limits: maps discovered and chain length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_maps: usize,
    pub max_steps: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_maps: 100_000,
            max_steps: usize::MAX,
        }
    }
}

/// Result of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// The whole component was explored without success.
    Absent,
    /// The budget ran out first.
    Inconclusive {
        explored: usize,
    },
}

impl<T> Search<T> {
    pub fn status(&self) -> &'static str {
        match self {
            Search::Found(_) => "yes",
            Search::Absent => "no",
            Search::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// Maps one step away from `h`, in lexicographic order, forward steps first.
struct Neighbors<'a> {
    forward: MapSearch<'a>,
    backward: Option<MapSearch<'a>>,
    width: usize,
}

fn neighbor_searches<'a>(
    domain: &'a FiniteClosureSpace,
    target: &'a FiniteClosureSpace,
    h: &[u8],
    interval: Interval,
) -> Neighbors<'a> {
    let mut forward = MapSearch::new(domain, target);
    for (x, &v) in h.iter().enumerate() {
        forward.fix(2 * x, v as usize);
    }
    let backward = (interval == Interval::JPlus).then(|| {
        let mut s = MapSearch::new(domain, target);
        for (x, &v) in h.iter().enumerate() {
            s.fix(2 * x + 1, v as usize);
        }
        s
    });
    Neighbors {
        forward,
        backward,
        width: h.len(),
    }
}

impl Neighbors<'_> {
    fn for_each(
        &self,
        mut visit: impl FnMut(Vec<u8>, Direction) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let w = self.width;
        self.forward
            .for_each(|row| visit((0..w).map(|x| row[2 * x + 1]).collect(), Direction::Forward))?;
        if let Some(b) = &self.backward {
            b.for_each(|row| visit((0..w).map(|x| row[2 * x]).collect(), Direction::Backward))?;
        }
        ControlFlow::Continue(())
    }
}

/// Breadth-first search of the one-step graph from `start` until `goal` holds.
fn bfs(
    start: &SpaceMap,
    interval: Interval,
    product: ProductKind,
    budget: Budget,
    goal: impl Fn(&[u8]) -> bool,
) -> Result<Search<HomotopyWitness>> {
    let x = start.source();
    let y = start.target();
    let domain = product_with(x, &interval.space(), product)?;
    let first: Vec<u8> = start.assignment().iter().map(|&v| v as u8).collect();
    let mut parent: HashMap<Vec<u8>, Option<(Vec<u8>, Direction)>> = HashMap::new();
    let mut depth: HashMap<Vec<u8>, usize> = HashMap::new();
    parent.insert(first.clone(), None);
    depth.insert(first.clone(), 0);
    let mut queue = VecDeque::from([first.clone()]);
    let mut hit = goal(&first).then(|| first.clone());
    let mut cut_short = false;
    while hit.is_none() {
        let Some(h) = queue.pop_front() else { break };
        let d = depth[&h];
        if d >= budget.max_steps {
            cut_short = true;
            continue;
        }
        let nb = neighbor_searches(&domain, y, &h, interval);
        let flow = nb.for_each(|k, dir| {
            if parent.contains_key(&k) {
                return ControlFlow::Continue(());
            }
            if parent.len() >= budget.max_maps {
                cut_short = true;
                return ControlFlow::Break(());
            }
            parent.insert(k.clone(), Some((h.clone(), dir)));
            depth.insert(k.clone(), d + 1);
            if goal(&k) {
                hit = Some(k);
                return ControlFlow::Break(());
            }
            queue.push_back(k);
            ControlFlow::Continue(())
        });
        if flow.is_break() && hit.is_none() {
            return Ok(Search::Inconclusive {
                explored: parent.len(),
            });
        }
    }
    let Some(end) = hit else {
        return Ok(if cut_short {
            Search::Inconclusive {
                explored: parent.len(),
            }
        } else {
            Search::Absent
        });
    };
    let mut chain = vec![end];
    let mut dirs = Vec::new();
    while let Some(Some((p, dir))) = parent.get(chain.last().expect("nonempty")) {
        dirs.push(*dir);
        chain.push(p.clone());
    }
    chain.reverse();
    dirs.reverse();
    let maps = chain
        .into_iter()
        .map(|a| {
            SpaceMap::new(
                x.clone(),
                y.clone(),
                a.into_iter().map(usize::from).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Search::Found(HomotopyWitness {
        interval,
        product,
        maps,
        directions: dirs,
    }))
}

/// Decides `f ∼ g` for the relation generated by one-step homotopies.
pub fn are_homotopic(
    f: &SpaceMap,
    g: &SpaceMap,
    interval: Interval,
    product: ProductKind,
    budget: Budget,
) -> Result<Search<HomotopyWitness>> {
    check_pair(f, g)?;
    let goal: Vec<u8> = g.assignment().iter().map(|&v| v as u8).collect();
    bfs(f, interval, product, budget, |a| a == goal.as_slice())
}

/// Searches for a chain from the identity to some constant map.
pub fn is_contractible(
    space: &Arc<FiniteClosureSpace>,
    interval: Interval,
    product: ProductKind,
    budget: Budget,
) -> Result<Search<HomotopyWitness>> {
    if space.is_empty() {
        return Ok(Search::Absent);
    }
    let id = SpaceMap::identity(space.clone());
    bfs(&id, interval, product, budget, |a| {
        a.iter().all(|&v| v == a[0])
    })
}

/// Every continuous map `X → Y` in lexicographic order, at most `cap`.
pub fn continuous_maps(
    x: &Arc<FiniteClosureSpace>,
    y: &Arc<FiniteClosureSpace>,
    cap: usize,
) -> Result<Vec<SpaceMap>> {
    let rows = MapSearch::new(x, y).collect(cap, "continuous maps")?;
    let w = x.len();
    if w == 0 {
        return Ok(vec![SpaceMap::new(x.clone(), y.clone(), vec![])?]);
    }
    rows.chunks(w)
        .map(|r| {
            SpaceMap::new(
                x.clone(),
                y.clone(),
                r.iter().map(|&v| v as usize).collect(),
            )
        })
        .collect()
}

/// Partition of all continuous maps into homotopy classes, each in
/// lexicographic order, classes ordered by first member.
pub fn homotopy_classes(
    x: &Arc<FiniteClosureSpace>,
    y: &Arc<FiniteClosureSpace>,
    interval: Interval,
    product: ProductKind,
    cap: usize,
) -> Result<Vec<Vec<SpaceMap>>> {
    let maps = continuous_maps(x, y, cap)?;
    let rows: Vec<Vec<u8>> = maps
        .iter()
        .map(|m| m.assignment().iter().map(|&v| v as u8).collect())
        .collect();
    let index: HashMap<&[u8], usize> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| (r.as_slice(), i))
        .collect();
    let domain = product_with(x, &interval.space(), product)?;
    let mut uf = UnionFind::new(maps.len());
    for (i, r) in rows.iter().enumerate() {
        let nb = neighbor_searches(&domain, y, r, interval);
        let _ = nb.for_each(|k, _| {
            uf.union(i, index[k.as_slice()]);
            ControlFlow::Continue(())
        });
    }
    let class = uf.classes();
    let mut out: Vec<Vec<SpaceMap>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for (i, m) in maps.into_iter().enumerate() {
        let k = *slot.entry(class[i]).or_insert_with(|| {
            out.push(Vec::new());
            out.len() - 1
        });
        out[k].push(m);
    }
    Ok(out)
}

/// `(interval, product)` pairs in the order of the implication diagram.
pub const RELATIONS: [(Interval, ProductKind); 4] = [
    (Interval::J1, ProductKind::Cross),
    (Interval::JPlus, ProductKind::Cross),
    (Interval::J1, ProductKind::Inductive),
    (Interval::JPlus, ProductKind::Inductive),
];

/// Whether `f ∼ g` for `finer` forces `f ∼ g` for `coarser` in the diagram.
pub fn implies(finer: (Interval, ProductKind), coarser: (Interval, ProductKind)) -> bool {
    let interval_ok = finer.0 == coarser.0 || finer.0 == Interval::J1;
    let product_ok = finer.1 == coarser.1 || finer.1 == ProductKind::Cross;
    interval_ok && product_ok
}

/// Per relation, the search outcome for a pair of maps.
#[derive(Clone, Debug, Serialize)]
pub struct OrderReport {
    pub outcomes: Vec<(String, &'static str)>,
    /// No implication of the diagram is contradicted by a definite answer.
    pub consistent: bool,
}

/// Decides `f ∼ g` under all four relations and checks the implications.
pub fn order_check(f: &SpaceMap, g: &SpaceMap, budget: Budget) -> Result<OrderReport> {
    let mut results = Vec::with_capacity(4);
    for (interval, product) in RELATIONS {
        results.push(are_homotopic(f, g, interval, product, budget)?);
    }
    let mut consistent = true;
    for (i, a) in results.iter().enumerate() {
        for (j, b) in results.iter().enumerate() {
            if implies(RELATIONS[i], RELATIONS[j])
                && matches!(a, Search::Found(_))
                && matches!(b, Search::Absent)
            {
                consistent = false;
            }
        }
    }
    let outcomes = RELATIONS
        .iter()
        .zip(&results)
        .map(|((i, p), r)| (format!("({}, {})", i.name(), p.name()), r.status()))
        .collect();
    Ok(OrderReport {
        outcomes,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{point, standard_space, StandardKind};

    fn arc(kind: StandardKind, m: usize) -> Arc<FiniteClosureSpace> {
        Arc::new(standard_space(kind, m, 0).unwrap())
    }

    #[test]
    fn path_components() {
        let jp = arc(StandardKind::JPlus, 1);
        assert_eq!(pi0(&jp, Interval::JPlus).len(), 1);
        assert_eq!(pi0(&jp, Interval::J1).len(), 2);
        let d = arc(StandardKind::Discrete, 3);
        assert_eq!(pi0(&d, Interval::J1).len(), 3);
        assert_eq!(pi0(&d, Interval::JPlus).len(), 3);
    }

    #[test]
    fn edge_identity_to_constant() {
        let e = arc(StandardKind::Path, 1);
        let id = SpaceMap::identity(e.clone());
        let c0 = SpaceMap::constant(e.clone(), e.clone(), 0).unwrap();
        let w = one_step_homotopic(&id, &c0, Interval::J1, ProductKind::Cross)
            .unwrap()
            .unwrap();
        assert!(w.verify());
        assert_eq!(w.step_map(0).unwrap().assignment(), &[0, 0, 1, 0]);
        let r = are_homotopic(
            &id,
            &id,
            Interval::J1,
            ProductKind::Cross,
            Budget::default(),
        )
        .unwrap();
        assert_eq!(r.found().unwrap().steps(), 0);
    }

    #[test]
    fn swap_is_rejected() {
        let jp = arc(StandardKind::JPlus, 1);
        let id = SpaceMap::identity(jp.clone());
        let swap = SpaceMap::new(jp.clone(), jp, vec![1, 0]).unwrap();
        assert!(one_step_homotopic(&id, &swap, Interval::JPlus, ProductKind::Cross).is_err());
    }

    #[test]
    fn constants_in_different_components() {
        let d = arc(StandardKind::Discrete, 2);
        let p = Arc::new(point());
        let a = SpaceMap::constant(p.clone(), d.clone(), 0).unwrap();
        let b = SpaceMap::constant(p, d.clone(), 1).unwrap();
        let r = are_homotopic(&a, &b, Interval::J1, ProductKind::Cross, Budget::default()).unwrap();
        assert_eq!(r, Search::Absent);
        assert_eq!(
            is_contractible(&d, Interval::J1, ProductKind::Cross, Budget::default()).unwrap(),
            Search::Absent
        );
    }

    #[test]
    fn contractible_cubes_and_simplices() {
        for interval in Interval::ALL {
            for product in [ProductKind::Cross, ProductKind::Inductive] {
                for n in 0..=3 {
                    let cube = Arc::new(interval.cube_domain(product, n).unwrap());
                    let w = is_contractible(&cube, interval, product, Budget::default()).unwrap();
                    assert!(w.found().unwrap().verify(), "{interval:?} {product:?} {n}");
                }
            }
            for n in 0..=3 {
                let s = Arc::new(interval.simplex_domain(n));
                let w =
                    is_contractible(&s, interval, ProductKind::Cross, Budget::default()).unwrap();
                assert!(w.found().is_some());
            }
        }
    }

    #[test]
    fn classes() {
        let e = arc(StandardKind::Path, 1);
        let cl = homotopy_classes(&e, &e, Interval::J1, ProductKind::Cross, 1000).unwrap();
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].len(), 4);
        let c5 = arc(StandardKind::Cycle, 5);
        let p = Arc::new(point());
        let cl = homotopy_classes(&p, &c5, Interval::J1, ProductKind::Cross, 1000).unwrap();
        assert_eq!(cl.len(), pi0(&c5, Interval::J1).len());
        let cl = homotopy_classes(&c5, &p, Interval::JPlus, ProductKind::Inductive, 1000).unwrap();
        assert_eq!(cl.len(), 1);
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let path = arc(StandardKind::Path, 6);
        let tight = Budget {
            max_maps: 1,
            max_steps: 10,
        };
        let r = is_contractible(&path, Interval::J1, ProductKind::Cross, tight).unwrap();
        assert!(matches!(r, Search::Inconclusive { .. }), "{r:?}");
        let r =
            is_contractible(&path, Interval::J1, ProductKind::Cross, Budget::default()).unwrap();
        assert!(r.found().is_some());
        // The hexagon is rigid: the identity has no other one-step neighbor.
        let c6 = arc(StandardKind::Cycle, 6);
        let r = is_contractible(&c6, Interval::J1, ProductKind::Cross, tight).unwrap();
        assert_eq!(r, Search::Absent);
    }

    #[test]
    fn implication_diagram() {
        let j1x = (Interval::J1, ProductKind::Cross);
        let jpb = (Interval::JPlus, ProductKind::Inductive);
        assert!(implies(j1x, jpb));
        assert!(!implies(jpb, j1x));
        assert!(!implies(
            (Interval::JPlus, ProductKind::Cross),
            (Interval::J1, ProductKind::Inductive)
        ));
        let e = arc(StandardKind::Path, 1);
        let id = SpaceMap::identity(e.clone());
        let c = SpaceMap::constant(e.clone(), e, 1).unwrap();
        let rep = order_check(&id, &c, Budget::default()).unwrap();
        assert!(rep.consistent);
        assert!(rep.outcomes.iter().all(|(_, s)| *s == "yes"));
    }
}
