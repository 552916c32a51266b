//! Limits, colimits and modifications of finite closure spaces.

use std::sync::Arc;

use super::map::SpaceMap;
use super::pointset::{PointSet, MAX_POINTS};
use super::space::FiniteClosureSpace;
use super::standard::point;
use crate::error::{Error, Result};

/// The two canonical closures on a Cartesian product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    /// Product closure `×`: neighborhoods `U × V`.
    Cross,
    /// Inductive product closure `⊡`: neighborhoods `({x} × V) ∪ (U × {y})`.
    Inductive,
}

impl ProductKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cross" | "x" | "product" => Ok(ProductKind::Cross),
            "inductive" | "box" | "inductive-product" => Ok(ProductKind::Inductive),
            other => Err(Error::input(format!("unknown product `{other}`"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ProductKind::Cross => "cross",
            ProductKind::Inductive => "inductive",
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_POINTS {
        Err(Error::resource("points in a space", MAX_POINTS))
    } else {
        Ok(())
    }
}

fn pair_label(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// Product of two spaces under the chosen closure. Point `(x, y)` has index
/// `x * |b| + y`.
pub fn product_with(
    a: &FiniteClosureSpace,
    b: &FiniteClosureSpace,
    kind: ProductKind,
) -> Result<FiniteClosureSpace> {
    let (na, nb) = (a.len(), b.len());
    check_size(na * nb)?;
    let mut labels = Vec::with_capacity(na * nb);
    let mut closure = Vec::with_capacity(na * nb);
    for x in 0..na {
        for y in 0..nb {
            labels.push(pair_label(a.label(x), b.label(y)));
            let (cx, cy) = (a.singleton_closure(x), b.singleton_closure(y));
            let mut c = PointSet::EMPTY;
            match kind {
                ProductKind::Cross => {
                    for x2 in cx.iter() {
                        for y2 in cy.iter() {
                            c.insert(x2 * nb + y2);
                        }
                    }
                }
                ProductKind::Inductive => {
                    for y2 in cy.iter() {
                        c.insert(x * nb + y2);
                    }
                    for x2 in cx.iter() {
                        c.insert(x2 * nb + y);
                    }
                }
            }
            closure.push(c);
        }
    }
    FiniteClosureSpace::new(labels, closure)
}

/// `a × b`.
pub fn product(a: &FiniteClosureSpace, b: &FiniteClosureSpace) -> Result<FiniteClosureSpace> {
    product_with(a, b, ProductKind::Cross)
}

/// `a ⊡ b`.
pub fn inductive_product(
    a: &FiniteClosureSpace,
    b: &FiniteClosureSpace,
) -> Result<FiniteClosureSpace> {
    product_with(a, b, ProductKind::Inductive)
}

/// Projections out of a product space built by [`product_with`].
pub fn projections(
    prod: &Arc<FiniteClosureSpace>,
    a: &Arc<FiniteClosureSpace>,
    b: &Arc<FiniteClosureSpace>,
) -> Result<(SpaceMap, SpaceMap)> {
    let nb = b.len();
    let p1 = SpaceMap::new(
        prod.clone(),
        a.clone(),
        (0..prod.len()).map(|p| p / nb).collect(),
    )?;
    let p2 = SpaceMap::new(
        prod.clone(),
        b.clone(),
        (0..prod.len()).map(|p| p % nb).collect(),
    )?;
    Ok((p1, p2))
}

/// The n-fold product with points as n-tuples in lexicographic order (first
/// coordinate most significant). `n = 0` gives the one-point space.
pub fn power(
    space: &FiniteClosureSpace,
    n: usize,
    kind: ProductKind,
) -> Result<FiniteClosureSpace> {
    if n == 0 {
        return Ok(point());
    }
    let k = space.len();
    let total = k
        .checked_pow(n as u32)
        .filter(|&t| t <= MAX_POINTS)
        .ok_or_else(|| Error::resource("points in a space", MAX_POINTS))?;
    let digits = |mut p: usize| {
        let mut d = vec![0; n];
        for i in (0..n).rev() {
            d[i] = p % k;
            p /= k;
        }
        d
    };
    let encode = |d: &[usize]| d.iter().fold(0, |acc, &x| acc * k + x);
    let mut labels = Vec::with_capacity(total);
    let mut closure = Vec::with_capacity(total);
    for p in 0..total {
        let d = digits(p);
        labels.push(format!(
            "({})",
            d.iter()
                .map(|&x| space.label(x))
                .collect::<Vec<_>>()
                .join(",")
        ));
        let mut c = PointSet::EMPTY;
        match kind {
            ProductKind::Cross => {
                // Enumerate all tuples with coordinate i in c(d_i).
                let mut cur = d.clone();
                fn rec(
                    i: usize,
                    cur: &mut Vec<usize>,
                    d: &[usize],
                    space: &FiniteClosureSpace,
                    out: &mut PointSet,
                    encode: &dyn Fn(&[usize]) -> usize,
                ) {
                    if i == d.len() {
                        out.insert(encode(cur));
                        return;
                    }
                    for v in space.singleton_closure(d[i]).iter() {
                        cur[i] = v;
                        rec(i + 1, cur, d, space, out, encode);
                    }
                    cur[i] = d[i];
                }
                rec(0, &mut cur, &d, space, &mut c, &encode);
            }
            ProductKind::Inductive => {
                let mut cur = d.clone();
                for i in 0..n {
                    for v in space.singleton_closure(d[i]).iter() {
                        cur[i] = v;
                        c.insert(encode(&cur));
                    }
                    cur[i] = d[i];
                }
            }
        }
        closure.push(c);
    }
    FiniteClosureSpace::new(labels, closure)
}

/// Disjoint union with its two injections. Points of `a` come first and are
/// labelled `(0,x)`, points of `b` are labelled `(1,y)`.
pub fn coproduct(
    a: &Arc<FiniteClosureSpace>,
    b: &Arc<FiniteClosureSpace>,
) -> Result<(Arc<FiniteClosureSpace>, SpaceMap, SpaceMap)> {
    let (na, nb) = (a.len(), b.len());
    check_size(na + nb)?;
    let mut labels = Vec::with_capacity(na + nb);
    let mut closure = Vec::with_capacity(na + nb);
    for x in 0..na {
        labels.push(pair_label("0", a.label(x)));
        closure.push(a.singleton_closure(x));
    }
    for y in 0..nb {
        labels.push(pair_label("1", b.label(y)));
        closure.push(PointSet::from_bits(b.singleton_closure(y).bits() << na));
    }
    let sum = Arc::new(FiniteClosureSpace::new(labels, closure)?);
    let ia = SpaceMap::new(a.clone(), sum.clone(), (0..na).collect())?;
    let ib = SpaceMap::new(b.clone(), sum.clone(), (na..na + nb).collect())?;
    Ok((sum, ia, ib))
}

/// Quotient of a space by a partition given as a class id per point, with
/// closure `c_Q(B) = p(c(p⁻¹(B)))`. Classes are renumbered by their smallest
/// member and labelled by it; returns the quotient and the projection.
pub fn quotient_by_classes(
    space: &Arc<FiniteClosureSpace>,
    class_of: &[usize],
) -> Result<(Arc<FiniteClosureSpace>, SpaceMap)> {
    let n = space.len();
    if class_of.len() != n {
        return Err(Error::input("class assignment has the wrong length"));
    }
    // Canonical numbering: order classes by smallest representative.
    let mut canon: std::collections::HashMap<usize, usize> = Default::default();
    let mut reps = Vec::new();
    let mut proj = vec![0; n];
    for p in 0..n {
        let id = *canon.entry(class_of[p]).or_insert_with(|| {
            reps.push(p);
            reps.len() - 1
        });
        proj[p] = id;
    }
    let mut fibres = vec![PointSet::EMPTY; reps.len()];
    for p in 0..n {
        fibres[proj[p]].insert(p);
    }
    let image = |s: PointSet| -> PointSet { s.iter().map(|p| proj[p]).collect() };
    let closure = fibres
        .iter()
        .map(|&f| image(space.closure_unchecked(f)))
        .collect();
    let labels = reps.iter().map(|&r| space.label(r).to_string()).collect();
    let q = Arc::new(FiniteClosureSpace::new(labels, closure)?);
    let pmap = SpaceMap::new(space.clone(), q.clone(), proj)?;
    Ok((q, pmap))
}

/// Coequalizer of `f, g : A → Y`.
pub fn coequalizer(f: &SpaceMap, g: &SpaceMap) -> Result<(Arc<FiniteClosureSpace>, SpaceMap)> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::input("coequalizer of maps with different spaces"));
    }
    f.require_continuous()?;
    g.require_continuous()?;
    let mut uf = UnionFind::new(f.target().len());
    for a in 0..f.source().len() {
        uf.union(f.apply(a), g.apply(a));
    }
    quotient_by_classes(f.target(), &uf.classes())
}

/// Pushout of `f : A → X` and `g : A → Y`, returning `(P, i, j)`.
pub fn pushout(
    f: &SpaceMap,
    g: &SpaceMap,
) -> Result<(Arc<FiniteClosureSpace>, SpaceMap, SpaceMap)> {
    if f.source() != g.source() {
        return Err(Error::input("pushout of maps with different sources"));
    }
    f.require_continuous()?;
    g.require_continuous()?;
    let (sum, ix, iy) = coproduct(f.target(), g.target())?;
    let mut uf = UnionFind::new(sum.len());
    for a in 0..f.source().len() {
        uf.union(ix.apply(f.apply(a)), iy.apply(g.apply(a)));
    }
    let (p, proj) = quotient_by_classes(&sum, &uf.classes())?;
    let i = ix.then(&proj)?;
    let j = iy.then(&proj)?;
    Ok((p, i, j))
}

/// `X/A`: collapses a nonempty subset to a single point.
pub fn quotient_by_subspace(
    space: &Arc<FiniteClosureSpace>,
    a: PointSet,
) -> Result<(Arc<FiniteClosureSpace>, SpaceMap)> {
    space.check_subset(a)?;
    let Some(rep) = a.first() else {
        return Err(Error::input("cannot collapse an empty subspace"));
    };
    let classes: Vec<usize> = (0..space.len())
        .map(|p| if a.contains(p) { rep } else { p })
        .collect();
    quotient_by_classes(space, &classes)
}

/// Subspace on `subset` with `c_E(A) = c(A) ∩ E`; points keep their labels
/// and relative order. Also returns the ambient index of each point.
pub fn subspace(
    space: &FiniteClosureSpace,
    subset: PointSet,
) -> Result<(FiniteClosureSpace, Vec<usize>)> {
    space.check_subset(subset)?;
    let members: Vec<usize> = subset.iter().collect();
    let mut local = vec![usize::MAX; space.len()];
    for (i, &p) in members.iter().enumerate() {
        local[p] = i;
    }
    let closure = members
        .iter()
        .map(|&p| {
            space
                .singleton_closure(p)
                .intersection(subset)
                .iter()
                .map(|q| local[q])
                .collect()
        })
        .collect();
    let labels = members
        .iter()
        .map(|&p| space.label(p).to_string())
        .collect();
    Ok((FiniteClosureSpace::new(labels, closure)?, members))
}

/// The finest topological closure coarser than the given one: each
/// singleton closure is saturated under the relation.
pub fn topological_modification(space: &FiniteClosureSpace) -> FiniteClosureSpace {
    let closure = (0..space.len())
        .map(|p| {
            let mut c = space.singleton_closure(p);
            loop {
                let next = space.closure_unchecked(c);
                if next == c {
                    break c;
                }
                c = next;
            }
        })
        .collect();
    FiniteClosureSpace::new(space.labels().to_vec(), closure).expect("saturation keeps reflexivity")
}

/// Union of interiors covers the space.
pub fn is_interior_cover(space: &FiniteClosureSpace, parts: &[PointSet]) -> Result<bool> {
    let mut covered = PointSet::EMPTY;
    for &u in parts {
        covered = covered.union(space.interior(u)?);
    }
    Ok(covered == space.points())
}

/// Finds a homeomorphism `a → b` by backtracking, if one exists.
pub fn find_homeomorphism(a: &FiniteClosureSpace, b: &FiniteClosureSpace) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let n = a.len();
    let mut assign = vec![usize::MAX; n];
    let mut used = PointSet::EMPTY;
    fn rec(
        i: usize,
        a: &FiniteClosureSpace,
        b: &FiniteClosureSpace,
        assign: &mut Vec<usize>,
        used: &mut PointSet,
    ) -> bool {
        if i == a.len() {
            return true;
        }
        for v in b.points().difference(*used).iter() {
            if a.singleton_closure(i).len() != b.singleton_closure(v).len() {
                continue;
            }
            let ok = (0..i).all(|j| {
                a.adjacent(i, j) == b.adjacent(v, assign[j])
                    && a.adjacent(j, i) == b.adjacent(assign[j], v)
            });
            if ok {
                assign[i] = v;
                used.insert(v);
                if rec(i + 1, a, b, assign, used) {
                    return true;
                }
                used.remove(v);
            }
        }
        false
    }
    rec(0, a, b, &mut assign, &mut used).then_some(assign)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Root per element.
    pub(crate) fn classes(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|x| self.find(x)).collect()
    }
}
