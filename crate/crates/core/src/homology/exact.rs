use std::sync::Arc;

use serde::Serialize;

use super::basis::{homology_map, is_exact_at, is_isomorphism, HomologyBasis};
use super::complex::{ChainComplex, ChainMap};
use super::groups::HomologyGroup;
use super::singular::{ChainModel, SingularComplex};
use crate::error::{Error, Result};
use crate::linalg::{Integer, Lattice, Matrix, SparseMatrix};
use crate::nerves::{Limits, TheorySelector};
use crate::spaces::{subspace, Cover, FiniteClosureSpace, PointSet, SpacePair};

/// One group of a long exact sequence and whether the sequence is exact there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceNode {
    pub label: String,
    pub group: HomologyGroup,
    /// `None` at the first node, which has no incoming map.
    pub exact: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactSequence {
    /// From the highest degree down to `H_0` of the third complex.
    pub nodes: Vec<SequenceNode>,
}

impl ExactSequence {
    pub fn is_exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact != Some(false))
    }

    /// Group at the node with this label.
    pub fn group(&self, label: &str) -> Option<&HomologyGroup> {
        self.nodes
            .iter()
            .find(|n| n.label == label)
            .map(|n| &n.group)
    }
}

/// Preimages under a chain-level surjection: the first column that is a
/// signed unit vector at each target row.
struct Section(Vec<Option<(usize, i64)>>);

impl Section {
    fn new(j: &SparseMatrix) -> Self {
        let mut pick = vec![None; j.rows()];
        for col in 0..j.cols() {
            let mut entries = j.column(col);
            if let (Some((t, v)), None) = (entries.next(), entries.next()) {
                if v.abs() == 1 && pick[t].is_none() {
                    pick[t] = Some((col, v));
                }
            }
        }
        Section(pick)
    }

    fn lift(&self, z: &[Integer], len: usize) -> Result<Vec<Integer>> {
        let mut b = vec![Integer::ZERO; len];
        for (t, x) in z.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (col, s) = self.0[t].ok_or_else(|| {
                Error::Unsupported("no basis preimage for a connecting-map lift".into())
            })?;
            b[col] += &(x * &Integer::from(s));
        }
        Ok(b)
    }
}

/// Solves `i·x = y` for a chain-level injection whose columns have distinct
/// leading rows with unit entries.
struct Injection<'a> {
    map: &'a SparseMatrix,
    pivots: Vec<(usize, usize, i64)>,
}

impl<'a> Injection<'a> {
    fn new(map: &'a SparseMatrix) -> Result<Self> {
        let mut used = vec![false; map.rows()];
        let mut pivots = Vec::with_capacity(map.cols());
        for col in 0..map.cols() {
            let (row, v) = map
                .column(col)
                .next()
                .filter(|&(r, v)| v.abs() == 1 && !used[r])
                .ok_or_else(|| Error::Unsupported("injection without unit pivots".into()))?;
            used[row] = true;
            pivots.push((col, row, v));
        }
        Ok(Injection { map, pivots })
    }

    fn solve(&self, y: &[Integer]) -> Result<Vec<Integer>> {
        let mut x = vec![Integer::ZERO; self.map.cols()];
        for &(col, row, v) in &self.pivots {
            x[col] = &y[row] * &Integer::from(v);
        }
        if self.map.apply(&x) != y {
            return Err(Error::input("boundary of a lift is not in the subcomplex"));
        }
        Ok(x)
    }
}

/// The long exact homology sequence of a short exact sequence
/// `0 → A →ⁱ B →ʲ C → 0` of chain complexes, through degree `max_dim`,
/// with exactness checked at every node. The sequence starts at the cycles
/// `Z_{max_dim+1}(C)` so the connecting map into `H_{max_dim}(A)` is seen.
pub fn long_exact_sequence(
    a: &ChainComplex,
    b: &ChainComplex,
    c: &ChainComplex,
    i: &ChainMap,
    j: &ChainMap,
    max_dim: usize,
    names: [&str; 3],
) -> Result<ExactSequence> {
    let top = max_dim + 1;
    if i.top() < top || j.top() < top {
        return Err(Error::input("chain maps do not reach the top degree"));
    }
    let mut labels = Vec::new();
    let mut bases: Vec<HomologyBasis> = Vec::new();
    let mut maps: Vec<Matrix> = Vec::new();

    let connecting = |n: usize, src: &HomologyBasis, tgt: &HomologyBasis| -> Result<Matrix> {
        let section = Section::new(j.matrix(n));
        let inj = Injection::new(i.matrix(n - 1))?;
        let cols = (0..src.len())
            .map(|g| {
                let lift = section.lift(&src.generator(g), b.rank(n))?;
                let db = b.boundary(n).apply(&lift);
                tgt.coordinates(&inj.solve(&db)?)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(tgt.len(), &cols))
    };

    labels.push(format!("Z{top}({})", names[2]));
    bases.push(HomologyBasis::cycles(c, top)?);
    for n in (0..=max_dim).rev() {
        let ha = HomologyBasis::new(a, n)?;
        let hb = HomologyBasis::new(b, n)?;
        let hc = HomologyBasis::new(c, n)?;
        maps.push(connecting(n + 1, bases.last().expect("nonempty"), &ha)?);
        maps.push(homology_map(i.matrix(n), &ha, &hb)?);
        maps.push(homology_map(j.matrix(n), &hb, &hc)?);
        for (k, h) in [(0, ha), (1, hb), (2, hc)] {
            labels.push(format!("H{n}({})", names[k]));
            bases.push(h);
        }
    }
    let last = bases.last().expect("nonempty");
    maps.push(Matrix::zeros(0, last.len()));

    let relations: Vec<Lattice> = bases.iter().map(HomologyBasis::relations).collect();
    let zero = Lattice::zero(0);
    let nodes = (0..bases.len())
        .map(|k| SequenceNode {
            label: labels[k].clone(),
            group: bases[k].group(),
            exact: (k > 0).then(|| {
                let next = relations.get(k + 1).unwrap_or(&zero);
                is_exact_at(&maps[k - 1], &relations[k], &maps[k], next)
            }),
        })
        .collect();
    Ok(ExactSequence { nodes })
}

fn subspace_complex(
    space: &FiniteClosureSpace,
    points: PointSet,
    selector: TheorySelector,
    max_dim: usize,
    limits: Limits,
) -> Result<(SingularComplex, Vec<usize>)> {
    let (sub, ambient) = subspace(space, points)?;
    let c = SingularComplex::build(
        Arc::new(sub),
        selector,
        max_dim,
        ChainModel::Normalized,
        limits,
    )?;
    Ok((c, ambient))
}

/// Positions of `inner` ambient indices within `outer` ambient indices.
fn relative_indices(inner: &[usize], outer: &[usize]) -> Vec<usize> {
    inner
        .iter()
        .map(|p| outer.binary_search(p).expect("nested subspaces"))
        .collect()
}

/// `… → H_n(A) → H_n(X) → H_n(X, A) → H_{n−1}(A) → …`.
pub fn les_of_pair(
    pair: &SpacePair,
    selector: TheorySelector,
    max_dim: usize,
    limits: Limits,
) -> Result<ExactSequence> {
    let x = pair.ambient();
    let (a, ambient) = subspace_complex(x, pair.subspace_points(), selector, max_dim, limits)?;
    let whole =
        SingularComplex::build(x.clone(), selector, max_dim, ChainModel::Normalized, limits)?;
    let rel = SingularComplex::relative(pair, selector, max_dim, ChainModel::Normalized, limits)?;
    let i = whole.inclusion_from(&a, &ambient)?;
    let j = whole.projection_to(&rel)?;
    long_exact_sequence(
        a.complex(),
        whole.complex(),
        rel.complex(),
        &i,
        &j,
        max_dim,
        ["A", "X", "X,A"],
    )
}

/// Outcome of a Mayer-Vietoris computation.
#[derive(Clone, Debug, Serialize)]
pub struct MayerVietoris {
    /// The sequence ending in the homology of the cover subcomplex.
    pub sequence: ExactSequence,
    /// Whether the cover subcomplex is the whole complex.
    pub small_chains_equal: bool,
    /// Per degree, whether the cover subcomplex has the homology of the
    /// whole complex via inclusion.
    pub small_chains_iso: Vec<bool>,
}

/// `… → H_n(A∩B) →ᵠ H_n(A) ⊕ H_n(B) →ᵠ H_n(X) → H_{n−1}(A∩B) → …` with
/// `φ(x) = (x, −x)` and `ψ(x, y) = x + y`.
pub fn mayer_vietoris(
    space: &Arc<FiniteClosureSpace>,
    a: PointSet,
    b: PointSet,
    selector: TheorySelector,
    max_dim: usize,
    limits: Limits,
) -> Result<MayerVietoris> {
    let cover = Cover::new(space.clone(), vec![a, b])?;
    cover.require_interior()?;
    let (ca, amb_a) = subspace_complex(space, a, selector, max_dim, limits)?;
    let (cb, amb_b) = subspace_complex(space, b, selector, max_dim, limits)?;
    let (cab, amb_ab) = subspace_complex(space, a.intersection(b), selector, max_dim, limits)?;
    let (small, equal) = SingularComplex::cover_subcomplex(&cover, selector, max_dim, limits)?;

    let ia = ca.inclusion_from(&cab, &relative_indices(&amb_ab, &amb_a))?;
    let ib = cb.inclusion_from(&cab, &relative_indices(&amb_ab, &amb_b))?;
    let ja = small.inclusion_from(&ca, &amb_a)?;
    let jb = small.inclusion_from(&cb, &amb_b)?;
    let top = max_dim + 1;
    let phi = ChainMap::new(
        (0..=top)
            .map(|n| ia.matrix(n).vstack(&ib.matrix(n).scale(-1)))
            .collect(),
    );
    let psi = ChainMap::new(
        (0..=top)
            .map(|n| ja.matrix(n).hstack(jb.matrix(n)))
            .collect(),
    );
    let sum = ca.complex().direct_sum(cb.complex())?;
    let sequence = long_exact_sequence(
        cab.complex(),
        &sum,
        small.complex(),
        &phi,
        &psi,
        max_dim,
        ["A∩B", "A⊕B", "X"],
    )?;

    let small_chains_iso = if equal {
        vec![true; max_dim + 1]
    } else {
        let whole = SingularComplex::build(
            space.clone(),
            selector,
            max_dim,
            ChainModel::Normalized,
            limits,
        )?;
        let ident: Vec<usize> = (0..space.len()).collect();
        let inc = whole.inclusion_from(&small, &ident)?;
        (0..=max_dim)
            .map(|n| {
                let hs = HomologyBasis::new(small.complex(), n)?;
                let hw = HomologyBasis::new(whole.complex(), n)?;
                Ok(is_isomorphism(
                    &homology_map(inc.matrix(n), &hs, &hw)?,
                    &hs,
                    &hw,
                ))
            })
            .collect::<Result<Vec<_>>>()?
    };
    Ok(MayerVietoris {
        sequence,
        small_chains_equal: equal,
        small_chains_iso,
    })
}

/// Per-degree comparison of `H_n(X − Z, A − Z)` with `H_n(X, A)`.
#[derive(Clone, Debug, Serialize)]
pub struct ExcisionDegree {
    pub n: usize,
    pub excised: HomologyGroup,
    pub whole: HomologyGroup,
    pub isomorphism: bool,
}

/// Checks that inclusion `(X − Z, A − Z) → (X, A)` induces isomorphisms
/// through `max_dim`. Requires `Z ⊆ A` and `c(Z) ⊆ i(A)`.
pub fn excision(
    space: &Arc<FiniteClosureSpace>,
    a: PointSet,
    z: PointSet,
    selector: TheorySelector,
    max_dim: usize,
    limits: Limits,
) -> Result<Vec<ExcisionDegree>> {
    space.check_subset(a)?;
    space.check_subset(z)?;
    if !z.is_subset(a) {
        return Err(Error::input("excised set is not contained in the subspace"));
    }
    if !space
        .closure_unchecked(z)
        .is_subset(space.interior_unchecked(a))
    {
        return Err(Error::input(
            "closure of the excised set is not inside the interior of the subspace",
        ));
    }
    let rest = space.points().difference(z);
    let (y, ambient) = subspace(space, rest)?;
    let y = Arc::new(y);
    let local_a: PointSet = ambient
        .iter()
        .enumerate()
        .filter(|(_, &p)| a.contains(p))
        .map(|(i, _)| i)
        .collect();
    let small = SingularComplex::relative(
        &SpacePair::new(y, local_a)?,
        selector,
        max_dim,
        ChainModel::Normalized,
        limits,
    )?;
    let big = SingularComplex::relative(
        &SpacePair::new(space.clone(), a)?,
        selector,
        max_dim,
        ChainModel::Normalized,
        limits,
    )?;
    let inc = big.inclusion_from(&small, &ambient)?;
    (0..=max_dim)
        .map(|n| {
            let hs = HomologyBasis::new(small.complex(), n)?;
            let hb = HomologyBasis::new(big.complex(), n)?;
            let m = homology_map(inc.matrix(n), &hs, &hb)?;
            Ok(ExcisionDegree {
                n,
                excised: hs.group(),
                whole: hb.group(),
                isomorphism: is_isomorphism(&m, &hs, &hb),
            })
        })
        .collect()
}
