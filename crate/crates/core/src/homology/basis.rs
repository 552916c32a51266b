use super::complex::ChainComplex;
use super::groups::HomologyGroup;
use crate::error::{Error, Result};
use crate::linalg::{smith_with, Integer, Lattice, Matrix, SparseMatrix};

/// Largest chain rank for which explicit bases are computed; the dense
/// transforms grow quadratically in it.
pub const MAX_BASIS_RANK: usize = 2000;

/// An explicit presentation of `H_n`: cycle representatives with orders
/// (`0` for free generators) and a coordinate map on cycles.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    degree: usize,
    orders: Vec<Integer>,
    /// Generator cycles as columns.
    generators: Matrix,
    /// Rows giving generator coordinates of a cycle.
    coords: Matrix,
    boundary: SparseMatrix,
}

impl HomologyBasis {
    /// `H_n = Z_n / B_n`.
    pub fn new(c: &ChainComplex, n: usize) -> Result<Self> {
        match c.valid_through() {
            Some(v) if n <= v => {}
            _ if !c.is_truncated() && n <= c.top() => {}
            _ => {
                return Err(Error::input(format!(
                    "degree {n} is beyond the computed range"
                )))
            }
        }
        Self::presentation(c, n, true)
    }

    /// The cycle group `Z_n`, with no relations. Defined up to the top degree.
    pub fn cycles(c: &ChainComplex, n: usize) -> Result<Self> {
        if n > c.top() {
            return Err(Error::input(format!(
                "degree {n} is beyond the computed range"
            )));
        }
        Self::presentation(c, n, false)
    }

    fn presentation(c: &ChainComplex, n: usize, quotient: bool) -> Result<Self> {
        let k = c.rank(n);
        let above = if quotient { c.rank(n + 1) } else { 0 };
        if k.max(above) > MAX_BASIS_RANK {
            return Err(Error::resource(
                "chain rank for an explicit homology basis",
                MAX_BASIS_RANK,
            ));
        }
        let d = c.boundary(n).to_dense();
        let s = smith_with(&d, false, true);
        let r = s.rank();
        let v = s.v.expect("right transform");
        let v_inv = s.v_inv.expect("right transform");
        let kernel = v.columns(r..k);
        let kernel_coords = v_inv.rows_range(r..k);
        let z = k - r;
        let (orders, generators, coords) = if quotient {
            let rel = kernel_coords.mul(&c.boundary_above(n).to_dense());
            let t = smith_with(&rel, true, false);
            let p = t.u.expect("left transform");
            let p_inv = t.u_inv.expect("left transform");
            let keep: Vec<usize> = (0..z)
                .filter(|&i| i >= t.diagonal.len() || !t.diagonal[i].is_one())
                .collect();
            let orders = keep
                .iter()
                .map(|&i| t.diagonal.get(i).cloned().unwrap_or(Integer::ZERO))
                .collect();
            let gens = kernel.mul(&p_inv);
            let generators = Matrix::from_fn(k, keep.len(), |a, b| gens.get(a, keep[b]).clone());
            let pc = p.mul(&kernel_coords);
            let coords = Matrix::from_fn(keep.len(), k, |a, b| pc.get(keep[a], b).clone());
            (orders, generators, coords)
        } else {
            (vec![Integer::ZERO; z], kernel, kernel_coords)
        };
        Ok(HomologyBasis {
            degree: n,
            orders,
            generators,
            coords,
            boundary: c.boundary(n).clone(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of generators.
    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn orders(&self) -> &[Integer] {
        &self.orders
    }

    pub fn group(&self) -> HomologyGroup {
        HomologyGroup::from_cyclic(0, self.orders.iter().cloned())
    }

    pub fn generator(&self, i: usize) -> Vec<Integer> {
        self.generators.column(i)
    }

    pub fn is_cycle(&self, chain: &[Integer]) -> bool {
        self.boundary.apply(chain).iter().all(Integer::is_zero)
    }

    /// Reduced coordinates of a cycle.
    pub fn coordinates(&self, cycle: &[Integer]) -> Result<Vec<Integer>> {
        if cycle.len() != self.coords.cols() {
            return Err(Error::input("chain has the wrong length"));
        }
        if !self.is_cycle(cycle) {
            return Err(Error::input("chain is not a cycle"));
        }
        Ok(self.reduce(self.coords.mul_vec(cycle)))
    }

    /// Whether a cycle is zero in homology.
    pub fn is_boundary(&self, cycle: &[Integer]) -> Result<bool> {
        Ok(self.coordinates(cycle)?.iter().all(Integer::is_zero))
    }

    /// Reduces torsion coordinates into `0..order`.
    pub fn reduce(&self, mut v: Vec<Integer>) -> Vec<Integer> {
        for (x, o) in v.iter_mut().zip(&self.orders) {
            if !o.is_zero() {
                *x = x.mod_floor(o);
            }
        }
        v
    }

    /// Relations among the generators: `ordersᵢ · eᵢ`.
    pub fn relations(&self) -> Lattice {
        let g = self.len();
        Lattice::from_generators(
            g,
            self.orders
                .iter()
                .enumerate()
                .filter(|(_, o)| !o.is_zero())
                .map(|(i, o)| {
                    let mut e = vec![Integer::ZERO; g];
                    e[i] = o.clone();
                    e
                }),
        )
    }
}

/// Matrix of the map induced on homology by a chain-level matrix, in
/// generator coordinates, reduced modulo the target orders.
pub fn homology_map(f: &SparseMatrix, src: &HomologyBasis, tgt: &HomologyBasis) -> Result<Matrix> {
    if f.cols() != src.generators.rows() || f.rows() != tgt.coords.cols() {
        return Err(Error::input("chain map does not match the homology bases"));
    }
    let cols = (0..src.len())
        .map(|i| tgt.coordinates(&f.apply(&src.generator(i))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(tgt.len(), &cols))
}

/// Whether `m : src → tgt` is an isomorphism of the presented groups.
pub fn is_isomorphism(m: &Matrix, src: &HomologyBasis, tgt: &HomologyBasis) -> bool {
    src.group() == tgt.group() && is_surjective(m, tgt)
}

/// Image plus relations is everything; with equal finitely generated
/// groups this forces injectivity too.
pub fn is_surjective(m: &Matrix, tgt: &HomologyBasis) -> bool {
    Lattice::column_span(m).sum(&tgt.relations()) == Lattice::full(tgt.len())
}

/// Exactness of `G₁ →ᵐ G₂ →ⁿ G₃` at `G₂`, where the groups are given by
/// their relation lattices.
pub fn is_exact_at(incoming: &Matrix, mid: &Lattice, outgoing: &Matrix, next: &Lattice) -> bool {
    let image = Lattice::column_span(incoming).sum(mid);
    let kernel = Lattice::preimage(outgoing, next);
    image == kernel
}
