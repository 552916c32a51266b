//! Subgroups of ℤⁿ kept in row Hermite normal form, so equal subgroups have
//! equal representations.

use super::dense::{kernel, Matrix};
use super::int::Integer;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    /// Echelon rows with positive pivots; entries above a pivot are reduced
    /// into `0..pivot`.
    basis: Vec<Vec<Integer>>,
}

fn hermite(dim: usize, mut rows: Vec<Vec<Integer>>) -> Vec<Vec<Integer>> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut r = 0;
    for c in 0..dim {
        if r == rows.len() {
            break;
        }
        // Fold every row with a nonzero entry in column c into row r.
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            if rows[r][c].is_zero() {
                rows.swap(r, i);
                continue;
            }
            let (a, b) = (rows[r][c].clone(), rows[i][c].clone());
            let (g, s, t) = a.ext_gcd(&b);
            let (ag, bg) = (a.div_floor(&g), b.div_floor(&g));
            for k in c..dim {
                let (x, y) = (rows[r][k].clone(), rows[i][k].clone());
                rows[r][k] = &(&s * &x) + &(&t * &y);
                rows[i][k] = &(&ag * &y) - &(&bg * &x);
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in &mut rows[r][c..] {
                *x = -&*x;
            }
        }
        let p = rows[r][c].clone();
        for i in 0..r {
            let q = rows[i][c].div_floor(&p);
            if !q.is_zero() {
                for k in c..dim {
                    let sub = &q * &rows[r][k];
                    rows[i][k] -= &sub;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    rows
}

impl Lattice {
    pub fn from_generators(dim: usize, gens: impl IntoIterator<Item = Vec<Integer>>) -> Self {
        let rows: Vec<Vec<Integer>> = gens.into_iter().collect();
        assert!(rows.iter().all(|r| r.len() == dim), "generator length");
        Lattice {
            dim,
            basis: hermite(dim, rows),
        }
    }

    /// Lattice spanned by the columns of `m`.
    pub fn column_span(m: &Matrix) -> Self {
        Self::from_generators(m.rows(), (0..m.cols()).map(|j| m.column(j)))
    }

    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: vec![] }
    }

    pub fn full(dim: usize) -> Self {
        let gens = (0..dim).map(|i| {
            let mut e = vec![Integer::ZERO; dim];
            e[i] = Integer::ONE;
            e
        });
        Self::from_generators(dim, gens)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Integer>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Integer]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length");
        let mut v = v.to_vec();
        for row in &self.basis {
            let c = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            if v[..c].iter().any(|x| !x.is_zero()) {
                return false;
            }
            if !row[c].divides(&v[c]) {
                return false;
            }
            let q = v[c].div_floor(&row[c]);
            for k in c..self.dim {
                let sub = &q * &row[k];
                v[k] -= &sub;
            }
        }
        v.iter().all(Integer::is_zero)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Self::from_generators(self.dim, self.basis.iter().chain(&other.basis).cloned())
    }

    /// `{ m·x : x ∈ self }`.
    pub fn image(&self, m: &Matrix) -> Lattice {
        Self::from_generators(m.rows(), self.basis.iter().map(|b| m.mul_vec(b)))
    }

    /// `{ x : m·x ∈ target }`.
    pub fn preimage(m: &Matrix, target: &Lattice) -> Lattice {
        assert_eq!(m.rows(), target.dim, "dimension mismatch");
        let t = Matrix::from_columns(target.dim, &target.basis);
        let k = kernel(&m.hstack(&t));
        Self::from_generators(
            m.cols(),
            (0..k.cols()).map(|j| k.column(j)[..m.cols()].to_vec()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<Integer> {
        x.iter().map(|&a| Integer::from(a)).collect()
    }

    #[test]
    fn canonical_form() {
        let a = Lattice::from_generators(2, [v(&[2, 0]), v(&[0, 3])]);
        let b = Lattice::from_generators(2, [v(&[2, 3]), v(&[4, 3]), v(&[0, 6])]);
        assert_eq!(a, b);
        assert!(a.contains(&v(&[4, -3])));
        assert!(!a.contains(&v(&[1, 0])));
        let full = Lattice::from_generators(2, [v(&[2, 1]), v(&[3, 2])]);
        assert_eq!(full, Lattice::full(2));
        assert!(full.contains_lattice(&a));
    }

    #[test]
    fn preimages() {
        // x ↦ 2x on ℤ; preimage of 4ℤ is 2ℤ.
        let m = Matrix::from_rows(&[vec![2]]);
        let four = Lattice::from_generators(1, [v(&[4])]);
        assert_eq!(
            Lattice::preimage(&m, &four),
            Lattice::from_generators(1, [v(&[2])])
        );
        let zero = Lattice::preimage(&Matrix::from_rows(&[vec![1, 1]]), &Lattice::zero(1));
        assert_eq!(zero, Lattice::from_generators(2, [v(&[1, -1])]));
    }
}
