use super::singular::{ChainModel, SingularComplex};
use crate::error::{Error, Result};
use crate::linalg::modp;
use crate::nerves::Flavor;

/// Normalized simplicial cochains with integer or `ℤ/p` values, carrying
/// the front-face/back-face cup product.
pub struct Cochains<'a> {
    complex: &'a SingularComplex,
    modulus: Option<u64>,
}

impl<'a> Cochains<'a> {
    pub fn new(complex: &'a SingularComplex, modulus: Option<u64>) -> Result<Self> {
        if complex.selector().flavor != Flavor::Simplicial {
            return Err(Error::Unsupported(
                "cup products are defined for simplicial theories".into(),
            ));
        }
        if complex.model() != ChainModel::Normalized {
            return Err(Error::input("cochains live on the normalized complex"));
        }
        if matches!(modulus, Some(p) if p < 2) {
            return Err(Error::input("modulus must be at least 2"));
        }
        Ok(Cochains { complex, modulus })
    }

    /// Highest degree with cochains.
    pub fn top(&self) -> usize {
        self.complex.complex().top()
    }

    pub fn rank(&self, p: usize) -> usize {
        self.complex.complex().rank(p)
    }

    fn norm(&self, x: i64) -> i64 {
        match self.modulus {
            Some(m) => x.rem_euclid(m as i64),
            None => x,
        }
    }

    fn check(&self, p: usize, a: &[i64]) -> Result<()> {
        if p > self.top() || a.len() != self.rank(p) {
            return Err(Error::input(format!("not a {p}-cochain")));
        }
        Ok(())
    }

    /// The 0-cochain that is 1 on every point.
    pub fn unit(&self) -> Vec<i64> {
        vec![1; self.rank(0)]
    }

    /// `(δa)(τ) = a(∂τ)`.
    pub fn coboundary(&self, p: usize, a: &[i64]) -> Result<Vec<i64>> {
        self.check(p, a)?;
        if p + 1 > self.top() {
            return Err(Error::input("coboundary beyond the built range"));
        }
        let d = self.complex.complex().boundary(p + 1);
        Ok((0..d.cols())
            .map(|t| self.norm(d.column(t).map(|(r, v)| v * a[r]).sum()))
            .collect())
    }

    /// `(a ⌣ b)(σ) = a(σ|₀..ₚ) · b(σ|ₚ..ₚ₊q)`; degenerate faces contribute 0.
    pub fn cup(&self, p: usize, a: &[i64], q: usize, b: &[i64]) -> Result<Vec<i64>> {
        self.check(p, a)?;
        self.check(q, b)?;
        if p + q > self.top() {
            return Err(Error::input("cup product beyond the built range"));
        }
        let cells = self.complex.cells(p + q);
        Ok(cells
            .iter()
            .map(|s| {
                let fa = self.complex.index_of(p, &s[..=p]).map_or(0, |i| a[i]);
                let fb = self.complex.index_of(q, &s[p..]).map_or(0, |i| b[i]);
                self.norm(fa * fb)
            })
            .collect())
    }

    fn coboundary_rows(&self, p: usize) -> Vec<Vec<u64>> {
        let m = self.modulus.expect("field coefficients");
        let d = self.complex.complex().boundary(p + 1);
        (0..d.cols())
            .map(|t| {
                let mut row = vec![0u64; self.rank(p)];
                for (r, v) in d.column(t) {
                    row[r] = v.rem_euclid(m as i64) as u64;
                }
                row
            })
            .collect()
    }

    fn field(&self) -> Result<u64> {
        self.modulus
            .ok_or_else(|| Error::input("cocycle bases need prime-field coefficients"))
    }

    /// A basis of the `p`-cocycles over `ℤ/m`.
    pub fn cocycle_basis(&self, p: usize) -> Result<Vec<Vec<i64>>> {
        let m = self.field()?;
        if p + 1 > self.top() {
            return Err(Error::input("cocycles beyond the built range"));
        }
        let rows = self.coboundary_rows(p);
        Ok(modp::kernel(&rows, self.rank(p), m)
            .into_iter()
            .map(|v| v.into_iter().map(|x| x as i64).collect())
            .collect())
    }

    /// Whether a `p`-cochain is `δ` of a `(p−1)`-cochain over `ℤ/m`.
    pub fn is_coboundary(&self, p: usize, v: &[i64]) -> Result<bool> {
        let m = self.field()?;
        self.check(p, v)?;
        let target: Vec<u64> = v.iter().map(|&x| x.rem_euclid(m as i64) as u64).collect();
        if p == 0 {
            return Ok(target.iter().all(|&x| x == 0));
        }
        let d = self.complex.complex().boundary(p);
        let images: Vec<Vec<u64>> = (0..d.rows())
            .map(|k| {
                let mut img = vec![0u64; self.rank(p)];
                for t in 0..d.cols() {
                    for (r, val) in d.column(t) {
                        if r == k {
                            img[t] = val.rem_euclid(m as i64) as u64;
                        }
                    }
                }
                img
            })
            .collect();
        Ok(modp::in_span(&images, &target, m))
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::nerves::{Interval, Limits, TheorySelector};
    use crate::spaces::{standard_space, StandardKind};

    fn c5() -> SingularComplex {
        let x = Arc::new(standard_space(StandardKind::Cycle, 5, 0).unwrap());
        SingularComplex::build(
            x,
            TheorySelector::simplicial(Interval::J1),
            2,
            ChainModel::Normalized,
            Limits::default(),
        )
        .unwrap()
    }

    #[test]
    fn unit_law_and_leibniz() {
        let c = c5();
        let k = Cochains::new(&c, None).unwrap();
        let a: Vec<i64> = (0..k.rank(1)).map(|i| (i as i64 * 7 % 5) - 2).collect();
        let b: Vec<i64> = (0..k.rank(1)).map(|i| (i as i64 * 3 % 4) - 1).collect();
        assert_eq!(k.cup(1, &a, 0, &k.unit()).unwrap(), a);
        assert_eq!(k.cup(0, &k.unit(), 1, &a).unwrap(), a);
        let f: Vec<i64> = (0..k.rank(0)).map(|i| i as i64).collect();
        // δ(f ⌣ a) = δf ⌣ a + f ⌣ δa
        let lhs = k.coboundary(1, &k.cup(0, &f, 1, &a).unwrap()).unwrap();
        let t1 = k.cup(1, &k.coboundary(0, &f).unwrap(), 1, &a).unwrap();
        let t2 = k.cup(0, &f, 2, &k.coboundary(1, &a).unwrap()).unwrap();
        let rhs: Vec<i64> = t1.iter().zip(&t2).map(|(x, y)| x + y).collect();
        assert_eq!(lhs, rhs);
        // δ(a ⌣ b) is outside the built range here; check on the 1,1 → 2 level instead.
        assert!(k.cup(1, &a, 1, &b).is_ok());
    }

    #[test]
    fn cocycles_mod_two() {
        let c = c5();
        let k = Cochains::new(&c, Some(2)).unwrap();
        let z1 = k.cocycle_basis(1).unwrap();
        let nontrivial = z1
            .iter()
            .filter(|z| !k.is_coboundary(1, z).unwrap())
            .count();
        assert!(nontrivial > 0);
        let d = k.coboundary(0, &[1, 0, 0, 0, 0]).unwrap();
        assert!(k.is_coboundary(1, &d).unwrap());
    }
}
