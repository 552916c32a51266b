use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homotopy::{Direction, HomotopyWitness};
use crate::nerves::{boundary_raw, enumerate_raw, Flavor, Limits, TheorySelector};
use crate::spaces::ProductKind;

/// A chain of raw simplices with integer coefficients, zero terms removed.
pub type Chain = BTreeMap<Vec<u8>, i64>;

fn add_term(c: &mut Chain, s: Vec<u8>, k: i64) {
    if k == 0 {
        return;
    }
    match c.entry(s) {
        Entry::Vacant(e) => {
            e.insert(k);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += k;
            if *e.get() == 0 {
                e.remove();
            }
        }
    }
}

/// `∂ = Σ (−1)ⁱ dᵢ` on unnormalized simplicial chains.
pub fn chain_boundary(c: &Chain) -> Chain {
    let mut out = Chain::new();
    for (s, &k) in c {
        for (sign, face) in boundary_raw(Flavor::Simplicial, s) {
            add_term(&mut out, face, sign * k);
        }
    }
    out
}

/// Postcomposition with a point assignment.
pub fn push_forward(c: &Chain, f: &[usize]) -> Chain {
    let mut out = Chain::new();
    for (s, &k) in c {
        add_term(
            &mut out,
            s.iter().map(|&p| f[p as usize] as u8).collect(),
            k,
        );
    }
    out
}

fn sum(a: &Chain, b: &Chain, sb: i64) -> Chain {
    let mut out = a.clone();
    for (s, &k) in b {
        add_term(&mut out, s.clone(), sb * k);
    }
    out
}

/// Chain homotopy `P` built from a chain of one-step `(J, ×)` homotopies,
/// with `∂P + P∂ = g_# − f_#` for the first map `f` and last map `g`.
#[derive(Clone, Debug)]
pub struct Prism {
    /// Per step: values at `0` and `1`, and the sign of its contribution.
    steps: Vec<(Vec<usize>, Vec<usize>, i64)>,
    first: Vec<usize>,
    last: Vec<usize>,
}

/// Builds the prism operator of a homotopy witness.
pub fn prism_homotopy(w: &HomotopyWitness) -> Result<Prism> {
    if w.product != ProductKind::Cross {
        return Err(Error::Unsupported("prisms need product homotopies".into()));
    }
    if !w.verify() {
        return Err(Error::input("homotopy data does not witness its steps"));
    }
    let steps = (0..w.steps())
        .map(|i| {
            let (a, b) = w.step_ends(i);
            let sign = match w.directions[i] {
                Direction::Forward => 1,
                Direction::Backward => -1,
            };
            (a.assignment().to_vec(), b.assignment().to_vec(), sign)
        })
        .collect();
    Ok(Prism {
        steps,
        first: w.source().assignment().to_vec(),
        last: w.target().assignment().to_vec(),
    })
}

impl Prism {
    /// `P(σ) = Σᵢ ±Σⱼ (−1)ʲ (Hᵢ(v₀,0), …, Hᵢ(vⱼ,0), Hᵢ(vⱼ,1), …, Hᵢ(vₙ,1))`.
    pub fn apply_simplex(&self, s: &[u8]) -> Chain {
        let mut out = Chain::new();
        for (at0, at1, sign) in &self.steps {
            for j in 0..s.len() {
                let mut t = Vec::with_capacity(s.len() + 1);
                t.extend(s[..=j].iter().map(|&v| at0[v as usize] as u8));
                t.extend(s[j..].iter().map(|&v| at1[v as usize] as u8));
                let sj = if j % 2 == 0 { 1 } else { -1 };
                add_term(&mut out, t, sign * sj);
            }
        }
        out
    }

    pub fn apply(&self, c: &Chain) -> Chain {
        let mut out = Chain::new();
        for (s, &k) in c {
            for (t, v) in self.apply_simplex(s) {
                add_term(&mut out, t, k * v);
            }
        }
        out
    }

    /// `∂P(σ) + P(∂σ) − g_#(σ) + f_#(σ)`, zero when the identity holds.
    pub fn defect(&self, s: &[u8]) -> Chain {
        let single: Chain = [(s.to_vec(), 1)].into();
        let lhs = sum(
            &chain_boundary(&self.apply(&single)),
            &self.apply(&chain_boundary(&single)),
            1,
        );
        let rhs = sum(
            &push_forward(&single, &self.last),
            &push_forward(&single, &self.first),
            -1,
        );
        sum(&lhs, &rhs, -1)
    }
}

/// Basis simplices checked and the ones where the identity failed.
#[derive(Clone, Debug, Serialize)]
pub struct PrismReport {
    pub checked: usize,
    pub failures: Vec<Vec<u8>>,
}

/// Checks the prism identity on every simplex of the source through `max_dim`.
pub fn verify_prism_identity(
    w: &HomotopyWitness,
    max_dim: usize,
    limits: Limits,
) -> Result<PrismReport> {
    let p = prism_homotopy(w)?;
    let sel = TheorySelector::simplicial(w.interval);
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in 0..=max_dim {
        let cells = enumerate_raw(w.source().source(), sel, n, limits)?;
        for s in cells.iter() {
            checked += 1;
            if !p.defect(s).is_empty() {
                failures.push(s.to_vec());
            }
        }
    }
    Ok(PrismReport { checked, failures })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::homotopy::{are_homotopic, one_step_homotopic, Budget};
    use crate::nerves::Interval;
    use crate::spaces::{standard_space, SpaceMap, StandardKind};

    #[test]
    fn trivial_homotopy_has_zero_defect() {
        let e = Arc::new(standard_space(StandardKind::Path, 1, 0).unwrap());
        let id = SpaceMap::identity(e);
        let w = one_step_homotopic(&id, &id, Interval::J1, ProductKind::Cross)
            .unwrap()
            .unwrap();
        let r = verify_prism_identity(&w, 2, Limits::default()).unwrap();
        assert!(r.failures.is_empty());
        assert_eq!(r.checked, 2 + 4 + 8);
    }

    #[test]
    fn edge_contraction() {
        let e = Arc::new(standard_space(StandardKind::Path, 1, 0).unwrap());
        let id = SpaceMap::identity(e.clone());
        let c = SpaceMap::constant(e.clone(), e, 0).unwrap();
        let w = one_step_homotopic(&id, &c, Interval::J1, ProductKind::Cross)
            .unwrap()
            .unwrap();
        let r = verify_prism_identity(&w, 2, Limits::default()).unwrap();
        assert!(r.failures.is_empty());
    }

    #[test]
    fn backward_steps_under_jplus() {
        // On J₊ the identity reaches the constant at 0 only by a reversed step.
        let x = Arc::new(standard_space(StandardKind::JPlus, 1, 0).unwrap());
        let id = SpaceMap::identity(x.clone());
        let c = SpaceMap::constant(x.clone(), x, 0).unwrap();
        let w = are_homotopic(
            &id,
            &c,
            Interval::JPlus,
            ProductKind::Cross,
            Budget::default(),
        )
        .unwrap()
        .found()
        .unwrap();
        assert!(w.directions.contains(&Direction::Backward));
        let r = verify_prism_identity(&w, 2, Limits::default()).unwrap();
        assert!(r.failures.is_empty(), "{:?}", r.failures);
    }
}
