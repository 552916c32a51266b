use std::sync::Arc;

use serde::Serialize;

use super::complex::ChainComplex;
use super::groups::{Coefficients, HomologyGroup};
use super::singular::{ChainModel, SingularComplex};
use crate::error::{Error, Result};
use crate::nerves::{Flavor, Limits, TheorySelector};
use crate::spaces::{product, FiniteClosureSpace};

/// A group computed two ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupComparison {
    pub n: usize,
    pub direct: HomologyGroup,
    pub predicted: HomologyGroup,
}

impl GroupComparison {
    pub fn agrees(&self) -> bool {
        self.direct == self.predicted
    }
}

fn require_product_theory(selector: TheorySelector) -> Result<()> {
    if selector.flavor == Flavor::Cubical && !selector.is_cross() {
        return Err(Error::Unsupported(format!(
            "{selector}: product formulas are not established for the inductive product"
        )));
    }
    Ok(())
}

fn normalized(
    space: Arc<FiniteClosureSpace>,
    selector: TheorySelector,
    max_dim: usize,
    limits: Limits,
) -> Result<SingularComplex> {
    SingularComplex::build(space, selector, max_dim, ChainModel::Normalized, limits)
}

/// `⊕ᵢ Hᵢ(X) ⊗ H_{n−i}(Y) ⊕ ⊕ᵢ Tor(Hᵢ(X), H_{n−i−1}(Y))` from integral groups.
pub fn kunneth_prediction(hx: &[HomologyGroup], hy: &[HomologyGroup], n: usize) -> HomologyGroup {
    let mut acc = HomologyGroup::zero();
    for i in 0..=n {
        if let (Some(a), Some(b)) = (hx.get(i), hy.get(n - i)) {
            acc = acc.direct_sum(&a.tensor(b));
        }
        if i < n {
            if let (Some(a), Some(b)) = (hx.get(i), hy.get(n - i - 1)) {
                acc = acc.direct_sum(&a.tor(b));
            }
        }
    }
    acc
}

/// Compares `H_n(X × Y)` with the Künneth formula through `max_dim`. Over a
/// field the formula is `Σ dim Hᵢ(X) · dim H_{n−i}(Y)`.
pub fn kunneth_check(
    x: &Arc<FiniteClosureSpace>,
    y: &Arc<FiniteClosureSpace>,
    selector: TheorySelector,
    coeffs: Coefficients,
    max_dim: usize,
    limits: Limits,
) -> Result<Vec<GroupComparison>> {
    require_product_theory(selector)?;
    let xy = Arc::new(product(x, y)?);
    let hx = normalized(x.clone(), selector, max_dim, limits)?
        .complex()
        .homology_all(coeffs);
    let hy = normalized(y.clone(), selector, max_dim, limits)?
        .complex()
        .homology_all(coeffs);
    let hxy = normalized(xy, selector, max_dim, limits)?
        .complex()
        .homology_all(coeffs);
    Ok((0..=max_dim)
        .map(|n| {
            let predicted = match coeffs {
                Coefficients::Integers => kunneth_prediction(&hx, &hy, n),
                _ => HomologyGroup::free((0..=n).map(|i| hx[i].betti * hy[n - i].betti).sum()),
            };
            GroupComparison {
                n,
                direct: hxy[n].clone(),
                predicted,
            }
        })
        .collect())
}

/// Compares `H_n(X × Y)` with `H_n(C(X) ⊗ C(Y))` through `max_dim`.
pub fn eilenberg_zilber_check(
    x: &Arc<FiniteClosureSpace>,
    y: &Arc<FiniteClosureSpace>,
    selector: TheorySelector,
    max_dim: usize,
    limits: Limits,
) -> Result<Vec<GroupComparison>> {
    require_product_theory(selector)?;
    let xy = Arc::new(product(x, y)?);
    let cx = normalized(x.clone(), selector, max_dim, limits)?;
    let cy = normalized(y.clone(), selector, max_dim, limits)?;
    let cxy = normalized(xy, selector, max_dim, limits)?;
    let t = cx.complex().tensor(cy.complex())?;
    let ht = t.homology_all(Coefficients::Integers);
    let hxy = cxy.complex().homology_all(Coefficients::Integers);
    Ok((0..=max_dim)
        .map(|n| GroupComparison {
            n,
            direct: hxy[n].clone(),
            predicted: ht[n].clone(),
        })
        .collect())
}

/// Universal coefficient comparisons in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UctDegree {
    pub homology: GroupComparison,
    pub cohomology: GroupComparison,
}

impl UctDegree {
    pub fn agrees(&self) -> bool {
        self.homology.agrees() && self.cohomology.agrees()
    }
}

/// `H_n(C; G) ≅ H_n ⊗ G ⊕ Tor(H_{n−1}, G)` and
/// `Hⁿ(C; G) ≅ Hom(H_n, G) ⊕ Ext(H_{n−1}, G)` for `G = ℤ` or `ℤ/p`, through
/// the valid range of the complex.
pub fn uct_check(c: &ChainComplex, coeffs: Coefficients) -> Result<Vec<UctDegree>> {
    let h = c.homology_all(Coefficients::Integers);
    let hg = c.homology_all(coeffs);
    let cg = c.cohomology_all(coeffs);
    let prev = |n: usize| {
        if n == 0 {
            HomologyGroup::zero()
        } else {
            h[n - 1].clone()
        }
    };
    (0..h.len())
        .map(|n| {
            let (hom_pred, co_pred) = match coeffs {
                Coefficients::Integers => (
                    h[n].clone(),
                    HomologyGroup::free(h[n].betti).direct_sum(&prev(n).torsion_part()),
                ),
                Coefficients::Mod(p) => {
                    let k = h[n].betti + h[n].p_rank(p) + prev(n).p_rank(p);
                    (HomologyGroup::free(k), HomologyGroup::free(k))
                }
                Coefficients::Rationals => (
                    HomologyGroup::free(h[n].betti),
                    HomologyGroup::free(h[n].betti),
                ),
            };
            Ok(UctDegree {
                homology: GroupComparison {
                    n,
                    direct: hg[n].clone(),
                    predicted: hom_pred,
                },
                cohomology: GroupComparison {
                    n,
                    direct: cg[n].clone(),
                    predicted: co_pred,
                },
            })
        })
        .collect()
}
