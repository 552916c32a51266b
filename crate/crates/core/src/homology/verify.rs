use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use super::basis::{homology_map, is_isomorphism, HomologyBasis};
use super::exact::{excision, les_of_pair, mayer_vietoris};
use super::groups::{Coefficients, HomologyGroup};
use super::products::{eilenberg_zilber_check, kunneth_check, uct_check, GroupComparison};
use super::singular::{comparison_chain_map, ChainModel, SingularComplex};
use crate::error::{Error, Result};
use crate::homotopy::homotopy_classes;
use crate::linalg::Matrix;
use crate::nerves::{is_degenerate_raw, Flavor, Interval, Limits, TheorySelector};
use crate::spaces::{point, Cover, FiniteClosureSpace, PointSet, ProductKind, SpaceMap, SpacePair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    /// Computed for a theory where the statement is not established.
    Experimental,
    Unsupported,
}

/// Outcome of one verification.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub theorem: String,
    pub selector: Option<String>,
    pub instance: String,
    pub status: Status,
    pub details: Value,
}

impl Report {
    fn new(
        theorem: &str,
        selector: Option<TheorySelector>,
        instance: &str,
        status: Status,
        details: Value,
    ) -> Self {
        Report {
            theorem: theorem.to_string(),
            selector: selector.map(|s| s.to_string()),
            instance: instance.to_string(),
            status,
            details,
        }
    }

    fn unsupported(
        theorem: &str,
        selector: TheorySelector,
        instance: &str,
        reason: String,
    ) -> Self {
        Self::new(
            theorem,
            Some(selector),
            instance,
            Status::Unsupported,
            json!({ "reason": reason }),
        )
    }
}

/// Simplicial and product cubical theories, where the sheaf-like theorems hold.
pub fn is_asserted_theory(selector: TheorySelector) -> bool {
    selector.flavor == Flavor::Simplicial || selector.is_cross()
}

fn verdict(selector: TheorySelector, ok: bool) -> Status {
    match (is_asserted_theory(selector), ok) {
        (false, _) => Status::Experimental,
        (true, true) => Status::Verified,
        (true, false) => Status::Refuted,
    }
}

fn normalized(
    space: Arc<FiniteClosureSpace>,
    selector: TheorySelector,
    max_dim: usize,
    limits: Limits,
) -> Result<SingularComplex> {
    SingularComplex::build(space, selector, max_dim, ChainModel::Normalized, limits)
}

/// Matrices of `f_*` on `H_n` for `n ≤ max_dim`, in the generators of the two complexes.
pub fn induced_homology_maps(
    f: &SpaceMap,
    src: &SingularComplex,
    tgt: &SingularComplex,
) -> Result<Vec<Matrix>> {
    let chain = src.induced(f, tgt)?;
    (0..=src.max_dim().min(tgt.max_dim()))
        .map(|n| {
            let hs = HomologyBasis::new(src.complex(), n)?;
            let ht = HomologyBasis::new(tgt.complex(), n)?;
            homology_map(chain.matrix(n), &hs, &ht)
        })
        .collect()
}

pub fn verify_mayer_vietoris(
    space: &Arc<FiniteClosureSpace>,
    a: PointSet,
    b: PointSet,
    selector: TheorySelector,
    max_dim: usize,
    limits: Limits,
    instance: &str,
) -> Result<Report> {
    let mv = mayer_vietoris(space, a, b, selector, max_dim, limits)?;
    let ok = mv.sequence.is_exact();
    Ok(Report::new(
        "mayer-vietoris",
        Some(selector),
        instance,
        verdict(selector, ok),
        json!({
            "exact": ok,
            "small_chains_equal": mv.small_chains_equal,
            "small_chains_iso": mv.small_chains_iso,
            "sequence": mv.sequence,
        }),
    ))
}

pub fn verify_excision(
    space: &Arc<FiniteClosureSpace>,
    a: PointSet,
    z: PointSet,
    selector: TheorySelector,
    max_dim: usize,
    limits: Limits,
    instance: &str,
) -> Result<Report> {
    let degrees = excision(space, a, z, selector, max_dim, limits)?;
    let ok = degrees.iter().all(|d| d.isomorphism);
    Ok(Report::new(
        "excision",
        Some(selector),
        instance,
        verdict(selector, ok),
        json!({ "isomorphism": ok, "degrees": degrees }),
    ))
}

/// The long exact sequence of a pair is asserted in every theory.
pub fn verify_les(
    pair: &SpacePair,
    selector: TheorySelector,
    max_dim: usize,
    limits: Limits,
    instance: &str,
) -> Result<Report> {
    let les = les_of_pair(pair, selector, max_dim, limits)?;
    let ok = les.is_exact();
    let status = if ok {
        Status::Verified
    } else {
        Status::Refuted
    };
    Ok(Report::new(
        "les",
        Some(selector),
        instance,
        status,
        json!({ "exact": ok, "sequence": les }),
    ))
}

pub fn verify_cover_subcomplex(
    cover: &Cover,
    selector: TheorySelector,
    max_dim: usize,
    limits: Limits,
    instance: &str,
) -> Result<Report> {
    let (small, equal) = SingularComplex::cover_subcomplex(cover, selector, max_dim, limits)?;
    let mut details = json!({ "equality": equal, "ranks": small.complex().ranks() });
    if !equal {
        let full = normalized(cover.space().clone(), selector, max_dim, limits)?;
        let escaping: Vec<String> = (0..=max_dim + 1)
            .flat_map(|n| {
                let labels = full.basis_labels(n);
                full.cells(n)
                    .iter()
                    .zip(labels)
                    .filter(|(row, _)| small.index_of(n, row).is_none())
                    .map(|(_, l)| l)
                    .collect::<Vec<_>>()
            })
            .collect();
        details["escaping_cells"] = json!(escaping);
    }
    Ok(Report::new(
        "cover-subcomplex",
        Some(selector),
        instance,
        verdict(selector, equal),
        details,
    ))
}

fn comparisons_report(
    theorem: &str,
    selector: TheorySelector,
    instance: &str,
    result: Result<Vec<GroupComparison>>,
) -> Result<Report> {
    match result {
        Err(Error::Unsupported(reason)) => {
            Ok(Report::unsupported(theorem, selector, instance, reason))
        }
        Err(e) => Err(e),
        Ok(cmp) => {
            let ok = cmp.iter().all(GroupComparison::agrees);
            let status = if ok {
                Status::Verified
            } else {
                Status::Refuted
            };
            Ok(Report::new(
                theorem,
                Some(selector),
                instance,
                status,
                json!({ "degrees": cmp }),
            ))
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn verify_kunneth(
    x: &Arc<FiniteClosureSpace>,
    y: &Arc<FiniteClosureSpace>,
    selector: TheorySelector,
    coeffs: Coefficients,
    max_dim: usize,
    limits: Limits,
    instance: &str,
) -> Result<Report> {
    let r = kunneth_check(x, y, selector, coeffs, max_dim, limits);
    comparisons_report("kunneth", selector, instance, r)
}

pub fn verify_eilenberg_zilber(
    x: &Arc<FiniteClosureSpace>,
    y: &Arc<FiniteClosureSpace>,
    selector: TheorySelector,
    max_dim: usize,
    limits: Limits,
    instance: &str,
) -> Result<Report> {
    let r = eilenberg_zilber_check(x, y, selector, max_dim, limits);
    comparisons_report("ez", selector, instance, r)
}

pub fn verify_uct(
    space: &Arc<FiniteClosureSpace>,
    selector: TheorySelector,
    coeffs: Coefficients,
    max_dim: usize,
    limits: Limits,
    instance: &str,
) -> Result<Report> {
    let c = normalized(space.clone(), selector, max_dim, limits)?;
    let degrees = uct_check(c.complex(), coeffs)?;
    let ok = degrees.iter().all(|d| d.agrees());
    let status = if ok {
        Status::Verified
    } else {
        Status::Refuted
    };
    Ok(Report::new(
        "uct",
        Some(selector),
        instance,
        status,
        json!({ "coefficients": coeffs.to_string(), "degrees": degrees }),
    ))
}

/// Facts about the comparison map for one space.
#[derive(Clone, Debug, Serialize)]
pub struct ComparisonFacts {
    pub chain_map: bool,
    /// Distinct non-degenerate simplices go to distinct basis cubes.
    pub injective_on_nondegenerate: bool,
    /// In degrees 0 and 1 non-degenerate simplices biject onto basis cubes.
    pub bijective_below_two: bool,
    pub simplicial: Vec<HomologyGroup>,
    pub cubical: Vec<HomologyGroup>,
    pub isomorphism: Vec<bool>,
}

pub fn comparison_facts(
    space: &Arc<FiniteClosureSpace>,
    interval: Interval,
    max_dim: usize,
    limits: Limits,
) -> Result<ComparisonFacts> {
    let s = SingularComplex::build(
        space.clone(),
        TheorySelector::simplicial(interval),
        max_dim,
        ChainModel::Moore,
        limits,
    )?;
    let c = normalized(
        space.clone(),
        TheorySelector::cubical(interval, ProductKind::Cross),
        max_dim,
        limits,
    )?;
    let f = comparison_chain_map(&s, &c)?;
    let chain_map = f.is_chain_map(s.complex(), c.complex());
    let mut injective = true;
    let mut bijective = true;
    for n in 0..=f.top() {
        let mut hit = vec![false; c.complex().rank(n)];
        let mut nondeg = 0;
        for (k, row) in s.cells(n).iter().enumerate() {
            if is_degenerate_raw(Flavor::Simplicial, row) {
                continue;
            }
            nondeg += 1;
            let col: Vec<(usize, i64)> = f.matrix(n).column(k).collect();
            match col.as_slice() {
                [(t, 1)] if !hit[*t] => hit[*t] = true,
                _ => injective = false,
            }
        }
        if n < 2 && nondeg != c.complex().rank(n) {
            bijective = false;
        }
    }
    let mut simplicial = Vec::new();
    let mut cubical = Vec::new();
    let mut isomorphism = Vec::new();
    for n in 0..=max_dim {
        let hs = HomologyBasis::new(s.complex(), n)?;
        let hc = HomologyBasis::new(c.complex(), n)?;
        isomorphism.push(is_isomorphism(
            &homology_map(f.matrix(n), &hs, &hc)?,
            &hs,
            &hc,
        ));
        simplicial.push(hs.group());
        cubical.push(hc.group());
    }
    Ok(ComparisonFacts {
        chain_map,
        injective_on_nondegenerate: injective,
        bijective_below_two: injective && bijective,
        simplicial,
        cubical,
        isomorphism,
    })
}

pub fn verify_comparison(
    space: &Arc<FiniteClosureSpace>,
    interval: Interval,
    max_dim: usize,
    limits: Limits,
    instance: &str,
) -> Result<Report> {
    let facts = comparison_facts(space, interval, max_dim, limits)?;
    let ok = facts.chain_map && facts.isomorphism.iter().all(|&b| b);
    let status = if ok {
        Status::Verified
    } else {
        Status::Refuted
    };
    Ok(Report::new(
        "comparison",
        Some(TheorySelector::cubical(interval, ProductKind::Cross)),
        instance,
        status,
        serde_json::to_value(facts).expect("facts serialize"),
    ))
}

/// Largest `Z ⊆ A` with `c(Z) ⊆ i(A)`.
pub fn largest_excisable(space: &FiniteClosureSpace, a: PointSet) -> PointSet {
    let inner = space.interior_unchecked(a);
    a.iter()
        .filter(|&z| space.singleton_closure(z).is_subset(inner))
        .collect()
}

#[derive(Clone, Debug, Default, Serialize)]
struct AxiomTally {
    checked: usize,
    passed: usize,
}

impl AxiomTally {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        self.passed += usize::from(ok);
    }

    fn ok(&self) -> bool {
        self.checked == self.passed
    }
}

/// Homotopy, excision, dimension and exactness axioms over a corpus of
/// pairs, for the product theories.
pub fn eilenberg_steenrod_suite(
    selector: TheorySelector,
    corpus: &[SpacePair],
    max_dim: usize,
    limits: Limits,
    map_cap: usize,
) -> Result<Report> {
    if !is_asserted_theory(selector) {
        return Ok(Report::unsupported(
            "es-axioms",
            selector,
            "corpus",
            format!("{selector} is not an established homology theory"),
        ));
    }
    let mut homotopy = AxiomTally::default();
    let mut excision_t = AxiomTally::default();
    let mut dimension = AxiomTally::default();
    let mut exactness = AxiomTally::default();

    let pt = normalized(Arc::new(point()), selector, max_dim, limits)?;
    let h = pt.complex().homology_all(Coefficients::Integers);
    dimension.record(h[0] == HomologyGroup::free(1) && h[1..].iter().all(HomologyGroup::is_zero));

    for pair in corpus {
        let x = pair.ambient();
        let cx = normalized(x.clone(), selector, max_dim, limits)?;
        let classes = homotopy_classes(x, x, selector.interval, ProductKind::Cross, map_cap)?;
        for class in classes.iter().filter(|c| c.len() > 1) {
            let base = induced_homology_maps(&class[0], &cx, &cx)?;
            for other in class.iter().skip(1).take(3) {
                homotopy.record(induced_homology_maps(other, &cx, &cx)? == base);
            }
        }
        let a = pair.subspace_points();
        let z = largest_excisable(x, a);
        let ex = excision(x, a, z, selector, max_dim, limits)?;
        excision_t.record(ex.iter().all(|d| d.isomorphism));
        exactness.record(les_of_pair(pair, selector, max_dim, limits)?.is_exact());
    }
    let ok = homotopy.ok() && excision_t.ok() && dimension.ok() && exactness.ok();
    Ok(Report::new(
        "es-axioms",
        Some(selector),
        &format!("{} pairs", corpus.len()),
        if ok {
            Status::Verified
        } else {
            Status::Refuted
        },
        json!({
            "homotopy": homotopy,
            "excision": excision_t,
            "dimension": dimension,
            "exactness": exactness,
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{inductive_product, standard_space, StandardKind};

    fn boxed_square(interval: Interval, parts: [&[usize]; 4]) -> Report {
        let kind = if interval == Interval::JPlus {
            StandardKind::JPlus
        } else {
            StandardKind::Path
        };
        let j = standard_space(kind, 1, 0).unwrap();
        // Point (a,b) sits at index 2a + b.
        let x = Arc::new(inductive_product(&j, &j).unwrap());
        let parts = parts.iter().map(|p| p.iter().copied().collect()).collect();
        let cover = Cover::new(x, parts).unwrap();
        assert!(cover.is_interior_cover());
        let sel = TheorySelector::cubical(interval, ProductKind::Inductive);
        verify_cover_subcomplex(&cover, sel, 2, Limits::default(), "boxed square").unwrap()
    }

    #[test]
    fn boxed_cover_escape() {
        let directed = boxed_square(Interval::JPlus, [&[0], &[0, 2], &[0, 1], &[1, 3, 2]]);
        let undirected = boxed_square(
            Interval::J1,
            [&[1, 0, 2], &[0, 2, 3], &[2, 3, 1], &[0, 1, 3]],
        );
        for r in [directed, undirected] {
            assert_eq!(r.status, Status::Experimental);
            assert_eq!(r.details["equality"], json!(false));
            let escaping = r.details["escaping_cells"].as_array().unwrap();
            assert!(
                escaping.contains(&json!("[(0,0),(0,1),(1,0),(1,1)]")),
                "{escaping:?}"
            );
        }
    }

    #[test]
    fn comparison_on_small_spaces() {
        for interval in Interval::ALL {
            let c5 = Arc::new(standard_space(StandardKind::Cycle, 5, 0).unwrap());
            let f = comparison_facts(&c5, interval, 2, Limits::default()).unwrap();
            assert!(f.chain_map && f.injective_on_nondegenerate && f.bijective_below_two);
            assert!(f.isomorphism.iter().all(|&b| b));
        }
    }

    #[test]
    fn suite_on_small_corpus() {
        let c5 = Arc::new(standard_space(StandardKind::Cycle, 5, 0).unwrap());
        let e = Arc::new(standard_space(StandardKind::Path, 2, 0).unwrap());
        let corpus = vec![
            SpacePair::new(c5.clone(), [0, 1].into_iter().collect()).unwrap(),
            SpacePair::new(e, [0].into_iter().collect()).unwrap(),
        ];
        let sel = TheorySelector::simplicial(Interval::J1);
        let r = eilenberg_steenrod_suite(sel, &corpus, 1, Limits::default(), 10_000).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", r.details);
        let boxed = TheorySelector::cubical(Interval::J1, ProductKind::Inductive);
        let r = eilenberg_steenrod_suite(boxed, &corpus, 1, Limits::default(), 10_000).unwrap();
        assert_eq!(r.status, Status::Unsupported);
    }
}
