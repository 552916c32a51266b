//! Chain complexes, (co)homology and the structural checks built on them.

mod basis;
mod complex;
mod cup;
mod exact;
mod groups;
mod prism;
mod products;
mod singular;
mod verify;

pub use basis::{
    homology_map, is_exact_at, is_isomorphism, is_surjective, HomologyBasis, MAX_BASIS_RANK,
};
pub use complex::{ChainComplex, ChainMap};
pub use cup::Cochains;
pub use exact::{
    excision, les_of_pair, long_exact_sequence, mayer_vietoris, ExactSequence, ExcisionDegree,
    MayerVietoris, SequenceNode,
};
pub use groups::{Coefficients, HomologyGroup};
pub use prism::{
    chain_boundary, prism_homotopy, push_forward, verify_prism_identity, Chain, Prism, PrismReport,
};
pub use products::{
    eilenberg_zilber_check, kunneth_check, kunneth_prediction, uct_check, GroupComparison,
    UctDegree,
};
pub use singular::{
    comparison_chain_map, cubical_chain_complex, limits_for, simplicial_chain_complex, ChainModel,
    SingularComplex,
};
pub use verify::{
    comparison_facts, eilenberg_steenrod_suite, induced_homology_maps, is_asserted_theory,
    largest_excisable, verify_comparison, verify_cover_subcomplex, verify_eilenberg_zilber,
    verify_excision, verify_kunneth, verify_les, verify_mayer_vietoris, verify_uct,
    ComparisonFacts, Report, Status,
};
