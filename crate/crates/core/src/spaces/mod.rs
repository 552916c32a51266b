//! Finite closure spaces, continuous maps and their constructions.

mod construct;
mod cover;
pub mod io;
mod map;
mod pointset;
mod space;
mod standard;

pub(crate) use construct::UnionFind;
pub use construct::{
    coequalizer, coproduct, find_homeomorphism, inductive_product, is_interior_cover, power,
    product, product_with, projections, pushout, quotient_by_classes, quotient_by_subspace,
    subspace, topological_modification, ProductKind,
};
pub use cover::{Cover, SpacePair};
pub use map::SpaceMap;
pub use pointset::{PointSet, PointSetIter, MAX_POINTS};
pub use space::FiniteClosureSpace;
pub use standard::{point, standard_space, StandardKind};
