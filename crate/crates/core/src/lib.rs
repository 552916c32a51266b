//! Singular simplicial and cubical homology, path components and homotopy
//! of finite Čech closure spaces.

#![allow(clippy::needless_range_loop)]

pub mod corpus;
pub mod error;
pub mod homology;
pub mod homotopy;
pub mod linalg;
pub mod nerves;
pub mod spaces;

pub use error::{Error, Result};
