//! Quiver mutation, exact hereditary representation theory and finite
//! Hom-table models of orbit categories of derived categories of Dynkin
//! quivers (cluster categories and their higher analogues).

pub mod builtin;
pub mod canonical;
pub mod derived;
pub mod error;
pub mod hereditary;
pub mod linalg;
pub mod mutation_search;
pub mod orbit;
pub mod quiver;

pub use canonical::{canonical_form, is_isomorphic, CanonicalQuiver};
pub use error::{Error, Result};
pub use mutation_search::{find_acyclic, mutation_class, SearchLimits};
pub use quiver::Quiver;
