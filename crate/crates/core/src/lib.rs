//! Exact computation of naive and true mirror maps attached to families of
//! lattice vectors, with finite-precision checks of their integrality and
//! positivity, the Fano and reflexivity predicates, and Delaygue's
//! integrality criterion.

pub mod checker;
pub mod dataset;
pub mod delaygue;
pub mod error;
pub mod exactmath;
pub mod lattice;
pub mod mirrormap;
pub mod monoid;
pub mod par;
pub mod polytope;
pub mod series;
pub mod simplex;

pub use error::{Error, Result};
pub use exactmath::Rational;
pub use lattice::{FlatIndex, KernelLattice, VectorConfig};
