//! Diagram-equivariant spaces over finite categories.
//!
//! Spaces are finite preorders, diagrams are functors out of a finite
//! category, and orbits are diagrams whose colimit is a single point.

pub mod dspace;
pub mod error;
pub mod fincat;
pub mod finspace;
pub mod orbits;
pub mod cells;
pub mod elmendorf;

pub use error::{Error, Result};
