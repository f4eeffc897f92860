//! Computational kernel for colored planar, symmetric and braided operads
//! with transformations.
//!
//! The crate covers the category of operators and its arrow normal forms,
//! operad groups as spans (Thompson-like groups), transformation classes and
//! their spine, finiteness checks, arc complexes and exact integer homology.

pub mod arc;
pub mod arrows;
pub mod braid;
pub mod classes;
pub mod fractions;
pub mod homology;
mod color;
mod error;
pub mod operad;
pub mod report;

pub use color::{Color, ColorWord, Flavor};
pub use error::{Error, Result};
pub use operad::{Label, Operad, Operation};
