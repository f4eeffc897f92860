//! Operads with transformations: presentations, operations and composition.

pub mod affine;
pub mod axioms;
pub mod builtins;
pub mod enumerate;
mod model;
mod op;
pub mod spec;
pub mod tree;

pub use model::{Degree1, Generator, Geometry, Groupoid, Label, Operad, Rewrite};
pub use op::{ClassKey, Operation};
pub use spec::OperadSpec;
