//! Fractions: spans, square filling and operad groups.

pub mod fill;
pub mod groups;
pub mod span;

pub use fill::{equalize, square_fill, FillOptions};
pub use groups::{Family, GroupContext, PresentationReport};
pub use span::{reduce_span, span_equal, Span, SpanEquality};
pub(crate) use fill::assign as assign_pieces;
