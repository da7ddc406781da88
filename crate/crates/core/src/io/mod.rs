//! Input parsing, bundled examples and command dispatch.

pub mod cli;
pub mod report;
pub mod spec;

pub use spec::{example, example_text, parse_spec, AlgebraSpec, ParseError, EXAMPLES};
