//! Free-group subgroups through Stallings graphs: folding, exact counting of
//! partial injections, random generation, and the genericity experiments.

pub mod error;
pub mod experiments;
pub mod numeric;
pub mod partial_injections;
pub mod properties;
pub mod samplers;
pub mod stallings;
mod union_find;
pub mod words;

pub use error::{Error, Invariant, Result};
pub use stallings::{LabeledCore, LabeledGraph, PreGraph, StallingsGraph};
pub use words::{Alphabet, Letter, Word};
