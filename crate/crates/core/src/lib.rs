//! Separation systems, profiles and tangles, and nested sets of separations
//! that distinguish them.

pub mod corpus;
pub mod error;
pub mod pipeline;
pub mod profiles;
pub mod sepsys;
pub mod splinter;
pub mod tree;
pub mod universes;

pub use error::{Error, Result};

/// Tag written into every JSON document this crate produces.
pub const SCHEMA: &str = "totkit/1";
