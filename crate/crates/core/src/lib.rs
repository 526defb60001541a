//! Milnor μ-invariants of string links, computed from diagrams, and the
//! classification of string links up to 2n-moves and link-homotopy.
//!
//! - [`algebra`]: free-group words and truncated Magnus expansions.
//! - [`diagram`]: braid input, windings, stacking, 2n-moves and
//!   self-crossing changes.
//! - [`milnor`]: Wirtinger data, the `η_q` tower, longitudes, μ tables and
//!   the gcd indeterminacies of closures.
//! - [`classify`]: canonical forms, the equivalence decision, the finite
//!   group of classes and the link-level criteria.

pub mod algebra;
pub mod classify;
pub mod diagram;
pub mod milnor;

mod error;

pub use error::{Error, Result};
