//! Exact computations on subfamilies of the Boolean lattice `2^[n]`.
//!
//! Families are sorted, deduplicated lists of [`SubsetMask`]s over a
//! [`GroundSet`]. On top of that the crate builds comparability graphs and
//! their components, Lubell functions and permutation statistics, shadows and
//! boundary calculus, the sharp constructions, skip normalisation, layer
//! colourings, and exhaustive searches for small `n`.

pub mod blym;
pub mod cli;
pub mod colouring;
pub mod constructions;
pub mod error;
pub mod family;
pub mod graph;
pub mod lubell;
pub mod normalize;
pub mod numeric;
pub mod random;
pub mod reproduce;
pub mod search;
pub mod shadow;
pub mod unionfind;
pub mod verify;

pub use error::{Error, Result};
pub use family::{GroundSet, SetFamily, SubsetMask};
pub use numeric::Rational;
