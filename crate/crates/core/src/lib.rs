//! Subsets of `{1, …, n}` avoiding a set of pairwise differences.
//!
//! The crate counts such restricted combinations directly, through the
//! restricted-overlap comb tilings they are in bijection with, and through the
//! metatile-generating digraph of the comb, from which linear recurrences and
//! rational generating functions are derived. Further modules check the
//! correspondences with strongly restricted permutations, compositions and
//! subword equivalence classes of binary words.

pub mod binomial;
pub mod compositions;
pub mod count;
pub mod digraph;
pub mod error;
pub mod genfunc;
mod json;
pub mod permutations;
pub mod qset;
pub mod recurrence;
pub mod report;
pub mod subword;
pub mod transfer;
pub mod tiling;

pub use error::{Error, Result};
pub use genfunc::{Poly, RationalGF};
pub use qset::{Comb, QSet};
