//! Khovanov homology of links, maps induced by dotted cobordisms given as
//! movies, and a checker for the ribbon concordance injectivity property.

// dense row reduction reads more clearly with explicit indices
#![allow(clippy::needless_range_loop)]

#[macro_use]
pub mod ring;
pub mod complex;
pub mod error;
pub mod link;
pub mod sparse;
pub mod cobordism;
pub mod cube;
pub mod jones;
pub mod poly;
pub mod homology;
pub mod invariants;
pub mod ribbon;
mod reduce;
mod snf;
