//! Planar-forest operads, their Koszul duals, and exact homology of free
//! algebras.

pub mod algebra;
pub mod error;
pub mod flavor;
pub mod forest;
pub mod homology;
pub mod linalg;
pub mod operad;
pub mod selftest;
pub mod series;
pub mod words;

pub use error::{Error, Result};
