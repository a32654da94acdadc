//! Exact linear algebra: rationals, sparse vectors and matrices, rank.
//!
//! Every dimension reported by the crate is a rank computed here over the
//! rationals. A prime-field backend (`p = 2^61 - 1`) shares the elimination
//! code and serves as an independent cross-check.

mod echelon;
mod field;
mod lincomb;
mod rational;
mod sparse;

pub use echelon::{nullspace_dim, rank, rank_in, rank_mod_p, rank_of_vectors, Echelon, DENSE_CUTOFF};
pub use field::{Field, ModP, MODULUS};
pub use lincomb::{span_dim, Basis, LinComb};
pub use rational::Rational;
pub use sparse::{SparseMatrix, SparseVec};

/// Which field ranks are computed over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    Rational,
    ModP,
}

impl Backend {
    pub fn rank(self, m: &SparseMatrix) -> usize {
        match self {
            Backend::Rational => rank(m),
            Backend::ModP => rank_mod_p(m),
        }
    }
}
