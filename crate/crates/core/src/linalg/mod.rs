//! Dense exact linear algebra: echelon forms, kernels, the subspace lattice,
//! and Betti numbers of finite chain complexes.

mod chain;
mod matrix;
mod subspace;

pub use chain::{chain_betti, coordinate_quotient, induced_boundaries, BettiNumbers};
pub use matrix::{Matrix, Rref};
pub use subspace::Subspace;
