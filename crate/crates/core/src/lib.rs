//! Diagonal simplicial tensor modules over exact fields.

pub mod contraction;
pub mod enumeration;
pub mod error;
pub mod field;
pub mod horn;
pub mod linalg;
pub mod normalization;
pub mod poly;
pub mod realization;
pub mod shape;
pub mod tensor;
pub mod tensor_io;

pub use error::{Error, Result};
pub use field::{Field, Fp};
pub use shape::{AxisPermutation, IndexSet, MultiIndex, Shape};
pub use tensor::Tensor;

pub type Rational = num_rational::BigRational;
pub type Gf31 = Fp<2147483647>;
pub type Gf61 = Fp<2305843009213693951>;
pub type QMatrix = linalg::Matrix<Rational>;
pub type QSubspace = linalg::Subspace<Rational>;
pub type QTensor = tensor::Tensor<Rational>;
