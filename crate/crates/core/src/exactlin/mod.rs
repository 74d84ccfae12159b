//! Exact rational linear algebra and canonical storage of skew tensors.

pub mod matrix;
pub mod scalar;
pub mod skew;
pub mod tensor;
pub mod vector;

pub use matrix::{invert, nullspace, solve_linear, Matrix};
pub use scalar::Scalar;
pub use skew::{skew_canon, Sign, SkewSlot};
pub use tensor::{Block, BlockTensor};
pub use vector::Vector;
