//! Exact coalgebras, bialgebras and Hopf algebras built from paths,
//! posets, rooted trees and graphs, with convolution inverses computed by
//! filtration-driven series and recursions.

pub mod algebra;
pub mod combinatorial;
pub mod constructions;
pub mod convolution;
pub mod error;
pub mod gallery;
pub mod inverse;
pub mod linear;
pub mod renormalization;
pub mod scalar;
pub mod structure;
pub mod validate;

pub use algebra::{Algebra, Bialgebra, Coalgebra, Rationals};
pub use convolution::{convolve, ConvMap};
pub use error::{HopfError, Result};
pub use linear::{FormalSum, Tensor, TensorSum};
pub use scalar::Q;
