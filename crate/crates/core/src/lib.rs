//! Exact algebra for the deformed trigonometric Calogero-Moser-Sutherland
//! system of type `A(n-1, m-1)`: the field `Q(k)`, Laurent polynomials,
//! quasi-invariants and their integrals, equivalence classes of weights,
//! bipartitions and the spectral decomposition of the integrals.
#![no_std]

extern crate alloc;

pub mod bipart;
pub mod diagram;
pub mod error;
pub mod kfield;
pub mod laurent;
pub mod linalg;
pub mod partition;
pub mod quasi;
pub mod rootsys;
pub mod spectral;

pub use error::{Error, Result};
pub use kfield::{IntPolyK, RatK};
pub use laurent::{Exponent, LaurentPoly};
pub use linalg::Matrix;
pub use partition::{Partition, Permutation};
