//! Exact tools for the equations of low-rank tensor loci.
//!
//! The crate computes, over the rationals or a prime field and always
//! exactly:
//!
//! * symmetric-group characters, invariant multiplicities, and
//!   plethysm-free isotypic decompositions of degree-d coordinate spaces
//!   of tensor products ([`symrep`]);
//! * flattenings and multilinear ranks of dense tensors ([`tensors`]);
//! * determinantal and commutation-type generators for the ideals of
//!   bounded-rank loci, with evaluation, differentials, and Jacobian ranks
//!   ([`equations`]);
//! * graded ideal dimensions and Hilbert functions by sparse elimination
//!   ([`polyring`]), cross-checked against embedded equivariant Betti
//!   tables ([`resolution`]);
//! * sheaf-cohomology bookkeeping for the geometric technique that
//!   produces those Betti tables ([`bott`]).
//!
//! Everything randomized is seeded explicitly and reproducible bit for bit.

pub mod bott;
pub mod equations;
pub mod error;
pub mod scalar;
pub mod partitions;
pub mod symrep;
pub mod linalg;
pub mod tensors;
pub mod polyring;
pub mod report;
pub mod resolution;

pub use error::{Error, Result};
pub use scalar::{Scalar, ScalarDomain, DEFAULT_PRIME, SECOND_PRIME};
pub use tensors::{Shape, Tensor};
