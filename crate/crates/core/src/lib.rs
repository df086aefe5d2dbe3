//! Exact verification kernel for multiparameter (twisted) quantum gl(N).
//!
//! Everything here is exact arithmetic: Laurent polynomials over Q in the
//! deformation parameters, dense matrices over their fraction field, a
//! noncommutative rewriting engine for the quantum matrix algebra, and a
//! degree-truncated dual pairing that reconstructs the quantum-group side
//! together with its universal R-matrix. The roots-of-unity regime is handled
//! in cyclotomic quotients, never with floating point.
//!
//! The crate is organized to mirror the pipeline:
//!
//! - [`ring`]: scalars, rational functions, q-combinatorics, cyclotomic
//!   specialization.
//! - [`tensor`]: dense matrices with tensor-leg bookkeeping.
//! - [`rmatrix`]: the R/P matrices, their identities, representations, the
//!   sl(N) reduction and the esoteric gl(3) deformation.
//! - [`ncalg`]: noncommutative polynomials and confluence-checked rewriting
//!   systems for the quantum plane, differential calculus, pseudogroup and its
//!   triangular factorization.
//! - [`duality`]: dual functionals, the quantum-group relations, coproducts,
//!   the universal R-matrix and the roots-of-unity extension.
//! - [`report`] and [`suites`]: structured check records and batch runners.

pub mod duality;
pub mod error;
pub mod ncalg;
pub mod report;
pub mod ring;
pub mod rmatrix;
pub mod suites;
pub mod tensor;

pub use error::CoreError;
pub use ring::{ParamSpace, Ratio, Scalar};
pub use tensor::Mat;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, CoreError>;
