//! Exact computations with corings, comodules and entwining structures over
//! finite-dimensional algebras and coalgebras.
//!
//! Every object is given by structure constants over ℚ or a prime field, and
//! every decision reduces to exact linear algebra, so each positive answer
//! carries a witness that can be checked independently and each negative one
//! a rank certificate or an exhaustive search record.

pub mod algebra;
pub mod coalgebra;
pub mod coring;
pub mod cring;
pub mod entwining;
pub mod error;
pub mod fixtures;
pub mod frobenius;
pub mod galois;
pub mod linalg;
pub mod separability;
pub mod validation;

pub use error::{Error, Result};
pub use validation::{Validation, Violation};
