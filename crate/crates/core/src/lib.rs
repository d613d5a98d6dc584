//! Exact computation in the extended quadratic algebra of type A: Dunkl elements,
//! the (quantum) Bruhat representation, double Schubert polynomials and the
//! equivariant Pieri rule.

pub mod bruhat_rep;
pub mod error;
pub mod linalg;
pub mod ncalgebra;
pub mod pieri;
pub mod polyring;
pub mod schubert;
pub mod symgroup;
pub mod verify;

pub use error::{Error, Result};
