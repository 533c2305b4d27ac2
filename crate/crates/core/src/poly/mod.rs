//! Exact sparse polynomials over the Gaussian rationals, the variable
//! universe of a `k`-qubit system, and numeric states.

mod coeff;
pub mod linalg;
mod monomial;
pub mod packed;
mod polynomial;
mod state;
mod variable;

pub use coeff::GaussianRational;
pub use monomial::Monomial;
pub use polynomial::{sum, Polynomial};
pub use state::{Mat2, State};
pub use variable::{bitstring, parse_bitstring, AuxCopy, VariableId};
