//! Exact computer algebra for the Hopf-algebraic side of non-commutative
//! probability: coproducts on double tensor algebras, half-shuffle calculus,
//! universal products and moment–cumulant transforms over the rationals.

pub mod algebra;
pub mod cumulants;
pub mod error;
pub mod functionals;
pub mod hopf;
pub mod partitions;
pub mod universal;
pub mod verify;

pub use algebra::{Bar, Flavor, LinComb, Rational, Tensor, Word};
pub use error::{Error, Result};
