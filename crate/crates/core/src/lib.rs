//! Exact LP and IP bounds on cell entries of binary contingency tables with
//! released hierarchical margins, and certificates for the family of models
//! whose LP lower bound at the all-zero cell is exponentially weaker than the
//! integer bound.

pub mod certify;
pub mod constructions;
pub mod error;
pub mod ip;
pub mod lp;
pub mod model;
pub mod rational;

pub use error::{Error, Result};
pub use model::{
    compute_margins, is_kernel, lift_kernel, CellIndex, Flavor, IntTable, MarginKey,
    MarginOperator, MarginVector, RatTable, SimplicialComplex, Table,
};
pub use rational::Rational;
