//! Binary hierarchical models: complexes, cells, tables and the margin operator.

mod cell;
mod complex;
mod margins;
mod table;

pub use cell::CellIndex;
pub use complex::{SimplicialComplex, MAX_VARS};
pub use margins::{
    compute_margins, is_kernel, lift_kernel, MarginKey, MarginOperator, MarginVector,
};
pub use table::{Entry, Flavor, IntTable, RatTable, Table};
