//! Shared fixtures for the benchmarks.

use cellbound_core::constructions::{b_n, delta_n};
use cellbound_core::lp::{CellBoundProblem, Sense};
use cellbound_core::CellIndex;

/// The all-zero cell problem on `Δₙ` with the family's margins.
pub fn family_problem(n: usize, sense: Sense) -> CellBoundProblem {
    CellBoundProblem::new(
        delta_n(n).expect("valid n"),
        b_n(n).expect("valid n"),
        CellIndex::zero(n),
        sense,
    )
    .expect("consistent problem")
}
