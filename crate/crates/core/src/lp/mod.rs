//! Exact LP bounds on a single cell: `min` or `max` of `x[target]` subject to
//! `A_Δ x = b, x >= 0`.

mod simplex;
mod verify;

pub(crate) use simplex::{SparseRow, StandardForm};
pub use verify::verify_lp;

use crate::error::{Error, Result};
use crate::model::{CellIndex, Flavor, MarginOperator, MarginVector, RatTable, SimplicialComplex};
use crate::rational::Rational;

/// Default ceiling on simplex pivots per solve.
pub const DEFAULT_PIVOT_LIMIT: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Minimize,
    Maximize,
}

impl Sense {
    pub fn as_str(self) -> &'static str {
        match self {
            Sense::Minimize => "min",
            Sense::Maximize => "max",
        }
    }
}

/// Bound one cell of a table given its released Δ-margins.
#[derive(Clone, Debug)]
pub struct CellBoundProblem {
    model: SimplicialComplex,
    margins: MarginVector<i64>,
    target: CellIndex,
    sense: Sense,
}

impl CellBoundProblem {
    pub fn new(
        model: SimplicialComplex,
        margins: MarginVector<i64>,
        target: CellIndex,
        sense: Sense,
    ) -> Result<Self> {
        if !margins.matches_model(&model) {
            return Err(Error::DimensionMismatch {
                expected: model.n(),
                found: margins.n(),
            });
        }
        if target.n() != model.n() {
            return Err(Error::DimensionMismatch {
                expected: model.n(),
                found: target.n(),
            });
        }
        Ok(CellBoundProblem {
            model,
            margins,
            target,
            sense,
        })
    }

    pub fn model(&self) -> &SimplicialComplex {
        &self.model
    }

    pub fn margins(&self) -> &MarginVector<i64> {
        &self.margins
    }

    pub fn target(&self) -> CellIndex {
        self.target
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn with_sense(&self, sense: Sense) -> Self {
        CellBoundProblem {
            sense,
            ..self.clone()
        }
    }

    /// Grand total implied by the margins, if the facets agree on one.
    pub fn grand_total(&self) -> Option<i64> {
        self.margins.grand_total()
    }

    /// Signed objective coefficient so that every solve is a minimization.
    pub(crate) fn cost_sign(&self) -> i64 {
        match self.sense {
            Sense::Minimize => 1,
            Sense::Maximize => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LpStatus {
    Optimal,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Option<Rational>,
    pub primal: Option<RatTable>,
    /// Basic cells of the final basis, ascending.
    pub basis: Vec<usize>,
    pub pivots: u64,
    /// Positive phase-I optimum when infeasible.
    pub phase_one_residual: Option<Rational>,
}

impl LpSolution {
    fn infeasible(residual: Rational, pivots: u64) -> Self {
        LpSolution {
            status: LpStatus::Infeasible,
            value: None,
            primal: None,
            basis: Vec::new(),
            pivots,
            phase_one_residual: Some(residual),
        }
    }
}

/// Per-variable integer bounds imposed by branching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Bounds {
    pub lower: Vec<i64>,
    pub upper: Vec<Option<i64>>,
}

impl Bounds {
    pub fn free(ncols: usize) -> Self {
        Bounds {
            lower: vec![0; ncols],
            upper: vec![None; ncols],
        }
    }
}

pub fn solve_lp(problem: &CellBoundProblem) -> Result<LpSolution> {
    solve_lp_with_limit(problem, DEFAULT_PIVOT_LIMIT)
}

pub fn solve_lp_with_limit(problem: &CellBoundProblem, pivot_limit: u64) -> Result<LpSolution> {
    let ncols = problem.model.num_cells();
    solve_bounded(problem, &Bounds::free(ncols), pivot_limit)
}

/// Solves the LP with `lower[j] <= x[j] <= upper[j]`. Lower bounds are shifted
/// out; finite upper bounds become rows with a slack column.
pub(crate) fn solve_bounded(
    problem: &CellBoundProblem,
    bounds: &Bounds,
    pivot_limit: u64,
) -> Result<LpSolution> {
    let op = MarginOperator::new(&problem.model);
    let ncells = op.num_cols();
    for (l, u) in bounds.lower.iter().zip(&bounds.upper) {
        if matches!(u, Some(u) if u < l) {
            return Ok(LpSolution::infeasible(Rational::ONE, 0));
        }
    }

    let supports = op.row_supports();
    let mut rows: Vec<SparseRow> = Vec::with_capacity(op.num_rows());
    let mut rhs = Vec::with_capacity(op.num_rows());
    for (cols, b) in supports.iter().zip(problem.margins.values()) {
        let shift: i64 = cols.iter().map(|&c| bounds.lower[c]).sum();
        rows.push(cols.iter().map(|&c| (c, Rational::ONE)).collect());
        rhs.push(Rational::from(b - shift));
    }
    let mut ncols = ncells;
    for (j, u) in bounds.upper.iter().enumerate() {
        if let Some(u) = u {
            rows.push(vec![(j, Rational::ONE), (ncols, Rational::ONE)]);
            rhs.push(Rational::from(u - bounds.lower[j]));
            ncols += 1;
        }
    }
    let t = problem.target.index();
    let form = StandardForm {
        ncols,
        rows,
        rhs,
        cost: vec![(t, Rational::from(problem.cost_sign()))],
    };

    let solved = simplex::solve(&form, pivot_limit)?;
    match solved.outcome {
        simplex::Outcome::Infeasible { residual } => {
            Ok(LpSolution::infeasible(residual, solved.pivots))
        }
        simplex::Outcome::Optimal { x, basis, value } => {
            let values: Vec<Rational> = x[..ncells]
                .iter()
                .zip(&bounds.lower)
                .map(|(y, &l)| y + Rational::from(l))
                .collect();
            let value_at_target = values[t].clone();
            debug_assert_eq!(
                value * Rational::from(problem.cost_sign()) + Rational::from(bounds.lower[t]),
                value_at_target
            );
            let value = value_at_target;
            let primal = RatTable::new(problem.model.n(), values, Flavor::NonNegative)?;
            Ok(LpSolution {
                status: LpStatus::Optimal,
                value: Some(value),
                primal: Some(primal),
                basis: basis.into_iter().filter(|&c| c < ncells).collect(),
                pivots: solved.pivots,
                phase_one_residual: None,
            })
        }
    }
}
