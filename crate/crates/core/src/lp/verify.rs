//! Independent optimality check for an LP solution.
//!
//! Feasibility is re-derived from the margin computation, and optimality from
//! dual prices obtained by Gaussian elimination on the returned basis, so no
//! state of the simplex run is trusted.

use super::{CellBoundProblem, LpSolution, LpStatus};
use crate::model::{compute_margins, MarginOperator};
use crate::rational::Rational;

/// Solves `y^T A_B = c_B` for the dual prices `y`, or `None` if the basic
/// columns are linearly dependent.
fn dual_prices(op: &MarginOperator, basis: &[usize], cost: &[Rational]) -> Option<Vec<Rational>> {
    let m = op.num_rows();
    // one equation per basic column: sum over its rows of y[row] = cost[col]
    let mut eqs: Vec<Vec<Rational>> = basis
        .iter()
        .map(|&col| {
            let mut e = vec![Rational::ZERO; m + 1];
            for r in op.column(col) {
                e[r] = Rational::ONE;
            }
            e[m] = cost[col].clone();
            e
        })
        .collect();

    let mut pivots = Vec::with_capacity(eqs.len());
    let mut rank = 0;
    for col in 0..m {
        let Some(p) = (rank..eqs.len()).find(|&i| !eqs[i][col].is_zero()) else {
            continue;
        };
        eqs.swap(rank, p);
        let inv = eqs[rank][col].recip();
        for v in eqs[rank].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = eqs[rank].clone();
        for (i, e) in eqs.iter_mut().enumerate() {
            if i == rank || e[col].is_zero() {
                continue;
            }
            let f = e[col].clone();
            for (v, pv) in e.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == eqs.len() {
            break;
        }
    }
    if rank < eqs.len() {
        return None;
    }
    let mut y = vec![Rational::ZERO; m];
    for (k, &col) in pivots.iter().enumerate() {
        y[col] = eqs[k][m].clone();
    }
    Some(y)
}

/// True iff the solution is exactly feasible, consistent with its reported
/// value, and no entering column of its basis would improve the objective.
pub fn verify_lp(problem: &CellBoundProblem, solution: &LpSolution) -> bool {
    if solution.status != LpStatus::Optimal {
        return false;
    }
    let (Some(primal), Some(value)) = (&solution.primal, &solution.value) else {
        return false;
    };
    let model = problem.model();
    if primal.n() != model.n() || !primal.is_nonnegative() {
        return false;
    }
    match compute_margins(model, primal) {
        Ok(m) if m == problem.margins().to_rational() => {}
        _ => return false,
    }
    let target = problem.target().index();
    if primal.get(target) != value {
        return false;
    }
    let ncols = primal.len();
    let mut in_basis = vec![false; ncols];
    for &b in &solution.basis {
        if b >= ncols || in_basis[b] {
            return false;
        }
        in_basis[b] = true;
    }
    if primal.support().any(|(j, _)| !in_basis[j]) {
        return false;
    }

    let mut cost = vec![Rational::ZERO; ncols];
    cost[target] = Rational::from(problem.cost_sign());
    let op = MarginOperator::new(model);
    let Some(y) = dual_prices(&op, &solution.basis, &cost) else {
        return false;
    };
    (0..ncols).filter(|&j| !in_basis[j]).all(|j| {
        let priced: Rational = op.column(j).map(|r| &y[r]).sum();
        !(&cost[j] - &priced).is_negative()
    })
}

#[cfg(test)]
mod tests {
    use super::super::{solve_lp, Sense};
    use super::*;
    use crate::constructions::{b_n, delta_n};
    use crate::model::CellIndex;

    fn problem(n: usize, sense: Sense) -> CellBoundProblem {
        CellBoundProblem::new(
            delta_n(n).unwrap(),
            b_n(n).unwrap(),
            CellIndex::zero(n),
            sense,
        )
        .unwrap()
    }

    #[test]
    fn accepts_solver_output() {
        for sense in [Sense::Minimize, Sense::Maximize] {
            let p = problem(4, sense);
            let s = solve_lp(&p).unwrap();
            assert!(verify_lp(&p, &s), "{sense:?}");
        }
    }

    #[test]
    fn rejects_perturbed_primal() {
        let p = problem(4, Sense::Minimize);
        let mut s = solve_lp(&p).unwrap();
        let primal = s.primal.take().unwrap();
        let (j, _) = primal.support().last().unwrap();
        let mut values = primal.into_values();
        values[j] += Rational::new(1, 3);
        s.primal = Some(
            crate::model::RatTable::new(4, values, crate::model::Flavor::NonNegative).unwrap(),
        );
        assert!(!verify_lp(&p, &s));
    }

    #[test]
    fn rejects_lowered_value() {
        let p = problem(5, Sense::Minimize);
        let mut s = solve_lp(&p).unwrap();
        s.value = Some(s.value.unwrap() - Rational::ONE);
        assert!(!verify_lp(&p, &s));
    }

    #[test]
    fn rejects_suboptimal_basis() {
        // u itself is feasible but not LP-optimal at the target cell
        let p = problem(4, Sense::Minimize);
        let max = solve_lp(&p.with_sense(Sense::Maximize)).unwrap();
        assert!(max.value.as_ref().unwrap().is_positive());
        assert!(!verify_lp(&p, &max));
    }
}
