//! Exhaustive enumeration of the fiber `{t >= 0 integral : A_Δ t = b}`.
//!
//! Cells are filled in canonical order while residual margins are tracked.
//! A cell can take at most the smallest residual among its rows, and the last
//! cell of a row is forced to absorb that row's residual.

use crate::error::{Error, Result};
use crate::lp::Sense;
use crate::model::{CellIndex, Flavor, IntTable, MarginOperator, MarginVector, SimplicialComplex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberEnumeration {
    pub elements: Vec<IntTable>,
    /// True when `elements` is the entire fiber.
    pub exhausted: bool,
    pub limit: usize,
}

struct Walker<'a, F> {
    columns: Vec<Vec<usize>>,
    last_cell: Vec<usize>,
    residual: Vec<i64>,
    values: Vec<i64>,
    visit: &'a mut F,
    stopped: bool,
}

impl<F: FnMut(&[i64]) -> bool> Walker<'_, F> {
    fn descend(&mut self, cell: usize) {
        if cell == self.values.len() {
            if !(self.visit)(&self.values) {
                self.stopped = true;
            }
            return;
        }
        let rows = &self.columns[cell];
        let mut cap = i64::MAX;
        let mut forced: Option<i64> = None;
        for &r in rows {
            let res = self.residual[r];
            cap = cap.min(res);
            if self.last_cell[r] == cell {
                match forced {
                    Some(v) if v != res => return,
                    _ => forced = Some(res),
                }
            }
        }
        let range = match forced {
            Some(v) if v > cap => return,
            Some(v) => v..=v,
            None => 0..=cap,
        };
        for v in range {
            for &r in &self.columns[cell] {
                self.residual[r] -= v;
            }
            self.values[cell] = v;
            self.descend(cell + 1);
            for &r in &self.columns[cell] {
                self.residual[r] += v;
            }
            if self.stopped {
                break;
            }
        }
        self.values[cell] = 0;
    }
}

/// Calls `visit` on each fiber element in lexicographic order of the value
/// vector until it returns `false`. Returns whether the walk completed.
pub(crate) fn walk_fiber<F>(
    model: &SimplicialComplex,
    margins: &MarginVector<i64>,
    mut visit: F,
) -> Result<bool>
where
    F: FnMut(&[i64]) -> bool,
{
    if !margins.matches_model(model) {
        return Err(Error::DimensionMismatch {
            expected: model.n(),
            found: margins.n(),
        });
    }
    if model.num_facets() == 0 {
        return Err(Error::NoFacets);
    }
    if margins.values().iter().any(|&b| b < 0) || margins.grand_total().is_none() {
        return Ok(true);
    }
    let op = MarginOperator::new(model);
    let columns: Vec<Vec<usize>> = (0..op.num_cols()).map(|c| op.column(c).collect()).collect();
    let mut last_cell = vec![0; op.num_rows()];
    for (c, rows) in columns.iter().enumerate() {
        for &r in rows {
            last_cell[r] = c;
        }
    }
    let mut walker = Walker {
        values: vec![0; columns.len()],
        columns,
        last_cell,
        residual: margins.values().to_vec(),
        visit: &mut visit,
        stopped: false,
    };
    walker.descend(0);
    Ok(!walker.stopped)
}

/// Lists the fiber of `margins`, stopping once more than `limit` elements exist.
pub fn enumerate_fiber(
    model: &SimplicialComplex,
    margins: &MarginVector<i64>,
    limit: usize,
) -> Result<FiberEnumeration> {
    let n = model.n();
    let mut elements = Vec::new();
    let exhausted = walk_fiber(model, margins, |values| {
        if elements.len() == limit {
            return false;
        }
        elements
            .push(IntTable::new(n, values.to_vec(), Flavor::NonNegative).expect("fiber element"));
        true
    })?;
    Ok(FiberEnumeration {
        elements,
        exhausted,
        limit,
    })
}

/// Exact integer bound on one cell by brute force over the fiber.
pub fn ip_bound_by_enumeration(
    model: &SimplicialComplex,
    margins: &MarginVector<i64>,
    target: CellIndex,
    sense: Sense,
    limit: usize,
) -> Result<i64> {
    if target.n() != model.n() {
        return Err(Error::DimensionMismatch {
            expected: model.n(),
            found: target.n(),
        });
    }
    let t = target.index();
    let mut seen = 0usize;
    let mut best: Option<i64> = None;
    let complete = walk_fiber(model, margins, |values| {
        if seen == limit {
            return false;
        }
        seen += 1;
        let v = values[t];
        best = Some(match (best, sense) {
            (None, _) => v,
            (Some(b), Sense::Minimize) => b.min(v),
            (Some(b), Sense::Maximize) => b.max(v),
        });
        true
    })?;
    if !complete {
        return Err(Error::EnumerationLimit(limit));
    }
    best.ok_or(Error::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{b_n, delta_n, u_n};
    use crate::model::compute_margins;

    #[test]
    fn zero_margins_give_zero_table() {
        let model = delta_n(4).unwrap();
        let fib = enumerate_fiber(&model, &MarginVector::zeros(&model), 10).unwrap();
        assert!(fib.exhausted);
        assert_eq!(fib.elements, vec![IntTable::zeros(4, Flavor::NonNegative)]);
    }

    #[test]
    fn unequal_totals_give_empty_fiber() {
        let model = SimplicialComplex::new(2, [vec![1], vec![2]]).unwrap();
        let b = MarginVector::new(&model, vec![1, 1, 3, 0]).unwrap();
        let fib = enumerate_fiber(&model, &b, 10).unwrap();
        assert!(fib.exhausted && fib.elements.is_empty());
        assert_eq!(
            ip_bound_by_enumeration(&model, &b, CellIndex::zero(2), Sense::Minimize, 10),
            Err(Error::Infeasible)
        );
    }

    #[test]
    fn independence_fiber_count() {
        // 2x2 tables with row sums (1,1) and column sums (1,1): two permutation tables
        let model = SimplicialComplex::new(2, [vec![1], vec![2]]).unwrap();
        let b = MarginVector::new(&model, vec![1, 1, 1, 1]).unwrap();
        let fib = enumerate_fiber(&model, &b, 10).unwrap();
        assert!(fib.exhausted);
        assert_eq!(fib.elements.len(), 2);
    }

    #[test]
    fn delta4_fiber() {
        let model = delta_n(4).unwrap();
        let b = b_n(4).unwrap();
        let fib = enumerate_fiber(&model, &b, 1_000_000).unwrap();
        assert!(fib.exhausted);
        assert!(fib.elements.contains(&u_n(4).unwrap()));
        for e in &fib.elements {
            assert_eq!(compute_margins(&model, e).unwrap(), b);
        }
        let distinct: std::collections::HashSet<_> = fib.elements.iter().collect();
        assert_eq!(distinct.len(), fib.elements.len());
        // pinned regression value: u₄ is the only table with these margins
        assert_eq!(fib.elements.len(), 1);
        let min = fib.elements.iter().map(|e| *e.get(0)).min();
        assert_eq!(min, Some(1));
        assert_eq!(
            ip_bound_by_enumeration(&model, &b, CellIndex::zero(4), Sense::Minimize, 1000),
            Ok(1)
        );
        assert_eq!(
            ip_bound_by_enumeration(&model, &b, CellIndex::zero(4), Sense::Maximize, 1000),
            Ok(1)
        );
    }

    #[test]
    fn limit_reported() {
        let model = SimplicialComplex::new(2, [vec![1], vec![2]]).unwrap();
        let b = MarginVector::new(&model, vec![3, 3, 3, 3]).unwrap();
        let fib = enumerate_fiber(&model, &b, 2).unwrap();
        assert!(!fib.exhausted);
        assert_eq!(fib.elements.len(), 2);
        assert_eq!(
            ip_bound_by_enumeration(&model, &b, CellIndex::zero(2), Sense::Minimize, 2),
            Err(Error::EnumerationLimit(2))
        );
        assert_eq!(
            ip_bound_by_enumeration(&model, &b, CellIndex::zero(2), Sense::Maximize, 100),
            Ok(3)
        );
    }
}
