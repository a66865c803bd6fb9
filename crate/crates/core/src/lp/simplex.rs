//! Two-phase tableau simplex over exact rationals with Bland's rule.
//!
//! Rows are stored sparsely. Phase I uses one implicit artificial variable per
//! row; artificial columns are never materialized because an artificial that
//! leaves the basis is never allowed back in.

use crate::error::{Error, Result};
use crate::rational::Rational;

pub(crate) type SparseRow = Vec<(usize, Rational)>;

/// `min cost·x  s.t.  rows·x = rhs, x >= 0`.
#[derive(Clone, Debug)]
pub(crate) struct StandardForm {
    pub ncols: usize,
    /// Each row sorted by column, without explicit zeros.
    pub rows: Vec<SparseRow>,
    pub rhs: Vec<Rational>,
    /// Sparse objective, sorted by column.
    pub cost: SparseRow,
}

#[derive(Clone, Debug)]
pub(crate) enum Outcome {
    Optimal {
        x: Vec<Rational>,
        value: Rational,
        basis: Vec<usize>,
    },
    /// Positive optimum of the phase-I objective.
    Infeasible { residual: Rational },
}

#[derive(Clone, Debug)]
pub(crate) struct Solved {
    pub outcome: Outcome,
    pub pivots: u64,
}

struct Tableau {
    ncols: usize,
    rows: Vec<SparseRow>,
    rhs: Vec<Rational>,
    /// Basic variable per row; values `>= ncols` are artificials (`ncols + row`).
    basis: Vec<usize>,
    reduced: Vec<Rational>,
    objective: Rational,
    pivots: u64,
    pivot_limit: u64,
}

fn lookup(row: &SparseRow, col: usize) -> Option<&Rational> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|k| &row[k].1)
}

/// `target - factor * source`, dropping cancelled entries.
fn sub_scaled(target: &SparseRow, factor: &Rational, source: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        let ti = target.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let sj = source.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ti < sj {
            out.push(target[i].clone());
            i += 1;
        } else if sj < ti {
            out.push((sj, -(factor * &source[j].1)));
            j += 1;
        } else {
            let v = &target[i].1 - &(factor * &source[j].1);
            if !v.is_zero() {
                out.push((ti, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl Tableau {
    fn new(form: &StandardForm, pivot_limit: u64) -> Self {
        let mut rows = form.rows.clone();
        let mut rhs = form.rhs.clone();
        for (row, b) in rows.iter_mut().zip(rhs.iter_mut()) {
            if b.is_negative() {
                *b = -&*b;
                for (_, a) in row.iter_mut() {
                    *a = -&*a;
                }
            }
        }
        let m = rows.len();
        let mut reduced = vec![Rational::ZERO; form.ncols];
        for row in &rows {
            for (c, a) in row {
                reduced[*c] -= a;
            }
        }
        let objective = rhs.iter().sum();
        Tableau {
            ncols: form.ncols,
            rows,
            rhs,
            basis: (0..m).map(|i| form.ncols + i).collect(),
            reduced,
            objective,
            pivots: 0,
            pivot_limit,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) -> Result<()> {
        self.pivots += 1;
        if self.pivots > self.pivot_limit {
            return Err(Error::PivotLimit(self.pivot_limit));
        }
        let inv = lookup(&self.rows[r], c)
            .expect("pivot on zero entry")
            .recip();
        for (_, a) in self.rows[r].iter_mut() {
            *a *= &inv;
        }
        self.rhs[r] *= &inv;
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            if let Some(factor) = lookup(&self.rows[i], c).cloned() {
                self.rows[i] = sub_scaled(&self.rows[i], &factor, &pivot_row);
                let delta = &factor * &self.rhs[r];
                self.rhs[i] -= delta;
            }
        }
        let dc = self.reduced[c].clone();
        if !dc.is_zero() {
            for (j, a) in &pivot_row {
                let delta = &dc * a;
                self.reduced[*j] -= delta;
            }
            self.objective += &dc * &self.rhs[r];
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
        Ok(())
    }

    /// Runs Bland's rule until no reduced cost is negative.
    fn optimize(&mut self) -> Result<()> {
        while let Some(c) = self.reduced.iter().position(Rational::is_negative) {
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let Some(a) = lookup(row, c) else { continue };
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((k, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*k]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let (r, _) = best.ok_or(Error::Unbounded)?;
            self.pivot(r, c)?;
        }
        Ok(())
    }

    /// Pivots zero-level artificials out of the basis and drops rows that are
    /// linear combinations of the others.
    fn purge_artificials(&mut self) -> Result<()> {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.ncols {
                debug_assert!(self.rhs[i].is_zero());
                match self.rows[i].first().map(|e| e.0) {
                    Some(c) => self.pivot(i, c)?,
                    None => {
                        self.rows.swap_remove(i);
                        self.rhs.swap_remove(i);
                        self.basis.swap_remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        Ok(())
    }

    fn install_cost(&mut self, cost: &SparseRow) {
        let mut dense = vec![Rational::ZERO; self.ncols];
        for (c, v) in cost {
            dense[*c] = v.clone();
        }
        self.objective = Rational::ZERO;
        let mut reduced = dense.clone();
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &dense[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            self.objective += cb * &self.rhs[i];
            for (j, a) in row {
                reduced[*j] -= cb * a;
            }
        }
        self.reduced = reduced;
    }
}

pub(crate) fn solve(form: &StandardForm, pivot_limit: u64) -> Result<Solved> {
    debug_assert_eq!(form.rows.len(), form.rhs.len());
    let mut t = Tableau::new(form, pivot_limit);
    t.optimize()?;
    if t.objective.is_positive() {
        return Ok(Solved {
            outcome: Outcome::Infeasible {
                residual: t.objective,
            },
            pivots: t.pivots,
        });
    }
    t.purge_artificials()?;
    t.install_cost(&form.cost);
    t.optimize()?;

    let mut x = vec![Rational::ZERO; form.ncols];
    for (i, &b) in t.basis.iter().enumerate() {
        x[b] = t.rhs[i].clone();
    }
    let mut basis = t.basis.clone();
    basis.sort_unstable();
    Ok(Solved {
        outcome: Outcome::Optimal {
            x,
            value: t.objective,
            basis,
        },
        pivots: t.pivots,
    })
}
