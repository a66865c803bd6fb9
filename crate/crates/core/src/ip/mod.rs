//! Exact integer bounds on one cell by depth-first branch-and-bound over the
//! exact LP relaxation.
//!
//! The objective is a single cell, so every integer-feasible table has an
//! integral objective value. A node whose LP bound rounds (up for
//! minimization, down for maximization) to no better than the incumbent
//! therefore cannot contain a strictly better integer solution and is pruned.

mod fiber;

pub use fiber::{enumerate_fiber, ip_bound_by_enumeration, FiberEnumeration};

use crate::error::{Error, Result};
use crate::lp::{solve_bounded, Bounds, CellBoundProblem, LpStatus, Sense, DEFAULT_PIVOT_LIMIT};
use crate::model::{compute_margins, Flavor, IntTable};
use crate::rational::Rational;

pub const DEFAULT_NODE_LIMIT: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IpStatus {
    Optimal,
    Infeasible,
    NodeLimit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Proof {
    Complete,
    LimitHit,
}

impl Proof {
    pub fn as_str(self) -> &'static str {
        match self {
            Proof::Complete => "complete",
            Proof::LimitHit => "limit-hit",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IpSolution {
    pub status: IpStatus,
    /// Optimal value, or the best incumbent value when the node limit was hit.
    pub value: Option<i64>,
    pub incumbent: Option<IntTable>,
    pub nodes_explored: u64,
    pub proof: Proof,
    /// Incumbent values in the order they were found (warm start first).
    pub incumbent_trace: Vec<i64>,
    pub lp_pivots: u64,
}

/// Validates an integer-feasible starting point for `problem`.
fn check_warm_start(problem: &CellBoundProblem, table: &IntTable) -> Result<()> {
    if table.n() != problem.model().n() || !table.is_nonnegative() {
        return Err(Error::InfeasibleWarmStart);
    }
    if compute_margins(problem.model(), table)? != *problem.margins() {
        return Err(Error::InfeasibleWarmStart);
    }
    Ok(())
}

fn improves(sense: Sense, candidate: i64, incumbent: Option<i64>) -> bool {
    match (sense, incumbent) {
        (_, None) => true,
        (Sense::Minimize, Some(z)) => candidate < z,
        (Sense::Maximize, Some(z)) => candidate > z,
    }
}

/// Picks the variable whose fractional part is closest to 1/2, lowest index on ties.
fn branching_variable(x: &[Rational]) -> Option<usize> {
    let half = Rational::new(1, 2);
    let mut best: Option<(usize, Rational)> = None;
    for (j, v) in x.iter().enumerate() {
        let f = v.fract();
        if f.is_zero() {
            continue;
        }
        let dist = (&f - &half).abs();
        if best.as_ref().is_none_or(|(_, d)| dist < *d) {
            best = Some((j, dist));
        }
    }
    best.map(|(j, _)| j)
}

/// Solves `IP_Δ` for one cell. Nodes are explored depth-first; the floor
/// branch goes first when minimizing and the ceiling branch when maximizing.
pub fn solve_ip(
    problem: &CellBoundProblem,
    warm_start: Option<&IntTable>,
    node_limit: u64,
) -> Result<IpSolution> {
    let sense = problem.sense();
    let target = problem.target().index();
    let ncols = problem.model().num_cells();

    let mut incumbent: Option<IntTable> = None;
    let mut best: Option<i64> = None;
    let mut trace = Vec::new();
    if let Some(ws) = warm_start {
        check_warm_start(problem, ws)?;
        best = Some(*ws.get(target));
        trace.push(*ws.get(target));
        incumbent = Some(ws.clone());
    }

    let mut stack = vec![Bounds::free(ncols)];
    let mut nodes = 0u64;
    let mut pivots = 0u64;
    while let Some(bounds) = stack.pop() {
        if nodes >= node_limit {
            stack.push(bounds);
            break;
        }
        nodes += 1;
        let lp = solve_bounded(problem, &bounds, DEFAULT_PIVOT_LIMIT)?;
        pivots += lp.pivots;
        if lp.status == LpStatus::Infeasible {
            continue;
        }
        let value = lp.value.expect("optimal LP has a value");
        let rounded = match sense {
            Sense::Minimize => value.ceil(),
            Sense::Maximize => value.floor(),
        };
        if let Some(z) = best {
            let z = Rational::from(z);
            let dominated = match sense {
                Sense::Minimize => rounded >= z,
                Sense::Maximize => rounded <= z,
            };
            if dominated {
                continue;
            }
        }
        let primal = lp.primal.expect("optimal LP has a primal");
        match branching_variable(primal.values()) {
            None => {
                let table = primal.to_integer().expect("integral LP vertex");
                let v = *table.get(target);
                if improves(sense, v, best) {
                    best = Some(v);
                    trace.push(v);
                    incumbent = Some(table.with_flavor(Flavor::NonNegative)?);
                }
            }
            Some(j) => {
                let x = primal.get(j);
                let down = x.floor().to_i64().expect("bounded by grand total");
                let mut floor_child = bounds.clone();
                floor_child.upper[j] = Some(down);
                let mut ceil_child = bounds;
                ceil_child.lower[j] = down + 1;
                // last pushed is explored first
                match sense {
                    Sense::Minimize => {
                        stack.push(ceil_child);
                        stack.push(floor_child);
                    }
                    Sense::Maximize => {
                        stack.push(floor_child);
                        stack.push(ceil_child);
                    }
                }
            }
        }
    }

    let proof = if stack.is_empty() {
        Proof::Complete
    } else {
        Proof::LimitHit
    };
    let status = match (proof, best) {
        (Proof::LimitHit, _) => IpStatus::NodeLimit,
        (Proof::Complete, Some(_)) => IpStatus::Optimal,
        (Proof::Complete, None) => IpStatus::Infeasible,
    };
    Ok(IpSolution {
        status,
        value: best,
        incumbent,
        nodes_explored: nodes,
        proof,
        incumbent_trace: trace,
        lp_pivots: pivots,
    })
}
