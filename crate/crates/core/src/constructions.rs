//! The family of models `Δₙ = logit(Γₙ)` with an exponential LP/IP gap at
//! the all-zero cell, together with its witnesses.
//!
//! Cells of tables on `n - 1` variables are written `(i, k)` and cells on `n`
//! variables `(i, j, k)`, where `i` covers the first `n - 2` variables. With
//! the canonical linearization this makes `i` the high bits of the index.

use crate::error::{Error, Result};
use crate::model::{
    compute_margins, is_kernel, lift_kernel, Flavor, IntTable, MarginVector, RatTable,
    SimplicialComplex, MAX_VARS,
};
use crate::rational::Rational;

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::ParameterTooSmall { n, min });
    }
    if n > MAX_VARS {
        return Err(Error::TooManyVariables(n));
    }
    Ok(())
}

/// `2^(n-3)`.
fn half_block(n: usize) -> i64 {
    1i64 << (n - 3)
}

/// The bound `2^(n-3) - 1`.
pub fn theorem_bound(n: usize) -> Result<i64> {
    check_n(n, 3)?;
    Ok(half_block(n) - 1)
}

fn even_weight(i: usize) -> bool {
    i.count_ones().is_multiple_of(2)
}

/// `Γₙ` on `n - 1` variables: the boundary of the simplex on `[n-2]`
/// together with the isolated vertex `n - 1`.
///
/// At `n = 3` the boundary of a point is only the empty face, which carries
/// no facet, so `Γ₃` has the single facet `{2}`.
pub fn gamma_n(n: usize) -> Result<SimplicialComplex> {
    check_n(n, 3)?;
    let base = n - 2;
    let mut sets: Vec<Vec<usize>> = (1..=base)
        .filter(|_| base > 1)
        .map(|skip| (1..=base).filter(|&v| v != skip).collect())
        .collect();
    sets.push(vec![n - 1]);
    SimplicialComplex::new(n - 1, sets)
}

/// `Δₙ = logit(Γₙ)`.
pub fn delta_n(n: usize) -> Result<SimplicialComplex> {
    Ok(gamma_n(n)?.logit())
}

/// The primitive kernel element `fₙ` of `A_{Γₙ}`, a signed table on `n - 1`
/// variables.
pub fn f_n(n: usize) -> Result<IntTable> {
    check_n(n, 3)?;
    let big = half_block(n);
    let entries = (0..1usize << (n - 2)).flat_map(|i| {
        let (at0, at1) = if i == 0 {
            (big, -(big - 1))
        } else if even_weight(i) {
            (0, 1)
        } else {
            (-1, 0)
        };
        [(i << 1, at0), ((i << 1) | 1, at1)]
    });
    IntTable::from_entries(n - 1, entries, Flavor::Signed)
}

/// The common margins of `fₙ⁺` and `fₙ⁻`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedMargins {
    /// Margin over any facet `S ⊊ [n-2]`, indexed by `{0,1}^(n-3)`.
    pub boundary: Vec<i64>,
    /// Margin over `{n-1}`.
    pub isolated: [i64; 2],
}

/// Closed-form margins of `fₙ⁺`/`fₙ⁻`, for checking `compute_margins`.
pub fn expected_margins(n: usize) -> Result<ExpectedMargins> {
    check_n(n, 4)?;
    let big = half_block(n);
    let mut boundary = vec![1i64; 1 << (n - 3)];
    boundary[0] += big - 1;
    Ok(ExpectedMargins {
        boundary,
        isolated: [big, big - 1],
    })
}

/// The integer table `u` on `n` variables whose all-zero cell is `2^(n-3) - 1`.
pub fn u_n(n: usize) -> Result<IntTable> {
    check_n(n, 3)?;
    let w = half_block(n) - 1;
    let cell = |i: usize, j: usize, k: usize| (i << 2) | (j << 1) | k;
    let mut entries = vec![(cell(0, 0, 0), w), (cell(0, 1, 1), w)];
    for i in 1..1usize << (n - 2) {
        if even_weight(i) {
            entries.push((cell(i, 1, 0), 1));
        } else {
            entries.push((cell(i, 0, 1), 1));
        }
    }
    IntTable::from_entries(n, entries, Flavor::NonNegative)
}

/// Released margins `b = A_{Δₙ} u`.
pub fn b_n(n: usize) -> Result<MarginVector<i64>> {
    compute_margins(&delta_n(n)?, &u_n(n)?)
}

/// The rational table `v = u - ((2^(n-3) - 1) / 2^(n-3)) (fₙ, -fₙ)`, which
/// shares the margins of `u` and vanishes at the all-zero cell.
pub fn v_n(n: usize) -> Result<RatTable> {
    check_n(n, 3)?;
    let u = u_n(n)?;
    let lifted = lift_kernel(&f_n(n)?);
    let scale = Rational::new(half_block(n) - 1, half_block(n));
    let values = u
        .values()
        .iter()
        .zip(lifted.values())
        .map(|(&a, &g)| Rational::from(a) - &scale * Rational::from(g))
        .collect();
    RatTable::new(n, values, Flavor::NonNegative)
}

/// Every object of the construction at one `n`, checked for consistency.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub n: usize,
    pub gamma: SimplicialComplex,
    pub delta: SimplicialComplex,
    pub f: IntTable,
    pub u: IntTable,
    pub b: MarginVector<i64>,
    pub v: RatTable,
    pub bound: i64,
}

fn ensure(ok: bool, name: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::CheckFailed(name.to_string()))
    }
}

/// Assembles the instance and verifies its invariants; a failure here is an
/// implementation bug and is reported as [`Error::CheckFailed`].
pub fn build_instance(n: usize) -> Result<FamilyInstance> {
    check_n(n, 3)?;
    let gamma = gamma_n(n)?;
    let delta = gamma.logit();
    let f = f_n(n)?;
    let u = u_n(n)?;
    let b = compute_margins(&delta, &u)?;
    let v = v_n(n)?;
    let bound = theorem_bound(n)?;

    ensure(is_kernel(&gamma, &f)?, "kernel")?;
    ensure(
        compute_margins(&delta, &v)? == b.to_rational(),
        "margins-equal",
    )?;
    ensure(v.is_nonnegative(), "v-nonnegative")?;
    ensure(v.get(0).is_zero(), "v-zero-at-target")?;
    ensure(*u.get(0) == bound, "u-at-target")?;

    Ok(FamilyInstance {
        n,
        gamma,
        delta,
        f,
        u,
        b,
        v,
        bound,
    })
}
