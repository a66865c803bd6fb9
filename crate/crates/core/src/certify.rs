//! Primitivity checks and per-`n` gap certificates.

use crate::constructions::{build_instance, FamilyInstance};
use crate::error::{Error, Result};
use crate::ip::{ip_bound_by_enumeration, solve_ip, Proof, DEFAULT_NODE_LIMIT};
use crate::lp::{solve_lp, CellBoundProblem, LpStatus, Sense};
use crate::model::{
    compute_margins, is_kernel, lift_kernel, CellIndex, Flavor, IntTable, MarginOperator,
    SimplicialComplex,
};
use crate::rational::Rational;

pub const DEFAULT_SEARCH_CEILING: u128 = 100_000_000;
pub const DEFAULT_ENUMERATION_LIMIT: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitivityVerdict {
    pub primitive: bool,
    /// A kernel element `g ∉ {0, f}` with `g⁺ <= f⁺` and `g⁻ <= f⁻`.
    pub counterexample: Option<IntTable>,
    /// Candidates other than `0` and `f` that were examined.
    pub candidates_checked: u64,
    pub exhausted: bool,
}

/// Number of tables `g` with `g⁺ <= f⁺` and `g⁻ <= f⁻`, including `0` and `f`.
pub fn primitivity_search_size(f: &IntTable) -> u128 {
    f.support().fold(1u128, |acc, (_, v)| {
        acc.saturating_mul(v.unsigned_abs() as u128 + 1)
    })
}

/// Decides whether the kernel element `f` is primitive by visiting every
/// conformal table below it. Refuses when the search space exceeds `ceiling`.
pub fn check_primitive(
    model: &SimplicialComplex,
    f: &IntTable,
    ceiling: u128,
) -> Result<PrimitivityVerdict> {
    if !is_kernel(model, f)? {
        return Err(Error::NotInKernel);
    }
    let size = primitivity_search_size(f);
    if size > ceiling {
        return Err(Error::SearchCeiling { size, ceiling });
    }
    if f.is_zero() {
        return Ok(PrimitivityVerdict {
            primitive: false,
            counterexample: None,
            candidates_checked: 0,
            exhausted: true,
        });
    }

    let op = MarginOperator::new(model);
    let support: Vec<(usize, i64)> = f.support().map(|(c, &v)| (c, v)).collect();
    let columns: Vec<Vec<usize>> = support
        .iter()
        .map(|&(c, _)| op.column(c).collect())
        .collect();
    let maxima: Vec<i64> = support.iter().map(|&(_, v)| v.abs()).collect();
    let signs: Vec<i64> = support.iter().map(|&(_, v)| v.signum()).collect();

    // mixed-radix odometer over |g| <= |f| on the support, margins kept incrementally
    let mut digits = vec![0i64; support.len()];
    let mut margins = vec![0i64; op.num_rows()];
    let mut nonzero_rows = 0usize;
    let mut at_max = 0usize;
    let mut checked = 0u64;

    let shift = |k: usize, delta: i64, margins: &mut [i64], nonzero_rows: &mut usize| {
        for &r in &columns[k] {
            let before = margins[r];
            margins[r] += delta * signs[k];
            match (before == 0, margins[r] == 0) {
                (true, false) => *nonzero_rows += 1,
                (false, true) => *nonzero_rows -= 1,
                _ => {}
            }
        }
    };

    loop {
        let mut k = 0;
        while k < digits.len() {
            if digits[k] < maxima[k] {
                digits[k] += 1;
                if digits[k] == maxima[k] {
                    at_max += 1;
                }
                shift(k, 1, &mut margins, &mut nonzero_rows);
                break;
            }
            let back = digits[k];
            digits[k] = 0;
            at_max -= 1;
            shift(k, -back, &mut margins, &mut nonzero_rows);
            k += 1;
        }
        if k == digits.len() {
            break;
        }
        if at_max == digits.len() {
            continue;
        }
        checked += 1;
        if nonzero_rows == 0 {
            let entries = support
                .iter()
                .zip(&digits)
                .zip(&signs)
                .map(|((&(c, _), &d), &s)| (c, d * s));
            let g = IntTable::from_entries(f.n(), entries, Flavor::Signed)?;
            return Ok(PrimitivityVerdict {
                primitive: false,
                counterexample: Some(g),
                candidates_checked: checked,
                exhausted: false,
            });
        }
    }
    Ok(PrimitivityVerdict {
        primitive: true,
        counterexample: None,
        candidates_checked: checked,
        exhausted: true,
    })
}

/// Re-checks a counterexample from [`check_primitive`] from scratch.
pub fn verify_counterexample(model: &SimplicialComplex, f: &IntTable, g: &IntTable) -> bool {
    if g.n() != f.n() || g.is_zero() || g == f {
        return false;
    }
    let conformal = f.values().iter().zip(g.values()).all(|(&fv, &gv)| {
        if gv > 0 {
            fv >= gv
        } else if gv < 0 {
            fv <= gv
        } else {
            true
        }
    });
    conformal && is_kernel(model, g).unwrap_or(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IpMode {
    BranchAndBound,
    Enumerate,
    Skip,
}

impl IpMode {
    pub fn as_str(self) -> &'static str {
        match self {
            IpMode::BranchAndBound => "bb",
            IpMode::Enumerate => "enumerate",
            IpMode::Skip => "skip",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IpProof {
    Complete,
    LimitHit,
    Skipped,
}

impl IpProof {
    pub fn as_str(self) -> &'static str {
        match self {
            IpProof::Complete => "complete",
            IpProof::LimitHit => "limit-hit",
            IpProof::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub node_limit: u64,
    pub enumeration_limit: usize,
    /// Primitivity of `fₙ` is checked only when its search space fits.
    pub search_ceiling: u128,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            node_limit: DEFAULT_NODE_LIMIT,
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
            search_ceiling: DEFAULT_SEARCH_CEILING,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCheck {
    pub name: &'static str,
    pub passed: bool,
}

/// Certificate for the instance `(Δₙ, b, cell 0…0, min)`.
///
/// `measured_gap` is the gap of this one instance; it lower-bounds the gap
/// over all feasible margins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub n: usize,
    pub ip_mode: IpMode,
    pub lp_value: Rational,
    pub lp_pivots: u64,
    pub ip_value: Option<i64>,
    pub ip_proof: IpProof,
    pub ip_nodes: Option<u64>,
    pub witness_value: i64,
    pub measured_gap: Option<Rational>,
    pub theorem_bound: i64,
    pub primitivity_candidates: Option<u64>,
    pub checks: Vec<WitnessCheck>,
}

impl GapReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&'static str> {
        self.checks.iter().find(|c| !c.passed).map(|c| c.name)
    }
}

fn target_problem(inst: &FamilyInstance) -> Result<CellBoundProblem> {
    CellBoundProblem::new(
        inst.delta.clone(),
        inst.b.clone(),
        CellIndex::zero(inst.n),
        Sense::Minimize,
    )
}

/// Runs every computation for one `n` and records the outcome of each check
/// without failing on a violated one.
pub fn assemble_gap_report(n: usize, mode: IpMode, options: &CertifyOptions) -> Result<GapReport> {
    if n < 4 {
        return Err(Error::ParameterTooSmall { n, min: 4 });
    }
    let inst = build_instance(n)?;
    let problem = target_problem(&inst)?;
    let mut checks = Vec::new();
    let mut check = |name: &'static str, passed: bool| checks.push(WitnessCheck { name, passed });

    check("kernel", is_kernel(&inst.gamma, &inst.f)?);
    check(
        "lifted-kernel",
        is_kernel(&inst.delta, &lift_kernel(&inst.f))?,
    );
    let b = inst.b.to_rational();
    check(
        "margins-equal",
        compute_margins(&inst.delta, &inst.u)? == inst.b
            && compute_margins(&inst.delta, &inst.v)? == b,
    );
    check("v-nonnegative", inst.v.is_nonnegative());
    check("v-zero-at-target", inst.v.get(0).is_zero());
    check("u-at-target", *inst.u.get(0) == inst.bound);

    let mut primitivity_candidates = None;
    if primitivity_search_size(&inst.f) <= options.search_ceiling {
        let verdict = check_primitive(&inst.gamma, &inst.f, options.search_ceiling)?;
        primitivity_candidates = Some(verdict.candidates_checked);
        check("primitivity", verdict.primitive);
    }

    let lp = solve_lp(&problem)?;
    let lp_value = match (&lp.status, &lp.value) {
        (LpStatus::Optimal, Some(v)) => v.clone(),
        _ => return Err(Error::CheckFailed("lp-feasible".into())),
    };
    let primal = lp.primal.as_ref().expect("optimal LP has a primal");
    check(
        "lp-primal-feasible",
        compute_margins(&inst.delta, primal)? == b && primal.is_nonnegative(),
    );
    check("lp-zero", lp_value.is_zero());

    let (ip_value, ip_proof, ip_nodes) = match mode {
        IpMode::Skip => (None, IpProof::Skipped, None),
        IpMode::Enumerate => {
            match ip_bound_by_enumeration(
                &inst.delta,
                &inst.b,
                CellIndex::zero(n),
                Sense::Minimize,
                options.enumeration_limit,
            ) {
                Ok(v) => (Some(v), IpProof::Complete, None),
                Err(Error::EnumerationLimit(_)) => (None, IpProof::LimitHit, None),
                Err(e) => return Err(e),
            }
        }
        IpMode::BranchAndBound => {
            let s = solve_ip(&problem, Some(&inst.u), options.node_limit)?;
            match s.proof {
                Proof::Complete => (s.value, IpProof::Complete, Some(s.nodes_explored)),
                Proof::LimitHit => (None, IpProof::LimitHit, Some(s.nodes_explored)),
            }
        }
    };
    let witness_value = *inst.u.get(0);
    let measured_gap = ip_value.map(|v| Rational::from(v) - &lp_value);
    if let Some(v) = ip_value {
        check("ip-below-witness", v <= witness_value);
        check("ip-above-lp", Rational::from(v) >= lp_value);
    }
    if let Some(gap) = &measured_gap {
        check("gap-bound", *gap >= Rational::from(inst.bound));
    }

    Ok(GapReport {
        n,
        ip_mode: mode,
        lp_value,
        lp_pivots: lp.pivots,
        ip_value,
        ip_proof,
        ip_nodes,
        witness_value,
        measured_gap,
        theorem_bound: inst.bound,
        primitivity_candidates,
        checks,
    })
}

/// Like [`assemble_gap_report`], but a failed check aborts with its name.
pub fn certify_gap(n: usize, mode: IpMode, options: &CertifyOptions) -> Result<GapReport> {
    let report = assemble_gap_report(n, mode, options)?;
    match report.first_failure() {
        Some(name) => Err(Error::CheckFailed(name.to_string())),
        None => Ok(report),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{f_n, gamma_n};

    #[test]
    fn f4_is_primitive() {
        let v = check_primitive(
            &gamma_n(4).unwrap(),
            &f_n(4).unwrap(),
            DEFAULT_SEARCH_CEILING,
        )
        .unwrap();
        assert!(v.primitive && v.exhausted);
        assert!(v.counterexample.is_none());
        // (2+1) * (1+1)^4 tables, minus 0 and f itself
        assert_eq!(v.candidates_checked, 46);
    }

    #[test]
    fn f5_is_primitive() {
        let f = f_n(5).unwrap();
        assert_eq!(
            primitivity_search_size(&f),
            5 * 2 * 2 * 2 * 4 * 2 * 2 * 2 * 2
        );
        let v = check_primitive(&gamma_n(5).unwrap(), &f, DEFAULT_SEARCH_CEILING).unwrap();
        assert!(v.primitive);
        assert_eq!(v.candidates_checked, 2560 - 2);
    }

    #[test]
    fn doubled_f_is_not_primitive() {
        let g = gamma_n(4).unwrap();
        let f = f_n(4).unwrap();
        let v = check_primitive(&g, &f.scaled(2), DEFAULT_SEARCH_CEILING).unwrap();
        assert!(!v.primitive);
        let cx = v.counterexample.unwrap();
        assert!(verify_counterexample(&g, &f.scaled(2), &cx));
        assert_eq!(cx, f);
    }

    #[test]
    fn refusals() {
        let g = gamma_n(4).unwrap();
        let f = f_n(4).unwrap();
        assert_eq!(
            check_primitive(&g, &f, 10).unwrap_err(),
            Error::SearchCeiling {
                size: 48,
                ceiling: 10
            }
        );
        let not_kernel = IntTable::from_entries(3, [(0, 1)], Flavor::Signed).unwrap();
        assert_eq!(
            check_primitive(&g, &not_kernel, 100).unwrap_err(),
            Error::NotInKernel
        );
        let zero = IntTable::zeros(3, Flavor::Signed);
        assert!(!check_primitive(&g, &zero, 100).unwrap().primitive);
    }

    #[test]
    fn counterexample_verifier_rejects_bad_input() {
        let g = gamma_n(4).unwrap();
        let f = f_n(4).unwrap();
        assert!(!verify_counterexample(&g, &f, &f));
        assert!(!verify_counterexample(
            &g,
            &f,
            &IntTable::zeros(3, Flavor::Signed)
        ));
        assert!(!verify_counterexample(&g, &f, &f.scaled(-1)));
    }

    #[test]
    fn gap_n4_enumerate() {
        let r = certify_gap(4, IpMode::Enumerate, &CertifyOptions::default()).unwrap();
        assert_eq!(r.lp_value, Rational::ZERO);
        assert_eq!(r.ip_value, Some(1));
        assert_eq!(r.measured_gap, Some(Rational::ONE));
        assert_eq!(r.theorem_bound, 1);
        assert!(r.all_passed());
    }

    #[test]
    fn gap_n5_bb() {
        let r = certify_gap(5, IpMode::BranchAndBound, &CertifyOptions::default()).unwrap();
        assert_eq!(r.ip_value, Some(3));
        assert_eq!(r.ip_proof, IpProof::Complete);
        assert!(r.checks.iter().any(|c| c.name == "primitivity"));
    }

    #[test]
    fn gap_limit_hit() {
        let opts = CertifyOptions {
            node_limit: 1,
            ..CertifyOptions::default()
        };
        let r = assemble_gap_report(5, IpMode::BranchAndBound, &opts).unwrap();
        assert_eq!(r.ip_proof, IpProof::LimitHit);
        assert_eq!(r.ip_value, None);
        assert_eq!(r.measured_gap, None);
        assert!(r.all_passed());
    }

    #[test]
    fn gap_rejects_small_n() {
        assert!(matches!(
            certify_gap(3, IpMode::Skip, &CertifyOptions::default()),
            Err(Error::ParameterTooSmall { .. })
        ));
    }
}
