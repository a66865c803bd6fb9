//! `key value` rendering of command results.

use std::fmt::Write as _;

use cellbound_core::certify::GapReport;

/// Renders a gap certificate. When the integer optimum is not proven, the
/// `measured_gap` line is replaced by the theorem's lower bound `gap >= B`.
pub fn render_gap_report(r: &GapReport) -> String {
    let mut out = String::new();
    let mut line =
        |key: &str, value: &dyn std::fmt::Display| writeln!(out, "{key} {value}").unwrap();
    line("n", &r.n);
    line("ip_mode", &r.ip_mode.as_str());
    line("lp_value", &r.lp_value);
    line("lp_pivots", &r.lp_pivots);
    match r.ip_value {
        Some(v) => line("ip_value", &v),
        None => line("ip_value", &"unproven"),
    }
    line("ip_proof", &r.ip_proof.as_str());
    if let Some(nodes) = r.ip_nodes {
        line("ip_nodes", &nodes);
    }
    line("witness_value", &r.witness_value);
    line("theorem_bound", &r.theorem_bound);
    match &r.measured_gap {
        Some(g) => line("measured_gap", g),
        None => line("gap", &format!(">= {}", r.theorem_bound)),
    }
    if let Some(c) = r.primitivity_candidates {
        line("primitivity_candidates", &c);
    }
    for c in &r.checks {
        writeln!(
            out,
            "check {} {}",
            c.name,
            if c.passed { "pass" } else { "fail" }
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cellbound_core::certify::{assemble_gap_report, CertifyOptions, IpMode};

    #[test]
    fn n4_enumerate() {
        let r = assemble_gap_report(4, IpMode::Enumerate, &CertifyOptions::default()).unwrap();
        let text = render_gap_report(&r);
        assert!(text.starts_with("n 4\nip_mode enumerate\nlp_value 0\n"));
        assert!(text.contains(
            "\nip_value 1\nip_proof complete\nwitness_value 1\ntheorem_bound 1\nmeasured_gap 1\n"
        ));
        assert!(text.contains("check primitivity pass\n"));
        assert!(!text.contains("fail"));
    }

    #[test]
    fn skipped_ip_prints_bound_line() {
        let r = assemble_gap_report(5, IpMode::Skip, &CertifyOptions::default()).unwrap();
        let text = render_gap_report(&r);
        assert!(text.contains("ip_value unproven\nip_proof skipped\n"));
        assert!(text.contains("gap >= 3\n"));
        assert!(!text.contains("measured_gap"));
    }
}
