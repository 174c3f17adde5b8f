//! Plain-text renderings of command results.

use std::fmt::Write as _;

use num_bigint::BigUint;

use degsdp_core::bounds::StratumBounds;
use degsdp_core::elim::AlgebraicNumber;
use degsdp_core::oracle::{OracleEstimate, OracleVerdict};
use degsdp_core::solver::{SolveReport, StratumOutcome};

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.12}")).collect();
    format!("({})", parts.join(", "))
}

pub fn report(rep: &SolveReport) -> String {
    let mut s = String::new();
    writeln!(s, "status: {}", rep.status.name()).unwrap();
    if let Some(b) = &rep.perturbation {
        let rows: Vec<String> =
            b.matrix.to_rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")).collect();
        writeln!(s, "perturbation B: [{}] (reseeds: {})", rows.join("; "), rep.reseeds).unwrap();
    }
    if let Some(d) = &rep.objective_perturbation {
        let d: Vec<String> = d.iter().map(|c| c.to_string()).collect();
        writeln!(s, "objective perturbed by ({})", d.join(", ")).unwrap();
    }
    if let Some(x) = &rep.zero_point {
        let x: Vec<String> = x.iter().map(|c| c.to_string()).collect();
        writeln!(s, "zero point: ({})", x.join(", ")).unwrap();
    }
    if let Some(mz) = &rep.minimizer {
        writeln!(s, "minimizer: {}", fmt_vec(&mz.point.approx(1e-12))).unwrap();
        for i in 0..mz.point.dim() {
            writeln!(s, "  x{} = {}", i + 1, exact(&mz.point.coordinate(i))).unwrap();
        }
        writeln!(s, "rank: {}", mz.rank).unwrap();
        writeln!(s, "objective: {}", exact(&mz.value)).unwrap();
    }
    if !rep.strata.is_empty() {
        writeln!(s, "strata:").unwrap();
        writeln!(
            s,
            "  {:>2} {:<10} {:<8} {:>6} {:>8} {:>6} {:>8}",
            "r", "iota", "outcome", "degree", "bound", "limits", "seconds"
        )
        .unwrap();
        for st in &rep.strata {
            let iota: Vec<String> = st.iota.iter().map(|i| (i + 1).to_string()).collect();
            let outcome = match &st.outcome {
                StratumOutcome::Curve => "curve".to_string(),
                StratumOutcome::Empty => "empty".to_string(),
                StratumOutcome::Timeout => "timeout".to_string(),
                StratumOutcome::Failed(_) => "failed".to_string(),
            };
            let bound = st.degree_bound.as_ref().map_or("-".to_string(), BigUint::to_string);
            writeln!(
                s,
                "  {:>2} {:<10} {:<8} {:>6} {:>8} {:>6} {:>8.3}",
                st.r,
                format!("{{{}}}", iota.join(",")),
                outcome,
                st.curve_degree,
                bound,
                st.limit_points,
                st.seconds
            )
            .unwrap();
        }
    }
    if !rep.candidates.is_empty() {
        writeln!(s, "candidates:").unwrap();
        for c in &rep.candidates {
            writeln!(
                s,
                "  {} {:?} value ~{:.9}",
                fmt_vec(&c.point.approx(1e-9)),
                c.certificate.verdict,
                c.value.to_f64()
            )
            .unwrap();
        }
    }
    for d in &rep.diagnostics {
        writeln!(s, "note: {d}").unwrap();
    }
    s
}

pub fn bounds(m: usize, n: usize, rows: &[StratumBounds], size_ok: bool, estimate: Option<&BigUint>) -> String {
    let mut s = String::new();
    writeln!(s, "m = {m}, n = {n}").unwrap();
    writeln!(s, "{:>3} {:>4} {:>4} {:>12} {:>14} {:>16}", "r", "c", "N", "theta1", "curve bound", "theta regular")
        .unwrap();
    for b in rows {
        writeln!(
            s,
            "{:>3} {:>4} {:>4} {:>12} {:>14} {:>16}",
            b.r, b.c, b.big_n, b.theta1, b.curve_bound, b.theta_regular
        )
        .unwrap();
    }
    writeln!(s, "N <= n + 2m^2: {size_ok}").unwrap();
    if let Some(e) = estimate {
        writeln!(s, "complexity estimate (audit only): {e}").unwrap();
    }
    s
}

pub fn oracle(est: &OracleEstimate) -> String {
    let mut s = String::from("numeric estimate, not certified\n");
    match est.verdict {
        OracleVerdict::Bounded => {}
        OracleVerdict::PossiblyUnbounded => s.push_str("possibly unbounded\n"),
        OracleVerdict::NoFeasiblePoint => s.push_str("no feasible point found\n"),
    }
    if let (Some(v), Some(x)) = (est.value, &est.point) {
        writeln!(s, "estimate: {v:.9}").unwrap();
        writeln!(s, "best point: {}", fmt_vec(x)).unwrap();
    }
    writeln!(s, "search box radius: {}", est.box_radius).unwrap();
    s
}

fn exact(a: &AlgebraicNumber) -> String {
    match a.rational_value() {
        Some(c) => c.to_string(),
        None => a.to_string(),
    }
}
