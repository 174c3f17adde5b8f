//! Exact SDP solving by perturbation homotopy over the rank strata of the pencil.

mod feasibility;
mod report;
mod stratum;

use std::time::{Duration, Instant};

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{RatMatrix, Rational, Ring};
use crate::bounds;
use crate::elim::{compare, AlgebraicPoint, ZeroDimParam};
use crate::error::SolveError;
use crate::pencil::{
    detect_zero_point, psd_check, psd_check_algebraic, sample_perturbation, ObjectiveForm, PerturbationMatrix,
    SymmetricPencil,
};
use crate::systems::{build_incidence, build_lagrange, index_sets};

pub use feasibility::{cone_unboundedness_test, feasibility, ConeVerdict, Feasibility};
pub use report::{Candidate, MinimizerCertificate, SolveReport, SolveStatus, StratumOutcome, StratumSummary};
pub use stratum::{
    cut, cut_ideal, genericity_diagnostics, odp, union, GenericityReport, OdpOptions, StratumCurve, EPS_LADDER,
};

/// Environment variable overriding the worker count.
pub const WORKERS_ENV: &str = "DEGSDP_WORKERS";

#[derive(Clone, Debug)]
pub struct SolveConfig {
    pub seed: u64,
    /// Explicit perturbation; disables reseeding.
    pub perturbation: Option<RatMatrix>,
    pub stratum_budget: Duration,
    /// Highest rank stratum visited; `None` means `m − 1`.
    pub max_rank: Option<usize>,
    pub allow_objective_perturbation: bool,
    pub reseeds: usize,
    pub workers: Option<usize>,
    /// Compute the `(t, u)` form of every curve.
    pub curve_params: bool,
    /// Confirm a minimizer by testing the recession cone for descent directions.
    pub recession_check: bool,
    /// Test hook: run the homotopy even when `A(x*) = 0` has a solution.
    pub skip_zero_point: bool,
    /// Test hook: process the strata in a shuffled order.
    pub shuffle_strata: Option<u64>,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            seed: 0,
            perturbation: None,
            stratum_budget: Duration::from_secs(60),
            max_rank: None,
            allow_objective_perturbation: false,
            reseeds: 5,
            workers: None,
            curve_params: false,
            recession_check: true,
            skip_zero_point: false,
            shuffle_strata: None,
        }
    }
}

impl SolveConfig {
    pub fn with_perturbation(mut self, b: RatMatrix) -> Self {
        self.perturbation = Some(b);
        self
    }

    fn worker_count(&self) -> Option<usize> {
        self.workers.or_else(|| std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse().ok())).filter(|&w| w > 0)
    }
}

/// Ranks visited for an `m × m` pencil.
pub fn rank_range(m: usize, max_rank: Option<usize>) -> Vec<usize> {
    if m == 1 {
        return vec![0];
    }
    let top = max_rank.map_or(m - 1, |k| k.min(m - 1));
    (1..=top).collect()
}

struct StratumRun {
    summary: StratumSummary,
    limits: Option<ZeroDimParam>,
}

fn run_stratum(
    pencil: &SymmetricPencil,
    objective: &ObjectiveForm,
    b: &RatMatrix,
    r: usize,
    iota: &[usize],
    config: &SolveConfig,
    seed: u64,
) -> StratumRun {
    let start = Instant::now();
    let deadline = Some(start + config.stratum_budget);
    let m = pencil.m();
    let n = pencil.n();
    let result = (|| {
        let inc = build_incidence(pencil, Some(b), r, iota)?;
        let lag = build_lagrange(&inc, objective)?;
        let opts = OdpOptions { seed, deadline, parametrize: config.curve_params };
        let curve = odp(&lag, &opts)?;
        let limits = cut(&curve, deadline)?;
        Ok::<_, SolveError>((curve, limits))
    })();
    let mut summary = StratumSummary {
        r,
        iota: iota.to_vec(),
        outcome: StratumOutcome::Empty,
        curve_degree: 0,
        theta1: (r >= 1 && n >= 1).then(|| bounds::theta1(m, n, r).ok()).flatten(),
        degree_bound: (r >= 1 && n >= 1).then(|| bounds::curve_degree_bound(m, n, r).ok()).flatten(),
        eps_bar: None,
        limit_points: 0,
        seconds: 0.0,
        curve: None,
    };
    let limits = match result {
        Ok((curve, limits)) => {
            summary.curve_degree = curve.degree;
            summary.eps_bar = curve.eps_bar.clone();
            summary.limit_points = limits.degree();
            summary.outcome = if curve.is_empty() { StratumOutcome::Empty } else { StratumOutcome::Curve };
            summary.curve = Some(curve);
            Some(limits)
        }
        Err(SolveError::Timeout) => {
            summary.outcome = StratumOutcome::Timeout;
            None
        }
        Err(e) => {
            summary.outcome = StratumOutcome::Failed(e.to_string());
            None
        }
    };
    summary.seconds = start.elapsed().as_secs_f64();
    StratumRun { summary, limits }
}

fn run_strata(
    pencil: &SymmetricPencil,
    objective: &ObjectiveForm,
    b: &RatMatrix,
    config: &SolveConfig,
    seed: u64,
) -> Vec<StratumRun> {
    let mut tasks: Vec<(usize, Vec<usize>)> = rank_range(pencil.m(), config.max_rank)
        .into_iter()
        .flat_map(|r| index_sets(pencil.m(), r).into_iter().map(move |iota| (r, iota)))
        .collect();
    if let Some(s) = config.shuffle_strata {
        use rand::seq::SliceRandom;
        tasks.shuffle(&mut <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(s));
    }
    let go = || {
        tasks.par_iter().map(|(r, iota)| run_stratum(pencil, objective, b, *r, iota, config, seed)).collect::<Vec<_>>()
    };
    match config.worker_count() {
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
            Ok(pool) => pool.install(go),
            Err(_) => go(),
        },
        None => go(),
    }
}

fn contains(q: &ZeroDimParam, point: &AlgebraicPoint) -> bool {
    !q.is_empty() && q.to_ideal(&Ring::new(q.names())).generators().iter().all(|g| point.vanishes(g))
}

fn objective_nudge(n: usize, step: usize) -> Vec<Rational> {
    (0..n).map(|i| Rational::new(((i + 1) * step).into(), 1000.into())).collect()
}

/// Algorithm DegenerateSDP: minimize `ℓ` over `{x : A(x) ⪰ 0}`.
pub fn degenerate_sdp(
    pencil: &SymmetricPencil,
    objective: &ObjectiveForm,
    config: &SolveConfig,
) -> Result<SolveReport, SolveError> {
    if objective.len() != pencil.n() {
        return Err(SolveError::Invalid(format!(
            "objective has {} coefficients, pencil has {} variables",
            objective.len(),
            pencil.n()
        )));
    }
    if let Some(b) = &config.perturbation {
        if b.rows != pencil.m() || b.cols != pencil.m() {
            return Err(SolveError::Invalid(format!("perturbation must be {0}x{0}", pencil.m())));
        }
    }
    let mut report = SolveReport::new(pencil, objective);

    if !config.skip_zero_point {
        if let Some(x) = detect_zero_point(pencil) {
            report.zero_point = Some(x.clone());
            match cone_unboundedness_test(pencil, &x, objective, config)? {
                ConeVerdict::UnboundedBelow => report.status = SolveStatus::UnboundedBelow,
                ConeVerdict::MinimizerAtVertex => {
                    report.status = SolveStatus::ZeroPointVertex;
                    report.minimizer = Some(MinimizerCertificate {
                        point: AlgebraicPoint::rational(&x),
                        rank: 0,
                        value: crate::elim::AlgebraicNumber::rational(objective.eval(&x)),
                        stratum: None,
                    });
                }
            }
            report.diagnostics.push("zero point of the pencil: decided on its cone".into());
            return Ok(report);
        }
    }
    if pencil.n() == 0 {
        let cert = psd_check(pencil, &[])?;
        report.status = if cert.is_psd() {
            report.minimizer = Some(MinimizerCertificate {
                point: AlgebraicPoint::rational(&[]),
                rank: cert.rank,
                value: crate::elim::AlgebraicNumber::rational(Rational::zero()),
                stratum: None,
            });
            SolveStatus::Solved
        } else {
            SolveStatus::EmptyFeasible
        };
        return Ok(report);
    }

    let mut objective_used = objective.clone();
    let mut nudges = 0usize;
    let mut attempt = 0usize;
    let runs = loop {
        let b = match &config.perturbation {
            Some(b) => PerturbationMatrix::unchecked(b.clone()),
            None => sample_perturbation(pencil.m(), config.seed + attempt as u64),
        };
        let seed = config.seed + attempt as u64;
        let runs = run_strata(pencil, &objective_used, &b.matrix, config, seed);
        report.perturbation = Some(b);
        report.reseeds = attempt;
        let failed: Vec<String> = runs
            .iter()
            .filter_map(|s| match &s.summary.outcome {
                StratumOutcome::Failed(msg) => Some(msg.clone()),
                _ => None,
            })
            .collect();
        if failed.is_empty() {
            break runs;
        }
        report.diagnostics.extend(failed.iter().map(|f| format!("seed {seed}: {f}")));
        if config.perturbation.is_none() && attempt < config.reseeds {
            attempt += 1;
            continue;
        }
        if config.allow_objective_perturbation && nudges < 3 {
            nudges += 1;
            attempt = 0;
            let delta = objective_nudge(objective.len(), nudges);
            objective_used = ObjectiveForm::new(objective.coeffs().iter().zip(&delta).map(|(a, d)| a + d).collect());
            report.objective_perturbation = Some(delta);
            continue;
        }
        report.status = SolveStatus::GenericityFailure;
        report.strata = runs.into_iter().map(|s| s.summary).collect();
        return Ok(report);
    };
    report.objective = objective_used.clone();

    let timeouts: Vec<(usize, Vec<usize>)> = runs
        .iter()
        .filter(|s| s.summary.outcome == StratumOutcome::Timeout)
        .map(|s| (s.summary.r, s.summary.iota.clone()))
        .collect();

    // union per rank, then filter the real limit points exactly
    let x_names: Vec<String> = (1..=pencil.n()).map(|i| format!("x{i}")).collect();
    let deadline = Some(Instant::now() + config.stratum_budget);
    for r in rank_range(pencil.m(), config.max_rank) {
        let mut q = ZeroDimParam::empty(&x_names);
        for run in runs.iter().filter(|s| s.summary.r == r) {
            if let Some(l) = &run.limits {
                q = union(&q, l, deadline)?;
            }
        }
        report.q.push((r, q));
    }
    report.strata = runs.iter().map(|s| s.summary.clone()).collect();

    for (r, q) in &report.q {
        for point in q.real_points() {
            if report.candidates.iter().any(|c: &Candidate| c.point.cmp_lex(&point).is_eq()) {
                continue;
            }
            let certificate = psd_check_algebraic(pencil, &point)?;
            let value = point.linear_value(objective_used.coeffs());
            let origin = runs
                .iter()
                .filter(|s| s.summary.r == *r)
                .find(|s| s.limits.as_ref().is_some_and(|l| contains(l, &point)))
                .map(|s| (s.summary.r, s.summary.iota.clone(), s.summary.curve_degree));
            report.candidates.push(Candidate { stratum_rank: *r, point, certificate, value, origin });
        }
    }

    if !timeouts.is_empty() {
        report.status = SolveStatus::StratumTimeout(timeouts);
        return Ok(report);
    }
    let best = report
        .candidates
        .iter()
        .filter(|c| c.certificate.is_psd())
        .min_by(|a, b| {
            compare(&a.value, &b.value)
                .then(a.certificate.rank.cmp(&b.certificate.rank))
                .then_with(|| a.point.cmp_lex(&b.point))
        })
        .cloned();
    let Some(best) = best else {
        report.status = SolveStatus::EmptyFeasible;
        report.diagnostics.push("no feasible limit point: infeasible or unbounded below".into());
        return Ok(report);
    };
    if config.recession_check {
        let h = pencil.homogeneous();
        let origin = vec![Rational::zero(); pencil.n()];
        if cone_unboundedness_test(&h, &origin, &objective_used, config)? == ConeVerdict::UnboundedBelow {
            report.status = SolveStatus::UnboundedBelow;
            report.diagnostics.push("recession cone contains a descent direction".into());
            return Ok(report);
        }
    }
    report.status = SolveStatus::Solved;
    report.minimizer = Some(MinimizerCertificate {
        rank: best.certificate.rank,
        value: best.value.clone(),
        stratum: best.origin.clone(),
        point: best.point.clone(),
    });
    Ok(report)
}
