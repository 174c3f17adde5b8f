//! Solver output and its JSON form.

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::algebra::rational::{format_rational, to_f64};
use crate::algebra::Rational;
use crate::elim::{AlgebraicNumber, AlgebraicNumberDoc, AlgebraicPoint, ZeroDimParam};
use crate::pencil::matrix_to_doc;
use crate::pencil::{ObjectiveForm, PerturbationMatrix, PsdCertificate, SymmetricPencil};

use super::stratum::{one_based, StratumCurve};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Solved,
    ZeroPointVertex,
    UnboundedBelow,
    /// Infeasible or unbounded below; the two are not told apart.
    EmptyFeasible,
    GenericityFailure,
    /// Strata `(r, ι)` that ran out of budget.
    StratumTimeout(Vec<(usize, Vec<usize>)>),
}

impl SolveStatus {
    pub fn name(&self) -> &'static str {
        match self {
            SolveStatus::Solved => "Solved",
            SolveStatus::ZeroPointVertex => "ZeroPointVertex",
            SolveStatus::UnboundedBelow => "UnboundedBelow",
            SolveStatus::EmptyFeasible => "EmptyFeasible",
            SolveStatus::GenericityFailure => "GenericityFailure",
            SolveStatus::StratumTimeout(_) => "StratumTimeout",
        }
    }

    pub fn has_minimizer(&self) -> bool {
        matches!(self, SolveStatus::Solved | SolveStatus::ZeroPointVertex)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StratumOutcome {
    Curve,
    Empty,
    Timeout,
    Failed(String),
}

#[derive(Clone, Debug)]
pub struct StratumSummary {
    pub r: usize,
    pub iota: Vec<usize>,
    pub outcome: StratumOutcome,
    pub curve_degree: usize,
    pub theta1: Option<BigUint>,
    pub degree_bound: Option<BigUint>,
    pub eps_bar: Option<Rational>,
    pub limit_points: usize,
    pub seconds: f64,
    pub curve: Option<StratumCurve>,
}

impl StratumSummary {
    /// Measured degree within the closed-form bound (vacuous when no bound applies).
    pub fn within_bound(&self) -> bool {
        self.degree_bound.as_ref().map_or(true, |b| BigUint::from(self.curve_degree) <= *b)
    }
}

#[derive(Clone, Debug)]
pub struct Candidate {
    /// Rank stratum whose limits produced the point.
    pub stratum_rank: usize,
    pub point: AlgebraicPoint,
    pub certificate: PsdCertificate,
    pub value: AlgebraicNumber,
    /// `(r, ι, curve degree)` of a stratum whose limit set contains the point.
    pub origin: Option<(usize, Vec<usize>, usize)>,
}

#[derive(Clone, Debug)]
pub struct MinimizerCertificate {
    pub point: AlgebraicPoint,
    pub rank: usize,
    pub value: AlgebraicNumber,
    pub stratum: Option<(usize, Vec<usize>, usize)>,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub m: usize,
    pub n: usize,
    /// Limit sets per rank, `(r, Q_r)`.
    pub q: Vec<(usize, ZeroDimParam)>,
    pub strata: Vec<StratumSummary>,
    pub candidates: Vec<Candidate>,
    pub minimizer: Option<MinimizerCertificate>,
    pub perturbation: Option<PerturbationMatrix>,
    pub reseeds: usize,
    pub objective: ObjectiveForm,
    pub objective_perturbation: Option<Vec<Rational>>,
    pub zero_point: Option<Vec<Rational>>,
    pub diagnostics: Vec<String>,
}

fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn big(v: &Option<BigUint>) -> Value {
    v.as_ref().map_or(Value::Null, |b| Value::String(b.to_string()))
}

pub fn param_json(q: &ZeroDimParam) -> Value {
    let points: Vec<Value> = q
        .real_points()
        .iter()
        .map(|p| {
            let (lo, hi) = p.root().interval();
            json!({"interval": [format_rational(lo), format_rational(hi)], "approx": p.approx(1e-12)})
        })
        .collect();
    json!({
        "names": q.names(),
        "lambda": rats(q.lambda()),
        "q": q.q().to_string(),
        "q0": q.q0().to_string(),
        "coords": q.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "real_points": points,
    })
}

/// `{"q", "interval", "coords"}`: the point as `x_i = coords[i](t)` at the root of `q` in `interval`.
pub fn point_json(p: &AlgebraicPoint) -> Value {
    let (lo, hi) = p.root().interval();
    json!({
        "q": p.q().to_string(),
        "interval": [format_rational(lo), format_rational(hi)],
        "coords": p.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn number_json(a: &AlgebraicNumber) -> Value {
    match a.rational_value() {
        Some(c) => json!({"exact": format_rational(&c), "approx": to_f64(&c)}),
        None => serde_json::to_value(AlgebraicNumberDoc::from(a)).expect("plain data"),
    }
}

impl SolveReport {
    pub(crate) fn new(pencil: &SymmetricPencil, objective: &ObjectiveForm) -> Self {
        SolveReport {
            status: SolveStatus::EmptyFeasible,
            m: pencil.m(),
            n: pencil.n(),
            q: Vec::new(),
            strata: Vec::new(),
            candidates: Vec::new(),
            minimizer: None,
            perturbation: None,
            reseeds: 0,
            objective: objective.clone(),
            objective_perturbation: None,
            zero_point: None,
            diagnostics: Vec::new(),
        }
    }

    /// Exact value of the minimum, when a minimizer was certified.
    pub fn optimal_value(&self) -> Option<&AlgebraicNumber> {
        self.minimizer.as_ref().map(|m| &m.value)
    }

    /// Every solved stratum's measured degree is within its bound.
    pub fn bounds_respected(&self) -> bool {
        self.strata.iter().all(StratumSummary::within_bound)
    }

    pub fn to_json(&self, timings: bool) -> Value {
        let minimizer = self.minimizer.as_ref().map(|mz| {
            let coords: Vec<AlgebraicNumber> = (0..mz.point.dim()).map(|i| mz.point.coordinate(i)).collect();
            json!({
                "coordinates": mz.point.approx(1e-12),
                "exact_coordinates": coords.iter().map(number_json).collect::<Vec<_>>(),
                "parametrization": point_json(&mz.point),
                "rank": mz.rank,
                "objective": number_json(&mz.value),
                "stratum": mz.stratum.as_ref().map(|(r, iota, d)| json!({"r": r, "iota": one_based(iota), "degree": d})),
            })
        });
        let strata: Vec<Value> = self
            .strata
            .iter()
            .map(|s| {
                let outcome = match &s.outcome {
                    StratumOutcome::Curve => "curve".to_string(),
                    StratumOutcome::Empty => "empty".to_string(),
                    StratumOutcome::Timeout => "timeout".to_string(),
                    StratumOutcome::Failed(msg) => format!("failed: {msg}"),
                };
                let curve = s.curve.as_ref().map(|c| {
                    json!({
                        "ring": c.ring().names(),
                        "basis": c.basis.polys().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                        "dimension": c.dimension,
                        "param": c.param.as_ref().map(|p| json!({
                            "lambda": rats(p.lambda()),
                            "q": p.q().to_string(),
                            "q0": p.q0().to_string(),
                            "coords": p.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        })),
                        "param_error": c.param_error,
                    })
                });
                let mut v = json!({
                    "r": s.r,
                    "iota": one_based(&s.iota),
                    "outcome": outcome,
                    "curve_degree": s.curve_degree,
                    "theta1": big(&s.theta1),
                    "degree_bound": big(&s.degree_bound),
                    "within_bound": s.within_bound(),
                    "eps_bar": s.eps_bar.as_ref().map(format_rational),
                    "limit_points": s.limit_points,
                    "curve": curve,
                });
                if timings {
                    v["seconds"] = json!(s.seconds);
                }
                v
            })
            .collect();
        let candidates: Vec<Value> = self
            .candidates
            .iter()
            .map(|c| {
                json!({
                    "stratum_rank": c.stratum_rank,
                    "coordinates": c.point.approx(1e-9),
                    "verdict": c.certificate.verdict,
                    "rank": c.certificate.rank,
                    "feasible": c.certificate.is_psd(),
                    "objective": c.value.to_f64(),
                })
            })
            .collect();
        let timeouts = match &self.status {
            SolveStatus::StratumTimeout(list) => {
                list.iter().map(|(r, iota)| json!({"r": r, "iota": one_based(iota)})).collect::<Vec<_>>()
            }
            _ => Vec::new(),
        };
        json!({
            "status": self.status.name(),
            "m": self.m,
            "n": self.n,
            "timeouts": timeouts,
            "objective": rats(self.objective.coeffs()),
            "objective_perturbation": self.objective_perturbation.as_ref().map(|d| rats(d)),
            "perturbation": self.perturbation.as_ref().map(|b| json!({"seed": b.seed, "matrix": matrix_to_doc(&b.matrix)})),
            "reseeds": self.reseeds,
            "zero_point": self.zero_point.as_ref().map(|x| rats(x)),
            "minimizer": minimizer,
            "parametrizations": self.q.iter().map(|(r, q)| json!({"r": r, "param": param_json(q)})).collect::<Vec<_>>(),
            "candidates": candidates,
            "strata": strata,
            "bounds_respected": self.bounds_respected(),
            "diagnostics": self.diagnostics,
        })
    }
}
