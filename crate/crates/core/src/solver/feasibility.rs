//! Feasibility of a pencil and the cone test at a zero point, both by
//! recursive calls into the solver.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Rational;
use crate::error::SolveError;
use crate::pencil::{detect_zero_point, psd_check, ObjectiveForm, SymmetricPencil};

use super::{degenerate_sdp, SolveConfig, SolveStatus};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeVerdict {
    MinimizerAtVertex,
    UnboundedBelow,
}

/// Verdict of [`feasibility`]. `derived` marks answers that rest on recursive
/// solves rather than a single exact certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct Feasibility {
    pub feasible: bool,
    pub derived: bool,
    pub witness: Option<Vec<Rational>>,
}

fn nested(config: &SolveConfig) -> SolveConfig {
    SolveConfig { recession_check: false, skip_zero_point: false, curve_params: false, ..config.clone() }
}

/// Substitutes `x_k = −(c + Σ_{i≠k} w_i x_i) / w_k`, the hyperplane `w·x + c = 0`.
fn slice(pencil: &SymmetricPencil, w: &[Rational], c: &Rational) -> SymmetricPencil {
    let n = pencil.n();
    let k = w.iter().position(|v| !v.is_zero()).expect("nonzero normal");
    let mut offset = vec![Rational::zero(); n];
    offset[k] = -c / &w[k];
    let directions: Vec<Vec<Rational>> = (0..n)
        .filter(|&i| i != k)
        .map(|i| {
            let mut d = vec![Rational::zero(); n];
            d[i] = Rational::one();
            d[k] = -&w[i] / &w[k];
            d
        })
        .collect();
    pencil.affine_substitution(&offset, &directions)
}

fn generic_direction(n: usize, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_f00d);
    (0..n).map(|_| Rational::from_integer(rng.gen_range(1..=9).into())).collect()
}

/// Is `{x : A(x) ⪰ 0}` nonempty? Minimizes a generic `w` and `−w`; when both
/// report infeasible-or-unbounded, the set (if any) meets `w·x = 0`.
pub fn feasibility(pencil: &SymmetricPencil, config: &SolveConfig) -> Result<Feasibility, SolveError> {
    let n = pencil.n();
    if n == 0 {
        let cert = psd_check(pencil, &[])?;
        return Ok(Feasibility { feasible: cert.is_psd(), derived: false, witness: cert.is_psd().then(Vec::new) });
    }
    if let Some(x) = detect_zero_point(pencil) {
        return Ok(Feasibility { feasible: true, derived: false, witness: Some(x) });
    }
    let cfg = nested(config);
    let mut last_failure = None;
    for attempt in 0..3u64 {
        let w = generic_direction(n, config.seed.wrapping_add(attempt));
        let mut both_empty = true;
        for sign in [1i64, -1] {
            let obj = ObjectiveForm::new(w.iter().map(|v| v * Rational::from_integer(sign.into())).collect());
            let rep = degenerate_sdp(pencil, &obj, &cfg)?;
            match rep.status {
                SolveStatus::Solved | SolveStatus::ZeroPointVertex | SolveStatus::UnboundedBelow => {
                    let witness = rep.minimizer.as_ref().and_then(|m| m.point.as_rational());
                    return Ok(Feasibility { feasible: true, derived: true, witness });
                }
                SolveStatus::EmptyFeasible => {}
                SolveStatus::StratumTimeout(_) => return Err(SolveError::Timeout),
                SolveStatus::GenericityFailure => {
                    both_empty = false;
                    last_failure = Some(rep.diagnostics.join("; "));
                    break;
                }
            }
        }
        if both_empty {
            let sub = feasibility(&slice(pencil, &w, &Rational::zero()), config)?;
            return Ok(Feasibility { derived: true, witness: None, ..sub });
        }
    }
    Err(SolveError::GenericityFailure(last_failure.unwrap_or_default()))
}

/// At a zero point `x*` the feasible set is `x* + {d : Σ d_i A_i ⪰ 0}`; `ℓ` is
/// unbounded below iff that cone meets `ℓ(d) = −1`.
pub fn cone_unboundedness_test(
    pencil: &SymmetricPencil,
    zero_point: &[Rational],
    objective: &ObjectiveForm,
    config: &SolveConfig,
) -> Result<ConeVerdict, SolveError> {
    let at = pencil.eval(zero_point)?;
    if !at.is_zero() {
        return Err(SolveError::Invalid("A(x*) is not the zero matrix".into()));
    }
    if objective.is_zero() {
        return Ok(ConeVerdict::MinimizerAtVertex);
    }
    let cone = pencil.homogeneous();
    let sliced = slice(&cone, objective.coeffs(), &Rational::one());
    Ok(if feasibility(&sliced, config)?.feasible {
        ConeVerdict::UnboundedBelow
    } else {
        ConeVerdict::MinimizerAtVertex
    })
}
