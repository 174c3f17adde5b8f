//! Floating-point cross-check: grid search over a box followed by an
//! ellipsoid-method refinement. Not certified.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use crate::algebra::rational::to_f64;
use crate::error::OracleError;
use crate::pencil::{ObjectiveForm, SymmetricPencil};

/// Eigenvalue threshold for numeric feasibility.
pub const FEASIBILITY_TOL: f64 = 1e-9;
pub const MAX_M: usize = 4;
pub const MAX_N: usize = 3;

const BOXES: [f64; 3] = [1.0, 10.0, 100.0];

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleVerdict {
    Bounded,
    PossiblyUnbounded,
    NoFeasiblePoint,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleEstimate {
    pub verdict: OracleVerdict,
    pub value: Option<f64>,
    pub point: Option<Vec<f64>>,
    /// Half-width of the largest box searched.
    pub box_radius: f64,
}

struct Numeric {
    mats: Vec<DMatrix<f64>>,
    obj: Vec<f64>,
}

impl Numeric {
    fn matrix(&self, x: &[f64]) -> DMatrix<f64> {
        let mut a = self.mats[0].clone();
        for (k, xi) in x.iter().enumerate() {
            a += &self.mats[k + 1] * *xi;
        }
        a
    }

    /// Smallest eigenvalue and a unit eigenvector.
    fn min_eig(&self, x: &[f64]) -> (f64, DVector<f64>) {
        let e = SymmetricEigen::new(self.matrix(x));
        let (i, v) = e
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, v)| (i, *v))
            .unwrap_or((0, 0.0));
        (v, e.eigenvectors.column(i).into_owned())
    }

    fn feasible(&self, x: &[f64]) -> bool {
        self.mats[0].nrows() == 0 || self.min_eig(x).0 >= -FEASIBILITY_TOL
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.obj.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    fn grid_best(&self, radius: f64, per_axis: usize) -> Option<Vec<f64>> {
        let n = self.obj.len();
        let total = per_axis.pow(n as u32);
        let mut best: Option<(f64, Vec<f64>)> = None;
        let mut x = vec![0.0; n];
        for idx in 0..total {
            let mut k = idx;
            for xi in x.iter_mut() {
                *xi = -radius + 2.0 * radius * (k % per_axis) as f64 / (per_axis - 1) as f64;
                k /= per_axis;
            }
            if self.feasible(&x) {
                let v = self.value(&x);
                if best.as_ref().is_none_or(|(b, _)| v < *b) {
                    best = Some((v, x.clone()));
                }
            }
        }
        best.map(|(_, x)| x)
    }

    /// Ellipsoid runs on shrinking boxes around the incumbent.
    fn refine(&self, radius: f64, incumbent: Option<Vec<f64>>) -> Option<Vec<f64>> {
        let n = self.obj.len();
        let mut best = self.ellipsoid(&vec![0.0; n], radius, radius, incumbent);
        let mut r = radius;
        while r > 1e-6 {
            r /= 100.0;
            let Some(center) = best.clone() else { break };
            best = self.ellipsoid(&center, r, radius, best);
        }
        best
    }

    /// Central-cut ellipsoid method on the box of half-width `half` around
    /// `center`, intersected with `[-outer, outer]^n`.
    fn ellipsoid(&self, center: &[f64], half: f64, outer: f64, incumbent: Option<Vec<f64>>) -> Option<Vec<f64>> {
        let n = self.obj.len();
        let mut c = DVector::from_column_slice(center);
        let radius = half;
        let mut p = DMatrix::identity(n, n) * (radius * radius * n as f64);
        let mut best = incumbent.map(|x| (self.value(&x), x));
        let nf = n as f64;
        for _ in 0..(600 * n * n + 400) {
            let x: Vec<f64> = c.iter().copied().collect();
            let outside = (0..n).find(|&k| (x[k] - center[k]).abs() > half || x[k].abs() > outer);
            let g: DVector<f64> = if let Some(k) = outside {
                let mut g = DVector::zeros(n);
                g[k] = if x[k].abs() > outer { x[k].signum() } else { (x[k] - center[k]).signum() };
                g
            } else {
                let (lam, v) = self.min_eig(&x);
                if lam >= -FEASIBILITY_TOL {
                    let val = self.value(&x);
                    if best.as_ref().is_none_or(|(b, _)| val < *b) {
                        best = Some((val, x.clone()));
                    }
                    DVector::from_vec(self.obj.clone())
                } else {
                    // subgradient of -lambda_min(A(x))
                    DVector::from_fn(n, |k, _| -(v.transpose() * &self.mats[k + 1] * &v)[(0, 0)])
                }
            };
            let pg = &p * &g;
            let gpg = g.dot(&pg);
            if !(gpg > 1e-300) {
                break;
            }
            let step = &pg / gpg.sqrt();
            if n == 1 {
                c -= &step / 2.0;
                p /= 4.0;
            } else {
                c -= &step / (nf + 1.0);
                p = (&p - &step * step.transpose() * (2.0 / (nf + 1.0))) * (nf * nf / (nf * nf - 1.0));
                p = (&p + p.transpose()) / 2.0;
            }
            if p.trace() < 1e-24 * radius * radius {
                break;
            }
        }
        best.map(|(_, x)| x)
    }
}

/// Approximate `min ℓ(x)` subject to `A(x) ⪰ 0`.
pub fn estimate(pencil: &SymmetricPencil, objective: &ObjectiveForm) -> Result<OracleEstimate, OracleError> {
    let (m, n) = (pencil.m(), pencil.n());
    if m > MAX_M || n > MAX_N {
        return Err(OracleError::TooLarge { m, n });
    }
    if objective.len() != n {
        return Err(OracleError::Objective { got: objective.len(), expected: n });
    }
    let num = Numeric {
        mats: pencil.matrices().iter().map(|a| a.to_f64()).collect(),
        obj: objective.coeffs().iter().map(to_f64).collect(),
    };
    if n == 0 {
        let ok = num.feasible(&[]);
        return Ok(OracleEstimate {
            verdict: if ok { OracleVerdict::Bounded } else { OracleVerdict::NoFeasiblePoint },
            value: ok.then_some(0.0),
            point: ok.then(Vec::new),
            box_radius: 0.0,
        });
    }
    let per_axis = [0, 81, 41, 21][n];
    let mut results = Vec::new();
    for &radius in &BOXES {
        let grid = num.grid_best(radius, per_axis);
        results.push((radius, num.refine(radius, grid)));
    }
    let last = BOXES[BOXES.len() - 1];
    let Some((_, Some(best))) = results.last().cloned() else {
        return Ok(OracleEstimate {
            verdict: OracleVerdict::NoFeasiblePoint,
            value: None,
            point: None,
            box_radius: last,
        });
    };
    let value = num.value(&best);
    // a minimizer pinned to the outer box, or still improving from the
    // middle box, suggests the infimum escapes to infinity
    let on_boundary = best.iter().any(|v| v.abs() > 0.98 * last);
    let middle = results[results.len() - 2].1.as_ref().map(|x| num.value(x));
    let drifting = middle.is_none_or(|v| v - value > 1e-6 * (1.0 + value.abs()));
    let verdict = if on_boundary || drifting { OracleVerdict::PossiblyUnbounded } else { OracleVerdict::Bounded };
    Ok(OracleEstimate { verdict, value: Some(value), point: Some(best), box_radius: last })
}
