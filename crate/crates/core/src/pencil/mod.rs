//! SDP instances: symmetric pencils, objectives, perturbations and exact PSD tests.

mod io;

pub use io::{
    instance_to_json, matrix_from_doc, matrix_to_doc, parse_instance, parse_matrix, parse_point, InstanceDoc, MatrixDoc,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use num_traits::Zero;

use crate::algebra::rational::sign;
use crate::algebra::{MPoly, PolyMatrix, RatMatrix, Rational, Ring};
use crate::elim::AlgebraicPoint;
use crate::error::{AlgebraError, InstanceError};

/// `A(x) = A_0 + x_1 A_1 + … + x_n A_n` with rational symmetric `A_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricPencil {
    m: usize,
    matrices: Vec<RatMatrix>,
}

impl SymmetricPencil {
    /// `matrices[0]` is the constant term.
    pub fn new(matrices: Vec<RatMatrix>) -> Result<Self, InstanceError> {
        let Some(first) = matrices.first() else {
            return Err(InstanceError::field("matrices", "at least the constant matrix is required"));
        };
        let m = first.rows;
        if m == 0 {
            return Err(InstanceError::field("matrices", "matrix size must be positive"));
        }
        for (k, a) in matrices.iter().enumerate() {
            if a.rows != m || a.cols != m {
                return Err(InstanceError::field(
                    format!("matrices[{k}]"),
                    format!("expected {m}x{m}, found {}x{}", a.rows, a.cols),
                ));
            }
            if !a.is_symmetric() {
                return Err(InstanceError::field(format!("matrices[{k}]"), "matrix is not symmetric"));
            }
        }
        Ok(SymmetricPencil { m, matrices })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.matrices.len() - 1
    }

    pub fn matrices(&self) -> &[RatMatrix] {
        &self.matrices
    }

    pub fn eval(&self, x: &[Rational]) -> Result<RatMatrix, AlgebraError> {
        if x.len() != self.n() {
            return Err(AlgebraError::Dimension(format!("point has {} coordinates, pencil has {}", x.len(), self.n())));
        }
        let mut acc = self.matrices[0].clone();
        for (xi, a) in x.iter().zip(&self.matrices[1..]) {
            if !xi.is_zero() {
                acc = acc.add(&a.scale(xi));
            }
        }
        Ok(acc)
    }

    /// `A(x) + ε B` as a polynomial matrix; `x_vars[i]` is the ring index of `x_{i+1}`.
    pub fn poly_matrix(&self, ring: &Ring, x_vars: &[usize], eps: Option<(usize, &RatMatrix)>) -> PolyMatrix {
        let m = self.m;
        let mut entries = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                let mut p = MPoly::constant(ring, self.matrices[0].get(i, j).clone());
                for (k, &v) in x_vars.iter().enumerate() {
                    let c = self.matrices[k + 1].get(i, j);
                    if !c.is_zero() {
                        p = &p + &MPoly::var(ring, v).scale(c);
                    }
                }
                if let Some((e, b)) = eps {
                    let c = b.get(i, j);
                    if !c.is_zero() {
                        p = &p + &MPoly::var(ring, e).scale(c);
                    }
                }
                entries.push(p);
            }
        }
        PolyMatrix::new(m, m, entries).expect("square")
    }

    /// The pencil `A + εB` at a fixed rational ε.
    pub fn perturbed(&self, b: &RatMatrix, eps: &Rational) -> SymmetricPencil {
        let mut matrices = self.matrices.clone();
        matrices[0] = matrices[0].add(&b.scale(eps));
        SymmetricPencil { m: self.m, matrices }
    }

    /// The homogeneous part `Σ x_i A_i`.
    pub fn homogeneous(&self) -> SymmetricPencil {
        let mut matrices = self.matrices.clone();
        matrices[0] = RatMatrix::zeros(self.m, self.m);
        SymmetricPencil { m: self.m, matrices }
    }

    /// Substitutes `x = offset + Σ_j y_j directions[j]`, giving a pencil in `y`.
    pub fn affine_substitution(&self, offset: &[Rational], directions: &[Vec<Rational>]) -> SymmetricPencil {
        let mut matrices = vec![self.eval(offset).expect("offset arity")];
        for d in directions {
            let mut acc = RatMatrix::zeros(self.m, self.m);
            for (c, a) in d.iter().zip(&self.matrices[1..]) {
                if !c.is_zero() {
                    acc = acc.add(&a.scale(c));
                }
            }
            matrices.push(acc);
        }
        SymmetricPencil { m: self.m, matrices }
    }

    /// Block-diagonal pencil `diag(self, other)` in the same variables.
    pub fn direct_sum(&self, other: &SymmetricPencil) -> Result<SymmetricPencil, AlgebraError> {
        if self.n() != other.n() {
            return Err(AlgebraError::Dimension("direct sum of pencils in different variables".into()));
        }
        let m = self.m + other.m;
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| {
                let mut c = RatMatrix::zeros(m, m);
                for i in 0..self.m {
                    for j in 0..self.m {
                        c.set(i, j, a.get(i, j).clone());
                    }
                }
                for i in 0..other.m {
                    for j in 0..other.m {
                        c.set(self.m + i, self.m + j, b.get(i, j).clone());
                    }
                }
                c
            })
            .collect();
        Ok(SymmetricPencil { m, matrices })
    }

    /// Congruence `Qᵀ A_i Q` applied to every coefficient matrix.
    pub fn congruent(&self, q: &RatMatrix) -> SymmetricPencil {
        let qt = q.transpose();
        let matrices = self.matrices.iter().map(|a| qt.mul(a).mul(q)).collect();
        SymmetricPencil { m: self.m, matrices }
    }
}

/// `ℓ(x) = ℓ_1 x_1 + … + ℓ_n x_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ObjectiveForm {
    coeffs: Vec<Rational>,
}

impl ObjectiveForm {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        ObjectiveForm { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
    }
}

/// Positive definite perturbation direction `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationMatrix {
    pub matrix: RatMatrix,
    pub seed: Option<u64>,
}

impl PerturbationMatrix {
    /// Wraps an explicit matrix; it must be symmetric positive definite.
    pub fn explicit(matrix: RatMatrix) -> Result<Self, InstanceError> {
        if matrix.rows != matrix.cols || !matrix.is_symmetric() {
            return Err(InstanceError::field("perturbation", "matrix must be square and symmetric"));
        }
        if psd_check_matrix(&matrix).verdict != PsdVerdict::Pd {
            return Err(InstanceError::field("perturbation", "matrix must be positive definite"));
        }
        Ok(PerturbationMatrix { matrix, seed: None })
    }

    /// Trusted matrix for tests that need a degenerate `B`.
    pub fn unchecked(matrix: RatMatrix) -> Self {
        PerturbationMatrix { matrix, seed: None }
    }
}

/// `B = MᵀM + I` with `M` uniform in `[-10, 10]`, deterministic per seed.
pub fn sample_perturbation(m: usize, seed: u64) -> PerturbationMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = RatMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            a.set(i, j, Rational::from_integer(rng.gen_range(-10i64..=10).into()));
        }
    }
    let b = a.transpose().mul(&a).add(&RatMatrix::identity(m));
    PerturbationMatrix { matrix: b, seed: Some(seed) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PsdVerdict {
    #[serde(rename = "PD")]
    Pd,
    #[serde(rename = "PSD_rank_r")]
    PsdRank(usize),
    #[serde(rename = "NOT_PSD")]
    NotPsd,
}

/// `witness[k]` is the sign of `(-1)^(m-k) c_k` where
/// `det(sI - A) = s^m + c_{m-1} s^{m-1} + … + c_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsdCertificate {
    pub verdict: PsdVerdict,
    pub rank: usize,
    pub witness: Vec<i8>,
}

impl PsdCertificate {
    pub fn is_psd(&self) -> bool {
        self.verdict != PsdVerdict::NotPsd
    }

    fn from_signs(m: usize, coeff_signs: &[i8]) -> Self {
        // coeff_signs[k] = sign c_k for k < m
        let witness: Vec<i8> =
            coeff_signs.iter().enumerate().map(|(k, &s)| if (m - k) % 2 == 0 { s } else { -s }).collect();
        let zeros = coeff_signs.iter().take_while(|&&s| s == 0).count();
        let rank = m - zeros;
        let verdict = if witness.iter().any(|&s| s < 0) {
            PsdVerdict::NotPsd
        } else if rank == m {
            PsdVerdict::Pd
        } else {
            PsdVerdict::PsdRank(rank)
        };
        PsdCertificate { verdict, rank, witness }
    }
}

pub fn psd_check_matrix(a: &RatMatrix) -> PsdCertificate {
    let m = a.rows;
    let cp = a.char_poly().expect("square matrix");
    let signs: Vec<i8> = (0..m).map(|k| sign(&cp.coeff(k))).collect();
    PsdCertificate::from_signs(m, &signs)
}

pub fn psd_check(pencil: &SymmetricPencil, x: &[Rational]) -> Result<PsdCertificate, AlgebraError> {
    Ok(psd_check_matrix(&pencil.eval(x)?))
}

/// Exact PSD test at an algebraic point via signs of the characteristic
/// polynomial coefficients, evaluated at the defining root.
pub fn psd_check_algebraic(pencil: &SymmetricPencil, point: &AlgebraicPoint) -> Result<PsdCertificate, AlgebraError> {
    if point.dim() != pencil.n() {
        return Err(AlgebraError::Dimension(format!(
            "point has {} coordinates, pencil has {}",
            point.dim(),
            pencil.n()
        )));
    }
    if let Some(x) = point.as_rational() {
        return psd_check(pencil, &x);
    }
    let m = pencil.m();
    let ring = Ring::new(&["s", "t"]);
    let coords: Vec<MPoly> = point.coords().iter().map(|c| MPoly::from_upoly(&ring, 1, c)).collect();
    let mut entries = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let mut p = MPoly::constant(&ring, -pencil.matrices()[0].get(i, j).clone());
            for (c, a) in coords.iter().zip(&pencil.matrices()[1..]) {
                let v = a.get(i, j);
                if !v.is_zero() {
                    p = &p - &c.scale(v);
                }
            }
            if i == j {
                p = &p + &MPoly::var(&ring, 0);
            }
            entries.push(p);
        }
    }
    let det = PolyMatrix::new(m, m, entries)?.determinant()?;
    let by_s = det.coefficients_in(0);
    let mut signs = Vec::with_capacity(m);
    for k in 0..m {
        let c = by_s.get(k).cloned().unwrap_or_else(|| MPoly::zero(&ring));
        let u = c.to_upoly(1)?;
        signs.push(point.sign_of(&u));
    }
    Ok(PsdCertificate::from_signs(m, &signs))
}

/// A rational `x` with `A(x) = 0`, if one exists.
pub fn detect_zero_point(pencil: &SymmetricPencil) -> Option<Vec<Rational>> {
    let m = pencil.m();
    let n = pencil.n();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..m {
        for j in i..m {
            rows.push((1..=n).map(|k| pencil.matrices()[k].get(i, j).clone()).collect::<Vec<_>>());
            rhs.push(-pencil.matrices()[0].get(i, j).clone());
        }
    }
    if n == 0 {
        return rhs.iter().all(|c| c.is_zero()).then(Vec::new);
    }
    let a = RatMatrix::from_rows(rows).expect("rectangular");
    a.solve(&rhs)
}

/// Identity pencil of size `m` in zero variables.
pub fn identity_pencil(m: usize) -> SymmetricPencil {
    SymmetricPencil { m, matrices: vec![RatMatrix::identity(m)] }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::rational::{rat, rat2};
    use crate::elim::{zero_dim_param, Ideal};
    use proptest::prelude::*;

    pub(crate) fn single_point() -> SymmetricPencil {
        SymmetricPencil::new(vec![
            RatMatrix::from_i64(&[&[1, -1], &[-1, -1]]),
            RatMatrix::from_i64(&[&[-1, 0], &[0, 1]]),
            RatMatrix::from_i64(&[&[0, 1], &[1, 0]]),
        ])
        .unwrap()
    }

    #[test]
    fn psd_examples() {
        let p = single_point();
        let c = psd_check(&p, &[rat(1), rat(1)]).unwrap();
        assert_eq!(c.verdict, PsdVerdict::PsdRank(0));
        assert_eq!(psd_check(&p, &[rat(0), rat(0)]).unwrap().verdict, PsdVerdict::NotPsd);
        assert_eq!(psd_check(&identity_pencil(2), &[]).unwrap().verdict, PsdVerdict::Pd);
        let diag = SymmetricPencil::new(vec![
            RatMatrix::from_i64(&[&[0, 0], &[0, 1]]),
            RatMatrix::from_i64(&[&[1, 0], &[0, -1]]),
        ])
        .unwrap();
        assert_eq!(psd_check(&diag, &[rat(0)]).unwrap().verdict, PsdVerdict::PsdRank(1));
        assert_eq!(psd_check(&diag, &[rat2(1, 2)]).unwrap().verdict, PsdVerdict::Pd);
        assert_eq!(psd_check(&diag, &[rat(2)]).unwrap().verdict, PsdVerdict::NotPsd);
    }

    #[test]
    fn zero_points() {
        assert_eq!(detect_zero_point(&single_point()), Some(vec![rat(1), rat(1)]));
        let diag = SymmetricPencil::new(vec![
            RatMatrix::from_i64(&[&[0, 0], &[0, 1]]),
            RatMatrix::from_i64(&[&[1, 0], &[0, -1]]),
        ])
        .unwrap();
        assert_eq!(detect_zero_point(&diag), None);
        assert_eq!(detect_zero_point(&single_point().homogeneous()), Some(vec![rat(0), rat(0)]));
    }

    #[test]
    fn perturbations_are_pd_and_deterministic() {
        for seed in 0..20 {
            let b = sample_perturbation(3, seed);
            assert_eq!(psd_check_matrix(&b.matrix).verdict, PsdVerdict::Pd);
            assert_eq!(b, sample_perturbation(3, seed));
        }
        assert!(PerturbationMatrix::explicit(RatMatrix::from_i64(&[&[80, -68], &[-68, 109]])).is_ok());
        assert!(PerturbationMatrix::explicit(RatMatrix::from_i64(&[&[1, 2], &[2, 1]])).is_err());
    }

    #[test]
    fn algebraic_psd_matches_rational() {
        // diag(x, 2 - x^2) at x = sqrt 2 is PSD of rank 1; at -sqrt 2 it is not
        let p = SymmetricPencil::new(vec![
            RatMatrix::from_i64(&[&[0, 0], &[0, 2]]),
            RatMatrix::from_i64(&[&[1, 0], &[0, 0]]),
            RatMatrix::from_i64(&[&[0, 0], &[0, -1]]),
        ])
        .unwrap();
        let r = Ring::new(&["x", "y"]);
        let gens =
            vec![crate::algebra::parse_poly(&r, "x^2 - 2").unwrap(), crate::algebra::parse_poly(&r, "y - 2").unwrap()];
        let zp = zero_dim_param(&Ideal::new(&r, gens), None).unwrap();
        let pts = zp.real_points();
        let neg = psd_check_algebraic(&p, &pts[0]).unwrap();
        let pos = psd_check_algebraic(&p, &pts[1]).unwrap();
        assert_eq!(neg.verdict, PsdVerdict::NotPsd);
        assert_eq!(pos.verdict, PsdVerdict::PsdRank(1));
    }

    fn arb_sym(m: usize) -> impl Strategy<Value = RatMatrix> {
        proptest::collection::vec(-6i64..=6, m * (m + 1) / 2).prop_map(move |v| {
            let mut a = RatMatrix::zeros(m, m);
            let mut k = 0;
            for i in 0..m {
                for j in i..m {
                    a.set(i, j, rat(v[k]));
                    a.set(j, i, rat(v[k]));
                    k += 1;
                }
            }
            a
        })
    }

    proptest! {
        #[test]
        fn verdicts_agree_with_eigenvalues(a in arb_sym(3)) {
            let c = psd_check_matrix(&a);
            let eig = nalgebra::SymmetricEigen::new(a.to_f64()).eigenvalues;
            let min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
            if min > 1e-9 {
                prop_assert_eq!(c.verdict, PsdVerdict::Pd);
            } else if min < -1e-9 {
                prop_assert_eq!(c.verdict, PsdVerdict::NotPsd);
            } else {
                prop_assert!(c.verdict != PsdVerdict::Pd);
            }
            prop_assert_eq!(c.rank, a.rank());
        }
    }
}
