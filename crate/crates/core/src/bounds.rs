//! Closed-form degree and complexity bounds per rank stratum.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::BoundsError;

/// `C(n, k)`, zero for `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n as u64 - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of reduced incidence equations, `(m−r)(m+r+1)/2`.
pub fn equation_count(m: usize, r: usize) -> usize {
    (m - r) * (m + r + 1) / 2
}

/// Total unknowns of the Lagrange system besides ε.
pub fn lagrange_size(m: usize, n: usize, r: usize) -> usize {
    equation_count(m, r) + n + r * (m - r)
}

fn check(m: usize, n: usize, r: usize) -> Result<(), BoundsError> {
    if n == 0 {
        return Err(BoundsError::NoVariables);
    }
    if r == 0 || r >= m {
        return Err(BoundsError::Rank { m, r });
    }
    Ok(())
}

fn terms(m: usize, n: usize, r: usize) -> Vec<(i64, BigUint)> {
    let c = equation_count(m, r) as i64;
    let q = (r * (m - r)) as i64;
    let n = n as i64;
    let hi = (n - c + q).min(q);
    (0..=hi).map(|k| (k, binomial(c, n - k) * binomial(n, c + k - q) * binomial(q, k))).collect()
}

/// Multilinear Bézout number of the stratum's Lagrange system.
pub fn theta1(m: usize, n: usize, r: usize) -> Result<BigUint, BoundsError> {
    check(m, n, r)?;
    Ok(terms(m, n, r).into_iter().map(|(_, t)| t).sum())
}

/// `Σ_k a_k` with `b_k / a_k = n / (c + k − r(m−r))`, where `b_k` are the
/// terms of `theta1`; the comparison `θ₁ ≤ nθ` holds termwise.
pub fn theta_sum(m: usize, n: usize, r: usize) -> Result<BigUint, BoundsError> {
    check(m, n, r)?;
    let c = equation_count(m, r) as i64;
    let q = (r * (m - r)) as i64;
    let ni = n as i64;
    let hi = (ni - c + q).min(q);
    Ok((0..=hi).map(|k| binomial(c, ni - k) * binomial(ni - 1, c + k - q - 1) * binomial(q, k)).sum())
}

pub fn curve_degree_bound(m: usize, n: usize, r: usize) -> Result<BigUint, BoundsError> {
    Ok(theta1(m, n, r)? * BigUint::from(1 + 2 * r * (m - r)))
}

/// Degree bound in the regular case: `C(c+n, n)³`, capped by `C(m²+n, n)³`.
pub fn theta_regular(m: usize, n: usize, r: usize) -> Result<BigUint, BoundsError> {
    check(m, n, r)?;
    let c = equation_count(m, r) as i64;
    let own = binomial(c + n as i64, n as i64).pow(3);
    let cap = binomial((m * m + n) as i64, n as i64).pow(3);
    Ok(own.min(cap))
}

/// `n · Σ_r C(m,r) · r(m−r) · N⁴ · θ²`, for audit output only.
pub fn complexity_estimate(m: usize, n: usize) -> Result<BigUint, BoundsError> {
    if n == 0 {
        return Err(BoundsError::NoVariables);
    }
    let mut total = BigUint::zero();
    for r in 1..m {
        let big_n = BigUint::from(lagrange_size(m, n, r));
        let theta = theta_regular(m, n, r)?;
        total += binomial(m as i64, r as i64) * BigUint::from(r * (m - r)) * big_n.pow(4) * &theta * &theta;
    }
    Ok(total * BigUint::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumBounds {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub c: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
    #[serde(serialize_with = "big")]
    pub theta1: BigUint,
    #[serde(serialize_with = "big")]
    pub curve_bound: BigUint,
    #[serde(serialize_with = "big")]
    pub theta_regular: BigUint,
    #[serde(serialize_with = "big")]
    pub comparison_bound: BigUint,
}

fn big<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl StratumBounds {
    pub fn new(m: usize, n: usize, r: usize) -> Result<Self, BoundsError> {
        let theta1 = theta1(m, n, r)?;
        let theta_regular = theta_regular(m, n, r)?;
        let w = BigUint::from(1 + 2 * r * (m - r));
        Ok(StratumBounds {
            m,
            n,
            r,
            c: equation_count(m, r),
            big_n: lagrange_size(m, n, r),
            curve_bound: &theta1 * &w,
            comparison_bound: w * BigUint::from(n) * &theta_regular,
            theta1,
            theta_regular,
        })
    }
}
