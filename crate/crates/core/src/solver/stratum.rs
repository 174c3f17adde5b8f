//! One rank stratum: the homotopy curve in `(ε, x)` and its limits at `ε = 0`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{MPoly, MonomialOrder, Rational, Ring};
use crate::elim::{
    eliminate, one_dim_param, saturate, zero_dim_param, GroebnerBasis, Ideal, OneDimParam, ZeroDimParam,
};
use crate::error::{ElimError, SolveError};
use crate::systems::{critical_ideal, LagrangeSystem};

/// Fallback ladder for the generic fibre `ε = ε̄`.
pub const EPS_LADDER: [(i64, i64); 6] = [(1, 2), (1, 3), (1, 5), (1, 7), (1, 11), (1, 13)];

/// Projection of a stratum's critical curve onto `(ε, x)`.
#[derive(Clone, Debug)]
pub struct StratumCurve {
    pub r: usize,
    pub iota: Vec<usize>,
    /// Grevlex basis of the curve ideal in `Q[ε, x]`, `ε` first.
    pub basis: GroebnerBasis,
    pub dimension: Option<usize>,
    /// Degree of the one-dimensional part; 0 when there is none.
    pub degree: usize,
    /// First rung of the ladder with a finite fibre.
    pub eps_bar: Option<Rational>,
    pub param: Option<OneDimParam>,
    /// Why `param` is absent while the curve is not.
    pub param_error: Option<String>,
}

impl StratumCurve {
    pub fn ring(&self) -> &Ring {
        self.basis.ring()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_unit()
    }
}

#[derive(Clone, Debug)]
pub struct OdpOptions {
    /// Seeds the generic combination of `r × r` minors.
    pub seed: u64,
    pub deadline: Option<Instant>,
    /// Also compute the `(t, u)` parametrization of the curve.
    pub parametrize: bool,
}

impl Default for OdpOptions {
    fn default() -> Self {
        OdpOptions { seed: 0, deadline: None, parametrize: true }
    }
}

fn minor_combination(minors: &[MPoly], ring: &Ring, seed: u64) -> MPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    minors
        .iter()
        .fold(MPoly::zero(ring), |acc, m| &acc + &m.scale(&Rational::from_integer(rng.gen_range(1..=97).into())))
}

fn stratum_seed(seed: u64, r: usize, iota: &[usize]) -> u64 {
    iota.iter().fold(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ r as u64, |h, &i| h.rotate_left(7) ^ (i as u64 + 1))
}

/// The stratum's curve: eliminate `ȳ` and the multipliers, impose rank `≤ r`
/// with the `(r+1)`-minors of `A + εB`, saturate away rank `< r` with a generic
/// combination of the `r × r` minors, and check the fibre over `ε̄` is finite.
pub fn odp(lag: &LagrangeSystem, opts: &OdpOptions) -> Result<StratumCurve, SolveError> {
    let inc = &lag.incidence;
    let (r, m, n) = (inc.r, inc.m, inc.n);
    let projected = eliminate(&critical_ideal(lag), &inc.y_vars, opts.deadline)?;
    let ring = projected.ring().clone();
    let x_vars: Vec<usize> = (1..=n).collect();
    let a = inc.pencil.poly_matrix(&ring, &x_vars, inc.perturbation.as_ref().map(|b| (0, b)));
    let mut gens = projected.polys().to_vec();
    if r + 1 <= m {
        gens.extend(a.minors(r + 1));
    }
    let ideal = Ideal::new(&ring, gens);
    let basis = if r == 0 {
        ideal.groebner(MonomialOrder::GrevLex, opts.deadline)?
    } else {
        let h = minor_combination(&a.minors(r), &ring, stratum_seed(opts.seed, r, &inc.iota));
        saturate(&ideal, &h, opts.deadline)?
    };
    let dimension = basis.dimension();
    let mut curve = StratumCurve {
        r,
        iota: inc.iota.clone(),
        basis,
        dimension,
        degree: 0,
        eps_bar: None,
        param: None,
        param_error: None,
    };
    match dimension {
        None => return Ok(curve),
        Some(d) if d > 1 => {
            return Err(SolveError::GenericityFailure(format!(
                "stratum r={r} iota={:?}: curve ideal has dimension {d}",
                one_based(&inc.iota)
            )))
        }
        _ => {}
    }
    let eps = MPoly::var(&ring, 0);
    for (p, q) in EPS_LADDER {
        let e = Rational::new(p.into(), q.into());
        let fibre = curve.basis.to_ideal().with([&eps - &MPoly::constant(&ring, e.clone())]);
        let gb = fibre.groebner(MonomialOrder::GrevLex, opts.deadline)?;
        if gb.dimension().map_or(true, |d| d == 0) {
            curve.eps_bar = Some(e);
            break;
        }
    }
    if curve.eps_bar.is_none() {
        return Err(SolveError::GenericityFailure(format!(
            "stratum r={r} iota={:?}: every fibre on the epsilon ladder is positive-dimensional",
            one_based(&inc.iota)
        )));
    }
    if dimension == Some(1) {
        curve.degree = curve.basis.curve_degree()?;
        if opts.parametrize {
            match one_dim_param(&curve.basis.to_ideal(), 0, opts.deadline) {
                Ok(p) => curve.param = Some(p),
                Err(ElimError::Timeout) => return Err(SolveError::Timeout),
                Err(e) => curve.param_error = Some(e.to_string()),
            }
        }
    }
    Ok(curve)
}

pub(crate) fn one_based(iota: &[usize]) -> Vec<usize> {
    iota.iter().map(|i| i + 1).collect()
}

/// `(J : ε^∞) + ⟨ε⟩` with `ε` eliminated, in `Q[x]`.
pub fn cut_ideal(curve: &StratumCurve, deadline: Option<Instant>) -> Result<Ideal, SolveError> {
    let ring = curve.ring();
    let x_names: Vec<String> = ring.names()[1..].to_vec();
    let x_ring = Ring::new(&x_names);
    if curve.is_empty() {
        return Ok(Ideal::unit(&x_ring));
    }
    let sat = saturate(&curve.basis.to_ideal(), &MPoly::var(ring, 0), deadline)?;
    if sat.is_unit() {
        return Ok(Ideal::unit(&x_ring));
    }
    // adding ε and eliminating it is setting ε = 0
    let zero = Rational::from_integer(0.into());
    let back: Vec<Option<usize>> = (0..ring.nvars()).map(|i| i.checked_sub(1)).collect();
    let gens = sat
        .polys()
        .iter()
        .map(|p| p.substitute_value(0, &zero).remap(&x_ring, &back).expect("ε substituted"))
        .collect();
    Ok(Ideal::new(&x_ring, gens))
}

/// Limits of the curve's branches at `ε = 0`, as a zero-dimensional parametrization.
pub fn cut(curve: &StratumCurve, deadline: Option<Instant>) -> Result<ZeroDimParam, SolveError> {
    let ideal = cut_ideal(curve, deadline)?;
    match zero_dim_param(&ideal, deadline) {
        Ok(p) => Ok(p),
        Err(ElimError::NotZeroDimensional(d)) => Err(SolveError::GenericityFailure(format!(
            "stratum r={} iota={:?}: limit set has dimension {d}",
            curve.r,
            one_based(&curve.iota)
        ))),
        Err(e) => Err(e.into()),
    }
}

pub fn union(a: &ZeroDimParam, b: &ZeroDimParam, deadline: Option<Instant>) -> Result<ZeroDimParam, SolveError> {
    Ok(a.union(b, deadline)?)
}

/// Dimension of the full Lagrange system at `ε = ε̄`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericityReport {
    pub eps_bar: Rational,
    pub dimension: Option<usize>,
    pub flagged: bool,
}

pub fn genericity_diagnostics(
    lag: &LagrangeSystem,
    eps_bar: &Rational,
    deadline: Option<Instant>,
) -> Result<GenericityReport, SolveError> {
    let ideal = lag.at_eps(eps_bar);
    let e = lag.eps_var();
    let fixed = ideal.with([&MPoly::var(&lag.ring, e) - &MPoly::constant(&lag.ring, eps_bar.clone())]);
    let gb = fixed.groebner(MonomialOrder::GrevLex, deadline)?;
    let dimension = gb.dimension();
    Ok(GenericityReport { eps_bar: eps_bar.clone(), dimension, flagged: dimension.is_some_and(|d| d > 0) })
}
