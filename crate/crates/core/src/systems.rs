//! Incidence varieties and Lagrange systems of the perturbed pencil, one per
//! rank stratum `(r, ι)`.

use std::fmt::Write as _;
use std::time::Instant;

use crate::algebra::{jacobian, MPoly, RatMatrix, Rational, Ring};
use crate::elim::{eliminate, GroebnerBasis, Ideal};
use crate::error::{ElimError, SolveError};
use crate::pencil::{ObjectiveForm, SymmetricPencil};

/// Name of the perturbation parameter in every system ring.
pub const EPS: &str = "eps";

/// `(A + εB) Y = 0` with `Y_ι = I`, reduced to `c = (m−r)(m+r+1)/2` equations.
#[derive(Clone, Debug)]
pub struct IncidenceSystem {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    /// 0-based, increasing.
    pub iota: Vec<usize>,
    pub ring: Ring,
    pub eps_var: usize,
    pub x_vars: Vec<usize>,
    pub y_vars: Vec<usize>,
    pub polys: Vec<MPoly>,
    pub pencil: SymmetricPencil,
    pub perturbation: Option<RatMatrix>,
}

impl IncidenceSystem {
    pub fn c(&self) -> usize {
        self.polys.len()
    }
}

/// The Lagrange system `(f, Σ z_i ∇f_i − (ℓ, 0))` in `(ε, x, ȳ, z)`.
#[derive(Clone, Debug)]
pub struct LagrangeSystem {
    pub incidence: IncidenceSystem,
    pub ring: Ring,
    pub z_vars: Vec<usize>,
    pub f: Vec<MPoly>,
    pub g: Vec<MPoly>,
    pub objective: ObjectiveForm,
}

impl LagrangeSystem {
    /// Number of unknowns besides ε: `c + n + r(m−r)`.
    pub fn total_vars(&self) -> usize {
        self.ring.nvars() - 1
    }

    pub fn polys(&self) -> Vec<MPoly> {
        self.f.iter().chain(&self.g).cloned().collect()
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.polys())
    }

    pub fn eps_var(&self) -> usize {
        self.incidence.eps_var
    }

    pub fn x_vars(&self) -> &[usize] {
        &self.incidence.x_vars
    }

    /// Projection of the system onto `(ε, x)`.
    pub fn project(&self, deadline: Option<Instant>) -> Result<GroebnerBasis, ElimError> {
        let drop: Vec<usize> = self.incidence.y_vars.iter().chain(&self.z_vars).copied().collect();
        eliminate(&self.ideal(), &drop, deadline)
    }

    /// The system with ε fixed to a rational value (ε stays a ring variable).
    pub fn at_eps(&self, eps: &Rational) -> Ideal {
        let e = self.eps_var();
        Ideal::new(&self.ring, self.polys().iter().map(|p| p.substitute_value(e, eps)).collect())
    }

    /// Text dump: a header naming the stratum, then one polynomial per line.
    pub fn dump(&self) -> String {
        let inc = &self.incidence;
        let mut s = String::new();
        let iota: Vec<String> = inc.iota.iter().map(|i| (i + 1).to_string()).collect();
        writeln!(
            s,
            "# r={} iota={{{}}} c={} N={} vars={}",
            inc.r,
            iota.join(","),
            inc.c(),
            self.total_vars(),
            self.ring.names().join(",")
        )
        .unwrap();
        for p in self.f.iter().chain(&self.g) {
            writeln!(s, "{p}").unwrap();
        }
        s
    }
}

fn y_name(i: usize, j: usize) -> String {
    format!("y{}_{}", i + 1, j + 1)
}

fn check_stratum(m: usize, r: usize, iota: &[usize]) -> Result<(), SolveError> {
    let zero_rank_ok = m == 1 && r == 0;
    if !(zero_rank_ok || (1..m).contains(&r)) {
        return Err(SolveError::Invalid(format!("rank {r} outside 1..{}", m.saturating_sub(1))));
    }
    if iota.len() != m - r || iota.windows(2).any(|w| w[0] >= w[1]) || iota.iter().any(|&i| i >= m) {
        return Err(SolveError::Invalid(format!("index set must be {} increasing rows below {m}", m - r)));
    }
    Ok(())
}

/// All `ι ⊆ {0..m}` with `|ι| = m − r`.
pub fn index_sets(m: usize, r: usize) -> Vec<Vec<usize>> {
    crate::algebra::matrix::combinations(m, m - r)
}

/// Reduced incidence system; `b = None` leaves ε out of the equations.
pub fn build_incidence(
    pencil: &SymmetricPencil,
    b: Option<&RatMatrix>,
    r: usize,
    iota: &[usize],
) -> Result<IncidenceSystem, SolveError> {
    let m = pencil.m();
    let n = pencil.n();
    check_stratum(m, r, iota)?;
    let k = m - r;
    let mut names = vec![EPS.to_string()];
    names.extend((1..=n).map(|i| format!("x{i}")));
    let free_rows: Vec<usize> = (0..m).filter(|i| !iota.contains(i)).collect();
    for &i in &free_rows {
        for j in 0..k {
            names.push(y_name(i, j));
        }
    }
    let ring = Ring::new(&names);
    let x_vars: Vec<usize> = (1..=n).collect();
    let y_vars: Vec<usize> = (n + 1..names.len()).collect();
    let a = pencil.poly_matrix(&ring, &x_vars, b.map(|b| (0, b)));
    // Y with Y_ι = I
    let mut y = vec![vec![MPoly::zero(&ring); k]; m];
    for (pos, &i) in iota.iter().enumerate() {
        y[i][pos] = MPoly::one(&ring);
    }
    let mut v = n + 1;
    for &i in &free_rows {
        for j in 0..k {
            y[i][j] = MPoly::var(&ring, v);
            v += 1;
        }
    }
    let entry = |i: usize, j: usize| -> MPoly {
        let mut acc = MPoly::zero(&ring);
        for (l, yl) in y.iter().enumerate() {
            if !yl[j].is_zero() {
                acc = &acc + &(a.get(i, l) * &yl[j]);
            }
        }
        acc
    };
    // rows outside ι: every column; the p-th row of ι: columns up to p
    let mut polys = Vec::new();
    for i in 0..m {
        match iota.iter().position(|&t| t == i) {
            Some(p) => (0..=p).for_each(|j| polys.push(entry(i, j))),
            None => (0..k).for_each(|j| polys.push(entry(i, j))),
        }
    }
    Ok(IncidenceSystem {
        m,
        n,
        r,
        iota: iota.to_vec(),
        ring,
        eps_var: 0,
        x_vars,
        y_vars,
        polys,
        pencil: pencil.clone(),
        perturbation: b.cloned(),
    })
}

/// The unreduced system `(A + εB) Y = 0`, `Y_ι − I = 0` with every entry of `Y` a variable.
pub fn build_unreduced(
    pencil: &SymmetricPencil,
    b: Option<&RatMatrix>,
    r: usize,
    iota: &[usize],
) -> Result<(Ring, Vec<MPoly>), SolveError> {
    let m = pencil.m();
    let n = pencil.n();
    check_stratum(m, r, iota)?;
    let k = m - r;
    let mut names = vec![EPS.to_string()];
    names.extend((1..=n).map(|i| format!("x{i}")));
    for i in 0..m {
        for j in 0..k {
            names.push(y_name(i, j));
        }
    }
    let ring = Ring::new(&names);
    let x_vars: Vec<usize> = (1..=n).collect();
    let a = pencil.poly_matrix(&ring, &x_vars, b.map(|b| (0, b)));
    let yv = |i: usize, j: usize| MPoly::var(&ring, n + 1 + i * k + j);
    let mut polys = Vec::new();
    for i in 0..m {
        for j in 0..k {
            let mut acc = MPoly::zero(&ring);
            for l in 0..m {
                acc = &acc + &(a.get(i, l) * &yv(l, j));
            }
            polys.push(acc);
        }
    }
    for (p, &i) in iota.iter().enumerate() {
        for j in 0..k {
            let target = if j == p { MPoly::one(&ring) } else { MPoly::zero(&ring) };
            polys.push(&yv(i, j) - &target);
        }
    }
    Ok((ring, polys))
}

pub fn build_lagrange(inc: &IncidenceSystem, objective: &ObjectiveForm) -> Result<LagrangeSystem, SolveError> {
    if objective.len() != inc.n {
        return Err(SolveError::Invalid(format!(
            "objective has {} coefficients, pencil has {} variables",
            objective.len(),
            inc.n
        )));
    }
    let c = inc.c();
    let zs: Vec<String> = (1..=c).map(|i| format!("z{i}")).collect();
    let ring = inc.ring.extended(&zs);
    let base = inc.ring.nvars();
    let z_vars: Vec<usize> = (base..base + c).collect();
    let f: Vec<MPoly> = inc.polys.iter().map(|p| p.to_ring(&ring).unwrap()).collect();
    let grad_vars: Vec<usize> = inc.x_vars.iter().chain(&inc.y_vars).copied().collect();
    let jac = jacobian(&f, &grad_vars);
    let mut g = Vec::with_capacity(grad_vars.len());
    for (col, _) in grad_vars.iter().enumerate() {
        let mut acc = MPoly::zero(&ring);
        for (row, &z) in z_vars.iter().enumerate() {
            let d = jac.get(row, col);
            if !d.is_zero() {
                acc = &acc + &(d * &MPoly::var(&ring, z));
            }
        }
        if col < inc.n {
            acc = &acc - &MPoly::constant(&ring, objective.coeffs()[col].clone());
        }
        g.push(acc);
    }
    Ok(LagrangeSystem { incidence: inc.clone(), ring, z_vars, f, g, objective: objective.clone() })
}

/// `f` plus the `(c+1)`-minors of `[∇f | ℓ]` in `(ε, x, ȳ)`: the Lagrange
/// condition with the multipliers removed by linear algebra. Off the singular
/// locus of the incidence variety it cuts out the projection of the Lagrange
/// system. With fewer unknowns than `c + 1` the gradients already span, and
/// only `f` remains.
pub fn critical_ideal(lag: &LagrangeSystem) -> Ideal {
    let inc = &lag.incidence;
    let ring = &inc.ring;
    let vars: Vec<usize> = inc.x_vars.iter().chain(&inc.y_vars).copied().collect();
    let c = inc.c();
    let mut gens = inc.polys.clone();
    if vars.len() > c {
        let jac = jacobian(&inc.polys, &vars);
        let mut g = crate::algebra::PolyMatrix::zeros(ring, vars.len(), c + 1);
        for i in 0..vars.len() {
            for j in 0..c {
                g.set(i, j, jac.get(j, i).clone());
            }
            if i < inc.n {
                g.set(i, c, MPoly::constant(ring, lag.objective.coeffs()[i].clone()));
            }
        }
        gens.extend(g.minors(c + 1));
    }
    Ideal::new(ring, gens)
}

/// Outcome of a regularity check, with the singular-locus ideal when not regular.
#[derive(Clone, Debug)]
pub enum Regularity {
    Regular,
    Singular(Ideal),
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        matches!(self, Regularity::Regular)
    }
}

/// Singular-locus ideal of `f` at `ε = ε₀`: the equations plus all maximal
/// minors of the Jacobian in `(x, ȳ)`.
pub fn singular_locus(inc: &IncidenceSystem, eps0: &Rational) -> Ideal {
    let f: Vec<MPoly> = inc.polys.iter().map(|p| p.substitute_value(inc.eps_var, eps0)).collect();
    let vars: Vec<usize> = inc.x_vars.iter().chain(&inc.y_vars).copied().collect();
    let jac = jacobian(&f, &vars);
    let c = f.len();
    let mut gens = f.clone();
    if c <= vars.len() {
        for cols in crate::algebra::matrix::combinations(vars.len(), c) {
            let rows: Vec<usize> = (0..c).collect();
            let minor = jac.submatrix(&rows, &cols).determinant().expect("square minor");
            gens.push(minor);
        }
    }
    Ideal::new(&inc.ring, gens)
}

pub fn regularity_check(
    inc: &IncidenceSystem,
    eps0: &Rational,
    deadline: Option<Instant>,
) -> Result<Regularity, ElimError> {
    let ideal = singular_locus(inc, eps0);
    let gb = ideal.groebner(crate::algebra::MonomialOrder::GrevLex, deadline)?;
    Ok(if gb.is_unit() { Regularity::Regular } else { Regularity::Singular(ideal) })
}

/// Univariate polynomial in ε whose roots are exactly the parameter values
/// with a singular fibre. Zero when every fibre is singular.
pub fn singular_parameters(
    inc: &IncidenceSystem,
    deadline: Option<Instant>,
) -> Result<crate::algebra::UPoly, ElimError> {
    let vars: Vec<usize> = inc.x_vars.iter().chain(&inc.y_vars).copied().collect();
    let jac = jacobian(&inc.polys, &vars);
    let c = inc.c();
    let mut gens = inc.polys.clone();
    if c <= vars.len() {
        for cols in crate::algebra::matrix::combinations(vars.len(), c) {
            let rows: Vec<usize> = (0..c).collect();
            gens.push(jac.submatrix(&rows, &cols).determinant()?);
        }
    }
    let gb = eliminate(&Ideal::new(&inc.ring, gens), &vars, deadline)?;
    let mut g = crate::algebra::UPoly::zero();
    for p in gb.polys() {
        g = g.gcd(&p.to_upoly(inc.eps_var)?);
    }
    Ok(if g.is_zero() { g } else { g.squarefree_part().monic() })
}
