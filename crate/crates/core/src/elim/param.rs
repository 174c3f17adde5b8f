//! Rational parametrizations of finite sets and of plane-projected curves.

use std::collections::HashMap;
use std::time::Instant;

use num_traits::{One, Zero};

use crate::algebra::rational::rat2;
use crate::algebra::{MPoly, Monomial, MonomialOrder, Rational, Ring, UPoly};
use crate::error::ElimError;

use super::ideal::{mpoly_gcd, GroebnerBasis, Ideal};
use super::roots::AlgebraicNumber;
use super::Reducer;

const MAX_FORMS: usize = 48;

/// Deterministic candidates for a separating linear form.
pub fn separating_forms(n: usize) -> impl Iterator<Item = Vec<Rational>> {
    let int = |v: i64| Rational::from_integer(v.into());
    let mut fixed: Vec<Vec<Rational>> = Vec::new();
    for i in 0..n {
        let mut e = vec![int(0); n];
        e[i] = int(1);
        fixed.push(e);
    }
    fixed.push(vec![int(1); n]);
    fixed.push((1..=n as i64).map(int).collect());
    fixed.push((0..n as i64).map(|i| if i % 2 == 0 { int(i / 2 + 1) } else { int(-(i / 2 + 1)) }).collect());
    let powers = (2i64..).map(move |k| (0..n as u32).map(|e| int(k.pow(e))).collect::<Vec<_>>());
    let mut seen: Vec<Vec<Rational>> = Vec::new();
    fixed.into_iter().chain(powers).filter(move |v| {
        if seen.contains(v) {
            false
        } else {
            seen.push(v.clone());
            true
        }
    })
}

/// Incremental detection of the first linear dependence in a sequence of vectors.
pub(crate) struct LinearSpan {
    rows: Vec<(usize, Vec<Rational>, Vec<Rational>)>,
    count: usize,
}

impl LinearSpan {
    pub(crate) fn new() -> Self {
        LinearSpan { rows: Vec::new(), count: 0 }
    }

    pub(crate) fn len(&self) -> usize {
        self.count
    }

    /// Adds `v`; if it depends on the earlier vectors returns `c` with
    /// `Σ c_j v_j = 0` and `c_last = 1`.
    pub(crate) fn push(&mut self, mut v: Vec<Rational>) -> Option<Vec<Rational>> {
        let k = self.count;
        let mut combo = vec![Rational::zero(); k + 1];
        combo[k] = Rational::one();
        for (pivot, row, rc) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = &v[*pivot] / &row[*pivot];
            for (a, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
            for (a, b) in combo.iter_mut().zip(rc) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        self.count += 1;
        match v.iter().position(|c| !c.is_zero()) {
            None => Some(combo),
            Some(p) => {
                self.rows.push((p, v, combo));
                None
            }
        }
    }
}

/// Quotient-ring linear algebra over the standard monomials of a zero-dimensional basis.
struct Quotient {
    reducer: Reducer,
    index: HashMap<Monomial, usize>,
    dim: usize,
}

impl Quotient {
    fn new(gb: &GroebnerBasis) -> Result<Self, ElimError> {
        let std = gb.standard_monomials()?;
        let index = std.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(Quotient { reducer: gb.reducer(), index, dim: std.len() })
    }

    fn vector(&self, nf: &MPoly) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// Minimal polynomial of multiplication by `p`.
    fn minimal_polynomial(&self, p: &MPoly) -> UPoly {
        let mut span = LinearSpan::new();
        let mut cur = self.reducer.normal_form(&MPoly::one(p.ring()));
        loop {
            if let Some(c) = span.push(self.vector(&cur)) {
                return UPoly::new(c);
            }
            cur = self.reducer.normal_form(&(&cur * p));
        }
    }
}

/// Finite set given as `x_i = q_i(t)/q_0(t)` over the roots of a squarefree `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroDimParam {
    names: Vec<String>,
    lambda: Vec<Rational>,
    q: UPoly,
    q0: UPoly,
    coords: Vec<UPoly>,
}

impl ZeroDimParam {
    /// The parametrization `(1)` of the empty set.
    pub fn empty(names: &[String]) -> Self {
        let n = names.len();
        let mut lambda = vec![Rational::zero(); n];
        if n > 0 {
            lambda[0] = Rational::one();
        }
        ZeroDimParam {
            names: names.to_vec(),
            lambda,
            q: UPoly::one(),
            q0: UPoly::one(),
            coords: vec![UPoly::zero(); n],
        }
    }

    pub fn from_parts(
        names: &[String],
        lambda: Vec<Rational>,
        q: UPoly,
        q0: UPoly,
        coords: Vec<UPoly>,
    ) -> Result<Self, ElimError> {
        use crate::error::AlgebraError;
        if lambda.len() != names.len() || coords.len() != names.len() {
            return Err(AlgebraError::Dimension("parametrization arity".into()).into());
        }
        if q.is_zero() || !q.is_squarefree() || !q0.gcd(&q).is_constant() {
            return Err(AlgebraError::Dimension("q must be squarefree and coprime to q0".into()).into());
        }
        Ok(ZeroDimParam { names: names.to_vec(), lambda, q: q.monic(), q0, coords })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lambda(&self) -> &[Rational] {
        &self.lambda
    }

    pub fn q(&self) -> &UPoly {
        &self.q
    }

    pub fn q0(&self) -> &UPoly {
        &self.q0
    }

    pub fn coords(&self) -> &[UPoly] {
        &self.coords
    }

    pub fn is_empty(&self) -> bool {
        self.q.degree() == 0
    }

    /// Number of (complex) points.
    pub fn degree(&self) -> usize {
        self.q.degree()
    }

    /// Numerator of `p(q_1/q_0, …)` reduced modulo `q`; `p` is read by variable name.
    pub fn substitute(&self, p: &MPoly) -> UPoly {
        let ring = p.ring();
        let map: Vec<Option<usize>> = ring.names().iter().map(|n| self.names.iter().position(|m| m == n)).collect();
        let d = p.total_degree();
        let mut q0_pows = vec![UPoly::one()];
        for k in 1..=d as usize {
            q0_pows.push(q0_pows[k - 1].mul(&self.q0).rem(&self.q));
        }
        let mut acc = UPoly::zero();
        for (m, c) in p.terms() {
            let mut t = UPoly::constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    let j = map[i].expect("variable outside the parametrization");
                    for _ in 0..e {
                        t = t.mul(&self.coords[j]).rem(&self.q);
                    }
                }
            }
            t = t.mul(&q0_pows[(d - m.degree()) as usize]).rem(&self.q);
            acc = acc.add(&t);
        }
        acc.rem(&self.q)
    }

    /// Exact residual check against source generators.
    pub fn residual_vanishes(&self, generators: &[MPoly]) -> bool {
        self.is_empty() || generators.iter().all(|g| self.substitute(g).is_zero())
    }

    /// Coordinates with a common denominator inverted modulo `q`.
    fn normalized_coords(&self) -> Vec<UPoly> {
        if self.q0 == UPoly::one() || self.is_empty() {
            return self.coords.clone();
        }
        let inv = self.q0.inverse_mod(&self.q).expect("q0 is invertible modulo q");
        self.coords.iter().map(|c| c.mul(&inv).rem(&self.q)).collect()
    }

    /// Radical ideal of the points, in `ring` (must contain the coordinate names).
    pub fn to_ideal(&self, ring: &Ring) -> Ideal {
        if self.is_empty() {
            return Ideal::unit(ring);
        }
        let xs: Vec<MPoly> =
            self.names.iter().map(|n| MPoly::var(ring, ring.index_of(n).expect("name in ring"))).collect();
        let t = xs.iter().zip(&self.lambda).fold(MPoly::zero(ring), |acc, (x, l)| &acc + &x.scale(l));
        let lift = |u: &UPoly| {
            let mut acc = MPoly::zero(ring);
            let mut pw = MPoly::one(ring);
            for c in u.coeffs() {
                acc = &acc + &pw.scale(c);
                pw = &pw * &t;
            }
            acc
        };
        let mut gens = vec![lift(&self.q)];
        for (x, v) in xs.iter().zip(self.normalized_coords()) {
            gens.push(x - &lift(&v));
        }
        Ideal::new(ring, gens)
    }

    /// Whether the rational point lies in the set.
    pub fn contains_point(&self, x: &[Rational]) -> bool {
        if self.is_empty() || x.len() != self.names.len() {
            return false;
        }
        let t: Rational = x.iter().zip(&self.lambda).map(|(a, b)| a * b).sum();
        if !self.q.eval(&t).is_zero() {
            return false;
        }
        let d = self.q0.eval(&t);
        !d.is_zero() && self.coords.iter().zip(x).all(|(c, xi)| c.eval(&t) == xi * &d)
    }

    /// Real points, in increasing order of the parameter.
    pub fn real_points(&self) -> Vec<AlgebraicPoint> {
        if self.is_empty() {
            return Vec::new();
        }
        let coords = self.normalized_coords();
        AlgebraicNumber::roots_of(&self.q)
            .into_iter()
            .map(|root| AlgebraicPoint { q: self.q.clone(), coords: coords.clone(), root })
            .collect()
    }

    /// Set union under the first separating form that separates both sets and
    /// agrees on shared points; coordinates are glued by Chinese remaindering.
    pub fn union(&self, other: &ZeroDimParam, deadline: Option<Instant>) -> Result<ZeroDimParam, ElimError> {
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() || self == other {
            return Ok(self.clone());
        }
        if self.names != other.names {
            return Err(crate::error::AlgebraError::ContextMismatch.into());
        }
        for lambda in separating_forms(self.names.len()).take(MAX_FORMS) {
            if deadline.is_some_and(|d| Instant::now() > d) {
                return Err(ElimError::Timeout);
            }
            let (Some((ma, pa)), Some((mb, pb))) = (self.in_form(&lambda), other.in_form(&lambda)) else {
                continue;
            };
            let g = ma.gcd(&mb);
            if g.degree() > 0 && !pa.iter().zip(&pb).all(|(a, b)| a.sub(b).rem(&g).is_zero()) {
                continue;
            }
            let rest = mb.div_rem(&g).0;
            if rest.degree() == 0 {
                return Ok(ZeroDimParam { names: self.names.clone(), lambda, q: ma, q0: UPoly::one(), coords: pa });
            }
            let inv = ma.inverse_mod(&rest).expect("coprime after removing the gcd");
            let q = ma.mul(&rest).monic();
            let coords =
                pa.iter().zip(&pb).map(|(a, b)| a.add(&ma.mul(&b.sub(a).mul(&inv).rem(&rest))).rem(&q)).collect();
            return Ok(ZeroDimParam { names: self.names.clone(), lambda, q, q0: UPoly::one(), coords });
        }
        Err(ElimError::NoSeparatingForm(MAX_FORMS))
    }

    /// Monic minimal polynomial of `s = λ·x` over the points and each
    /// coordinate as a polynomial in `s`; `None` unless `λ` separates.
    fn in_form(&self, lambda: &[Rational]) -> Option<(UPoly, Vec<UPoly>)> {
        use crate::algebra::RatMatrix;
        let coords = self.normalized_coords();
        let d = self.q.degree();
        let h = coords.iter().zip(lambda).fold(UPoly::zero(), |acc, (c, l)| acc.add(&c.scale(l))).rem(&self.q);
        let mu = minimal_polynomial_mod(&h, &self.q);
        if mu.degree() != d {
            return None;
        }
        let mut powers = Vec::with_capacity(d);
        let mut pw = UPoly::one();
        for _ in 0..d {
            powers.push(pw.clone());
            pw = pw.mul(&h).rem(&self.q);
        }
        let mut basis = RatMatrix::zeros(d, d);
        for (k, p) in powers.iter().enumerate() {
            for i in 0..d {
                basis.set(i, k, p.coeff(i));
            }
        }
        let mut out = Vec::with_capacity(coords.len());
        for c in &coords {
            let rhs: Vec<Rational> = (0..d).map(|i| c.coeff(i)).collect();
            out.push(UPoly::new(basis.solve(&rhs)?));
        }
        Some((mu.monic(), out))
    }
}

/// A real point of a zero-dimensional parametrization: `x_i = v_i(α)` for a
/// root α of `q`.
#[derive(Clone, Debug)]
pub struct AlgebraicPoint {
    q: UPoly,
    coords: Vec<UPoly>,
    root: AlgebraicNumber,
}

impl AlgebraicPoint {
    pub fn rational(x: &[Rational]) -> Self {
        AlgebraicPoint {
            q: UPoly::x(),
            coords: x.iter().map(|c| UPoly::constant(c.clone())).collect(),
            root: AlgebraicNumber::rational(Rational::zero()),
        }
    }

    /// Point with `x_i = coords[i](α)`, `α` a root of `q`.
    pub fn new(q: UPoly, coords: Vec<UPoly>, root: AlgebraicNumber) -> Self {
        let q = q.squarefree_part();
        let coords = coords.iter().map(|c| c.rem(&q)).collect();
        AlgebraicPoint { q, coords, root }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn q(&self) -> &UPoly {
        &self.q
    }

    pub fn coords(&self) -> &[UPoly] {
        &self.coords
    }

    pub fn root(&self) -> &AlgebraicNumber {
        &self.root
    }

    /// Exact coordinates when every one is rational.
    pub fn as_rational(&self) -> Option<Vec<Rational>> {
        if let Some(a) = self.root.as_rational() {
            return Some(self.coords.iter().map(|c| c.eval(a)).collect());
        }
        if self.coords.iter().all(|c| c.degree() == 0) {
            return Some(self.coords.iter().map(|c| c.coeff(0)).collect());
        }
        (0..self.dim()).map(|i| self.coordinate(i).rational_value()).collect()
    }

    /// `p(x(t))` modulo `q`, with the variables of `p` read as the coordinates in order.
    pub fn eval_poly(&self, p: &MPoly) -> UPoly {
        assert_eq!(p.ring().nvars(), self.dim(), "polynomial arity");
        let mut acc = UPoly::zero();
        for (m, c) in p.terms() {
            let mut t = UPoly::constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&self.coords[i]).rem(&self.q);
                }
            }
            acc = acc.add(&t);
        }
        acc.rem(&self.q)
    }

    /// Whether `p` vanishes at the point.
    pub fn vanishes(&self, p: &MPoly) -> bool {
        self.sign_of(&self.eval_poly(p)) == 0
    }

    /// Coordinate `i` as an algebraic number.
    pub fn coordinate(&self, i: usize) -> AlgebraicNumber {
        let mut w = vec![Rational::zero(); self.dim()];
        w[i] = Rational::one();
        self.linear_value(&w)
    }

    /// Exact lexicographic comparison of coordinates.
    pub fn cmp_lex(&self, other: &AlgebraicPoint) -> std::cmp::Ordering {
        for i in 0..self.dim().min(other.dim()) {
            let o = crate::elim::compare(&self.coordinate(i), &other.coordinate(i));
            if o != std::cmp::Ordering::Equal {
                return o;
            }
        }
        self.dim().cmp(&other.dim())
    }

    /// Sign of `p(x(α))` for a polynomial given through its `t`-form.
    pub fn sign_of(&self, p: &UPoly) -> i8 {
        self.root.sign_of(&p.rem(&self.q))
    }

    /// `Σ w_i x_i` as a polynomial in `t` modulo `q`.
    pub fn linear_form(&self, w: &[Rational]) -> UPoly {
        self.coords.iter().zip(w).fold(UPoly::zero(), |acc, (c, wi)| acc.add(&c.scale(wi))).rem(&self.q)
    }

    /// Value of `Σ w_i x_i` as an algebraic number.
    pub fn linear_value(&self, w: &[Rational]) -> AlgebraicNumber {
        let h = self.linear_form(w);
        if let Some(a) = self.root.as_rational() {
            return AlgebraicNumber::rational(h.eval(a));
        }
        if h.degree() == 0 {
            return AlgebraicNumber::rational(h.coeff(0));
        }
        value_of(&self.q, &h, &self.root)
    }

    /// Approximate coordinates, each within `tol`.
    pub fn approx(&self, tol: f64) -> Vec<f64> {
        let tol_q = crate::algebra::rational::from_f64(tol).unwrap_or_else(Rational::one);
        let mut root = self.root.clone();
        loop {
            let encl: Vec<(Rational, Rational)> = self.coords.iter().map(|c| root.enclose(c)).collect();
            if root.as_rational().is_some() || encl.iter().all(|(a, b)| b - a <= tol_q) {
                return encl
                    .iter()
                    .map(|(a, b)| crate::algebra::rational::to_f64(&((a + b) / Rational::from_integer(2.into()))))
                    .collect();
            }
            root.refine();
        }
    }

    /// Refines the root until the coordinate enclosures are narrower than `width`.
    pub fn coordinate_enclosures(&self, width: &Rational) -> Vec<(Rational, Rational)> {
        let mut root = self.root.clone();
        loop {
            let encl: Vec<(Rational, Rational)> = self.coords.iter().map(|c| root.enclose(c)).collect();
            if root.as_rational().is_some() || encl.iter().all(|(a, b)| &(b - a) <= width) {
                return encl;
            }
            root.refine();
        }
    }
}

/// Minimal polynomial of `h` in `Q[t]/q` by dependence of its powers.
pub fn minimal_polynomial_mod(h: &UPoly, q: &UPoly) -> UPoly {
    let d = q.degree();
    let vec_of = |p: &UPoly| {
        let mut v = p.coeffs().to_vec();
        v.resize(d, Rational::zero());
        v
    };
    let mut span = LinearSpan::new();
    let mut cur = UPoly::one().rem(q);
    loop {
        if let Some(c) = span.push(vec_of(&cur)) {
            return UPoly::new(c);
        }
        cur = cur.mul(h).rem(q);
    }
}

/// The algebraic number `h(α)` for a root α of `q`.
fn value_of(q: &UPoly, h: &UPoly, alpha: &AlgebraicNumber) -> AlgebraicNumber {
    let p = minimal_polynomial_mod(h, q).squarefree_part();
    let mut roots = AlgebraicNumber::roots_of(&p);
    let mut a = alpha.clone();
    loop {
        if let Some(c) = a.as_rational() {
            return AlgebraicNumber::rational(h.eval(c));
        }
        let (lo, hi) = a.enclose(h);
        let hits: Vec<usize> = (0..roots.len())
            .filter(|&k| {
                let (rl, rh) = roots[k].interval();
                rl <= &hi && &lo <= rh
            })
            .collect();
        if hits.len() == 1 {
            return roots.swap_remove(hits[0]);
        }
        a.refine();
        for k in hits {
            roots[k].refine();
        }
    }
}

/// Shape-lemma parametrization of a zero-dimensional ideal (radical taken).
pub fn zero_dim_param(ideal: &Ideal, deadline: Option<Instant>) -> Result<ZeroDimParam, ElimError> {
    let ring = ideal.ring().clone();
    let n = ring.nvars();
    let mut gb = ideal.groebner(MonomialOrder::GrevLex, deadline)?;
    if gb.is_unit() {
        return Ok(ZeroDimParam::empty(ring.names()));
    }
    match gb.dimension() {
        Some(0) => {}
        None => return Ok(ZeroDimParam::empty(ring.names())),
        Some(d) => return Err(ElimError::NotZeroDimensional(d)),
    }
    // Seidenberg: adjoining squarefree univariate eliminants gives the radical
    let quotient = Quotient::new(&gb)?;
    let mut extra = Vec::new();
    for i in 0..n {
        let mp = quotient.minimal_polynomial(&MPoly::var(&ring, i));
        if !mp.is_squarefree() {
            extra.push(MPoly::from_upoly(&ring, i, &mp.squarefree_part()));
        }
    }
    if !extra.is_empty() {
        gb = gb.to_ideal().with(extra).groebner(MonomialOrder::GrevLex, deadline)?;
    }
    let quotient = Quotient::new(&gb)?;
    let d = quotient.dim;
    let xs: Vec<MPoly> = (0..n).map(|i| MPoly::var(&ring, i)).collect();
    for (attempt, lambda) in separating_forms(n).enumerate() {
        if attempt >= MAX_FORMS {
            break;
        }
        if let Some(dl) = deadline {
            if Instant::now() > dl {
                return Err(ElimError::Timeout);
            }
        }
        let t = xs.iter().zip(&lambda).fold(MPoly::zero(&ring), |acc, (x, l)| &acc + &x.scale(l));
        let mut span = LinearSpan::new();
        let mut cur = quotient.reducer.normal_form(&MPoly::one(&ring));
        let mut q = None;
        while span.len() <= d {
            if let Some(c) = span.push(quotient.vector(&cur)) {
                if c.len() == d + 1 {
                    q = Some(UPoly::new(c));
                }
                break;
            }
            cur = quotient.reducer.normal_form(&(&cur * &t));
        }
        let Some(q) = q else { continue };
        // the powers 1, t, …, t^(d-1) form a basis; express each coordinate
        let mut powers = LinearSpan::new();
        let mut cur = quotient.reducer.normal_form(&MPoly::one(&ring));
        for _ in 0..d {
            powers.push(quotient.vector(&cur));
            cur = quotient.reducer.normal_form(&(&cur * &t));
        }
        let mut coords = Vec::with_capacity(n);
        for x in &xs {
            let mut s = LinearSpan { rows: powers.rows.clone(), count: powers.count };
            let c = s.push(quotient.vector(&quotient.reducer.normal_form(x))).expect("powers span the quotient");
            coords.push(UPoly::new(c[..d].iter().map(|v| -v).collect()));
        }
        return Ok(ZeroDimParam { names: ring.names().to_vec(), lambda, q: q.monic(), q0: UPoly::one(), coords });
    }
    Err(ElimError::NoSeparatingForm(MAX_FORMS))
}

/// Curve projected to `(ε, x)`, parametrized as `x_i = q_i(t,u)/q_0(t,u)`,
/// `q(t,u) = 0`, with `u = ε` and `t = λ·x`.
#[derive(Clone, Debug)]
pub struct OneDimParam {
    names: Vec<String>,
    lambda: Vec<Rational>,
    q: MPoly,
    q0: MPoly,
    coords: Vec<MPoly>,
    basis: GroebnerBasis,
}

impl OneDimParam {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lambda(&self) -> &[Rational] {
        &self.lambda
    }

    pub fn q(&self) -> &MPoly {
        &self.q
    }

    pub fn q0(&self) -> &MPoly {
        &self.q0
    }

    pub fn coords(&self) -> &[MPoly] {
        &self.coords
    }

    /// The lex basis of the curve ideal extended by `t − λ·x`.
    pub fn basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_constant()
    }

    /// Numerator of `p(u, q_1/q_0, …)`, pseudo-reduced by `q` in `t`.
    /// `p` lives in a ring whose variable `u_name` plays the role of `u`.
    /// Residual check at the single specialization `u = u0`, working modulo
    /// `q(t, u0)`. A necessary condition for [`Self::residual_vanishes`];
    /// `None` when `u0` is a bad specialization.
    pub fn residual_vanishes_at(&self, generators: &[MPoly], u_name: &str, u0: &Rational) -> Option<bool> {
        if self.is_empty() {
            return Some(true);
        }
        let at_u0 = |p: &MPoly| p.substitute_value(1, u0).to_upoly(0).expect("polynomial in t");
        let qq = at_u0(&self.q);
        if qq.degree() as u16 != self.q.degree_in(0) || !qq.is_squarefree() {
            return None;
        }
        let q0 = at_u0(&self.q0).rem(&qq);
        if !q0.gcd(&qq).is_constant() {
            return None;
        }
        let coords: Vec<UPoly> = self.coords.iter().map(|c| at_u0(c).rem(&qq)).collect();
        Some(generators.iter().all(|g| {
            let images: Vec<UPoly> = g
                .ring()
                .names()
                .iter()
                .map(|n| {
                    if n == u_name {
                        q0.scale(u0)
                    } else {
                        let j = self.names.iter().position(|m| m == n).expect("variable outside the parametrization");
                        coords[j].clone()
                    }
                })
                .collect();
            let d = g.total_degree() as usize;
            let mut q0_pows = vec![UPoly::one()];
            for k in 1..=d {
                q0_pows.push(q0_pows[k - 1].mul(&q0).rem(&qq));
            }
            let mut acc = UPoly::zero();
            for (m, c) in g.terms() {
                let mut t = q0_pows[d - m.degree() as usize].scale(c);
                for (i, &e) in m.exps().iter().enumerate() {
                    for _ in 0..e {
                        t = t.mul(&images[i]).rem(&qq);
                    }
                }
                acc = acc.add(&t);
            }
            acc.rem(&qq).is_zero()
        }))
    }

    /// Pseudo-remainder by `q` of the homogenized substitution of `p`.
    pub fn substitute(&self, p: &MPoly, u_name: &str) -> MPoly {
        self.numerator(p, u_name).pseudo_rem(&self.q, 0)
    }

    fn numerator(&self, p: &MPoly, u_name: &str) -> MPoly {
        let tu = self.q.ring().clone();
        let u = MPoly::var(&tu, 1);
        let d = p.total_degree();
        let images: Vec<MPoly> = p
            .ring()
            .names()
            .iter()
            .map(|n| {
                if n == u_name {
                    &u * &self.q0
                } else {
                    let j = self.names.iter().position(|m| m == n).expect("variable outside the parametrization");
                    self.coords[j].clone()
                }
            })
            .collect();
        let mut q0_pows = vec![MPoly::one(&tu)];
        for k in 1..=d as usize {
            let next = &q0_pows[k - 1] * &self.q0;
            q0_pows.push(next);
        }
        let mut acc = MPoly::zero(&tu);
        for (m, c) in p.terms() {
            let mut t = q0_pows[(d - m.degree()) as usize].scale(c);
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t = &t * &images[i];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Exact check that every generator vanishes on the parametrization.
    ///
    /// `q` is primitive and squarefree in `t`, so a numerator vanishes modulo
    /// `q` over `Q(u)` iff `q` divides it in `Q[t, u]`.
    pub fn residual_vanishes(&self, generators: &[MPoly], u_name: &str) -> bool {
        self.is_empty()
            || generators.iter().all(|g| {
                let n = self.numerator(g, u_name);
                n.is_zero() || n.exact_div(&self.q).is_ok()
            })
    }
}

/// Rescale a denominator and its numerators by one rational so that all
/// coefficients are integers with joint content one.
fn common_integer_scale(q0: MPoly, coords: Vec<MPoly>) -> (MPoly, Vec<MPoly>) {
    use num_integer::Integer;
    let all = || std::iter::once(&q0).chain(coords.iter()).flat_map(|p| p.terms().iter().map(|(_, c)| c));
    let l = crate::algebra::rational::denominator_lcm(all());
    let mut g = num_bigint::BigInt::zero();
    for c in all() {
        g = g.gcd(&(c * Rational::from_integer(l.clone())).to_integer());
    }
    if g.is_zero() {
        return (q0, coords);
    }
    let s = Rational::new(l, g);
    (q0.scale(&s), coords.iter().map(|c| c.scale(&s)).collect())
}

fn content_in(p: &MPoly, var: usize, deadline: Option<Instant>) -> Result<MPoly, ElimError> {
    let mut g = MPoly::zero(p.ring());
    for c in p.coefficients_in(var) {
        if !c.is_zero() {
            g = mpoly_gcd(&g, &c, deadline)?;
            if g.is_constant() {
                break;
            }
        }
    }
    Ok(g)
}

fn lcm(a: &MPoly, b: &MPoly, deadline: Option<Instant>) -> Result<MPoly, ElimError> {
    let g = mpoly_gcd(a, b, deadline)?;
    Ok((a * b).exact_div(&g)?)
}

/// One-dimensional parametrization of a curve ideal in the variables `(u, x)`,
/// where `u` is the variable at index `u_var`.
pub fn one_dim_param(curve: &Ideal, u_var: usize, deadline: Option<Instant>) -> Result<OneDimParam, ElimError> {
    let ring = curve.ring();
    let names: Vec<String> =
        ring.names().iter().enumerate().filter(|(i, _)| *i != u_var).map(|(_, n)| n.clone()).collect();
    let n = names.len();
    let u_name = ring.name(u_var).to_string();
    // lex ring x_1 > … > x_n > t > u
    let mut work_names = names.clone();
    work_names.push("_t".into());
    work_names.push(u_name.clone());
    let work = Ring::new(&work_names);
    let (ti, ui) = (n, n + 1);
    let gens: Vec<MPoly> = curve.generators().iter().map(|g| g.to_ring(&work).unwrap()).collect();
    let tu = Ring::new(&["t", "u"]);
    let to_tu = |p: &MPoly| -> MPoly {
        let mut map = vec![None; n + 2];
        map[ti] = Some(0);
        map[ui] = Some(1);
        p.remap(&tu, &map).expect("polynomial in (t, u)")
    };
    let dim = curve.groebner(MonomialOrder::GrevLex, deadline)?.dimension();
    match dim {
        None => {
            let basis = Ideal::unit(&work).groebner(MonomialOrder::Lex, deadline)?;
            let one = MPoly::one(&tu);
            let lambda = separating_forms(n).next().unwrap();
            return Ok(OneDimParam {
                names,
                lambda,
                q: one.clone(),
                q0: one,
                coords: vec![MPoly::zero(&tu); n],
                basis,
            });
        }
        Some(1) => {}
        d => return Err(ElimError::NotCurve(d)),
    }
    for (attempt, lambda) in separating_forms(n).enumerate() {
        if attempt >= MAX_FORMS {
            break;
        }
        let mut t = MPoly::var(&work, ti);
        for (i, l) in lambda.iter().enumerate() {
            t = &t - &MPoly::var(&work, i).scale(l);
        }
        let mut g = gens.clone();
        g.push(t);
        let gb = Ideal::new(&work, g).groebner(MonomialOrder::Lex, deadline)?;
        let x_free = |p: &MPoly| p.vars_used().iter().all(|&v| v >= n);
        let elim: Vec<MPoly> = gb.polys().iter().filter(|p| x_free(p)).map(&to_tu).collect();
        let mut q = MPoly::zero(&tu);
        for e in &elim {
            q = mpoly_gcd(&q, e, deadline)?;
        }
        if q.is_zero() || q.degree_in(0) == 0 {
            continue;
        }
        let cont = content_in(&q, 0, deadline)?;
        if !cont.is_constant() {
            q = q.exact_div(&cont)?;
        }
        let dq = q.derivative(0);
        let sq = mpoly_gcd(&q, &dq, deadline)?;
        if !sq.is_constant() {
            q = q.exact_div(&sq)?;
        }
        q = q.primitive();
        // coordinate relations a_i x_i - b_i with a_i, b_i in Q[t, u]
        let mut rel: Vec<Option<(MPoly, MPoly)>> = vec![None; n];
        for p in gb.polys() {
            let xs: Vec<usize> = p.vars_used().into_iter().filter(|&v| v < n).collect();
            if xs.len() == 1 && p.degree_in(xs[0]) == 1 && rel[xs[0]].is_none() {
                let c = p.coefficients_in(xs[0]);
                rel[xs[0]] = Some((to_tu(&c[1]), -to_tu(&c[0])));
            }
        }
        if rel.iter().any(|r| r.is_none()) {
            continue;
        }
        let rel: Vec<(MPoly, MPoly)> = rel.into_iter().map(|r| r.unwrap()).collect();
        let mut q0 = MPoly::one(&tu);
        for (a, _) in &rel {
            q0 = lcm(&q0, a, deadline)?;
        }
        // coprime iff the common zero set is finite
        let common = Ideal::new(&tu, vec![q0.clone(), q.clone()]).groebner(MonomialOrder::GrevLex, deadline)?;
        if matches!(common.dimension(), Some(d) if d > 0) {
            continue;
        }
        let mut coords = Vec::with_capacity(n);
        for (a, b) in &rel {
            coords.push(&q0.exact_div(a)? * b);
        }
        let (q0, coords) = common_integer_scale(q0, coords);
        let param = OneDimParam { names: names.clone(), lambda, q, q0, coords, basis: gb };
        // exact verification is available through `residual_vanishes`; a few
        // specializations are enough to reject a bad separating form
        let checks: Vec<Option<bool>> = [rat2(7, 3), rat2(-5, 11), rat2(13, 2)]
            .iter()
            .map(|u0| param.residual_vanishes_at(curve.generators(), &u_name, u0))
            .collect();
        if checks.iter().all(|c| *c != Some(false)) && checks.iter().any(|c| c.is_some()) {
            return Ok(param);
        }
    }
    Err(ElimError::NoSeparatingForm(MAX_FORMS))
}
