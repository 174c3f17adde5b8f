use std::time::Instant;

use crate::algebra::{MPoly, Monomial, MonomialOrder, Ring};
use crate::error::ElimError;

use super::groebner::{groebner_basis, Reducer};

/// Polynomial ideal given by generators.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<MPoly>,
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<MPoly>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring: ring.clone(), gens }
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), gens: vec![MPoly::one(ring)] }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[MPoly] {
        &self.gens
    }

    pub fn with<I: IntoIterator<Item = MPoly>>(&self, extra: I) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(extra.into_iter().filter(|g| !g.is_zero()));
        Ideal { ring: self.ring.clone(), gens }
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn groebner(&self, order: MonomialOrder, deadline: Option<Instant>) -> Result<GroebnerBasis, ElimError> {
        let polys = groebner_basis(&self.ring, &self.gens, order, deadline)?;
        Ok(GroebnerBasis::from_reduced(&self.ring, order, polys))
    }
}

/// Reduced, monic Gröbner basis together with its order.
#[derive(Clone)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    polys: Vec<MPoly>,
    leads: Vec<Monomial>,
}

impl std::fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroebnerBasis").field("order", &self.order).field("polys", &self.polys).finish()
    }
}

impl GroebnerBasis {
    fn from_reduced(ring: &Ring, order: MonomialOrder, polys: Vec<MPoly>) -> Self {
        let leads = polys.iter().map(|p| p.leading_term(order).unwrap().0.clone()).collect();
        GroebnerBasis { ring: ring.clone(), order, polys, leads }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn polys(&self) -> &[MPoly] {
        &self.polys
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.polys.clone())
    }

    pub fn reducer(&self) -> Reducer {
        Reducer::new(&self.polys, self.order)
    }

    pub fn normal_form(&self, p: &MPoly) -> MPoly {
        self.reducer().normal_form(p)
    }

    pub fn contains(&self, p: &MPoly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Krull dimension of the zero set, `None` when it is empty.
    pub fn dimension(&self) -> Option<usize> {
        dimension_of_leads(self.ring.nvars(), &self.leads)
    }

    /// Monomials outside the leading ideal; the ideal must be zero-dimensional.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>, ElimError> {
        let n = self.ring.nvars();
        match self.dimension() {
            None => return Ok(Vec::new()),
            Some(0) => {}
            Some(d) => return Err(ElimError::NotZeroDimensional(d)),
        }
        // a pure power bound for each variable
        let mut bounds = vec![u16::MAX; n];
        for m in &self.leads {
            let sup: Vec<usize> = m.support().collect();
            if sup.len() == 1 {
                bounds[sup[0]] = bounds[sup[0]].min(m.exp(sup[0]));
            }
        }
        let red = self.reducer();
        let mut out = Vec::new();
        let mut cur = Monomial::one(n);
        enumerate_below(&red, &bounds, 0, &mut cur, &mut out);
        out.sort_by(|a, b| self.order.cmp(a, b));
        Ok(out)
    }

    /// Degree of the projective closure, read off the affine Hilbert function.
    pub fn curve_degree(&self) -> Result<usize, ElimError> {
        if !self.order.is_degree_compatible() {
            return Err(ElimError::NotCurve(None));
        }
        match self.dimension() {
            Some(1) => {}
            d => return Err(ElimError::NotCurve(d)),
        }
        let n = self.ring.nvars();
        let lcm = self.leads.iter().fold(Monomial::one(n), |acc, m| acc.lcm(m));
        let s = lcm.degree() as usize + 1;
        Ok(count_standard_of_degree(&self.leads, n, s))
    }
}

fn enumerate_below(red: &Reducer, bounds: &[u16], var: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
    if var == bounds.len() {
        if !red.is_reducible(cur) {
            out.push(cur.clone());
        }
        return;
    }
    let mut e = 0u16;
    while e < bounds[var] {
        cur.set_exp(var, e);
        if red.is_reducible(cur) {
            break;
        }
        enumerate_below(red, bounds, var + 1, cur, out);
        e += 1;
    }
    cur.set_exp(var, 0);
}

fn count_standard_of_degree(leads: &[Monomial], n: usize, s: usize) -> usize {
    fn rec(leads: &[Monomial], var: usize, left: usize, cur: &mut Monomial, n: usize) -> usize {
        if var == n - 1 {
            cur.set_exp(var, left as u16);
            let ok = !leads.iter().any(|m| m.divides(cur));
            cur.set_exp(var, 0);
            return ok as usize;
        }
        let mut total = 0;
        for e in 0..=left {
            cur.set_exp(var, e as u16);
            total += rec(leads, var + 1, left - e, cur, n);
        }
        cur.set_exp(var, 0);
        total
    }
    if n == 0 {
        return 0;
    }
    let mut cur = Monomial::one(n);
    rec(leads, 0, s, &mut cur, n)
}

/// Largest set of variables containing the support of no leading monomial.
fn dimension_of_leads(n: usize, leads: &[Monomial]) -> Option<usize> {
    if leads.iter().any(|m| m.is_one()) {
        return None;
    }
    let supports: Vec<u64> = leads.iter().map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i))).collect();
    let mut best = 0usize;
    fn search(var: usize, n: usize, set: u64, size: usize, supports: &[u64], best: &mut usize) {
        if size + (n - var) <= *best {
            return;
        }
        if var == n {
            *best = size;
            return;
        }
        let with = set | (1 << var);
        if supports.iter().all(|&s| s & !with != 0) {
            search(var + 1, n, with, size + 1, supports, best);
        }
        search(var + 1, n, set, size, supports, best);
    }
    assert!(n <= 64, "dimension check supports at most 64 variables");
    search(0, n, 0, 0, &supports, &mut best);
    Some(best)
}

/// Elimination ideal `I ∩ Q[kept]`, as a grevlex basis in the ring of the kept
/// variables (original relative order).
pub fn eliminate(ideal: &Ideal, drop: &[usize], deadline: Option<Instant>) -> Result<GroebnerBasis, ElimError> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let kept: Vec<usize> = (0..n).filter(|i| !drop.contains(i)).collect();
    let perm: Vec<usize> = drop.iter().copied().chain(kept.iter().copied()).collect();
    let work = Ring::new(&perm.iter().map(|&i| ring.name(i)).collect::<Vec<_>>());
    let mut mapping = vec![None; n];
    for (pos, &i) in perm.iter().enumerate() {
        mapping[i] = Some(pos);
    }
    let gens: Vec<MPoly> = ideal.generators().iter().map(|g| g.remap(&work, &mapping).unwrap()).collect();
    let gb = groebner_basis(&work, &gens, MonomialOrder::Block(drop.len()), deadline)?;
    let target = Ring::new(&kept.iter().map(|&i| ring.name(i)).collect::<Vec<_>>());
    let back: Vec<Option<usize>> = (0..n).map(|pos| pos.checked_sub(drop.len())).collect();
    let polys: Vec<MPoly> = gb.iter().filter_map(|g| g.remap(&target, &back)).collect();
    Ok(GroebnerBasis::from_reduced(&target, MonomialOrder::GrevLex, polys))
}

/// `I : h^∞` through a Rabinowitsch variable.
pub fn saturate(ideal: &Ideal, h: &MPoly, deadline: Option<Instant>) -> Result<GroebnerBasis, ElimError> {
    let ring = ideal.ring();
    let mut names = vec!["_w".to_string()];
    names.extend(ring.names().iter().cloned());
    let work = Ring::new(&names);
    let shift: Vec<Option<usize>> = (1..=ring.nvars()).map(Some).collect();
    let mut gens: Vec<MPoly> = ideal.generators().iter().map(|g| g.remap(&work, &shift).unwrap()).collect();
    let hw = h.remap(&work, &shift).unwrap();
    gens.push(&MPoly::one(&work) - &(&MPoly::var(&work, 0) * &hw));
    let gb = eliminate(&Ideal::new(&work, gens), &[0], deadline)?;
    // same variable names, so re-home into the caller's ring
    let polys = gb.polys().iter().map(|p| p.to_ring(ring).unwrap()).collect();
    Ok(GroebnerBasis::from_reduced(ring, MonomialOrder::GrevLex, polys))
}

/// Multivariate gcd through `lcm(a, b) = (⟨a⟩ ∩ ⟨b⟩)`.
pub fn mpoly_gcd(a: &MPoly, b: &MPoly, deadline: Option<Instant>) -> Result<MPoly, ElimError> {
    let ring = a.ring();
    if a.is_zero() {
        return Ok(b.primitive());
    }
    if b.is_zero() {
        return Ok(a.primitive());
    }
    if a.is_constant() || b.is_constant() {
        return Ok(MPoly::one(ring));
    }
    let mut names = vec!["_s".to_string()];
    names.extend(ring.names().iter().cloned());
    let work = Ring::new(&names);
    let shift: Vec<Option<usize>> = (1..=ring.nvars()).map(Some).collect();
    let s = MPoly::var(&work, 0);
    let aw = a.remap(&work, &shift).unwrap();
    let bw = b.remap(&work, &shift).unwrap();
    let gens = vec![&s * &aw, &(&MPoly::one(&work) - &s) * &bw];
    let gb = eliminate(&Ideal::new(&work, gens), &[0], deadline)?;
    let lcm = gb.polys()[0].to_ring(ring).unwrap();
    let prod = a * b;
    Ok(prod.exact_div(&lcm)?.primitive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn ideal(names: &[&str], gens: &[&str]) -> Ideal {
        let r = Ring::new(names);
        Ideal::new(&r, gens.iter().map(|s| parse_poly(&r, s).unwrap()).collect())
    }

    #[test]
    fn saturation_examples() {
        let i = ideal(&["e", "x"], &["e*x"]);
        let e = parse_poly(i.ring(), "e").unwrap();
        let s = saturate(&i, &e, None).unwrap();
        assert_eq!(s.polys().iter().map(|p| p.to_string()).collect::<Vec<_>>(), vec!["x"]);
        let i = ideal(&["e", "x"], &["e*(x-1)", "e*(x+1)"]);
        assert!(saturate(&i, &e, None).unwrap().is_unit());
    }

    #[test]
    fn saturation_contains_ideal_and_quotients() {
        let i = ideal(&["x", "y"], &["x^2*y", "x*y^2 - x"]);
        let x = parse_poly(i.ring(), "x").unwrap();
        let s = saturate(&i, &x, None).unwrap();
        for g in i.generators() {
            assert!(s.contains(g));
        }
        // x*(y) and x*(y^2-1) lie in I up to powers of x
        assert!(s.contains(&parse_poly(i.ring(), "y").unwrap()));
        assert!(s.is_unit() || s.contains(&parse_poly(i.ring(), "y^2 - 1").unwrap()));
    }

    #[test]
    fn dimensions() {
        let r = ideal(&["x", "y"], &["x - 1", "y - 2"]).groebner(MonomialOrder::GrevLex, None).unwrap();
        assert_eq!(r.dimension(), Some(0));
        let c = ideal(&["x", "y"], &["x^2 + y^2 - 1"]).groebner(MonomialOrder::GrevLex, None).unwrap();
        assert_eq!(c.dimension(), Some(1));
        assert_eq!(c.curve_degree().unwrap(), 2);
        let u = ideal(&["x"], &["x", "x - 1"]).groebner(MonomialOrder::GrevLex, None).unwrap();
        assert_eq!(u.dimension(), None);
        let tw = ideal(&["x", "y", "z"], &["y - x^2", "z - x^3"]).groebner(MonomialOrder::GrevLex, None).unwrap();
        assert_eq!(tw.curve_degree().unwrap(), 3);
    }

    #[test]
    fn standard_monomials_count_points() {
        let gb = ideal(&["x", "y"], &["x^2 - y", "y^2 - x"]).groebner(MonomialOrder::GrevLex, None).unwrap();
        assert_eq!(gb.standard_monomials().unwrap().len(), 4);
    }

    #[test]
    fn elimination_projects() {
        let i = ideal(&["t", "x", "y"], &["x - t^2", "y - t^3"]);
        let gb = eliminate(&i, &[0], None).unwrap();
        assert_eq!(gb.ring().names(), &["x".to_string(), "y".to_string()]);
        assert_eq!(gb.polys().len(), 1);
        assert_eq!(gb.polys()[0].to_string(), "x^3 - y^2");
    }

    #[test]
    fn gcd_via_intersection() {
        let r = Ring::new(&["t", "u"]);
        let a = parse_poly(&r, "(t - u)^2*(t + 1)").unwrap();
        let b = parse_poly(&r, "(t - u)*(u^2 + 3)").unwrap();
        let g = mpoly_gcd(&a, &b, None).unwrap();
        assert_eq!(g, parse_poly(&r, "t - u").unwrap().primitive());
    }
}
