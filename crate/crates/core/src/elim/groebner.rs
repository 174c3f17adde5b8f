//! Buchberger's algorithm over the rationals.
//!
//! Polynomials are handled fraction-free: coefficients are primitive integer
//! vectors and reduction cross-multiplies by leading coefficients. Critical
//! pairs are pruned with the Gebauer–Möller criteria and selected by lowest
//! sugar, ties broken by the smallest lcm.

use std::cmp::Ordering;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{MPoly, Monomial, MonomialOrder, Rational, Ring};
use crate::error::ElimError;

type Term = (Monomial, BigInt);

#[inline]
fn divmask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for (i, &e) in m.exps().iter().enumerate() {
        if e > 0 {
            mask |= 1 << (i % 64);
        }
    }
    mask
}

struct Elem {
    terms: Vec<Term>,
    lm: Monomial,
    mask: u64,
    sugar: u32,
}

impl Elem {
    fn new(terms: Vec<Term>, sugar: u32) -> Self {
        let lm = terms[0].0.clone();
        let mask = divmask(&lm);
        Elem { terms, lm, mask, sugar }
    }
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn content(terms: &[Term]) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in terms {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn make_primitive(terms: &mut [Term]) {
    if terms.is_empty() {
        return;
    }
    let mut g = content(terms);
    if terms[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, c) in terms.iter_mut() {
            *c = &*c / &g;
        }
    }
}

fn to_terms(p: &MPoly, order: MonomialOrder) -> Vec<Term> {
    let (nums, _) = p.integer_coefficients();
    let mut terms: Vec<Term> = p.terms().iter().zip(nums).map(|((m, _), c)| (m.clone(), c)).collect();
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    make_primitive(&mut terms);
    terms
}

/// `a * fa - (b * u) * fb`, both inputs sorted decreasingly.
fn combine(a: &[Term], fa: &BigInt, b: &[Term], u: &Monomial, fb: &BigInt, order: MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bm = b.first().map(|t| t.0.mul(u));
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), &bm) {
            (Some(x), Some(y)) => order.cmp(&x.0, y),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push((a[i].0.clone(), &a[i].1 * fa));
                i += 1;
            }
            Ordering::Less => {
                out.push((bm.take().unwrap(), -(&b[j].1 * fb)));
                j += 1;
                bm = b.get(j).map(|t| t.0.mul(u));
            }
            Ordering::Equal => {
                let v = &a[i].1 * fa - &b[j].1 * fb;
                let m = bm.take().unwrap();
                if !v.is_zero() {
                    out.push((m, v));
                }
                i += 1;
                j += 1;
                bm = b.get(j).map(|t| t.0.mul(u));
            }
        }
    }
    out
}

struct Engine {
    order: MonomialOrder,
    elems: Vec<Elem>,
    active: Vec<usize>,
}

impl Engine {
    fn find_reducer(&self, m: &Monomial, exclude: Option<usize>) -> Option<usize> {
        let mask = divmask(m);
        self.active
            .iter()
            .copied()
            .filter(|&k| Some(k) != exclude)
            .find(|&k| self.elems[k].mask & !mask == 0 && self.elems[k].lm.divides(m))
    }

    /// Full fraction-free reduction of `f` by the active basis.
    fn reduce(&self, f: Vec<Term>, sugar: &mut u32) -> Vec<Term> {
        let mut done: Vec<Term> = Vec::new();
        let mut rest = f;
        let mut pos = 0usize;
        let mut steps = 0usize;
        while pos < rest.len() {
            let Some(k) = self.find_reducer(&rest[pos].0, None) else {
                pos += 1;
                continue;
            };
            // terms before `pos` are irreducible; move them out
            if pos > 0 {
                done.extend(rest.drain(..pos));
                pos = 0;
            }
            let g = &self.elems[k];
            let u = rest[0].0.div(&g.lm);
            let c = &rest[0].1;
            let a = &g.terms[0].1;
            let d = a.gcd(c);
            let fa = a / &d;
            let fc = c / &d;
            *sugar = (*sugar).max(g.sugar + u.degree());
            if !fa.is_one() {
                for (_, x) in done.iter_mut() {
                    *x *= &fa;
                }
            }
            rest = combine(&rest[1..], &fa, &g.terms[1..], &u, &fc, self.order);
            steps += 1;
            if steps % 16 == 0 {
                let g = content(&done).gcd(&content(&rest));
                if !g.is_one() && !g.is_zero() {
                    for (_, x) in done.iter_mut().chain(rest.iter_mut()) {
                        *x = &*x / &g;
                    }
                }
            }
        }
        done.extend(rest);
        make_primitive(&mut done);
        done
    }

    fn spoly(&self, p: &Pair) -> Vec<Term> {
        let (f, g) = (&self.elems[p.i], &self.elems[p.j]);
        let uf = p.lcm.div(&f.lm);
        let ug = p.lcm.div(&g.lm);
        let (a, b) = (&f.terms[0].1, &g.terms[0].1);
        let d = a.gcd(b);
        let left: Vec<Term> = f.terms[1..].iter().map(|(m, c)| (m.mul(&uf), c * (b / &d))).collect();
        combine(&left, &BigInt::one(), &g.terms[1..], &ug, &(a / &d), self.order)
    }

    fn pair(&self, g: usize, h: usize) -> Pair {
        let (eg, eh) = (&self.elems[g], &self.elems[h]);
        let lcm = eg.lm.lcm(&eh.lm);
        let d = lcm.degree();
        let sugar = (eg.sugar + d - eg.lm.degree()).max(eh.sugar + d - eh.lm.degree());
        Pair { i: g, j: h, lcm, sugar }
    }

    /// Gebauer–Möller update after adding element `h`.
    fn update(&mut self, pairs: &mut Vec<Pair>, h: usize) {
        let hlm = self.elems[h].lm.clone();
        let mut cands: Vec<(Pair, bool)> =
            self.active.iter().map(|&g| (self.pair(g, h), self.elems[g].lm.coprime(&hlm))).collect();
        // drop pairs whose lcm is a multiple of another candidate's lcm
        let mut kept: Vec<(Pair, bool)> = Vec::new();
        while let Some((p, coprime)) = cands.pop() {
            let divides = |q: &(Pair, bool)| q.0.lcm.divides(&p.lcm);
            if coprime || (!cands.iter().any(divides) && !kept.iter().any(divides)) {
                kept.push((p, coprime));
            }
        }
        let fresh = kept.into_iter().filter(|(_, coprime)| !coprime).map(|(p, _)| p);
        let elems = &self.elems;
        pairs.retain(|p| {
            let li = elems[p.i].lm.lcm(&hlm);
            let lj = elems[p.j].lm.lcm(&hlm);
            !(hlm.divides(&p.lcm) && li != p.lcm && lj != p.lcm)
        });
        pairs.extend(fresh);
        self.active.retain(|&g| !hlm.divides(&elems[g].lm));
        self.active.push(h);
    }

    fn insert(&mut self, pairs: &mut Vec<Pair>, f: Vec<Term>, mut sugar: u32) -> bool {
        let h = self.reduce(f, &mut sugar);
        if h.is_empty() {
            return false;
        }
        let unit = h[0].0.is_one();
        self.elems.push(Elem::new(h, sugar));
        let idx = self.elems.len() - 1;
        self.update(pairs, idx);
        unit
    }
}

/// Reduced Gröbner basis of `generators` in `ring`, monic, sorted by
/// increasing leading monomial. `[1]` for the unit ideal, empty for zero.
pub fn groebner_basis(
    ring: &Ring,
    generators: &[MPoly],
    order: MonomialOrder,
    deadline: Option<Instant>,
) -> Result<Vec<MPoly>, ElimError> {
    let mut eng = Engine { order, elems: Vec::new(), active: Vec::new() };
    let mut pairs: Vec<Pair> = Vec::new();
    let mut inputs: Vec<Vec<Term>> = generators.iter().filter(|p| !p.is_zero()).map(|p| to_terms(p, order)).collect();
    inputs.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    for f in inputs {
        let s = f.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        if eng.insert(&mut pairs, f, s) {
            return Ok(vec![MPoly::one(ring)]);
        }
    }
    let mut count = 0usize;
    while !pairs.is_empty() {
        count += 1;
        if let Some(d) = deadline {
            if count % 4 == 0 && Instant::now() > d {
                return Err(ElimError::Timeout);
            }
        }
        let best = (0..pairs.len())
            .min_by(|&a, &b| pairs[a].sugar.cmp(&pairs[b].sugar).then_with(|| order.cmp(&pairs[a].lcm, &pairs[b].lcm)))
            .unwrap();
        let p = pairs.swap_remove(best);
        let s = eng.spoly(&p);
        if !s.is_empty() && eng.insert(&mut pairs, s, p.sugar) {
            return Ok(vec![MPoly::one(ring)]);
        }
    }
    let mut minimal = eng.active.clone();
    minimal.sort_by(|&a, &b| order.cmp(&eng.elems[a].lm, &eng.elems[b].lm));
    Ok(minimal.into_iter().map(|k| exact_interreduce(ring, &eng, k)).collect())
}

/// Monic element `k` with its tail reduced exactly over the rationals.
fn exact_interreduce(ring: &Ring, eng: &Engine, k: usize) -> MPoly {
    let e = &eng.elems[k];
    let lc = Rational::from_integer(e.terms[0].1.clone());
    let mut rest: Vec<(Monomial, Rational)> =
        e.terms[1..].iter().map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()) / &lc)).collect();
    let mut done: Vec<(Monomial, Rational)> = vec![(e.lm.clone(), Rational::one())];
    let mut pos = 0;
    while pos < rest.len() {
        match eng.find_reducer(&rest[pos].0, Some(k)) {
            None => pos += 1,
            Some(g) => {
                done.extend(rest.drain(..pos));
                pos = 0;
                let ge = &eng.elems[g];
                let u = rest[0].0.div(&ge.lm);
                let f = &rest[0].1 / Rational::from_integer(ge.terms[0].1.clone());
                let sub: Vec<(Monomial, Rational)> =
                    ge.terms[1..].iter().map(|(t, c)| (t.mul(&u), Rational::from_integer(c.clone()) * &f)).collect();
                rest = merge_sub(&rest[1..], &sub, eng.order);
            }
        }
    }
    done.extend(rest);
    MPoly::from_terms(ring, done)
}

fn merge_sub(
    a: &[(Monomial, Rational)],
    b: &[(Monomial, Rational)],
    order: MonomialOrder,
) -> Vec<(Monomial, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0.clone(), -b[j].1.clone()));
                j += 1;
            }
            Ordering::Equal => {
                let v = &a[i].1 - &b[j].1;
                if !v.is_zero() {
                    out.push((a[i].0.clone(), v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Exact normal forms modulo a fixed basis.
pub struct Reducer {
    order: MonomialOrder,
    leads: Vec<(Monomial, u64, Vec<(Monomial, Rational)>)>,
}

impl Reducer {
    pub fn new(basis: &[MPoly], order: MonomialOrder) -> Self {
        let leads = basis
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| {
                let mut ts = g.terms().to_vec();
                ts.sort_by(|a, b| order.cmp(&b.0, &a.0));
                let lm = ts[0].0.clone();
                let inv = ts[0].1.recip();
                let tail = ts[1..].iter().map(|(m, c)| (m.clone(), c * &inv)).collect();
                let mask = divmask(&lm);
                (lm, mask, tail)
            })
            .collect();
        Reducer { order, leads }
    }

    pub fn is_reducible(&self, m: &Monomial) -> bool {
        let mask = divmask(m);
        self.leads.iter().any(|(lm, mk, _)| mk & !mask == 0 && lm.divides(m))
    }

    pub fn normal_form(&self, p: &MPoly) -> MPoly {
        let mut rest = p.terms().to_vec();
        rest.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        let mut done = Vec::new();
        let mut pos = 0;
        while pos < rest.len() {
            let m = &rest[pos].0;
            let mask = divmask(m);
            match self.leads.iter().find(|(lm, mk, _)| mk & !mask == 0 && lm.divides(m)) {
                None => pos += 1,
                Some((lm, _, tail)) => {
                    done.extend(rest.drain(..pos));
                    pos = 0;
                    let u = rest[0].0.div(lm);
                    let c = rest[0].1.clone();
                    let sub: Vec<(Monomial, Rational)> = tail.iter().map(|(t, a)| (t.mul(&u), a * &c)).collect();
                    rest = merge_sub(&rest[1..], &sub, self.order);
                }
            }
        }
        done.extend(rest);
        MPoly::from_terms(p.ring(), done)
    }
}


#[cfg(test)]
mod lagrange_tests {
    use super::*;
    use crate::algebra::parse_poly;

    #[test]
    fn perturbed_quadric_elimination() {
        let r = Ring::new(&["z1", "z2", "y", "e", "x1", "x2"]);
        let gens: Vec<MPoly> = [
            "(1 - x1 + 80*e) + (x2 - 1 - 68*e)*y",
            "(x2 - 1 - 68*e) + (x1 - 1 + 109*e)*y",
            "-z1 + z2*y - 88",
            "z1*y + z2 + 94",
            "z1*(x2 - 1 - 68*e) + z2*(x1 - 1 + 109*e)",
        ]
        .iter()
        .map(|s| parse_poly(&r, s).unwrap())
        .collect();
        let b = groebner_basis(&r, &gens, MonomialOrder::Lex, None).unwrap();
        let q =
            parse_poly(&r, "2241769*x1^2 + 115046296*x1*x2 + 65669911*x2^2 - 119529834*x1 - 246386118*x2 + 182957976")
                .unwrap();
        let lin = parse_poly(&r, "4621*e - 94*x1 - 88*x2 + 182").unwrap();
        assert_eq!(b[0], q.monic(MonomialOrder::Lex));
        assert_eq!(b[1], lin.monic(MonomialOrder::Lex));
    }
}
