//! Sparse multivariate polynomials with rational coefficients.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::rational::{format_rational, Rational};
use super::upoly::UPoly;
use crate::error::AlgebraError;

/// Ordered list of variable names shared by polynomials.
#[derive(Clone, Debug)]
pub struct Ring {
    names: Arc<Vec<String>>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}
impl Eq for Ring {}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Ring { names: Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect()) }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// A ring with `extra` appended after the current variables.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Ring {
        let mut names: Vec<String> = self.names.to_vec();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Ring { names: Arc::new(names) }
    }

    /// Position map from `self` into `target` by variable name.
    pub fn mapping_into(&self, target: &Ring) -> Vec<Option<usize>> {
        self.names.iter().map(|n| target.index_of(n)).collect()
    }
}

/// Terms are kept sorted by decreasing grevlex order, without zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly {
    ring: Ring,
    terms: Vec<(Monomial, Rational)>,
}

impl MPoly {
    pub fn zero(ring: &Ring) -> Self {
        MPoly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        MPoly { ring: ring.clone(), terms: vec![(Monomial::one(ring.nvars()), c)] }
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        MPoly { ring: ring.clone(), terms: vec![(Monomial::var(ring.nvars(), i, 1), Rational::one())] }
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        if c.is_zero() {
            return Self::zero(ring);
        }
        MPoly { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(ring: &Ring, terms: Vec<(Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| MonomialOrder::GrevLex.cmp(&b.0, &a.0));
        MPoly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    /// Sorted indices of the variables that actually occur.
    pub fn vars_used(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for i in m.support() {
                used[i] = true;
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<&(Monomial, Rational)> {
        match order {
            MonomialOrder::GrevLex => self.terms.first(),
            _ => self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0)),
        }
    }

    fn check_ring(&self, other: &MPoly) -> Result<(), AlgebraError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly, AlgebraError> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly, AlgebraError> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly, AlgebraError> {
        self.check_ring(other)?;
        Ok(self.mul_impl(other))
    }

    fn merge(&self, other: &MPoly, negate: bool) -> MPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match MonomialOrder::GrevLex.cmp(&a[i].0, &b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (m, c) in &b[j..] {
            out.push((m.clone(), if negate { -c } else { c.clone() }));
        }
        MPoly { ring: self.ring.clone(), terms: out }
    }

    fn mul_impl(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero(&self.ring);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| MonomialOrder::GrevLex.cmp(&b.0, &a.0));
        MPoly { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        MPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        MPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_impl(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> MPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) > 0)
            .map(|(m, c)| {
                let e = m.exp(var);
                let mut m2 = m.clone();
                m2.set_exp(var, e - 1);
                (m2, c * Rational::from_integer(BigInt::from(e)))
            })
            .collect();
        MPoly::from_terms(&self.ring, terms)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.nvars(), "point has wrong number of coordinates");
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    v *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            total += v;
        }
        total
    }

    /// Evaluates at a floating-point point.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = super::rational::to_f64(c);
                for (i, &e) in m.exps().iter().enumerate() {
                    if e > 0 {
                        v *= point[i].powi(e as i32);
                    }
                }
                v
            })
            .sum()
    }

    /// Coefficients with respect to `var`: `self = sum_k coeffs[k] * var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MPoly> {
        let d = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            let mut m2 = m.clone();
            m2.set_exp(var, 0);
            buckets[e].push((m2, c.clone()));
        }
        buckets.into_iter().map(|t| MPoly::from_terms(&self.ring, t)).collect()
    }

    /// Replaces `var` by `value`.
    pub fn substitute(&self, var: usize, value: &MPoly) -> MPoly {
        assert!(self.ring == value.ring, "substitution across rings");
        let coeffs = self.coefficients_in(var);
        // Horner in `value`
        let mut acc = MPoly::zero(&self.ring);
        for c in coeffs.iter().rev() {
            acc = acc.mul_impl(value).merge(c, false);
        }
        acc
    }

    pub fn substitute_value(&self, var: usize, value: &Rational) -> MPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e = m.exp(var);
                let mut m2 = m.clone();
                m2.set_exp(var, 0);
                (m2, c * num_traits::pow(value.clone(), e as usize))
            })
            .collect();
        MPoly::from_terms(&self.ring, terms)
    }

    /// Simultaneous substitution of every variable by a polynomial of `target`.
    pub fn compose(&self, target: &Ring, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.ring.nvars());
        let mut acc = MPoly::zero(target);
        let mut cache: HashMap<(usize, u16), MPoly> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    let p = cache.entry((i, e)).or_insert_with(|| images[i].pow(e as u32)).clone();
                    t = t.mul_impl(&p);
                }
            }
            acc = acc.merge(&t, false);
        }
        acc
    }

    /// Moves the polynomial into `target`, following `mapping[old] = new`.
    /// Returns `None` if a variable that occurs is unmapped.
    pub fn remap(&self, target: &Ring, mapping: &[Option<usize>]) -> Option<MPoly> {
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut m2 = Monomial::one(n);
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    let j = mapping[i]?;
                    m2.set_exp(j, m2.exp(j) + e);
                }
            }
            terms.push((m2, c.clone()));
        }
        Some(MPoly::from_terms(target, terms))
    }

    /// Moves the polynomial into `target` by variable name.
    pub fn to_ring(&self, target: &Ring) -> Option<MPoly> {
        if &self.ring == target {
            return Some(self.clone());
        }
        self.remap(target, &self.ring.mapping_into(target))
    }

    /// Integer multiple with content one and positive grevlex-leading coefficient.
    pub fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let (nums, _) = self.integer_coefficients();
        let mut g = BigInt::zero();
        for n in &nums {
            g = g.gcd(n);
        }
        if nums[0].is_negative() {
            g = -g;
        }
        let terms =
            self.terms.iter().zip(nums).map(|((m, _), n)| (m.clone(), Rational::from_integer(n / &g))).collect();
        MPoly { ring: self.ring.clone(), terms }
    }

    /// Coefficients scaled by the lcm of denominators, and that lcm.
    pub fn integer_coefficients(&self) -> (Vec<BigInt>, BigInt) {
        let l = super::rational::denominator_lcm(self.terms.iter().map(|(_, c)| c));
        let nums = self.terms.iter().map(|(_, c)| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        (nums, l)
    }

    pub fn monic(&self, order: MonomialOrder) -> MPoly {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Exact quotient `self / d`, or an error if `d` does not divide `self`.
    pub fn exact_div(&self, d: &MPoly) -> Result<MPoly, AlgebraError> {
        self.check_ring(d)?;
        let (lm, lc) = d.terms.first().ok_or(AlgebraError::InexactDivision)?.clone();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let q = m.checked_div(&lm).ok_or(AlgebraError::InexactDivision)?;
            let qc = &c / &lc;
            rem = rem.merge(&d.mul_monomial(&q, &qc), true);
            quot.push((q, qc));
        }
        Ok(MPoly::from_terms(&self.ring, quot))
    }

    /// Pseudo-remainder of `self` by `d` with respect to `var`.
    pub fn pseudo_rem(&self, d: &MPoly, var: usize) -> MPoly {
        let dd = d.degree_in(var);
        let dcoeffs = d.coefficients_in(var);
        let lc = dcoeffs[dd as usize].clone();
        let mut r = self.clone();
        let xv = MPoly::var(&self.ring, var);
        while !r.is_zero() && r.degree_in(var) >= dd {
            let rd = r.degree_in(var);
            let rlc = r.coefficients_in(var)[rd as usize].clone();
            let shift = xv.pow((rd - dd) as u32);
            r = r.mul_impl(&lc).merge(&rlc.mul_impl(&shift).mul_impl(d), true);
        }
        r
    }

    pub fn to_upoly(&self, var: usize) -> Result<UPoly, AlgebraError> {
        let others: Vec<String> =
            self.vars_used().into_iter().filter(|&i| i != var).map(|i| self.ring.name(i).to_string()).collect();
        if !others.is_empty() {
            return Err(AlgebraError::WrongArity(others));
        }
        let mut coeffs = vec![Rational::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            coeffs[m.exp(var) as usize] = c.clone();
        }
        Ok(UPoly::new(coeffs))
    }

    /// The univariate polynomial in its single variable (or a constant).
    pub fn as_univariate(&self) -> Result<(Option<usize>, UPoly), AlgebraError> {
        let used = self.vars_used();
        match used.as_slice() {
            [] => Ok((None, UPoly::constant(self.constant_term()))),
            [v] => Ok((Some(*v), self.to_upoly(*v)?)),
            _ => Err(AlgebraError::WrongArity(used.iter().map(|&i| self.ring.name(i).to_string()).collect())),
        }
    }

    pub fn from_upoly(ring: &Ring, var: usize, p: &UPoly) -> MPoly {
        let n = ring.nvars();
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (Monomial::var(n, var, k as u16), c.clone()))
            .collect();
        MPoly::from_terms(ring, terms)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(format_rational(&abs));
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.ring.name(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a MPoly> for &'a MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &'a MPoly) -> MPoly {
                self.$checked(rhs).expect("polynomial arithmetic across variable contexts")
            }
        }
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}
