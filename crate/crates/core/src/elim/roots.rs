//! Real roots of univariate polynomials and exact algebraic numbers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{format_rational, parse_rational, to_f64};
use crate::algebra::upoly::sturm_count;
use crate::algebra::{Rational, UPoly};
use crate::error::ParseError;

/// Sign variations of `p` on the open interval `(a, b)`: an upper bound on
/// the root count with the same parity.
fn descartes(p: &UPoly, a: &Rational, b: &Rational) -> usize {
    let q = p.taylor_shift(a).scale_arg(&(b - a));
    let d = q.degree();
    // x^d q(1/x), padded so a vanishing constant term keeps the degree
    let mut c = q.coeffs().to_vec();
    c.resize(d + 1, Rational::zero());
    c.reverse();
    UPoly::new(c).taylor_shift(&Rational::one()).sign_variations()
}

fn power_of_two_at_least(x: &Rational) -> Rational {
    let mut r = Rational::one();
    while &r < x {
        r *= Rational::from_integer(BigInt::from(2));
    }
    r
}

/// Disjoint isolating intervals, increasing. An interval `(c, c)` marks an
/// exact rational root; otherwise the root lies strictly inside and the
/// endpoints are not roots.
pub fn isolate_real_roots(p: &UPoly) -> Vec<(Rational, Rational)> {
    let p = p.squarefree_part();
    if p.degree() == 0 {
        return Vec::new();
    }
    let r = power_of_two_at_least(&p.root_bound());
    let two = Rational::from_integer(BigInt::from(2));
    let mut stack = vec![(-r.clone(), r)];
    let mut out = Vec::new();
    while let Some((a, b)) = stack.pop() {
        match descartes(&p, &a, &b) {
            0 => continue,
            1 => {
                out.push((a, b));
                continue;
            }
            _ => {}
        }
        let c = (&a + &b) / &two;
        if p.eval(&c).is_zero() {
            let mut delta = (&b - &a) / Rational::from_integer(BigInt::from(4));
            loop {
                let (lo, hi) = (&c - &delta, &c + &delta);
                if !p.eval(&lo).is_zero() && !p.eval(&hi).is_zero() && descartes(&p, &lo, &hi) == 1 {
                    stack.push((a, lo));
                    stack.push((hi, b));
                    break;
                }
                delta /= &two;
            }
            out.push((c.clone(), c));
        } else {
            stack.push((a, c.clone()));
            stack.push((c, b));
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// A real root of a squarefree polynomial, pinned by an isolating interval.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicNumber {
    poly: UPoly,
    lo: Rational,
    hi: Rational,
}

impl AlgebraicNumber {
    pub fn rational(c: Rational) -> Self {
        AlgebraicNumber { poly: UPoly::new(vec![-c.clone(), Rational::one()]), lo: c.clone(), hi: c }
    }

    /// Builds from trusted isolation data (`poly` squarefree, one root in the interval).
    pub fn from_isolation(poly: UPoly, lo: Rational, hi: Rational) -> Self {
        if lo == hi {
            return Self::rational(lo);
        }
        AlgebraicNumber { poly, lo, hi }
    }

    /// Checks the isolation data before building.
    pub fn new(poly: &UPoly, lo: Rational, hi: Rational) -> Option<Self> {
        let poly = poly.squarefree_part();
        if lo > hi || poly.degree() == 0 {
            return None;
        }
        if lo == hi {
            return poly.eval(&lo).is_zero().then(|| Self::rational(lo));
        }
        let (sl, sh) = (poly.sign_at(&lo), poly.sign_at(&hi));
        if sl == 0 || sh == 0 || sl == sh || sturm_count(&poly, &lo, &hi) != 1 {
            return None;
        }
        Some(AlgebraicNumber { poly, lo, hi })
    }

    /// All real roots of `p`, increasing.
    pub fn roots_of(p: &UPoly) -> Vec<AlgebraicNumber> {
        let sq = p.squarefree_part();
        isolate_real_roots(&sq).into_iter().map(|(lo, hi)| Self::from_isolation(sq.clone(), lo, hi)).collect()
    }

    pub fn poly(&self) -> &UPoly {
        &self.poly
    }

    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    /// The number itself when it is rational.
    ///
    /// A rational root `u/v` of an integer polynomial has `v` dividing the
    /// leading coefficient `a`, so on an interval narrower than `1/(4a)` the
    /// only candidate is the midpoint rounded to a multiple of `1/a`.
    pub fn rational_value(&self) -> Option<Rational> {
        if let Some(c) = self.as_rational() {
            return Some(c.clone());
        }
        let l = crate::algebra::rational::denominator_lcm(self.poly.coeffs());
        let lead = (self.poly.lc() * Rational::from_integer(l)).to_integer().abs();
        let mut a = self.clone();
        a.refine_to(&Rational::new(BigInt::one(), BigInt::from(4) * &lead));
        if let Some(c) = a.as_rational() {
            return Some(c.clone());
        }
        let mid = (&a.lo + &a.hi) / Rational::from_integer(BigInt::from(2));
        let c = Rational::new((mid * Rational::from_integer(lead.clone())).round().to_integer(), lead);
        (c >= a.lo && c <= a.hi && self.poly.eval(&c).is_zero()).then_some(c)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Halves the interval.
    pub fn refine(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let c = (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2));
        let s = self.poly.sign_at(&c);
        if s == 0 {
            *self = Self::rational(c);
        } else if s == self.poly.sign_at(&self.lo) {
            self.lo = c;
        } else {
            self.hi = c;
        }
    }

    pub fn refine_to(&mut self, width: &Rational) {
        while &self.width() > width {
            self.refine();
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut a = self.clone();
        let scale = to_f64(&a.hi.abs().max(a.lo.abs())).max(1.0);
        let eps =
            Rational::new(BigInt::one(), BigInt::one() << 60usize) * crate::algebra::rational::from_f64(scale).unwrap();
        a.refine_to(&eps);
        to_f64(&((&a.lo + &a.hi) / Rational::from_integer(BigInt::from(2))))
    }

    /// Exact sign of `p` at this number.
    pub fn sign_of(&self, p: &UPoly) -> i8 {
        if p.is_zero() {
            return 0;
        }
        if let Some(c) = self.as_rational() {
            return p.sign_at(c);
        }
        let g = p.gcd(&self.poly);
        if g.degree() > 0 && g.sign_at(&self.lo) != g.sign_at(&self.hi) {
            return 0;
        }
        let mut a = self.clone();
        loop {
            if let Some(c) = a.as_rational() {
                return p.sign_at(c);
            }
            let s = p.sign_at(&a.lo);
            if s != 0 && descartes(p, &a.lo, &a.hi) == 0 {
                return s;
            }
            a.refine();
        }
    }

    /// Rigorous enclosure of `p(α)` on the current interval.
    pub fn enclose(&self, p: &UPoly) -> (Rational, Rational) {
        p.eval_interval(&self.lo, &self.hi)
    }

    fn display_poly(&self) -> String {
        self.poly.display_in("t")
    }
}

/// Exact sign of `p` at `alpha`.
pub fn sign_at(p: &UPoly, alpha: &AlgebraicNumber) -> i8 {
    alpha.sign_of(p)
}

impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(compare(self, other))
    }
}

/// Total order on real algebraic numbers.
pub fn compare(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Ordering {
    let (mut a, mut b) = (a.clone(), b.clone());
    if let Some(c) = a.as_rational().cloned() {
        return compare_with_rational(&mut b, &c).reverse();
    }
    if let Some(c) = b.as_rational().cloned() {
        return compare_with_rational(&mut a, &c);
    }
    let g = a.poly.gcd(&b.poly);
    let common = g.degree() > 0 && a.sign_of(&g) == 0 && b.sign_of(&g) == 0;
    loop {
        if let (Some(x), Some(y)) = (a.as_rational(), b.as_rational()) {
            return x.cmp(y);
        }
        if let Some(c) = a.as_rational().cloned() {
            return compare_with_rational(&mut b, &c).reverse();
        }
        if let Some(c) = b.as_rational().cloned() {
            return compare_with_rational(&mut a, &c);
        }
        if a.hi <= b.lo {
            return Ordering::Less;
        }
        if b.hi <= a.lo {
            return Ordering::Greater;
        }
        if common {
            let lo = a.lo.clone().min(b.lo.clone());
            let hi = a.hi.clone().max(b.hi.clone());
            if sturm_count(&g, &lo, &hi) == 1 {
                return Ordering::Equal;
            }
        }
        a.refine();
        b.refine();
    }
}

fn compare_with_rational(a: &mut AlgebraicNumber, c: &Rational) -> Ordering {
    loop {
        if let Some(x) = a.as_rational() {
            return x.cmp(c);
        }
        if &a.hi <= c {
            return Ordering::Less;
        }
        if &a.lo >= c {
            return Ordering::Greater;
        }
        if a.poly.eval(c).is_zero() {
            return Ordering::Equal;
        }
        a.refine();
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(c) => write!(f, "{}", format_rational(c)),
            None => write!(
                f,
                "root of {} in [{}, {}] (~{:.12})",
                self.display_poly(),
                format_rational(&self.lo),
                format_rational(&self.hi),
                self.to_f64()
            ),
        }
    }
}

/// JSON form: polynomial in `t` and the isolating interval as rational strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraicNumberDoc {
    pub poly: String,
    pub interval: [String; 2],
    #[serde(default)]
    pub approx: f64,
}

impl From<&AlgebraicNumber> for AlgebraicNumberDoc {
    fn from(a: &AlgebraicNumber) -> Self {
        AlgebraicNumberDoc {
            poly: a.display_poly(),
            interval: [format_rational(&a.lo), format_rational(&a.hi)],
            approx: a.to_f64(),
        }
    }
}

impl AlgebraicNumberDoc {
    pub fn parse(&self) -> Result<Option<AlgebraicNumber>, ParseError> {
        let ring = crate::algebra::Ring::new(&["t"]);
        let p = crate::algebra::parse_poly(&ring, &self.poly)?;
        let up = p.to_upoly(0).map_err(|e| ParseError::Poly { pos: 0, msg: e.to_string() })?;
        let lo = parse_rational(&self.interval[0])?;
        let hi = parse_rational(&self.interval[1])?;
        Ok(AlgebraicNumber::new(&up, lo, hi))
    }
}
