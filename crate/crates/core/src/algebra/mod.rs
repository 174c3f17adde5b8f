//! Exact arithmetic: rationals, sparse multivariate polynomials, dense
//! univariate polynomials and matrices over both.

pub mod matrix;
pub mod monomial;
pub mod mpoly;
pub mod parse;
pub mod rational;
pub mod upoly;

pub use matrix::{jacobian, PolyMatrix, RatMatrix};
pub use monomial::{Monomial, MonomialOrder};
pub use mpoly::{MPoly, Ring};
pub use parse::parse_poly;
pub use rational::{parse_rational, rat, rat2, Rational};
pub use upoly::UPoly;
