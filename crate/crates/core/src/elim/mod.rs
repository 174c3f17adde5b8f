mod groebner;
mod ideal;
mod param;
mod roots;

pub use groebner::{groebner_basis, Reducer};
pub use ideal::{eliminate, mpoly_gcd, saturate, GroebnerBasis, Ideal};
#[allow(unused_imports)]
pub(crate) use param::LinearSpan;
pub use param::{
    minimal_polynomial_mod, one_dim_param, separating_forms, zero_dim_param, AlgebraicPoint, OneDimParam, ZeroDimParam,
};
pub use roots::{compare, isolate_real_roots, sign_at, AlgebraicNumber, AlgebraicNumberDoc};
