//! Shared inputs for the benchmarks in `benches/`.

use degsdp_core::algebra::{rat, RatMatrix};
use degsdp_core::pencil::{parse_instance, parse_matrix, ObjectiveForm, SymmetricPencil};

pub fn single_point() -> (SymmetricPencil, ObjectiveForm, RatMatrix) {
    let (p, l) = parse_instance(include_str!("../../../fixtures/single_point.json")).expect("fixture");
    let b = parse_matrix(include_str!("../../../fixtures/single_point_B.json")).expect("fixture");
    (p, l, b)
}

pub fn disc() -> (SymmetricPencil, ObjectiveForm) {
    parse_instance(include_str!("../../../fixtures/disc.json")).expect("fixture")
}

/// A dense 3x3 pencil in two variables with a bounded spectrahedron.
pub fn dense3() -> (SymmetricPencil, ObjectiveForm) {
    let p = SymmetricPencil::new(vec![
        RatMatrix::from_i64(&[&[2, 1, 0], &[1, 3, -1], &[0, -1, 2]]),
        RatMatrix::from_i64(&[&[1, 0, 2], &[0, -1, 1], &[2, 1, 0]]),
        RatMatrix::from_i64(&[&[0, 1, -1], &[1, 2, 0], &[-1, 0, 1]]),
    ])
    .expect("symmetric");
    (p, ObjectiveForm::new(vec![rat(1), rat(-2)]))
}
