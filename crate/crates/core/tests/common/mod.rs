#![allow(dead_code)]

use std::path::PathBuf;

use degsdp_core::algebra::{MPoly, RatMatrix, Ring};
use degsdp_core::pencil::{parse_instance, parse_matrix, ObjectiveForm, SymmetricPencil};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture(name: &str) -> (SymmetricPencil, ObjectiveForm) {
    parse_instance(&std::fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

pub fn single_point() -> (SymmetricPencil, ObjectiveForm) {
    fixture("single_point.json")
}

pub fn single_point_b() -> RatMatrix {
    parse_matrix(&std::fs::read_to_string(fixture_path("single_point_B.json")).unwrap()).unwrap()
}

pub const SINGLE_POINT_QUADRIC: &str =
    "2241769*x1^2 + 115046296*x1*x2 + 65669911*x2^2 - 119529834*x1 - 246386118*x2 + 182957976";

/// Basis elements free of `eps`, moved to `Q[x1, ..., xn]`.
pub fn x_only(basis: &[MPoly], n: usize) -> Vec<MPoly> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let ring = Ring::new(&names);
    basis.iter().filter(|p| !p.vars_used().contains(&0)).filter_map(|p| p.to_ring(&ring)).collect()
}
