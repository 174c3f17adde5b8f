mod common;

use std::time::Duration;

use common::{fixture, single_point, single_point_b, x_only, SINGLE_POINT_QUADRIC};
use degsdp_core::algebra::{parse_poly, rat, MonomialOrder, RatMatrix, Ring, UPoly};
use degsdp_core::elim::{eliminate, Ideal};
use degsdp_core::pencil::{ObjectiveForm, SymmetricPencil};
use degsdp_core::solver::*;
use degsdp_core::systems::{build_incidence, build_lagrange};

fn homotopy_config(b: RatMatrix) -> SolveConfig {
    SolveConfig { skip_zero_point: true, ..SolveConfig::default() }.with_perturbation(b)
}

fn one_by_one(a0: i64, a1: i64) -> SymmetricPencil {
    SymmetricPencil::new(vec![RatMatrix::from_i64(&[&[a0]]), RatMatrix::from_i64(&[&[a1]])]).unwrap()
}

#[test]
fn single_point_short_circuit_at_zero_point() {
    let (p, l) = single_point();
    let rep = degenerate_sdp(&p, &l, &SolveConfig::default().with_perturbation(single_point_b())).unwrap();
    assert_eq!(rep.status, SolveStatus::ZeroPointVertex);
    let min = rep.minimizer.unwrap();
    assert_eq!(min.point.as_rational(), Some(vec![rat(1), rat(1)]));
    assert_eq!(min.rank, 0);
    assert_eq!(min.value.as_rational(), Some(&rat(-6)));
}

#[test]
fn single_point_homotopy_path() {
    let (p, l) = single_point();
    let rep = degenerate_sdp(&p, &l, &homotopy_config(single_point_b())).unwrap();
    assert_eq!(rep.status, SolveStatus::Solved);
    let min = rep.minimizer.as_ref().unwrap();
    assert_eq!(min.point.as_rational(), Some(vec![rat(1), rat(1)]));
    assert_eq!(min.value.as_rational(), Some(&rat(-6)));
    assert_eq!(min.rank, 0);
    // the stratum curve carries the quadric
    let curve = rep.strata[0].curve.as_ref().unwrap();
    let quad = x_only(curve.basis.polys(), 2);
    let ring = Ring::new(&["x1", "x2"]);
    let expected = parse_poly(&ring, SINGLE_POINT_QUADRIC).unwrap().primitive();
    assert!(quad.iter().any(|q| q.primitive() == expected), "{quad:?}");
    assert!(rep.strata.iter().all(|s| s.within_bound()));
    // the limit set of rank 1 contains the minimizer
    assert!(rep.q[0].1.contains_point(&[rat(1), rat(1)]));
}

#[test]
fn interval_minimum_at_zero() {
    let (p, l) = fixture("interval.json");
    let rep = degenerate_sdp(&p, &l, &SolveConfig::default()).unwrap();
    assert_eq!(rep.status, SolveStatus::Solved);
    let min = rep.minimizer.unwrap();
    assert_eq!(min.point.as_rational(), Some(vec![rat(0)]));
    assert_eq!(min.rank, 1);
    assert_eq!(min.value.as_rational(), Some(&rat(0)));
}

#[test]
fn constant_negative_pencil_is_empty() {
    let (p, l) = fixture("infeasible.json");
    let rep = degenerate_sdp(&p, &l, &SolveConfig::default()).unwrap();
    assert_eq!(rep.status, SolveStatus::EmptyFeasible);
    assert!(rep.minimizer.is_none());
    assert!(!rep.diagnostics.is_empty());
}

#[test]
fn ray_cone_verdicts() {
    let p = one_by_one(0, 1);
    let up = degenerate_sdp(&p, &ObjectiveForm::new(vec![rat(1)]), &SolveConfig::default()).unwrap();
    assert_eq!(up.status, SolveStatus::ZeroPointVertex);
    assert_eq!(up.minimizer.unwrap().point.as_rational(), Some(vec![rat(0)]));
    let down = degenerate_sdp(&p, &ObjectiveForm::new(vec![rat(-1)]), &SolveConfig::default()).unwrap();
    assert_eq!(down.status, SolveStatus::UnboundedBelow);
    let cfg = SolveConfig::default();
    assert_eq!(
        cone_unboundedness_test(&p, &[rat(0)], &ObjectiveForm::new(vec![rat(1)]), &cfg).unwrap(),
        ConeVerdict::MinimizerAtVertex
    );
    assert_eq!(
        cone_unboundedness_test(&p, &[rat(0)], &ObjectiveForm::new(vec![rat(-1)]), &cfg).unwrap(),
        ConeVerdict::UnboundedBelow
    );
    assert!(cone_unboundedness_test(&p, &[rat(1)], &ObjectiveForm::new(vec![rat(1)]), &cfg).is_err());
}

#[test]
fn shifted_ray_via_homotopy() {
    // A(x) = (x - 2), minimize x: the zero point is skipped, the r = 0 stratum finds x = 2
    let p = one_by_one(-2, 1);
    let cfg = homotopy_config(RatMatrix::from_i64(&[&[3]]));
    let rep = degenerate_sdp(&p, &ObjectiveForm::new(vec![rat(1)]), &cfg).unwrap();
    assert_eq!(rep.status, SolveStatus::Solved);
    assert_eq!(rep.minimizer.unwrap().point.as_rational(), Some(vec![rat(2)]));
}

#[test]
fn rank_zero_curve_is_a_line() {
    let p = one_by_one(0, 1);
    let b = RatMatrix::from_i64(&[&[3]]);
    let inc = build_incidence(&p, Some(&b), 0, &[0]).unwrap();
    let lag = build_lagrange(&inc, &ObjectiveForm::new(vec![rat(1)])).unwrap();
    let curve = odp(&lag, &OdpOptions::default()).unwrap();
    assert_eq!(curve.dimension, Some(1));
    assert_eq!(curve.degree, 1);
    let line = parse_poly(curve.ring(), "x1 + 3*eps").unwrap();
    assert!(curve.basis.contains(&line));
    let limits = cut(&curve, None).unwrap();
    assert!(limits.contains_point(&[rat(0)]));
    assert_eq!(limits.degree(), 1);
}

fn curve_of(gens: &[&str]) -> StratumCurve {
    let ring = Ring::new(&["eps", "x1"]);
    let ideal = Ideal::new(&ring, gens.iter().map(|g| parse_poly(&ring, g).unwrap()).collect());
    let basis = ideal.groebner(MonomialOrder::GrevLex, None).unwrap();
    StratumCurve {
        r: 1,
        iota: vec![0],
        dimension: basis.dimension(),
        basis,
        degree: 1,
        eps_bar: None,
        param: None,
        param_error: None,
    }
}

#[test]
fn cut_examples() {
    let through_origin = cut(&curve_of(&["x1 - eps"]), None).unwrap();
    assert_eq!(through_origin.degree(), 1);
    assert!(through_origin.contains_point(&[rat(0)]));
    let escaping = cut(&curve_of(&["eps*x1 - 1"]), None).unwrap();
    assert!(escaping.is_empty());
}

#[test]
fn genericity_diagnostics_examples() {
    let (p, l) = single_point();
    let half = rat(1) / rat(2);
    let inc = build_incidence(&p, Some(&single_point_b()), 1, &[0]).unwrap();
    let lag = build_lagrange(&inc, &l).unwrap();
    let ok = genericity_diagnostics(&lag, &half, None).unwrap();
    assert!(!ok.flagged, "{ok:?}");
    // B = 0 leaves the fibre equal to the unperturbed, singular system
    let inc0 = build_incidence(&p, Some(&RatMatrix::zeros(2, 2)), 1, &[0]).unwrap();
    let lag0 = build_lagrange(&inc0, &l).unwrap();
    assert!(genericity_diagnostics(&lag0, &half, None).unwrap().flagged);
    // with no objective every point of the incidence variety is critical
    let flat = build_lagrange(&inc, &ObjectiveForm::new(vec![rat(0), rat(0)])).unwrap();
    assert!(genericity_diagnostics(&flat, &half, None).unwrap().flagged);
}

#[test]
fn minors_curve_matches_full_projection() {
    let (p, l) = single_point();
    let inc = build_incidence(&p, Some(&single_point_b()), 1, &[0]).unwrap();
    let lag = build_lagrange(&inc, &l).unwrap();
    let full = lag.project(Some(std::time::Instant::now() + Duration::from_secs(60))).unwrap();
    let curve = odp(&lag, &OdpOptions::default()).unwrap();
    // eliminating eps from both gives the same plane curve
    let plane = |gb: &degsdp_core::elim::GroebnerBasis| {
        let e = eliminate(&gb.to_ideal(), &[0], None).unwrap();
        x_only(e.polys(), 2)
    };
    let a = plane(&full);
    let b = plane(&curve.basis);
    let ring = Ring::new(&["x1", "x2"]);
    let ia = Ideal::new(&ring, a.clone()).groebner(MonomialOrder::GrevLex, None).unwrap();
    let ib = Ideal::new(&ring, b.clone()).groebner(MonomialOrder::GrevLex, None).unwrap();
    assert!(b.iter().all(|g| ia.contains(g)) && a.iter().all(|g| ib.contains(g)), "{a:?} vs {b:?}");
}

#[test]
fn retained_limits_are_singular() {
    let (p, l) = fixture("disc.json");
    let rep = degenerate_sdp(&p, &l, &SolveConfig::default()).unwrap();
    assert_eq!(rep.status, SolveStatus::Solved);
    let ring = Ring::new(&["x1", "x2"]);
    let det = p.poly_matrix(&ring, &[0, 1], None).determinant().unwrap();
    for c in &rep.candidates {
        assert!(c.point.vanishes(&det));
    }
    let min = rep.minimizer.unwrap();
    assert_eq!(min.rank, 1);
    // minimum of x1 + x2 on the unit disc is -sqrt 2
    let v = min.value;
    assert_eq!(v.poly().monic(), UPoly::from_i64(&[-2, 0, 1]));
    assert!(v.to_f64() < 0.0);
}

#[test]
fn stratum_order_does_not_matter() {
    let pencil = SymmetricPencil::new(vec![
        RatMatrix::from_i64(&[&[2, 1, 0], &[1, 3, -1], &[0, -1, 2]]),
        RatMatrix::from_i64(&[&[1, 0, 2], &[0, -1, 1], &[2, 1, 0]]),
        RatMatrix::from_i64(&[&[0, 1, -1], &[1, 2, 0], &[-1, 0, 1]]),
    ])
    .unwrap();
    let l = ObjectiveForm::new(vec![rat(1), rat(-2)]);
    let base = degenerate_sdp(&pencil, &l, &SolveConfig::default()).unwrap();
    let sorted = |rep: &SolveReport| {
        let mut pts: Vec<_> = rep.candidates.iter().map(|c| c.point.clone()).collect();
        pts.sort_by(|a, b| a.cmp_lex(b));
        pts
    };
    let reference = sorted(&base);
    assert!(!reference.is_empty());
    for s in 1..=2 {
        let cfg = SolveConfig { shuffle_strata: Some(s), ..SolveConfig::default() };
        let rep = degenerate_sdp(&pencil, &l, &cfg).unwrap();
        let pts = sorted(&rep);
        assert_eq!(pts.len(), reference.len());
        assert!(pts.iter().zip(&reference).all(|(a, b)| a.cmp_lex(b).is_eq()));
        assert_eq!(rep.status, base.status);
    }
}

#[test]
fn repeated_runs_give_identical_reports() {
    let (p, l) = fixture("interval.json");
    let a = degenerate_sdp(&p, &l, &SolveConfig::default()).unwrap().to_json(false);
    let b = degenerate_sdp(&p, &l, &SolveConfig { workers: Some(2), ..SolveConfig::default() }).unwrap().to_json(false);
    assert_eq!(a, b);
}

#[test]
fn feasibility_examples() {
    let cfg = SolveConfig::default();
    assert!(!feasibility(&one_by_one(-1, 0), &cfg).unwrap().feasible);
    assert!(feasibility(&one_by_one(-1, 1), &cfg).unwrap().feasible);
    let (p, _) = fixture("disc.json");
    assert!(feasibility(&p, &cfg).unwrap().feasible);
}

#[test]
fn invalid_inputs_are_rejected() {
    let (p, _) = single_point();
    assert!(degenerate_sdp(&p, &ObjectiveForm::new(vec![rat(1)]), &SolveConfig::default()).is_err());
    let cfg = SolveConfig::default().with_perturbation(RatMatrix::identity(3));
    assert!(degenerate_sdp(&p, &ObjectiveForm::new(vec![rat(1), rat(1)]), &cfg).is_err());
}
