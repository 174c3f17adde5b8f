//! The two-by-two example whose spectrahedron is the single point `p = (1, 1)`.

use std::fmt::Write as _;

use anyhow::{anyhow, Result};
use serde_json::{json, Value};

use degsdp_core::algebra::{parse_poly, rat, MPoly, MonomialOrder, RatMatrix, Rational, Ring, UPoly};
use degsdp_core::bounds::binomial;
use degsdp_core::elim::{eliminate, zero_dim_param, Ideal};
use degsdp_core::pencil::{ObjectiveForm, SymmetricPencil};
use degsdp_core::solver::{cut, degenerate_sdp, odp, OdpOptions, SolveConfig};
use degsdp_core::systems::{build_incidence, build_lagrange, regularity_check, singular_locus, singular_parameters};

const QUADRIC: &str = "2241769*x1^2 + 115046296*x1*x2 + 65669911*x2^2 - 119529834*x1 - 246386118*x2 + 182957976";

pub struct Walkthrough {
    pencil: Vec<String>,
    incidence: Vec<String>,
    singular_basis: Vec<String>,
    singular_x: Vec<String>,
    singular_y: String,
    /// Real solutions `(a, b)` of `g(a + b i) = 0` for the y-eliminant `g`.
    singular_y_decomposed: Vec<(f64, f64)>,
    lagrange: String,
    curve_basis: Vec<String>,
    quadric: Option<String>,
    quadric_matches: bool,
    limits: Vec<Vec<f64>>,
    homotopy_minimizer: Option<Vec<String>>,
    homotopy_value: Option<String>,
    direct_status: String,
    direct_minimizer: Option<Vec<String>>,
    identity_regularity: Vec<(String, bool)>,
    identity_singular_parameters: String,
    singular_iff_zero: bool,
}

fn point_pencil(p1: i64, p2: i64) -> SymmetricPencil {
    SymmetricPencil::new(vec![
        RatMatrix::from_i64(&[&[p1, -p2], &[-p2, -p1]]),
        RatMatrix::from_i64(&[&[-1, 0], &[0, 1]]),
        RatMatrix::from_i64(&[&[0, 1], &[1, 0]]),
    ])
    .expect("symmetric")
}

fn strings(ps: &[MPoly]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

/// `Re g(a + b i)` and `Im g(a + b i)` in `Q[a, b]`.
fn complex_parts(g: &UPoly, ring: &Ring) -> (MPoly, MPoly) {
    let a = MPoly::var(ring, 0);
    let b = MPoly::var(ring, 1);
    let mut re = MPoly::zero(ring);
    let mut im = MPoly::zero(ring);
    for (k, c) in g.coeffs().iter().enumerate() {
        for j in 0..=k {
            let coef = c * Rational::from_integer(binomial(k as i64, j as i64).into());
            let sign = if (j / 2) % 2 == 0 { coef } else { -coef };
            let term = (&a.pow((k - j) as u32) * &b.pow(j as u32)).scale(&sign);
            if j % 2 == 0 {
                re = &re + &term;
            } else {
                im = &im + &term;
            }
        }
    }
    (re, im)
}

pub fn walkthrough() -> Result<Walkthrough> {
    let pencil = point_pencil(1, 1);
    let objective = ObjectiveForm::new(vec![rat(88), rat(-94)]);
    let b = RatMatrix::from_i64(&[&[80, -68], &[-68, 109]]);
    let zero = rat(0);

    // unperturbed incidence variety and its singular points
    let inc = build_incidence(&pencil, None, 1, &[0])?;
    let sing = singular_locus(&inc, &zero).groebner(MonomialOrder::Lex, None)?;
    let x_part = eliminate(&sing.to_ideal(), &inc.y_vars, None)?;
    let y_part = eliminate(&sing.to_ideal(), &inc.x_vars, None)?;
    let y_var = inc.y_vars[0];
    let mut g = UPoly::zero();
    for p in y_part.polys() {
        g = g.gcd(&p.as_univariate()?.1);
    }
    let ab = Ring::new(&["a", "b"]);
    let (re, im) = complex_parts(&g, &ab);
    let parts = zero_dim_param(&Ideal::new(&ab, vec![re, im]), None)?;
    let decomposed = parts
        .real_points()
        .iter()
        .map(|p| {
            let v = p.approx(1e-12);
            (v[0], v[1])
        })
        .collect();

    // perturbed stratum with the explicit B
    let pinc = build_incidence(&pencil, Some(&b), 1, &[0])?;
    let lag = build_lagrange(&pinc, &objective)?;
    let curve = odp(&lag, &OdpOptions { parametrize: false, ..OdpOptions::default() })?;
    let xy = Ring::new(&["x1", "x2"]);
    let quadric = curve
        .basis
        .polys()
        .iter()
        .filter(|p| !p.vars_used().contains(&0))
        .find_map(|p| p.to_ring(&xy))
        .map(|p| p.primitive());
    let expected = parse_poly(&xy, QUADRIC).map_err(|e| anyhow!("{e}"))?.primitive();
    let limits = cut(&curve, None)?;

    let homotopy = degenerate_sdp(
        &pencil,
        &objective,
        &SolveConfig { skip_zero_point: true, ..SolveConfig::default() }.with_perturbation(b.clone()),
    )?;
    let direct = degenerate_sdp(&pencil, &objective, &SolveConfig::default().with_perturbation(b))?;
    let coords = |rep: &degsdp_core::solver::SolveReport| {
        rep.minimizer.as_ref().map(|m| (0..m.point.dim()).map(|i| m.point.coordinate(i).to_string()).collect())
    };

    // identity perturbation: regular exactly away from ε = 0
    let ident = build_incidence(&pencil, Some(&RatMatrix::identity(2)), 1, &[0])?;
    let mut identity_regularity = Vec::new();
    for e in [rat(0), rat(1), Rational::new(1.into(), 2.into()), Rational::new(1.into(), 7.into())] {
        let reg = regularity_check(&ident, &e, None)?.is_regular();
        identity_regularity.push((e.to_string(), reg));
    }
    let params = singular_parameters(&ident, None)?;

    Ok(Walkthrough {
        pencil: pencil
            .matrices()
            .iter()
            .map(|a| {
                format!(
                    "{:?}",
                    a.to_rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()
                )
            })
            .collect(),
        incidence: strings(&inc.polys),
        singular_basis: strings(sing.polys()),
        singular_x: strings(x_part.polys()),
        singular_y: g.display_in(inc.ring.name(y_var)),
        singular_y_decomposed: decomposed,
        lagrange: lag.dump(),
        curve_basis: strings(curve.basis.polys()),
        quadric_matches: quadric.as_ref() == Some(&expected),
        quadric: quadric.map(|q| q.to_string()),
        limits: limits.real_points().iter().map(|p| p.approx(1e-12)).collect(),
        homotopy_minimizer: coords(&homotopy),
        homotopy_value: homotopy.optimal_value().map(|v| v.to_string()),
        direct_status: direct.status.name().to_string(),
        direct_minimizer: coords(&direct),
        identity_regularity,
        singular_iff_zero: params == UPoly::x(),
        identity_singular_parameters: params.display_in("eps"),
    })
}

impl Walkthrough {
    pub fn to_json(&self) -> Value {
        json!({
            "pencil": self.pencil,
            "unperturbed_incidence": self.incidence,
            "singular_locus": {
                "basis": self.singular_basis,
                "x_projection": self.singular_x,
                "y_eliminant": self.singular_y,
                "y_real_imaginary_solutions": self.singular_y_decomposed,
            },
            "lagrange_system": self.lagrange,
            "curve_basis": self.curve_basis,
            "quadric": self.quadric,
            "quadric_matches_expected": self.quadric_matches,
            "limit_points": self.limits,
            "homotopy_minimizer": self.homotopy_minimizer,
            "homotopy_value": self.homotopy_value,
            "direct_status": self.direct_status,
            "direct_minimizer": self.direct_minimizer,
            "identity_perturbation": {
                "regular_at": self.identity_regularity.iter().map(|(e, r)| json!({"eps": e, "regular": r})).collect::<Vec<_>>(),
                "singular_parameters": self.identity_singular_parameters,
                "singular_iff_eps_zero": self.singular_iff_zero,
            },
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "pencil A0, A1, A2 (p = (1, 1)):").unwrap();
        for a in &self.pencil {
            writeln!(s, "  {a}").unwrap();
        }
        writeln!(s, "\nunperturbed incidence equations, r = 1, iota = {{1}}:").unwrap();
        for p in &self.incidence {
            writeln!(s, "  {p} = 0").unwrap();
        }
        writeln!(s, "\nsingular locus (equations plus 2x2 Jacobian minors), lex basis:").unwrap();
        for p in &self.singular_basis {
            writeln!(s, "  {p}").unwrap();
        }
        writeln!(s, "  projection to x: {}", self.singular_x.join(", ")).unwrap();
        writeln!(s, "  eliminant in y: {}", self.singular_y).unwrap();
        let sols: Vec<String> = self.singular_y_decomposed.iter().map(|(a, b)| format!("{a} {:+}i", b)).collect();
        writeln!(s, "  y = a + bi with real (a, b): {}  => singular points (p1, p2, +-i)", sols.join(", ")).unwrap();
        writeln!(s, "\nLagrange system with B = [[80, -68], [-68, 109]]:").unwrap();
        for line in self.lagrange.lines() {
            writeln!(s, "  {line}").unwrap();
        }
        writeln!(s, "\nhomotopy curve in (eps, x1, x2):").unwrap();
        for p in &self.curve_basis {
            writeln!(s, "  {p}").unwrap();
        }
        if let Some(q) = &self.quadric {
            writeln!(s, "quadric: {q} = 0").unwrap();
        }
        writeln!(s, "quadric matches the expected coefficients: {}", self.quadric_matches).unwrap();
        let lims: Vec<String> = self.limits.iter().map(|p| format!("{p:?}")).collect();
        writeln!(s, "limits at eps = 0: {}", lims.join(", ")).unwrap();
        if let (Some(x), Some(v)) = (&self.homotopy_minimizer, &self.homotopy_value) {
            writeln!(s, "minimizer via homotopy: ({}), objective {v}", x.join(", ")).unwrap();
        }
        if let Some(x) = &self.direct_minimizer {
            writeln!(s, "direct solve: {} at ({})", self.direct_status, x.join(", ")).unwrap();
        }
        writeln!(s, "\nB = I2 variant:").unwrap();
        for (e, r) in &self.identity_regularity {
            writeln!(s, "  eps = {e}: {}", if *r { "regular" } else { "singular" }).unwrap();
        }
        writeln!(s, "  singular parameters: roots of {}", self.identity_singular_parameters).unwrap();
        if self.singular_iff_zero {
            writeln!(s, "  singular iff ε=0").unwrap();
        }
        s
    }
}
