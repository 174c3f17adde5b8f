use serde::{Deserialize, Serialize};

use crate::algebra::rational::{format_rational, parse_rational};
use crate::algebra::{parse_poly, RatMatrix, Rational, Ring, UPoly};
use crate::elim::{AlgebraicNumber, AlgebraicNumberDoc, AlgebraicPoint};
use crate::error::InstanceError;

use super::{ObjectiveForm, SymmetricPencil};

/// Matrix as rows of rational strings.
pub type MatrixDoc = Vec<Vec<String>>;

/// Instance document: `{"m", "n", "matrices": [A_0, …, A_n], "objective"}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct InstanceDoc {
    pub m: usize,
    pub n: usize,
    pub matrices: Vec<MatrixDoc>,
    pub objective: Vec<String>,
}

pub fn matrix_from_doc(doc: &MatrixDoc, field: &str) -> Result<RatMatrix, InstanceError> {
    let mut rows = Vec::with_capacity(doc.len());
    for (i, row) in doc.iter().enumerate() {
        let mut r = Vec::with_capacity(row.len());
        for (j, s) in row.iter().enumerate() {
            r.push(parse_rational(s).map_err(|e| InstanceError::field(format!("{field}[{i}][{j}]"), e.to_string()))?);
        }
        rows.push(r);
    }
    RatMatrix::from_rows(rows).map_err(|e| InstanceError::field(field, e.to_string()))
}

pub fn matrix_to_doc(a: &RatMatrix) -> MatrixDoc {
    a.to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect()
}

pub fn parse_instance(text: &str) -> Result<(SymmetricPencil, ObjectiveForm), InstanceError> {
    let doc: InstanceDoc = serde_json::from_str(text)?;
    doc.build()
}

impl InstanceDoc {
    pub fn build(&self) -> Result<(SymmetricPencil, ObjectiveForm), InstanceError> {
        if self.matrices.len() != self.n + 1 {
            return Err(InstanceError::field(
                "matrices",
                format!("expected n + 1 = {} matrices, found {}", self.n + 1, self.matrices.len()),
            ));
        }
        let mut mats = Vec::with_capacity(self.matrices.len());
        for (k, d) in self.matrices.iter().enumerate() {
            let a = matrix_from_doc(d, &format!("matrices[{k}]"))?;
            if a.rows != self.m || a.cols != self.m {
                return Err(InstanceError::field(
                    format!("matrices[{k}]"),
                    format!("expected {}x{}, found {}x{}", self.m, self.m, a.rows, a.cols),
                ));
            }
            mats.push(a);
        }
        if self.objective.len() != self.n {
            return Err(InstanceError::field(
                "objective",
                format!("expected {} coefficients, found {}", self.n, self.objective.len()),
            ));
        }
        let obj = self
            .objective
            .iter()
            .enumerate()
            .map(|(i, s)| parse_rational(s).map_err(|e| InstanceError::field(format!("objective[{i}]"), e.to_string())))
            .collect::<Result<Vec<Rational>, _>>()?;
        Ok((SymmetricPencil::new(mats)?, ObjectiveForm::new(obj)))
    }

    pub fn from_instance(pencil: &SymmetricPencil, objective: &ObjectiveForm) -> Self {
        InstanceDoc {
            m: pencil.m(),
            n: pencil.n(),
            matrices: pencil.matrices().iter().map(matrix_to_doc).collect(),
            objective: objective.coeffs().iter().map(format_rational).collect(),
        }
    }
}

pub fn instance_to_json(pencil: &SymmetricPencil, objective: &ObjectiveForm) -> String {
    serde_json::to_string_pretty(&InstanceDoc::from_instance(pencil, objective)).expect("serializable")
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixFile {
    Bare(MatrixDoc),
    Wrapped { matrix: MatrixDoc },
}

/// A matrix file: either a bare array of rows or `{"matrix": rows}`.
pub fn parse_matrix(text: &str) -> Result<RatMatrix, InstanceError> {
    let doc: MatrixFile = serde_json::from_str(text)?;
    let rows = match &doc {
        MatrixFile::Bare(m) | MatrixFile::Wrapped { matrix: m } => m,
    };
    matrix_from_doc(rows, "matrix")
}

fn rational_value(v: &serde_json::Value, field: &str) -> Result<Rational, InstanceError> {
    let text = match v {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return Err(InstanceError::field(field, "expected a rational string or an integer")),
    };
    parse_rational(&text).map_err(|e| InstanceError::field(field, e.to_string()))
}

fn t_poly(text: &str, field: &str) -> Result<UPoly, InstanceError> {
    let ring = Ring::new(&["t"]);
    parse_poly(&ring, text)
        .map_err(|e| InstanceError::field(field, e.to_string()))?
        .to_upoly(0)
        .map_err(|e| InstanceError::field(field, e.to_string()))
}

fn root_in(q: &UPoly, interval: &serde_json::Value, field: &str) -> Result<AlgebraicNumber, InstanceError> {
    let ends =
        interval.as_array().filter(|a| a.len() == 2).ok_or_else(|| InstanceError::field(field, "expected [lo, hi]"))?;
    let lo = rational_value(&ends[0], &format!("{field}[0]"))?;
    let hi = rational_value(&ends[1], &format!("{field}[1]"))?;
    AlgebraicNumber::new(q, lo, hi).ok_or_else(|| InstanceError::field(field, "interval does not isolate one root"))
}

/// A point file. Accepted forms:
/// - `["1", "1/2"]`: rational coordinates (strings or integers);
/// - `{"q": "t^2 - 2", "interval": ["1", "2"], "coords": ["t", "1"]}`: `x_i = coords[i](α)`;
/// - a list mixing rationals and `{"poly", "interval"}` numbers, at most one irrational.
pub fn parse_point(text: &str) -> Result<AlgebraicPoint, InstanceError> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    if let Some(obj) = v.as_object() {
        let get = |k: &str| obj.get(k).ok_or_else(|| InstanceError::field(k, "missing"));
        let q = t_poly(get("q")?.as_str().ok_or_else(|| InstanceError::field("q", "expected a string"))?, "q")?;
        let root = root_in(&q, get("interval")?, "interval")?;
        let coords = get("coords")?
            .as_array()
            .ok_or_else(|| InstanceError::field("coords", "expected a list"))?
            .iter()
            .enumerate()
            .map(|(i, c)| match c {
                serde_json::Value::String(s) => t_poly(s, &format!("coords[{i}]")),
                other => rational_value(other, &format!("coords[{i}]")).map(UPoly::constant),
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(AlgebraicPoint::new(q, coords, root));
    }
    let items = v.as_array().ok_or_else(|| InstanceError::field("point", "expected a list or an object"))?;
    let mut coords = Vec::with_capacity(items.len());
    let mut irrational: Option<(usize, AlgebraicNumber)> = None;
    for (i, item) in items.iter().enumerate() {
        let field = format!("point[{i}]");
        if item.is_object() {
            let doc: AlgebraicNumberDoc = serde_json::from_value(item.clone())?;
            let a = doc
                .parse()
                .map_err(|e| InstanceError::field(&field, e.to_string()))?
                .ok_or_else(|| InstanceError::field(&field, "interval does not isolate one root"))?;
            if let Some(c) = a.as_rational() {
                coords.push(UPoly::constant(c.clone()));
            } else if irrational.is_some() {
                return Err(InstanceError::field(
                    &field,
                    "at most one irrational coordinate; use the {q, interval, coords} form",
                ));
            } else {
                coords.push(UPoly::x());
                irrational = Some((i, a));
            }
        } else {
            coords.push(UPoly::constant(rational_value(item, &field)?));
        }
    }
    Ok(match irrational {
        Some((_, a)) => AlgebraicPoint::new(a.poly().clone(), coords, a),
        None => {
            let x: Vec<Rational> = coords.iter().map(|c| c.coeff(0)).collect();
            AlgebraicPoint::rational(&x)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    const SINGLE_POINT: &str = r#"{"m": 2, "n": 2,
        "matrices": [[["1","-1"],["-1","-1"]], [["-1","0"],["0","1"]], [["0","1"],["1","0"]]],
        "objective": ["88", "-94"]}"#;

    #[test]
    fn parses_and_round_trips() {
        let (p, l) = parse_instance(SINGLE_POINT).unwrap();
        assert_eq!(p.m(), 2);
        assert_eq!(p.matrices()[1], RatMatrix::from_i64(&[&[-1, 0], &[0, 1]]));
        assert_eq!(l.coeffs(), &[rat(88), rat(-94)]);
        let again = parse_instance(&instance_to_json(&p, &l)).unwrap();
        assert_eq!(again, (p, l));
    }

    #[test]
    fn trivial_pencil() {
        let (p, _) = parse_instance(r#"{"m":1,"n":1,"matrices":[[["0"]],[["1"]]],"objective":["1"]}"#).unwrap();
        assert_eq!(p.n(), 1);
    }

    #[test]
    fn rejects_bad_documents() {
        let asym = r#"{"m":2,"n":1,"matrices":[[["0","0"],["0","0"]],[["0","1"],["2","0"]]],"objective":["1"]}"#;
        let e = parse_instance(asym).unwrap_err().to_string();
        assert!(e.contains("matrices[1]") && e.contains("symmetric"), "{e}");
        let bad = r#"{"m":1,"n":1,"matrices":[[["0"]],[["1/0"]]],"objective":["1"]}"#;
        assert!(parse_instance(bad).unwrap_err().to_string().contains("matrices[1][0][0]"));
        let short = r#"{"m":1,"n":2,"matrices":[[["0"]],[["1"]]],"objective":["1","1"]}"#;
        assert!(parse_instance(short).is_err());
    }

    #[test]
    fn matrix_files() {
        let a = parse_matrix(r#"[["80","-68"],["-68","109"]]"#).unwrap();
        let b = parse_matrix(r#"{"matrix": [["80","-68"],["-68","109"]]}"#).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn point_files() {
        let p = parse_point(r#"["1", 2, "1/3"]"#).unwrap();
        assert_eq!(p.as_rational(), Some(vec![rat(1), rat(2), crate::algebra::rat2(1, 3)]));
        let sq = parse_point(r#"{"q": "t^2 - 2", "interval": ["1", "2"], "coords": ["t", "1"]}"#).unwrap();
        assert!(sq.as_rational().is_none());
        assert!((sq.approx(1e-9)[0] - 2f64.sqrt()).abs() < 1e-8);
        let mixed = parse_point(r#"[{"poly": "t^2 - 2", "interval": ["-2", "-1"]}, "5"]"#).unwrap();
        let x = mixed.approx(1e-9);
        assert!((x[0] + 2f64.sqrt()).abs() < 1e-8 && x[1] == 5.0);
        let two = r#"[{"poly": "t^2 - 2", "interval": ["1", "2"]}, {"poly": "t^2 - 3", "interval": ["1", "2"]}]"#;
        assert!(parse_point(two).unwrap_err().to_string().contains("at most one irrational"));
        assert!(parse_point(r#"{"q": "t^2 - 2", "interval": ["-2", "2"], "coords": ["t"]}"#).is_err());
        assert!(parse_point(r#"[1.5]"#).is_err());
    }

    fn arb_rational() -> impl proptest::strategy::Strategy<Value = Rational> {
        use proptest::prelude::*;
        (-400i64..400, 1i64..30).prop_map(|(a, b)| crate::algebra::rat2(a, b))
    }

    fn arb_instance() -> impl proptest::strategy::Strategy<Value = (SymmetricPencil, ObjectiveForm)> {
        use proptest::prelude::*;
        (1usize..=4, 0usize..=3).prop_flat_map(|(m, n)| {
            let entries = proptest::collection::vec(arb_rational(), (n + 1) * m * (m + 1) / 2);
            let obj = proptest::collection::vec(arb_rational(), n);
            (entries, obj).prop_map(move |(v, l)| {
                let mut it = v.into_iter();
                let mats = (0..=n)
                    .map(|_| {
                        let mut a = RatMatrix::zeros(m, m);
                        for i in 0..m {
                            for j in i..m {
                                let c = it.next().unwrap();
                                a.set(i, j, c.clone());
                                a.set(j, i, c);
                            }
                        }
                        a
                    })
                    .collect();
                (SymmetricPencil::new(mats).unwrap(), ObjectiveForm::new(l))
            })
        })
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(50))]
        #[test]
        fn serialization_round_trips(inst in arb_instance()) {
            let text = instance_to_json(&inst.0, &inst.1);
            let back = parse_instance(&text).unwrap();
            proptest::prop_assert_eq!(back, inst);
        }
    }
}
