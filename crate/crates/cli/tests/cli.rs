use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_degsdp"))
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn temp_file(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("degsdp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn solve_single_point_with_explicit_perturbation() {
    let o = run(&["solve", &fixture("single_point.json"), "--perturbation-file", &fixture("single_point_B.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["minimizer"]["exact_coordinates"][0]["exact"], "1");
    assert_eq!(v["minimizer"]["exact_coordinates"][1]["exact"], "1");
    assert_eq!(v["minimizer"]["objective"]["exact"], "-6");
}

#[test]
fn solve_interval_and_infeasible() {
    let o = run(&["solve", &fixture("interval.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["status"], "Solved");
    assert_eq!(v["minimizer"]["exact_coordinates"][0]["exact"], "0");
    assert_eq!(v["minimizer"]["rank"], 1);
    let bad = run(&["solve", &fixture("infeasible.json")]);
    assert_eq!(bad.status.code(), Some(4));
    assert_eq!(json(&bad)["status"], "EmptyFeasible");
}

#[test]
fn exit_codes_are_distinct_and_stable() {
    let ray = temp_file("ray.json", r#"{"m":1,"n":1,"matrices":[[["0"]],[["1"]]],"objective":["-1"]}"#);
    let codes: Vec<Option<i32>> = [&fixture("interval.json"), &fixture("infeasible.json"), &ray]
        .iter()
        .map(|f| run(&["solve", f]).status.code())
        .collect();
    assert_eq!(codes, vec![Some(0), Some(4), Some(3)]);
    assert_eq!(run(&["solve", &ray]).status.code(), Some(3));
    let missing = run(&["solve", "/nonexistent/instance.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["solve", &fixture("disc.json"), "--no-timings", "--seed", "3"];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert!(!a.is_empty());
    assert_eq!(a, b);
    let c = stdout(&bin().args(args).env("DEGSDP_WORKERS", "2").output().unwrap());
    assert_eq!(a, c);
}

#[test]
fn verify_examples() {
    let one = temp_file("p11.json", r#"["1", "1"]"#);
    let o = run(&["verify", &fixture("single_point.json"), &one]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["feasible"], true);
    assert_eq!(v["certificate"]["rank"], 0);
    assert_eq!(v["objective"], "-6");
    let zero = temp_file("p00.json", r#"["0", "0"]"#);
    assert_eq!(run(&["verify", &fixture("single_point.json"), &zero]).status.code(), Some(1));
    let empty = temp_file("pe.json", "[]");
    assert_eq!(run(&["verify", &fixture("identity.json"), &empty]).status.code(), Some(0));
    let sq = temp_file("sq.json", r#"{"q": "2*t^2 - 1", "interval": ["0", "1"], "coords": ["-t", "-t"]}"#);
    let o = run(&["verify", &fixture("disc.json"), &sq, "--text"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let bad = temp_file("bad.json", r#"["1"]"#);
    assert_eq!(run(&["verify", &fixture("single_point.json"), &bad]).status.code(), Some(2));
}

#[test]
fn parse_errors_name_the_field() {
    let f = temp_file(
        "asym.json",
        r#"{"m":2,"n":1,"matrices":[[["0","0"],["0","0"]],[["0","1"],["2","0"]]],"objective":["1"]}"#,
    );
    let o = run(&["solve", &f]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("matrices[1]"), "{err}");
}

#[test]
fn oracle_examples() {
    let o = run(&["oracle", &fixture("interval.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["estimate"]["value"].as_f64().unwrap().abs() < 1e-6);
    let o = run(&["oracle", &fixture("single_point.json")]);
    assert!((json(&o)["estimate"]["value"].as_f64().unwrap() + 6.0).abs() < 1e-4);
    let ray = temp_file("ray2.json", r#"{"m":1,"n":1,"matrices":[[["0"]],[["1"]]],"objective":["-1"]}"#);
    let o = run(&["oracle", &ray, "--text"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("possibly unbounded"));
    let big = temp_file(
        "big.json",
        r#"{"m":5,"n":0,"matrices":[[["1","0","0","0","0"],["0","1","0","0","0"],["0","0","1","0","0"],["0","0","0","1","0"],["0","0","0","0","1"]]],"objective":[]}"#,
    );
    assert_eq!(run(&["oracle", &big]).status.code(), Some(2));
}

#[test]
fn bounds_table() {
    let o = run(&["bounds", "--m", "2", "--n", "2"]);
    let v = json(&o);
    assert_eq!(v["strata"][0]["theta1"], "4");
    assert_eq!(v["strata"][0]["curve_bound"], "12");
    assert_eq!(v["size_within_n_plus_2m2"], true);
    assert!(v["complexity_estimate"].is_string());
    assert_eq!(run(&["bounds"]).status.code(), Some(2));
}

#[test]
fn example_walkthrough() {
    let o = run(&["example", "--text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for c in ["2241769", "115046296", "65669911", "119529834", "246386118", "182957976"] {
        assert!(text.contains(c), "missing {c}");
    }
    assert!(text.contains("singular iff ε=0"));
    assert!(text.contains("x2*y2_1 - x1 - y2_1 + 1 = 0"));
    assert!(text.contains("x1*y2_1 + x2 - y2_1 - 1 = 0"));
    let v = json(&run(&["example"]));
    assert_eq!(v["quadric_matches_expected"], true);
    assert_eq!(v["homotopy_minimizer"], serde_json::json!(["1", "1"]));
    assert_eq!(v["singular_locus"]["x_projection"], serde_json::json!(["x2 - 1", "x1 - 1"]));
}
