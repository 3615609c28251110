//! The JSON report shape is part of the interface; this pins it.

use boxdtw_cli::{run, Command, Output, RunConfig};
use serde_json::{json, Value};

/// Field name to expected JSON type; a trailing `?` marks optional fields.
const REPORT_SCHEMA: &[(&str, &str)] = &[
    ("distance", "number"),
    ("distance_exact", "string"),
    ("coupling_or_matching?", "array"),
    ("algorithm", "string"),
    ("g", "number|null"),
    ("work_units", "object"),
    ("wall_time_ms", "number"),
];

const WORK_SCHEMA: &[(&str, &str)] = &[
    ("cell_updates", "number"),
    ("candidate_evaluations", "number"),
    ("dominance_pairs_reported", "number"),
];

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

fn validate(v: &Value, schema: &[(&str, &str)]) {
    let obj = v.as_object().expect("report is an object");
    for (key, ty) in schema {
        let (name, optional) = match key.strip_suffix('?') {
            Some(k) => (k, true),
            None => (*key, false),
        };
        match obj.get(name) {
            Some(val) => assert!(
                ty.split('|').any(|t| t == type_name(val)),
                "{name}: {val} is not {ty}"
            ),
            None => assert!(optional, "missing field {name}"),
        }
    }
    let known: Vec<&str> = schema
        .iter()
        .map(|(k, _)| k.trim_end_matches('?'))
        .collect();
    for key in obj.keys() {
        assert!(known.contains(&key.as_str()), "unexpected field {key}");
    }
}

fn validate_report(v: &Value) {
    validate(v, REPORT_SCHEMA);
    validate(&v["work_units"], WORK_SCHEMA);
    if let Some(pairs) = v.get("coupling_or_matching") {
        for p in pairs.as_array().unwrap() {
            let p = p.as_array().expect("pair is an array");
            assert!(p.len() == 2 && p.iter().all(|x| x.as_u64().is_some_and(|i| i >= 1)));
        }
    }
}

fn report_for(algorithm: &str, traceback: bool, ged: bool) -> Value {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.txt");
    std::fs::write(&path, "dim=1\n0\n3\n2\n\n1\n4\n").unwrap();
    let mut cfg = RunConfig::new(if ged { Command::Ged } else { Command::Dtw });
    cfg.input = Some(path);
    cfg.algorithm = algorithm.parse().unwrap();
    cfg.traceback = traceback;
    cfg.rho = ged.then(|| "2".to_string());
    let out = run(&cfg).unwrap();
    assert!(matches!(out, Output::Single(_)));
    serde_json::from_str(&out.to_json()).unwrap()
}

#[test]
fn single_reports_follow_the_schema() {
    for algorithm in ["quadratic", "subquadratic"] {
        for traceback in [false, true] {
            for ged in [false, true] {
                let v = report_for(algorithm, traceback, ged);
                validate_report(&v);
                assert_eq!(v.get("coupling_or_matching").is_some(), traceback);
                assert_eq!(v["algorithm"], algorithm);
            }
        }
    }
}

#[test]
fn quadratic_reports_have_null_g() {
    assert_eq!(report_for("quadratic", false, false)["g"], Value::Null);
    assert_eq!(report_for("subquadratic", false, false)["g"], json!(3));
}

#[test]
fn bench_report_nests_two_reports() {
    let mut cfg = RunConfig::new(Command::Bench);
    cfg.length = 20;
    let v: Value = serde_json::from_str(&run(&cfg).unwrap().to_json()).unwrap();
    let obj = v.as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["m", "n", "problem", "quadratic", "subquadratic"]);
    validate_report(&v["quadratic"]);
    validate_report(&v["subquadratic"]);
}
