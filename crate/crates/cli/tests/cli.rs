use std::io::Write;
use std::process::Command;

use proptest::prelude::*;
use serde_json::Value;

use osc_cli::{map_from_json, parse_poly, run, RunOutput};
use osc_core::algebra::default_var_names;
use osc_core::{MPoly, Rat};

fn osc(args: &[&str]) -> RunOutput {
    run(std::iter::once("osc").chain(args.iter().copied()))
}

fn osc_json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let out = osc(&full);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("valid JSON")
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("../../../schemas/report-v1.json");
    let schema: Value = serde_json::from_str(text).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

const COMMANDS: &[&[&str]] = &[
    &[
        "dim",
        "--map",
        "catalog:togliatti",
        "--order",
        "2",
        "--point",
        "1,1",
    ],
    &[
        "generic-dim",
        "--map",
        "catalog:veronese-2-3",
        "--order",
        "3",
    ],
    &[
        "equations",
        "--map",
        "catalog:togliatti",
        "--order",
        "2",
        "--point",
        "1,2",
    ],
    &["identical", "--map", "catalog:togliatti", "--order", "2"],
    &["hseq", "--map", "catalog:scroll-1-2", "--order", "3"],
    &["scan", "--map", "catalog:scroll-1-2", "--order", "2"],
    &["minors", "--map", "catalog:curve-0-1-3-4", "--order", "3"],
    &["wronskian", "--map", "catalog:rnc3"],
    &["inflect", "--map", "catalog:nodal-cubic"],
    &["chern", "--n", "2", "--d", "3", "--m", "2", "--r", "4"],
    &[
        "check",
        "main",
        "--map",
        "catalog:togliatti",
        "--order",
        "2",
    ],
    &[
        "check",
        "veronese",
        "--map",
        "catalog:veronese-2-2",
        "--order",
        "2",
    ],
    &[
        "check",
        "a5",
        "--n",
        "2",
        "--d",
        "3",
        "--m",
        "2",
        "--y",
        "0",
        "--e",
        "1",
        "--assert-rank",
    ],
    &["check", "lanteri", "--map", "catalog:scroll-1-2"],
    &["check", "hopf", "--hseq", "0,1,2,3", "--n", "2"],
    &[
        "check",
        "duality",
        "--map",
        "catalog:togliatti",
        "--order",
        "2",
    ],
    &["catalog"],
];

#[test]
fn spec_examples() {
    let out = osc(&[
        "dim",
        "--map",
        "catalog:togliatti",
        "--order",
        "2",
        "--point",
        "1,1",
    ]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "dim T(2) = 4\n"));
    let out = osc(&["wronskian", "--map", "catalog:rnc3"]);
    assert_eq!(out.stdout, "W = 12\nno hyperosculating points\n");
    let out = osc(&["chern", "--n", "2", "--d", "3", "--m", "2"]);
    assert_eq!(out.stdout.lines().next(), Some("1 + 6h + 15h^2"));
}

#[test]
fn exit_codes() {
    assert_eq!(osc(&["bogus"]).code, 2);
    assert_eq!(
        osc(&["dim", "--map", "catalog:togliatti", "--order", "2"]).code,
        2
    );
    assert_eq!(
        osc(&[
            "dim",
            "--map",
            "catalog:nothing",
            "--order",
            "2",
            "--point",
            "1"
        ])
        .code,
        2
    );
    assert_eq!(
        osc(&[
            "dim",
            "--map",
            "catalog:togliatti",
            "--order",
            "2",
            "--point",
            "1,x"
        ])
        .code,
        2
    );
    assert_eq!(
        osc(&[
            "dim",
            "--map",
            "catalog:togliatti",
            "--order",
            "2",
            "--point",
            "1"
        ])
        .code,
        2
    );
    // lifting vanishes at the origin
    let out = osc(&[
        "dim",
        "--map",
        "catalog:togliatti",
        "--order",
        "2",
        "--point",
        "0,0",
    ]);
    assert_eq!(out.code, 1, "{}", out.stderr);
    assert_eq!(osc(&["wronskian", "--map", "catalog:togliatti"]).code, 1);
    assert_eq!(
        osc(&["check", "lanteri", "--map", "catalog:veronese-2-2"]).code,
        1
    );
    assert_eq!(
        osc(&["check", "main", "--map", "catalog:rnc3", "--order", "2"]).code,
        1
    );
    assert_eq!(osc(&["--help"]).code, 0);
}

#[test]
fn json_outputs_match_schema() {
    let validator = schema();
    for args in COMMANDS {
        let doc = osc_json(args);
        let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}

#[test]
fn schema_rejects_malformed_documents() {
    let validator = schema();
    let mut doc = osc_json(COMMANDS[10]);
    doc["result"]["verdict"] = Value::from("maybe");
    assert!(!validator.is_valid(&doc));
    let mut doc = osc_json(COMMANDS[0]);
    doc.as_object_mut().unwrap().remove("trace");
    assert!(!validator.is_valid(&doc));
}

#[test]
fn json_is_deterministic() {
    for args in COMMANDS {
        let mut full = args.to_vec();
        full.extend(["--json", "--seed", "5"]);
        assert_eq!(osc(&full).stdout, osc(&full).stdout, "{args:?}");
    }
}

#[test]
fn json_agrees_with_text() {
    let args = [
        "dim",
        "--map",
        "catalog:togliatti",
        "--order",
        "2",
        "--point",
        "2,3",
    ];
    let doc = osc_json(&args);
    let dim = doc["result"]["dim"].as_i64().unwrap();
    assert_eq!(osc(&args).stdout, format!("dim T(2) = {dim}\n"));

    let args = ["generic-dim", "--map", "catalog:scroll-2-3", "--order", "3"];
    let doc = osc_json(&args);
    let dim = doc["result"]["dim"].as_i64().unwrap();
    assert_eq!(osc(&args).stdout, format!("generic dim T(3) = {dim}\n"));

    let args = ["chern", "--n", "3", "--d", "5", "--m", "2"];
    let doc = osc_json(&args);
    assert_eq!(
        osc(&args).stdout.lines().next().unwrap(),
        doc["result"]["chern_class_text"].as_str().unwrap()
    );

    let args = [
        "hseq",
        "--map",
        "catalog:togliatti",
        "--order",
        "2",
        "--point",
        "1,1",
    ];
    let doc = osc_json(&args);
    assert_eq!(doc["result"]["h_sequence"], serde_json::json!([0, 1]));
    assert_eq!(osc(&args).stdout, "h = (0, 1)\n");
}

#[test]
fn trace_records_defaults() {
    let doc = osc_json(&["catalog"]);
    let trace: Vec<&str> = doc["trace"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(
        &trace[..3],
        &["seed = 0", "samples = 8", "sample box = [-1000, 1000]"]
    );
    assert_eq!(doc["inputs"]["seed"], Value::from(0));
}

#[test]
fn a5_rank_assertion_from_map() {
    // veronese(2,2) has r+1 = 6 = C(4,2), not C(4,2) - 1
    let doc = osc_json(&[
        "check",
        "a5",
        "--n",
        "2",
        "--d",
        "3",
        "--m",
        "2",
        "--y",
        "0",
        "--e",
        "1",
        "--map",
        "catalog:veronese-2-2",
    ]);
    assert_eq!(doc["result"]["verdict"], "not-applicable");
    let doc = osc_json(&[
        "check",
        "a5",
        "--n",
        "2",
        "--d",
        "3",
        "--m",
        "2",
        "--y",
        "0",
        "--e",
        "1",
        "--assert-rank",
    ]);
    assert_eq!(doc["result"]["verdict"], "holds");
    assert_eq!(doc["result"]["forces_hyperosculation"], true);
}

#[test]
fn map_files() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"vars": ["s"], "coords": ["1", "s^2 - 1", "s^3 - s"]}}"#
    )
    .unwrap();
    let path = f.path().to_str().unwrap();
    let out = osc(&["wronskian", "--map", path]);
    assert_eq!(
        out.stdout,
        "W = 6*s^2 + 2\nhyperosculating points at the zeros of W\n"
    );
    let doc = osc_json(&["inflect", "--map", path]);
    assert_eq!(doc["result"]["total_weight"], 3);
    assert_eq!(doc["result"]["residual"][0]["factor"], "3*s^2 + 1");

    let bad = map_from_json(r#"{"vars": ["x"], "coords": ["x**2"]}"#).unwrap_err();
    assert!(bad.to_string().contains("column 3"), "{bad}");
    assert_eq!(bad.exit_code(), 2);
    assert!(map_from_json(r#"{"vars": ["1x"], "coords": ["1"]}"#).is_err());
    assert!(map_from_json(r#"{"vars": ["x", "x"], "coords": ["1"]}"#).is_err());
    // dependent coordinates are a domain error
    let dep = map_from_json(r#"{"vars": ["x"], "coords": ["x", "2*x"]}"#).unwrap_err();
    assert_eq!(dep.exit_code(), 1);
    let scroll =
        map_from_json(r#"{"vars": ["t", "u"], "coords": ["1", "t", "u", "t*u"], "bundle": true}"#)
            .unwrap();
    assert!(scroll.is_bundle_chart());
}

#[test]
fn binary_exit_status() {
    let exe = env!("CARGO_BIN_EXE_osc");
    let out = Command::new(exe)
        .args([
            "dim",
            "--map",
            "catalog:togliatti",
            "--order",
            "2",
            "--point",
            "1,1",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "dim T(2) = 4\n");
    let out = Command::new(exe)
        .args(["dim", "--order", "x"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(exe)
        .args(["wronskian", "--map", "catalog:scroll-1-1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

fn poly(nvars: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec(
        (prop::collection::vec(0u32..4, nvars), -20i64..=20, 1i64..=6),
        0..7,
    )
    .prop_map(move |terms| {
        MPoly::from_terms(
            nvars,
            terms
                .into_iter()
                .map(|(e, a, b)| (e, Rat::new(a.into(), b.into()))),
        )
    })
}

proptest! {
    #[test]
    fn print_parse_round_trip(nvars in 1usize..5, seed_poly in poly(4)) {
        let p = MPoly::from_terms(
            nvars,
            seed_poly.terms().map(|(m, c)| (m.exponents()[..nvars].to_vec(), c.clone())),
        );
        let names = default_var_names(nvars);
        let printed = p.to_string();
        prop_assert_eq!(parse_poly(&printed, &names).unwrap(), p.clone());
        let custom: Vec<String> = (0..nvars).map(|i| format!("v_{i}")).collect();
        let printed = p.display_with(&custom).to_string();
        prop_assert_eq!(parse_poly(&printed, &custom).unwrap(), p);
    }

    #[test]
    fn parser_ignores_whitespace(p in poly(2)) {
        let names = default_var_names(2);
        let spaced: String = p
            .to_string()
            .chars()
            .map(|c| if "+-*/^()".contains(c) { format!("  {c}\t") } else { c.to_string() })
            .collect();
        prop_assert_eq!(parse_poly(&spaced, &names).unwrap(), p);
    }
}
