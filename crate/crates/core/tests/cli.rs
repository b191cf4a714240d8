use std::path::PathBuf;
use std::process::Command;

use gorlab::cli::parse::{compile, parse_presentation};
use gorlab::cli::{run, Outcome, SCHEMA};
use gorlab::error::Error;
use gorlab::scalar::Field;
use serde_json::Value;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn gorlab(args: &[&str]) -> Outcome {
    let mut argv = vec!["gorlab".to_string()];
    for a in args {
        argv.push(match a.strip_prefix('@') {
            Some(f) => fixture(f),
            None => a.to_string(),
        });
    }
    run(argv)
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("not json ({e}): {}", o.stdout))
}

fn ok(args: &[&str]) -> Value {
    let o = gorlab(args);
    assert_eq!(o.code, 0, "{args:?}: {}", o.stdout);
    json(&o)
}

fn invocations() -> Vec<Vec<&'static str>> {
    [
        "check @a_q.alg",
        "check @square_zero.alg",
        "check @robber.alg --at t=1",
        "check @x4_f7.alg",
        "orient @x4.alg --seed 3 --trials 4",
        "orient @square_zero.alg",
        "socle @a_q.alg",
        "socle @robber.alg --at t=2",
        "consum @x4.alg @dual.alg",
        "consum @a_q.alg @x4.alg",
        "rees @dual.alg",
        "robber",
        "robber --at t=0",
        "robber --at t=1",
        "robber --field F7 --at t=3",
        "homotopy @x4.alg --which const",
        "homotopy @x4.alg --which mv --at t=1",
        "degenerate @x4.alg",
        "degenerate @a_q.alg --at t=0",
        "points-degenerate --q 2 --seed 5",
        "points-degenerate --q 1 --field F7",
        "tensor @a_q.alg",
        "tensor @x4.alg --check commute",
        "cw --q 2",
        "cw --q 3 --field F7",
        "witt @sum_form.alg",
        "witt @x4_f7.alg",
        "embed-hyp @form3.json",
        "embed-hyp @alt_f2.json",
        "gro @hyp2.json --subspace 1,0,0,0;0,1,0,0",
        "gro @form3.json --subspace 1,0,0",
        "--pretty check @dual.alg",
        // errors
        "check nosuch.alg",
        "check @robber.alg",
        "check @a_q.alg --at t=1",
        "socle @square_zero.alg",
        "homotopy @robber.alg --which mv",
        "gro @hyp2.json --subspace 1,0",
        "frob",
        "check",
        "homotopy @x4.alg --which sideways",
    ]
    .iter()
    .map(|s| s.split(' ').collect())
    .collect()
}

#[test]
fn fat_point_is_oriented_by_the_socle_dual() {
    let v = ok(&["check", "@a_q.alg"]);
    assert_eq!(v["schema"], SCHEMA);
    assert_eq!(v["gorenstein"], "yes");
    assert_eq!(v["witness"], serde_json::json!({"y1^2": "1"}));
    assert_eq!(v["dim"], 4);
}

#[test]
fn robber_special_fiber_is_truncated_quartic() {
    let v = ok(&["robber", "--at", "t=0"]);
    let fiber = &v["fiber"];
    assert_eq!(fiber["algebra"]["basis"], serde_json::json!(["1", "x", "x^2", "x^3"]));
    assert_eq!(fiber["orientation"], serde_json::json!({"x^3": "1"}));
    let constants = fiber["algebra"]["constants"].as_array().unwrap();
    assert!(constants.iter().any(|c| c == &serde_json::json!([1, 2, 3, "1"])));
    // x * x^3 = 0
    assert!(!constants.iter().any(|c| c[0] == 1 && c[1] == 3));
}

#[test]
fn sum_orientation_has_full_signature() {
    let v = ok(&["witt", "@sum_form.alg"]);
    assert_eq!(v["signature"], 3);
    assert_eq!(v["rank"], 3);
}

#[test]
fn witt_signature_is_null_over_prime_fields() {
    let v = ok(&["witt", "@x4_f7.alg"]);
    assert_eq!(v["signature"], Value::Null);
}

#[test]
fn every_report_matches_the_schema() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    for args in invocations() {
        let o = gorlab(&args);
        let v = json(&o);
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| format!("{} at {}", e, e.instance_path())).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}\n{}", o.stdout);
        assert_eq!(v["schema"], SCHEMA);
        if o.code == 0 {
            assert!(v.get("command").is_some(), "{args:?}");
        } else {
            assert!(v.get("kind").is_some(), "{args:?}");
        }
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in invocations() {
        let a = gorlab(&args);
        let b = gorlab(&args);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn orient_is_reproducible_for_a_fixed_seed() {
    let a = ok(&["orient", "@x4.alg", "--seed", "11"]);
    let b = ok(&["orient", "@x4.alg", "--seed", "11"]);
    assert_eq!(a, b);
    assert_eq!(a["seed"], 11);
}

#[test]
fn domain_errors_exit_one_with_a_kind() {
    let o = gorlab(&["check", "nosuch.alg"]);
    assert_eq!(o.code, 1);
    assert!(json(&o)["kind"].is_string());

    let o = gorlab(&["check", "@robber.alg"]);
    assert_eq!(o.code, 1);
    assert_eq!(json(&o)["kind"], "BadParameter");

    let o = gorlab(&["homotopy", "@robber.alg", "--which", "const"]);
    assert_eq!(o.code, 1);
    assert_eq!(json(&o)["kind"], "BadFamily");
}

#[test]
fn usage_errors_exit_two() {
    for args in [vec!["frob"], vec!["check"], vec!["homotopy", "@x4.alg", "--which", "sideways"]] {
        let o = gorlab(&args);
        assert_eq!(o.code, 2, "{args:?}");
        assert_eq!(json(&o)["kind"], "UsageError");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_gorlab");
    let status = |args: &[&str]| {
        let out = Command::new(bin).args(args).output().unwrap();
        (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
    };
    let (code, out) = status(&["check", &fixture("a_q.alg")]);
    assert_eq!(code, 0);
    assert!(out.contains("\"gorenstein\":\"yes\""));
    assert_eq!(status(&["check", "nosuch.alg"]).0, 1);
    assert_eq!(status(&["frob"]).0, 2);
    let (code, out) = status(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("check"));
    assert_eq!(status(&["--version"]).0, 0);

    let dir = std::env::temp_dir().join(format!("gorlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.alg");
    std::fs::write(&bad, "vars x\nrel x^2 x\n").unwrap();
    let (code, out) = status(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kind"], "SyntaxError");
    assert_eq!(v["location"], serde_json::json!({"line": 2, "col": 9}));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn fat_point_document_compiles_to_dimension_four() {
    let text = "field Q\nvars y1 y2\nrel y1*y2\nrel y1^2 - y2^2\nrel y1^3\norient y1^2 : 1\n";
    let doc = parse_presentation(text).unwrap();
    let c = compile(&doc, None).unwrap();
    assert_eq!(c.quotient.algebra.dim(), 4);
    assert!(c.oriented().is_ok());
}

#[test]
fn square_relation_gives_dual_numbers() {
    let doc = parse_presentation("vars x\nrel x^2\n").unwrap();
    assert_eq!(doc.field, Field::Rationals);
    let c = compile(&doc, None).unwrap();
    assert_eq!(c.quotient.algebra.dim(), 2);
}

#[test]
fn repeated_variable_is_rejected() {
    let err = parse_presentation("vars x x\nrel x^2\n").unwrap_err();
    assert!(matches!(err, Error::DuplicateClause { .. }), "{err:?}");
    assert!(err.location().is_some());
}

#[test]
fn parser_errors_carry_positions() {
    let err = parse_presentation("vars x\nrel x^2 x\n").unwrap_err();
    assert!(matches!(err, Error::Syntax { line: 2, col: 9, .. }), "{err:?}");

    let err = parse_presentation("vars x\nrel x*y\n").unwrap_err();
    assert!(matches!(err, Error::UnknownVariable { ref name, line: 2, .. } if name == "y"), "{err:?}");

    let err = parse_presentation("vars x\nvars y\n").unwrap_err();
    assert!(matches!(err, Error::DuplicateClause { line: 2, .. }), "{err:?}");

    let err = parse_presentation("field F 6\nvars x\n").unwrap_err();
    assert!(err.location().is_none() || matches!(err, Error::Syntax { .. }));

    let err = parse_presentation("vars t\nfamily\n").unwrap_err();
    assert!(err.location().is_some(), "{err:?}");

    let err = parse_presentation("vars x\nrel (x + 1\n").unwrap_err();
    assert!(matches!(err, Error::Syntax { line: 2, .. }), "{err:?}");
}

#[test]
fn orientation_must_name_standard_monomials() {
    let doc = parse_presentation("vars x\nrel x^2\norient x^2 : 1\n").unwrap();
    assert!(compile(&doc, None).is_err());
}

#[test]
fn augmentation_must_be_a_point_of_the_variety() {
    let doc = parse_presentation("vars x\nrel x^2\naug x = 1\n").unwrap();
    assert!(compile(&doc, None).is_err());
}

#[test]
fn families_need_a_parameter_value() {
    let doc = parse_presentation(&std::fs::read_to_string(fixture("robber.alg")).unwrap()).unwrap();
    assert!(doc.family);
    assert!(compile(&doc, None).is_err());
    let t = Field::Rationals.from_i64(0);
    let c = compile(&doc, Some(&t)).unwrap();
    assert_eq!(c.quotient.algebra.dim(), 4);
}
