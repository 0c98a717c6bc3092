use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn gelfand(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gelfand")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = gelfand(args);
    let code = out.status.code().expect("exit code");
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)));
    (code, v)
}

fn with_input(cmd: &str, file: &str, extra: &[&str]) -> (i32, Value) {
    let path = fixture(file);
    let mut args = vec![cmd, "--input", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run_json(&args)
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn pair(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn dual_numbers_have_one_character_and_a_one_dimensional_radical() {
    let (code, v) = with_input("characters", "dual_numbers.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 1);
    assert_eq!(v["radical_dim"], 1);
    assert_eq!(v["command"], "characters");
    assert_eq!(v["seed"], 0x5EED);
    assert!(v["version"].is_string());
    assert!(v["tolerances"]["char_base"].is_number());
    let phi = &v["characters"][0];
    assert_eq!(pair(&phi[0]), (1.0, 0.0));
    assert_eq!(pair(&phi[1]), (0.0, 0.0));
}

#[test]
fn radical_reports_nilpotency_exponents() {
    let (code, v) = with_input("radical", "dual_numbers.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["radical_dim"], 1);
    assert_eq!(v["nilpotency_exponents"][0], 2);
}

#[test]
fn transform_and_interpolate_round_trip() {
    let (code, v) = with_input("transform", "dual_numbers.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(pair(&v["transform"][0]), (2.0, 1.0));
    assert_eq!(v["nilpotent"], false);
    let (code, v) = with_input("interpolate", "dual_numbers.json", &[]);
    assert_eq!(code, 0);
    assert!(v["max_error"].as_f64().unwrap() <= 1e-9);
    assert_eq!(pair(&v["element"][0]), (0.5, -0.25));
}

#[test]
fn group_z4_gives_the_four_by_four_dft() {
    let p = temp_file("z4_group.json", r#"{"abelian":[4]}"#);
    let (code, v) = run_json(&["group", "--input", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let table = &v["character_table"];
    assert_eq!(table["count"], 4);
    assert_eq!(table["radical_dim"], 0);
    assert!(v["dft_max_error"].as_f64().unwrap() <= 1e-8);
    // every value is a fourth root of unity
    for row in table["characters"].as_array().unwrap() {
        for z in row.as_array().unwrap() {
            let (re, im) = pair(z);
            let ok = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]
                .iter()
                .any(|(a, b)| (re - a).abs() < 1e-9 && (im - b).abs() < 1e-9);
            assert!(ok, "{re} {im}");
        }
    }
}

#[test]
fn builtin_and_cayley_s3_have_three_class_characters() {
    let (code, v) = run_json(&["group", "--builtin", "s3"]);
    assert_eq!(code, 0);
    assert_eq!(v["class_count"], 3);
    let (code, w) = with_input("group", "s3_cayley.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(w["character_table"]["count"], 3);
}

#[test]
fn norms_and_involution_pass_on_fixtures() {
    let (code, v) = with_input("norms", "split_quadratic.json", &["--samples", "64"]);
    assert_eq!(code, 0, "{v}");
    for block in v["norms"].as_array().unwrap() {
        assert!(block["worst_contraction_ratio"].as_f64().unwrap() <= 1.0 + 1e-9);
        assert!((block["hom_norm"].as_f64().unwrap() - 1.0).abs() <= 1e-9);
    }
    let (code, v) = with_input("involution-check", "dual_numbers.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["radical_span"]["pass"], true);
}

#[test]
fn operator_model_is_isomorphic() {
    let (code, v) = with_input("operator", "operator_diag.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["isomorphism"]["pass"], true);
    assert_eq!(v["isomorphism"]["characters"], 3);
}

#[test]
fn invalid_inputs_exit_with_two() {
    let (code, v) = with_input("validate", "non_associative.json", &[]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "validation");
    let (code, _) = with_input("operator", "operator_jordan.json", &[]);
    assert_eq!(code, 2);
    let p = temp_file("extra_key.json", r#"{"dim":1,"unit":[[1,0]],"structure_constants":[[[[1,0]]]],"colour":"red"}"#);
    let (code, v) = run_json(&["validate", "--input", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "parse");
    let (code, _) = run_json(&["validate", "--input", "/definitely/not/here.json"]);
    assert_eq!(code, 2);
    assert_eq!(gelfand(&["validate", "--seed", "zz"]).status.code(), Some(2));
}

#[test]
fn failed_certification_exits_with_one() {
    let (code, v) = with_input("characters", "quadratic_2i.json", &["--tol", "1e-30"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "property-violated");
    let (code, v) = with_input("characters", "quadratic_2i.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 2);
}

#[test]
fn table_format_is_plain_text() {
    let path = fixture("dual_numbers.json");
    let out = gelfand(&["characters", "--input", path.to_str().unwrap(), "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(serde_json::from_str::<Value>(&text).is_err());
    assert!(text.contains("characters: 1"));
    assert!(text.contains("radical_dim: 1"));
}

#[test]
fn seeds_are_echoed_in_both_spellings() {
    let path = fixture("split_quadratic.json");
    let p = path.to_str().unwrap();
    let (_, hex) = run_json(&["characters", "--input", p, "--seed", "0x10"]);
    let (_, dec) = run_json(&["characters", "--input", p, "--seed", "16"]);
    assert_eq!(hex["seed"], 16);
    assert_eq!(hex, dec);
}
