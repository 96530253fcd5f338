use std::path::PathBuf;

use bs_twist::cli::run;
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("bs-twist").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn cli_json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out, err) = cli(&full);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn assert_valid(schema_name: &str, instance: &Value) {
    let validator = jsonschema::validator_for(&schema(schema_name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:#?}\n{instance:#}");
}

#[test]
fn normalize_pinches_relator_conjugates() {
    let (code, out, _) = cli(&["normalize", "--group", "1,2", "a^-1 b a b a^-1 b^-1 a"]);
    assert_eq!((code, out.as_str()), (0, "b\n"));
    let (_, out, _) = cli(&["normalize", "--group", "2,3", "a^-1 b^2 a b^-3"]);
    assert_eq!(out, "1\n");
}

#[test]
fn normal_form_carries_to_the_right() {
    let (_, out, _) = cli(&["normalize", "--group", "1,2", "b^3 a"]);
    assert_eq!(out, "a b^6\n");
    let (_, out, _) = cli(&["normalize", "--group", "2,3", "b^3 a"]);
    assert_eq!(out, "b a b^3\n");
}

#[test]
fn equal_and_mult() {
    assert_eq!(cli(&["equal", "--group", "2,3", "a^-1 b^2 a", "b^3"]).1, "equal\n");
    assert_eq!(cli(&["equal", "--group", "2,3", "a^-1 b a", "b"]).1, "not equal\n");
    let json = cli_json(&["mult", "--group", "1,2", "a b", "b^-1 a^-1", "b"]);
    assert_eq!(json["normal_form"], "b");
}

#[test]
fn model_check_round_trips_in_every_family() {
    for (group, word) in [("1,3", "a b^2 a^-1 b"), ("-1,1", "a b a"), ("2,2", "a b^3 a^-1 b"), ("3,3", "b a^2 b^-1")] {
        let json = cli_json(&["model-check", "--group", group, word]);
        assert_eq!(json["round_trip"], true, "{group} {word}");
    }
    let (code, _, err) = cli(&["model-check", "--group", "2,3", "a"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error[wrong_family]"), "{err}");
}

#[test]
fn hom_commands_and_schema() {
    let spec = data("b22_a_squared.txt");
    let (code, out, _) = cli(&["hom-validate", "--group", "2,2", "--spec", &spec]);
    assert_eq!(code, 0);
    assert!(out.starts_with("valid endomorphism of B(2,2)"));
    let json = cli_json(&["hom-induced", "--group", "2,2", "--spec", &spec, "--window", "4"]);
    assert_valid("induced.schema.json", &json);
    assert_eq!(json["k"], "2");
    assert_eq!(json["kappa_scale"]["d"], "1");
    assert_eq!(json["kappa_scale"]["window"], 4);
    assert_eq!(json["koch_form"]["exponent"], "1");

    let json = cli_json(&["hom-induced", "--group", "1,-1", "--spec", &data("klein_a3_b2.txt")]);
    assert_valid("induced.schema.json", &json);
    assert_eq!(json["kernel_preserved"], true);
}

#[test]
fn invalid_endomorphism_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "group 2 3\na -> b\nb -> b\n").unwrap();
    let (code, _, err) = cli(&["hom-validate", "--group", "2,3", "--spec", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error[relation_violated]"), "{err}");
}

#[test]
fn spec_group_must_match_flag() {
    let (code, _, err) = cli(&["certify", "--group", "2,3", "--spec", &data("b22_a_squared.txt")]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error[group_mismatch]"), "{err}");
}

#[test]
fn malformed_spec_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "group 2 2\na => a\n").unwrap();
    let (code, _, err) = cli(&["hom-validate", "--group", "2,2", "--spec", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn kernel_and_kappa() {
    let (_, out, _) = cli(&["kernel-decompose", "--group", "1,2", "a^-1 b a b^2"]);
    assert_eq!(out, "g1^1 g0^2\n");
    assert_eq!(cli_json(&["kappa", "--group", "1,2", "a b a^-1"])["kappa"], "1/2");
    let (code, _, err) = cli(&["kappa", "--group", "1,2", "a"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error[not_in_kernel]"));
}

#[test]
fn certify_matches_golden_and_schema() {
    let json = cli_json(&["certify", "--group", "2,2", "--spec", &data("b22_a_squared.txt")]);
    assert_valid("certificate.schema.json", &json);
    let golden_path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/b22_a_squared.certificate.json");
    let golden: Value = serde_json::from_str(&std::fs::read_to_string(golden_path).unwrap()).unwrap();
    assert_eq!(json, golden);
}

#[test]
fn certify_unknown_and_verbose_attempts() {
    let json = cli_json(&["certify", "--group", "1,-1", "--spec", &data("klein_a3_b2.txt")]);
    assert_valid("certificate.schema.json", &json);
    assert_eq!(json["outcome"], "unknown");
    let (code, out, err) = cli(&["certify", "--verbose", "--group", "2,2", "--spec", &data("b22_a_squared.txt")]);
    assert_eq!(code, 0);
    assert!(err.starts_with("# config: command=certify group=B(2,2)"));
    assert!(out.contains("- exp_sum_a") && out.contains("+ kappa"), "{out}");
}

#[test]
fn coincidence_with_second_spec() {
    let json = cli_json(&[
        "coincidence",
        "--group",
        "2,2",
        "--spec",
        &data("b22_conj.txt"),
        "--psi",
        &data("b22_a_squared.txt"),
    ]);
    assert_valid("certificate.schema.json", &json);
    assert_eq!(json["outcome"], "infinite");
}

#[test]
fn abelian_group_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ab.txt");
    std::fs::write(&path, "group 1 1\na -> a\nb -> b\n").unwrap();
    let (code, _, err) = cli(&["certify", "--group", "1,1", "--spec", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error[unsupported_group]"), "{err}");
}

#[test]
fn enumerate_klein_four_classes() {
    let json = cli_json(&["enumerate", "--group", "1,-1", "--spec", &data("klein_a3_b2.txt"), "--jobs", "2"]);
    assert_valid("ball_report.schema.json", &json);
    assert_eq!(json["stable_classes"], 4);
    assert_eq!(json["stabilized"], true);
    let json = cli_json(&["enumerate", "--group", "-1,1", "--spec", &data("klein_flip.txt"), "--bounds", "u=16,v=4"]);
    assert_valid("ball_report.schema.json", &json);
    assert_eq!(json["bounds"]["u"], 16);
}

#[test]
fn enumerate_rejects_unknown_box_key() {
    let (code, _, _) = cli(&["enumerate", "--group", "1,2", "--spec", &data("b12_identity.txt"), "--bounds", "u=3"]);
    assert_eq!(code, 2);
}

#[test]
fn snf_and_power_constraint() {
    let (_, out, _) = cli(&["snf", "[[2,4],[6,8]]"]);
    assert!(out.starts_with("D = diag(2,4)") && out.ends_with("coker order: 8\n"), "{out}");
    let (_, out, _) = cli(&["power-constraint", "--group", "2,-2", "--range", "-5,5"]);
    assert_eq!(out, "{-5, -3, -1, 1, 3, 5}\n");
    let (_, out, _) = cli(&["power-constraint", "--group", "2,3", "--range", "-5,5"]);
    assert_eq!(out, "{1}\n");
    let json = cli_json(&["power-constraint", "--group", "3,3", "--range", "-2,2"]);
    assert_eq!(json["k"], serde_json::json!([-2, -1, 0, 1, 2]));
}

#[test]
fn standardize_swaps_and_negates() {
    let json = cli_json(&["standardize", "--group", "-3,2", "a b"]);
    assert_eq!(json["target"], "B(2,-3)");
    assert_eq!(json["words"][0], "a^-1 b");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cli(&["normalize", "--group", "0,1", "a"]).0, 2);
    assert_eq!(cli(&["normalize", "--group", "1,2", "a c"]).0, 2);
    assert_eq!(cli(&["frobnicate"]).0, 2);
    assert_eq!(cli(&["hom-validate", "--group", "1,2", "--spec", "/nonexistent/spec.txt"]).0, 2);
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("enumerate"));
}

#[test]
fn selftest_single_criterion() {
    let (code, out, _) = cli(&["selftest", "--criterion", "7"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("PASS"));
    assert_eq!(cli(&["selftest", "--criterion", "99"]).0, 2);
}

#[test]
fn documented_examples() {
    assert_eq!(cli(&["normalize", "--group", "2,3", "A b^2 a"]), (0, "b^3\n".into(), String::new()));
    assert_eq!(cli(&["equal", "--group", "2,3", "b^2 a", "a b^3"]), (0, "equal\n".into(), String::new()));
    let json = cli_json(&["certify", "--group", "1,2", "--spec", &data("id_b3.endo")]);
    assert_valid("certificate.schema.json", &json);
    assert_eq!(json["outcome"], "infinite");
    assert_eq!(json["certificate"]["invariant"], "exp_sum_a");
}

#[test]
fn config_line_records_the_run() {
    let (_, _, err) = cli(&["--verbose", "enumerate", "--group", "1,-1", "--spec", &data("klein_a3_b2.txt"), "--seed", "5"]);
    let line = err.lines().next().unwrap();
    assert!(line.starts_with("# config: command=enumerate group=B(1,-1) format=text bounds=default margin=2 jobs=1 seed=5"));
    assert!(line.contains("\"--seed\" \"5\""), "{line}");
}

#[test]
fn format_parse_round_trip_on_random_words() {
    let mut r = bs_twist::random::rng(0);
    for _ in 0..1000 {
        let w = bs_twist::random::random_word(&mut r, 12);
        let text = w.to_string();
        assert_eq!(bs_twist::parse_word(&text).unwrap(), w, "{text}");
    }
}
