use cremona_core::cremona::CremonaMap;
use cremona_core::jonquieres::JonqElement;
use cremona_core::linsys::{ChainReport, Classification};
use cremona_core::pencil::PencilReport;
use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn kit(args: &[&str]) -> cremona_cli::Output {
    kit_stdin(args, "")
}

fn kit_stdin(args: &[&str], stdin: &str) -> cremona_cli::Output {
    let mut argv = vec!["cremona-kit"];
    argv.extend_from_slice(args);
    cremona_cli::run(argv, &mut stdin.as_bytes())
}

fn json_of(out: &cremona_cli::Output) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

#[test]
fn genus_of_geiser_sextic() {
    let out = kit(&["genus", "--input", &data("geiser.json")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(json_of(&out)["genus"], 3);
}

#[test]
fn bertini_chain_round_trips() {
    let out = kit(&["adjoint-chain", "--input", &data("bertini.json")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r: ChainReport = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(r.classification, Classification::EllipticPencil);
    assert_eq!(r.steps.len(), 2);
    assert_eq!(serde_json::to_value(&r).unwrap(), json_of(&out));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["adjoint-chain", "--input"],
        vec!["classify", "--input"],
        vec!["genus", "--input"],
    ] {
        let mut a = args.clone();
        let path = data("bertini.json");
        a.push(&path);
        let first = kit(&a);
        let second = kit(&a);
        assert_eq!(first.stdout, second.stdout);
    }
    let a = kit(&["pencil-enum", "--max", "6"]);
    let b = kit(&["pencil-enum", "--max", "6"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn classify_accepts_a_linear_system() {
    let out = kit(&["classify", "--json", r#"{"degree":6,"mults":{"a":2,"b":2,"c":2,"d":2,"e":2,"f":2,"g":2}}"#]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(json_of(&out)["class"], "EllipticNet");
}

#[test]
fn stdin_input() {
    let src = std::fs::read_to_string(data("geiser.json")).unwrap();
    let out = kit_stdin(&["genus", "--input", "-"], &src);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(json_of(&out)["genus"], 3);
}

#[test]
fn malformed_json_exits_1_with_position() {
    let out = kit(&["genus", "--json", "{\"degree\": 6,\n \"singularities\": [}"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("malformed JSON"), "{}", out.stderr);
    assert!(out.stderr.contains("line 2"), "{}", out.stderr);
}

#[test]
fn schema_violation_names_the_field() {
    let out = kit(&["genus", "--json", r#"{"degree":6,"singularities":[{"label":"p","mult":"two"}]}"#]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("singularities[0].mult"), "{}", out.stderr);
}

#[test]
fn bad_flags_exit_1() {
    assert_eq!(kit(&["no-such-command"]).code, 1);
    assert_eq!(kit(&["genus"]).code, 1);
    assert_eq!(kit(&["--help"]).code, 0);
}

#[test]
fn invalid_curve_exits_2() {
    // multiplicity equal to the degree
    let out = kit(&["genus", "--json", r#"{"degree":3,"singularities":[{"label":"p","mult":3}]}"#]);
    assert_eq!(out.code, 2, "{}", out.stderr);
    let out = kit(&["validate", "--json", r#"{"degree":3,"singularities":[{"label":"p","mult":3}]}"#]);
    assert_eq!(out.code, 2);
    assert_eq!(json_of(&out)["passed"], false);
}

#[test]
fn validate_checks_the_polynomial() {
    let out = kit(&["validate", "--input", &data("two_triple_points.json")]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert_eq!(json_of(&out)["genus"], 4);
}

#[test]
fn phi_squared_is_identity() {
    let out = kit(&["map-compose", "--input", &data("phi_squared.json")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = json_of(&out);
    assert_eq!(v["is_identity"], true);
    let m: CremonaMap = serde_json::from_value(v).unwrap();
    assert!(m.is_identity());
}

#[test]
fn map_fixcheck_negative_exits_2() {
    let out = kit(&["map-fixcheck", "--input", &data("phi_fixes_line.json")]);
    assert_eq!(out.code, 0);
    let src = std::fs::read_to_string(data("phi_fixes_line.json")).unwrap();
    let mut v: Value = serde_json::from_str(&src).unwrap();
    // the line y = 0 is not fixed pointwise
    v["curve"] = serde_json::json!([[[0, 1, 0], "1"]]);
    let out = kit(&["map-fixcheck", "--json", &v.to_string()]);
    assert_eq!(out.code, 2);
    assert_eq!(json_of(&out)["fixes"], false);
}

#[test]
fn jonquieres_commands() {
    let out = kit(&["jonq-order", "--input", &data("jonq_involution.json")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(json_of(&out)["order"], "2");

    let out = kit(&["jonq-mul", "--input", &data("jonq_mul.json")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let p: JonqElement = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(p.order(), cremona_core::PglOrder::One);

    let out = kit(&["jonq-fix-check", "--input", &data("jonq_generic.json")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = json_of(&out);
    assert_eq!(v["identity_holds"], true);
    assert_eq!(v["map_fixes_curve"], true);

    let out = kit(&["jonq-order", "--json", r#"{"matrix":{"a11":{"num":[[[0],"2"]]},"a12":{"num":[[[0],"-1"]]},"a21":{"num":[[[0],"1"]]},"a22":{"num":[[[0],"1"]]}}}"#]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(json_of(&out)["order"], "6");
}

#[test]
fn rejects_bad_h() {
    let out = kit(&["jonq-order", "--json", r#"{"h":[[[2],"1"]],"a1":{"num":[]},"a2":{"num":[[[0],"1"]]}}"#]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("even degree"), "{}", out.stderr);
}

#[test]
fn pencil_commands() {
    let out = kit(&["pencil-check", "--n", "3", "--mults", "2,1,1,1,1,1"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r: PencilReport = serde_json::from_str(&out.stdout).unwrap();
    assert!(r.valid);

    let out = kit(&["pencil-check", "--n", "3", "--mults", "1,1,1", "--nodes", "1"]);
    assert_eq!(out.code, 2);

    let out = kit(&["pencil-check", "--n", "2", "--mults", "1,1,1,1", "--nodes", "1,1"]);
    assert_eq!(out.code, 0);
    assert_eq!(json_of(&out)["sextic_free_intersection"], 8);

    let out = kit(&["pencil-enum", "--max", "6"]);
    assert_eq!(out.code, 0);
    assert_eq!(json_of(&out)["count"], 14);
    assert_eq!(kit(&["pencil-enum", "--max", "9"]).code, 2);
}

#[test]
fn examples_corpus_passes() {
    let out = kit(&["examples"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let v = json_of(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["failed"], 0);
    assert!(v["entries"].as_array().unwrap().len() >= 10);
}

#[test]
fn text_format() {
    let out = kit(&["--format", "text", "adjoint-chain", "--input", &data("bertini.json")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("EllipticPencil"), "{}", out.stdout);
}

#[test]
fn binary_honours_degree_cap() {
    let bin = env!("CARGO_BIN_EXE_cremona-kit");
    let run = |cap: &str| {
        Command::new(bin)
            .args(["map-compose", "--input", &data("phi_squared.json")])
            .env("CREMONA_KIT_MAX_DEGREE", cap)
            .output()
            .unwrap()
    };
    let ok = run("24");
    assert_eq!(ok.status.code(), Some(0));
    let capped = run("3");
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("cap"));
    assert_eq!(run("lots").status.code(), Some(1));
}
