//! Golden-file tests of the command-line interface. Set `UPDATE_GOLDEN=1` to
//! rewrite the expected outputs.

use std::path::PathBuf;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pcoho").chain(args.iter().copied());
    let code = pcoho_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn fx(name: &str) -> String {
    format!("tests/fixtures/{name}")
}

fn golden(name: &str, actual: &str) {
    let path = PathBuf::from("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden mismatch for {name}");
}

/// Runs in both formats, checks the exit code and compares both outputs.
fn case(name: &str, args: &[String], code: i32) {
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let (c, text, err) = run(&args);
    assert_eq!(c, code, "{name}: exit code (stderr: {err})");
    golden(&format!("{name}.txt"), &text);
    let mut json_args = vec!["--format", "json"];
    json_args.extend(&args);
    let (c, json, _) = run(&json_args);
    assert_eq!(c, code, "{name}: exit code in JSON mode");
    serde_json::from_str::<serde_json::Value>(&json).expect("JSON report parses");
    golden(&format!("{name}.json"), &json);
    // Determinism.
    assert_eq!(run(&json_args).1, json);
}

macro_rules! args {
    ($($a:expr),* $(,)?) => { vec![$($a.to_string()),*] };
}

#[test]
fn check_algebra() {
    case("check_sl2zero", &args!["check", "algebra", fx("sl2zero.json")], 0);
    case("check_not_poisson", &args!["check", "algebra", fx("not_poisson.json")], 1);
    case("check_rep", &args!["check", "rep", "--algebra", fx("lie2.json"), fx("lie2_adjoint.json")], 0);
}

#[test]
fn cohomology_abelian_baseline() {
    case(
        "cohomology_a2",
        &args!["cohomology", "--algebra", fx("a2.json"), "--rep", fx("trivial.json"), "--max-degree", "2"],
        0,
    );
    let (_, json, _) = run(&[
        "--format", "json", "cohomology", "--algebra", &fx("a2.json"), "--rep", &fx("trivial.json"), "--max-degree", "2",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["degrees"][1]["betti"], 2);
    assert_eq!(v["degrees"][2]["betti"], 4);
}

#[test]
fn degree_cap() {
    let (code, _, err) = run(&["cohomology", "--algebra", &fx("a2.json"), "--rep", &fx("trivial.json"), "--max-degree", "9"]);
    assert_eq!(code, 2);
    assert!(err.contains("degree cap"));
}

#[test]
fn extensions() {
    case("build_split", &args!["extension", "build-split", "--algebra", fx("lie2.json"), "--rep", fx("lie2_adjoint.json")], 0);
    case("extract_twisted", &args!["extension", "extract", "--extension", fx("twisted.json")], 0);
    // Extraction from the built extension returns the input pair.
    let (_, text, _) = run(&[
        "extension", "build-twisted", "--algebra", &fx("a2.json"), "--rep", &fx("trivial.json"), "--pair", &fx("a2_pair.json"),
    ]);
    let built = pcoho_core::io::parse(text.as_bytes()).unwrap();
    let on_disk = pcoho_core::io::parse(&std::fs::read(fx("twisted.json")).unwrap()).unwrap();
    assert_eq!(built, on_disk);
    let (_, pair, _) = run(&["extension", "extract", "--extension", &fx("twisted.json")]);
    assert_eq!(pair, std::fs::read_to_string(fx("a2_pair.json")).unwrap());
}

#[test]
fn wells_and_inducibility() {
    case("wells_incompatible", &args!["wells", "aut", "--extension", fx("split.json"), "--pair", fx("incompatible.json")], 1);
    let (_, text, _) = run(&["wells", "aut", "--extension", &fx("split.json"), "--pair", &fx("incompatible.json")]);
    assert!(text.contains("pair not in C_{mu,rho}"));
    case("wells_split", &args!["wells", "aut", "--extension", fx("split.json"), "--pair", fx("compatible.json")], 0);
    case("wells_twisted", &args!["wells", "aut", "--extension", fx("twisted.json"), "--pair", fx("scale_module.json")], 1);
    case("inducible_twisted", &args!["inducible", "aut", "--extension", fx("twisted.json"), "--pair", fx("scale_module.json")], 1);

    let lift = std::env::temp_dir().join(format!("pcoho-lift-{}.json", std::process::id()));
    let lift_s = lift.display().to_string();
    let (code, _, _) = run(&[
        "inducible", "der", "--extension", &fx("split.json"), "--pair", &fx("der_zero.json"), "--emit-lift", &lift_s,
    ]);
    assert_eq!(code, 0);
    let doc = pcoho_core::io::parse(&std::fs::read(&lift).unwrap()).unwrap();
    assert_eq!(doc.kind(), pcoho_core::io::DocKind::Map);
    std::fs::remove_file(lift).ok();
}

#[test]
fn operators_and_deformation_maps() {
    case("operator_rb1_ok", &args!["operator", "check", "--spec", fx("rb1_fixb.json"), "--map", fx("r_minus1.json")], 0);
    case("operator_rb1_fails", &args!["operator", "check", "--spec", fx("rb1_fixb.json"), "--map", fx("r_one.json")], 1);
    case("check_prototwilled", &args!["check", "prototwilled", fx("modified_fixb.json"), fx("heis_pair.json")], 0);
    let pt = fx("heis_pair.json");
    let r = fx("id3.json");
    case("defmap_check", &args!["defmap", "check", "--prototwilled", pt, "--map", r], 0);
    case("defmap_induced", &args!["defmap", "induced", "--prototwilled", pt, "--map", r], 0);
    case("defmap_twist", &args!["defmap", "twist", "--prototwilled", pt, "--map", r], 0);
    case("defmap_cohomology", &args!["defmap", "cohomology", "--prototwilled", pt, "--map", r], 0);
}

#[test]
fn deformations() {
    let pt = fx("heis_pair.json");
    let r = fx("id3.json");
    case("deform_linear", &args!["deform", "linear", "--prototwilled", pt, "--map", r, "--r1", fx("heis_r1.json")], 0);
    case("deform_formal", &args!["deform", "formal", "--prototwilled", pt, "--deformation", fx("heis_linear.json")], 0);
    case("deform_nijenhuis", &args!["deform", "nijenhuis", "--prototwilled", pt, "--map", r, "--element", "1,0,0"], 0);
    case(
        "deform_equivalence",
        &args![
            "deform", "equivalence", "--prototwilled", pt, "--deformation", fx("heis_linear.json"),
            "--other", fx("heis_constant.json"), "--element", "1,0,0"
        ],
        0,
    );
    case("deform_rigidity", &args!["deform", "rigidity", "--prototwilled", pt, "--deformation", fx("heis_linear.json")], 0);
}

#[test]
fn semiclassical_limit() {
    let c = fx("dual_split.json");
    case("semiclassical_zero", &args!["semiclassical", "--commutative", c, "--order1", fx("order1_zero.json")], 0);
    case("semiclassical_bad", &args!["semiclassical", "--commutative", c, "--order1", fx("order1_bad.json")], 1);
}

#[test]
fn usage_and_structural_errors() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["check", "algebra"]).0, 2);
    assert_eq!(run(&["check", "algebra", "tests/fixtures/missing.json"]).0, 2);
    // A representation where an algebra is expected.
    assert_eq!(run(&["check", "algebra", &fx("trivial.json")]).0, 2);
    let (code, out, _) = run(&["--format", "json", "check", "algebra", &fx("trivial.json")]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"], "parse");
    assert_eq!(run(&["--help"]).0, 0);
}
