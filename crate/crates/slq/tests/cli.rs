//! The command line, driven in-process through `slq::cli::run`.

use std::path::PathBuf;

use slq::cli::{run, EXIT_INVALID, EXIT_OK, EXIT_PARSE, EXIT_USAGE};

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Writes `text` to a fresh file under the target temp directory.
fn scratch_file(name: &str, text: &str) -> String {
    let dir: PathBuf = std::env::temp_dir().join(format!("slq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn slq(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("slq").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn stabilize_reports_the_ninth_point() {
    let (code, out, _) = slq(&["stabilize", "hyperelliptic", "--sub", "unramified"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("1/9(1,2)"), "{out}");
    assert!(out.contains("Z4"), "{out}");
}

#[test]
fn unknown_case_is_a_usage_error() {
    let (code, _, err) = slq(&["stabilize", "f5f5"]);
    assert_eq!(code, EXIT_USAGE, "{err}");
}

#[test]
fn missing_subcommand_is_a_usage_error() {
    assert_eq!(slq(&[]).0, EXIT_USAGE);
    assert_eq!(slq(&["frobnicate"]).0, EXIT_USAGE);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = slq(&["--help"]);
    assert_eq!(code, EXIT_OK);
    for sub in ["stabilize", "flip", "classify-cover", "table", "verify", "dot", "slc-check"] {
        assert!(out.contains(sub), "{sub} missing from help:\n{out}");
    }
}

#[test]
fn table_exits_zero() {
    let (code, out, _) = slq(&["table"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().filter(|l| !l.trim().is_empty()).count() >= 8, "{out}");
    assert!(!out.contains("MISMATCH"), "{out}");
}

#[test]
fn type1_flip_of_a_document() {
    let (code, out, err) = slq(&["flip", "type1", &data("hyperelliptic_tail.toml"), "--curve", "sigma", "--along", "H", "--at-p", "F"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("# transform log"), "{out}");
    assert!(out.contains("F²=-4/9") && out.contains("sigma_E2²=-4/9"), "{out}");
    assert!(out.contains("[[component]]"), "{out}");
}

#[test]
fn type1_flip_of_a_minus_three_curve_fails_validation() {
    // The directrix of F₃ is a (−3)-curve: a Type II curve, not Type I.
    let (code, _, err) = slq(&["flip", "type1", &data("f3f3.toml"), "--curve", "sigma1", "--along", "H1"]);
    assert_eq!(code, EXIT_INVALID, "{err}");
    assert!(err.contains("self-intersection −4 required"), "{err}");
}

#[test]
fn decimal_numbers_are_a_parse_error() {
    let text = std::fs::read_to_string(data("hyperelliptic_tail.toml")).unwrap().replacen("self_int = \"-4\"", "self_int = -0.444", 1);
    let path = scratch_file("decimal.toml", &text);
    let (code, _, err) = slq(&["dot", &path]);
    assert_eq!(code, EXIT_PARSE, "{err}");
    assert!(err.contains("decimal"), "{err}");
}

#[test]
fn inconsistent_document_is_a_validation_error() {
    let text = std::fs::read_to_string(data("hyperelliptic_tail.toml")).unwrap().replacen("curves = [\"F\", \"H\"]", "curves = [\"F\", \"G\"]", 1);
    let path = scratch_file("dangling.toml", &text);
    let (code, _, err) = slq(&["dot", &path]);
    assert_eq!(code, EXIT_INVALID, "{err}");
    assert!(err.contains("component[0].meet[0]"), "{err}");
}

#[test]
fn missing_file_is_a_usage_error() {
    assert_eq!(slq(&["dot", "/nonexistent/pair.toml"]).0, EXIT_USAGE);
}

#[test]
fn dot_of_a_document() {
    let (code, out, _) = slq(&["dot", &data("f3f3.toml")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("graph pair {"), "{out}");
    assert!(out.contains("label=\"glued\""), "{out}");
}

#[test]
fn classify_cover_names_the_case_and_row() {
    let (code, out, err) = slq(&["classify-cover", &data("third_third.cover.toml")]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("row 5"), "{out}");
}

#[test]
fn slc_check_reads_exact_weights() {
    let cover = data("maroni_general_a4.cover.toml");
    let (code, out, _) = slq(&["slc-check", &cover, "--weight", "2/3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("weight 2/3: slc"), "{out}");
    let (_, out, _) = slq(&["slc-check", &cover, "--weight", "3/4"]);
    assert!(out.contains("not slc"), "{out}");
    assert_eq!(slq(&["slc-check", &cover, "--weight", "0.7"]).0, EXIT_USAGE);
}

#[test]
fn verify_reports_each_criterion() {
    let (code, out, _) = slq(&["verify"]);
    let lines: Vec<&str> = out.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).collect();
    assert_eq!(lines.len(), 11, "{out}");
    assert!(out.contains("criteria pass"), "{out}");
    let all_pass = lines.iter().all(|l| l.starts_with("PASS"));
    assert_eq!(code, if all_pass { EXIT_OK } else { EXIT_INVALID });
}
