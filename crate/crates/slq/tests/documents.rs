//! Pair documents: round trips, located errors, and exact numbers only.

use slq::cases::{input_pair, InputCase};
use slq::io::{parse_pair, render_pair, DocumentError};

fn sample() -> String {
    std::fs::read_to_string(format!("{}/data/hyperelliptic_tail.toml", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn shipped_documents_parse() {
    for name in ["hyperelliptic_tail.toml", "f3f3.toml", "f3f1_intersecting.toml"] {
        let text = std::fs::read_to_string(format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap();
        parse_pair(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn shipped_document_matches_the_case() {
    assert_eq!(parse_pair(&sample()).unwrap(), input_pair(&InputCase::HyperellipticTail(slq::cases::HyperellipticSub::Unramified)).unwrap());
}

#[test]
fn every_input_pair_round_trips() {
    for case in InputCase::all() {
        let pair = input_pair(&case).unwrap();
        assert_eq!(parse_pair(&render_pair(&pair)).unwrap(), pair, "{case}");
    }
}

#[test]
fn rendering_is_deterministic() {
    let pair = input_pair(&InputCase::F3F3).unwrap();
    assert_eq!(render_pair(&pair), render_pair(&parse_pair(&render_pair(&pair)).unwrap()));
}

#[test]
fn integers_are_accepted_as_fractions() {
    let text = sample().replacen("self_int = \"-4\"", "self_int = -4", 1);
    assert_eq!(parse_pair(&text).unwrap(), parse_pair(&sample()).unwrap());
}

#[test]
fn decimals_are_parse_errors() {
    let text = sample().replacen("self_int = \"-4\"", "self_int = -4.0", 1);
    match parse_pair(&text) {
        Err(DocumentError::Parse(m)) => assert!(m.contains("decimal"), "{m}"),
        other => panic!("{other:?}"),
    }
    let text = sample().replacen("self_int = \"-4\"", "self_int = \"-0.5\"", 1);
    assert!(matches!(parse_pair(&text), Err(DocumentError::Parse(_))));
}

#[test]
fn unknown_fields_are_parse_errors() {
    let text = sample().replacen("model_rank = 2", "model_rank = 2\ncolour = \"red\"", 1);
    assert!(matches!(parse_pair(&text), Err(DocumentError::Parse(_))));
}

#[test]
fn dangling_references_are_located() {
    let text = sample().replacen("curves = [\"F\", \"H\"]", "curves = [\"F\", \"G\"]", 1);
    match parse_pair(&text) {
        Err(DocumentError::Invalid(problems)) => assert!(problems.iter().any(|p| p.starts_with("component[0].meet[0].curves")), "{problems:?}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn inconsistent_numbers_are_validation_errors() {
    let text = sample().replacen("self_int = \"-4\"", "self_int = \"-3\"", 1);
    match parse_pair(&text) {
        Err(DocumentError::Invalid(problems)) => assert!(!problems.is_empty()),
        other => panic!("{other:?}"),
    }
}
