//! Reads a pair document, flips it, and writes the result back out; then
//! shows how a malformed document is reported.
//!
//! ```bash
//! cargo run --example pair_document
//! ```

use slq::io::DocumentError;
use slq::{flip, parse_pair, render_pair, FlipInput, FlipKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/f3f3.toml");
    let pair = parse_pair(&std::fs::read_to_string(path)?)?;
    let (flipped, _) = flip(&FlipInput::new(pair, "sigma1", FlipKind::TypeII).with_c("H2"))?;
    print!("{}", render_pair(&flipped));

    let broken = "[[component]]\nid = \"X\"\nmodel_rank = 1\n\n[[component.curve]]\nlabel = \"L\"\nself_int = 0.5\n";
    match parse_pair(broken) {
        Err(e @ DocumentError::Parse(_)) => println!("\n# rejected: {e}"),
        other => println!("\n# unexpected: {other:?}"),
    }
    Ok(())
}
