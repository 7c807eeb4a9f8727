//! Boundary strata of the moduli space: codimensions, the test-curve
//! matrix and its symbolic determinant, and the toric polytopes of the
//! third-third chain.
//!
//! ```bash
//! cargo run --example boundary_strata
//! ```

use slq::stabilizer::{pencil_singular_count, testcurve_matrix, toric_polytope, Stratum};
use slq::{stabilize, InputCase};

fn main() -> slq::Result<()> {
    for s in [Stratum::Z0, Stratum::Z2, Stratum::Z4, Stratum::Z33, Stratum::Z11, Stratum::Z13] {
        let within = s.contained_in().map(|t| format!(" ⊂ {t}")).unwrap_or_default();
        println!("{s:<5} codimension {}{within}", s.codimension());
    }
    println!("singular members of a pencil: {}", pencil_singular_count(18, 4, 4));
    let m = testcurve_matrix();
    let det: Vec<String> = m.determinant().iter().map(|t| t.to_string()).collect();
    println!("det = {}", det.join(" + "));
    println!("invertible for every substitution: {}", m.invertible_for_all_substitutions());
    for p in toric_polytope(&stabilize(&InputCase::F3F3)?)? {
        println!("polytope {:?}", p.vertices);
    }
    Ok(())
}
