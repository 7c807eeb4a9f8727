//! Trigonal cover calculus: discriminants of cubic forms, the t^{4n}
//! factor of a non-flat family, log canonical thresholds, and placing a
//! cover in the case list.
//!
//! ```bash
//! cargo run --example cover_calculus
//! ```

use slq::cover::{branch_decompose, classify_cover, discriminant, hassett_stable, lct_a, slc_check, CoverDescriptor, CubicForm, Poly};
use slq::{InputCase, Rat};

fn main() -> slq::Result<()> {
    let f = CubicForm::new(Poly::from_ints(&[0, 1]), Poly::from_ints(&[0, 0, 1]), Poly::from_ints(&[0, -1]), Poly::from_ints(&[0, 2]));
    let dec = branch_decompose(&f)?;
    println!("Δ(f) = {:?}", discriminant(&f).coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    println!("f = t^{} · f_h, Δ(f) = t^{} Δ(f_h): {}", dec.n, 4 * dec.n, dec.identity_holds);
    for n in 1..=4 {
        println!("lct(A{n}) = {}", lct_a(n));
    }
    let cover = CoverDescriptor::for_case(&InputCase::MaroniGeneral { d_singularities: vec![4] });
    println!("Hassett stable: {}", hassett_stable(&cover));
    for c in [Rat::new(2, 3), Rat::new(7, 10), Rat::new(3, 4)] {
        println!("slc at {c}: {}", slc_check(&cover, &c));
    }
    println!("classified as {}", classify_cover(&cover)?);
    Ok(())
}
