//! Hirzebruch–Jung continued fractions and the cyclic quotient points
//! they resolve.
//!
//! ```bash
//! cargo run --example hirzebruch_jung
//! ```

use slq::singularity::{hj_chain_to_singularity, hj_expansion, hj_fraction};

fn main() -> slq::Result<()> {
    for chain in [vec![-5, -2], vec![-2], vec![-2, -2, -2], vec![-3], vec![-4], vec![-2, -5]] {
        let (n, q) = hj_fraction(&chain)?;
        println!("{chain:?} → n/q = {n}/{q} → {}", hj_chain_to_singularity(&chain)?);
    }
    println!("9/2 expands to {:?}", hj_expansion(9, 2));
    Ok(())
}
