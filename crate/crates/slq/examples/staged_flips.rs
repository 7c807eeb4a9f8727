//! Staged flips: when the total space has an A_n point, the surgery runs
//! through n inserted components (topples, or an accordion of Type II
//! flips). The result never depends on n.
//!
//! ```bash
//! cargo run --example staged_flips
//! ```

use slq::{input_pair, type1_flip, type1_staged, type2_accordion, type2_flip, FlipInput, HyperellipticSub, InputCase};

fn main() -> slq::Result<()> {
    let input = FlipInput::type1(input_pair(&InputCase::HyperellipticTail(HyperellipticSub::Unramified))?, "sigma").with_c("H").at_p(&["F"]);
    let (direct, _) = type1_flip(&input)?;
    for n in 0..=3 {
        let (staged, log) = type1_staged(&input.clone().with_staging(n))?;
        println!("type I,  n = {n}: {:>2} steps, same result: {}", log.len(), staged == direct);
    }
    let input = FlipInput::type2(input_pair(&InputCase::F3F3)?, "sigma1").with_c("H2");
    let (direct, _) = type2_flip(&input)?;
    for n in 0..=3 {
        let (staged, log) = type2_accordion(&input.clone().with_staging(n))?;
        println!("type II, n = {n}: {:>2} steps, same result: {}", log.len(), staged == direct);
    }
    Ok(())
}
