//! Type II flips on F₃ ∪ F₃: each (−3)-directrix moves across the double
//! curve, trading a 1/3(1,1) point for a new (−1/3)-curve on the other
//! side.
//!
//! ```bash
//! cargo run --example type2_flip_f3f3
//! ```

use slq::{input_pair, type2_flip, FlipInput, InputCase};

fn main() -> slq::Result<()> {
    let pair = input_pair(&InputCase::F3F3)?;
    let (once, log) = type2_flip(&FlipInput::type2(pair.clone(), "sigma1").with_c("H2"))?;
    println!("{log}");
    for id in ["X1", "X2"] {
        println!("ρ({id}): {} → {}", pair.component(id)?.picard_rank(), once.component(id)?.picard_rank());
    }
    let (twice, _) = type2_flip(&FlipInput::type2(once, "sigma2").with_c("H1"))?;
    for s in twice.singularities()? {
        println!("{}", slq::birational::render_located(&s));
    }
    let x1 = twice.component("X1")?;
    println!("F1_E3² = {}, F1² = {}, F1_E3·F1 = {}", x1.self_int("F1_E3")?, x1.self_int("F1")?, x1.curve_int("F1_E3", "F1")?);
    Ok(())
}
