//! The Type I flip of the (−4)-directrix in the hyperelliptic-tail case:
//! the (−5, −2) chain contracts to a 1/9(1,2) point and the log canonical
//! class becomes ε on both new curves.
//!
//! ```bash
//! cargo run --example hyperelliptic_flip
//! ```

use slq::{input_pair, type1_flip, FlipInput, HyperellipticSub, InputCase};

fn main() -> slq::Result<()> {
    let pair = input_pair(&InputCase::HyperellipticTail(HyperellipticSub::Unramified))?;
    let (flipped, log) = type1_flip(&FlipInput::type1(pair, "sigma").with_c("H").at_p(&["F"]))?;
    println!("{log}");
    let x = flipped.component("X")?;
    for (a, b) in [("sigma_E2", "sigma_E2"), ("F", "F"), ("sigma_E2", "F")] {
        println!("{a}·{b} = {}", x.curve_int(a, b)?);
    }
    for l in ["sigma_E2", "F"] {
        println!("K·{l} = {}, D′·{l} = {}, (K + wD′)·{l} = {}", flipped.k_dot(l)?, flipped.d_dot(l)?, flipped.log_value(l)?);
    }
    println!("pullback of sigma_E2: {:?}", x.pullback("sigma_E2")?);
    Ok(())
}
