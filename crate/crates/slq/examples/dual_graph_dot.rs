//! Dual graphs in Graphviz DOT. The F₃ ∪ F₁ case with intersecting
//! directrices, after a Type II and a Type I flip, shows the chain
//! (−1)—(−2)—(−5)—(−1)—(−2)—(−2) across both new points.
//!
//! ```bash
//! cargo run --example dual_graph_dot > xi.dot && dot -Tsvg xi.dot > xi.svg
//! ```

use slq::{export_dot, input_pair, type1_flip, type2_flip, F3F1Directrices, FlipInput, InputCase};

fn main() -> slq::Result<()> {
    let case = InputCase::F3F1(F3F1Directrices::Intersecting { f_tangent: false, f_component: None });
    let (p, _) = type2_flip(&FlipInput::type2(input_pair(&case)?, "sigma1").with_c("sigma2"))?;
    let (p, _) = type1_flip(&FlipInput::type1(p, "sigma2").with_c("H").at_p(&["Fq"]))?;
    print!("{}", export_dot(&p)?);
    Ok(())
}
