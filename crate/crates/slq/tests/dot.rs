//! Graphviz export of flipped configurations.

use slq::cases::{input_pair, F3F1Directrices, HyperellipticSub, InputCase};
use slq::dot::export_dot;
use slq::flip::{type1_flip, type2_flip, FlipInput};
use slq::io::{parse_pair, render_pair};

fn edge(dot: &str, a: &str, b: &str) -> bool {
    dot.contains(&format!("\"{a}\" -- \"{b}\" [label=\"1\"]")) || dot.contains(&format!("\"{b}\" -- \"{a}\" [label=\"1\"]"))
}

fn node(dot: &str, id: &str, label: &str) -> bool {
    dot.contains(&format!("\"{id}\" [label=\"{label}\""))
}

#[test]
fn type1_chain_is_drawn() {
    let pair = input_pair(&InputCase::HyperellipticTail(HyperellipticSub::Unramified)).unwrap();
    let (p, _) = type1_flip(&FlipInput::type1(pair, "sigma").with_c("H").at_p(&["F"])).unwrap();
    let dot = export_dot(&p).unwrap();
    assert!(node(&dot, "X.sigma", "sigma (-5)") && node(&dot, "X.sigma_E1", "sigma_E1 (-2)") && node(&dot, "X.sigma_E2", "sigma_E2 (-1)"), "{dot}");
    assert!(edge(&dot, "X.sigma", "X.sigma_E1") && edge(&dot, "X.sigma_E1", "X.sigma_E2"), "{dot}");
    assert!(dot.contains("label=\"1/9(1,2)\""), "{dot}");
}

#[test]
fn xi_chain_after_the_intersecting_flips() {
    let case = InputCase::F3F1(F3F1Directrices::Intersecting { f_tangent: false, f_component: None });
    let (p, _) = type2_flip(&FlipInput::type2(input_pair(&case).unwrap(), "sigma1").with_c("sigma2")).unwrap();
    let (p, _) = type1_flip(&FlipInput::type1(p, "sigma2").with_c("H").at_p(&["Fq"])).unwrap();
    let dot = export_dot(&p).unwrap();
    let chain = [("sigma2_E2", "-1"), ("sigma2_E1", "-2"), ("sigma2", "-5"), ("F2_E3", "-1"), ("F2_E2", "-2"), ("F2_E1", "-2")];
    for (label, s) in chain {
        assert!(node(&dot, &format!("X2.{label}"), &format!("{label} ({s})")), "{label}\n{dot}");
    }
    for w in chain.windows(2) {
        assert!(edge(&dot, &format!("X2.{}", w[0].0), &format!("X2.{}", w[1].0)), "{} -- {}\n{dot}", w[0].0, w[1].0);
    }
    assert!(dot.contains("\"X2.F2\" -- \"X1.F1\" [style=bold, label=\"glued\"]"), "{dot}");
}

#[test]
fn export_is_stable_under_document_round_trip() {
    for case in InputCase::all() {
        let p = input_pair(&case).unwrap();
        let q = parse_pair(&render_pair(&p)).unwrap();
        assert_eq!(export_dot(&p).unwrap(), export_dot(&q).unwrap(), "{case}");
    }
}
