//! Graphviz export of dual graphs.
//!
//! Each component is a cluster. Every curve of the model is a node
//! labelled `name (s²)`; contracted curves are dashed. Every positive
//! intersection between distinct curves is an edge labelled with its
//! multiplicity. Singular points are diamond nodes joined by dotted edges
//! to the curves through them (or over them). Double curves are joined
//! across clusters by bold edges. Everything is sorted by label, so equal
//! pairs give byte-identical output.

use std::fmt::Write as _;

use crate::error::Result;
use crate::lattice::LogPair;

fn node(component: &str, label: &str) -> String {
    format!("\"{component}.{label}\"")
}

fn escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders the dual graph of a pair in DOT.
pub fn export_dot(pair: &LogPair) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "graph pair {{").expect("string write");
    writeln!(out, "  node [shape=ellipse];").expect("string write");
    let mut comps: Vec<_> = pair.components.iter().collect();
    comps.sort_by(|a, b| a.component_id.cmp(&b.component_id));
    for comp in comps {
        let id = &comp.component_id;
        writeln!(out, "  subgraph \"cluster_{}\" {{", escape(id)).expect("string write");
        writeln!(out, "    label=\"{}\";", escape(id)).expect("string write");
        let mut curves: Vec<_> = comp.curves.iter().collect();
        curves.sort_by(|a, b| a.label.cmp(&b.label));
        for c in &curves {
            let style = if c.contracted { ", style=dashed" } else { "" };
            let s = comp.model_int(&c.label, &c.label);
            writeln!(out, "    {} [label=\"{} ({s})\"{style}];", node(id, &c.label), escape(&c.label)).expect("string write");
        }
        let mut edges: Vec<(&str, &str, String)> = comp.model_entries().filter(|(a, b, v)| a != b && v.is_positive()).map(|(a, b, v)| (a, b, v.to_string())).collect();
        edges.sort();
        for (a, b, m) in edges {
            writeln!(out, "    {} -- {} [label=\"{m}\"];", node(id, a), node(id, b)).expect("string write");
        }
        let mut points = comp.singular_points()?;
        points.sort_by(|a, b| a.id.cmp(&b.id));
        for p in points {
            let pid = node(id, &format!("@{}", p.id));
            writeln!(out, "    {pid} [shape=diamond, label=\"{}\"];", escape(&p.singularity.to_string())).expect("string write");
            let mut through: Vec<&String> = p.curves.iter().chain(p.exceptional.iter()).collect();
            through.sort();
            through.dedup();
            for l in through {
                writeln!(out, "    {pid} -- {} [style=dotted];", node(id, l)).expect("string write");
            }
        }
        writeln!(out, "  }}").expect("string write");
    }
    let mut gluings: Vec<_> = pair.gluings.iter().map(|g| (node(&g.a.component, &g.a.label), node(&g.b.component, &g.b.label))).collect();
    gluings.sort();
    for (a, b) in gluings {
        writeln!(out, "  {a} -- {b} [style=bold, label=\"glued\"];").expect("string write");
    }
    writeln!(out, "}}").expect("string write");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::{input_pair, InputCase};

    #[test]
    fn empty_pair_is_an_empty_graph() {
        assert_eq!(export_dot(&LogPair::empty()).unwrap(), "graph pair {\n  node [shape=ellipse];\n}\n");
    }

    #[test]
    fn deterministic() {
        for case in InputCase::all() {
            let p = input_pair(&case).unwrap();
            assert_eq!(export_dot(&p).unwrap(), export_dot(&p.clone()).unwrap());
        }
    }

    #[test]
    fn glued_double_curves_are_joined() {
        let dot = export_dot(&input_pair(&InputCase::F1F1).unwrap()).unwrap();
        assert!(dot.contains("\"X1.F1\" -- \"X2.F2\" [style=bold, label=\"glued\"];"), "{dot}");
    }
}
