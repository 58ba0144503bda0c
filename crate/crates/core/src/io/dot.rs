//! Graphviz output for links and LOTs.

use crate::complex::{LinkGraph, TwoComplex};
use crate::curvature::AngleAssignment;
use crate::lot::Lot;
use crate::rational::{format_q, int};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Nodes are edge ends, edges are corners labeled `cell:position`. With
/// angles, each corner also shows its angle and angle-0 corners are dashed.
pub fn export_link_dot(x: &TwoComplex, g: &LinkGraph, angles: Option<&AngleAssignment>) -> String {
    let mut out = format!(
        "graph {} {{\n",
        quote(&format!("lk({})", x.vertices()[g.base]))
    );
    for n in &g.nodes {
        out.push_str(&format!("  {};\n", quote(&x.node_name(*n))));
    }
    for c in &g.corners {
        let [p, q] = c.ends;
        let mut label = format!("{}:{}", x.cells()[c.at.cell].name, c.at.position);
        let mut style = String::new();
        if let Some(a) = angles {
            let w = a.get(c.at);
            label.push_str(&format!(" ({})", format_q(&w)));
            style = if w == int(0) {
                ", style=dashed"
            } else {
                ", style=solid"
            }
            .to_string();
        }
        out.push_str(&format!(
            "  {} -- {} [label={}{}];\n",
            quote(&x.node_name(p)),
            quote(&x.node_name(q)),
            quote(&label),
            style
        ));
    }
    out.push_str("}\n");
    out
}

/// Vertices as nodes, edges as arrows labeled `name/label`.
pub fn export_lot_dot(l: &Lot) -> String {
    let mut out = String::from("digraph lot {\n");
    for v in l.vertices() {
        out.push_str(&format!("  {};\n", quote(v)));
    }
    for e in l.edges() {
        let v = |i: usize| quote(&l.vertices()[i]);
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            v(e.source),
            v(e.target),
            quote(&format!("{}/{}", e.name, l.vertices()[e.label]))
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures::*;
    use crate::complex::link_graph;
    use crate::curvature::tests::kt_biforest;
    use crate::rational::q;

    #[test]
    fn torus_link() {
        let x = torus();
        let dot = export_link_dot(&x, &link_graph(&x, 0), None);
        assert_eq!(dot.lines().filter(|l| l.ends_with("\";")).count(), 4);
        assert_eq!(dot.matches(" -- ").count(), 4);
        assert_eq!(dot, export_link_dot(&x, &link_graph(&x, 0), None));
    }

    #[test]
    fn kt_link_styled_by_angle() {
        let x = kt();
        let z = kt_biforest(&x).to_angles();
        let dot = export_link_dot(&x, &link_graph(&x, 0), Some(&z));
        assert_eq!(dot.matches("style=dashed").count(), 4);
        assert_eq!(dot.matches("style=solid").count(), 4);
        let half = AngleAssignment::uniform(&x, q(1, 2));
        assert!(export_link_dot(&x, &link_graph(&x, 0), Some(&half)).contains("(1/2)"));
    }

    #[test]
    fn empty_link() {
        let x = one_vertex(&[], &[]);
        assert_eq!(
            export_link_dot(&x, &link_graph(&x, 0), None),
            "graph \"lk(v)\" {\n}\n"
        );
    }
}
