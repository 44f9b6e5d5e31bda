//! DOT and JSON renderings of surfaces and their derived structures.
//!
//! JSON output is the serde form of the corresponding type
//! ([`MultibranchedSurface`], [`DualGraph`], [`BoundarySurface`],
//! [`SpineGraph`]). DOT output is meant for `dot -Tsvg`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::homology::{SpineEdgeKind, SpineGraph};
use crate::neighborhood::{BoundarySurface, DualGraph};
use crate::surface::MultibranchedSurface;

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("domain types serialize")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Vertices are labelled with the genus of their boundary component.
pub fn dual_graph_dot(g: &DualGraph) -> String {
    let mut out = String::from("graph dual {\n  node [shape=circle];\n");
    for v in &g.vertices {
        writeln!(out, "  c{} [label={}];", v.id, quote(&format!("g={}", v.genus))).unwrap();
    }
    for e in &g.edges {
        writeln!(out, "  c{} -- c{} [label={}];", e.source, e.target, quote(&e.sector.0)).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Components as boxes, each piece of `∂N` attached to its component.
pub fn boundary_dot(b: &BoundarySurface) -> String {
    let mut out = String::from("graph boundary {\n");
    for c in &b.components {
        let label = format!("component {}\\ng={} chi={}", c.id, c.genus, c.euler_characteristic);
        writeln!(out, "  c{} [shape=box, label={}];", c.id, quote(&label)).unwrap();
    }
    for (k, a) in b.piece_assignment.iter().enumerate() {
        writeln!(out, "  p{k} [shape=ellipse, label={}];", quote(&a.piece.to_string())).unwrap();
        writeln!(out, "  p{k} -- c{};", a.component).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn spine_dot(s: &SpineGraph) -> String {
    let mut out = String::from("graph spine {\n");
    for (k, v) in s.vertices.iter().enumerate() {
        writeln!(out, "  v{k} [label={}];", quote(&v.0)).unwrap();
    }
    for e in &s.edges {
        let style = match e.kind {
            SpineEdgeKind::Branch => "bold",
            SpineEdgeKind::Arc => "solid",
            SpineEdgeKind::Handle => "dashed",
        };
        writeln!(
            out,
            "  v{} -- v{} [label={}, style={style}];",
            e.source,
            e.target,
            quote(&e.tag)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Incidence picture: branches as circles, sectors as boxes, one edge per
/// prebranch labelled with its oriented degree.
pub fn surface_dot(x: &MultibranchedSurface) -> String {
    let mut out = format!("graph {} {{\n", quote(x.name().unwrap_or("mbs")));
    for b in x.branches() {
        writeln!(out, "  {} [shape=circle];", quote(&format!("branch {b}"))).unwrap();
    }
    for s in x.sectors() {
        let kind = if s.orientable { "g" } else { "k" };
        let label = format!("{}\\n{kind}={}", s.id, s.genus);
        writeln!(
            out,
            "  {} [shape=box, label={}];",
            quote(&format!("sector {}", s.id)),
            quote(&label)
        )
        .unwrap();
    }
    for s in x.sectors() {
        for c in &s.prebranches {
            writeln!(
                out,
                "  {} -- {} [label={}];",
                quote(&format!("sector {}", s.id)),
                quote(&format!("branch {}", c.branch)),
                quote(&c.oriented_degree.to_string())
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}
