//! Graphviz output for order diagrams and tolerance blocks.

use std::fmt::Write;

use crate::blocks::BlockLattice;
use crate::lattice::Lattice;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

fn header(out: &mut String, name: &str) {
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=box, style=rounded];\n");
}

fn cover_edges(out: &mut String, l: &Lattice) {
    for (x, y) in l.cover_pairs() {
        writeln!(out, "  n{x} -> n{y};").unwrap();
    }
}

/// Hasse diagram with cover edges pointing upwards.
pub fn hasse(l: &Lattice, name: &str) -> String {
    let mut out = String::new();
    header(&mut out, name);
    for x in l.elements() {
        writeln!(out, "  n{x} [label={}];", quote(l.label(x))).unwrap();
    }
    cover_edges(&mut out, l);
    out.push_str("}\n");
    out
}

/// The base Hasse diagram with one cluster per block.
///
/// Clusters cannot share nodes, so an element lying in several blocks is
/// drawn for real in its first block and as a dashed ghost in the others.
pub fn blocks(bl: &BlockLattice, name: &str) -> String {
    let l = bl.base();
    let mut out = String::new();
    header(&mut out, name);
    let mut placed = vec![false; l.len()];
    let mut ghosts = 0;
    for (id, block) in bl.blocks().iter().enumerate() {
        writeln!(out, "  subgraph cluster_{id} {{").unwrap();
        writeln!(out, "    label={};", quote(&bl.label(id))).unwrap();
        for &x in block.members() {
            if placed[x] {
                ghosts += 1;
                writeln!(out, "    g{id}_{x} [label={}, style=dashed];", quote(l.label(x))).unwrap();
            } else {
                placed[x] = true;
                writeln!(out, "    n{x} [label={}];", quote(l.label(x))).unwrap();
            }
        }
        out.push_str("  }\n");
    }
    cover_edges(&mut out, l);
    if ghosts > 0 {
        out.push_str("  legend [shape=note, label=\"dashed nodes repeat elements lying in several blocks\"];\n");
    }
    out.push_str("}\n");
    out
}
