//! Graphviz output. Arcs point down, from the larger to the smaller vertex.

use std::fmt::Write as _;

use distlat::Digraph;

/// Arcs of `g` that are neither loops nor implied by a path through a
/// vertex outside the strong components of both ends.
fn reduced_arcs(g: &Digraph) -> Vec<(usize, usize)> {
    let c = g.without_loops().transitive_closure();
    let n = g.vertex_count();
    let same = |u: usize, v: usize| u == v || (c.has_arc(u, v) && c.has_arc(v, u));
    g.arcs()
        .filter(|&(u, v)| u != v)
        .filter(|&(u, v)| {
            !(0..n).any(|w| !same(w, u) && !same(w, v) && c.has_arc(u, w) && c.has_arc(w, v))
        })
        .collect()
}

/// Length of the longest descending chain of strong components below `v`.
fn levels(g: &Digraph) -> Vec<usize> {
    let c = g.without_loops().transitive_closure();
    let n = g.vertex_count();
    let below = |v: usize, w: usize| c.has_arc(v, w) && !c.has_arc(w, v);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (0..n).filter(|&w| below(v, w)).count());
    let mut level = vec![0; n];
    for &v in &order {
        level[v] = (0..n)
            .filter(|&w| below(v, w))
            .map(|w| level[w] + 1)
            .max()
            .unwrap_or(0);
    }
    level
}

pub fn dot(name: &str, g: &Digraph, labels: &[String]) -> String {
    let mut s = format!("digraph \"{name}\" {{\n");
    s.push_str("  node [shape=plaintext];\n");
    let level = levels(g);
    let top = level.iter().copied().max().unwrap_or(0);
    for r in (0..=top).rev() {
        let members: Vec<String> = (0..g.vertex_count())
            .filter(|&v| level[v] == r)
            .map(|v| format!("\"{}\";", labels[v]))
            .collect();
        if !members.is_empty() {
            writeln!(s, "  {{ rank=same; {} }}", members.join(" ")).unwrap();
        }
    }
    for (u, v) in reduced_arcs(g) {
        writeln!(s, "  \"{}\" -> \"{}\";", labels[u], labels[v]).unwrap();
    }
    s.push_str("}\n");
    s
}
