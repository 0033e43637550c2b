use std::fmt::Write;

use crate::model::SetFamily;

/// Cover pairs `(i, j)` of member indices: member `i` is strictly inside
/// member `j` with no member strictly between them.
pub fn cover_relations(family: &SetFamily) -> Vec<(usize, usize)> {
    let m = family.members();
    let mut covers = Vec::new();
    for (i, a) in m.iter().enumerate() {
        for (j, b) in m.iter().enumerate() {
            if !a.is_proper_subset_of(*b) {
                continue;
            }
            let between = m
                .iter()
                .any(|c| a.is_proper_subset_of(*c) && c.is_proper_subset_of(*b));
            if !between {
                covers.push((i, j));
            }
        }
    }
    covers
}

/// Hasse diagram as a DOT digraph, nodes in canonical family order and
/// edges pointing upward.
pub fn emit_hasse(family: &SetFamily) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, m) in family.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{m}\"];");
    }
    for (i, j) in cover_relations(family) {
        let _ = writeln!(out, "  n{i} -> n{j};");
    }
    out.push_str("}\n");
    out
}
