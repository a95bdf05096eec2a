//! Deterministic Graphviz output. Emit-only.

use std::fmt::Write;

use crate::bitset::BitSet;
use crate::error::Result;
use crate::multirel::{Multirelation, SigmaRelation};
use crate::order::FinitePoset;
use crate::relations::BinaryRelation;
use crate::semilattice::FiniteSemilattice;
use crate::sspace::FiniteSpace;

fn hasse_body(out: &mut String, poset: &FinitePoset, label: impl Fn(usize) -> String) {
    for x in 0..poset.size() {
        let _ = writeln!(out, "  n{x} [label=\"{}\"];", label(x));
    }
    for (x, y) in poset.covers() {
        let _ = writeln!(out, "  n{x} -> n{y};");
    }
}

/// Hasse diagram, smaller elements at the bottom.
pub fn hasse(poset: &FinitePoset) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=circle];\n");
    hasse_body(&mut out, poset, |x| x.to_string());
    out.push_str("}\n");
    out
}

pub fn semilattice(a: &FiniteSemilattice) -> String {
    let mut out = String::from("digraph semilattice {\n  rankdir=BT;\n  node [shape=circle];\n");
    hasse_body(&mut out, a.order(), |x| {
        if x == a.top() {
            format!("{x} (1)")
        } else {
            x.to_string()
        }
    });
    out.push_str("}\n");
    out
}

/// Hasse diagram of `⊒`, each point annotated with the subbase members
/// containing it.
pub fn space(space: &FiniteSpace) -> Result<String> {
    let order = space.dual_specialization()?;
    let k = space.subbase();
    let mut out = String::from("digraph space {\n  rankdir=BT;\n  node [shape=box];\n");
    hasse_body(&mut out, &order, |x| {
        let members: Vec<String> = (0..k.len())
            .filter(|&i| k[i].contains(x))
            .map(|i| format!("K{i}"))
            .collect();
        format!("{x} | {}", members.join(" "))
    });
    for (i, u) in k.iter().enumerate() {
        let _ = writeln!(out, "  // K{i} = {u}");
    }
    out.push_str("}\n");
    Ok(out)
}

/// Source and target points in two clusters, one arc per pair.
pub fn relation(t: &BinaryRelation) -> String {
    let mut out = String::from("digraph relation {\n  rankdir=LR;\n");
    for (name, n) in [
        ("source", t.source().points()),
        ("target", t.target().points()),
    ] {
        let prefix = &name[..1];
        let _ = writeln!(out, "  subgraph cluster_{name} {{\n    label=\"{name}\";");
        for x in 0..n {
            let _ = writeln!(out, "    {prefix}{x} [label=\"{x}\"];");
        }
        out.push_str("  }\n");
    }
    for [x, y] in t.pairs() {
        let _ = writeln!(out, "  s{x} -> t{y};");
    }
    out.push_str("}\n");
    out
}

fn fibers(name: &str, points: usize, fiber: impl Fn(usize) -> Vec<BitSet>) -> String {
    let mut out = format!("digraph {name} {{\n  node [shape=record];\n");
    for x in 0..points {
        let sets: Vec<String> = fiber(x)
            .iter()
            .map(|s| s.to_string().replace('{', "\\{").replace('}', "\\}"))
            .collect();
        let _ = writeln!(out, "  x{x} [label=\"{x} | {}\"];", sets.join(" | "));
    }
    out.push_str("}\n");
    out
}

/// One record node per point listing its fiber.
pub fn multirelation(r: &Multirelation) -> String {
    fibers("multirelation", r.space().points(), |x| r.fiber_sets(x))
}

pub fn sigma_relation(g: &SigmaRelation) -> String {
    fibers("sigma_relation", g.space().points(), |x| g.fiber_sets(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::dual_space;

    #[test]
    fn chain_has_two_edges() {
        let dot = hasse(&FinitePoset::chain(3));
        assert_eq!(dot.matches("->").count(), 2);
        assert_eq!(dot, hasse(&FinitePoset::chain(3)));
    }

    #[test]
    fn diamond_dual_is_antichain() {
        let d = dual_space(&FiniteSemilattice::diamond());
        let dot = space(&d.space).unwrap();
        assert_eq!(dot.matches("->").count(), 0);
        assert_eq!(dot.matches("[label=").count(), 2);
    }

    #[test]
    fn relation_clusters() {
        let d = dual_space(&FiniteSemilattice::chain(3));
        let sq = BinaryRelation::specialization(d.space.clone()).unwrap();
        let dot = relation(&sq);
        assert!(dot.contains("cluster_source") && dot.contains("cluster_target"));
        assert_eq!(dot.matches("->").count(), sq.pairs().len());
    }
}
