//! Independent feasibility checks for solver output.
//!
//! Nothing here calls a solver: every check rebuilds the reduced graph and
//! runs plain reachability or component counting on it.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{coreach_filtered, reach_filtered, Filter, UndirectedGraph, WeightedDigraph};
use crate::nodeset::NodeSet;
use crate::{ArcId, NodeId};

fn arc_mask(g: &WeightedDigraph, removed: &[ArcId]) -> Vec<bool> {
    let mut mask = vec![false; g.arc_count()];
    for &a in removed {
        mask[a] = true;
    }
    mask
}

/// Nodes that can reach `x` after deleting `removed_arcs` and the nodes
/// outside `alive`.
fn reaching(g: &WeightedDigraph, x: NodeId, alive: &NodeSet, removed: &[bool]) -> NodeSet {
    let n = g.node_count();
    let filter = Filter { alive: Some(alive), removed_arcs: Some(removed) };
    coreach_filtered(g, &NodeSet::singleton(n, x), filter)
}

fn reached(g: &WeightedDigraph, x: NodeId, alive: &NodeSet, removed: &[bool]) -> NodeSet {
    let n = g.node_count();
    let filter = Filter { alive: Some(alive), removed_arcs: Some(removed) };
    reach_filtered(g, &NodeSet::singleton(n, x), filter)
}

/// After deleting the arcs, no node reaches both `s` and `t`.
pub fn edge_double_cut(g: &WeightedDigraph, removed: &[ArcId], s: NodeId, t: NodeId) -> bool {
    let mask = arc_mask(g, removed);
    let all = g.all_nodes();
    s != t && reaching(g, s, &all, &mask).is_disjoint(&reaching(g, t, &all, &mask))
}

/// After deleting the nodes (never `s` or `t`), no surviving node reaches
/// both `s` and `t`.
pub fn node_double_cut(g: &WeightedDigraph, removed: &NodeSet, s: NodeId, t: NodeId) -> bool {
    if s == t || removed.contains(s) || removed.contains(t) {
        return false;
    }
    let alive = removed.complement();
    let mask = vec![false; g.arc_count()];
    reaching(g, s, &alive, &mask).is_disjoint(&reaching(g, t, &alive, &mask))
}

/// Some node reaches every node of `g` minus the deleted arcs and nodes.
pub fn has_arborescence(g: &WeightedDigraph, removed_arcs: &[ArcId], removed_nodes: &NodeSet) -> bool {
    let mask = arc_mask(g, removed_arcs);
    let alive = removed_nodes.complement();
    let target = alive.len();
    alive.iter().any(|r| reached(g, r, &alive, &mask).len() == target)
}

/// `s` and `t` cannot reach each other after deleting the arcs.
pub fn edge_bicut(g: &WeightedDigraph, removed: &[ArcId], s: NodeId, t: NodeId) -> bool {
    let mask = arc_mask(g, removed);
    let all = g.all_nodes();
    s != t && !reached(g, s, &all, &mask).contains(t) && !reached(g, t, &all, &mask).contains(s)
}

/// `s` and `t` survive and cannot reach each other after deleting the nodes.
pub fn node_bicut(g: &WeightedDigraph, removed: &NodeSet, s: NodeId, t: NodeId) -> bool {
    if s == t || removed.contains(s) || removed.contains(t) {
        return false;
    }
    let alive = removed.complement();
    let mask = vec![false; g.arc_count()];
    !reached(g, s, &alive, &mask).contains(t) && !reached(g, t, &alive, &mask).contains(s)
}

/// No `s→r`, `r→t` or `s→t` path survives the deleted arcs.
pub fn lin3cut(g: &WeightedDigraph, removed: &[ArcId], s: NodeId, r: NodeId, t: NodeId) -> bool {
    if s == r || r == t || s == t {
        return false;
    }
    let mask = arc_mask(g, removed);
    let all = g.all_nodes();
    let from_s = reached(g, s, &all, &mask);
    !from_s.contains(r) && !from_s.contains(t) && !reached(g, r, &all, &mask).contains(t)
}

/// Number of connected components of `g` minus the deleted nodes.
pub fn components_after(g: &UndirectedGraph, removed: &NodeSet) -> usize {
    g.components(Some(&removed.complement())).1
}

/// The terminals survive and lie in pairwise distinct components.
pub fn node_multiway(g: &UndirectedGraph, removed: &NodeSet, terminals: &[NodeId]) -> bool {
    if terminals.iter().any(|&x| removed.contains(x)) {
        return false;
    }
    let (comp, _) = g.components(Some(&removed.complement()));
    let mut seen: Vec<usize> = terminals.iter().map(|&x| comp[x]).collect();
    seen.sort_unstable();
    seen.windows(2).all(|w| w[0] != w[1])
}

/// `blocks` partition the node set into `k` nonempty blocks with `s`, `t`
/// in different blocks (pass `None` to skip the terminal check).
pub fn partition(n: usize, blocks: &[NodeSet], k: usize, st: Option<(NodeId, NodeId)>) -> bool {
    if blocks.len() != k || blocks.iter().any(|b| b.is_empty() || b.universe() != n) {
        return false;
    }
    let mut cover = NodeSet::new(n);
    for b in blocks {
        if !cover.is_disjoint(b) {
            return false;
        }
        cover.union_with(b);
    }
    if !cover.is_full() {
        return false;
    }
    match st {
        Some((s, t)) => !blocks.iter().any(|b| b.contains(s) && b.contains(t)),
        None => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_cut_checks() {
        // u -> s, u -> t
        let g = WeightedDigraph::unit(3, [(2, 0), (2, 1)]).unwrap();
        assert!(!edge_double_cut(&g, &[], 0, 1));
        assert!(edge_double_cut(&g, &[0], 0, 1));
        assert!(node_double_cut(&g, &NodeSet::singleton(3, 2), 0, 1));
        assert!(!node_double_cut(&g, &NodeSet::singleton(3, 0), 0, 1));
        assert!(has_arborescence(&g, &[], &NodeSet::new(3)));
        assert!(!has_arborescence(&g, &[0], &NodeSet::new(3)));
    }

    #[test]
    fn bicut_and_lin3cut_checks() {
        let g = WeightedDigraph::unit(3, [(0, 1), (1, 2)]).unwrap();
        assert!(edge_bicut(&g, &[0], 0, 2));
        assert!(!edge_bicut(&g, &[], 0, 2));
        assert!(lin3cut(&g, &[0, 1], 0, 1, 2));
        assert!(!lin3cut(&g, &[0], 0, 1, 2));
    }

    #[test]
    fn component_checks() {
        let star = UndirectedGraph::unit(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let center = NodeSet::singleton(4, 0);
        assert_eq!(components_after(&star, &center), 3);
        assert!(node_multiway(&star, &center, &[1, 2, 3]));
        assert!(!node_multiway(&star, &NodeSet::new(4), &[1, 2]));
        let blocks = [NodeSet::from_nodes(4, [0, 1]), NodeSet::from_nodes(4, [2, 3])];
        assert!(partition(4, &blocks, 2, Some((0, 2))));
        assert!(!partition(4, &blocks, 2, Some((0, 1))));
    }
}
