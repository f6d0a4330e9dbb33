//! Weighted directed and undirected multigraphs and the cut functions on them.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::nodeset::NodeSet;
use crate::weight::{self, INFINITE};
use crate::{ArcId, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph must have at least one node")]
    Empty,
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("node {node} out of range for {n} nodes")]
    NodeOutOfRange { node: NodeId, n: usize },
    #[error("expected {expected} node weights, got {got}")]
    NodeWeightCount { expected: usize, got: usize },
    #[error("contraction groups overlap at node {0}")]
    OverlappingGroups(NodeId),
}

/// A directed arc `tail -> head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub tail: NodeId,
    pub head: NodeId,
    pub weight: u64,
}

/// Directed multigraph with nonnegative integer arc weights.
///
/// Parallel arcs are kept and counted with multiplicity; self-loops are
/// rejected. Node weights are optional and default to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDigraph {
    n: usize,
    arcs: Vec<Arc>,
    node_weights: Option<Vec<u64>>,
    labels: Option<Vec<String>>,
    out_adj: Vec<Vec<ArcId>>,
    in_adj: Vec<Vec<ArcId>>,
}

fn check_endpoints(n: usize, u: NodeId, v: NodeId) -> Result<(), GraphError> {
    for x in [u, v] {
        if x >= n {
            return Err(GraphError::NodeOutOfRange { node: x, n });
        }
    }
    if u == v {
        return Err(GraphError::SelfLoop(u));
    }
    Ok(())
}

impl WeightedDigraph {
    pub fn new<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId, u64)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (tail, head, weight) in arcs {
            check_endpoints(n, tail, head)?;
            out_adj[tail].push(list.len());
            in_adj[head].push(list.len());
            list.push(Arc { tail, head, weight });
        }
        Ok(WeightedDigraph {
            n,
            arcs: list,
            node_weights: None,
            labels: None,
            out_adj,
            in_adj,
        })
    }

    /// Unit-weight arcs.
    pub fn unit<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        Self::new(n, arcs.into_iter().map(|(u, v)| (u, v, 1)))
    }

    pub fn with_node_weights(mut self, w: Vec<u64>) -> Result<Self, GraphError> {
        if w.len() != self.n {
            return Err(GraphError::NodeWeightCount { expected: self.n, got: w.len() });
        }
        self.node_weights = Some(w);
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    #[inline]
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    #[inline]
    pub fn arc(&self, id: ArcId) -> Arc {
        self.arcs[id]
    }

    #[inline]
    pub fn out_arcs(&self, v: NodeId) -> &[ArcId] {
        &self.out_adj[v]
    }

    #[inline]
    pub fn in_arcs(&self, v: NodeId) -> &[ArcId] {
        &self.in_adj[v]
    }

    pub fn node_weights(&self) -> Option<&[u64]> {
        self.node_weights.as_deref()
    }

    pub fn node_weight(&self, v: NodeId) -> u64 {
        self.node_weights.as_ref().map_or(1, |w| w[v])
    }

    /// Node costs for the node-deletion problems (1 when unset).
    pub fn node_costs(&self) -> Vec<u64> {
        (0..self.n).map(|v| self.node_weight(v)).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn all_nodes(&self) -> NodeSet {
        NodeSet::full(self.n)
    }

    pub fn has_arc(&self, u: NodeId, v: NodeId) -> bool {
        self.out_adj[u].iter().any(|&a| self.arcs[a].head == v)
    }

    /// An arc joins `u` and `v` in either direction.
    pub fn adjacent(&self, u: NodeId, v: NodeId) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    pub fn total_finite_weight(&self) -> u64 {
        self.arcs
            .iter()
            .filter(|a| a.weight != INFINITE)
            .fold(0u64, |s, a| s.saturating_add(a.weight))
    }

    /// Same nodes, every arc reversed (arc ids preserved).
    pub fn reversed(&self) -> Self {
        let mut g = Self::new(self.n, self.arcs.iter().map(|a| (a.head, a.tail, a.weight)))
            .expect("reversal preserves validity");
        g.node_weights = self.node_weights.clone();
        g.labels = self.labels.clone();
        g
    }

    /// Same arcs with weights replaced by `f(id, arc)`.
    pub fn map_weights(&self, mut f: impl FnMut(ArcId, &Arc) -> u64) -> Self {
        let mut g = self.clone();
        for (id, a) in g.arcs.iter_mut().enumerate() {
            let w = f(id, &self.arcs[id]);
            a.weight = w;
        }
        g
    }

    /// Subgraph induced by `keep`; returns the graph and `new id -> old id`.
    pub fn induced(&self, keep: &NodeSet) -> (Self, Vec<NodeId>) {
        let old_of: Vec<NodeId> = keep.to_vec();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old_of.iter().enumerate() {
            new_of[v] = i;
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|a| keep.contains(a.tail) && keep.contains(a.head))
            .map(|a| (new_of[a.tail], new_of[a.head], a.weight));
        let mut g = Self::new(old_of.len().max(1), arcs).expect("induced subgraph is valid");
        if old_of.is_empty() {
            return (g, old_of);
        }
        if let Some(w) = &self.node_weights {
            g.node_weights = Some(old_of.iter().map(|&v| w[v]).collect());
        }
        if let Some(l) = &self.labels {
            g.labels = Some(old_of.iter().map(|&v| l[v].clone()).collect());
        }
        (g, old_of)
    }
}

/// Undirected multigraph with nonnegative integer edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    edges: Vec<Arc>,
    node_weights: Option<Vec<u64>>,
    labels: Option<Vec<String>>,
    adj: Vec<Vec<ArcId>>,
}

impl UndirectedGraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId, u64)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v, weight) in edges {
            check_endpoints(n, u, v)?;
            adj[u].push(list.len());
            adj[v].push(list.len());
            list.push(Arc { tail: u, head: v, weight });
        }
        Ok(UndirectedGraph { n, edges: list, node_weights: None, labels: None, adj })
    }

    pub fn unit<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        Self::new(n, edges.into_iter().map(|(u, v)| (u, v, 1)))
    }

    pub fn with_node_weights(mut self, w: Vec<u64>) -> Result<Self, GraphError> {
        if w.len() != self.n {
            return Err(GraphError::NodeWeightCount { expected: self.n, got: w.len() });
        }
        self.node_weights = Some(w);
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges stored as arcs `tail -- head` (`tail`, `head` in insertion order).
    #[inline]
    pub fn edges(&self) -> &[Arc] {
        &self.edges
    }

    #[inline]
    pub fn incident(&self, v: NodeId) -> &[ArcId] {
        &self.adj[v]
    }

    pub fn other_end(&self, e: ArcId, v: NodeId) -> NodeId {
        let a = self.edges[e];
        if a.tail == v {
            a.head
        } else {
            a.tail
        }
    }

    pub fn node_weights(&self) -> Option<&[u64]> {
        self.node_weights.as_deref()
    }

    pub fn node_weight(&self, v: NodeId) -> u64 {
        self.node_weights.as_ref().map_or(1, |w| w[v])
    }

    pub fn node_costs(&self) -> Vec<u64> {
        (0..self.n).map(|v| self.node_weight(v)).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn adjacent(&self, u: NodeId, v: NodeId) -> bool {
        self.adj[u].iter().any(|&e| self.other_end(e, u) == v)
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adj[v].len()
    }

    pub fn total_finite_weight(&self) -> u64 {
        self.edges
            .iter()
            .filter(|a| a.weight != INFINITE)
            .fold(0u64, |s, a| s.saturating_add(a.weight))
    }

    /// Each edge becomes a pair of opposite arcs; edge `e` maps to arcs
    /// `2e` (tail→head) and `2e+1` (head→tail).
    pub fn to_bidirected(&self) -> WeightedDigraph {
        let arcs = self
            .edges
            .iter()
            .flat_map(|a| [(a.tail, a.head, a.weight), (a.head, a.tail, a.weight)]);
        let mut g = WeightedDigraph::new(self.n, arcs).expect("valid");
        g.node_weights = self.node_weights.clone();
        g.labels = self.labels.clone();
        g
    }

    /// Subgraph induced by `keep`; returns the graph and `new id -> old id`.
    pub fn induced(&self, keep: &NodeSet) -> (Self, Vec<NodeId>) {
        let old_of: Vec<NodeId> = keep.to_vec();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old_of.iter().enumerate() {
            new_of[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|a| keep.contains(a.tail) && keep.contains(a.head))
            .map(|a| (new_of[a.tail], new_of[a.head], a.weight));
        let mut g = Self::new(old_of.len().max(1), edges).expect("induced subgraph is valid");
        if let Some(w) = &self.node_weights {
            if !old_of.is_empty() {
                g.node_weights = Some(old_of.iter().map(|&v| w[v]).collect());
            }
        }
        (g, old_of)
    }

    /// `d(X)`: weight of edges with exactly one end in `x`.
    pub fn cut_weight(&self, x: &NodeSet) -> u64 {
        weight::sum(
            self.edges
                .iter()
                .filter(|a| x.contains(a.tail) != x.contains(a.head))
                .map(|a| a.weight),
        )
    }

    /// Connected components among the nodes of `alive` (all nodes if `None`),
    /// returned as a component index per node (`usize::MAX` for dead nodes)
    /// and the component count. Components are numbered by smallest member.
    pub fn components(&self, alive: Option<&NodeSet>) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX || alive.is_some_and(|a| !a.contains(start)) {
                continue;
            }
            comp[start] = count;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u] {
                    let v = self.other_end(e, u);
                    if comp[v] == usize::MAX && alive.is_none_or(|a| a.contains(v)) {
                        comp[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }
}

/// `δ^in(X)` and `d^in(X)`.
pub fn in_cut(g: &WeightedDigraph, x: &NodeSet) -> (Vec<ArcId>, u64) {
    let ids: Vec<ArcId> = (0..g.arc_count())
        .filter(|&i| {
            let a = g.arc(i);
            !x.contains(a.tail) && x.contains(a.head)
        })
        .collect();
    let w = weight::sum(ids.iter().map(|&i| g.arc(i).weight));
    (ids, w)
}

/// `d^in(X)`.
pub fn in_degree(g: &WeightedDigraph, x: &NodeSet) -> u64 {
    weight::sum(
        g.arcs()
            .iter()
            .filter(|a| !x.contains(a.tail) && x.contains(a.head))
            .map(|a| a.weight),
    )
}

/// `d^out(X)`.
pub fn out_degree(g: &WeightedDigraph, x: &NodeSet) -> u64 {
    weight::sum(
        g.arcs()
            .iter()
            .filter(|a| x.contains(a.tail) && !x.contains(a.head))
            .map(|a| a.weight),
    )
}

/// `d(X, Y)`: weight of arcs with tail in `x` and head in `y`.
pub fn between(g: &WeightedDigraph, x: &NodeSet, y: &NodeSet) -> u64 {
    weight::sum(
        g.arcs()
            .iter()
            .filter(|a| x.contains(a.tail) && y.contains(a.head))
            .map(|a| a.weight),
    )
}

/// Arc ids with both ends in `x` (`E[X]`).
pub fn arcs_inside(g: &WeightedDigraph, x: &NodeSet) -> Vec<ArcId> {
    (0..g.arc_count())
        .filter(|&i| {
            let a = g.arc(i);
            x.contains(a.tail) && x.contains(a.head)
        })
        .collect()
}

/// Total weight of a set of arc ids.
pub fn arc_weight(g: &WeightedDigraph, arcs: &[ArcId]) -> u64 {
    weight::sum(arcs.iter().map(|&i| g.arc(i).weight))
}

/// An ordered pair of node sets with `β(A,B) = w(δ^in(A) ∪ δ^in(B))` and
/// `σ(A,B) = d^in(A) + d^in(B)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutPair {
    pub a: NodeSet,
    pub b: NodeSet,
    pub beta: u64,
    pub sigma: u64,
}

impl CutPair {
    pub fn is_uncomparable(&self) -> bool {
        self.a.is_uncomparable(&self.b)
    }

    /// Arc ids of `δ^in(A) ∪ δ^in(B)` in increasing order.
    pub fn removed_arcs(&self, g: &WeightedDigraph) -> Vec<ArcId> {
        (0..g.arc_count())
            .filter(|&i| {
                let arc = g.arc(i);
                (!self.a.contains(arc.tail) && self.a.contains(arc.head))
                    || (!self.b.contains(arc.tail) && self.b.contains(arc.head))
            })
            .collect()
    }
}

pub fn beta_sigma(g: &WeightedDigraph, a: &NodeSet, b: &NodeSet) -> CutPair {
    let mut beta = 0;
    let mut sigma = 0;
    for arc in g.arcs() {
        let into_a = !a.contains(arc.tail) && a.contains(arc.head);
        let into_b = !b.contains(arc.tail) && b.contains(arc.head);
        if into_a || into_b {
            beta = weight::add(beta, arc.weight);
        }
        if into_a {
            sigma = weight::add(sigma, arc.weight);
        }
        if into_b {
            sigma = weight::add(sigma, arc.weight);
        }
    }
    CutPair { a: a.clone(), b: b.clone(), beta, sigma }
}

/// `β(A,B)` alone.
pub fn beta(g: &WeightedDigraph, a: &NodeSet, b: &NodeSet) -> u64 {
    weight::sum(
        g.arcs()
            .iter()
            .filter(|arc| {
                (!a.contains(arc.tail) && a.contains(arc.head))
                    || (!b.contains(arc.tail) && b.contains(arc.head))
            })
            .map(|arc| arc.weight),
    )
}

/// Restrictions applied when walking a graph: dead nodes and removed arcs
/// are skipped.
#[derive(Debug, Clone, Copy, Default)]
pub struct Filter<'a> {
    pub alive: Option<&'a NodeSet>,
    pub removed_arcs: Option<&'a [bool]>,
}

impl<'a> Filter<'a> {
    pub fn nodes(alive: &'a NodeSet) -> Self {
        Filter { alive: Some(alive), removed_arcs: None }
    }

    pub fn arcs(removed: &'a [bool]) -> Self {
        Filter { alive: None, removed_arcs: Some(removed) }
    }

    #[inline]
    fn node_ok(&self, v: NodeId) -> bool {
        self.alive.is_none_or(|a| a.contains(v))
    }

    #[inline]
    fn arc_ok(&self, id: ArcId) -> bool {
        self.removed_arcs.is_none_or(|r| !r[id])
    }
}

fn walk(g: &WeightedDigraph, sources: &NodeSet, filter: Filter<'_>, forward: bool) -> NodeSet {
    let mut seen = NodeSet::new(g.node_count());
    let mut queue = VecDeque::new();
    for s in sources {
        if filter.node_ok(s) {
            seen.insert(s);
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let adj = if forward { g.out_arcs(u) } else { g.in_arcs(u) };
        for &id in adj {
            if !filter.arc_ok(id) {
                continue;
            }
            let a = g.arc(id);
            let v = if forward { a.head } else { a.tail };
            if filter.node_ok(v) && seen.insert(v) {
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Nodes reachable from `sources` (sources included).
pub fn reach(g: &WeightedDigraph, sources: &NodeSet) -> NodeSet {
    walk(g, sources, Filter::default(), true)
}

/// Nodes reachable from `sources` in the filtered graph.
pub fn reach_filtered(g: &WeightedDigraph, sources: &NodeSet, filter: Filter<'_>) -> NodeSet {
    walk(g, sources, filter, true)
}

/// Nodes that can reach some node of `targets` in the filtered graph.
pub fn coreach_filtered(g: &WeightedDigraph, targets: &NodeSet, filter: Filter<'_>) -> NodeSet {
    walk(g, targets, filter, false)
}

/// Result of [`contract`]: where each old node went and what each new node holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    /// `image[v]` is the new id of old node `v`.
    pub image: Vec<NodeId>,
    /// `members[u]` is the set of old nodes merged into new node `u`.
    pub members: Vec<NodeSet>,
    /// `group_node[i]` is the new id of `groups[i]`.
    pub group_node: Vec<NodeId>,
}

impl Contraction {
    /// Expands a set of new nodes back to the old node set.
    pub fn expand(&self, set: &NodeSet) -> NodeSet {
        let universe = self.image.len();
        let mut out = NodeSet::new(universe);
        for u in set {
            out.union_with(&self.members[u]);
        }
        out
    }
}

/// Contracts each group to a single node.
///
/// New ids: nodes outside every group keep their relative order and come
/// first, followed by one node per group in the given order. Arcs inside a
/// group vanish, arcs for which `drop(new_tail, new_head)` holds are removed,
/// parallel arcs are kept.
pub fn contract(
    g: &WeightedDigraph,
    groups: &[NodeSet],
    mut drop: impl FnMut(NodeId, NodeId) -> bool,
) -> Result<(WeightedDigraph, Contraction), GraphError> {
    let n = g.node_count();
    let mut group_of = vec![usize::MAX; n];
    for (i, grp) in groups.iter().enumerate() {
        for v in grp {
            if group_of[v] != usize::MAX {
                return Err(GraphError::OverlappingGroups(v));
            }
            group_of[v] = i;
        }
    }
    let mut image = vec![0; n];
    let mut members = Vec::new();
    for v in 0..n {
        if group_of[v] == usize::MAX {
            image[v] = members.len();
            members.push(NodeSet::singleton(n, v));
        }
    }
    let mut group_node = Vec::with_capacity(groups.len());
    for grp in groups {
        // an empty group still gets a node so ids stay predictable
        group_node.push(members.len());
        members.push(grp.clone());
    }
    for v in 0..n {
        if group_of[v] != usize::MAX {
            image[v] = group_node[group_of[v]];
        }
    }
    let arcs: Vec<(NodeId, NodeId, u64)> = g
        .arcs()
        .iter()
        .filter_map(|a| {
            let (u, v) = (image[a.tail], image[a.head]);
            (u != v && !drop(u, v)).then_some((u, v, a.weight))
        })
        .collect();
    let h = WeightedDigraph::new(members.len(), arcs)?;
    Ok((h, Contraction { image, members, group_node }))
}
