//! Gap instances, hardness skeletons and the vertex-cover reductions, with
//! exhaustive checkers for the properties they are supposed to have.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::certificate;
use crate::doublecut::PathBlockingOracle;
use crate::error::{Error, Result};
use crate::graph::{UndirectedGraph, WeightedDigraph};
use crate::nodeset::NodeSet;
use crate::oracle::{self, OracleBudget};
use crate::weight::{self, INFINITE};
use crate::{ArcId, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DabArc {
    /// `s ↔ (i,1)` and `(i,b) ↔ t`
    Terminal,
    /// `(i,j) ↔ (i,j+1)`
    Row,
    Jumping,
}

/// The Path-Blocking-LP gap instance `D_{a,b}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DabInstance {
    pub a: usize,
    pub b: usize,
    /// `b − 2a + 1`
    pub r: usize,
    pub graph: WeightedDigraph,
    pub s: NodeId,
    pub t: NodeId,
    /// One tag per arc id.
    pub kinds: Vec<DabArc>,
}

impl DabInstance {
    /// Node id of internal node `(i, j)`, 1-based; `(i,0)` is `s` and
    /// `(i,b+1)` is `t`.
    pub fn node(&self, i: usize, j: usize) -> NodeId {
        dab_node(self.b, i, j)
    }

    /// `(i, j)` of an internal node.
    pub fn coords(&self, v: NodeId) -> Option<(usize, usize)> {
        (v >= 2).then(|| ((v - 2) / self.b + 1, (v - 2) % self.b + 1))
    }

    pub fn internal(&self) -> NodeSet {
        let mut set = self.graph.all_nodes();
        set.remove(self.s);
        set.remove(self.t);
        set
    }

    /// Node costs: 1 on internal nodes, infinite on `s` and `t`.
    pub fn costs(&self) -> Vec<u64> {
        (0..self.graph.node_count()).map(|v| if v < 2 { INFINITE } else { 1 }).collect()
    }

    /// `d_v = 1/r` on internal nodes, 0 on the terminals.
    pub fn uniform_point(&self) -> Vec<f64> {
        (0..self.graph.node_count()).map(|v| if v < 2 { 0.0 } else { 1.0 / self.r as f64 }).collect()
    }
}

fn dab_node(b: usize, i: usize, j: usize) -> NodeId {
    match j {
        0 => 0,
        j if j == b + 1 => 1,
        j => 2 + (i - 1) * b + (j - 1),
    }
}

pub fn build_dab(a: usize, b: usize) -> Result<DabInstance> {
    if a < 1 || b < 2 * a {
        return Err(Error::invalid(format!("need a >= 1 and b >= 2a, got a={a}, b={b}")));
    }
    let (s, t) = (0, 1);
    let mut arcs = Vec::new();
    let mut kinds = Vec::new();
    let mut push = |u: NodeId, v: NodeId, kind: DabArc| {
        arcs.push((u, v, 1));
        kinds.push(kind);
    };
    for i in 1..=a {
        push(s, dab_node(b, i, 1), DabArc::Terminal);
        push(dab_node(b, i, 1), s, DabArc::Terminal);
        push(dab_node(b, i, b), t, DabArc::Terminal);
        push(t, dab_node(b, i, b), DabArc::Terminal);
    }
    for i in 1..=a {
        for j in 1..b {
            push(dab_node(b, i, j), dab_node(b, i, j + 1), DabArc::Row);
            push(dab_node(b, i, j + 1), dab_node(b, i, j), DabArc::Row);
        }
    }
    for i in 1..a {
        for j in 2..b {
            push(dab_node(b, i, j), dab_node(b, i + 1, j - 2), DabArc::Jumping);
            push(dab_node(b, i, j), dab_node(b, i + 1, j + 2), DabArc::Jumping);
        }
    }
    let mut labels = vec![String::from("s"), String::from("t")];
    for i in 1..=a {
        for j in 1..=b {
            labels.push(format!("({i},{j})"));
        }
    }
    let graph = WeightedDigraph::new(a * b + 2, arcs)?.with_labels(labels);
    Ok(DabInstance { a, b, r: b + 1 - 2 * a, graph, s, t, kinds })
}

/// Fewest internal nodes on a path `from → to`, counting the internal
/// nodes in `weight` (node-weighted BFS, weights 0/1).
fn min_internal(g: &WeightedDigraph, from: NodeId, to: NodeId, weight: impl Fn(NodeId) -> usize) -> Option<usize> {
    let n = g.node_count();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    dist[from] = weight(from);
    queue.push_back(from);
    while let Some(u) = queue.pop_front() {
        for &id in g.out_arcs(u) {
            let v = g.arc(id).head;
            let w = weight(v);
            if dist[u] + w < dist[v] {
                dist[v] = dist[u] + w;
                if w == 0 {
                    queue.push_front(v);
                } else {
                    queue.push_back(v);
                }
            }
        }
    }
    (dist[to] != usize::MAX).then_some(dist[to])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DabReport {
    /// Internal nodes whose distance bounds were checked.
    pub checked: usize,
    /// Internal nodes violating the distance bounds.
    pub distance_violations: Vec<NodeId>,
    /// Brute-force minimum blocking set, when small enough to compute.
    pub min_blocking: Option<u64>,
}

impl DabReport {
    pub fn holds(&self, a: usize) -> bool {
        self.distance_violations.is_empty() && self.min_blocking.is_none_or(|m| m >= (2 * a - 1) as u64)
    }
}

/// Checks the two distance bounds for every internal node, and the
/// `2a − 1` blocking bound by brute force when `ab + 2 ≤ 12`.
pub fn check_dab_properties(inst: &DabInstance) -> Result<DabReport> {
    let (a, b) = (inst.a as i64, inst.b as i64);
    let g = &inst.graph;
    let mut violations = Vec::new();
    let internal = inst.internal();
    for alpha in &internal {
        let (_, j) = inst.coords(alpha).expect("internal node");
        // internal nodes other than alpha
        let w = |v: NodeId| usize::from(v >= 2 && v != alpha);
        let to_s = min_internal(g, alpha, inst.s, w).map_or(i64::MAX, |d| d as i64);
        let to_t = min_internal(g, alpha, inst.t, w).map_or(i64::MAX, |d| d as i64);
        if to_s < j as i64 - a || to_t < b - j as i64 - a + 1 {
            violations.push(alpha);
        }
    }
    let min_blocking = if g.node_count() <= 12 {
        let budget = OracleBudget { max_nodes: 12, ..OracleBudget::default() };
        Some(oracle::st_node_double_cut(g, inst.s, inst.t, &inst.costs(), &budget)?.value)
    } else {
        None
    };
    Ok(DabReport { checked: internal.len(), distance_violations: violations, min_blocking })
}

/// `d ≡ 1/r` on `D_{a,b}` satisfies every Path-Blocking-LP row.
pub fn dab_uniform_point_feasible(inst: &DabInstance, tol: f64) -> bool {
    let costs = inst.costs();
    let oracle = PathBlockingOracle::new(&inst.graph, inst.s, inst.t, &costs);
    oracle.is_feasible(&inst.uniform_point(), tol)
}

/// Node ids of the global double cut skeleton.
pub mod skeleton {
    use crate::NodeId;
    pub const S: NodeId = 0;
    pub const T: NodeId = 1;
    pub const A: NodeId = 2;
    pub const B: NodeId = 3;
    pub const C: NodeId = 4;
    pub const D: NodeId = 5;
}

/// The fixed 6-node skeleton for global node double cut hardness.
pub fn build_global_skeleton() -> WeightedDigraph {
    use skeleton::*;
    let arcs = [(A, S), (S, A), (S, C), (C, A), (A, B), (B, C), (C, B), (D, C), (B, D), (D, T), (T, D), (T, B)];
    let labels = ["s", "t", "a", "b", "c", "d"].iter().map(|&l| String::from(l)).collect();
    WeightedDigraph::unit(6, arcs).expect("fixed skeleton").with_labels(labels)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SkeletonReport {
    pub far_terminal: bool,
    pub fed_by_terminal: bool,
    pub robust_three_path: bool,
}

impl SkeletonReport {
    pub fn holds(&self) -> bool {
        self.far_terminal && self.fed_by_terminal && self.robust_three_path
    }
}

/// Simple paths `from → to` avoiding `dead`, reported as their internal
/// node counts.
fn path_internal_counts(g: &WeightedDigraph, from: NodeId, to: NodeId, dead: Option<NodeId>, internal: &NodeSet) -> Vec<usize> {
    #[allow(clippy::too_many_arguments)]
    fn walk(
        g: &WeightedDigraph,
        v: NodeId,
        to: NodeId,
        dead: Option<NodeId>,
        internal: &NodeSet,
        seen: &mut NodeSet,
        count: usize,
        out: &mut Vec<usize>,
    ) {
        if v == to {
            out.push(count);
            return;
        }
        for &id in g.out_arcs(v) {
            let w = g.arc(id).head;
            if Some(w) == dead || seen.contains(w) {
                continue;
            }
            seen.insert(w);
            let c = count + usize::from(internal.contains(w) && w != to);
            walk(g, w, to, dead, internal, seen, c, out);
            seen.remove(w);
        }
    }
    let mut out = Vec::new();
    let mut seen = NodeSet::singleton(g.node_count(), from);
    walk(g, from, to, dead, internal, &mut seen, usize::from(internal.contains(from)), &mut out);
    out
}

/// Exhaustive check of the three skeleton properties. Property (i) counts
/// the start vertex itself when it is internal.
pub fn check_skeleton(g: &WeightedDigraph, s: NodeId, t: NodeId) -> SkeletonReport {
    let n = g.node_count();
    let mut internal = g.all_nodes();
    internal.remove(s);
    internal.remove(t);
    let far_terminal = (0..n).all(|v| {
        [s, t].iter().any(|&u| u != v && path_internal_counts(g, v, u, None, &internal).iter().all(|&c| c >= 3))
    });
    let fed_by_terminal = internal.iter().all(|v| g.has_arc(s, v) || g.has_arc(t, v));
    let robust_three_path = internal.iter().all(|x| {
        path_internal_counts(g, s, t, Some(x), &internal)
            .into_iter()
            .chain(path_internal_counts(g, t, s, Some(x), &internal))
            .any(|c| c == 3)
    });
    SkeletonReport { far_terminal, fed_by_terminal, robust_three_path }
}

// ---- vertex cover reductions ----------------------------------------------------

/// A `k`-partite vertex cover instance: `parts[v] < k`, no edge inside a
/// part. Node weights of `graph` are the vertex costs.
#[derive(Debug, Clone, PartialEq)]
pub struct PartiteGraph {
    pub graph: UndirectedGraph,
    pub parts: Vec<usize>,
    pub k: usize,
}

impl PartiteGraph {
    pub fn new(graph: UndirectedGraph, parts: Vec<usize>, k: usize) -> Result<Self> {
        if parts.len() != graph.node_count() || parts.iter().any(|&p| p >= k) {
            return Err(Error::invalid(format!("need one part label below {k} per node")));
        }
        if let Some(e) = graph.edges().iter().find(|e| parts[e.tail] == parts[e.head]) {
            return Err(Error::invalid(format!("edge {}-{} lies inside part {}", e.tail, e.head, parts[e.tail])));
        }
        Ok(PartiteGraph { graph, parts, k })
    }

    pub fn is_vertex_cover(&self, cover: &NodeSet) -> bool {
        self.graph.edges().iter().all(|e| cover.contains(e.tail) || cover.contains(e.head))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetKind {
    Node3Cut,
    NodeBicut,
    SStarBicut,
}

/// A reduction target plus the data to pull solutions back. Source vertex
/// `v` keeps id `v` in the node gadgets; in the `{s,*}` gadget its vertex
/// arc has id `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionMap<G> {
    pub kind: GadgetKind,
    pub target: G,
    pub source_nodes: usize,
    /// Extra target nodes: `s₁,s₂,s₃` or `s,t`.
    pub terminals: Vec<NodeId>,
}

impl<G> ReductionMap<G> {
    /// Source vertices among target nodes.
    pub fn nodes_back(&self, nodes: &NodeSet) -> NodeSet {
        NodeSet::from_nodes(self.source_nodes, nodes.iter().filter(|&v| v < self.source_nodes))
    }

    /// Source vertices whose vertex arcs were cut.
    pub fn arcs_back(&self, arcs: &[ArcId]) -> NodeSet {
        NodeSet::from_nodes(self.source_nodes, arcs.iter().copied().filter(|&a| a < self.source_nodes))
    }
}

fn expect_parts(src: &PartiteGraph, k: usize) -> Result<()> {
    if src.k != k {
        return Err(Error::invalid(format!("expected a {k}-partition, got {}", src.k)));
    }
    Ok(())
}

/// Adds terminals `s₁,s₂,s₃` (infinite weight) joined to their parts.
pub fn vc3p_to_node3cut(src: &PartiteGraph) -> Result<ReductionMap<UndirectedGraph>> {
    expect_parts(src, 3)?;
    let n = src.graph.node_count();
    let mut edges: Vec<(NodeId, NodeId, u64)> = src.graph.edges().iter().map(|e| (e.tail, e.head, 1)).collect();
    edges.extend((0..n).map(|v| (n + src.parts[v], v, 1)));
    let mut w = src.graph.node_costs();
    w.extend([INFINITE; 3]);
    let target = UndirectedGraph::new(n + 3, edges)?.with_node_weights(w)?;
    Ok(ReductionMap { kind: GadgetKind::Node3Cut, target, source_nodes: n, terminals: vec![n, n + 1, n + 2] })
}

/// Parts are bidirected cliques, edges bidirected; `V₁ ↔ s`, `s → V₂`,
/// `t → V₂`, `V₃ → s`, `V₃ → t`, `V₄ ↔ t`. Terminals get infinite weight.
pub fn vc4p_to_node_bicut(src: &PartiteGraph) -> Result<ReductionMap<WeightedDigraph>> {
    expect_parts(src, 4)?;
    let n = src.graph.node_count();
    let (s, t) = (n, n + 1);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && src.parts[u] == src.parts[v] {
                arcs.push((u, v, 1));
            }
        }
    }
    for e in src.graph.edges() {
        arcs.push((e.tail, e.head, 1));
        arcs.push((e.head, e.tail, 1));
    }
    for u in 0..n {
        match src.parts[u] {
            0 => arcs.extend([(s, u, 1), (u, s, 1)]),
            1 => arcs.extend([(s, u, 1), (t, u, 1)]),
            2 => arcs.extend([(u, s, 1), (u, t, 1)]),
            _ => arcs.extend([(t, u, 1), (u, t, 1)]),
        }
    }
    let mut w = src.graph.node_costs();
    w.extend([INFINITE; 2]);
    let target = WeightedDigraph::new(n + 2, arcs)?.with_node_weights(w)?;
    Ok(ReductionMap { kind: GadgetKind::NodeBicut, target, source_nodes: n, terminals: vec![s, t] })
}

/// Doubled-vertex gadget for `{s,*}` edge bicut. Vertex `v` becomes
/// `v₁ = 2v`, `v₂ = 2v+1` joined by arc id `v` (weight = vertex cost); all
/// other arcs are infinite. Parts 0, 1, 2 are `A`, `B`, `C`.
pub fn vc3p_to_s_star_bicut(src: &PartiteGraph) -> Result<ReductionMap<WeightedDigraph>> {
    expect_parts(src, 3)?;
    let n = src.graph.node_count();
    let (s, t) = (2 * n, 2 * n + 1);
    let (one, two) = (|v: NodeId| 2 * v, |v: NodeId| 2 * v + 1);
    let mut arcs: Vec<(NodeId, NodeId, u64)> = (0..n).map(|v| (one(v), two(v), src.graph.node_weight(v))).collect();
    let in_part = |p: usize| (0..n).filter(move |&v| src.parts[v] == p);
    let (pa, pb, pc) = (0, 1, 2);
    // forward arcs
    for a in in_part(pa) {
        arcs.push((s, one(a), INFINITE));
        arcs.push((t, one(a), INFINITE));
    }
    for b in in_part(pb) {
        arcs.push((s, one(b), INFINITE));
        arcs.push((two(b), s, INFINITE));
    }
    for c in in_part(pc) {
        arcs.push((two(c), s, INFINITE));
        arcs.push((two(c), t, INFINITE));
    }
    for e in src.graph.edges() {
        let (u, v) = if src.parts[e.tail] <= src.parts[e.head] { (e.tail, e.head) } else { (e.head, e.tail) };
        arcs.push((two(u), one(v), INFINITE));
    }
    // backward arcs
    for p in [pa, pc] {
        for v in in_part(p) {
            for u in in_part(p) {
                arcs.push((two(v), one(u), INFINITE));
            }
        }
    }
    for c in in_part(pc) {
        for a in in_part(pa) {
            arcs.push((one(c), one(a), INFINITE));
            arcs.push((two(c), two(a), INFINITE));
        }
    }
    let target = WeightedDigraph::new(2 * n + 2, arcs)?;
    Ok(ReductionMap { kind: GadgetKind::SStarBicut, target, source_nodes: n, terminals: vec![s, t] })
}

/// Outcome of an exhaustive reduction check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetCheck {
    pub source_opt: u64,
    pub target_opt: u64,
    pub subsets_checked: u64,
    /// Every source subset is a vertex cover iff it is feasible in the
    /// target.
    pub equivalent: bool,
    /// The target optimum pulled back is a vertex cover of equal cost.
    pub back_feasible: bool,
}

impl GadgetCheck {
    pub fn holds(&self) -> bool {
        self.equivalent && self.back_feasible && self.source_opt == self.target_opt
    }
}

fn subset_cost(costs: &[u64], set: &NodeSet) -> u64 {
    weight::sum(set.iter().map(|v| costs[v]))
}

/// Source subsets `R`: vertex cover of `src` iff `feasible(R)`.
fn check_equivalence(src: &PartiteGraph, feasible: impl Fn(&NodeSet) -> bool) -> (u64, bool) {
    let n = src.graph.node_count();
    let total = 1u64 << n;
    let ok = (0..total).all(|m| {
        let r = NodeSet::from_mask(n, m);
        src.is_vertex_cover(&r) == feasible(&r)
    });
    (total, ok)
}

fn budget_for(n: usize) -> OracleBudget {
    OracleBudget { max_nodes: n.max(10), ..OracleBudget::default() }
}

/// Exhaustive check of one gadget on one source instance.
pub fn check_gadget(src: &PartiteGraph, kind: GadgetKind) -> Result<GadgetCheck> {
    let n = src.graph.node_count();
    let costs = src.graph.node_costs();
    let vc = oracle::vertex_cover(&src.graph, &costs, &budget_for(n))?;
    let (target_opt, back, (subsets, equivalent)) = match kind {
        GadgetKind::Node3Cut => {
            let map = vc3p_to_node3cut(src)?;
            let tc = map.target.node_costs();
            let opt = oracle::node_3cut(&map.target, &tc, &budget_for(n + 3))?;
            let eq = check_equivalence(src, |r| certificate::components_after(&map.target, &lift(r, n + 3)) >= 3);
            (opt.value, map.nodes_back(&opt.removed_nodes), eq)
        }
        GadgetKind::NodeBicut => {
            let map = vc4p_to_node_bicut(src)?;
            let tc = map.target.node_costs();
            let opt = oracle::raw_node_bicut(&map.target, &tc, &budget_for(n + 2))?;
            let all = map.target.arc_count();
            let none = vec![false; all];
            let eq = check_equivalence(src, |r| oracle::has_separated_pair(&map.target, &none, &lift(r, n + 2).complement()));
            (opt.value, map.nodes_back(&opt.removed_nodes), eq)
        }
        GadgetKind::SStarBicut => {
            let map = vc3p_to_s_star_bicut(src)?;
            let s = map.terminals[0];
            let feasible = |r: &NodeSet| {
                let ids: Vec<ArcId> = r.iter().collect();
                (0..map.target.node_count()).any(|t| t != s && certificate::edge_bicut(&map.target, &ids, s, t))
            };
            // only vertex arcs are finite, so the optimum ranges over them
            let best = (0..1u64 << n)
                .map(|m| NodeSet::from_mask(n, m))
                .filter(|r| feasible(r))
                .min_by_key(|r| (subset_cost(&costs, r), r.to_mask()))
                .ok_or_else(|| Error::infeasible("no finite s-star bicut"))?;
            let eq = check_equivalence(src, feasible);
            let ids: Vec<ArcId> = best.iter().collect();
            (subset_cost(&costs, &best), map.arcs_back(&ids), eq)
        }
    };
    let back_feasible = src.is_vertex_cover(&back) && subset_cost(&costs, &back) == target_opt;
    Ok(GadgetCheck { source_opt: vc.value, target_opt, subsets_checked: subsets, equivalent, back_feasible })
}

fn lift(r: &NodeSet, universe: usize) -> NodeSet {
    NodeSet::from_nodes(universe, r.iter())
}

// ---- node 3-cut through node double cut ------------------------------------------

/// Digraph for terminal `s`: edges bidirected, every other vertex gets an
/// arc into `s`, and `s` becomes undeletable.
pub fn node3cut_instance(g: &UndirectedGraph, costs: &[u64], s: NodeId) -> (WeightedDigraph, Vec<u64>) {
    let n = g.node_count();
    let mut arcs: Vec<(NodeId, NodeId, u64)> = Vec::new();
    for e in g.edges() {
        arcs.push((e.tail, e.head, 1));
        arcs.push((e.head, e.tail, 1));
    }
    arcs.extend((0..n).filter(|&v| v != s).map(|v| (v, s, 1)));
    let mut c = costs.to_vec();
    c[s] = INFINITE;
    (WeightedDigraph::new(n, arcs).expect("valid instance"), c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node3CutViaDoubleCut {
    pub nodes: NodeSet,
    pub cost: u64,
    pub s: NodeId,
}

/// Runs `solver` (a node double cut algorithm) on the instance for every
/// `s` and keeps the cheapest answer.
pub fn node3cut_via_doublecut(
    g: &UndirectedGraph,
    costs: &[u64],
    mut solver: impl FnMut(&WeightedDigraph, &[u64]) -> Result<NodeSet>,
) -> Result<Node3CutViaDoubleCut> {
    let n = g.node_count();
    if n < 3 || costs.len() != n {
        return Err(Error::invalid("need n >= 3 and one cost per node"));
    }
    let mut best: Option<Node3CutViaDoubleCut> = None;
    for s in 0..n {
        let (d, c) = node3cut_instance(g, costs, s);
        let nodes = match solver(&d, &c) {
            Ok(u) => u,
            Err(Error::Infeasible(_)) => continue,
            Err(e) => return Err(e),
        };
        let cost = subset_cost(costs, &nodes);
        if best.as_ref().is_none_or(|b| cost < b.cost) {
            best = Some(Node3CutViaDoubleCut { nodes, cost, s });
        }
    }
    best.ok_or_else(|| Error::infeasible("no terminal gives a finite node double cut"))
}

// ---- Brooks colouring -------------------------------------------------------------

fn greedy(g: &UndirectedGraph, order: &[NodeId], k: usize) -> Option<Vec<usize>> {
    let n = g.node_count();
    let mut color = vec![usize::MAX; n];
    for &v in order {
        let mut used = vec![false; k];
        for &e in g.incident(v) {
            let c = color[g.other_end(e, v)];
            if c < k {
                used[c] = true;
            }
        }
        color[v] = used.iter().position(|&u| !u)?;
    }
    Some(color)
}

/// Brooks order: two non-adjacent neighbours `x, y` of `v` first, then the
/// rest of `G − {x,y}` by decreasing BFS depth from `v`, `v` last.
fn brooks_order(g: &UndirectedGraph) -> Option<Vec<NodeId>> {
    let n = g.node_count();
    for v in 0..n {
        let nbrs: Vec<NodeId> = g.incident(v).iter().map(|&e| g.other_end(e, v)).collect();
        for (i, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[i + 1..] {
                if g.adjacent(x, y) {
                    continue;
                }
                let mut alive = NodeSet::full(n);
                alive.remove(x);
                alive.remove(y);
                if g.components(Some(&alive)).1 != 1 {
                    continue;
                }
                let mut depth = vec![usize::MAX; n];
                depth[v] = 0;
                let mut queue = VecDeque::from([v]);
                let mut seen_order = Vec::new();
                while let Some(u) = queue.pop_front() {
                    seen_order.push(u);
                    for &e in g.incident(u) {
                        let w = g.other_end(e, u);
                        if alive.contains(w) && depth[w] == usize::MAX {
                            depth[w] = depth[u] + 1;
                            queue.push_back(w);
                        }
                    }
                }
                let mut order = vec![x, y];
                order.extend(seen_order.into_iter().rev());
                return Some(order);
            }
        }
    }
    None
}

/// Proper `k`-colouring of a connected `k`-regular graph other than
/// `K_{k+1}`; falls back to greedy colouring in seeded random orders.
pub fn kregular_partition(g: &UndirectedGraph, k: usize) -> Result<Vec<usize>> {
    let n = g.node_count();
    if k < 3 {
        return Err(Error::invalid("k must be at least 3"));
    }
    if (0..n).any(|v| g.degree(v) != k) {
        return Err(Error::invalid(format!("graph is not {k}-regular")));
    }
    if n == k + 1 {
        return Err(Error::invalid(format!("K_{} has no {k}-colouring", k + 1)));
    }
    if g.components(None).1 != 1 {
        return Err(Error::invalid("graph is not connected"));
    }
    if let Some(c) = brooks_order(g).and_then(|order| greedy(g, &order, k)) {
        return Ok(c);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut order: Vec<NodeId> = (0..n).collect();
    for _ in 0..1000 {
        order.shuffle(&mut rng);
        if let Some(c) = greedy(g, &order, k) {
            return Ok(c);
        }
    }
    Err(Error::infeasible(format!("no {k}-colouring found")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dab_sizes() {
        let d = build_dab(2, 4).unwrap();
        assert_eq!(d.graph.node_count(), 10);
        let count = |k| d.kinds.iter().filter(|&&x| x == k).count();
        assert_eq!(count(DabArc::Terminal), 4 * 2);
        assert_eq!(count(DabArc::Row), 2 * 2 * 3);
        assert_eq!(count(DabArc::Jumping), 2 * 1 * 2);
        let small = build_dab(1, 2).unwrap();
        assert_eq!(small.graph.node_count(), 4);
        assert!(!small.kinds.contains(&DabArc::Jumping));
        assert!(build_dab(2, 3).is_err());
        // j = 2 jumps to s, j = b-1 jumps to t
        assert!(d.graph.has_arc(d.node(1, 2), d.s));
        assert!(d.graph.has_arc(d.node(1, 3), d.t));
    }

    #[test]
    fn dab_properties() {
        // the blocking bound 2a-1 = 3 fails on D_{2,4}: removing (1,2) and
        // (2,1) leaves only (1,1) able to reach s, and it cannot reach t
        let d = build_dab(2, 4).unwrap();
        let rep = check_dab_properties(&d).unwrap();
        assert!(rep.distance_violations.is_empty());
        assert_eq!(rep.min_blocking, Some(2));
        assert!(!rep.holds(2));
        let blocking = NodeSet::from_nodes(10, [d.node(1, 2), d.node(2, 1)]);
        assert!(certificate::node_double_cut(&d.graph, &blocking, d.s, d.t));
        let rep = check_dab_properties(&build_dab(1, 2).unwrap()).unwrap();
        assert!(rep.holds(1) && rep.min_blocking.unwrap() >= 1);
        let big = build_dab(3, 9).unwrap();
        let rep = check_dab_properties(&big).unwrap();
        assert_eq!(rep.checked, 27);
        assert!(rep.distance_violations.is_empty() && rep.min_blocking.is_none());
        assert!(dab_uniform_point_feasible(&big, 1e-9));
    }

    #[test]
    fn skeleton_holds() {
        let g = build_global_skeleton();
        assert_eq!((g.node_count(), g.arc_count()), (6, 12));
        assert!(check_skeleton(&g, skeleton::S, skeleton::T).holds());
    }

    fn triangle() -> PartiteGraph {
        PartiteGraph::new(UndirectedGraph::unit(3, [(0, 1), (1, 2), (0, 2)]).unwrap(), vec![0, 1, 2], 3).unwrap()
    }

    #[test]
    fn vc_gadgets_on_triangle() {
        let tri = triangle();
        for kind in [GadgetKind::Node3Cut, GadgetKind::SStarBicut] {
            let c = check_gadget(&tri, kind).unwrap();
            assert!(c.holds(), "{kind:?}: {c:?}");
            assert_eq!(c.source_opt, 2);
        }
        let edge = PartiteGraph::new(UndirectedGraph::unit(2, [(0, 1)]).unwrap(), vec![0, 1], 4).unwrap();
        let c = check_gadget(&edge, GadgetKind::NodeBicut).unwrap();
        assert!(c.holds() && c.target_opt == 1);
        let empty = PartiteGraph::new(UndirectedGraph::unit(2, []).unwrap(), vec![0, 3], 4).unwrap();
        assert_eq!(check_gadget(&empty, GadgetKind::NodeBicut).unwrap().target_opt, 0);
        assert!(PartiteGraph::new(UndirectedGraph::unit(2, [(0, 1)]).unwrap(), vec![1, 1], 3).is_err());
    }

    #[test]
    fn node3cut_star_via_oracle() {
        let star = UndirectedGraph::unit(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let budget = OracleBudget::default();
        let sol = node3cut_via_doublecut(&star, &[1; 4], |d, c| Ok(oracle::node_double_cut(d, c, &budget)?.removed_nodes))
            .unwrap();
        assert_eq!(sol.nodes, NodeSet::singleton(4, 0));
    }

    #[test]
    fn brooks() {
        // prism: two triangles joined by a matching
        let prism =
            UndirectedGraph::unit(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap();
        let c = kregular_partition(&prism, 3).unwrap();
        assert!(prism.edges().iter().all(|e| c[e.tail] != c[e.head]));
        let k4 = UndirectedGraph::unit(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(kregular_partition(&k4, 3).is_err());
    }
}
