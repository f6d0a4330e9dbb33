//! Exact max-flow / min-cut (Dinic) with deterministic sink sides.
//!
//! Infinite arcs get capacity `total finite weight + 1`; any flow value at
//! or above that bound means no finite cut exists.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{in_cut, UndirectedGraph, WeightedDigraph};
use crate::nodeset::NodeSet;
use crate::weight::INFINITE;
use crate::{ArcId, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FlowError {
    #[error("source and sink sets must be nonempty")]
    EmptyTerminals,
    #[error("node {0} is both a source and a sink")]
    Overlap(NodeId),
}

/// Outcome of a minimum cut computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    /// Cut value, or [`INFINITE`] when every source-sink separation needs an
    /// infinite arc.
    pub value: u64,
    /// Inclusion-minimal optimal sink side.
    pub min_sink_side: NodeSet,
    /// Inclusion-maximal optimal sink side.
    pub max_sink_side: NodeSet,
    /// Arcs entering `min_sink_side` (empty when `value` is infinite).
    pub cut_arcs: Vec<ArcId>,
}

impl CutResult {
    pub fn is_finite(&self) -> bool {
        self.value != INFINITE
    }
}

struct Network {
    head: Vec<usize>,
    cap: Vec<u128>,
    adj: Vec<Vec<usize>>,
    level: Vec<u32>,
    next: Vec<usize>,
}

impl Network {
    fn new(n: usize) -> Self {
        Network {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); n],
            level: vec![0; n],
            next: vec![0; n],
        }
    }

    fn add(&mut self, u: usize, v: usize, c: u128) {
        self.adj[u].push(self.head.len());
        self.head.push(v);
        self.cap.push(c);
        self.adj[v].push(self.head.len());
        self.head.push(u);
        self.cap.push(0);
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = u32::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.head[e];
                if self.cap[e] > 0 && self.level[v] == u32::MAX {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[t] != u32::MAX
    }

    // iterative blocking-flow augmentation along level-increasing arcs
    fn augment(&mut self, s: usize, t: usize) -> u128 {
        let mut total = 0;
        let mut path: Vec<usize> = Vec::new();
        let mut u = s;
        loop {
            if u == t {
                let push = path.iter().map(|&e| self.cap[e]).min().unwrap_or(0);
                for &e in &path {
                    self.cap[e] -= push;
                    self.cap[e ^ 1] += push;
                }
                total += push;
                // restart from the tail of the first saturated arc
                let cut = path.iter().position(|&e| self.cap[e] == 0).unwrap_or(0);
                path.truncate(cut);
                u = if cut == 0 { s } else { self.head[path[cut - 1]] };
                continue;
            }
            let mut advanced = false;
            while self.next[u] < self.adj[u].len() {
                let e = self.adj[u][self.next[u]];
                let v = self.head[e];
                if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                    path.push(e);
                    u = v;
                    advanced = true;
                    break;
                }
                self.next[u] += 1;
            }
            if !advanced {
                if u == s {
                    return total;
                }
                // dead end: retreat and skip the arc that led here
                self.level[u] = u32::MAX;
                let e = path.pop().expect("non-source node has an incoming path arc");
                u = self.head[e ^ 1];
                self.next[u] += 1;
            }
        }
    }

    fn max_flow(&mut self, s: usize, t: usize) -> u128 {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.next.iter_mut().for_each(|x| *x = 0);
            flow += self.augment(s, t);
        }
        flow
    }

    fn residual_reach(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.head[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    fn residual_coreach(&self, t: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[t] = true;
        let mut queue = VecDeque::from([t]);
        while let Some(x) = queue.pop_front() {
            for &e in &self.adj[x] {
                let y = self.head[e];
                if self.cap[e ^ 1] > 0 && !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }
}

/// Minimum weight of arcs separating every source from every sink.
pub fn min_cut(g: &WeightedDigraph, sources: &NodeSet, sinks: &NodeSet) -> Result<CutResult, FlowError> {
    if sources.is_empty() || sinks.is_empty() {
        return Err(FlowError::EmptyTerminals);
    }
    if let Some(v) = sources.intersection(sinks).first() {
        return Err(FlowError::Overlap(v));
    }
    let n = g.node_count();
    let big = g.total_finite_weight() as u128 + 1;
    let (ss, tt) = (n, n + 1);
    let mut net = Network::new(n + 2);
    for a in g.arcs() {
        let c = if a.weight == INFINITE { big } else { a.weight as u128 };
        net.add(a.tail, a.head, c);
    }
    // terminal arcs can never be saturated by the bounded real capacities
    let huge = u128::MAX >> 4;
    for s in sources {
        net.add(ss, s, huge);
    }
    for t in sinks {
        net.add(t, tt, huge);
    }
    let flow = net.max_flow(ss, tt);
    let from_source = net.residual_reach(ss);
    let to_sink = net.residual_coreach(tt);
    // nodes that still reach a sink form the smallest optimal sink side,
    // nodes unreachable from every source the largest
    let min_sink_side = NodeSet::from_nodes(n, (0..n).filter(|&v| to_sink[v]));
    let max_sink_side = NodeSet::from_nodes(n, (0..n).filter(|&v| !from_source[v]));
    if flow >= big {
        return Ok(CutResult { value: INFINITE, min_sink_side, max_sink_side, cut_arcs: Vec::new() });
    }
    let (cut_arcs, value) = in_cut(g, &min_sink_side);
    debug_assert_eq!(value as u128, flow);
    Ok(CutResult { value, min_sink_side, max_sink_side, cut_arcs })
}

/// Minimum `d^in(Y)` over `force_in ⊆ Y ⊆ V ∖ force_out`.
pub fn constrained_min_cut(
    g: &WeightedDigraph,
    force_in: &NodeSet,
    force_out: &NodeSet,
) -> Result<CutResult, FlowError> {
    min_cut(g, force_out, force_in)
}

/// `λ_G(s,t)`. The returned `cut_arcs` are edge ids of `g`.
pub fn undirected_min_cut(g: &UndirectedGraph, s: NodeId, t: NodeId) -> Result<CutResult, FlowError> {
    let n = g.node_count();
    if s == t {
        return Err(FlowError::Overlap(s));
    }
    let d = g.to_bidirected();
    let mut r = min_cut(&d, &NodeSet::singleton(n, s), &NodeSet::singleton(n, t))?;
    for id in r.cut_arcs.iter_mut() {
        *id /= 2;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::in_degree;
    use proptest::prelude::*;

    fn set(n: usize, v: &[NodeId]) -> NodeSet {
        NodeSet::from_nodes(n, v.iter().copied())
    }

    fn brute(g: &WeightedDigraph, force_in: &NodeSet, force_out: &NodeSet) -> u64 {
        let n = g.node_count();
        (0u64..1 << n)
            .map(|m| NodeSet::from_mask(n, m))
            .filter(|y| force_in.is_subset(y) && y.is_disjoint(force_out))
            .map(|y| in_degree(g, &y))
            .min()
            .unwrap()
    }

    #[test]
    fn small_cuts() {
        let g = WeightedDigraph::new(2, [(0, 1, 5)]).unwrap();
        let r = min_cut(&g, &set(2, &[0]), &set(2, &[1])).unwrap();
        assert_eq!(r.value, 5);
        assert_eq!(r.cut_arcs, vec![0]);

        let g = WeightedDigraph::unit(4, [(0, 1), (1, 3), (0, 2), (2, 3)]).unwrap();
        assert_eq!(min_cut(&g, &set(4, &[0]), &set(4, &[3])).unwrap().value, 2);
    }

    #[test]
    fn constrained_on_path() {
        // s=0 -> a=1 -> t=2
        let g = WeightedDigraph::unit(3, [(0, 1), (1, 2)]).unwrap();
        let r = constrained_min_cut(&g, &set(3, &[2]), &set(3, &[0])).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(r.min_sink_side.to_vec(), vec![2]);
        assert_eq!(r.max_sink_side.to_vec(), vec![1, 2]);
        let r = constrained_min_cut(&g, &set(3, &[1, 2]), &set(3, &[0])).unwrap();
        assert_eq!((r.value, r.min_sink_side.to_vec()), (1, vec![1, 2]));
    }

    #[test]
    fn undirected_examples() {
        let path = UndirectedGraph::unit(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(undirected_min_cut(&path, 0, 2).unwrap().value, 1);
        let c4 = UndirectedGraph::unit(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let r = undirected_min_cut(&c4, 0, 2).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.cut_arcs.len(), 2);
    }

    #[test]
    fn infinite_paths() {
        let g = WeightedDigraph::new(3, [(0, 1, INFINITE), (1, 2, INFINITE)]).unwrap();
        let r = min_cut(&g, &set(3, &[0]), &set(3, &[2])).unwrap();
        assert_eq!(r.value, INFINITE);
        assert!(r.cut_arcs.is_empty());
        let g = WeightedDigraph::new(3, [(0, 1, INFINITE), (1, 2, 4)]).unwrap();
        assert_eq!(min_cut(&g, &set(3, &[0]), &set(3, &[2])).unwrap().value, 4);
    }

    #[test]
    fn precondition_errors() {
        let g = WeightedDigraph::unit(2, [(0, 1)]).unwrap();
        assert_eq!(min_cut(&g, &set(2, &[]), &set(2, &[1])), Err(FlowError::EmptyTerminals));
        assert_eq!(min_cut(&g, &set(2, &[0, 1]), &set(2, &[1])), Err(FlowError::Overlap(1)));
    }

    fn arb_instance() -> impl Strategy<Value = (WeightedDigraph, u64, u64)> {
        (2usize..=8).prop_flat_map(|n| {
            (
                proptest::collection::vec((0..n, 0..n, 0u64..5), 0..24),
                any::<u64>(),
                any::<u64>(),
            )
                .prop_map(move |(raw, a, b)| {
                    let g = WeightedDigraph::new(n, raw.into_iter().filter(|(u, v, _)| u != v)).unwrap();
                    (g, a, b)
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn matches_exhaustive_oracle((g, ma, mb) in arb_instance()) {
            let n = g.node_count();
            let mut sinks = NodeSet::from_mask(n, ma);
            let mut sources = NodeSet::from_mask(n, mb).difference(&sinks);
            if sinks.is_empty() { sinks.insert(n - 1); sources.remove(n - 1); }
            if sources.is_empty() {
                let v = sinks.complement().first().unwrap_or(0);
                if v == 0 && sinks.contains(0) { sinks.remove(0); }
                sources.insert(v);
            }
            prop_assume!(!sinks.is_empty());
            let r = min_cut(&g, &sources, &sinks).unwrap();
            prop_assert_eq!(r.value, brute(&g, &sinks, &sources));
            prop_assert!(r.min_sink_side.is_subset(&r.max_sink_side));
            prop_assert!(sinks.is_subset(&r.min_sink_side));
            prop_assert!(r.max_sink_side.is_disjoint(&sources));
            prop_assert_eq!(in_degree(&g, &r.max_sink_side), r.value);
            // extremality: every optimal sink side lies between the two
            for m in 0u64..1 << n {
                let y = NodeSet::from_mask(n, m);
                if sinks.is_subset(&y) && y.is_disjoint(&sources) && in_degree(&g, &y) == r.value {
                    prop_assert!(r.min_sink_side.is_subset(&y));
                    prop_assert!(y.is_subset(&r.max_sink_side));
                }
            }
        }

        #[test]
        fn doubling_an_arc_at_most_doubles((g, _a, _b) in arb_instance()) {
            let n = g.node_count();
            let (s, t) = (NodeSet::singleton(n, 0), NodeSet::singleton(n, n - 1));
            let base = min_cut(&g, &s, &t).unwrap().value;
            let doubled = g.map_weights(|_, a| a.weight * 2);
            let d = min_cut(&doubled, &s, &t).unwrap().value;
            prop_assert!(base <= d && d <= 2 * base);
        }
    }
}
