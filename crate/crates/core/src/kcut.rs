//! k-cuts of undirected graphs: near-minimum k-cut enumeration by random
//! contraction, the exact `{s,t}`-separating k-cut algorithm built on it,
//! and the LP-based node multiway cut used for Node-3-Cut.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certificate;
use crate::error::{Error, Result};
use crate::flow::undirected_min_cut;
use crate::graph::UndirectedGraph;
use crate::lp::{self, LpError, LpModel, LpOptions, Row};
use crate::nodeset::NodeSet;
use crate::par;
use crate::weight::{self, INFINITE};
use crate::NodeId;

/// A partition of the node set with its cut value `γ`.
///
/// Blocks are kept in canonical order (by smallest member), so two equal
/// partitions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    pub blocks: Vec<NodeSet>,
    pub gamma: u64,
}

impl Partition {
    /// Builds the partition given by a block label per node.
    pub fn from_labels(g: &UndirectedGraph, labels: &[usize]) -> Self {
        let canon = canonical_labels(labels);
        let k = canon.iter().max().map_or(0, |&m| m as usize + 1);
        let n = g.node_count();
        let mut blocks = vec![NodeSet::new(n); k];
        for (v, &b) in canon.iter().enumerate() {
            blocks[b as usize].insert(v);
        }
        Partition { blocks, gamma: gamma_of_labels(g, &canon) }
    }

    pub fn from_blocks(g: &UndirectedGraph, blocks: &[NodeSet]) -> Self {
        let mut labels = vec![0; g.node_count()];
        for (i, b) in blocks.iter().enumerate() {
            for v in b {
                labels[v] = i;
            }
        }
        Self::from_labels(g, &labels)
    }

    /// Block index per node, blocks numbered in canonical order.
    pub fn labels(&self) -> Vec<usize> {
        let n = self.blocks.first().map_or(0, |b| b.universe());
        let mut labels = vec![0; n];
        for (i, b) in self.blocks.iter().enumerate() {
            for v in b {
                labels[v] = i;
            }
        }
        labels
    }

    pub fn block_of(&self, v: NodeId) -> usize {
        self.blocks.iter().position(|b| b.contains(v)).expect("partition covers every node")
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }
}

/// Relabels blocks in order of first appearance (a restricted growth string).
pub fn canonical_labels(labels: &[usize]) -> Vec<u32> {
    let mut map: Vec<(usize, u32)> = Vec::new();
    labels
        .iter()
        .map(|&l| match map.iter().find(|(a, _)| *a == l) {
            Some(&(_, b)) => b,
            None => {
                let b = map.len() as u32;
                map.push((l, b));
                b
            }
        })
        .collect()
}

fn gamma_of_labels(g: &UndirectedGraph, labels: &[u32]) -> u64 {
    weight::sum(g.edges().iter().filter(|e| labels[e.tail] != labels[e.head]).map(|e| e.weight))
}

/// `γ` of a partition given by labels.
pub fn gamma(g: &UndirectedGraph, labels: &[usize]) -> u64 {
    weight::sum(g.edges().iter().filter(|e| labels[e.tail] != labels[e.head]).map(|e| e.weight))
}

/// Calls `f` on every partition of `0..n` into exactly `k` nonempty blocks,
/// as a restricted growth string. Stops early when `f` returns `false`.
pub fn for_each_partition(n: usize, k: usize, mut f: impl FnMut(&[u32]) -> bool) {
    if k == 0 || k > n {
        return;
    }
    let mut labels = vec![0u32; n];
    // max label used among the first i entries
    fn rec(i: usize, used: u32, n: usize, k: usize, labels: &mut [u32], f: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        if i == n {
            return used as usize != k || f(labels);
        }
        // not enough positions left to open the remaining blocks
        if (used as usize) + (n - i) < k {
            return true;
        }
        let limit = (used + 1).min(k as u32);
        for l in 0..limit {
            labels[i] = l;
            let next = if l == used { used + 1 } else { used };
            if !rec(i + 1, next, n, k, labels, f) {
                return false;
            }
        }
        true
    }
    labels[0] = 0;
    rec(1, 1, n, k, &mut labels, &mut f);
}

/// How [`enumerate_2approx_kcuts`] finds partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumMethod {
    /// Exact enumeration for `n ≤ 10`, random contraction above.
    Auto,
    Exact,
    Randomized,
}

pub const EXACT_FALLBACK_MAX_NODES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumeratedCuts {
    pub k: usize,
    pub best: u64,
    /// Distinct partitions with `γ ≤ 2·best`, sorted by `(γ, blocks)`.
    pub partitions: Vec<Partition>,
    pub trials: u64,
    pub seed: u64,
    pub exact: bool,
}

/// `⌈n^{2(k−1)} ln n⌉`, at least 1.
pub fn default_trials(n: usize, k: usize) -> u64 {
    let n = n.max(2) as f64;
    let t = libm::pow(n, 2.0 * (k as f64 - 1.0)) * libm::log(n);
    if t >= u64::MAX as f64 {
        u64::MAX
    } else {
        (libm::ceil(t) as u64).max(1)
    }
}

/// One contraction run down to `k` super-nodes; returns block labels.
fn contract_once(g: &UndirectedGraph, k: usize, big: u128, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = g.node_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let cap = |w: u64| if w == INFINITE { big } else { w as u128 };
    let mut groups = n;
    while groups > k {
        let mut total: u128 = 0;
        for e in g.edges() {
            if find(&mut parent, e.tail) != find(&mut parent, e.head) {
                total += cap(e.weight);
            }
        }
        if total == 0 {
            // nothing left to contract: merge two random super-nodes
            let roots: Vec<usize> = (0..n).filter(|&v| find(&mut parent, v) == v).collect();
            let i = rng.random_range(0..roots.len());
            let mut j = rng.random_range(0..roots.len() - 1);
            if j >= i {
                j += 1;
            }
            parent[roots[j]] = roots[i];
            groups -= 1;
            continue;
        }
        let mut r = rng.random_range(0..total);
        for e in g.edges() {
            let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.head));
            if a == b {
                continue;
            }
            let c = cap(e.weight);
            if r < c {
                parent[b] = a;
                groups -= 1;
                break;
            }
            r -= c;
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

fn randomized_partitions(g: &UndirectedGraph, k: usize, seed: u64, trials: u64) -> BTreeSet<Vec<u32>> {
    let big = g.total_finite_weight() as u128 + 1;
    const CHUNK: u64 = 2048;
    let chunks: Vec<u64> = (0..trials.div_ceil(CHUNK)).collect();
    let found = par::map(&chunks, |&c| {
        let mut set = BTreeSet::new();
        for trial in c * CHUNK..((c + 1) * CHUNK).min(trials) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            set.insert(canonical_labels(&contract_once(g, k, big, &mut rng)));
        }
        set
    });
    found.into_iter().fold(BTreeSet::new(), |mut acc, s| {
        acc.extend(s);
        acc
    })
}

fn within_twice(gamma: u64, best: u64) -> bool {
    if best == INFINITE {
        return true;
    }
    gamma != INFINITE && (gamma as u128) <= 2 * best as u128
}

/// Lists the k-partitions of `g` with `γ ≤ 2·γ^k`. With `trials = None`
/// the randomized path runs [`default_trials`] contractions.
pub fn enumerate_2approx_kcuts(
    g: &UndirectedGraph,
    k: usize,
    seed: u64,
    trials: Option<u64>,
    method: EnumMethod,
) -> Result<EnumeratedCuts> {
    let n = g.node_count();
    if k == 0 || n < k {
        return Err(Error::invalid(format!("cannot split {n} nodes into {k} blocks")));
    }
    let exact = match method {
        EnumMethod::Exact => true,
        EnumMethod::Randomized => false,
        EnumMethod::Auto => n <= EXACT_FALLBACK_MAX_NODES,
    };
    let mut all: Vec<(u64, Vec<u32>)> = Vec::new();
    let mut used_trials = 0;
    if exact {
        for_each_partition(n, k, |labels| {
            all.push((gamma_of_labels(g, labels), labels.to_vec()));
            true
        });
    } else {
        used_trials = trials.unwrap_or_else(|| default_trials(n, k));
        for labels in randomized_partitions(g, k, seed, used_trials) {
            all.push((gamma_of_labels(g, &labels), labels));
        }
    }
    let best = all.iter().map(|p| p.0).min().unwrap_or(INFINITE);
    let mut partitions: Vec<Partition> = all
        .into_iter()
        .filter(|(gm, _)| within_twice(*gm, best))
        .map(|(gm, labels)| {
            let mut blocks = vec![NodeSet::new(n); k];
            for (v, &b) in labels.iter().enumerate() {
                blocks[b as usize].insert(v);
            }
            Partition { blocks, gamma: gm }
        })
        .collect();
    partitions.sort_by(|a, b| (a.gamma, &a.blocks).cmp(&(b.gamma, &b.blocks)));
    Ok(EnumeratedCuts { k, best, partitions, trials: used_trials, seed, exact })
}

/// Options for [`st_sep_kcut`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SepKCutOptions {
    pub seed: u64,
    pub trials: Option<u64>,
    pub method: EnumMethod,
}

impl Default for SepKCutOptions {
    fn default() -> Self {
        SepKCutOptions { seed: 1, trials: None, method: EnumMethod::Auto }
    }
}

/// Minimum k-partition with `s` and `t` in different blocks.
pub fn st_sep_kcut(g: &UndirectedGraph, s: NodeId, t: NodeId, k: usize, opts: SepKCutOptions) -> Result<Partition> {
    let n = g.node_count();
    if s >= n || t >= n || s == t {
        return Err(Error::invalid("terminals must be two distinct nodes"));
    }
    if k < 2 || k > n {
        return Err(Error::invalid(format!("k = {k} must lie in 2..={n}")));
    }
    let mut edges: Vec<(NodeId, NodeId, u64)> = g.edges().iter().map(|e| (e.tail, e.head, e.weight)).collect();
    edges.push((s, t, INFINITE));
    let h = UndirectedGraph::new(n, edges)?;
    let coarse = enumerate_2approx_kcuts(&h, k - 1, opts.seed, opts.trials, opts.method)?;
    let mut best: Option<Partition> = None;
    for p in &coarse.partitions {
        let wi = p.block_of(s);
        let w = &p.blocks[wi];
        if !w.contains(t) {
            continue;
        }
        let (sub, old_of) = g.induced(w);
        let ls = old_of.iter().position(|&v| v == s).expect("s in W");
        let lt = old_of.iter().position(|&v| v == t).expect("t in W");
        let cut = undirected_min_cut(&sub, ls, lt)?;
        let u1 = NodeSet::from_nodes(n, cut.min_sink_side.iter().map(|v| old_of[v]));
        let u2 = w.difference(&u1);
        let mut blocks: Vec<NodeSet> = p.blocks.iter().enumerate().filter(|&(i, _)| i != wi).map(|(_, b)| b.clone()).collect();
        blocks.push(u1);
        blocks.push(u2);
        let cand = Partition::from_blocks(g, &blocks);
        if best.as_ref().is_none_or(|b| (cand.gamma, &cand.blocks) < (b.gamma, &b.blocks)) {
            best = Some(cand);
        }
    }
    best.ok_or_else(|| Error::infeasible("no enumerated partition keeps s and t together"))
}

/// Node-weighted distances from `src` where entering `v` costs `x[v]`
/// (the source itself is free); returns distances and predecessors.
fn node_dijkstra(g: &UndirectedGraph, x: &[f64], src: NodeId) -> (Vec<f64>, Vec<usize>) {
    let n = g.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut prev = vec![usize::MAX; n];
    let mut done = vec![false; n];
    dist[src] = 0.0;
    loop {
        let mut best = None;
        for v in 0..n {
            if !done[v] && dist[v].is_finite() && best.is_none_or(|b: usize| dist[v] < dist[b]) {
                best = Some(v);
            }
        }
        let Some(u) = best else { break };
        done[u] = true;
        for &e in g.incident(u) {
            let v = g.other_end(e, u);
            let cand = dist[u] + x[v];
            if !done[v] && cand < dist[v] {
                dist[v] = cand;
                prev[v] = u;
            }
        }
    }
    (dist, prev)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiwaySolution {
    pub nodes: NodeSet,
    pub cost: u64,
    pub lp_value: f64,
    pub terminals: Vec<NodeId>,
}

fn lp_error(e: LpError) -> Error {
    match e {
        LpError::Infeasible => Error::infeasible("two terminals are joined through undeletable nodes"),
        other => Error::Lp(other),
    }
}

/// Node multiway cut: LP with lazily generated terminal-path rows, rounded
/// by threshold `x ≥ 1/2` and by a ball-growing sweep; the cheaper feasible
/// result is returned (cost ≤ 2·LP).
pub fn node_multiway_cut_approx(g: &UndirectedGraph, terminals: &[NodeId], costs: &[u64]) -> Result<MultiwaySolution> {
    let n = g.node_count();
    if terminals.len() < 2 {
        return Err(Error::invalid("need at least two terminals"));
    }
    if costs.len() != n {
        return Err(Error::invalid("one cost per node required"));
    }
    let term = NodeSet::from_nodes(n, terminals.iter().copied());
    if term.len() != terminals.len() || terminals.iter().any(|&x| x >= n) {
        return Err(Error::invalid("terminals must be distinct nodes"));
    }
    for (i, &a) in terminals.iter().enumerate() {
        for &b in &terminals[i + 1..] {
            if g.adjacent(a, b) {
                return Err(Error::infeasible(format!("terminals {a} and {b} are adjacent")));
            }
        }
    }
    let fixed: Vec<bool> = (0..n).map(|v| term.contains(v) || costs[v] == INFINITE).collect();
    let mut model = LpModel::new((0..n).map(|v| if fixed[v] { 0.0 } else { costs[v] as f64 }).collect());
    for v in 0..n {
        if fixed[v] {
            model.fix_zero(v);
        }
    }
    let mut oracle = |x: &[f64], tol: f64| {
        let mut worst: Option<(f64, NodeId, NodeId, Vec<usize>)> = None;
        for (i, &a) in terminals.iter().enumerate() {
            let (dist, prev) = node_dijkstra(g, x, a);
            for &b in &terminals[i + 1..] {
                if dist[b].is_finite() {
                    let viol = 1.0 - dist[b];
                    if viol > tol && worst.as_ref().is_none_or(|w| viol > w.0) {
                        worst = Some((viol, a, b, prev.clone()));
                    }
                }
            }
        }
        let (_, a, b, prev) = worst?;
        let mut coeffs = Vec::new();
        let mut v = prev[b];
        while v != a {
            if !fixed[v] {
                coeffs.push((v, 1.0));
            }
            v = prev[v];
        }
        coeffs.reverse();
        Some(Row::new(coeffs, 1.0))
    };
    let sol = lp::solve_with_separation(&mut model, &mut oracle, LpOptions::default()).map_err(lp_error)?;
    let x = &sol.x;
    let cost_of = |s: &NodeSet| weight::sum(s.iter().map(|v| costs[v]));
    let mut best: Option<(NodeSet, u64)> = None;
    let mut consider = |s: NodeSet| {
        if certificate::node_multiway(g, &s, terminals) {
            let c = cost_of(&s);
            if c != INFINITE && best.as_ref().is_none_or(|(_, b)| c < *b) {
                best = Some((s, c));
            }
        }
    };
    consider(NodeSet::from_nodes(n, (0..n).filter(|&v| !fixed[v] && x[v] >= 0.5 - 1e-6)));
    // ball growing: v is cut at radius θ when d_i(v) − x_v < θ ≤ d_i(v)
    let dists: Vec<Vec<f64>> = terminals.iter().map(|&a| node_dijkstra(g, x, a).0).collect();
    let mut points = vec![0.0, 0.5];
    for d in &dists {
        for v in 0..n {
            for p in [d[v], d[v] - x[v]] {
                if p > 0.0 && p < 0.5 {
                    points.push(p);
                }
            }
        }
    }
    points.sort_by(f64::total_cmp);
    points.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    for w in points.windows(2) {
        let theta = (w[0] + w[1]) / 2.0;
        let cut = NodeSet::from_nodes(
            n,
            (0..n).filter(|&v| !fixed[v] && dists.iter().any(|d| d[v] - x[v] < theta && theta <= d[v])),
        );
        consider(cut);
    }
    let (nodes, cost) = best.ok_or_else(|| Error::infeasible("rounding produced no separating node set"))?;
    Ok(MultiwaySolution { nodes, cost, lp_value: sol.value, terminals: terminals.to_vec() })
}

/// Node-3-Cut: best multiway cut over all pairwise non-adjacent triples.
pub fn node_3cut_approx(g: &UndirectedGraph, costs: &[u64]) -> Result<MultiwaySolution> {
    let n = g.node_count();
    if n < 3 {
        return Err(Error::invalid("Node-3-Cut needs at least three nodes"));
    }
    let mut triples = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if g.adjacent(a, b) {
                continue;
            }
            for c in b + 1..n {
                if !g.adjacent(a, c) && !g.adjacent(b, c) {
                    triples.push([a, b, c]);
                }
            }
        }
    }
    par::min_by_key(&triples, |_, tri| node_multiway_cut_approx(g, tri, costs).ok().map(|s| (s.cost, s)))
        .map(|(_, _, s)| s)
        .ok_or_else(|| Error::infeasible("no node triple can be separated"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> UndirectedGraph {
        UndirectedGraph::unit(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn partition_counts() {
        // Stirling numbers S(5,2) = 15, S(6,3) = 90
        let mut c = 0;
        for_each_partition(5, 2, |_| {
            c += 1;
            true
        });
        assert_eq!(c, 15);
        c = 0;
        for_each_partition(6, 3, |_| {
            c += 1;
            true
        });
        assert_eq!(c, 90);
    }

    #[test]
    fn path_two_cuts() {
        let p4 = UndirectedGraph::unit(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let e = enumerate_2approx_kcuts(&p4, 2, 1, None, EnumMethod::Exact).unwrap();
        assert_eq!(e.best, 1);
        assert_eq!(e.partitions.iter().filter(|p| p.gamma == 1).count(), 3);
    }

    #[test]
    fn cycle_three_cuts_randomized() {
        let e = enumerate_2approx_kcuts(&cycle(8), 3, 1, None, EnumMethod::Randomized).unwrap();
        assert_eq!(e.best, 3);
        assert_eq!(e.partitions.iter().filter(|p| p.gamma == 3).count(), 56);
        assert_eq!(e.trials, default_trials(8, 3));
    }

    #[test]
    fn sep_kcut_examples() {
        let path = UndirectedGraph::unit(3, [(0, 1), (1, 2)]).unwrap();
        let p = st_sep_kcut(&path, 0, 2, 3, SepKCutOptions::default()).unwrap();
        assert_eq!(p.gamma, 2);
        let c6 = cycle(6);
        let p = st_sep_kcut(&c6, 0, 3, 3, SepKCutOptions::default()).unwrap();
        assert_eq!(p.gamma, 3);
        assert!(certificate::partition(6, &p.blocks, 3, Some((0, 3))));
    }

    #[test]
    fn multiway_examples() {
        let path = UndirectedGraph::unit(3, [(0, 1), (1, 2)]).unwrap();
        let s = node_multiway_cut_approx(&path, &[0, 2], &[1, 1, 1]).unwrap();
        assert_eq!(s.nodes.to_vec(), vec![1]);
        let star = UndirectedGraph::unit(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let s = node_multiway_cut_approx(&star, &[1, 2, 3], &[1; 4]).unwrap();
        assert_eq!(s.nodes.to_vec(), vec![0]);
        let s = node_3cut_approx(&star, &[1; 4]).unwrap();
        assert_eq!(s.cost, 1);
        assert!(matches!(node_multiway_cut_approx(&path, &[0, 1], &[1; 3]), Err(Error::Infeasible(_))));
    }
}
