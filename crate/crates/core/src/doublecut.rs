//! Double cuts: the exact edge version (one max-flow on a two-layer graph)
//! and the Path-Blocking-LP 2-approximation for the node version.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::certificate;
use crate::error::{Error, Result};
use crate::flow::min_cut;
use crate::graph::{coreach_filtered, in_cut, Filter, WeightedDigraph};
use crate::lp::{self, LpError, LpModel, LpOptions, Row, SeparationOracle};
use crate::nodeset::NodeSet;
use crate::par;
use crate::weight::{self, INFINITE};
use crate::{ArcId, NodeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Removed {
    Arcs(Vec<ArcId>),
    Nodes(NodeSet),
}

/// A double cut with its witness: the node sets reaching `s` and `t` in
/// the reduced graph. Both are nonempty, disjoint and have no entering arc.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleCutSolution {
    pub removed: Removed,
    pub s: NodeId,
    pub t: NodeId,
    pub witness: (NodeSet, NodeSet),
    pub cost: u64,
    /// Path-Blocking-LP value for the node version.
    pub lp_value: Option<f64>,
}

impl DoubleCutSolution {
    /// Re-checks feasibility from scratch.
    pub fn certify(&self, g: &WeightedDigraph) -> bool {
        match &self.removed {
            Removed::Arcs(a) => certificate::edge_double_cut(g, a, self.s, self.t),
            Removed::Nodes(u) => certificate::node_double_cut(g, u, self.s, self.t),
        }
    }
}

fn witness(g: &WeightedDigraph, s: NodeId, t: NodeId, filter: Filter<'_>) -> (NodeSet, NodeSet) {
    let n = g.node_count();
    (
        coreach_filtered(g, &NodeSet::singleton(n, s), filter),
        coreach_filtered(g, &NodeSet::singleton(n, t), filter),
    )
}

fn check_pair(g: &WeightedDigraph, s: NodeId, t: NodeId) -> Result<()> {
    let n = g.node_count();
    if s >= n || t >= n {
        return Err(Error::invalid(format!("terminal out of range for {n} nodes")));
    }
    if s == t {
        return Err(Error::invalid("terminals must differ"));
    }
    Ok(())
}

/// Minimum weight arc set after whose removal every node reaches at most
/// one of `s`, `t`.
pub fn st_edge_double_cut_exact(g: &WeightedDigraph, s: NodeId, t: NodeId) -> Result<DoubleCutSolution> {
    check_pair(g, s, t)?;
    let n = g.node_count();
    // layer 1 prices d^in(A) with A ∋ s; layer 2 carries reversed arcs and
    // prices d^out(V∖B) with B ∋ t; v₂ → v₁ keeps A and B disjoint
    let mut arcs = Vec::with_capacity(2 * g.arc_count() + n);
    for a in g.arcs() {
        arcs.push((a.tail, a.head, a.weight));
        arcs.push((n + a.head, n + a.tail, a.weight));
    }
    for v in 0..n {
        arcs.push((n + v, v, INFINITE));
    }
    let aux = WeightedDigraph::new(2 * n, arcs)?;
    let sources = NodeSet::from_nodes(2 * n, [t, n + t]);
    let sinks = NodeSet::from_nodes(2 * n, [s, n + s]);
    let cut = min_cut(&aux, &sources, &sinks)?;
    if !cut.is_finite() {
        return Err(Error::infeasible("every double cut needs an infinite arc"));
    }
    let x = &cut.min_sink_side;
    let a = NodeSet::from_nodes(n, (0..n).filter(|&v| x.contains(v)));
    let b = NodeSet::from_nodes(n, (0..n).filter(|&v| !x.contains(n + v)));
    let (mut removed, wa) = in_cut(g, &a);
    let (rb, wb) = in_cut(g, &b);
    removed.extend(rb);
    removed.sort_unstable();
    let cost = weight::add(wa, wb);
    debug_assert_eq!(cost, cut.value);
    let mask = {
        let mut m = vec![false; g.arc_count()];
        removed.iter().for_each(|&i| m[i] = true);
        m
    };
    let witness = witness(g, s, t, Filter::arcs(&mask));
    Ok(DoubleCutSolution { removed: Removed::Arcs(removed), s, t, witness, cost, lp_value: None })
}

fn unordered_pairs(n: usize) -> Vec<(NodeId, NodeId)> {
    (0..n).flat_map(|s| (s + 1..n).map(move |t| (s, t))).collect()
}

/// Global edge double cut: best fixed-pair answer over all unordered pairs,
/// ties broken by the lexicographically smallest pair.
pub fn edge_double_cut_exact(g: &WeightedDigraph) -> Result<DoubleCutSolution> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::invalid("double cut needs at least two nodes"));
    }
    let pairs = unordered_pairs(n);
    par::min_by_key(&pairs, |_, &(s, t)| st_edge_double_cut_exact(g, s, t).ok().map(|sol| (sol.cost, sol)))
        .map(|(_, _, sol)| sol)
        .ok_or_else(|| Error::infeasible("no pair admits a finite double cut"))
}

/// Node-weighted distances `dist(v→x)` including both endpoints, and the
/// next node on a shortest path.
fn node_distances(g: &WeightedDigraph, d: &[f64], x: NodeId) -> (Vec<f64>, Vec<usize>) {
    let n = g.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut next = vec![usize::MAX; n];
    let mut done = vec![false; n];
    dist[x] = d[x];
    loop {
        let mut best = None;
        for v in 0..n {
            if !done[v] && dist[v].is_finite() && best.is_none_or(|b: usize| dist[v] < dist[b]) {
                best = Some(v);
            }
        }
        let Some(w) = best else { break };
        done[w] = true;
        for &id in g.in_arcs(w) {
            let u = g.arc(id).tail;
            let cand = d[u] + dist[w];
            if !done[u] && cand < dist[u] {
                dist[u] = cand;
                next[u] = w;
            }
        }
    }
    (dist, next)
}

fn path_nodes(next: &[usize], from: NodeId, to: NodeId) -> Vec<NodeId> {
    let mut path = vec![from];
    let mut v = from;
    while v != to {
        v = next[v];
        path.push(v);
    }
    path
}

/// Separation for Path-Blocking-LP: the most violated node `u` (smallest id
/// on ties) and the row of its two shortest paths.
#[derive(Debug, Clone)]
pub struct PathBlockingOracle<'g> {
    g: &'g WeightedDigraph,
    s: NodeId,
    t: NodeId,
    fixed: Vec<bool>,
}

impl<'g> PathBlockingOracle<'g> {
    pub fn new(g: &'g WeightedDigraph, s: NodeId, t: NodeId, costs: &[u64]) -> Self {
        let fixed = (0..g.node_count()).map(|v| v == s || v == t || costs[v] == INFINITE).collect();
        PathBlockingOracle { g, s, t, fixed }
    }

    /// `dist(v→s)` and `dist(v→t)` for every node.
    pub fn distances(&self, d: &[f64]) -> (Vec<f64>, Vec<f64>) {
        (node_distances(self.g, d, self.s).0, node_distances(self.g, d, self.t).0)
    }

    /// Largest violation `1 − (dist(u→s) + dist(u→t) − d_u)` over nodes
    /// reaching both terminals, with the node attaining it.
    pub fn max_violation(&self, d: &[f64]) -> Option<(NodeId, f64)> {
        let (ds, dt) = self.distances(d);
        let mut best: Option<(NodeId, f64)> = None;
        for u in 0..self.g.node_count() {
            if ds[u].is_finite() && dt[u].is_finite() {
                let viol = 1.0 - (ds[u] + dt[u] - d[u]);
                if best.is_none_or(|(_, b)| viol > b) {
                    best = Some((u, viol));
                }
            }
        }
        best
    }

    /// `d` satisfies every path-pair constraint up to `tol`.
    pub fn is_feasible(&self, d: &[f64], tol: f64) -> bool {
        self.max_violation(d).is_none_or(|(_, v)| v <= tol)
    }
}

impl SeparationOracle for PathBlockingOracle<'_> {
    fn separate(&mut self, d: &[f64], tol: f64) -> Option<Row> {
        let (u, viol) = self.max_violation(d)?;
        if viol <= tol {
            return None;
        }
        let (_, ns) = node_distances(self.g, d, self.s);
        let (_, nt) = node_distances(self.g, d, self.t);
        let mut coef = vec![0.0; self.g.node_count()];
        for v in path_nodes(&ns, u, self.s) {
            coef[v] += 1.0;
        }
        for v in path_nodes(&nt, u, self.t) {
            coef[v] += 1.0;
        }
        coef[u] -= 1.0;
        let coeffs = coef
            .iter()
            .enumerate()
            .filter(|&(v, &c)| c != 0.0 && !self.fixed[v])
            .map(|(v, &c)| (v, c))
            .collect();
        Some(Row::new(coeffs, 1.0))
    }
}

/// The LP model (no rows yet) and its separation oracle.
pub fn build_path_blocking_lp<'g>(
    g: &'g WeightedDigraph,
    s: NodeId,
    t: NodeId,
    costs: &[u64],
) -> (LpModel, PathBlockingOracle<'g>) {
    let oracle = PathBlockingOracle::new(g, s, t, costs);
    let objective = (0..g.node_count())
        .map(|v| if oracle.fixed[v] { 0.0 } else { costs[v] as f64 })
        .collect();
    let mut model = LpModel::new(objective);
    for v in 0..g.node_count() {
        if oracle.fixed[v] {
            model.fix_zero(v);
        }
    }
    (model, oracle)
}

/// Nodes outside `x` with an arc into `x`.
fn in_neighbours(g: &WeightedDigraph, x: &NodeSet) -> NodeSet {
    let mut out = NodeSet::new(g.node_count());
    for a in g.arcs() {
        if x.contains(a.head) && !x.contains(a.tail) {
            out.insert(a.tail);
        }
    }
    out
}

/// Derandomized threshold rounding: sweeps every θ between consecutive
/// breakpoints in `(0, 1/2)` and returns the cheapest feasible
/// `U(θ) = Δ^in(B(s,θ)) ∪ Δ^in(B(t,θ))` with its cost.
pub fn round_path_blocking(
    g: &WeightedDigraph,
    s: NodeId,
    t: NodeId,
    costs: &[u64],
    d: &[f64],
) -> Result<(NodeSet, u64)> {
    let n = g.node_count();
    let (ds, _) = node_distances(g, d, s);
    let (dt, _) = node_distances(g, d, t);
    let mut points = vec![0.0, 0.5];
    for v in 0..n {
        for dist in [ds[v], dt[v]] {
            for p in [dist, dist - d[v]] {
                if p > 0.0 && p < 0.5 {
                    points.push(p);
                }
            }
        }
    }
    points.sort_by(f64::total_cmp);
    points.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let mut best: Option<(NodeSet, u64)> = None;
    for w in points.windows(2) {
        let theta = (w[0] + w[1]) / 2.0;
        let bs = NodeSet::from_nodes(n, (0..n).filter(|&v| ds[v] <= theta));
        let bt = NodeSet::from_nodes(n, (0..n).filter(|&v| dt[v] <= theta));
        let u = in_neighbours(g, &bs).union(&in_neighbours(g, &bt));
        if u.contains(s) || u.contains(t) || !certificate::node_double_cut(g, &u, s, t) {
            continue;
        }
        let cost = weight::sum(u.iter().map(|v| costs[v]));
        if cost != INFINITE && best.as_ref().is_none_or(|(_, c)| cost < *c) {
            best = Some((u, cost));
        }
    }
    best.ok_or_else(|| Error::infeasible("no threshold yields a feasible node set; LP point infeasible"))
}

fn lp_error(e: LpError) -> Error {
    match e {
        LpError::Infeasible => Error::infeasible("some node reaches both terminals through undeletable nodes"),
        other => Error::Lp(other),
    }
}

/// LP-based 2-approximation for `{s,t}`-NodeDoubleCut.
pub fn st_node_double_cut_2approx(
    g: &WeightedDigraph,
    s: NodeId,
    t: NodeId,
    costs: &[u64],
) -> Result<DoubleCutSolution> {
    check_pair(g, s, t)?;
    if costs.len() != g.node_count() {
        return Err(Error::invalid("one cost per node required"));
    }
    if g.adjacent(s, t) {
        return Err(Error::infeasible(format!("terminals {s} and {t} are joined by an arc")));
    }
    let (mut model, mut oracle) = build_path_blocking_lp(g, s, t, costs);
    let sol = lp::solve_with_separation(&mut model, &mut oracle, LpOptions::default()).map_err(lp_error)?;
    let (u, cost) = round_path_blocking(g, s, t, costs, &sol.x)?;
    let alive = u.complement();
    let witness = witness(g, s, t, Filter::nodes(&alive));
    Ok(DoubleCutSolution { removed: Removed::Nodes(u), s, t, witness, cost, lp_value: Some(sol.value) })
}

/// Global node double cut: best over non-adjacent unordered pairs.
pub fn node_double_cut_2approx(g: &WeightedDigraph, costs: &[u64]) -> Result<DoubleCutSolution> {
    let n = g.node_count();
    let pairs: Vec<(NodeId, NodeId)> = unordered_pairs(n).into_iter().filter(|&(s, t)| !g.adjacent(s, t)).collect();
    if pairs.is_empty() {
        return Err(Error::infeasible("every pair of nodes is joined by an arc"));
    }
    par::min_by_key(&pairs, |_, &(s, t)| {
        st_node_double_cut_2approx(g, s, t, costs).ok().map(|sol| (sol.cost, sol))
    })
    .map(|(_, _, sol)| sol)
    .ok_or_else(|| Error::infeasible("no pair admits a finite node double cut"))
}
