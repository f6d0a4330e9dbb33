//! Bicuts: fixed-terminal 2-approximations, the exact fixed-intersection
//! and fixed-complement subroutines, the minimum uncomparable cut-pair and
//! the global `(2 − 1/448)`-approximation.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::doublecut::edge_double_cut_exact;
use crate::error::{Error, Result};
use crate::flow::min_cut;
use crate::graph::{arcs_inside, beta_sigma, between, contract, reach_filtered, CutPair, Filter, WeightedDigraph};
use crate::lin3cut::lin3cut_star_32approx;
use crate::nodeset::NodeSet;
use crate::par;
use crate::weight::{self, INFINITE};
use crate::{ArcId, NodeId};

/// Which routine produced a bicut.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BicutMethod {
    StEdge2Approx,
    SStar2Approx,
    FixedIntersection,
    FixedComplement,
    MinUncomparable,
    Global,
}

/// Candidate pairs built from one 6-tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TupleCandidate {
    /// `(X′, Y′)`
    Base,
    /// `(X′∪Z′, Y′∪Z′)`
    UnionZ,
    /// `(X′∖W′, Y′∖W′)`
    MinusW,
    /// `(X′∩B̂, Y′∪Â)`
    Lin3,
}

/// Where a bicut came from, for auditing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Terminals { s: NodeId, t: NodeId },
    Intersection(NodeSet),
    Complement(NodeSet),
    Uncomparable { a: NodeId, b: NodeId },
    /// `(x, y, w₁, w₂, z₁, z₂)` and the candidate family.
    Tuple { tuple: [NodeId; 6], candidate: TupleCandidate },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicutSolution {
    pub pair: CutPair,
    pub removed_arcs: Vec<ArcId>,
    pub cost: u64,
    pub method: BicutMethod,
    pub provenance: Provenance,
    /// False when the global tuple loop was sampled.
    pub exhaustive: bool,
}

impl BicutSolution {
    fn new(g: &WeightedDigraph, a: NodeSet, b: NodeSet, method: BicutMethod, provenance: Provenance) -> Self {
        let pair = beta_sigma(g, &a, &b);
        let removed_arcs = pair.removed_arcs(g);
        let cost = pair.beta;
        BicutSolution { pair, removed_arcs, cost, method, provenance, exhaustive: true }
    }

    /// The pair is uncomparable and, after deleting `removed_arcs`, no node
    /// of `A∖B` reaches `B∖A` and vice versa.
    pub fn certify(&self, g: &WeightedDigraph) -> bool {
        let (a, b) = (&self.pair.a, &self.pair.b);
        if !a.is_uncomparable(b) {
            return false;
        }
        let mut mask = vec![false; g.arc_count()];
        self.removed_arcs.iter().for_each(|&i| mask[i] = true);
        let (only_a, only_b) = (a.difference(b), b.difference(a));
        reach_filtered(g, &only_a, Filter::arcs(&mask)).is_disjoint(&only_b)
            && reach_filtered(g, &only_b, Filter::arcs(&mask)).is_disjoint(&only_a)
    }
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

/// Union of a minimum `s→t` cut and a minimum `t→s` cut.
pub fn st_edge_bicut_2approx(g: &WeightedDigraph, s: NodeId, t: NodeId) -> Result<BicutSolution> {
    check_pair(g, s, t)?;
    let n = g.node_count();
    let (ss, ts) = (NodeSet::singleton(n, s), NodeSet::singleton(n, t));
    let into_t = min_cut(g, &ss, &ts)?;
    let into_s = min_cut(g, &ts, &ss)?;
    if !into_t.is_finite() || !into_s.is_finite() {
        return Err(Error::infeasible("every st-bicut needs an infinite arc"));
    }
    Ok(BicutSolution::new(
        g,
        into_t.min_sink_side,
        into_s.min_sink_side,
        BicutMethod::StEdge2Approx,
        Provenance::Terminals { s, t },
    ))
}

/// `{s,*}` bicut: the best `st` answer over all `t ≠ s`.
pub fn s_star_edge_bicut_2approx(g: &WeightedDigraph, s: NodeId) -> Result<BicutSolution> {
    let n = g.node_count();
    if n < 2 || s >= n {
        return Err(Error::invalid("need n >= 2 and s in range"));
    }
    let ts: Vec<NodeId> = (0..n).filter(|&t| t != s).collect();
    par::min_by_key(&ts, |_, &t| st_edge_bicut_2approx(g, s, t).ok().map(|sol| (sol.cost, sol)))
        .map(|(_, _, mut sol)| {
            sol.method = BicutMethod::SStar2Approx;
            sol
        })
        .ok_or_else(|| Error::infeasible("no terminal admits a finite bicut"))
}

/// A node bicut: deleted nodes and the separated terminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeBicutSolution {
    pub nodes: NodeSet,
    pub cost: u64,
    pub s: NodeId,
    pub t: NodeId,
}

impl NodeBicutSolution {
    pub fn certify(&self, g: &WeightedDigraph) -> bool {
        crate::certificate::node_bicut(g, &self.nodes, self.s, self.t)
    }
}

/// Node `v` becomes `2v → 2v+1` (split arc id `v`, weight = cost, infinite
/// for terminals); arc `u→v` becomes `2u+1 → 2v` with infinite weight.
fn split_graph(g: &WeightedDigraph, costs: &[u64], s: NodeId, t: NodeId) -> WeightedDigraph {
    let n = g.node_count();
    let mut arcs = Vec::with_capacity(n + g.arc_count());
    for v in 0..n {
        let w = if v == s || v == t { INFINITE } else { costs[v] };
        arcs.push((2 * v, 2 * v + 1, w));
    }
    for a in g.arcs() {
        arcs.push((2 * a.tail + 1, 2 * a.head, INFINITE));
    }
    WeightedDigraph::new(2 * n, arcs).expect("split graph is valid")
}

fn st_node_bicut(g: &WeightedDigraph, costs: &[u64], s: NodeId, t: NodeId) -> Option<NodeBicutSolution> {
    let n = g.node_count();
    let split = split_graph(g, costs, s, t);
    let sol = st_edge_bicut_2approx(&split, 2 * s, 2 * t).ok()?;
    let nodes = NodeSet::from_nodes(n, sol.removed_arcs.iter().copied().filter(|&id| id < n));
    let cost = weight::sum(nodes.iter().map(|v| costs[v]));
    (cost != INFINITE).then_some(NodeBicutSolution { nodes, cost, s, t })
}

/// Node bicut 2-approximation over all non-adjacent terminal pairs.
pub fn node_bicut_2approx(g: &WeightedDigraph, costs: &[u64]) -> Result<NodeBicutSolution> {
    let n = g.node_count();
    if costs.len() != n {
        return Err(Error::invalid("one cost per node required"));
    }
    let pairs: Vec<(NodeId, NodeId)> =
        (0..n).flat_map(|s| (s + 1..n).map(move |t| (s, t))).filter(|&(s, t)| !g.adjacent(s, t)).collect();
    if pairs.is_empty() {
        return Err(Error::infeasible("every pair of nodes is joined by an arc"));
    }
    par::min_by_key(&pairs, |_, &(s, t)| st_node_bicut(g, costs, s, t).map(|sol| (sol.cost, sol)))
        .map(|(_, _, sol)| sol)
        .ok_or_else(|| Error::infeasible("no pair admits a finite node bicut"))
}

/// Minimum `σ(A,B)` over uncomparable pairs, from `n(n−1)` minimum cuts.
pub fn min_uncomparable_pair(g: &WeightedDigraph) -> Result<BicutSolution> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::invalid("need at least two nodes"));
    }
    let ordered: Vec<(NodeId, NodeId)> =
        (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    // sides[i] = min sink side of the minimum {a}→{b} cut for ordered[i]
    let sides = par::map(&ordered, |&(a, b)| {
        let c = min_cut(g, &NodeSet::singleton(n, a), &NodeSet::singleton(n, b)).expect("distinct terminals");
        (c.value, c.min_sink_side)
    });
    let index = |a: NodeId, b: NodeId| a * (n - 1) + if b > a { b - 1 } else { b };
    let (_, _, (a, b)) = par::min_by_key(&ordered, |_, &(a, b)| {
        let (va, _) = &sides[index(b, a)];
        let (vb, _) = &sides[index(a, b)];
        let sigma = weight::add(*va, *vb);
        (sigma != INFINITE).then_some((sigma, (a, b)))
    })
    .ok_or_else(|| Error::infeasible("every uncomparable pair has an infinite entering arc"))?;
    Ok(BicutSolution::new(
        g,
        sides[index(b, a)].1.clone(),
        sides[index(a, b)].1.clone(),
        BicutMethod::MinUncomparable,
        Provenance::Uncomparable { a, b },
    ))
}

/// Minimum `β(A,B)` over uncomparable pairs with `A∩B = z`.
pub fn bicut_fixed_intersection(g: &WeightedDigraph, z: &NodeSet) -> Result<BicutSolution> {
    let rest = z.complement();
    if rest.len() < 2 {
        return Err(Error::invalid("need at least two nodes outside the intersection"));
    }
    let (h, old_of) = g.induced(&rest);
    let sol = edge_double_cut_exact(&h)?;
    let n = g.node_count();
    let lift = |x: &NodeSet| {
        let mut out = z.clone();
        for v in x {
            out.insert(old_of[v]);
        }
        out
    };
    let (a, b) = (lift(&sol.witness.0), lift(&sol.witness.1));
    debug_assert_eq!(a.universe(), n);
    let out = BicutSolution::new(g, a, b, BicutMethod::FixedIntersection, Provenance::Intersection(z.clone()));
    if out.cost == INFINITE {
        return Err(Error::infeasible("every pair with this intersection has an infinite entering arc"));
    }
    Ok(out)
}

/// Minimum `β(A,B)` over uncomparable pairs with `V∖(A∪B) = w`.
pub fn bicut_fixed_complement(g: &WeightedDigraph, w: &NodeSet) -> Result<BicutSolution> {
    let rev = g.reversed();
    let sol = bicut_fixed_intersection(&rev, w)?;
    Ok(BicutSolution::new(
        g,
        sol.pair.a.complement(),
        sol.pair.b.complement(),
        BicutMethod::FixedComplement,
        Provenance::Complement(w.clone()),
    ))
}

/// The six boundary counts `α₁ … α₆` of the final case analysis.
pub fn bicut_alpha_diagnostics(
    g: &WeightedDigraph,
    x: &NodeSet,
    y: &NodeSet,
    z: &NodeSet,
    w: &NodeSet,
    z_prime: &NodeSet,
) -> [u64; 6] {
    let x_only = x.difference(y);
    let y_only = y.difference(x);
    let outside = w.difference(&x.union(y));
    let core = x.intersection(y).intersection(z_prime);
    [
        between(g, &outside, &w.intersection(&x_only)),
        between(g, &outside, &w.intersection(&y_only)),
        between(g, &w.intersection(&x_only), &z.intersection(&x_only)),
        between(g, &w.intersection(&y_only), &z.intersection(&y_only)),
        between(g, &z.intersection(&x_only), &core),
        between(g, &z.intersection(&y_only), &core),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalBicutOptions {
    /// Evaluate at most this many 6-tuples, sampled with `seed`. The
    /// approximation guarantee only holds for the full loop.
    pub tuple_limit: Option<usize>,
    pub seed: u64,
}

impl Default for GlobalBicutOptions {
    fn default() -> Self {
        GlobalBicutOptions { tuple_limit: None, seed: 1 }
    }
}

/// Tuples `(x, y, w₁, w₂, z₁, z₂)` of distinct nodes. Every set built
/// from a tuple is symmetric in `w₁,w₂` and in `z₁,z₂`, so only
/// `w₁ < w₂`, `z₁ < z₂` are listed.
pub fn tuples(n: usize) -> Vec<[NodeId; 6]> {
    let mut out = Vec::new();
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            for w1 in 0..n {
                for w2 in w1 + 1..n {
                    for z1 in 0..n {
                        for z2 in z1 + 1..n {
                            let t = [x, y, w1, w2, z1, z2];
                            if (0..6).all(|i| (0..i).all(|j| t[i] != t[j])) {
                                out.push(t);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn double_inside(g: &WeightedDigraph, p: &NodeSet, q: &NodeSet) -> WeightedDigraph {
    let mut mark = vec![false; g.arc_count()];
    arcs_inside(g, p).into_iter().chain(arcs_inside(g, q)).for_each(|i| mark[i] = true);
    g.map_weights(|i, a| if mark[i] { weight::double(a.weight) } else { a.weight })
}

/// All finite uncomparable candidates of one tuple, cheapest first by
/// `(β, family)`.
fn tuple_best(g: &WeightedDigraph, t: [NodeId; 6]) -> Option<(u64, TupleCandidate, NodeSet, NodeSet)> {
    let n = g.node_count();
    let [x, y, w1, w2, z1, z2] = t;
    let set = |v: &[NodeId]| NodeSet::from_nodes(n, v.iter().copied());
    let xc = min_cut(g, &set(&[w1, w2, y]), &set(&[x, z1, z2])).ok()?;
    let yc = min_cut(g, &set(&[w1, w2, x]), &set(&[y, z1, z2])).ok()?;
    if !xc.is_finite() || !yc.is_finite() {
        return None;
    }
    let (xp, yp) = (xc.min_sink_side, yc.min_sink_side);

    let mut cands: Vec<(TupleCandidate, NodeSet, NodeSet)> = vec![(TupleCandidate::Base, xp.clone(), yp.clone())];

    let d1 = double_inside(g, &xp, &yp);
    if let Ok(c) = min_cut(&d1, &set(&[w1, w2, x, y]), &set(&[z1, z2])) {
        if c.is_finite() {
            let zp = c.min_sink_side;
            cands.push((TupleCandidate::UnionZ, xp.union(&zp), yp.union(&zp)));
        }
    }
    let d2 = double_inside(g, &xp.complement(), &yp.complement());
    if let Ok(c) = min_cut(&d2, &set(&[w1, w2]), &set(&[x, y, z1, z2])) {
        if c.is_finite() {
            let wp = c.max_sink_side.complement();
            cands.push((TupleCandidate::MinusW, xp.difference(&wp), yp.difference(&wp)));
        }
    }
    let groups = [xp.intersection(&yp), xp.complement()];
    // contract() numbers the groups after the untouched nodes
    let zn = n - groups[0].len() - groups[1].len();
    let wn = zn + 1;
    if let Ok((dp, map)) = contract(g, &groups, |u, v| u == wn && v == zn) {
        if let Ok(sol) = lin3cut_star_32approx(&dp, wn, zn) {
            let pair = sol.pair.expect("star variant returns its pair");
            let (ah, bh) = (map.expand(&pair.a), map.expand(&pair.b));
            cands.push((TupleCandidate::Lin3, xp.intersection(&bh), yp.union(&ah)));
        }
    }

    cands
        .into_iter()
        .filter(|(_, a, b)| a.is_uncomparable(b))
        .map(|(kind, a, b)| (crate::graph::beta(g, &a, &b), kind, a, b))
        .filter(|(c, ..)| *c != INFINITE)
        .min_by_key(|(c, kind, ..)| (*c, *kind))
}

/// Approximate global edge bicut with the default options.
pub fn approximate_global_bicut(g: &WeightedDigraph) -> Result<BicutSolution> {
    approximate_global_bicut_with(g, &GlobalBicutOptions::default())
}

/// Best of: fixed intersection / complement for every node set of size at
/// most 2, the minimum uncomparable pair, and the tuple candidates.
pub fn approximate_global_bicut_with(g: &WeightedDigraph, opts: &GlobalBicutOptions) -> Result<BicutSolution> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::invalid("need at least two nodes"));
    }
    let mut small: Vec<NodeSet> = vec![NodeSet::new(n)];
    small.extend((0..n).map(|v| NodeSet::singleton(n, v)));
    small.extend((0..n).flat_map(|u| (u + 1..n).map(move |v| NodeSet::from_nodes(n, [u, v]))));
    small.retain(|s| n - s.len() >= 2);

    let mut best: Option<BicutSolution> = None;
    let mut offer = |sol: BicutSolution| {
        if best.as_ref().is_none_or(|b| sol.cost < b.cost) {
            best = Some(sol);
        }
    };
    let phase1 = par::map(&small, |s| (bicut_fixed_intersection(g, s).ok(), bicut_fixed_complement(g, s).ok()));
    for (i, c) in phase1 {
        i.into_iter().chain(c).for_each(&mut offer);
    }
    if let Ok(sol) = min_uncomparable_pair(g) {
        offer(sol);
    }

    let mut all = tuples(n);
    let mut exhaustive = true;
    if let Some(limit) = opts.tuple_limit {
        if limit < all.len() {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut picked = rand::seq::index::sample(&mut rng, all.len(), limit).into_vec();
            picked.sort_unstable();
            all = picked.into_iter().map(|i| all[i]).collect();
            exhaustive = false;
        }
    }
    let winner = par::min_by_key(&all, |_, &t| tuple_best(g, t).map(|(c, kind, a, b)| ((c, kind), (kind, a, b))));
    if let Some((i, _, (kind, a, b))) = winner {
        let prov = Provenance::Tuple { tuple: all[i], candidate: kind };
        offer(BicutSolution::new(g, a, b, BicutMethod::Global, prov));
    }
    let mut sol = best.ok_or_else(|| Error::infeasible("every uncomparable pair has an infinite entering arc"))?;
    sol.method = BicutMethod::Global;
    sol.exhaustive = exhaustive;
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, v: &[NodeId]) -> NodeSet {
        NodeSet::from_nodes(n, v.iter().copied())
    }

    #[test]
    fn st_examples() {
        let cyc = WeightedDigraph::unit(2, [(0, 1), (1, 0)]).unwrap();
        let sol = st_edge_bicut_2approx(&cyc, 0, 1).unwrap();
        assert_eq!(sol.cost, 2);
        assert!(sol.certify(&cyc));
        let one = WeightedDigraph::unit(2, [(0, 1)]).unwrap();
        assert_eq!(st_edge_bicut_2approx(&one, 0, 1).unwrap().cost, 1);
        assert_eq!(s_star_edge_bicut_2approx(&cyc, 0).unwrap().cost, 2);
        let star = WeightedDigraph::unit(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(s_star_edge_bicut_2approx(&star, 0).unwrap().cost, 1);
    }

    #[test]
    fn node_examples() {
        // u=2 -> s=0, u -> t=1, isolated 3
        let g = WeightedDigraph::unit(4, [(2, 0), (2, 1)]).unwrap();
        let sol = st_node_bicut(&g, &[1; 4], 0, 1).unwrap();
        assert_eq!(sol.cost, 0);
        let g = WeightedDigraph::unit(3, [(0, 2), (2, 1), (1, 2), (2, 0)]).unwrap();
        let sol = node_bicut_2approx(&g, &[1; 3]).unwrap();
        assert_eq!(sol.nodes, set(3, &[2]));
        assert!(sol.certify(&g));
        let k3 = WeightedDigraph::unit(3, [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]).unwrap();
        assert!(matches!(node_bicut_2approx(&k3, &[1; 3]), Err(Error::Infeasible(_))));
    }

    #[test]
    fn uncomparable_path() {
        let g = WeightedDigraph::unit(3, [(0, 1), (1, 0), (1, 2), (2, 1)]).unwrap();
        let sol = min_uncomparable_pair(&g).unwrap();
        assert_eq!(sol.pair.sigma, 2);
        // (a,b) = (0,1) wins the tie: B is the min sink side {1,2}
        assert_eq!((sol.pair.a.to_vec(), sol.pair.b.to_vec()), (vec![0], vec![1, 2]));
        assert!(sol.certify(&g));
    }

    #[test]
    fn fixed_sets() {
        let cyc = WeightedDigraph::unit(2, [(0, 1), (1, 0)]).unwrap();
        let sol = bicut_fixed_intersection(&cyc, &NodeSet::new(2)).unwrap();
        assert_eq!(sol.cost, 2);
        let sol = bicut_fixed_complement(&cyc, &NodeSet::new(2)).unwrap();
        assert_eq!(sol.cost, 2);
        assert!(sol.certify(&cyc));
        assert!(bicut_fixed_intersection(&cyc, &set(2, &[0])).is_err());
    }

    #[test]
    fn global_small() {
        let cyc = WeightedDigraph::unit(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(approximate_global_bicut(&cyc).unwrap().cost, 2);
        let tri = WeightedDigraph::unit(3, [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]).unwrap();
        let sol = approximate_global_bicut(&tri).unwrap();
        assert_eq!(sol.cost, 4);
        assert!(sol.certify(&tri));
    }

    #[test]
    fn tuple_loop_runs() {
        let arcs: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).chain([(0, 3), (4, 1)]).collect();
        let g = WeightedDigraph::unit(6, arcs).unwrap();
        assert_eq!(tuples(6).len(), 6 * 5 * 6 * 1);
        let sol = approximate_global_bicut(&g).unwrap();
        assert!(sol.certify(&g) && sol.exhaustive);
        let sampled = approximate_global_bicut_with(&g, &GlobalBicutOptions { tuple_limit: Some(5), seed: 3 }).unwrap();
        assert!(!sampled.exhaustive);
    }

    #[test]
    fn alpha_zero_on_empty_sets() {
        let g = WeightedDigraph::unit(3, [(0, 1)]).unwrap();
        let e = NodeSet::new(3);
        assert_eq!(bicut_alpha_diagnostics(&g, &e, &e, &e, &e, &e), [0; 6]);
    }
}
