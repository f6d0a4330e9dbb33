//! Linear 3-cuts: the fixed-terminal 2-approximation and the chain-based
//! 3/2-approximation for the `(s,*,t)` variant.
//!
//! The star variant is solved in its nested-pair form
//! `min β(A,B), t ∈ A ⊊ B ⊆ V∖{s}`; any `r ∈ B∖A` then completes the
//! triple and `δ^in(A) ∪ δ^in(B)` is the arc set.

use alloc::vec::Vec;

use crate::certificate;
use crate::error::{Error, Result};
use crate::flow::{constrained_min_cut, min_cut};
use crate::graph::{beta, in_degree, CutPair, WeightedDigraph};
use crate::nodeset::NodeSet;
use crate::weight::INFINITE;
use crate::{ArcId, NodeId};

/// `t ∈ a ⊊ b ⊆ V∖{s}` with `β(a,b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestedPair {
    pub a: NodeSet,
    pub b: NodeSet,
    pub beta: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lin3CutSolution {
    pub s: NodeId,
    pub r: NodeId,
    pub t: NodeId,
    pub removed_arcs: Vec<ArcId>,
    pub cost: u64,
    /// The nested pair behind the answer (star variant only).
    pub pair: Option<NestedPair>,
}

impl Lin3CutSolution {
    pub fn certify(&self, g: &WeightedDigraph) -> bool {
        certificate::lin3cut(g, &self.removed_arcs, self.s, self.r, self.t)
    }
}

fn check_terminals(g: &WeightedDigraph, nodes: &[NodeId]) -> Result<()> {
    let n = g.node_count();
    for (i, &v) in nodes.iter().enumerate() {
        if v >= n {
            return Err(Error::invalid("terminal out of range"));
        }
        if nodes[..i].contains(&v) {
            return Err(Error::invalid("terminals must be distinct"));
        }
    }
    Ok(())
}

/// Union of a minimum `{s}→{r,t}` cut and a minimum `{s,r}→{t}` cut.
pub fn lin3cut_fixed_2approx(g: &WeightedDigraph, s: NodeId, r: NodeId, t: NodeId) -> Result<Lin3CutSolution> {
    check_terminals(g, &[s, r, t])?;
    let n = g.node_count();
    let first = min_cut(g, &NodeSet::singleton(n, s), &NodeSet::from_nodes(n, [r, t]))?;
    let second = min_cut(g, &NodeSet::from_nodes(n, [s, r]), &NodeSet::singleton(n, t))?;
    if !first.is_finite() || !second.is_finite() {
        return Err(Error::infeasible("every linear 3-cut needs an infinite arc"));
    }
    let mut removed: Vec<ArcId> = first.cut_arcs.iter().chain(&second.cut_arcs).copied().collect();
    removed.sort_unstable();
    removed.dedup();
    let cost = crate::graph::arc_weight(g, &removed);
    Ok(Lin3CutSolution { s, r, t, removed_arcs: removed, cost, pair: None })
}

/// Chain of s̄t-sets kept sorted by inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub members: Vec<NodeSet>,
    pub values: Vec<u64>,
}

impl Chain {
    fn contains(&self, x: &NodeSet) -> bool {
        self.members.iter().any(|m| m == x)
    }

    fn insert(&mut self, y: NodeSet, value: u64) {
        let pos = self.members.iter().position(|m| y.is_subset(m)).unwrap_or(self.members.len());
        self.members.insert(pos, y);
        self.values.insert(pos, value);
    }

    /// Index of the first member containing `v`, or `len` if none does.
    fn first_containing(&self, v: NodeId) -> usize {
        self.members.iter().position(|m| m.contains(v)).unwrap_or(self.members.len())
    }
}

/// Cheapest s̄t-set in the gap `lower ⊆ Y ⊆ upper` that is not already a
/// chain member. When both extreme optima are members, one free node is
/// forced in (if `lower` is a member) and one forced out (if `upper` is).
fn gap_candidate(
    g: &WeightedDigraph,
    s: NodeId,
    lower: &NodeSet,
    upper: &NodeSet,
    chain: &Chain,
) -> Result<Option<(u64, NodeSet)>> {
    let free = upper.difference(lower);
    if free.is_empty() {
        return Ok(None);
    }
    let mut outside = upper.complement();
    outside.insert(s);
    let base = constrained_min_cut(g, lower, &outside)?;
    for side in [&base.min_sink_side, &base.max_sink_side] {
        if !chain.contains(side) {
            return Ok(Some((base.value, side.clone())));
        }
    }
    // both extreme optima are chain members: force a strictly new set
    let need_in = chain.contains(lower);
    let need_out = chain.contains(upper);
    let mut best: Option<(u64, NodeSet)> = None;
    let mut try_cut = |force_in: NodeSet, force_out: NodeSet| -> Result<()> {
        let c = constrained_min_cut(g, &force_in, &force_out)?;
        if best.as_ref().is_none_or(|(v, _)| c.value < *v) && !chain.contains(&c.min_sink_side) {
            best = Some((c.value, c.min_sink_side));
        }
        Ok(())
    };
    for v in &free {
        for u in &free {
            if need_in && need_out && u == v {
                continue;
            }
            let mut fi = lower.clone();
            let mut fo = outside.clone();
            if need_in {
                fi.insert(v);
            }
            if need_out {
                fo.insert(u);
            }
            try_cut(fi, fo)?;
            if !need_out {
                break;
            }
        }
        if !need_in {
            break;
        }
    }
    Ok(best)
}

/// The cheapest chain-compatible new s̄t-set `Y`.
fn cheapest_compatible(g: &WeightedDigraph, s: NodeId, t: NodeId, chain: &Chain) -> Result<Option<(u64, NodeSet)>> {
    let n = g.node_count();
    let mut top = NodeSet::full(n);
    top.remove(s);
    let q = chain.members.len();
    let mut best: Option<(u64, NodeSet)> = None;
    for i in 0..=q {
        let lower = if i == 0 { NodeSet::singleton(n, t) } else { chain.members[i - 1].clone() };
        let upper = if i == q { top.clone() } else { chain.members[i].clone() };
        if let Some((v, y)) = gap_candidate(g, s, &lower, &upper, chain)? {
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, y));
            }
        }
    }
    Ok(best)
}

/// The cheapest s̄t-set crossing some chain member.
fn cheapest_crossing(g: &WeightedDigraph, s: NodeId, t: NodeId, chain: &Chain) -> Result<Option<(u64, NodeSet)>> {
    let n = g.node_count();
    let mut best: Option<(u64, NodeSet)> = None;
    for x in 0..n {
        if x == s || x == t {
            continue;
        }
        let fx = chain.first_containing(x);
        for y in 0..n {
            if y == s || y == t || y == x || chain.first_containing(y) >= fx {
                continue;
            }
            let c = constrained_min_cut(g, &NodeSet::from_nodes(n, [t, x]), &NodeSet::from_nodes(n, [s, y]))?;
            if best.as_ref().is_none_or(|(v, _)| c.value < *v) {
                best = Some((c.value, c.min_sink_side));
            }
        }
    }
    Ok(best)
}

/// Builds the chain and returns it with the final crossing set, if any.
pub fn build_chain(g: &WeightedDigraph, s: NodeId, t: NodeId) -> Result<(Chain, Option<(u64, NodeSet)>)> {
    let n = g.node_count();
    let first = min_cut(g, &NodeSet::singleton(n, s), &NodeSet::singleton(n, t))?;
    let mut chain = Chain { members: Vec::new(), values: Vec::new() };
    chain.insert(first.min_sink_side, first.value);
    loop {
        let y = cheapest_compatible(g, s, t, &chain)?;
        let z = cheapest_crossing(g, s, t, &chain)?;
        match (y, z) {
            (Some((vy, y)), z) if z.as_ref().is_none_or(|(vz, _)| vy <= *vz) => chain.insert(y, vy),
            (_, z) => return Ok((chain, z)),
        }
    }
}

/// Chain-based 3/2-approximation for `(s,*,t)`-EdgeLin3Cut.
pub fn lin3cut_star_32approx(g: &WeightedDigraph, s: NodeId, t: NodeId) -> Result<Lin3CutSolution> {
    check_terminals(g, &[s, t])?;
    if g.node_count() < 3 {
        return Err(Error::infeasible("need a third node besides s and t"));
    }
    let (chain, z) = build_chain(g, s, t)?;
    let mut candidates: Vec<(NodeSet, NodeSet)> = Vec::new();
    for (i, a) in chain.members.iter().enumerate() {
        for b in &chain.members[i + 1..] {
            candidates.push((a.clone(), b.clone()));
        }
    }
    if let Some((_, z)) = &z {
        for x in &chain.members {
            if x.is_uncomparable(z) {
                let (cap, cup) = (x.intersection(z), x.union(z));
                candidates.push((cap.clone(), x.clone()));
                candidates.push((cap, z.clone()));
                candidates.push((z.clone(), cup.clone()));
                candidates.push((x.clone(), cup));
            }
        }
    }
    let mut best: Option<NestedPair> = None;
    for (a, b) in candidates {
        debug_assert!(a.is_proper_subset(&b));
        let v = beta(g, &a, &b);
        if best.as_ref().is_none_or(|p| v < p.beta) {
            best = Some(NestedPair { a, b, beta: v });
        }
    }
    let pair = best.filter(|p| p.beta != INFINITE).ok_or_else(|| Error::infeasible("every nested pair needs an infinite arc"))?;
    let r = pair.b.difference(&pair.a).first().expect("strict nesting");
    let cp = CutPair { a: pair.a.clone(), b: pair.b.clone(), beta: pair.beta, sigma: 0 };
    let removed_arcs = cp.removed_arcs(g);
    Ok(Lin3CutSolution { s, r, t, removed_arcs, cost: pair.beta, pair: Some(pair) })
}

/// `d^in` of each chain member, recomputed from the graph.
pub fn chain_values(g: &WeightedDigraph, chain: &Chain) -> Vec<u64> {
    chain.members.iter().map(|m| in_degree(g, m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_examples() {
        // s=0 -> r=1 -> t=2
        let path = WeightedDigraph::unit(3, [(0, 1), (1, 2)]).unwrap();
        let sol = lin3cut_fixed_2approx(&path, 0, 1, 2).unwrap();
        assert_eq!(sol.cost, 2);
        assert!(sol.certify(&path));
        let st = WeightedDigraph::unit(3, [(0, 2)]).unwrap();
        assert_eq!(lin3cut_fixed_2approx(&st, 0, 1, 2).unwrap().cost, 1);
    }

    #[test]
    fn star_examples() {
        // s=0 -> a=1 -> t=2
        let path = WeightedDigraph::unit(3, [(0, 1), (1, 2)]).unwrap();
        let sol = lin3cut_star_32approx(&path, 0, 2).unwrap();
        let pair = sol.pair.clone().unwrap();
        assert_eq!(pair.beta, 2);
        assert_eq!(pair.a.to_vec(), vec![2]);
        assert_eq!(pair.b.to_vec(), vec![1, 2]);
        assert!(sol.certify(&path));

        let st = WeightedDigraph::unit(3, [(0, 2)]).unwrap();
        let sol = lin3cut_star_32approx(&st, 0, 2).unwrap();
        assert_eq!(sol.cost, 1);
        assert_eq!(sol.r, 1);
        assert_eq!(sol.pair.unwrap().b.to_vec(), vec![1, 2]);
    }

    #[test]
    fn chain_nests_strictly() {
        let g = WeightedDigraph::unit(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4), (1, 3)]).unwrap();
        let (chain, _) = build_chain(&g, 0, 4).unwrap();
        for w in chain.members.windows(2) {
            assert!(w[0].is_proper_subset(&w[1]));
        }
        assert_eq!(chain_values(&g, &chain), chain.values);
        assert!(chain.members.len() <= 4);
    }

    #[test]
    fn too_small() {
        let g = WeightedDigraph::unit(2, [(0, 1)]).unwrap();
        assert!(matches!(lin3cut_star_32approx(&g, 0, 1), Err(Error::Infeasible(_))));
    }
}
