//! Exhaustive exact solvers used as ground truth.
//!
//! The structural oracles enumerate node sets (disjoint pairs, uncomparable
//! pairs, nested pairs, deleted node sets, partitions). The `raw_*`
//! oracles enumerate arc subsets directly and only exist to validate the
//! structural ones on tiny graphs.

use alloc::format;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicBool, Ordering};
use core::time::Duration;

use crate::certificate;
use crate::error::{Error, Result};
use crate::graph::{in_cut, reach_filtered, CutPair, Filter, UndirectedGraph, WeightedDigraph};
use crate::kcut::for_each_partition;
use crate::nodeset::NodeSet;
use crate::par;
use crate::weight::{self, INFINITE};
use crate::{ArcId, NodeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_nodes: usize,
    /// Upper bound on the number of enumerated configurations.
    pub max_space: u64,
    /// Wall-clock cap; only enforced with the `std` feature.
    pub time_cap: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_nodes: 10, max_space: 1 << 24, time_cap: None }
    }
}

/// An optimal solution. Fields that do not apply to a problem stay empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSolution {
    pub value: u64,
    pub removed_arcs: Vec<ArcId>,
    pub removed_nodes: NodeSet,
    /// Witness sets: `(A, B)` for pair problems, blocks for partitions.
    pub sets: Vec<NodeSet>,
    pub terminals: Vec<NodeId>,
}

impl OracleSolution {
    fn empty(n: usize, value: u64) -> Self {
        OracleSolution {
            value,
            removed_arcs: Vec::new(),
            removed_nodes: NodeSet::new(n),
            sets: Vec::new(),
            terminals: Vec::new(),
        }
    }

    fn from_pair(g: &WeightedDigraph, a: NodeSet, b: NodeSet, value: u64, terminals: Vec<NodeId>) -> Self {
        let removed_arcs = CutPair { a: a.clone(), b: b.clone(), beta: value, sigma: 0 }.removed_arcs(g);
        OracleSolution { value, removed_arcs, removed_nodes: NodeSet::new(g.node_count()), sets: alloc::vec![a, b], terminals }
    }
}

const CHUNK: u64 = 1 << 10;

struct Search<'b> {
    budget: &'b OracleBudget,
    #[cfg(feature = "std")]
    start: std::time::Instant,
    expired: AtomicBool,
}

impl<'b> Search<'b> {
    fn new(budget: &'b OracleBudget, n: usize, space: u128) -> Result<Self> {
        if n > budget.max_nodes {
            return Err(Error::Budget(format!("{n} nodes exceed the limit of {}", budget.max_nodes)));
        }
        if n > 60 || space > budget.max_space as u128 {
            return Err(Error::Budget(format!("search space {space} exceeds the limit of {}", budget.max_space)));
        }
        Ok(Search {
            budget,
            #[cfg(feature = "std")]
            start: std::time::Instant::now(),
            expired: AtomicBool::new(false),
        })
    }

    fn out_of_time(&self) -> bool {
        #[cfg(feature = "std")]
        if let Some(cap) = self.budget.time_cap {
            if self.start.elapsed() > cap {
                self.expired.store(true, Ordering::Relaxed);
            }
        }
        self.expired.load(Ordering::Relaxed)
    }

    /// Smallest `(value, mask)` over `0..count`; `f` gets the mask and the
    /// best value found so far in its shard, for pruning.
    fn min_mask<R, F>(&self, count: u64, f: F) -> Result<Option<(u64, u64, R)>>
    where
        R: Send,
        F: Fn(u64, u64) -> Option<(u64, R)> + Sync + Send,
    {
        let shards: Vec<(u64, u64)> = (0..count.div_ceil(CHUNK)).map(|i| (i * CHUNK, ((i + 1) * CHUNK).min(count))).collect();
        let found = par::min_by_key(&shards, |_, &(lo, hi)| {
            if self.out_of_time() {
                return None;
            }
            let mut best: Option<(u64, u64, R)> = None;
            for mask in lo..hi {
                let bound = best.as_ref().map_or(INFINITE, |b| b.0);
                if let Some((v, r)) = f(mask, bound) {
                    if best.as_ref().is_none_or(|b| v < b.0) {
                        best = Some((v, mask, r));
                    }
                }
            }
            best.map(|(v, m, r)| ((v, m), r))
        });
        if self.expired.load(Ordering::Relaxed) {
            return Err(Error::Budget(format!("time cap of {:?} exceeded", self.budget.time_cap.unwrap_or_default())));
        }
        Ok(found.map(|(_, (v, m), r)| (v, m, r)))
    }
}

/// Arcs as bit masks for fast set tests.
struct Bits {
    n: usize,
    arcs: Vec<(u64, u64, u64)>,
}

impl Bits {
    fn new(g: &WeightedDigraph) -> Self {
        Bits { n: g.node_count(), arcs: g.arcs().iter().map(|a| (1u64 << a.tail, 1u64 << a.head, a.weight)).collect() }
    }

    fn full(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    fn in_degrees(&self) -> Vec<u64> {
        let masks: Vec<u64> = (0..1u64 << self.n).collect();
        par::map(&masks, |&x| self.din(x))
    }

    fn din(&self, x: u64) -> u64 {
        weight::sum(self.arcs.iter().filter(|(t, h, _)| x & h != 0 && x & t == 0).map(|a| a.2))
    }

    fn beta(&self, a: u64, b: u64) -> u64 {
        weight::sum(
            self.arcs.iter().filter(|(t, h, _)| (a & h != 0 && a & t == 0) || (b & h != 0 && b & t == 0)).map(|x| x.2),
        )
    }
}

fn set(n: usize, mask: u64) -> NodeSet {
    NodeSet::from_mask(n, mask)
}

fn bit(v: NodeId) -> u64 {
    1u64 << v
}

/// Iterates the submasks of `m`, including 0 and `m`.
fn submasks(m: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(m);
    core::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & m) };
        Some(cur)
    })
}

fn infeasible<T>(what: &str) -> Result<T> {
    Err(Error::Infeasible(format!("no finite feasible {what}")))
}

fn pow3(n: usize) -> u128 {
    3u128.pow(n as u32)
}

fn check_nodes(n: usize, nodes: &[NodeId]) -> Result<()> {
    for (i, &v) in nodes.iter().enumerate() {
        if v >= n || nodes[..i].contains(&v) {
            return Err(Error::InvalidInput(format!("terminals must be distinct nodes below {n}")));
        }
    }
    Ok(())
}

// ---- double cuts ----------------------------------------------------------

/// Disjoint `A ∋ s`, `B ∋ t` minimizing `d^in(A) + d^in(B)`; `None` lifts
/// the terminal constraints (both sets nonempty).
fn double_cut_pairs(g: &WeightedDigraph, st: Option<(NodeId, NodeId)>, budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.node_count();
    let search = Search::new(budget, n, pow3(n))?;
    let bits = Bits::new(g);
    let din = bits.in_degrees();
    let full = bits.full();
    let found = search.min_mask(1 << n, |a, bound| {
        let ok_a = match st {
            Some((s, t)) => a & bit(s) != 0 && a & bit(t) == 0,
            None => a != 0,
        };
        if !ok_a || din[a as usize] >= bound {
            return None;
        }
        submasks(full & !a)
            .filter(|&b| match st {
                Some((_, t)) => b & bit(t) != 0,
                None => b != 0,
            })
            .map(|b| (weight::add(din[a as usize], din[b as usize]), b))
            .min()
    })?;
    let (v, a, b) = found.ok_or(()).or_else(|_| infeasible("double cut"))?;
    if v == INFINITE {
        return infeasible("double cut");
    }
    let terminals = st.map_or(Vec::new(), |(s, t)| alloc::vec![s, t]);
    let (a, b) = (set(n, a), set(n, b));
    let mut removed = in_cut(g, &a).0;
    removed.extend(in_cut(g, &b).0);
    removed.sort_unstable();
    Ok(OracleSolution { value: v, removed_arcs: removed, removed_nodes: NodeSet::new(n), sets: alloc::vec![a, b], terminals })
}

pub fn st_edge_double_cut(g: &WeightedDigraph, s: NodeId, t: NodeId, budget: &OracleBudget) -> Result<OracleSolution> {
    check_nodes(g.node_count(), &[s, t])?;
    double_cut_pairs(g, Some((s, t)), budget)
}

pub fn edge_double_cut(g: &WeightedDigraph, budget: &OracleBudget) -> Result<OracleSolution> {
    if g.node_count() < 2 {
        return Err(Error::InvalidInput("need at least two nodes".into()));
    }
    double_cut_pairs(g, None, budget)
}

/// Cheapest deletable node set among `allowed` passing `feasible`.
fn node_subsets(
    n: usize,
    allowed: u64,
    costs: &[u64],
    budget: &OracleBudget,
    feasible: impl Fn(&NodeSet) -> bool + Sync + Send,
) -> Result<Option<(u64, NodeSet)>> {
    if costs.len() != n {
        return Err(Error::InvalidInput("one cost per node required".into()));
    }
    let allowed = (0..n).filter(|&v| allowed & bit(v) != 0 && costs[v] != INFINITE).fold(0, |m, v| m | bit(v));
    let search = Search::new(budget, n, 1u128 << n)?;
    let found = search.min_mask(1 << n, |u, bound| {
        if u & !allowed != 0 {
            return None;
        }
        let c = weight::sum((0..n).filter(|&v| u & bit(v) != 0).map(|v| costs[v]));
        (c < bound && feasible(&set(n, u))).then_some((c, ()))
    })?;
    Ok(found.map(|(c, u, ())| (c, set(n, u))))
}

fn node_solution(n: usize, found: Option<(u64, NodeSet)>, terminals: Vec<NodeId>, what: &str) -> Result<OracleSolution> {
    let (value, nodes) = found.ok_or(()).or_else(|_| infeasible(what))?;
    let mut sol = OracleSolution::empty(n, value);
    sol.removed_nodes = nodes;
    sol.terminals = terminals;
    Ok(sol)
}

pub fn st_node_double_cut(
    g: &WeightedDigraph,
    s: NodeId,
    t: NodeId,
    costs: &[u64],
    budget: &OracleBudget,
) -> Result<OracleSolution> {
    let n = g.node_count();
    check_nodes(n, &[s, t])?;
    let allowed = ((1u64 << n) - 1) & !bit(s) & !bit(t);
    let found = node_subsets(n, allowed, costs, budget, |u| certificate::node_double_cut(g, u, s, t))?;
    node_solution(n, found, alloc::vec![s, t], "node double cut")
}

/// Best st-answer over all unordered pairs.
pub fn node_double_cut(g: &WeightedDigraph, costs: &[u64], budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.node_count();
    let mut best: Option<OracleSolution> = None;
    for s in 0..n {
        for t in s + 1..n {
            match st_node_double_cut(g, s, t, costs, budget) {
                Ok(sol) if best.as_ref().is_none_or(|b| sol.value < b.value) => best = Some(sol),
                Ok(_) | Err(Error::Infeasible(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    best.ok_or(()).or_else(|_| infeasible("node double cut"))
}

/// Deleted node sets after which no arborescence survives (at least two
/// nodes must remain).
pub fn raw_node_double_cut(g: &WeightedDigraph, costs: &[u64], budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.node_count();
    let found = node_subsets(n, (1u64 << n) - 1, costs, budget, |u| {
        n - u.len() >= 2 && !certificate::has_arborescence(g, &[], u)
    })?;
    node_solution(n, found, Vec::new(), "node double cut")
}

// ---- bicuts ---------------------------------------------------------------

/// Minimum `β(A,B)` over pairs accepted by `ok`; `A` ranges over `outer`
/// masks, `B` over `inner(A)`.
fn min_beta_pairs<I, It>(
    g: &WeightedDigraph,
    budget: &OracleBudget,
    space: u128,
    ok_a: impl Fn(u64) -> bool + Sync + Send,
    inner: I,
) -> Result<Option<(u64, NodeSet, NodeSet)>>
where
    I: Fn(u64) -> It + Sync + Send,
    It: Iterator<Item = u64>,
{
    let n = g.node_count();
    let search = Search::new(budget, n, space)?;
    let bits = Bits::new(g);
    let din = bits.in_degrees();
    let found = search.min_mask(1 << n, |a, bound| {
        if !ok_a(a) || din[a as usize] >= bound {
            return None;
        }
        let mut best: Option<(u64, u64)> = None;
        for b in inner(a) {
            let cur = best.map_or(bound, |x| x.0.min(bound));
            if din[b as usize] >= cur {
                continue;
            }
            let v = bits.beta(a, b);
            if v < cur && best.is_none_or(|x| (v, b) < x) {
                best = Some((v, b));
            }
        }
        best
    })?;
    Ok(found.filter(|f| f.0 != INFINITE).map(|(v, a, b)| (v, set(n, a), set(n, b))))
}

fn pair_solution(g: &WeightedDigraph, found: Option<(u64, NodeSet, NodeSet)>, terminals: Vec<NodeId>, what: &str) -> Result<OracleSolution> {
    let (v, a, b) = found.ok_or(()).or_else(|_| infeasible(what))?;
    Ok(OracleSolution::from_pair(g, a, b, v, terminals))
}

/// `A ∋ t, s ∉ A` and `B ∋ s, t ∉ B`.
pub fn st_edge_bicut(g: &WeightedDigraph, s: NodeId, t: NodeId, budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.node_count();
    check_nodes(n, &[s, t])?;
    let full = (1u64 << n) - 1;
    let rest = full & !bit(s) & !bit(t);
    let found = min_beta_pairs(
        g,
        budget,
        1u128 << (2 * n),
        |a| a & bit(t) != 0 && a & bit(s) == 0,
        move |_| submasks(rest).map(move |x| x | bit(s)),
    )?;
    pair_solution(g, found, alloc::vec![s, t], "st-bicut")
}

/// Minimum `β` over all uncomparable pairs.
pub fn edge_bicut(g: &WeightedDigraph, budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::InvalidInput("need at least two nodes".into()));
    }
    let full = (1u64 << n) - 1;
    let found = min_beta_pairs(
        g,
        budget,
        1u128 << (2 * n),
        |a| a != 0 && a != full,
        move |a| submasks(full).filter(move |&b| a & !b != 0 && b & !a != 0),
    )?;
    pair_solution(g, found, Vec::new(), "bicut")
}

pub fn s_star_edge_bicut(g: &WeightedDigraph, s: NodeId, budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.node_count();
    check_nodes(n, &[s])?;
    let mut best: Option<OracleSolution> = None;
    for t in (0..n).filter(|&t| t != s) {
        match st_edge_bicut(g, s, t, budget) {
            Ok(sol) if best.as_ref().is_none_or(|b| sol.value < b.value) => best = Some(sol),
            Ok(_) | Err(Error::Infeasible(_)) => {}
            Err(e) => return Err(e),
        }
    }
    best.ok_or(()).or_else(|_| infeasible("s-star bicut"))
}

/// Minimum `β` over uncomparable pairs with `A ∩ B = z`.
pub fn bicut_fixed_intersection(g: &WeightedDigraph, z: &NodeSet, budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.node_count();
    let full = (1u64 << n) - 1;
    let zm = z.to_mask();
    let found = min_beta_pairs(
        g,
        budget,
        1u128 << (2 * n),
        |a| a & zm == zm && a != zm,
        move |a| submasks(full & !a).filter(|&x| x != 0).map(move |x| x | zm),
    )?;
    pair_solution(g, found, Vec::new(), "bicut with this intersection")
}

/// Minimum `β` over uncomparable pairs with `V ∖ (A ∪ B) = w`.
pub fn bicut_fixed_complement(g: &WeightedDigraph, w: &NodeSet, budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.node_count();
    let rest = ((1u64 << n) - 1) & !w.to_mask();
    let found = min_beta_pairs(
        g,
        budget,
        1u128 << (2 * n),
        |a| a & !rest == 0 && a != rest && a != 0,
        move |a| submasks(a).filter(move |&x| x != a).map(move |x| x | (rest & !a)),
    )?;
    pair_solution(g, found, Vec::new(), "bicut with this complement")
}

/// Minimum `σ(A,B) = d^in(A) + d^in(B)` over uncomparable pairs.
pub fn min_uncomparable_sigma(g: &WeightedDigraph, budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.node_count();
    let search = Search::new(budget, n, 1u128 << (2 * n))?;
    let bits = Bits::new(g);
    let din = bits.in_degrees();
    let full = bits.full();
    let found = search.min_mask(1 << n, |a, bound| {
        if a == 0 || a == full || din[a as usize] >= bound {
            return None;
        }
        submasks(full)
            .filter(|&b| a & !b != 0 && b & !a != 0)
            .map(|b| (weight::add(din[a as usize], din[b as usize]), b))
            .min()
    })?;
    let (v, a, b) = found.filter(|f| f.0 != INFINITE).ok_or(()).or_else(|_| infeasible("uncomparable pair"))?;
    let mut sol = OracleSolution::from_pair(g, set(n, a), set(n, b), v, Vec::new());
    sol.value = v;
    Ok(sol)
}

/// Node-weighted bicut for a fixed pair.
pub fn st_node_bicut(g: &WeightedDigraph, s: NodeId, t: NodeId, costs: &[u64], budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.node_count();
    check_nodes(n, &[s, t])?;
    let allowed = ((1u64 << n) - 1) & !bit(s) & !bit(t);
    let found = node_subsets(n, allowed, costs, budget, |u| certificate::node_bicut(g, u, s, t))?;
    node_solution(n, found, alloc::vec![s, t], "node bicut")
}

pub fn node_bicut(g: &WeightedDigraph, costs: &[u64], budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.node_count();
    let mut best: Option<OracleSolution> = None;
    for s in 0..n {
        for t in s + 1..n {
            match st_node_bicut(g, s, t, costs, budget) {
                Ok(sol) if best.as_ref().is_none_or(|b| sol.value < b.value) => best = Some(sol),
                Ok(_) | Err(Error::Infeasible(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    best.ok_or(()).or_else(|_| infeasible("node bicut"))
}

/// Reachability closure of the surviving graph; some pair must be
/// mutually unreachable.
pub(crate) fn has_separated_pair(g: &WeightedDigraph, removed_arcs: &[bool], alive: &NodeSet) -> bool {
    let n = g.node_count();
    let filter = Filter { alive: Some(alive), removed_arcs: Some(removed_arcs) };
    let reach: Vec<NodeSet> = (0..n)
        .map(|v| if alive.contains(v) { reach_filtered(g, &NodeSet::singleton(n, v), filter) } else { NodeSet::new(n) })
        .collect();
    alive.iter().any(|s| alive.iter().any(|t| s < t && !reach[s].contains(t) && !reach[t].contains(s)))
}

pub fn raw_node_bicut(g: &WeightedDigraph, costs: &[u64], budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.node_count();
    let none = alloc::vec![false; g.arc_count()];
    let found = node_subsets(n, (1u64 << n) - 1, costs, budget, |u| has_separated_pair(g, &none, &u.complement()))?;
    node_solution(n, found, Vec::new(), "node bicut")
}

// ---- linear 3-cuts ----------------------------------------------------------

/// `t ∈ A ⊆ B`, `r ∈ B∖A`, `s ∉ B`.
pub fn lin3cut_fixed(g: &WeightedDigraph, s: NodeId, r: NodeId, t: NodeId, budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.node_count();
    check_nodes(n, &[s, r, t])?;
    let full = (1u64 << n) - 1;
    let found = min_beta_pairs(
        g,
        budget,
        1u128 << (2 * n),
        |a| a & bit(t) != 0 && a & (bit(s) | bit(r)) == 0,
        move |a| submasks(full & !a & !bit(s) & !bit(r)).map(move |x| x | a | bit(r)),
    )?;
    pair_solution(g, found, alloc::vec![s, r, t], "linear 3-cut")
}

/// `t ∈ A ⊊ B ⊆ V∖{s}`.
pub fn lin3cut_star(g: &WeightedDigraph, s: NodeId, t: NodeId, budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.node_count();
    check_nodes(n, &[s, t])?;
    let full = (1u64 << n) - 1;
    let found = min_beta_pairs(
        g,
        budget,
        1u128 << (2 * n),
        |a| a & bit(t) != 0 && a & bit(s) == 0,
        move |a| submasks(full & !a & !bit(s)).filter(|&x| x != 0).map(move |x| x | a),
    )?;
    let mut sol = pair_solution(g, found, alloc::vec![s, t], "linear 3-cut")?;
    let r = sol.sets[1].difference(&sol.sets[0]).first().expect("strict nesting");
    sol.terminals = alloc::vec![s, r, t];
    Ok(sol)
}

// ---- raw arc-subset oracles ---------------------------------------------------

/// Cheapest arc subset passing `feasible`.
fn raw_arcs(
    g: &WeightedDigraph,
    budget: &OracleBudget,
    feasible: impl Fn(&[ArcId]) -> bool + Sync + Send,
    what: &str,
) -> Result<OracleSolution> {
    let m = g.arc_count();
    let n = g.node_count();
    if m > 60 {
        return Err(Error::Budget(format!("{m} arcs are too many for subset enumeration")));
    }
    let search = Search::new(budget, n, 1u128 << m)?;
    let found = search.min_mask(1 << m, |mask, bound| {
        let ids: Vec<ArcId> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
        let c = weight::sum(ids.iter().map(|&i| g.arc(i).weight));
        (c < bound && feasible(&ids)).then_some((c, ids))
    })?;
    let (value, _, ids) = found.filter(|f| f.0 != INFINITE).ok_or(()).or_else(|_| infeasible(what))?;
    let mut sol = OracleSolution::empty(n, value);
    sol.removed_arcs = ids;
    Ok(sol)
}

fn mask_of(g: &WeightedDigraph, ids: &[ArcId]) -> Vec<bool> {
    let mut m = alloc::vec![false; g.arc_count()];
    ids.iter().for_each(|&i| m[i] = true);
    m
}

pub fn raw_edge_double_cut(g: &WeightedDigraph, budget: &OracleBudget) -> Result<OracleSolution> {
    let none = NodeSet::new(g.node_count());
    raw_arcs(g, budget, |ids| !certificate::has_arborescence(g, ids, &none), "double cut")
}

pub fn raw_st_edge_double_cut(g: &WeightedDigraph, s: NodeId, t: NodeId, budget: &OracleBudget) -> Result<OracleSolution> {
    check_nodes(g.node_count(), &[s, t])?;
    raw_arcs(g, budget, |ids| certificate::edge_double_cut(g, ids, s, t), "double cut")
}

pub fn raw_edge_bicut(g: &WeightedDigraph, budget: &OracleBudget) -> Result<OracleSolution> {
    let all = g.all_nodes();
    raw_arcs(g, budget, |ids| has_separated_pair(g, &mask_of(g, ids), &all), "bicut")
}

pub fn raw_st_edge_bicut(g: &WeightedDigraph, s: NodeId, t: NodeId, budget: &OracleBudget) -> Result<OracleSolution> {
    check_nodes(g.node_count(), &[s, t])?;
    raw_arcs(g, budget, |ids| certificate::edge_bicut(g, ids, s, t), "st-bicut")
}

pub fn raw_s_star_edge_bicut(g: &WeightedDigraph, s: NodeId, budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.node_count();
    check_nodes(n, &[s])?;
    raw_arcs(g, budget, |ids| (0..n).any(|t| t != s && certificate::edge_bicut(g, ids, s, t)), "s-star bicut")
}

pub fn raw_lin3cut_fixed(g: &WeightedDigraph, s: NodeId, r: NodeId, t: NodeId, budget: &OracleBudget) -> Result<OracleSolution> {
    check_nodes(g.node_count(), &[s, r, t])?;
    raw_arcs(g, budget, |ids| certificate::lin3cut(g, ids, s, r, t), "linear 3-cut")
}

pub fn raw_lin3cut_star(g: &WeightedDigraph, s: NodeId, t: NodeId, budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.node_count();
    check_nodes(n, &[s, t])?;
    raw_arcs(
        g,
        budget,
        |ids| (0..n).any(|r| r != s && r != t && certificate::lin3cut(g, ids, s, r, t)),
        "linear 3-cut",
    )
}

// ---- undirected node cuts and k-cuts -------------------------------------------

/// Deleted node set leaving at least three components.
pub fn node_3cut(g: &UndirectedGraph, costs: &[u64], budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.node_count();
    let found = node_subsets(n, (1u64 << n) - 1, costs, budget, |u| certificate::components_after(g, u) >= 3)?;
    node_solution(n, found, Vec::new(), "node 3-cut")
}

pub fn node_multiway(g: &UndirectedGraph, terminals: &[NodeId], costs: &[u64], budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.node_count();
    check_nodes(n, terminals)?;
    let tmask = terminals.iter().fold(0u64, |m, &v| m | bit(v));
    let found = node_subsets(n, ((1u64 << n) - 1) & !tmask, costs, budget, |u| certificate::node_multiway(g, u, terminals))?;
    node_solution(n, found, terminals.to_vec(), "node multiway cut")
}

/// Best node multiway cut over all terminal triples; cross-checks
/// [`node_3cut`].
pub fn node_3cut_via_triples(g: &UndirectedGraph, costs: &[u64], budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.node_count();
    let mut best: Option<OracleSolution> = None;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                match node_multiway(g, &[a, b, c], costs, budget) {
                    Ok(sol) if best.as_ref().is_none_or(|x| sol.value < x.value) => best = Some(sol),
                    Ok(_) | Err(Error::Infeasible(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    best.ok_or(()).or_else(|_| infeasible("node 3-cut"))
}

/// Minimum weight vertex cover.
pub fn vertex_cover(g: &UndirectedGraph, costs: &[u64], budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.node_count();
    let found = node_subsets(n, (1u64 << n) - 1, costs, budget, |u| {
        g.edges().iter().all(|e| u.contains(e.tail) || u.contains(e.head))
    })?;
    node_solution(n, found, Vec::new(), "vertex cover")
}

/// Minimum `γ` over `k`-block partitions separating `s` and `t`.
pub fn st_sep_kcut(g: &UndirectedGraph, s: NodeId, t: NodeId, k: usize, budget: &OracleBudget) -> Result<OracleSolution> {
    let n = g.node_count();
    check_nodes(n, &[s, t])?;
    if k < 2 || k > n {
        return Err(Error::InvalidInput(format!("k must lie in 2..={n}")));
    }
    let space = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    let search = Search::new(budget, n, space)?;
    let mut best: Option<(u64, Vec<u32>)> = None;
    let mut expired = false;
    for_each_partition(n, k, |labels| {
        if labels[s] != labels[t] {
            let labels_usize: Vec<usize> = labels.iter().map(|&l| l as usize).collect();
            let c = crate::kcut::gamma(g, &labels_usize);
            if best.as_ref().is_none_or(|b| c < b.0) {
                best = Some((c, labels.to_vec()));
            }
        }
        expired = search.out_of_time();
        !expired
    });
    if expired {
        return Err(Error::Budget("time cap exceeded".into()));
    }
    let (value, labels) = best.filter(|b| b.0 != INFINITE).ok_or(()).or_else(|_| infeasible("separating k-cut"))?;
    let mut sol = OracleSolution::empty(n, value);
    sol.sets = (0..k as u32).map(|b| NodeSet::from_nodes(n, (0..n).filter(|&v| labels[v] == b))).collect();
    sol.terminals = alloc::vec![s, t];
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn small_values() {
        let cyc = WeightedDigraph::unit(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(edge_bicut(&cyc, &b()).unwrap().value, 2);
        assert_eq!(raw_edge_bicut(&cyc, &b()).unwrap().value, 2);
        assert_eq!(edge_double_cut(&cyc, &b()).unwrap().value, 2);
        assert_eq!(raw_edge_double_cut(&cyc, &b()).unwrap().value, 2);
        let star = UndirectedGraph::unit(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(node_3cut(&star, &[1; 4], &b()).unwrap().value, 1);
        assert_eq!(node_3cut_via_triples(&star, &[1; 4], &b()).unwrap().value, 1);
        let path = WeightedDigraph::unit(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(lin3cut_star(&path, 0, 2, &b()).unwrap().value, 2);
        assert_eq!(raw_lin3cut_star(&path, 0, 2, &b()).unwrap().value, 2);
    }

    #[test]
    fn budget_refuses() {
        let g = WeightedDigraph::unit(12, []).unwrap();
        assert!(matches!(edge_bicut(&g, &b()), Err(Error::Budget(_))));
        let tiny = OracleBudget { max_space: 10, ..b() };
        let g = WeightedDigraph::unit(4, []).unwrap();
        assert!(matches!(edge_double_cut(&g, &tiny), Err(Error::Budget(_))));
    }

    #[test]
    fn submask_iteration() {
        let all: Vec<u64> = submasks(0b101).collect();
        assert_eq!(all, [0b101, 0b100, 0b001, 0]);
    }

    #[test]
    fn separating_kcut_path() {
        let path = UndirectedGraph::unit(3, [(0, 1), (1, 2)]).unwrap();
        let sol = st_sep_kcut(&path, 0, 2, 3, &b()).unwrap();
        assert_eq!(sol.value, 2);
        assert_eq!(sol.sets.len(), 3);
    }
}
