//! Solution reports and the checker that validates them.
//!
//! [`check`] only reads the instance and the payload; it never calls a
//! solver, so a report's certificate cannot be copied from the code that
//! produced the answer.

use std::collections::BTreeMap;

use cutkit_core::certificate;
use cutkit_core::graph::{beta_sigma, reach};
use cutkit_core::kcut::gamma;
use cutkit_core::weight;
use cutkit_core::{NodeId, NodeSet, UndirectedGraph, WeightedDigraph};
use serde::{Deserialize, Serialize};

use crate::format::{Graph, Instance};
use crate::solve::{Outcome, Problem, Variant};

pub fn one_based(ids: impl IntoIterator<Item = usize>) -> Vec<usize> {
    ids.into_iter().map(|v| v + 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionOut {
    pub gamma: u64,
    pub blocks: Vec<Vec<usize>>,
}

/// The answer itself, 1-based like the input files. `removed_arcs` index
/// the arc (or edge) lines in file order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Payload {
    #[serde(default)]
    pub terminals: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub removed_arcs: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub removed_nodes: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub partitions: Vec<PartitionOut>,
}

impl Payload {
    /// Starts a payload from 0-based terminals.
    pub fn with_terminals(t: BTreeMap<String, NodeId>) -> Self {
        Payload { terminals: t.into_iter().map(|(k, v)| (k, v + 1)).collect(), ..Payload::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertStatus {
    Valid,
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub problem: Problem,
    pub variant: Variant,
    pub method: String,
    pub value: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub payload: Payload,
    pub certificate: CertStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate_detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lp_value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_value: Option<u64>,
    pub exhaustive: bool,
    pub seed: u64,
    pub wall_time_ms: f64,
}

impl SolutionReport {
    pub fn new(inst: &Instance, problem: Problem, variant: Variant, k: Option<usize>, out: Outcome, seed: u64) -> Self {
        let verdict = check(inst, problem, variant, k, out.value, &out.payload);
        SolutionReport {
            problem,
            variant,
            method: out.method,
            value: out.value,
            k,
            payload: out.payload,
            certificate: if verdict.is_ok() { CertStatus::Valid } else { CertStatus::Invalid },
            certificate_detail: verdict.err(),
            lp_value: out.lp_value,
            oracle_value: None,
            exhaustive: out.exhaustive,
            seed,
            wall_time_ms: 0.0,
        }
    }

    /// Human-readable summary for `--format text`.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "problem   {:?} ({:?})\nmethod    {}\nvalue     {}\ncertified {:?}\n",
            self.problem, self.variant, self.method, self.value, self.certificate
        );
        if let Some(d) = &self.certificate_detail {
            s += &format!("          {d}\n");
        }
        if let Some(lp) = self.lp_value {
            s += &format!("lp        {lp:.6}\n");
        }
        if let Some(o) = self.oracle_value {
            s += &format!("oracle    {o}\n");
        }
        if !self.exhaustive {
            s += "note      sampled run, no approximation guarantee\n";
        }
        let p = &self.payload;
        if !p.terminals.is_empty() {
            s += &format!("terminals {:?}\n", p.terminals);
        }
        if !p.removed_arcs.is_empty() {
            s += &format!("arcs      {:?}\n", p.removed_arcs);
        }
        if !p.removed_nodes.is_empty() {
            s += &format!("nodes     {:?}\n", p.removed_nodes);
        }
        for (i, set) in p.sets.iter().enumerate() {
            s += &format!("set {i}     {set:?}\n");
        }
        if !p.partitions.is_empty() {
            s += &format!("partitions {}\n", p.partitions.len());
        }
        s += &format!("seed      {}\ntime      {:.3} ms\n", self.seed, self.wall_time_ms);
        s
    }
}

struct Decoded {
    n: usize,
    terminals: BTreeMap<String, NodeId>,
    arcs: Vec<usize>,
    nodes: NodeSet,
    sets: Vec<NodeSet>,
}

fn decode(n: usize, m: usize, p: &Payload) -> Result<Decoded, String> {
    let node = |v: usize| if v == 0 || v > n { Err(format!("node {v} out of range")) } else { Ok(v - 1) };
    let mut terminals = BTreeMap::new();
    for (k, &v) in &p.terminals {
        terminals.insert(k.clone(), node(v)?);
    }
    let mut arcs = Vec::new();
    for &a in &p.removed_arcs {
        if a == 0 || a > m {
            return Err(format!("arc {a} out of range"));
        }
        arcs.push(a - 1);
    }
    arcs.sort_unstable();
    if arcs.windows(2).any(|w| w[0] == w[1]) {
        return Err("an arc is listed twice".into());
    }
    let mut nodes = NodeSet::new(n);
    for &v in &p.removed_nodes {
        if !nodes.insert(node(v)?) {
            return Err("a node is listed twice".into());
        }
    }
    let mut sets = Vec::new();
    for s in &p.sets {
        let mut set = NodeSet::new(n);
        for &v in s {
            set.insert(node(v)?);
        }
        sets.push(set);
    }
    Ok(Decoded { n, terminals, arcs, nodes, sets })
}

fn term(d: &Decoded, name: &str) -> Result<NodeId, String> {
    d.terminals.get(name).copied().ok_or_else(|| format!("payload lacks terminal `{name}`"))
}

fn require(ok: bool, msg: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn arc_cost(g: &WeightedDigraph, arcs: &[usize]) -> u64 {
    weight::sum(arcs.iter().map(|&a| g.arc(a).weight))
}

fn node_cost(costs: &[u64], nodes: &NodeSet) -> u64 {
    weight::sum(nodes.iter().map(|v| costs[v]))
}

/// Per-node reach sets after deleting arcs and nodes.
fn reach_table(g: &WeightedDigraph, arcs: &[usize], nodes: &NodeSet) -> Vec<NodeSet> {
    let keep: Vec<(usize, usize, u64)> = g
        .arcs()
        .iter()
        .enumerate()
        .filter(|(i, a)| arcs.binary_search(i).is_err() && !nodes.contains(a.tail) && !nodes.contains(a.head))
        .map(|(_, a)| (a.tail, a.head, a.weight))
        .collect();
    let n = g.node_count();
    let h = WeightedDigraph::new(n, keep).expect("subgraph of a valid graph");
    (0..n).map(|v| reach(&h, &NodeSet::singleton(n, v))).collect()
}

/// Some surviving pair cannot reach each other.
fn has_separated_pair(g: &WeightedDigraph, arcs: &[usize], nodes: &NodeSet) -> bool {
    let r = reach_table(g, arcs, nodes);
    let alive: Vec<usize> = nodes.complement().to_vec();
    alive.iter().enumerate().any(|(i, &u)| alive[i + 1..].iter().any(|&v| !r[u].contains(v) && !r[v].contains(u)))
}

fn check_directed(g: &WeightedDigraph, problem: Problem, variant: Variant, value: u64, d: &Decoded) -> Result<(), String> {
    use Variant::*;
    let costs = g.node_costs();
    let none = NodeSet::new(d.n);
    let by_arcs = || require(arc_cost(g, &d.arcs) == value, "value differs from the weight of the removed arcs");
    let by_nodes = || require(node_cost(&costs, &d.nodes) == value, "value differs from the cost of the removed nodes");
    match (problem, variant) {
        (Problem::DoubleCut, Edge) => {
            require(!certificate::has_arborescence(g, &d.arcs, &none), "an arborescence survives")?;
            by_arcs()
        }
        (Problem::DoubleCut, StEdge) => {
            require(certificate::edge_double_cut(g, &d.arcs, term(d, "s")?, term(d, "t")?), "some node still reaches s and t")?;
            by_arcs()
        }
        (Problem::DoubleCut, Node) => {
            require(!d.nodes.is_full(), "every node was removed")?;
            require(!certificate::has_arborescence(g, &[], &d.nodes), "an arborescence survives")?;
            by_nodes()
        }
        (Problem::DoubleCut, _) => {
            require(certificate::node_double_cut(g, &d.nodes, term(d, "s")?, term(d, "t")?), "some node still reaches s and t")?;
            by_nodes()
        }
        (Problem::Bicut, St) => {
            require(certificate::edge_bicut(g, &d.arcs, term(d, "s")?, term(d, "t")?), "s and t still reach each other")?;
            by_arcs()
        }
        (Problem::Bicut, SStar) => {
            let s = term(d, "s")?;
            let r = reach_table(g, &d.arcs, &none);
            require((0..d.n).any(|t| t != s && !r[s].contains(t) && !r[t].contains(s)), "every node is still comparable with s")?;
            by_arcs()
        }
        (Problem::Bicut, Node) => {
            require(has_separated_pair(g, &[], &d.nodes), "all surviving pairs reach each other")?;
            by_nodes()
        }
        (Problem::Bicut, StNode) => {
            require(certificate::node_bicut(g, &d.nodes, term(d, "s")?, term(d, "t")?), "s and t still reach each other")?;
            by_nodes()
        }
        (Problem::Bicut, Uncomparable) => {
            let [a, b] = d.sets.as_slice() else { return Err("expected the pair (A, B)".into()) };
            require(a.is_uncomparable(b), "the pair is comparable")?;
            require(beta_sigma(g, a, b).sigma == value, "value differs from sigma(A, B)")
        }
        (Problem::Bicut, _) => {
            require(has_separated_pair(g, &d.arcs, &none), "all pairs reach each other")?;
            by_arcs()
        }
        (Problem::Lin3cut, Fixed) => {
            require(certificate::lin3cut(g, &d.arcs, term(d, "s")?, term(d, "r")?, term(d, "t")?), "a terminal path survives")?;
            by_arcs()
        }
        (Problem::Lin3cut, _) => {
            let (s, t) = (term(d, "s")?, term(d, "t")?);
            let ok = (0..d.n).any(|r| certificate::lin3cut(g, &d.arcs, s, r, t));
            require(ok, "no middle terminal is separated")?;
            by_arcs()
        }
        _ => Err(format!("{problem:?} is not a digraph problem")),
    }
}

fn labels_of(n: usize, blocks: &[NodeSet]) -> Vec<usize> {
    let mut labels = vec![usize::MAX; n];
    for (i, b) in blocks.iter().enumerate() {
        for v in b {
            labels[v] = i;
        }
    }
    labels
}

fn check_undirected(g: &UndirectedGraph, problem: Problem, k: Option<usize>, value: u64, d: &Decoded) -> Result<(), String> {
    let costs = g.node_costs();
    let by_nodes = || require(node_cost(&costs, &d.nodes) == value, "value differs from the cost of the removed nodes");
    match problem {
        Problem::SepKcut | Problem::KcutEnum => {
            let k = k.ok_or("report lacks k")?;
            let st = if problem == Problem::SepKcut { Some((term(d, "s")?, term(d, "t")?)) } else { None };
            require(certificate::partition(d.n, &d.sets, k, st), "blocks do not form a valid partition")?;
            require(gamma(g, &labels_of(d.n, &d.sets)) == value, "value differs from the partition's cut weight")
        }
        Problem::Multiway => {
            let terms: Vec<NodeId> = d.terminals.values().copied().collect();
            require(terms.len() >= 2, "fewer than two terminals")?;
            require(certificate::node_multiway(g, &d.nodes, &terms), "two terminals stay connected")?;
            by_nodes()
        }
        Problem::Node3cut => {
            require(certificate::components_after(g, &d.nodes) >= 3, "fewer than three components remain")?;
            by_nodes()
        }
        _ => Err(format!("{problem:?} is not an undirected problem")),
    }
}

/// Re-derives feasibility and the objective from the payload alone.
pub fn check(inst: &Instance, problem: Problem, variant: Variant, k: Option<usize>, value: u64, p: &Payload) -> Result<(), String> {
    match &inst.graph {
        Graph::Directed(g) => check_directed(g, problem, variant, value, &decode(g.node_count(), g.arc_count(), p)?),
        Graph::Undirected(g) => {
            let d = decode(g.node_count(), g.edge_count(), p)?;
            check_undirected(g, problem, k, value, &d)?;
            if problem == Problem::KcutEnum {
                for part in &p.partitions {
                    let sub = Payload { sets: part.blocks.clone(), ..Payload::default() };
                    let dd = decode(d.n, 0, &sub)?;
                    check_undirected(g, problem, k, part.gamma, &dd)?;
                }
            }
            Ok(())
        }
    }
}
