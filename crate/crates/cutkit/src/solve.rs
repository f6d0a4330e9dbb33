//! Dispatch from `(problem, variant)` to a solver or an oracle, with the
//! result flattened into a [`Payload`].

use std::collections::BTreeMap;

use cutkit_core::bicut::{self, GlobalBicutOptions};
use cutkit_core::doublecut::{self, DoubleCutSolution, Removed};
use cutkit_core::kcut::{self, EnumMethod, Partition, SepKCutOptions};
use cutkit_core::lin3cut::{self, Lin3CutSolution};
use cutkit_core::oracle::{self, OracleBudget, OracleSolution};
use cutkit_core::{Error, NodeId, NodeSet, UndirectedGraph, WeightedDigraph};
use serde::{Deserialize, Serialize};

use crate::format::{Graph, Instance};
use crate::report::{one_based, Payload, PartitionOut};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    DoubleCut,
    Bicut,
    Lin3cut,
    SepKcut,
    KcutEnum,
    Multiway,
    Node3cut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Global arc version (double cut, bicut default is `global`).
    Edge,
    Node,
    StEdge,
    StNode,
    St,
    SStar,
    Global,
    Uncomparable,
    Intersection,
    Complement,
    Fixed,
    Star,
    /// Problems with a single variant.
    Plain,
}

impl Problem {
    pub fn default_variant(self) -> Variant {
        match self {
            Problem::DoubleCut => Variant::Edge,
            Problem::Bicut => Variant::Global,
            Problem::Lin3cut => Variant::Star,
            _ => Variant::Plain,
        }
    }

    pub fn directed(self) -> bool {
        matches!(self, Problem::DoubleCut | Problem::Bicut | Problem::Lin3cut)
    }

    pub fn variants(self) -> &'static [Variant] {
        use Variant::*;
        match self {
            Problem::DoubleCut => &[Edge, Node, StEdge, StNode],
            Problem::Bicut => &[St, SStar, Global, Node, StNode, Uncomparable, Intersection, Complement],
            Problem::Lin3cut => &[Star, Fixed],
            _ => &[Plain],
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SolveError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl SolveError {
    /// Process exit status: 2 usage, 3 infeasible, 4 budget, 1 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            SolveError::Usage(_) => 2,
            SolveError::Core(Error::InvalidInput(_) | Error::Graph(_)) => 2,
            SolveError::Core(Error::Infeasible(_)) => 3,
            SolveError::Core(Error::Budget(_)) => 4,
            SolveError::Core(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "usage",
            3 => "infeasible",
            4 => "budget",
            _ => "internal",
        }
    }
}

fn usage(msg: impl Into<String>) -> SolveError {
    SolveError::Usage(msg.into())
}

/// Everything a solver run needs besides the instance. Node ids are
/// 0-based here; terminal overrides win over the file's `t` lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Request {
    pub problem: Problem,
    pub variant: Variant,
    pub k: Option<usize>,
    pub seed: u64,
    pub trials: Option<u64>,
    pub enum_method: EnumMethod,
    pub tuple_limit: Option<usize>,
    pub set: Vec<NodeId>,
    pub overrides: BTreeMap<String, NodeId>,
    pub terminal_list: Vec<NodeId>,
}

impl Request {
    pub fn new(problem: Problem) -> Self {
        Request {
            problem,
            variant: problem.default_variant(),
            k: None,
            seed: 1,
            trials: None,
            enum_method: EnumMethod::Auto,
            tuple_limit: None,
            set: Vec::new(),
            overrides: BTreeMap::new(),
            terminal_list: Vec::new(),
        }
    }

    pub fn variant(mut self, v: Variant) -> Self {
        self.variant = v;
        self
    }

    pub fn k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub method: String,
    pub value: u64,
    pub payload: Payload,
    pub lp_value: Option<f64>,
    /// False when a sampled loop stood in for the full one.
    pub exhaustive: bool,
}

struct Ctx<'a> {
    inst: &'a Instance,
    req: &'a Request,
}

impl Ctx<'_> {
    fn terminal(&self, name: &str) -> Result<NodeId, SolveError> {
        let v = self
            .req
            .overrides
            .get(name)
            .or_else(|| self.inst.terminals.get(name))
            .copied()
            .ok_or_else(|| usage(format!("terminal `{name}` missing: add `t {name} <id>` or pass --{name}")))?;
        if v >= self.inst.node_count() {
            return Err(usage(format!("terminal `{name}` out of range")));
        }
        Ok(v)
    }

    fn terminals(&self, names: &[&str]) -> Result<(Vec<NodeId>, BTreeMap<String, NodeId>), SolveError> {
        let mut ids = Vec::new();
        let mut map = BTreeMap::new();
        for &name in names {
            let v = self.terminal(name)?;
            ids.push(v);
            map.insert(name.to_string(), v);
        }
        Ok((ids, map))
    }

    /// Multiway terminals: `--terminals`, else every `t` line of the file.
    fn terminal_list(&self) -> Result<(Vec<NodeId>, BTreeMap<String, NodeId>), SolveError> {
        let ids: Vec<NodeId> = if self.req.terminal_list.is_empty() {
            self.inst.terminals.values().copied().collect()
        } else {
            self.req.terminal_list.clone()
        };
        if ids.len() < 2 {
            return Err(usage("multiway cut needs at least two terminals"));
        }
        if ids.iter().any(|&v| v >= self.inst.node_count()) {
            return Err(usage("terminal out of range"));
        }
        let map = ids.iter().enumerate().map(|(i, &v)| (format!("t{}", i + 1), v)).collect();
        Ok((ids, map))
    }

    fn set(&self) -> Result<NodeSet, SolveError> {
        let n = self.inst.node_count();
        if self.req.set.iter().any(|&v| v >= n) {
            return Err(usage("--set names a node out of range"));
        }
        Ok(NodeSet::from_nodes(n, self.req.set.iter().copied()))
    }

    fn k(&self) -> Result<usize, SolveError> {
        self.req.k.ok_or_else(|| usage("--k is required"))
    }

    fn digraph(&self) -> Result<&WeightedDigraph, SolveError> {
        match &self.inst.graph {
            Graph::Directed(g) => Ok(g),
            Graph::Undirected(_) => Err(usage(format!("{:?} needs a digraph (`p digraph`)", self.req.problem))),
        }
    }

    fn graph(&self) -> Result<&UndirectedGraph, SolveError> {
        match &self.inst.graph {
            Graph::Undirected(g) => Ok(g),
            Graph::Directed(_) => Err(usage(format!("{:?} needs an undirected graph (`p graph`)", self.req.problem))),
        }
    }
}

fn check_variant(req: &Request) -> Result<(), SolveError> {
    if !req.problem.variants().contains(&req.variant) {
        return Err(usage(format!(
            "variant {:?} does not apply to {:?}; choose one of {:?}",
            req.variant,
            req.problem,
            req.problem.variants()
        )));
    }
    Ok(())
}

fn double_cut_payload(sol: &DoubleCutSolution, terminals: BTreeMap<String, NodeId>) -> Payload {
    let mut p = Payload::with_terminals(terminals);
    match &sol.removed {
        Removed::Arcs(a) => p.removed_arcs = one_based(a.iter().copied()),
        Removed::Nodes(u) => p.removed_nodes = one_based(u.iter()),
    }
    p.sets = vec![one_based(sol.witness.0.iter()), one_based(sol.witness.1.iter())];
    p.terminals.insert("s".into(), sol.s + 1);
    p.terminals.insert("t".into(), sol.t + 1);
    p
}

fn bicut_outcome(sol: bicut::BicutSolution, terminals: BTreeMap<String, NodeId>, value: u64) -> Outcome {
    let mut p = Payload::with_terminals(terminals);
    p.removed_arcs = one_based(sol.removed_arcs.iter().copied());
    p.sets = vec![one_based(sol.pair.a.iter()), one_based(sol.pair.b.iter())];
    Outcome { method: format!("{:?}", sol.method), value, payload: p, lp_value: None, exhaustive: sol.exhaustive }
}

fn lin3_outcome(sol: Lin3CutSolution, method: &str) -> Outcome {
    let mut p = Payload { removed_arcs: one_based(sol.removed_arcs.iter().copied()), ..Payload::default() };
    for (name, v) in [("s", sol.s), ("r", sol.r), ("t", sol.t)] {
        p.terminals.insert(name.into(), v + 1);
    }
    if let Some(pair) = &sol.pair {
        p.sets = vec![one_based(pair.a.iter()), one_based(pair.b.iter())];
    }
    Outcome { method: method.into(), value: sol.cost, payload: p, lp_value: None, exhaustive: true }
}

fn partition_outcome(part: &Partition, terminals: BTreeMap<String, NodeId>, method: &str, exhaustive: bool) -> Outcome {
    let mut p = Payload::with_terminals(terminals);
    p.sets = part.blocks.iter().map(|b| one_based(b.iter())).collect();
    Outcome { method: method.into(), value: part.gamma, payload: p, lp_value: None, exhaustive }
}

fn node_outcome(nodes: &NodeSet, cost: u64, terminals: BTreeMap<String, NodeId>, method: &str, lp: Option<f64>) -> Outcome {
    let mut p = Payload::with_terminals(terminals);
    p.removed_nodes = one_based(nodes.iter());
    Outcome { method: method.into(), value: cost, payload: p, lp_value: lp, exhaustive: true }
}

/// Runs the polynomial solver for the request.
pub fn solve(inst: &Instance, req: &Request) -> Result<Outcome, SolveError> {
    check_variant(req)?;
    let cx = Ctx { inst, req };
    use Variant::*;
    let out = match req.problem {
        Problem::DoubleCut => {
            let g = cx.digraph()?;
            let costs = g.node_costs();
            let (sol, method) = match req.variant {
                Edge => (doublecut::edge_double_cut_exact(g)?, "edge_double_cut_exact"),
                StEdge => {
                    let (t, _) = cx.terminals(&["s", "t"])?;
                    (doublecut::st_edge_double_cut_exact(g, t[0], t[1])?, "st_edge_double_cut_exact")
                }
                Node => (doublecut::node_double_cut_2approx(g, &costs)?, "node_double_cut_2approx"),
                _ => {
                    let (t, _) = cx.terminals(&["s", "t"])?;
                    (doublecut::st_node_double_cut_2approx(g, t[0], t[1], &costs)?, "st_node_double_cut_2approx")
                }
            };
            Outcome {
                method: method.into(),
                value: sol.cost,
                payload: double_cut_payload(&sol, BTreeMap::new()),
                lp_value: sol.lp_value,
                exhaustive: true,
            }
        }
        Problem::Bicut => {
            let g = cx.digraph()?;
            match req.variant {
                St => {
                    let (t, map) = cx.terminals(&["s", "t"])?;
                    let sol = bicut::st_edge_bicut_2approx(g, t[0], t[1])?;
                    let v = sol.cost;
                    bicut_outcome(sol, map, v)
                }
                SStar => {
                    let (t, map) = cx.terminals(&["s"])?;
                    let sol = bicut::s_star_edge_bicut_2approx(g, t[0])?;
                    let v = sol.cost;
                    bicut_outcome(sol, map, v)
                }
                Global => {
                    let opts = GlobalBicutOptions { tuple_limit: req.tuple_limit, seed: req.seed };
                    let sol = bicut::approximate_global_bicut_with(g, &opts)?;
                    let v = sol.cost;
                    bicut_outcome(sol, BTreeMap::new(), v)
                }
                Uncomparable => {
                    let sol = bicut::min_uncomparable_pair(g)?;
                    let v = sol.pair.sigma;
                    bicut_outcome(sol, BTreeMap::new(), v)
                }
                Intersection => {
                    let sol = bicut::bicut_fixed_intersection(g, &cx.set()?)?;
                    let v = sol.cost;
                    bicut_outcome(sol, BTreeMap::new(), v)
                }
                Complement => {
                    let sol = bicut::bicut_fixed_complement(g, &cx.set()?)?;
                    let v = sol.cost;
                    bicut_outcome(sol, BTreeMap::new(), v)
                }
                Node => {
                    let sol = bicut::node_bicut_2approx(g, &g.node_costs())?;
                    let map = BTreeMap::from([("s".to_string(), sol.s), ("t".to_string(), sol.t)]);
                    node_outcome(&sol.nodes, sol.cost, map, "node_bicut_2approx", None)
                }
                _ => return Err(usage("bicut st-node has no dedicated solver; use `oracle` or the global node variant")),
            }
        }
        Problem::Lin3cut => {
            let g = cx.digraph()?;
            if req.variant == Fixed {
                let (t, _) = cx.terminals(&["s", "r", "t"])?;
                lin3_outcome(lin3cut::lin3cut_fixed_2approx(g, t[0], t[1], t[2])?, "lin3cut_fixed_2approx")
            } else {
                let (t, _) = cx.terminals(&["s", "t"])?;
                lin3_outcome(lin3cut::lin3cut_star_32approx(g, t[0], t[1])?, "lin3cut_star_32approx")
            }
        }
        Problem::SepKcut => {
            let g = cx.graph()?;
            let (t, map) = cx.terminals(&["s", "t"])?;
            let opts = SepKCutOptions { seed: req.seed, trials: req.trials, method: req.enum_method };
            let part = kcut::st_sep_kcut(g, t[0], t[1], cx.k()?, opts)?;
            partition_outcome(&part, map, "st_sep_kcut", true)
        }
        Problem::KcutEnum => {
            let g = cx.graph()?;
            let cuts = kcut::enumerate_2approx_kcuts(g, cx.k()?, req.seed, req.trials, req.enum_method)?;
            let best = cuts.partitions.first().ok_or_else(|| Error::Infeasible("no partition found".into()))?;
            let method = if cuts.exact { "enumerate_exact" } else { "enumerate_randomized" };
            let mut out = partition_outcome(best, BTreeMap::new(), method, cuts.exact);
            out.payload.partitions = cuts
                .partitions
                .iter()
                .map(|p| PartitionOut { gamma: p.gamma, blocks: p.blocks.iter().map(|b| one_based(b.iter())).collect() })
                .collect();
            out
        }
        Problem::Multiway => {
            let g = cx.graph()?;
            let (ids, map) = cx.terminal_list()?;
            let sol = kcut::node_multiway_cut_approx(g, &ids, &g.node_costs())?;
            node_outcome(&sol.nodes, sol.cost, map, "node_multiway_cut_approx", Some(sol.lp_value))
        }
        Problem::Node3cut => {
            let g = cx.graph()?;
            let sol = kcut::node_3cut_approx(g, &g.node_costs())?;
            let map = sol.terminals.iter().enumerate().map(|(i, &v)| (format!("t{}", i + 1), v)).collect();
            node_outcome(&sol.nodes, sol.cost, map, "node_3cut_approx", Some(sol.lp_value))
        }
    };
    Ok(out)
}

fn oracle_outcome(sol: OracleSolution, names: &[&str], method: &str) -> Outcome {
    let mut p = Payload {
        removed_arcs: one_based(sol.removed_arcs.iter().copied()),
        removed_nodes: one_based(sol.removed_nodes.iter()),
        sets: sol.sets.iter().map(|s| one_based(s.iter())).collect(),
        ..Payload::default()
    };
    for (i, &v) in sol.terminals.iter().enumerate() {
        let name = names.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("t{}", i + 1));
        p.terminals.insert(name, v + 1);
    }
    Outcome { method: format!("oracle::{method}"), value: sol.value, payload: p, lp_value: None, exhaustive: true }
}

/// Runs the exhaustive reference solver for the request.
pub fn run_oracle(inst: &Instance, req: &Request, budget: &OracleBudget) -> Result<Outcome, SolveError> {
    check_variant(req)?;
    let cx = Ctx { inst, req };
    let b = budget;
    use Variant::*;
    let st = ["s", "t"];
    let out = match req.problem {
        Problem::DoubleCut => {
            let g = cx.digraph()?;
            let costs = g.node_costs();
            match req.variant {
                Edge => oracle_outcome(oracle::edge_double_cut(g, b)?, &st, "edge_double_cut"),
                Node => oracle_outcome(oracle::node_double_cut(g, &costs, b)?, &st, "node_double_cut"),
                StEdge => {
                    let (t, _) = cx.terminals(&st)?;
                    oracle_outcome(oracle::st_edge_double_cut(g, t[0], t[1], b)?, &st, "st_edge_double_cut")
                }
                _ => {
                    let (t, _) = cx.terminals(&st)?;
                    oracle_outcome(oracle::st_node_double_cut(g, t[0], t[1], &costs, b)?, &st, "st_node_double_cut")
                }
            }
        }
        Problem::Bicut => {
            let g = cx.digraph()?;
            match req.variant {
                St => {
                    let (t, _) = cx.terminals(&st)?;
                    oracle_outcome(oracle::st_edge_bicut(g, t[0], t[1], b)?, &st, "st_edge_bicut")
                }
                SStar => {
                    let (t, _) = cx.terminals(&["s"])?;
                    oracle_outcome(oracle::s_star_edge_bicut(g, t[0], b)?, &st, "s_star_edge_bicut")
                }
                Global => oracle_outcome(oracle::edge_bicut(g, b)?, &st, "edge_bicut"),
                Uncomparable => oracle_outcome(oracle::min_uncomparable_sigma(g, b)?, &st, "min_uncomparable_sigma"),
                Intersection => {
                    oracle_outcome(oracle::bicut_fixed_intersection(g, &cx.set()?, b)?, &st, "bicut_fixed_intersection")
                }
                Complement => {
                    oracle_outcome(oracle::bicut_fixed_complement(g, &cx.set()?, b)?, &st, "bicut_fixed_complement")
                }
                Node => oracle_outcome(oracle::node_bicut(g, &g.node_costs(), b)?, &st, "node_bicut"),
                _ => {
                    let (t, _) = cx.terminals(&st)?;
                    oracle_outcome(oracle::st_node_bicut(g, t[0], t[1], &g.node_costs(), b)?, &st, "st_node_bicut")
                }
            }
        }
        Problem::Lin3cut => {
            let g = cx.digraph()?;
            if req.variant == Fixed {
                let (t, _) = cx.terminals(&["s", "r", "t"])?;
                oracle_outcome(oracle::lin3cut_fixed(g, t[0], t[1], t[2], b)?, &["s", "r", "t"], "lin3cut_fixed")
            } else {
                let (t, _) = cx.terminals(&st)?;
                oracle_outcome(oracle::lin3cut_star(g, t[0], t[1], b)?, &["s", "r", "t"], "lin3cut_star")
            }
        }
        Problem::SepKcut => {
            let g = cx.graph()?;
            let (t, _) = cx.terminals(&st)?;
            oracle_outcome(oracle::st_sep_kcut(g, t[0], t[1], cx.k()?, b)?, &st, "st_sep_kcut")
        }
        Problem::KcutEnum => {
            let g = cx.graph()?;
            if g.node_count() > b.max_nodes {
                return Err(Error::Budget(format!("{} nodes exceed the oracle limit of {}", g.node_count(), b.max_nodes)).into());
            }
            let cuts = kcut::enumerate_2approx_kcuts(g, cx.k()?, req.seed, None, EnumMethod::Exact)?;
            let best = cuts.partitions.first().ok_or_else(|| Error::Infeasible("no partition found".into()))?;
            let mut out = partition_outcome(best, BTreeMap::new(), "oracle::kcut_partitions", true);
            out.payload.partitions = cuts
                .partitions
                .iter()
                .map(|p| PartitionOut { gamma: p.gamma, blocks: p.blocks.iter().map(|b| one_based(b.iter())).collect() })
                .collect();
            out
        }
        Problem::Multiway => {
            let g = cx.graph()?;
            let (ids, map) = cx.terminal_list()?;
            let mut out = oracle_outcome(oracle::node_multiway(g, &ids, &g.node_costs(), b)?, &[], "node_multiway");
            out.payload.terminals = map.into_iter().map(|(k, v)| (k, v + 1)).collect();
            out
        }
        Problem::Node3cut => {
            let g = cx.graph()?;
            oracle_outcome(oracle::node_3cut(g, &g.node_costs(), b)?, &[], "node_3cut")
        }
    };
    Ok(out)
}
