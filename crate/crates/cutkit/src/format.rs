//! Text and JSON instance files.
//!
//! Node ids in files are 1-based and become 0-based on load. The text
//! format is DIMACS-like:
//!
//! ```text
//! # comment
//! p digraph 3 2
//! a 1 2 5
//! a 2 3 inf
//! n 2 4
//! t s 1
//! t t 3
//! l 2 middle
//! ```
//!
//! `p graph` with `e u v w` lines gives an undirected graph. The JSON form
//! carries the same data: `{kind, n, arcs|edges, node_weights, terminals,
//! labels}` with weights as numbers or `"inf"`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use cutkit_core::graph::GraphError;
use cutkit_core::weight::{self, INFINITE};
use cutkit_core::{NodeId, UndirectedGraph, WeightedDigraph};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `p digraph|graph <n> <m>` header")]
    MissingHeader,
    #[error("header announces {expected} arcs, found {found}")]
    ArcCount { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Graph {
    Directed(WeightedDigraph),
    Undirected(UndirectedGraph),
}

/// A graph plus named terminals (0-based ids).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub terminals: BTreeMap<String, NodeId>,
}

impl Instance {
    pub fn directed(g: WeightedDigraph) -> Self {
        Instance { graph: Graph::Directed(g), terminals: BTreeMap::new() }
    }

    pub fn undirected(g: UndirectedGraph) -> Self {
        Instance { graph: Graph::Undirected(g), terminals: BTreeMap::new() }
    }

    pub fn with_terminal(mut self, name: &str, v: NodeId) -> Self {
        self.terminals.insert(name.to_string(), v);
        self
    }

    pub fn node_count(&self) -> usize {
        match &self.graph {
            Graph::Directed(g) => g.node_count(),
            Graph::Undirected(g) => g.node_count(),
        }
    }

    fn parts(&self) -> Parts<'_> {
        match &self.graph {
            Graph::Directed(g) => Parts {
                kind: "digraph",
                n: g.node_count(),
                arcs: g.arcs().iter().map(|a| (a.tail, a.head, a.weight)).collect(),
                node_weights: g.node_weights(),
                labels: g.labels(),
            },
            Graph::Undirected(g) => Parts {
                kind: "graph",
                n: g.node_count(),
                arcs: g.edges().iter().map(|a| (a.tail, a.head, a.weight)).collect(),
                node_weights: g.node_weights(),
                labels: g.labels(),
            },
        }
    }

    /// Same instance with arcs sorted by `(tail, head, weight)` (edges with
    /// `u < v` first). Two files describing the same multigraph have equal
    /// canonical forms.
    pub fn canonical(&self) -> Instance {
        let p = self.parts();
        let directed = p.kind == "digraph";
        let mut arcs = p.arcs;
        if !directed {
            for a in &mut arcs {
                if a.0 > a.1 {
                    *a = (a.1, a.0, a.2);
                }
            }
        }
        arcs.sort_unstable();
        let graph = build(directed, p.n, arcs, p.node_weights.map(<[u64]>::to_vec), p.labels.map(<[String]>::to_vec))
            .expect("rebuilding a valid graph");
        Instance { graph, terminals: self.terminals.clone() }
    }
}

struct Parts<'a> {
    kind: &'static str,
    n: usize,
    arcs: Vec<(NodeId, NodeId, u64)>,
    node_weights: Option<&'a [u64]>,
    labels: Option<&'a [String]>,
}

fn build(
    directed: bool,
    n: usize,
    arcs: Vec<(NodeId, NodeId, u64)>,
    node_weights: Option<Vec<u64>>,
    labels: Option<Vec<String>>,
) -> Result<Graph, GraphError> {
    if directed {
        let mut g = WeightedDigraph::new(n, arcs)?;
        if let Some(w) = node_weights {
            g = g.with_node_weights(w)?;
        }
        if let Some(l) = labels {
            g = g.with_labels(l);
        }
        Ok(Graph::Directed(g))
    } else {
        let mut g = UndirectedGraph::new(n, arcs)?;
        if let Some(w) = node_weights {
            g = g.with_node_weights(w)?;
        }
        if let Some(l) = labels {
            g = g.with_labels(l);
        }
        Ok(Graph::Undirected(g))
    }
}

fn fmt_weight(w: u64) -> String {
    if w == INFINITE {
        "inf".to_string()
    } else {
        w.to_string()
    }
}

pub fn parse_text(src: &str) -> Result<Instance, FormatError> {
    let mut header: Option<(bool, usize, usize)> = None;
    let mut arcs = Vec::new();
    let mut node_weights: Option<Vec<u64>> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut terminals = BTreeMap::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let err = |msg: String| FormatError::Syntax { line, msg };
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        let int = |s: &str| s.parse::<usize>().map_err(|_| err(format!("expected a nonnegative integer, got `{s}`")));
        let wt = |s: &str| weight::parse(s).ok_or_else(|| err(format!("bad weight `{s}`")));
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(err("second header".into()));
                }
                if fields.len() != 4 {
                    return Err(err("header is `p digraph|graph <n> <m>`".into()));
                }
                let directed = match fields[1] {
                    "digraph" => true,
                    "graph" => false,
                    other => return Err(err(format!("unknown graph kind `{other}`"))),
                };
                let n = int(fields[2])?;
                if n == 0 {
                    return Err(err("graph needs at least one node".into()));
                }
                header = Some((directed, n, int(fields[3])?));
            }
            tag @ ("a" | "e" | "n" | "t" | "l") => {
                let Some((directed, n, _)) = header else {
                    return Err(FormatError::MissingHeader);
                };
                let node = |s: &str| -> Result<NodeId, FormatError> {
                    let v = int(s)?;
                    if v == 0 || v > n {
                        return Err(err(format!("node {v} out of range 1..={n}")));
                    }
                    Ok(v - 1)
                };
                match tag {
                    "a" | "e" => {
                        if (tag == "a") != directed {
                            return Err(err(format!("`{tag}` line in a {} file", if directed { "digraph" } else { "graph" })));
                        }
                        if fields.len() != 4 {
                            return Err(err(format!("`{tag} <u> <v> <w>` expected")));
                        }
                        let (u, v) = (node(fields[1])?, node(fields[2])?);
                        if u == v {
                            return Err(err(format!("self-loop at node {}", u + 1)));
                        }
                        arcs.push((u, v, wt(fields[3])?));
                    }
                    "n" => {
                        if fields.len() != 3 {
                            return Err(err("`n <id> <w|inf>` expected".into()));
                        }
                        let v = node(fields[1])?;
                        node_weights.get_or_insert_with(|| vec![1; n])[v] = wt(fields[2])?;
                    }
                    "t" => {
                        if fields.len() != 3 {
                            return Err(err("`t <name> <id>` expected".into()));
                        }
                        terminals.insert(fields[1].to_string(), node(fields[2])?);
                    }
                    _ => {
                        if fields.len() < 3 {
                            return Err(err("`l <id> <label>` expected".into()));
                        }
                        let v = node(fields[1])?;
                        let rest = text[1..].trim_start()[fields[1].len()..].trim();
                        labels.get_or_insert_with(|| vec![String::new(); n])[v] = rest.to_string();
                    }
                }
            }
            other => return Err(err(format!("unknown line type `{other}`"))),
        }
    }
    let (directed, n, m) = header.ok_or(FormatError::MissingHeader)?;
    if arcs.len() != m {
        return Err(FormatError::ArcCount { expected: m, found: arcs.len() });
    }
    Ok(Instance { graph: build(directed, n, arcs, node_weights, labels)?, terminals })
}

pub fn emit_text(inst: &Instance) -> String {
    let p = inst.parts();
    let tag = if p.kind == "digraph" { 'a' } else { 'e' };
    let mut out = String::new();
    writeln!(out, "p {} {} {}", p.kind, p.n, p.arcs.len()).unwrap();
    for (u, v, w) in &p.arcs {
        writeln!(out, "{tag} {} {} {}", u + 1, v + 1, fmt_weight(*w)).unwrap();
    }
    if let Some(ws) = p.node_weights {
        for (v, w) in ws.iter().enumerate() {
            writeln!(out, "n {} {}", v + 1, fmt_weight(*w)).unwrap();
        }
    }
    for (name, v) in &inst.terminals {
        writeln!(out, "t {name} {}", v + 1).unwrap();
    }
    if let Some(ls) = p.labels {
        for (v, l) in ls.iter().enumerate().filter(|(_, l)| !l.is_empty()) {
            writeln!(out, "l {} {l}", v + 1).unwrap();
        }
    }
    out
}

/// A weight in JSON: a number or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonWeight {
    Finite(u64),
    Word(InfWord),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InfWord {
    Inf,
}

impl From<u64> for JsonWeight {
    fn from(w: u64) -> Self {
        if w == INFINITE {
            JsonWeight::Word(InfWord::Inf)
        } else {
            JsonWeight::Finite(w)
        }
    }
}

impl JsonWeight {
    fn value(self) -> Option<u64> {
        match self {
            JsonWeight::Finite(w) if w != INFINITE => Some(w),
            JsonWeight::Finite(_) => None,
            JsonWeight::Word(_) => Some(INFINITE),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonInstance {
    kind: String,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    arcs: Option<Vec<(usize, usize, JsonWeight)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<(usize, usize, JsonWeight)>>,
    #[serde(default)]
    node_weights: Option<Vec<JsonWeight>>,
    #[serde(default)]
    terminals: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

fn json_err(msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line: 0, msg: msg.into() }
}

pub fn parse_json(src: &str) -> Result<Instance, FormatError> {
    let j: JsonInstance = serde_json::from_str(src)?;
    let directed = match j.kind.as_str() {
        "digraph" => true,
        "graph" => false,
        other => return Err(json_err(format!("unknown kind `{other}`"))),
    };
    let list = match (directed, j.arcs, j.edges) {
        (true, Some(a), None) => a,
        (false, None, Some(e)) => e,
        _ => return Err(json_err("a digraph needs `arcs`, a graph needs `edges`")),
    };
    let node = |v: usize| {
        if v == 0 || v > j.n {
            Err(json_err(format!("node {v} out of range 1..={}", j.n)))
        } else {
            Ok(v - 1)
        }
    };
    let mut arcs = Vec::with_capacity(list.len());
    for (u, v, w) in list {
        let w = w.value().ok_or_else(|| json_err("weight too large"))?;
        arcs.push((node(u)?, node(v)?, w));
    }
    let node_weights = match j.node_weights {
        Some(ws) => Some(ws.into_iter().map(|w| w.value().ok_or_else(|| json_err("weight too large"))).collect::<Result<Vec<_>, _>>()?),
        None => None,
    };
    let mut terminals = BTreeMap::new();
    for (name, v) in j.terminals {
        terminals.insert(name, node(v)?);
    }
    if j.n == 0 {
        return Err(json_err("graph needs at least one node"));
    }
    if let Some(l) = &j.labels {
        if l.len() != j.n {
            return Err(json_err(format!("expected {} labels, got {}", j.n, l.len())));
        }
    }
    Ok(Instance { graph: build(directed, j.n, arcs, node_weights, j.labels)?, terminals })
}

pub fn emit_json(inst: &Instance) -> String {
    let p = inst.parts();
    let list: Vec<(usize, usize, JsonWeight)> = p.arcs.iter().map(|&(u, v, w)| (u + 1, v + 1, w.into())).collect();
    let directed = p.kind == "digraph";
    let j = JsonInstance {
        kind: p.kind.to_string(),
        n: p.n,
        arcs: directed.then(|| list.clone()),
        edges: (!directed).then_some(list),
        node_weights: p.node_weights.map(|ws| ws.iter().map(|&w| w.into()).collect()),
        terminals: inst.terminals.iter().map(|(k, &v)| (k.clone(), v + 1)).collect(),
        labels: p.labels.map(<[String]>::to_vec),
    };
    serde_json::to_string_pretty(&j).expect("instance serializes") + "\n"
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FileFormat {
    Text,
    Json,
}

impl FileFormat {
    /// JSON when the content starts with `{`, text otherwise.
    pub fn sniff(src: &str) -> Self {
        if src.trim_start().starts_with('{') {
            FileFormat::Json
        } else {
            FileFormat::Text
        }
    }
}

pub fn parse(src: &str) -> Result<Instance, FormatError> {
    match FileFormat::sniff(src) {
        FileFormat::Json => parse_json(src),
        FileFormat::Text => parse_text(src),
    }
}

pub fn emit(inst: &Instance, format: FileFormat) -> String {
    match format {
        FileFormat::Text => emit_text(inst),
        FileFormat::Json => emit_json(inst),
    }
}
