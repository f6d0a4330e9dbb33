//! Instance generators for `cutkit gen`.

use cutkit_core::gadgets;
use cutkit_core::generate::{self, RandomSpec};
use cutkit_core::{Error, Result};

use crate::format::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GenKind {
    /// Random digraph with terminals s = 1, t = 2.
    Digraph,
    /// Random connected graph with terminals s = 1, t = 2.
    Graph,
    /// The layered gap digraph `D_{a,b}`.
    Dab,
    /// The six-node skeleton digraph.
    Skeleton,
    /// Random k-partite graph (vertex cover source).
    Partite,
    Cycle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    pub n: usize,
    pub density: f64,
    pub min_weight: u64,
    pub max_weight: u64,
    pub a: usize,
    pub b: usize,
    pub k: usize,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { n: 6, density: 0.35, min_weight: 1, max_weight: 3, a: 2, b: 4, k: 3, seed: 1 }
    }
}

pub fn generate(kind: GenKind, p: &GenParams) -> Result<Instance> {
    let spec = RandomSpec::new(p.n, p.density).weights(p.min_weight, p.max_weight);
    let inst = match kind {
        GenKind::Digraph => Instance::directed(generate::random_digraph(&spec, p.seed)).with_terminal("s", 0).with_terminal("t", 1),
        GenKind::Graph => {
            Instance::undirected(generate::random_connected_graph(&spec, p.seed)).with_terminal("s", 0).with_terminal("t", 1)
        }
        GenKind::Dab => {
            let d = gadgets::build_dab(p.a, p.b)?;
            let g = d.graph.clone().with_node_weights(d.costs())?;
            let labels = (0..g.node_count())
                .map(|v| match d.coords(v) {
                    Some((i, j)) => format!("v{i}_{j}"),
                    None if v == d.s => "s".to_string(),
                    None => "t".to_string(),
                })
                .collect();
            Instance::directed(g.with_labels(labels)).with_terminal("s", d.s).with_terminal("t", d.t)
        }
        GenKind::Skeleton => {
            let labels = ["S", "T", "A", "B", "C", "D"].map(String::from).to_vec();
            Instance::directed(gadgets::build_global_skeleton().with_labels(labels))
        }
        GenKind::Partite => {
            let pg = generate::random_partite(p.n, p.k, p.density, p.seed);
            let labels = pg.parts.iter().map(|c| format!("part{c}")).collect();
            Instance::undirected(pg.graph.with_labels(labels))
        }
        GenKind::Cycle if p.n < 3 => return Err(Error::InvalidInput("a cycle needs at least 3 nodes".into())),
        GenKind::Cycle => Instance::undirected(generate::cycle(p.n)),
    };
    Ok(inst)
}
