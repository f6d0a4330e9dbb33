//! Seeded instance generators. The same seed always yields the same
//! instance (ChaCha8 stream, independent of platform and thread count).

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gadgets::PartiteGraph;
use crate::graph::{UndirectedGraph, WeightedDigraph};
use crate::NodeId;

/// Shape of a random instance: each ordered (or unordered) pair carries an
/// arc with probability `density`, weights uniform in `min_weight..=max_weight`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomSpec {
    pub n: usize,
    pub density: f64,
    pub min_weight: u64,
    pub max_weight: u64,
}

impl RandomSpec {
    pub fn new(n: usize, density: f64) -> Self {
        RandomSpec { n, density, min_weight: 1, max_weight: 3 }
    }

    pub fn weights(mut self, lo: u64, hi: u64) -> Self {
        self.min_weight = lo;
        self.max_weight = hi;
        self
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn weight(spec: &RandomSpec, rng: &mut ChaCha8Rng) -> u64 {
    rng.random_range(spec.min_weight..=spec.max_weight)
}

pub fn random_digraph(spec: &RandomSpec, seed: u64) -> WeightedDigraph {
    let mut rng = rng(seed);
    let mut arcs = Vec::new();
    for u in 0..spec.n {
        for v in 0..spec.n {
            if u != v && rng.random_bool(spec.density) {
                arcs.push((u, v, weight(spec, &mut rng)));
            }
        }
    }
    WeightedDigraph::new(spec.n, arcs).expect("generated arcs are valid")
}

/// Random graph that always contains a random spanning tree, so it is
/// connected.
pub fn random_connected_graph(spec: &RandomSpec, seed: u64) -> UndirectedGraph {
    let mut rng = rng(seed);
    let n = spec.n;
    let mut edges = Vec::new();
    let mut tree = alloc::vec![false; n * n];
    for v in 1..n {
        let u = rng.random_range(0..v);
        edges.push((u, v, weight(spec, &mut rng)));
        tree[u * n + v] = true;
    }
    for u in 0..n {
        for v in u + 1..n {
            if !tree[u * n + v] && rng.random_bool(spec.density) {
                edges.push((u, v, weight(spec, &mut rng)));
            }
        }
    }
    UndirectedGraph::new(n, edges).expect("generated edges are valid")
}

pub fn random_graph(spec: &RandomSpec, seed: u64) -> UndirectedGraph {
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 0..spec.n {
        for v in u + 1..spec.n {
            if rng.random_bool(spec.density) {
                edges.push((u, v, weight(spec, &mut rng)));
            }
        }
    }
    UndirectedGraph::new(spec.n, edges).expect("generated edges are valid")
}

/// Node costs uniform in `lo..=hi`.
pub fn random_costs(n: usize, lo: u64, hi: u64, seed: u64) -> Vec<u64> {
    let mut rng = rng(seed);
    (0..n).map(|_| rng.random_range(lo..=hi)).collect()
}

/// Random `k`-partite graph with unit vertex costs; parts are assigned
/// uniformly and only cross-part pairs may become edges.
pub fn random_partite(n: usize, k: usize, density: f64, seed: u64) -> PartiteGraph {
    let mut rng = rng(seed);
    let parts: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if parts[u] != parts[v] && rng.random_bool(density) {
                edges.push((u, v));
            }
        }
    }
    let g = UndirectedGraph::unit(n, edges).expect("generated edges are valid");
    PartiteGraph::new(g, parts, k).expect("parts are respected")
}

/// Every unit-weight digraph on `n` labelled nodes with at most `max_arcs`
/// arcs.
pub fn all_digraphs(n: usize, max_arcs: usize) -> Vec<WeightedDigraph> {
    let pairs: Vec<(NodeId, NodeId)> = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    let m = pairs.len();
    (0u64..1 << m)
        .filter(|mask| mask.count_ones() as usize <= max_arcs)
        .map(|mask| {
            let arcs = (0..m).filter(|&i| mask & (1 << i) != 0).map(|i| pairs[i]);
            WeightedDigraph::unit(n, arcs).expect("valid arcs")
        })
        .collect()
}

pub fn cycle(n: usize) -> UndirectedGraph {
    UndirectedGraph::unit(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle needs n >= 3")
}
