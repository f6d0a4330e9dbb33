//! Seeded experiment tables: approximation ratios against the oracle, the
//! `D_{a,b}` LP/IP gap family, and the vertex-cover gadgets.

use cutkit_core::bicut;
use cutkit_core::doublecut;
use cutkit_core::gadgets::{self, GadgetKind};
use cutkit_core::generate::{random_connected_graph, random_costs, random_digraph, random_partite, RandomSpec};
use cutkit_core::kcut::{self, SepKCutOptions};
use cutkit_core::lin3cut;
use cutkit_core::oracle::{self, OracleBudget};
use cutkit_core::{Error, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Ratios,
    Gap,
    Gadgets,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioRow {
    pub problem: &'static str,
    pub n: usize,
    pub seed: String,
    pub oracle: Option<u64>,
    pub approx: Option<u64>,
    pub ratio: Option<f64>,
    pub bound: f64,
    pub status: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapRow {
    pub a: usize,
    pub b: usize,
    pub r: usize,
    pub nodes: usize,
    pub lp: f64,
    pub ab_over_r: f64,
    pub uniform_feasible: bool,
    pub rounded: u64,
    pub ip: Option<u64>,
    pub two_a_minus_one: usize,
    pub status: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GadgetRow {
    pub gadget: &'static str,
    pub seed: u64,
    pub source_n: usize,
    pub source_opt: Option<u64>,
    pub target_opt: Option<u64>,
    pub equal: bool,
    pub back_feasible: bool,
    pub status: &'static str,
}

type Approx = fn(usize, u64) -> Result<(u64, u64)>;

struct Case {
    problem: &'static str,
    num: u64,
    den: u64,
    run: Approx,
}

fn instance_seed(base: u64, n: usize, i: usize) -> u64 {
    base.wrapping_mul(1_000_003).wrapping_add((n as u64) * 10_007).wrapping_add(i as u64)
}

fn budget() -> OracleBudget {
    OracleBudget::default()
}

/// `(approx, oracle)` for one instance, or an error.
fn pair(approx: Result<u64>, opt: Result<u64>) -> Result<(u64, u64)> {
    Ok((approx?, opt?))
}

fn digraph_for(n: usize, seed: u64) -> cutkit_core::WeightedDigraph {
    random_digraph(&RandomSpec::new(n, 0.35), seed)
}

fn graph_for(n: usize, seed: u64) -> cutkit_core::UndirectedGraph {
    random_connected_graph(&RandomSpec::new(n, 0.35), seed)
}

/// First three pairwise non-adjacent nodes in lexicographic order.
pub fn independent_triple(g: &cutkit_core::UndirectedGraph) -> Option<[usize; 3]> {
    let n = g.node_count();
    for a in 0..n {
        for b in a + 1..n {
            if g.adjacent(a, b) {
                continue;
            }
            for c in b + 1..n {
                if !g.adjacent(a, c) && !g.adjacent(b, c) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

fn cases() -> Vec<Case> {
    vec![
        Case {
            problem: "st_edge_bicut",
            num: 2,
            den: 1,
            run: |n, s| {
                let g = digraph_for(n, s);
                pair(bicut::st_edge_bicut_2approx(&g, 0, 1).map(|x| x.cost), oracle::st_edge_bicut(&g, 0, 1, &budget()).map(|x| x.value))
            },
        },
        Case {
            problem: "s_star_edge_bicut",
            num: 2,
            den: 1,
            run: |n, s| {
                let g = digraph_for(n, s);
                pair(bicut::s_star_edge_bicut_2approx(&g, 0).map(|x| x.cost), oracle::s_star_edge_bicut(&g, 0, &budget()).map(|x| x.value))
            },
        },
        Case {
            problem: "global_edge_bicut",
            num: 895,
            den: 448,
            run: |n, s| {
                let g = digraph_for(n, s);
                pair(bicut::approximate_global_bicut(&g).map(|x| x.cost), oracle::edge_bicut(&g, &budget()).map(|x| x.value))
            },
        },
        Case {
            problem: "node_bicut",
            num: 2,
            den: 1,
            run: |n, s| {
                let g = digraph_for(n, s);
                let c = random_costs(g.node_count(), 1, 3, s);
                pair(bicut::node_bicut_2approx(&g, &c).map(|x| x.cost), oracle::node_bicut(&g, &c, &budget()).map(|x| x.value))
            },
        },
        Case {
            problem: "lin3cut_star",
            num: 3,
            den: 2,
            run: |n, s| {
                let g = digraph_for(n, s);
                pair(lin3cut::lin3cut_star_32approx(&g, 0, 1).map(|x| x.cost), oracle::lin3cut_star(&g, 0, 1, &budget()).map(|x| x.value))
            },
        },
        Case {
            problem: "lin3cut_fixed",
            num: 2,
            den: 1,
            run: |n, s| {
                let g = digraph_for(n, s);
                pair(
                    lin3cut::lin3cut_fixed_2approx(&g, 0, 2, 1).map(|x| x.cost),
                    oracle::lin3cut_fixed(&g, 0, 2, 1, &budget()).map(|x| x.value),
                )
            },
        },
        Case {
            problem: "st_node_double_cut",
            num: 2,
            den: 1,
            run: |n, s| {
                let g = digraph_for(n, s);
                let c = random_costs(g.node_count(), 1, 3, s);
                pair(
                    doublecut::st_node_double_cut_2approx(&g, 0, 1, &c).map(|x| x.cost),
                    oracle::st_node_double_cut(&g, 0, 1, &c, &budget()).map(|x| x.value),
                )
            },
        },
        Case {
            problem: "node_multiway",
            num: 2,
            den: 1,
            run: |n, s| {
                let g = graph_for(n, s);
                let c = random_costs(g.node_count(), 1, 3, s);
                let Some(t) = independent_triple(&g) else {
                    return Err(Error::Infeasible("no three pairwise non-adjacent nodes".into()));
                };
                pair(kcut::node_multiway_cut_approx(&g, &t, &c).map(|x| x.cost), oracle::node_multiway(&g, &t, &c, &budget()).map(|x| x.value))
            },
        },
        Case {
            problem: "st_sep_3cut",
            num: 1,
            den: 1,
            run: |n, s| {
                let g = graph_for(n, s);
                let opts = SepKCutOptions { seed: s, ..SepKCutOptions::default() };
                pair(kcut::st_sep_kcut(&g, 0, 1, 3, opts).map(|x| x.gamma), oracle::st_sep_kcut(&g, 0, 1, 3, &budget()).map(|x| x.value))
            },
        },
    ]
}

fn ratio(approx: u64, opt: u64) -> f64 {
    if opt == 0 {
        if approx == 0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        approx as f64 / opt as f64
    }
}

/// One row per (problem, instance) plus a `max` summary row per problem.
/// Infeasible instances are marked `infeasible`, oracle overruns `skipped`.
pub fn ratios(seed: u64, sizes: &[usize], count: usize) -> Vec<RatioRow> {
    let mut rows = Vec::new();
    for case in cases() {
        let bound = case.num as f64 / case.den as f64;
        let mut worst: Option<f64> = None;
        let mut all_within = true;
        for &n in sizes {
            for i in 0..count {
                let s = instance_seed(seed, n, i);
                let base = RatioRow { problem: case.problem, n, seed: s.to_string(), oracle: None, approx: None, ratio: None, bound, status: "" };
                let row = match (case.run)(n, s) {
                    Ok((a, o)) => {
                        let ok = cutkit_core::weight::ratio_le(a, o, case.num, case.den) && a >= o;
                        all_within &= ok;
                        let r = ratio(a, o);
                        worst = Some(worst.map_or(r, |w: f64| w.max(r)));
                        RatioRow { oracle: Some(o), approx: Some(a), ratio: Some(r), status: if ok { "ok" } else { "violated" }, ..base }
                    }
                    Err(Error::Infeasible(_)) => RatioRow { status: "infeasible", ..base },
                    Err(Error::Budget(_)) => RatioRow { status: "skipped", ..base },
                    Err(_) => {
                        all_within = false;
                        RatioRow { status: "error", ..base }
                    }
                };
                rows.push(row);
            }
        }
        rows.push(RatioRow {
            problem: case.problem,
            n: sizes.iter().copied().max().unwrap_or(0),
            seed: "max".into(),
            oracle: None,
            approx: None,
            ratio: worst,
            bound,
            status: if all_within { "ok" } else { "violated" },
        });
    }
    rows
}

pub const GAP_FAMILY: [(usize, usize); 6] = [(2, 4), (2, 5), (2, 6), (3, 7), (3, 8), (3, 9)];

/// LP value, uniform-point feasibility and (for small instances) the
/// integer optimum on `D_{a,b}`.
pub fn gap(family: &[(usize, usize)]) -> Result<Vec<GapRow>> {
    let mut rows = Vec::new();
    for &(a, b) in family {
        let inst = gadgets::build_dab(a, b)?;
        let costs = inst.costs();
        let nodes = inst.graph.node_count();
        let sol = doublecut::st_node_double_cut_2approx(&inst.graph, inst.s, inst.t, &costs)?;
        let small = OracleBudget { max_nodes: 12, ..OracleBudget::default() };
        let ip = match oracle::st_node_double_cut(&inst.graph, inst.s, inst.t, &costs, &small) {
            Ok(o) => Some(o.value),
            Err(Error::Budget(_)) => None,
            Err(e) => return Err(e),
        };
        rows.push(GapRow {
            a,
            b,
            r: inst.r,
            nodes,
            lp: sol.lp_value.unwrap_or(f64::NAN),
            ab_over_r: (a * b) as f64 / inst.r as f64,
            uniform_feasible: gadgets::dab_uniform_point_feasible(&inst, 1e-9),
            rounded: sol.cost,
            ip,
            two_a_minus_one: 2 * a - 1,
            status: if ip.is_some() { "ok" } else { "skipped" },
        });
    }
    Ok(rows)
}

fn gadget_row(gadget: &'static str, seed: u64, n: usize, r: Result<(u64, u64, bool, bool)>) -> GadgetRow {
    let base = GadgetRow { gadget, seed, source_n: n, source_opt: None, target_opt: None, equal: false, back_feasible: false, status: "" };
    match r {
        Ok((s, t, eq, back)) => GadgetRow {
            source_opt: Some(s),
            target_opt: Some(t),
            equal: eq && s == t,
            back_feasible: back,
            status: if eq && s == t && back { "ok" } else { "violated" },
            ..base
        },
        Err(Error::Budget(_)) => GadgetRow { status: "skipped", ..base },
        Err(_) => GadgetRow { status: "error", ..base },
    }
}

/// Node-3-cut through node double cut, solved exactly per terminal.
pub fn node3cut_via_oracle(g: &cutkit_core::UndirectedGraph, costs: &[u64]) -> Result<(u64, u64, bool, bool)> {
    let opt = oracle::node_3cut(g, costs, &budget())?;
    let via = gadgets::node3cut_via_doublecut(g, costs, |d, c| oracle::node_double_cut(d, c, &budget()).map(|s| s.removed_nodes))?;
    let back = cutkit_core::certificate::components_after(g, &via.nodes) >= 3;
    Ok((opt.value, via.cost, true, back))
}

/// Equality of optima and mapped-back feasibility for the three vertex
/// cover gadgets and for node-3-cut via node double cut.
pub fn gadgets_suite(seed: u64, count: usize) -> Vec<GadgetRow> {
    let mut rows = Vec::new();
    for i in 0..count {
        let s = seed.wrapping_mul(1_000_003).wrapping_add(i as u64);
        let n3 = 4 + i % 3;
        let three = random_partite(n3, 3, 0.5, s);
        for (name, kind) in [("vc3p_to_node3cut", GadgetKind::Node3Cut), ("vc3p_to_s_star_bicut", GadgetKind::SStarBicut)] {
            let r = gadgets::check_gadget(&three, kind).map(|c| (c.source_opt, c.target_opt, c.equivalent, c.back_feasible));
            rows.push(gadget_row(name, s, n3, r));
        }
        let n4 = 4 + i % 2;
        let four = random_partite(n4, 4, 0.6, s);
        let r = gadgets::check_gadget(&four, GadgetKind::NodeBicut).map(|c| (c.source_opt, c.target_opt, c.equivalent, c.back_feasible));
        rows.push(gadget_row("vc4p_to_node_bicut", s, n4, r));
        let nv = 5 + i % 4;
        let g = random_connected_graph(&RandomSpec::new(nv, 0.3), s);
        let costs = random_costs(nv, 1, 3, s);
        rows.push(gadget_row("node3cut_via_doublecut", s, nv, node3cut_via_oracle(&g, &costs)));
    }
    rows
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
}
