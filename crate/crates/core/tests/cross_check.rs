//! Solvers against the brute-force oracles on seeded random instances.

use cutkit_core::bicut::{
    approximate_global_bicut, bicut_fixed_complement, bicut_fixed_intersection, min_uncomparable_pair,
    node_bicut_2approx, s_star_edge_bicut_2approx, st_edge_bicut_2approx,
};
use cutkit_core::doublecut::{edge_double_cut_exact, st_edge_double_cut_exact, st_node_double_cut_2approx};
use cutkit_core::generate::{random_connected_graph, random_costs, random_digraph, RandomSpec};
use cutkit_core::kcut::{node_3cut_approx, node_multiway_cut_approx, st_sep_kcut, EnumMethod, SepKCutOptions};
use cutkit_core::lin3cut::{lin3cut_fixed_2approx, lin3cut_star_32approx};
use cutkit_core::oracle::{self, OracleBudget};
use cutkit_core::weight::ratio_le;
use cutkit_core::{Error, NodeSet};

fn budget() -> OracleBudget {
    OracleBudget::default()
}

fn spec(seed: u64, max_n: usize) -> RandomSpec {
    RandomSpec::new(3 + (seed as usize % (max_n - 2)), 0.35)
}

#[test]
fn double_cuts_are_exact() {
    for seed in 0..60 {
        let g = random_digraph(&spec(seed, 7), seed);
        let opt = oracle::edge_double_cut(&g, &budget()).unwrap();
        let sol = edge_double_cut_exact(&g).unwrap();
        assert_eq!(sol.cost, opt.value, "seed {seed}");
        assert!(sol.certify(&g));
        let st = st_edge_double_cut_exact(&g, 0, 1).unwrap();
        assert_eq!(st.cost, oracle::st_edge_double_cut(&g, 0, 1, &budget()).unwrap().value);
    }
}

#[test]
fn bicut_subroutines_are_exact() {
    for seed in 0..40 {
        let g = random_digraph(&spec(seed, 6), 100 + seed);
        let n = g.node_count();
        let pair = min_uncomparable_pair(&g).unwrap();
        assert_eq!(pair.pair.sigma, oracle::min_uncomparable_sigma(&g, &budget()).unwrap().value);
        for z in [NodeSet::new(n), NodeSet::singleton(n, 0), NodeSet::from_nodes(n, [0, 2])] {
            if n - z.len() < 2 {
                continue;
            }
            let a = bicut_fixed_intersection(&g, &z).unwrap();
            assert_eq!(a.cost, oracle::bicut_fixed_intersection(&g, &z, &budget()).unwrap().value);
            assert_eq!(a.pair.a.intersection(&a.pair.b), z);
            let b = bicut_fixed_complement(&g, &z).unwrap();
            assert_eq!(b.cost, oracle::bicut_fixed_complement(&g, &z, &budget()).unwrap().value);
            assert_eq!(b.pair.a.union(&b.pair.b).complement(), z);
            assert!(a.certify(&g) && b.certify(&g));
        }
    }
}

#[test]
fn bicut_ratios() {
    for seed in 0..40 {
        let g = random_digraph(&spec(seed, 7), 200 + seed);
        let st = st_edge_bicut_2approx(&g, 0, 1).unwrap();
        assert!(ratio_le(st.cost, oracle::st_edge_bicut(&g, 0, 1, &budget()).unwrap().value, 2, 1));
        let star = s_star_edge_bicut_2approx(&g, 0).unwrap();
        assert!(ratio_le(star.cost, oracle::s_star_edge_bicut(&g, 0, &budget()).unwrap().value, 2, 1));
        assert!(st.certify(&g) && star.certify(&g));
    }
    for seed in 0..12 {
        let g = random_digraph(&RandomSpec::new(4 + seed as usize % 3, 0.4), 300 + seed);
        let sol = approximate_global_bicut(&g).unwrap();
        let opt = oracle::edge_bicut(&g, &budget()).unwrap().value;
        assert!(ratio_le(sol.cost, opt, 895, 448), "seed {seed}: {} vs {opt}", sol.cost);
        assert!(sol.certify(&g));
    }
}

#[test]
fn node_bicut_ratio() {
    for seed in 0..40 {
        let g = random_digraph(&spec(seed, 8), 400 + seed);
        let costs = random_costs(g.node_count(), 1, 3, seed);
        match (node_bicut_2approx(&g, &costs), oracle::node_bicut(&g, &costs, &budget())) {
            (Ok(sol), Ok(opt)) => {
                assert!(sol.certify(&g));
                assert!(ratio_le(sol.cost, opt.value, 2, 1));
            }
            (Err(Error::Infeasible(_)), Err(Error::Infeasible(_))) => {}
            (a, b) => panic!("seed {seed}: {a:?} vs {b:?}"),
        }
    }
}

#[test]
fn lin3cut_ratios() {
    for seed in 0..40 {
        let g = random_digraph(&spec(seed, 7), 500 + seed);
        let star = lin3cut_star_32approx(&g, 0, 1).unwrap();
        let opt = oracle::lin3cut_star(&g, 0, 1, &budget()).unwrap().value;
        assert!(ratio_le(star.cost, opt, 3, 2), "seed {seed}: {} vs {opt}", star.cost);
        assert!(star.certify(&g));
        let fixed = lin3cut_fixed_2approx(&g, 0, 2, 1).unwrap();
        let opt = oracle::lin3cut_fixed(&g, 0, 2, 1, &budget()).unwrap().value;
        assert!(ratio_le(fixed.cost, opt, 2, 1));
        assert!(fixed.certify(&g));
    }
}

#[test]
fn node_double_cut_pipeline() {
    let mut checked = 0;
    for seed in 0..60 {
        let g = random_digraph(&RandomSpec::new(4 + seed as usize % 5, 0.25), 600 + seed);
        let costs = random_costs(g.node_count(), 1, 3, seed);
        let Ok(sol) = st_node_double_cut_2approx(&g, 0, 1, &costs) else { continue };
        let opt = oracle::st_node_double_cut(&g, 0, 1, &costs, &budget()).unwrap().value as f64;
        let lp = sol.lp_value.unwrap();
        assert!(lp <= opt + 1e-6 && opt <= sol.cost as f64 && sol.cost as f64 <= 2.0 * lp + 1e-6, "seed {seed}");
        assert!(sol.certify(&g));
        checked += 1;
    }
    assert!(checked > 20);
}

#[test]
fn multiway_and_kcut() {
    for seed in 0..30 {
        let g = random_connected_graph(&RandomSpec::new(5 + seed as usize % 3, 0.3), 700 + seed);
        let n = g.node_count();
        let costs = random_costs(n, 1, 3, seed);
        if let Ok(sol) = node_multiway_cut_approx(&g, &[0, 1, 2], &costs) {
            let opt = oracle::node_multiway(&g, &[0, 1, 2], &costs, &budget()).unwrap().value;
            assert!(opt <= sol.cost && sol.cost as f64 <= 2.0 * sol.lp_value + 1e-6);
        }
        if let Ok(sol) = node_3cut_approx(&g, &costs) {
            let opt = oracle::node_3cut(&g, &costs, &budget()).unwrap().value;
            assert!(opt <= sol.cost);
        }
        for k in [3, 4] {
            let p = st_sep_kcut(&g, 0, 1, k, SepKCutOptions::default()).unwrap();
            assert_eq!(p.gamma, oracle::st_sep_kcut(&g, 0, 1, k, &budget()).unwrap().value, "seed {seed} k {k}");
        }
    }
}

#[test]
fn sep_kcut_through_random_contraction() {
    let opts = SepKCutOptions { method: EnumMethod::Randomized, ..SepKCutOptions::default() };
    for seed in 0..20 {
        let g = random_connected_graph(&RandomSpec::new(6 + seed as usize % 3, 0.35), 800 + seed);
        for k in [3, 4] {
            let p = st_sep_kcut(&g, 0, 1, k, opts).unwrap();
            assert_eq!(p.gamma, oracle::st_sep_kcut(&g, 0, 1, k, &budget()).unwrap().value, "seed {seed} k {k}");
        }
    }
}
