use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use structmark::dag::{enumerate_dags, is_perfect};
use structmark::gaussian::{
    graph_log_marginal, map_graph, posterior_omega, CliqueMarginalTable, DataMatrix, GaussHyper,
};
use structmark::graph::{covering_pairs, enumerate_decomposable, is_decomposition};
use structmark::{Dagoid, SubsetVector, UGraph, VertexSet};

/// Rows of a Gaussian chain `x_0 → x_1 → ..` with coefficient `rho`, whose
/// concentration graph is the path `0 - 1 - .. - (n-1)`.
fn chain_data(rng: &mut ChaCha8Rng, n: usize, rows: usize, rho: f64) -> DataMatrix {
    let data: Vec<Vec<f64>> = (0..rows)
        .map(|_| {
            let mut row = Vec::with_capacity(n);
            let mut prev = 0.0;
            for _ in 0..n {
                let z: f64 = StandardNormal.sample(rng);
                prev = rho * prev + z;
                row.push(prev);
            }
            row
        })
        .collect();
    DataMatrix::from_rows(n, &data).unwrap()
}

#[test]
fn perfect_dag_and_skeleton_have_equal_marginals() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for n in 2..=4 {
        let x = chain_data(&mut rng, n, 30, 0.5);
        let table = CliqueMarginalTable::new(&GaussHyper::identity(n, 3.0).unwrap(), &x).unwrap();
        for d in enumerate_dags(n).unwrap().iter().filter(|d| is_perfect(d)) {
            let by_dag = table.dagoid_log_marginal(&Dagoid::of(d));
            let by_graph = table.graph_log_marginal(&d.skeleton()).unwrap();
            assert!((by_dag - by_graph).abs() < 1e-9 * by_graph.abs().max(1.0));
        }
    }
}

#[test]
fn log_marginal_splits_over_decompositions() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let n = 4;
    let x = chain_data(&mut rng, n, 25, 0.7);
    let h = GaussHyper::identity(n, 3.0).unwrap();
    let table = CliqueMarginalTable::new(&h, &x).unwrap();
    for g in enumerate_decomposable(n).unwrap() {
        let whole = graph_log_marginal(&h, &x, &g).unwrap();
        for (a, b) in covering_pairs(VertexSet::full(n)) {
            if !is_decomposition(&g, a, b) {
                continue;
            }
            let s = a.intersection(b);
            let split = table.graph_log_marginal(&g.induced(a)).unwrap()
                + table.graph_log_marginal(&g.induced(b)).unwrap()
                - table.get(s);
            assert!((whole - split).abs() < 1e-9 * whole.abs().max(1.0));
        }
    }
}

#[test]
fn no_data_leaves_the_parameter_unchanged() {
    let n = 3;
    let omega = SubsetVector::from_entries(
        n,
        VertexSet::full(n)
            .subsets()
            .map(|a| (a, 0.1 * a.len() as f64 - 0.2)),
    );
    let h = GaussHyper::identity(n, 3.0).unwrap();
    let post = posterior_omega(&omega, &h, &DataMatrix::empty(n)).unwrap();
    assert!(post.max_abs_diff(&omega) < 1e-12);
}

#[test]
fn map_recovers_a_chain() {
    let n = 4;
    let path = UGraph::from_edges(n, [(0, 1), (1, 2), (2, 3)]).unwrap();
    let h = GaussHyper::identity(n, 3.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let hits = (0..50)
        .filter(|_| {
            let x = chain_data(&mut rng, n, 200, 0.6);
            let post = posterior_omega(&SubsetVector::zeros(n), &h, &x).unwrap();
            map_graph(&post, n).unwrap() == path
        })
        .count();
    assert!(hits >= 45, "{hits} of 50");
}
