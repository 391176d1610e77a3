use structmark::law::{builtin_law, LawParams};
use structmark::mcmc::{exact_distribution, run_chain, run_chains, tv_distance};
use structmark::SubsetVector;

#[test]
fn uniform_chain_on_three_vertices_visits_all_graphs_evenly() {
    let report = run_chain(&SubsetVector::zeros(3), 3, 100_000, 1_000, 7).unwrap();
    let freq = report.frequencies();
    assert_eq!(freq.len(), 8);
    for (edges, p) in freq {
        assert!((p - 0.125).abs() < 0.02, "{edges:?}: {p}");
    }
}

#[test]
fn same_seed_same_report() {
    let omega = SubsetVector::from_entries(4, [(structmark::VertexSet::pair(0, 1), 0.7)]);
    let a = run_chains(&omega, 4, 5_000, 100, 11, 3).unwrap();
    let b = run_chains(&omega, 4, 5_000, 100, 11, 3).unwrap();
    assert_eq!(a, b);
    let c = run_chains(&omega, 4, 5_000, 100, 12, 3).unwrap();
    assert_ne!(a.visits, c.visits);
}

#[test]
fn merged_chains_pool_their_counts() {
    let omega = SubsetVector::zeros(4);
    let one = run_chain(&omega, 4, 2_000, 50, 5).unwrap();
    assert_eq!(run_chains(&omega, 4, 2_000, 50, 5, 1).unwrap(), one);
    let four = run_chains(&omega, 4, 2_000, 50, 5, 4).unwrap();
    assert_eq!(four.steps, 4 * 1_950);
    assert_eq!(four.visits.values().sum::<u64>(), four.steps);
    let edge_total: u64 = four.edge_counts.iter().map(|(_, k)| k).sum();
    let from_visits: u64 = four.visits.iter().map(|(e, k)| e.len() as u64 * k).sum();
    assert_eq!(edge_total, from_visits);
}

#[test]
fn per_edge_law_matches_conditioned_bernoulli() {
    let params = LawParams {
        psi: Some(0.4),
        edge_psi: vec![(0, 1, 0.9), (2, 3, 0.1)],
        ..LawParams::default()
    };
    let n = 4;
    let law = builtin_law("per-edge-bernoulli", &params, n).unwrap();
    let omega = law.omega().unwrap().clone();
    let exact = exact_distribution(&omega, n).unwrap();
    let psi = |e: (usize, usize)| match e {
        (0, 1) => 0.9,
        (2, 3) => 0.1,
        _ => 0.4,
    };
    let weight = |g: &structmark::UGraph| -> f64 {
        structmark::UGraph::vertex_pairs(g.vertices())
            .into_iter()
            .map(|e| {
                if g.has_edge(e.0, e.1) {
                    psi(e)
                } else {
                    1.0 - psi(e)
                }
            })
            .product()
    };
    let z: f64 = exact.iter().map(|(g, _)| weight(g)).sum();
    for (g, p) in &exact {
        assert!((p - weight(g) / z).abs() < 1e-12, "{g:?}");
    }
    let report = run_chain(&omega, n, 200_000, 2_000, 3).unwrap();
    assert!(tv_distance(&report, &exact) < 0.02);
}
