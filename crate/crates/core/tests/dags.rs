use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use structmark::clique::clique_vector;
use structmark::dag::{
    ancestral_insert, d_clique_vector, d_completeness_vector, enumerate_dags,
    from_ordered_remainders, is_perfect, markov_equivalent, ordered_remainder_graph,
    standard_imset, standard_imset_explicit,
};
use structmark::dagoid_law::{
    check_dagoid_structural_markov, check_ordered_independence, dagoid_product, enumerate_dagoids,
    recover_dagoid_omega, DagoidLaw, OrderedLaw,
};
use structmark::{Dag, Dagoid, SubsetVector, VertexSet};

#[test]
fn perfect_dags_share_the_skeleton_clique_vector() {
    let mut perfect = 0;
    for n in 1..=5 {
        for d in enumerate_dags(n).unwrap() {
            if is_perfect(&d) {
                perfect += 1;
                assert_eq!(d_clique_vector(&d), clique_vector(&d.skeleton()).unwrap());
            }
        }
    }
    assert!(perfect > 0);
}

#[test]
fn vector_forms_of_a_dag_agree() {
    for n in 1..=4 {
        for d in enumerate_dags(n).unwrap() {
            assert_eq!(standard_imset(&d), standard_imset_explicit(&d));
            // the completeness vector verifies itself against its predicate
            let c = d_completeness_vector(&d).unwrap();
            assert!(c.iter().all(|(_, x)| x == 0 || x == 1));
            let t = d_clique_vector(&d);
            assert_eq!(t.iter().map(|(_, x)| x).sum::<i64>(), 1);
            for v in 0..n {
                let s: i64 = t
                    .iter()
                    .filter(|(a, _)| a.contains(v))
                    .map(|(_, x)| x)
                    .sum();
                assert_eq!(s, 1);
            }
        }
    }
}

#[test]
fn class_sizes_sum_to_dag_counts() {
    for (n, dags) in [(1, 1), (2, 3), (3, 25), (4, 543)] {
        let total: usize = enumerate_dagoids(n)
            .unwrap()
            .iter()
            .map(|c| c.members.len())
            .sum();
        assert_eq!(total, dags);
    }
}

#[test]
fn inserting_equivalent_graphs_gives_equivalent_results() {
    let n = 3;
    let dags = enumerate_dags(n).unwrap();
    let mut checked = 0;
    for a in VertexSet::full(n).subsets() {
        let inner: Vec<Dag> = dags.iter().map(|d| d.induced(a)).collect();
        for d in dags.iter().filter(|d| d.is_ancestral(a)) {
            for h in &inner {
                for h2 in &inner {
                    if markov_equivalent(h, h2).unwrap() {
                        let x = ancestral_insert(h, d).unwrap();
                        let y = ancestral_insert(h2, d).unwrap();
                        assert!(markov_equivalent(&x, &y).unwrap());
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn induced_and_remainder_parts_vary_independently() {
    let n = 3;
    let classes: Vec<Dagoid> = enumerate_dagoids(n)
        .unwrap()
        .into_iter()
        .map(|c| c.dagoid)
        .collect();
    for a in VertexSet::full(n).subsets() {
        let with_a: Vec<&Dagoid> = classes
            .iter()
            .filter(|d| d.is_ancestral(a).unwrap())
            .collect();
        for d in &with_a {
            for d2 in &with_a {
                let p = dagoid_product(d, d2, a).unwrap();
                assert_eq!(p.induced(a).unwrap(), d.induced(a).unwrap());
                assert_eq!(p.remainder(a).unwrap(), d2.remainder(a).unwrap());
            }
        }
    }
}

#[test]
fn ordered_remainders_rebuild_the_dag() {
    for n in 1..=4 {
        for d in enumerate_dags(n).unwrap() {
            let order = d.topological_order().unwrap();
            let parts: Vec<_> = order
                .iter()
                .map(|&v| ordered_remainder_graph(&d, &order, v).unwrap())
                .collect();
            assert_eq!(from_ordered_remainders(n, d.vertices(), &parts).unwrap(), d);
        }
    }
}

#[test]
fn edge_log_odds_law_has_independent_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let n = 4;
    let odds: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.random_range(-2.0..2.0)).collect())
        .collect();
    let order = vec![2, 0, 3, 1];
    let law = OrderedLaw::from_edge_log_odds(n, order.clone(), &odds).unwrap();
    assert!(check_ordered_independence(&law).unwrap().is_none());
    let softplus = |x: f64| x.exp().ln_1p();
    for d in law.ordered_dags().unwrap() {
        let mut expected = 0.0;
        for (i, &u) in order.iter().enumerate() {
            for &v in &order[i + 1..] {
                let w = odds[u][v];
                expected += if d.has_edge(u, v) { w } else { 0.0 } - softplus(w);
            }
        }
        assert!((law.log_density(&d).unwrap() - expected).abs() < 1e-12);
    }
}

#[test]
fn random_ordered_laws_factorise() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for n in 1..=4 {
        let order: Vec<usize> = (0..n).rev().collect();
        let mut weights = vec![SubsetVector::zeros(n); n];
        let mut pred = VertexSet::EMPTY;
        for &v in &order {
            weights[v] = SubsetVector::from_entries(
                n,
                pred.subsets().map(|s| (s, rng.random_range(-1.0..1.0))),
            );
            pred.insert(v);
        }
        let law = OrderedLaw::new(n, order, weights).unwrap();
        assert!(check_ordered_independence(&law).unwrap().is_none());
    }
}

#[test]
fn dagoid_parameter_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for n in 2..=3 {
        let omega = SubsetVector::from_entries(
            n,
            VertexSet::full(n)
                .subsets()
                .map(|a| (a, rng.random_range(-1.0..1.0))),
        );
        let law = DagoidLaw::exponential(n, omega.clone()).to_table().unwrap();
        assert!(check_dagoid_structural_markov(&law).unwrap().is_none());
        let back = recover_dagoid_omega(&law).unwrap();
        for c in enumerate_dagoids(n).unwrap() {
            let t = c.dagoid.tvec();
            let gap = (back.dot(t) - law.log_prob(&c.dagoid).unwrap()).abs();
            assert!(gap < 1e-9, "{gap}");
        }
    }
}

#[test]
fn edge_count_law_from_pair_counts() {
    let rho: f64 = 0.4;
    for n in 2..=4 {
        let omega = SubsetVector::from_entries(
            n,
            VertexSet::full(n).subsets().map(|a| {
                let k = a.len() as f64;
                (a, k * (k - 1.0) / 2.0 * rho.ln())
            }),
        );
        let law = DagoidLaw::exponential(n, omega);
        let classes = enumerate_dagoids(n).unwrap();
        let z: f64 = classes
            .iter()
            .map(|c| rho.powi(c.dagoid.edge_count() as i32))
            .sum();
        for c in &classes {
            let p = law.log_prob(&c.dagoid).unwrap().exp();
            assert!((p - rho.powi(c.dagoid.edge_count() as i32) / z).abs() < 1e-14);
        }
    }
}
