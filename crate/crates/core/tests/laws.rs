use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use structmark::graph::{covering_pairs, enumerate_decomposable, enumerate_decomposable_on};
use structmark::law::{
    builtin_law, check_meta_markov, check_structural_markov, conditional_given_decomposition,
    margin, recover_omega, standardize_omega, LawParams,
};
use structmark::{GraphFamily, GraphLaw, SubsetVector, UGraph, VertexSet};

fn g(n: usize, e: &[(usize, usize)]) -> UGraph {
    UGraph::from_edges(n, e.iter().copied()).unwrap()
}

fn random_omega(rng: &mut ChaCha8Rng, n: usize) -> SubsetVector<f64> {
    SubsetVector::from_entries(
        n,
        VertexSet::full(n)
            .subsets()
            .map(|a| (a, rng.random_range(-1.0..1.0))),
    )
}

#[test]
fn recovered_parameter_matches_up_to_standardization() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 2..=4 {
        for _ in 0..5 {
            let omega = random_omega(&mut rng, n);
            let law = GraphLaw::exponential(n, omega.clone());
            let back = recover_omega(&law).unwrap();
            let (x, y) = (
                standardize_omega(&back, n).unwrap(),
                standardize_omega(&omega, n).unwrap(),
            );
            assert!(x.max_abs_diff(&y) < 1e-9, "{}", x.max_abs_diff(&y));
        }
    }
}

#[test]
fn perturbed_tables_fail_unless_still_exponential() {
    // Perturbing the weight of a graph that appears only in trivial
    // decompositions (the complete graph, say) keeps the law exponential; any
    // perturbation that passes the check must then admit a parameter.
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let n = 4;
    let base = GraphLaw::exponential(n, random_omega(&mut rng, n))
        .to_table()
        .unwrap();
    let entries = base.entries().unwrap();
    let mut failed = 0;
    for _ in 0..1000 {
        let k = rng.random_range(0..entries.len());
        let bump = rng.random_range(0.1..1.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let perturbed = GraphLaw::table(
            n,
            VertexSet::full(n),
            entries
                .iter()
                .enumerate()
                .map(|(i, (h, w))| (h.clone(), if i == k { w + bump } else { *w })),
        )
        .unwrap();
        match check_structural_markov(&perturbed).unwrap() {
            Some(w) => {
                assert!((w.lhs - w.rhs).abs() > 1e-6);
                failed += 1;
            }
            None => {
                assert!(entries[k].0.is_complete(), "{:?}", entries[k].0);
                recover_omega(&perturbed).unwrap();
            }
        }
    }
    assert!(failed > 900, "{failed}");
}

#[test]
fn conditional_margin_is_exponential_in_the_restricted_parameter() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let n = 4;
    let v = VertexSet::full(n);
    let omega = random_omega(&mut rng, n);
    let law = GraphLaw::exponential(n, omega.clone());
    for (a, b) in covering_pairs(v) {
        if a.is_subset(b) || b.is_subset(a) {
            continue;
        }
        let cond = conditional_given_decomposition(&law, a, b).unwrap();
        let m = margin(&cond, a).unwrap();
        let s = a.intersection(b);
        let members: Vec<UGraph> = enumerate_decomposable_on(n, a)
            .filter(|h| h.is_complete_on(s))
            .collect();
        let family = GraphFamily::new(n, a, members.clone()).unwrap();
        let expected = GraphLaw::exponential_on(n, a, omega.restricted_to(a))
            .restricted_to(family)
            .unwrap();
        for h in &members {
            let (x, y) = (m.log_prob(h).unwrap(), expected.log_prob(h).unwrap());
            assert!((x - y).abs() < 1e-9, "({a}, {b}) {h:?}: {x} vs {y}");
        }
    }
}

#[test]
fn restricted_exponential_law_on_meta_markov_family() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for n in 3..=4 {
        let forests = GraphFamily::forests(n).unwrap();
        assert!(check_meta_markov(&forests).unwrap().is_none());
        let law = GraphLaw::exponential(n, random_omega(&mut rng, n))
            .restricted_to(forests.clone())
            .unwrap();
        assert_eq!(law.support_graphs().unwrap().len(), forests.len());
        assert!(check_structural_markov(&law).unwrap().is_none());
    }
}

#[test]
fn empty_and_path_are_not_meta_markov() {
    let f = GraphFamily::new(3, VertexSet::full(3), [g(3, &[]), g(3, &[(0, 1), (1, 2)])]).unwrap();
    let w = check_meta_markov(&f).unwrap().expect("a witness");
    assert!(!f.contains(&w.product));
    assert_eq!(w.product.edge_count(), 1);
}

#[test]
fn forest_penalty_suppresses_triangles() {
    let triangle = g(3, &[(0, 1), (0, 2), (1, 2)]);
    let path = g(3, &[(0, 1), (1, 2)]);
    let mut last = f64::INFINITY;
    for kappa in [0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0] {
        let p = LawParams {
            rho: Some(0.3),
            kappa: Some(kappa),
            ..LawParams::default()
        };
        let law = builtin_law("forest-penalty", &p, 3).unwrap();
        let r = (law.log_prob(&triangle).unwrap() - law.log_prob(&path).unwrap()).exp();
        assert!((r - (0.3f64 - kappa).exp()).abs() < 1e-12);
        assert!(r < last);
        last = r;
    }
    assert!(last < 1e-13);
}

#[test]
fn edge_bernoulli_is_bernoulli_conditioned_on_decomposability() {
    let psi: f64 = 0.25;
    let p = LawParams {
        psi: Some(psi),
        ..LawParams::default()
    };
    let law = builtin_law("edge-bernoulli", &p, 3).unwrap();
    let ratio = (law.log_prob(&g(3, &[(0, 1), (0, 2), (1, 2)])).unwrap()
        - law.log_prob(&g(3, &[])).unwrap())
    .exp();
    assert!((ratio - 1.0 / 27.0).abs() < 1e-14);
    let n = 4;
    let law = builtin_law("edge-bernoulli", &p, n).unwrap();
    let graphs: Vec<UGraph> = enumerate_decomposable(n).unwrap().collect();
    let bern =
        |h: &UGraph| psi.powi(h.edge_count() as i32) * (1.0 - psi).powi(6 - h.edge_count() as i32);
    let z: f64 = graphs.iter().map(bern).sum();
    for h in &graphs {
        let x = law.log_prob(h).unwrap().exp();
        assert!((x - bern(h) / z).abs() < 1e-14);
    }
}
