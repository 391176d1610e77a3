//! Completeness and clique vectors of undirected graphs, Möbius transforms on
//! the subset lattice, and the sparse change of `t` under one edge toggle.

use crate::error::{check_cap, Error, Result};
use crate::graph::{is_chordal, junction_tree, UGraph};
use crate::subset_vector::{Scalar, SubsetVector, DENSE_CAP};
use crate::vertex_set::VertexSet;

/// `c_A = 1` for every `A` inducing a complete subgraph, including `∅` and singletons.
pub fn completeness_vector(g: &UGraph) -> SubsetVector<i64> {
    fn extend(g: &UGraph, set: VertexSet, candidates: VertexSet, out: &mut SubsetVector<i64>) {
        out.set(set, 1);
        for v in candidates {
            let next = candidates
                .intersection(g.neighbors(v))
                .iter()
                .filter(|&w| w > v)
                .collect();
            extend(g, set.with(v), next, out);
        }
    }
    let mut out = SubsetVector::zeros(g.n());
    extend(g, VertexSet::EMPTY, g.vertices(), &mut out);
    out
}

/// Clique vector: `+1` on cliques, `-ν(S)` on separators of multiplicity `ν`.
///
/// Debug builds recompute it as the superset Möbius inverse of the
/// completeness vector and check that both agree.
pub fn clique_vector(g: &UGraph) -> Result<SubsetVector<i64>> {
    let jt = junction_tree(g)?;
    let mut t = SubsetVector::zeros(g.n());
    for &c in &jt.cliques {
        t.add_at(c, 1);
    }
    for &(s, nu) in &jt.separators {
        t.add_at(s, -(nu as i64));
    }
    #[cfg(debug_assertions)]
    if g.n() <= 10 {
        debug_assert_eq!(
            t,
            clique_vector_by_mobius(g)?,
            "clique vector routes disagree"
        );
    }
    Ok(t)
}

/// `t_B = Σ_{A ⊇ B} (-1)^{|A∖B|} c_A` evaluated densely.
pub fn clique_vector_by_mobius(g: &UGraph) -> Result<SubsetVector<i64>> {
    mobius_superset_inverse(&completeness_vector(g), g.n())
}

fn dense_superset_inverse<T: Scalar>(xs: &mut [T]) {
    let mut bit = 1;
    while bit < xs.len() {
        for mask in 0..xs.len() {
            if mask & bit == 0 {
                let hi = xs[mask | bit];
                xs[mask] -= hi;
            }
        }
        bit <<= 1;
    }
}

fn dense_superset_sum<T: Scalar>(xs: &mut [T]) {
    let mut bit = 1;
    while bit < xs.len() {
        for mask in 0..xs.len() {
            if mask & bit == 0 {
                let hi = xs[mask | bit];
                xs[mask] += hi;
            }
        }
        bit <<= 1;
    }
}

fn dense_lattice<T: Scalar>(v: &SubsetVector<T>, n: usize) -> Result<Vec<T>> {
    check_cap("Möbius transform", n, DENSE_CAP)?;
    if v.n() != n {
        return Err(Error::InvalidInput(format!(
            "vector over {} vertices used as a lattice over {n}",
            v.n()
        )));
    }
    v.to_dense()
}

/// Möbius inverse by superset inclusion, `out_B = Σ_{A ⊇ B} (-1)^{|A∖B|} v_A`.
pub fn mobius_superset_inverse<T: Scalar>(
    v: &SubsetVector<T>,
    n: usize,
) -> Result<SubsetVector<T>> {
    let mut xs = dense_lattice(v, n)?;
    dense_superset_inverse(&mut xs);
    Ok(SubsetVector::from_dense(n, &xs))
}

/// Forward superset sum `out_A = Σ_{B ⊇ A} v_B`, the inverse of [`mobius_superset_inverse`].
pub fn superset_sum<T: Scalar>(v: &SubsetVector<T>, n: usize) -> Result<SubsetVector<T>> {
    let mut xs = dense_lattice(v, n)?;
    dense_superset_sum(&mut xs);
    Ok(SubsetVector::from_dense(n, &xs))
}

/// `t(G') - t(G)` where `G'` toggles edge `{u, v}` of `G`.
///
/// With `S` the common neighbourhood of `u` and `v` (unchanged by the toggle),
/// adding the edge changes `t` by `δ(S∪{u,v}) - δ(S∪{u}) - δ(S∪{v}) + δ(S)`
/// and removing it by the negation, so at most four entries are nonzero.
pub fn delta_t(g: &UGraph, edge: (usize, usize)) -> Result<SubsetVector<i64>> {
    let (u, v) = edge;
    if u == v || !g.vertices().contains(u) || !g.vertices().contains(v) {
        return Err(Error::InvalidInput(format!(
            "({u}, {v}) is not a vertex pair"
        )));
    }
    let toggled = g.toggled(u, v);
    if !is_chordal(&toggled) {
        return Err(Error::NotDecomposableAfterToggle(u.min(v), u.max(v)));
    }
    debug_assert!(is_chordal(g), "delta_t needs a decomposable starting graph");
    let delta = sparse_delta(g, u, v);
    #[cfg(debug_assertions)]
    {
        let dense = &clique_vector(&toggled)? - &clique_vector(g)?;
        debug_assert_eq!(delta, dense, "sparse t-delta disagrees with recomputation");
    }
    Ok(delta)
}

/// The four-term delta without any validation.
pub(crate) fn sparse_delta(g: &UGraph, u: usize, v: usize) -> SubsetVector<i64> {
    let s = g.neighbors(u).intersection(g.neighbors(v));
    let sign = if g.has_edge(u, v) { -1 } else { 1 };
    SubsetVector::from_entries(
        g.n(),
        [
            (s.with(u).with(v), sign),
            (s.with(u), -sign),
            (s.with(v), -sign),
            (s, sign),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> UGraph {
        UGraph::from_edges(n, e.iter().copied()).unwrap()
    }

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    fn tv(n: usize, e: &[(&[usize], i64)]) -> SubsetVector<i64> {
        SubsetVector::from_entries(n, e.iter().map(|&(s, x)| (vs(s), x)))
    }

    #[test]
    fn completeness_of_path() {
        let c = completeness_vector(&g(3, &[(0, 1), (1, 2)]));
        let expect = tv(
            3,
            &[
                (&[], 1),
                (&[0], 1),
                (&[1], 1),
                (&[2], 1),
                (&[0, 1], 1),
                (&[1, 2], 1),
            ],
        );
        assert_eq!(c, expect);
    }

    #[test]
    fn completeness_of_complete_and_empty() {
        assert_eq!(completeness_vector(&UGraph::complete(4)).support_len(), 16);
        let c = completeness_vector(&UGraph::empty(3));
        assert_eq!(c, tv(3, &[(&[], 1), (&[0], 1), (&[1], 1), (&[2], 1)]));
    }

    #[test]
    fn clique_vector_examples() {
        let path = g(3, &[(0, 1), (1, 2)]);
        let expect = tv(3, &[(&[0, 1], 1), (&[1, 2], 1), (&[1], -1)]);
        assert_eq!(clique_vector(&path).unwrap(), expect);
        assert_eq!(
            clique_vector(&UGraph::complete(3)).unwrap(),
            tv(3, &[(&[0, 1, 2], 1)])
        );
        assert_eq!(
            clique_vector(&UGraph::empty(3)).unwrap(),
            tv(3, &[(&[0], 1), (&[1], 1), (&[2], 1), (&[], -2)])
        );
    }

    #[test]
    fn clique_vector_rejects_square() {
        let sq = g(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert_eq!(clique_vector(&sq), Err(Error::NotDecomposable));
    }

    #[test]
    fn mobius_of_top_delta_alternates_in_sign() {
        // δ(V) is the image of the all-ones vector, not a fixed point
        let top = SubsetVector::<i64>::delta(4, VertexSet::full(4));
        let inv = mobius_superset_inverse(&top, 4).unwrap();
        for b in VertexSet::full(4).subsets() {
            let sign = if (4 - b.len()) % 2 == 0 { 1 } else { -1 };
            assert_eq!(inv.get(b), sign);
        }
        let ones = SubsetVector::from_entries(4, VertexSet::full(4).subsets().map(|a| (a, 1i64)));
        assert_eq!(mobius_superset_inverse(&ones, 4).unwrap(), top);
        assert_eq!(superset_sum(&top, 4).unwrap(), ones);
    }

    #[test]
    fn mobius_of_path_completeness_is_clique_vector() {
        let path = g(3, &[(0, 1), (1, 2)]);
        let t = mobius_superset_inverse(&completeness_vector(&path), 3).unwrap();
        assert_eq!(t, clique_vector(&path).unwrap());
    }

    #[test]
    fn mobius_cap() {
        let v = SubsetVector::<i64>::zeros(17);
        assert!(matches!(
            mobius_superset_inverse(&v, 17),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn delta_examples() {
        let d = delta_t(&UGraph::empty(2), (0, 1)).unwrap();
        assert_eq!(d, tv(2, &[(&[0, 1], 1), (&[0], -1), (&[1], -1), (&[], 1)]));
        let d = delta_t(&g(3, &[(0, 1), (1, 2)]), (0, 2)).unwrap();
        assert_eq!(
            d,
            tv(
                3,
                &[(&[0, 1, 2], 1), (&[0, 1], -1), (&[1, 2], -1), (&[1], 1)]
            )
        );
    }

    #[test]
    fn delta_rejects_chordless_cycle() {
        let p = g(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(
            delta_t(&p, (0, 3)),
            Err(Error::NotDecomposableAfterToggle(0, 3))
        );
    }
}
