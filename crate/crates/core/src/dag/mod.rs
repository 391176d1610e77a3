//! Directed acyclic graphs, Markov equivalence, d-clique vectors, standard
//! imsets, ancestral insertion and dagoids.

mod dagoid;
mod digraph;

use std::collections::BTreeSet;

pub use dagoid::{Dagoid, FROM_PARTS_CAP, MEMBERS_CAP};
pub use digraph::{Dag, Immorality};

use crate::clique::superset_sum;
use crate::error::{check_cap, Error, Result};
use crate::graph::UGraph;
use crate::subset_vector::SubsetVector;
use crate::vertex_set::VertexSet;

/// Largest `n` for which every DAG is enumerated.
pub const DAG_ENUMERATION_CAP: usize = 5;

pub fn skeleton_and_immoralities(d: &Dag) -> (UGraph, BTreeSet<Immorality>) {
    (d.skeleton(), d.immoralities())
}

/// Markov equivalence by skeleton and immoralities, checked against equality
/// of d-clique vectors.
pub fn markov_equivalent(d: &Dag, e: &Dag) -> Result<bool> {
    if d.n() != e.n() {
        return Err(Error::InvalidInput(
            "DAGs over different vertex counts".into(),
        ));
    }
    let structural = skeleton_and_immoralities(d) == skeleton_and_immoralities(e);
    let algebraic = d.vertices() == e.vertices() && d_clique_vector(d) == d_clique_vector(e);
    if structural != algebraic {
        return Err(Error::CriteriaDisagree {
            structural,
            algebraic,
        });
    }
    Ok(structural)
}

/// `t(D) = Σ_v [δ({v} ∪ pa(v)) - δ(pa(v))] + δ(∅)`.
pub fn d_clique_vector(d: &Dag) -> SubsetVector<i64> {
    let mut t = SubsetVector::delta(d.n(), VertexSet::EMPTY);
    for v in d.vertices() {
        let pa = d.parents(v);
        t.add_at(pa.with(v), 1);
        t.add_at(pa, -1);
    }
    t
}

/// `c_A = Σ_{B ⊇ A} t_B`, a 0/1 vector.
///
/// Each entry is checked against the direct predicate: `c_A = 1` iff
/// `A ∖ {a} ⊆ pa(a)` where `a` is the last element of `A` in a topological order.
pub fn d_completeness_vector(d: &Dag) -> Result<SubsetVector<i64>> {
    check_cap(
        "d-completeness vector",
        d.n(),
        crate::subset_vector::DENSE_CAP,
    )?;
    let c = superset_sum(&d_clique_vector(d), d.n())?;
    let order = d.topological_order().ok_or(Error::CyclicInput)?;
    let mut rank = vec![0; d.n()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    for a in d.vertices().subsets() {
        let expect = match a.iter().max_by_key(|&v| rank[v]) {
            None => 1,
            Some(top) => i64::from(a.without(top).is_subset(d.parents(top))),
        };
        if c.get(a) != expect {
            return Err(Error::NumericalFailure(format!(
                "d-completeness entry at {a} is {}, predicate gives {expect}",
                c.get(a)
            )));
        }
    }
    Ok(c)
}

/// `u = δ(V) - t(D)`.
pub fn standard_imset(d: &Dag) -> SubsetVector<i64> {
    let u = &SubsetVector::delta(d.n(), d.vertices()) - &d_clique_vector(d);
    debug_assert_eq!(u, standard_imset_explicit(d));
    u
}

/// `u = δ(V) - δ(∅) + Σ_v [δ(pa(v)) - δ({v} ∪ pa(v))]`.
pub fn standard_imset_explicit(d: &Dag) -> SubsetVector<i64> {
    let mut u = SubsetVector::from_entries(d.n(), [(d.vertices(), 1), (VertexSet::EMPTY, -1)]);
    for v in d.vertices() {
        let pa = d.parents(v);
        u.add_at(pa, 1);
        u.add_at(pa.with(v), -1);
    }
    u
}

/// `H ⋉ D`: edges of `H` inside `A = V(H)`, edges of `D` with a head outside `A`.
pub fn ancestral_insert(h: &Dag, d: &Dag) -> Result<Dag> {
    let a = h.vertices();
    if h.n() != d.n() || !a.is_subset(d.vertices()) {
        return Err(Error::InvalidInput(
            "inserted graph must live on a subset of the host's vertices".into(),
        ));
    }
    if !d.is_ancestral(a) {
        return Err(Error::NotAncestral(a));
    }
    let parents = (0..d.n())
        .map(|v| {
            if a.contains(v) {
                h.parents(v)
            } else {
                d.parents(v)
            }
        })
        .collect();
    let out = Dag::from_parents(d.n(), d.vertices(), parents)?;
    debug_assert!(out.is_ancestral(a));
    Ok(out)
}

/// Graph on `{v} ∪ pr(v)`: `D`'s edges into `v` plus every edge among the
/// predecessors, oriented by the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedRemainder {
    pub v: usize,
    pub graph: Dag,
}

impl OrderedRemainder {
    /// Predecessors of `v` in the order.
    pub fn predecessors(&self) -> VertexSet {
        self.graph.vertices().without(self.v)
    }

    /// Parents of `v`, which the remainder determines.
    pub fn parents(&self) -> VertexSet {
        self.graph.parents(self.v)
    }
}

pub fn ordered_remainder_graph(d: &Dag, order: &[usize], v: usize) -> Result<OrderedRemainder> {
    if !d.is_compatible_order(order) {
        return Err(Error::IncompatibleOrder);
    }
    let pos = order
        .iter()
        .position(|&w| w == v)
        .ok_or_else(|| Error::InvalidInput(format!("vertex {v} not in the order")))?;
    let pred = &order[..pos];
    let mut graph = Dag::complete_with_order(d.n(), pred)
        .induced(VertexSet::from_vertices(pred.iter().copied()).with(v));
    graph.parents_mut()[v] = d.parents(v);
    let out = OrderedRemainder { v, graph };
    debug_assert_eq!(out.parents(), d.parents(v));
    Ok(out)
}

/// Rebuild `D` from its ordered remainder graphs.
pub fn from_ordered_remainders(
    n: usize,
    vertices: VertexSet,
    parts: &[OrderedRemainder],
) -> Result<Dag> {
    let mut parents = vec![VertexSet::EMPTY; n];
    for r in parts {
        parents[r.v] = r.parents();
    }
    Dag::from_parents(n, vertices, parents)
}

/// `⟨A, B | C⟩` holds: `C` separates `A` from `B` in the moral graph of the
/// subgraph induced by the ancestral closure of `A ∪ B ∪ C`.
pub fn d_separated(d: &Dag, a: VertexSet, b: VertexSet, c: VertexSet) -> bool {
    let an = d.ancestral_closure(a.union(b).union(c));
    d.induced(an).moral_graph().separates(a, b, c)
}

/// Every DAG on `{0, .., n-1}`, each exactly once, ordered by orientation code.
pub fn enumerate_dags(n: usize) -> Result<Vec<Dag>> {
    check_cap("DAG enumeration", n, DAG_ENUMERATION_CAP)?;
    let pairs = UGraph::vertex_pairs(VertexSet::full(n));
    let total = 3usize.pow(pairs.len() as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut parents = vec![VertexSet::EMPTY; n];
        for &(u, v) in &pairs {
            match code % 3 {
                1 => parents[v].insert(u),
                2 => parents[u].insert(v),
                _ => {}
            }
            code /= 3;
        }
        if let Ok(d) = Dag::from_parents(n, VertexSet::full(n), parents) {
            out.push(d);
        }
    }
    Ok(out)
}

/// DAGs whose skeleton has no immoralities, i.e. whose parent sets are complete.
pub fn is_perfect(d: &Dag) -> bool {
    d.immoralities().is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, e: &[(usize, usize)]) -> Dag {
        Dag::from_edges(n, e.iter().copied()).unwrap()
    }

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    fn tv(n: usize, e: &[(&[usize], i64)]) -> SubsetVector<i64> {
        SubsetVector::from_entries(n, e.iter().map(|&(s, x)| (vs(s), x)))
    }

    #[test]
    fn d_clique_vector_examples() {
        let fork = d(3, &[(0, 1), (0, 2)]);
        assert_eq!(
            d_clique_vector(&fork),
            tv(3, &[(&[0, 1], 1), (&[0, 2], 1), (&[0], -1)])
        );
        let vee = d(3, &[(0, 2), (1, 2)]);
        assert_eq!(
            d_clique_vector(&vee),
            tv(
                3,
                &[
                    (&[0, 1, 2], 1),
                    (&[0, 1], -1),
                    (&[0], 1),
                    (&[1], 1),
                    (&[], -1)
                ]
            )
        );
        assert_eq!(
            d_clique_vector(&Dag::empty(4)),
            tv(4, &[(&[0], 1), (&[1], 1), (&[2], 1), (&[3], 1), (&[], -3)])
        );
    }

    #[test]
    fn completeness_and_imsets() {
        let complete = Dag::complete_on(3, VertexSet::full(3));
        let c = d_completeness_vector(&complete).unwrap();
        assert_eq!(c.support_len(), 8);
        assert!(standard_imset(&complete).is_zero());
        let vee = d(3, &[(0, 2), (1, 2)]);
        let c = d_completeness_vector(&vee).unwrap();
        assert_eq!(c.get(vs(&[0, 1, 2])), 1);
        assert_eq!(c.get(vs(&[0, 1])), 0);
        assert_eq!(standard_imset(&vee), standard_imset_explicit(&vee));
    }

    #[test]
    fn equivalence_examples() {
        let chain = d(3, &[(0, 1), (1, 2)]);
        let back = d(3, &[(1, 0), (2, 1)]);
        let fork = d(3, &[(1, 0), (1, 2)]);
        let vee = d(3, &[(0, 1), (2, 1)]);
        assert!(markov_equivalent(&chain, &back).unwrap());
        assert!(markov_equivalent(&back, &fork).unwrap());
        assert!(!markov_equivalent(&chain, &vee).unwrap());
    }

    #[test]
    fn dag_counts() {
        assert_eq!(enumerate_dags(2).unwrap().len(), 3);
        assert_eq!(enumerate_dags(3).unwrap().len(), 25);
        assert_eq!(enumerate_dags(4).unwrap().len(), 543);
        assert!(enumerate_dags(6).is_err());
    }

    #[test]
    fn insertion_examples() {
        let h = d(3, &[(1, 0)]).induced(vs(&[0, 1]));
        let host = d(3, &[(0, 1), (1, 2)]);
        assert_eq!(
            ancestral_insert(&h, &host).unwrap(),
            d(3, &[(1, 0), (1, 2)])
        );
        let own = host.induced(vs(&[0, 1]));
        assert_eq!(ancestral_insert(&own, &host).unwrap(), host);
        let bad = host.induced(vs(&[1, 2]));
        assert_eq!(
            ancestral_insert(&bad, &host),
            Err(Error::NotAncestral(vs(&[1, 2])))
        );
    }

    #[test]
    fn ordered_remainder_examples() {
        let vee = d(3, &[(0, 2), (1, 2)]);
        let r = ordered_remainder_graph(&vee, &[0, 1, 2], 2).unwrap();
        assert_eq!(r.graph, Dag::complete_on(3, VertexSet::full(3)));
        let first = ordered_remainder_graph(&vee, &[0, 1, 2], 0).unwrap();
        assert_eq!(first.graph.vertices(), vs(&[0]));
        assert_eq!(first.graph.edge_count(), 0);
        assert_eq!(
            ordered_remainder_graph(&vee, &[2, 0, 1], 2),
            Err(Error::IncompatibleOrder)
        );
    }

    #[test]
    fn d_separation_examples() {
        let chain = d(3, &[(0, 1), (1, 2)]);
        assert!(d_separated(&chain, vs(&[0]), vs(&[2]), vs(&[1])));
        let vee = d(3, &[(0, 2), (1, 2)]);
        assert!(d_separated(&vee, vs(&[0]), vs(&[1]), VertexSet::EMPTY));
        assert!(!d_separated(&vee, vs(&[0]), vs(&[1]), vs(&[2])));
    }
}
