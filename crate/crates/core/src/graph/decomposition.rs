//! Decompositions, graph products and collapsibility.

use crate::error::{Error, Result};
use crate::graph::{is_chordal, UGraph};
use crate::vertex_set::VertexSet;

/// A covering pair `(A, B)` validated as a decomposition of a specific graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decomposition {
    pub a: VertexSet,
    pub b: VertexSet,
}

/// Outcome of testing a pair `(A, B)` against a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionVerdict {
    Decomposition,
    /// `A ∪ B` is not the vertex set of the graph.
    NotCovering,
    /// `G_{A∩B}` is not complete.
    IncompleteIntersection,
    /// Some path from `A∖B` to `B∖A` avoids `A∩B`.
    NotSeparated,
}

impl DecompositionVerdict {
    pub fn holds(self) -> bool {
        self == DecompositionVerdict::Decomposition
    }
}

pub fn check_decomposition(g: &UGraph, a: VertexSet, b: VertexSet) -> DecompositionVerdict {
    if a.union(b) != g.vertices() {
        return DecompositionVerdict::NotCovering;
    }
    let s = a.intersection(b);
    if !g.is_complete_on(s) {
        return DecompositionVerdict::IncompleteIntersection;
    }
    if !g.separates(a.difference(b), b.difference(a), s) {
        return DecompositionVerdict::NotSeparated;
    }
    DecompositionVerdict::Decomposition
}

pub fn is_decomposition(g: &UGraph, a: VertexSet, b: VertexSet) -> bool {
    check_decomposition(g, a, b).holds()
}

/// Validates `(a, b)` against `g` and records it.
pub fn decomposition(g: &UGraph, a: VertexSet, b: VertexSet) -> Option<Decomposition> {
    is_decomposition(g, a, b).then_some(Decomposition { a, b })
}

/// All covering pairs `(A, B)` of `vertices`, ordered by `(A, B)` masks.
pub fn covering_pairs(vertices: VertexSet) -> Vec<(VertexSet, VertexSet)> {
    let mut out = Vec::new();
    for a in vertices.subsets() {
        let rest = vertices.difference(a);
        for extra in a.subsets() {
            out.push((a, rest.union(extra)));
        }
    }
    out.sort();
    out
}

/// Graph product `H ⋈ J` of decomposable graphs on `A` and `B` whose
/// restrictions to `A ∩ B` are complete.
///
/// The result has edge set `E(H) ∪ E(J)` and is the unique decomposable graph
/// on `A ∪ B` with margins `H`, `J` for which `(A, B)` is a decomposition.
pub fn graph_product(h: &UGraph, j: &UGraph) -> Result<UGraph> {
    if h.n() != j.n() {
        return Err(Error::InvalidInput(format!(
            "graph product of graphs in universes of size {} and {}",
            h.n(),
            j.n()
        )));
    }
    let s = h.vertices().intersection(j.vertices());
    if !h.is_complete_on(s) || !j.is_complete_on(s) {
        return Err(Error::IncompatibleIntersection(s));
    }
    if !is_chordal(h) || !is_chordal(j) {
        return Err(Error::NotDecomposable);
    }
    Ok(product_of_margins(h, h.vertices(), j, j.vertices()))
}

/// `G_A ⋈ G'_B` without validation: edges of `g` inside `a` plus edges of
/// `g2` inside `b`.
pub fn product_of_margins(g: &UGraph, a: VertexSet, g2: &UGraph, b: VertexSet) -> UGraph {
    let mut out = UGraph::empty_on(g.n(), a.union(b));
    for u in a {
        for v in g.neighbors(u).intersection(a).iter().filter(|&v| v > u) {
            out.add_edge(u, v);
        }
    }
    for u in b {
        for v in g2.neighbors(u).intersection(b).iter().filter(|&v| v > u) {
            out.add_edge(u, v);
        }
    }
    out
}

/// Every connected component of `G_{V∖A}` has a complete boundary.
pub fn is_collapsible(g: &UGraph, a: VertexSet) -> bool {
    let rest = g.vertices().difference(a);
    g.components_within(rest).into_iter().all(|comp| {
        let boundary = comp
            .iter()
            .fold(VertexSet::EMPTY, |acc, v| acc.union(g.neighbors(v)))
            .difference(comp);
        g.is_complete_on(boundary)
    })
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

    #[test]
    fn decomposition_examples() {
        let path = g(3, &[(0, 1), (1, 2)]);
        assert!(is_decomposition(&path, vs(&[0, 1]), vs(&[1, 2])));
        let tri = UGraph::complete(3);
        assert_eq!(
            check_decomposition(&tri, vs(&[0, 1]), vs(&[1, 2])),
            DecompositionVerdict::NotSeparated
        );
        let edge = g(3, &[(0, 1)]);
        assert!(is_decomposition(&edge, vs(&[0, 1]), vs(&[1, 2])));
        assert_eq!(
            check_decomposition(&path, vs(&[0]), vs(&[1])),
            DecompositionVerdict::NotCovering
        );
        let square = g(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert_eq!(
            check_decomposition(&square, vs(&[0, 1, 3]), vs(&[1, 2, 3])),
            DecompositionVerdict::IncompleteIntersection
        );
    }

    #[test]
    fn covering_pair_count_is_three_to_the_n() {
        assert_eq!(covering_pairs(VertexSet::full(3)).len(), 27);
        assert_eq!(covering_pairs(VertexSet::EMPTY).len(), 1);
    }

    #[test]
    fn product_of_two_edges_is_path() {
        let h = g(3, &[(0, 1)]).induced(vs(&[0, 1]));
        let j = g(3, &[(1, 2)]).induced(vs(&[1, 2]));
        assert_eq!(graph_product(&h, &j).unwrap(), g(3, &[(0, 1), (1, 2)]));
    }

    #[test]
    fn product_is_idempotent_on_complete() {
        let k = UGraph::complete(3);
        assert_eq!(graph_product(&k, &k).unwrap(), k);
    }

    #[test]
    fn product_triangle_and_pendant() {
        let a = vs(&[0, 1, 2]);
        let b = vs(&[2, 3]);
        let h = UGraph::complete_on(4, a).induced(a);
        let j = g(4, &[(2, 3)]).induced(b);
        let prod = graph_product(&h, &j).unwrap();
        assert_eq!(prod.edges(), vec![(0, 1), (0, 2), (1, 2), (2, 3)]);
        assert!(is_chordal(&prod));
        assert!(is_decomposition(&prod, a, b));
        assert_eq!(prod.induced(a), h);
        assert_eq!(prod.induced(b), j);
    }

    #[test]
    fn product_rejects_incomplete_intersection() {
        let a = vs(&[0, 1, 2]);
        let b = vs(&[1, 2, 3]);
        let h = g(4, &[(0, 1)]).induced(a);
        let j = g(4, &[(1, 2), (2, 3)]).induced(b);
        assert_eq!(
            graph_product(&h, &j),
            Err(Error::IncompatibleIntersection(vs(&[1, 2])))
        );
    }

    #[test]
    fn collapsibility_examples() {
        let path = g(3, &[(0, 1), (1, 2)]);
        assert!(is_collapsible(&path, VertexSet::full(3)));
        assert!(!is_collapsible(&path, vs(&[0, 2])));
        assert!(is_collapsible(&path, vs(&[0, 1])));
    }
}
