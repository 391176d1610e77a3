//! Exhaustive enumeration of decomposable graphs and single-edge moves.

use crate::error::{check_cap, Result};
use crate::graph::{is_chordal, UGraph};
use crate::vertex_set::VertexSet;

/// Largest vertex count accepted by the enumeration routines.
pub const ENUMERATION_CAP: usize = 7;

/// All decomposable graphs on `{0, .., n-1}` in ascending edge-mask order.
pub fn enumerate_decomposable(n: usize) -> Result<impl Iterator<Item = UGraph>> {
    check_cap("decomposable graph enumeration", n, ENUMERATION_CAP)?;
    Ok(enumerate_decomposable_on(n, VertexSet::full(n)))
}

/// Decomposable graphs whose vertex set is `vertices`; callers keep `|vertices|` small.
pub fn enumerate_decomposable_on(n: usize, vertices: VertexSet) -> impl Iterator<Item = UGraph> {
    enumerate_all_on(n, vertices).filter(is_chordal)
}

/// Every simple graph on `vertices`, decomposable or not, in edge-mask order.
pub fn enumerate_all_on(n: usize, vertices: VertexSet) -> impl Iterator<Item = UGraph> {
    let pairs = UGraph::vertex_pairs(vertices);
    assert!(pairs.len() < 128, "too many vertex pairs to enumerate");
    let total = 1u128 << pairs.len();
    (0..total).map(move |mask| UGraph::from_edge_mask(n, vertices, &pairs, mask))
}

/// Graphs one edge toggle away from `g` that stay decomposable, with the toggled edge.
///
/// Each candidate gets a full chordality recheck.
pub fn decomposable_neighbors(g: &UGraph) -> Vec<((usize, usize), UGraph)> {
    UGraph::vertex_pairs(g.vertices())
        .into_iter()
        .filter_map(|(u, v)| {
            let h = g.toggled(u, v);
            is_chordal(&h).then_some(((u, v), h))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (0..=3)
            .map(|n| enumerate_decomposable(n).unwrap().count())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 8]);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(enumerate_decomposable(8).is_err());
    }

    #[test]
    fn neighbors_of_empty_and_complete() {
        let e = decomposable_neighbors(&UGraph::empty(3));
        assert_eq!(e.len(), 3);
        assert!(e.iter().all(|(_, h)| h.edge_count() == 1));
        let k = decomposable_neighbors(&UGraph::complete(3));
        assert_eq!(k.len(), 3);
        assert!(k.iter().all(|(_, h)| h.edge_count() == 2));
    }

    #[test]
    fn chordless_square_never_appears() {
        let path = UGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(decomposable_neighbors(&path)
            .iter()
            .all(|(e, _)| *e != (0, 3)));
    }
}
