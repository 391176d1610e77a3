//! Maximum cardinality search, chordality and junction trees.

use crate::error::{Error, Result};
use crate::graph::UGraph;
use crate::vertex_set::VertexSet;

/// Cliques in a perfect ordering together with the aggregated separators.
///
/// `separators` holds each distinct set `S_j = C_j ∩ (C_1 ∪ .. ∪ C_{j-1})`,
/// `j >= 2`, with its multiplicity. Disconnected graphs contribute the empty
/// separator with multiplicity `#components - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JunctionTree {
    pub cliques: Vec<VertexSet>,
    pub separators: Vec<(VertexSet, usize)>,
}

impl JunctionTree {
    /// Sorted clique list and separator multiset, independent of the ordering found.
    pub fn canonical(&self) -> (Vec<VertexSet>, Vec<(VertexSet, usize)>) {
        let mut c = self.cliques.clone();
        c.sort();
        let mut s = self.separators.clone();
        s.sort();
        (c, s)
    }
}

/// Visit order of maximum cardinality search; ties go to the lowest vertex index.
pub fn mcs_order(g: &UGraph) -> Vec<usize> {
    let identity: Vec<usize> = (0..g.n()).collect();
    mcs_order_with_priority(g, &identity)
}

/// Maximum cardinality search where ties go to the vertex with the lowest `rank[v]`.
pub fn mcs_order_with_priority(g: &UGraph, rank: &[usize]) -> Vec<usize> {
    let mut visited = VertexSet::EMPTY;
    let mut order = Vec::with_capacity(g.vertices().len());
    for _ in 0..g.vertices().len() {
        let v = g
            .vertices()
            .difference(visited)
            .iter()
            .max_by_key(|&v| {
                (
                    g.neighbors(v).intersection(visited).len(),
                    std::cmp::Reverse(rank[v]),
                )
            })
            .expect("unvisited vertex");
        order.push(v);
        visited.insert(v);
    }
    order
}

/// Earlier-visited neighbours of each vertex, in visit order.
fn earlier_neighbors(g: &UGraph, order: &[usize]) -> Vec<VertexSet> {
    let mut visited = VertexSet::EMPTY;
    order
        .iter()
        .map(|&v| {
            let p = g.neighbors(v).intersection(visited);
            visited.insert(v);
            p
        })
        .collect()
}

/// No induced chordless cycle of length four or more.
pub fn is_chordal(g: &UGraph) -> bool {
    let order = mcs_order(g);
    earlier_neighbors(g, &order)
        .into_iter()
        .all(|p| g.is_complete_on(p))
}

pub fn junction_tree(g: &UGraph) -> Result<JunctionTree> {
    let identity: Vec<usize> = (0..g.n()).collect();
    junction_tree_with_priority(g, &identity)
}

/// Junction tree from an MCS run with the given tie-break ranks.
pub fn junction_tree_with_priority(g: &UGraph, rank: &[usize]) -> Result<JunctionTree> {
    if g.vertices().is_empty() {
        return Ok(JunctionTree {
            cliques: vec![VertexSet::EMPTY],
            separators: Vec::new(),
        });
    }
    let order = mcs_order_with_priority(g, rank);
    let earlier = earlier_neighbors(g, &order);
    if !earlier.iter().all(|&p| g.is_complete_on(p)) {
        return Err(Error::NotDecomposable);
    }
    let candidates: Vec<VertexSet> = order
        .iter()
        .zip(&earlier)
        .map(|(&v, &p)| p.with(v))
        .collect();
    // K(v) is a clique unless a later candidate strictly contains it
    let cliques: Vec<VertexSet> = candidates
        .iter()
        .enumerate()
        .filter(|&(i, &k)| {
            !candidates[i + 1..]
                .iter()
                .any(|&other| k.is_subset(other) && k != other)
        })
        .map(|(_, &k)| k)
        .collect();

    let mut separators: Vec<(VertexSet, usize)> = Vec::new();
    let mut covered = cliques[0];
    for &c in &cliques[1..] {
        let s = c.intersection(covered);
        covered = covered.union(c);
        match separators.iter_mut().find(|(t, _)| *t == s) {
            Some((_, m)) => *m += 1,
            None => separators.push((s, 1)),
        }
    }
    Ok(JunctionTree {
        cliques,
        separators,
    })
}
