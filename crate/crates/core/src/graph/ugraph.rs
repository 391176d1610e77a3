use std::fmt;

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// An undirected simple graph on a vertex set inside `{0, .., n-1}`.
///
/// Induced subgraphs keep the original vertex labels, so `G_A` is a graph
/// whose `vertices()` is `A`. Vectors indexed by subsets of `A` then embed
/// into the lattice of `V` without relabeling.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UGraph {
    n: usize,
    vertices: VertexSet,
    adj: Vec<VertexSet>,
}

impl UGraph {
    /// Edgeless graph on `{0, .., n-1}`.
    pub fn empty(n: usize) -> Self {
        Self::empty_on(n, VertexSet::full(n))
    }

    /// Edgeless graph on `vertices`.
    pub fn empty_on(n: usize, vertices: VertexSet) -> Self {
        assert!(n <= MAX_VERTICES);
        assert!(vertices.fits(n), "vertex set {vertices} outside 0..{n}");
        UGraph {
            n,
            vertices,
            adj: vec![VertexSet::EMPTY; n],
        }
    }

    pub fn complete(n: usize) -> Self {
        Self::complete_on(n, VertexSet::full(n))
    }

    /// Graph on `{0, .., n-1}` that is complete on `clique` and has no other edges.
    pub fn complete_on(n: usize, clique: VertexSet) -> Self {
        let mut g = Self::empty(n);
        for v in clique {
            g.adj[v] = clique.without(v);
        }
        g
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_VERTICES {
            return Err(Error::CapExceeded {
                what: "vertex count",
                n,
                cap: MAX_VERTICES,
            });
        }
        let mut g = Self::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {v}) outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && self.vertices.contains(u) && self.vertices.contains(v));
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        if self.has_edge(u, v) {
            self.remove_edge(u, v);
        } else {
            self.add_edge(u, v);
        }
    }

    #[must_use]
    pub fn toggled(&self, u: usize, v: usize) -> Self {
        let mut g = self.clone();
        g.toggle_edge(u, v);
        g
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in self.vertices {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.vertices
            .iter()
            .map(|v| self.adj[v].len())
            .sum::<usize>()
            / 2
    }

    /// Induced subgraph on `a ∩ vertices()`, keeping vertex labels.
    #[must_use]
    pub fn induced(&self, a: VertexSet) -> Self {
        let vertices = self.vertices.intersection(a);
        let mut adj = vec![VertexSet::EMPTY; self.n];
        for v in vertices {
            adj[v] = self.adj[v].intersection(vertices);
        }
        UGraph {
            n: self.n,
            vertices,
            adj,
        }
    }

    /// True when every pair of vertices of `a` is adjacent.
    pub fn is_complete_on(&self, a: VertexSet) -> bool {
        a.iter().all(|v| a.without(v).is_subset(self.adj[v]))
    }

    pub fn is_complete(&self) -> bool {
        self.is_complete_on(self.vertices)
    }

    /// Connected components of the subgraph induced by `within`, ordered by smallest vertex.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within.intersection(self.vertices);
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let comp = self.reach(VertexSet::singleton(start), within);
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices)
    }

    /// Vertices reachable from `from` along paths that stay inside `within`.
    pub fn reach(&self, from: VertexSet, within: VertexSet) -> VertexSet {
        let mut seen = from.intersection(within);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(self.adj[v]);
            }
            frontier = next.intersection(within).difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    /// True when every path from `x` to `y` meets `s`.
    pub fn separates(&self, x: VertexSet, y: VertexSet, s: VertexSet) -> bool {
        let open = self.vertices.difference(s);
        self.reach(x, open).is_disjoint(y)
    }

    /// Vertex pairs `(u, v)`, `u < v`, of `vertices()` in lexicographic order.
    /// Bit `k` of [`UGraph::edge_mask`] refers to the `k`-th pair.
    pub fn vertex_pairs(vertices: VertexSet) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for u in vertices {
            for v in vertices.iter().filter(|&v| v > u) {
                pairs.push((u, v));
            }
        }
        pairs
    }

    /// Edge indicator over [`UGraph::vertex_pairs`]; requires at most 128 pairs.
    pub fn edge_mask(&self) -> u128 {
        let pairs = Self::vertex_pairs(self.vertices);
        assert!(pairs.len() <= 128, "edge mask needs at most 16 vertices");
        pairs
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| self.has_edge(u, v))
            .fold(0u128, |m, (k, _)| m | 1u128 << k)
    }

    pub fn from_edge_mask(
        n: usize,
        vertices: VertexSet,
        pairs: &[(usize, usize)],
        mask: u128,
    ) -> Self {
        let mut g = Self::empty_on(n, vertices);
        for (k, &(u, v)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                g.add_edge(u, v);
            }
        }
        g
    }
}

impl fmt::Debug for UGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UGraph(n={}, V={}, E=[", self.n, self.vertices)?;
        for (i, (u, v)) in self.edges().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("])")
    }
}

/// Orders graphs by their sorted edge lists, the canonical tie-break order.
pub fn cmp_edge_lists(a: &UGraph, b: &UGraph) -> std::cmp::Ordering {
    a.edges().cmp(&b.edges())
}
