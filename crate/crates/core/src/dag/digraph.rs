use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::UGraph;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// Unshielded collider `a → b ← c` stored as `(a, b, c)` with `a < c`.
pub type Immorality = (usize, usize, usize);

/// A directed acyclic graph on a vertex set inside `{0, .., n-1}`.
///
/// Acyclicity is checked on construction; every value of this type is a DAG.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dag {
    n: usize,
    vertices: VertexSet,
    parents: Vec<VertexSet>,
}

impl Dag {
    pub fn empty(n: usize) -> Self {
        Self::empty_on(n, VertexSet::full(n))
    }

    pub fn empty_on(n: usize, vertices: VertexSet) -> Self {
        assert!(n <= MAX_VERTICES && vertices.fits(n));
        Dag {
            n,
            vertices,
            parents: vec![VertexSet::EMPTY; n],
        }
    }

    /// `u → v` for every listed `(u, v)`.
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
        let mut parents = vec![VertexSet::EMPTY; n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {v}) outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at {u}")));
            }
            parents[v].insert(u);
        }
        Self::from_parents(n, VertexSet::full(n), parents)
    }

    pub fn from_parents(n: usize, vertices: VertexSet, parents: Vec<VertexSet>) -> Result<Self> {
        if parents.len() != n || !vertices.fits(n) {
            return Err(Error::InvalidInput("parent list does not match n".into()));
        }
        for (v, pa) in parents.iter().enumerate() {
            let inside = vertices.contains(v);
            if (!inside && !pa.is_empty()) || (inside && !pa.is_subset(vertices.without(v))) {
                return Err(Error::InvalidInput(format!("bad parent set for {v}")));
            }
        }
        let dag = Dag {
            n,
            vertices,
            parents,
        };
        if dag.topological_order().is_none() {
            return Err(Error::CyclicInput);
        }
        Ok(dag)
    }

    /// Complete DAG on `a` oriented by increasing index, no other edges.
    pub fn complete_on(n: usize, a: VertexSet) -> Self {
        let order: Vec<usize> = a.iter().collect();
        Self::complete_with_order(n, &order)
    }

    /// Complete DAG on the listed vertices with `order[i] → order[j]` for `i < j`.
    pub fn complete_with_order(n: usize, order: &[usize]) -> Self {
        let mut dag = Self::empty(n);
        let mut before = VertexSet::EMPTY;
        for &v in order {
            dag.parents[v] = before;
            before.insert(v);
        }
        dag
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    pub fn parents(&self, v: usize) -> VertexSet {
        self.parents[v]
    }

    pub fn children(&self, v: usize) -> VertexSet {
        self.vertices
            .iter()
            .filter(|&w| self.parents[w].contains(v))
            .collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.parents[v].contains(u)
    }

    /// Edges `(u, v)` meaning `u → v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .vertices
            .iter()
            .flat_map(|v| self.parents[v].iter().map(move |u| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.iter().map(|v| self.parents[v].len()).sum()
    }

    /// Topological order preferring the lowest available index, or `None` on a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut placed = VertexSet::EMPTY;
        let mut order = Vec::with_capacity(self.vertices.len());
        while placed != self.vertices {
            let v = self
                .vertices
                .difference(placed)
                .iter()
                .find(|&v| self.parents[v].is_subset(placed))?;
            placed.insert(v);
            order.push(v);
        }
        Some(order)
    }

    /// `order` lists every vertex once and every edge points forward in it.
    pub fn is_compatible_order(&self, order: &[usize]) -> bool {
        let mut seen = VertexSet::EMPTY;
        for &v in order {
            if !self.vertices.contains(v) || seen.contains(v) || !self.parents[v].is_subset(seen) {
                return false;
            }
            seen.insert(v);
        }
        seen == self.vertices
    }

    pub fn skeleton(&self) -> UGraph {
        let mut g = UGraph::empty_on(self.n, self.vertices);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        g
    }

    /// All unshielded colliders.
    pub fn immoralities(&self) -> BTreeSet<Immorality> {
        let mut out = BTreeSet::new();
        for b in self.vertices {
            let pa = self.parents[b];
            for a in pa {
                for c in pa.iter().filter(|&c| c > a) {
                    if !self.has_edge(a, c) && !self.has_edge(c, a) {
                        out.insert((a, b, c));
                    }
                }
            }
        }
        out
    }

    /// `v ∈ A ⇒ pa(v) ⊆ A`.
    pub fn is_ancestral(&self, a: VertexSet) -> bool {
        a.is_subset(self.vertices) && a.iter().all(|v| self.parents[v].is_subset(a))
    }

    /// Smallest ancestral set containing `b`.
    pub fn ancestral_closure(&self, b: VertexSet) -> VertexSet {
        let mut set = b.intersection(self.vertices);
        loop {
            let grown = set.iter().fold(set, |acc, v| acc.union(self.parents[v]));
            if grown == set {
                return set;
            }
            set = grown;
        }
    }

    /// Induced subgraph on `a ∩ vertices()`, keeping labels.
    #[must_use]
    pub fn induced(&self, a: VertexSet) -> Self {
        let vertices = self.vertices.intersection(a);
        let parents = (0..self.n)
            .map(|v| {
                if vertices.contains(v) {
                    self.parents[v].intersection(vertices)
                } else {
                    VertexSet::EMPTY
                }
            })
            .collect();
        Dag {
            n: self.n,
            vertices,
            parents,
        }
    }

    /// Skeleton with every pair of co-parents joined.
    pub fn moral_graph(&self) -> UGraph {
        let mut g = self.skeleton();
        for v in self.vertices {
            let pa: Vec<usize> = self.parents[v].iter().collect();
            for (i, &a) in pa.iter().enumerate() {
                for &b in &pa[i + 1..] {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    /// Edges `a → b` with `pa(b) = pa(a) ∪ {a}`, in sorted order.
    pub fn covered_edges(&self) -> Vec<(usize, usize)> {
        self.edges()
            .into_iter()
            .filter(|&(a, b)| self.parents[b] == self.parents[a].with(a))
            .collect()
    }

    /// Reverses the covered edge `a → b`; the result is acyclic and Markov equivalent.
    pub fn reverse_covered_edge(&self, edge: (usize, usize)) -> Result<Dag> {
        let (a, b) = edge;
        if !self.has_edge(a, b) || self.parents[b] != self.parents[a].with(a) {
            return Err(Error::NotCovered(a, b));
        }
        let mut out = self.clone();
        out.parents[b].remove(a);
        out.parents[a].insert(b);
        debug_assert!(out.topological_order().is_some());
        Ok(out)
    }

    pub(crate) fn parents_mut(&mut self) -> &mut [VertexSet] {
        &mut self.parents
    }
}

impl fmt::Debug for Dag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dag(n={}, V={}, E=[", self.n, self.vertices)?;
        for (i, (u, v)) in self.edges().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{u}->{v}")?;
        }
        f.write_str("])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, e: &[(usize, usize)]) -> Dag {
        Dag::from_edges(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn cycles_are_rejected() {
        assert_eq!(
            Dag::from_edges(3, [(0, 1), (1, 2), (2, 0)]),
            Err(Error::CyclicInput)
        );
    }

    #[test]
    fn immoralities_of_small_graphs() {
        assert_eq!(
            d(3, &[(0, 1), (2, 1)])
                .immoralities()
                .into_iter()
                .collect::<Vec<_>>(),
            vec![(0, 1, 2)]
        );
        assert!(d(3, &[(0, 1), (1, 2)]).immoralities().is_empty());
        assert!(d(3, &[(0, 1), (0, 2), (1, 2)]).immoralities().is_empty());
    }

    #[test]
    fn covered_edges_and_reversal() {
        let complete = d(3, &[(0, 1), (0, 2), (1, 2)]);
        assert!(complete.covered_edges().contains(&(0, 1)));
        let rev = complete.reverse_covered_edge((0, 1)).unwrap();
        assert_eq!(rev, d(3, &[(1, 0), (0, 2), (1, 2)]));
        let vee = d(3, &[(0, 1), (2, 1)]);
        assert!(vee.covered_edges().is_empty());
        assert_eq!(
            vee.reverse_covered_edge((0, 1)),
            Err(Error::NotCovered(0, 1))
        );
    }

    #[test]
    fn ancestral_closure_and_moral_graph() {
        let vee = d(3, &[(0, 2), (1, 2)]);
        assert_eq!(
            vee.ancestral_closure(VertexSet::singleton(2)),
            VertexSet::full(3)
        );
        assert!(vee.moral_graph().has_edge(0, 1));
        assert!(vee.is_ancestral(VertexSet::pair(0, 1)));
        assert!(!vee.is_ancestral(VertexSet::pair(0, 2)));
    }
}
