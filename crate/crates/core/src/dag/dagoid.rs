use std::collections::{BTreeSet, HashSet, VecDeque};
use std::hash::{Hash, Hasher};

use crate::dag::{ancestral_insert, d_clique_vector, Dag, Immorality};
use crate::error::{check_cap, Error, Result};
use crate::graph::UGraph;
use crate::subset_vector::SubsetVector;
use crate::vertex_set::VertexSet;

/// Largest vertex count for which dagoid members are listed by reversal closure.
pub const MEMBERS_CAP: usize = 6;

/// Largest vertex count accepted when building a dagoid from skeleton and immoralities.
pub const FROM_PARTS_CAP: usize = 8;

/// A Markov equivalence class of DAGs, keyed by skeleton and immoralities.
///
/// Equality and hashing use only the key. The representative member and the
/// d-clique vector are carried along; the latter is identical for every member.
#[derive(Clone, Debug)]
pub struct Dagoid {
    skeleton: UGraph,
    immoralities: BTreeSet<Immorality>,
    representative: Dag,
    tvec: SubsetVector<i64>,
}

impl PartialEq for Dagoid {
    fn eq(&self, other: &Self) -> bool {
        self.skeleton == other.skeleton && self.immoralities == other.immoralities
    }
}

impl Eq for Dagoid {}

impl Hash for Dagoid {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.skeleton.hash(state);
        self.immoralities.hash(state);
    }
}

impl Dagoid {
    /// Class of `dag`.
    pub fn of(dag: &Dag) -> Self {
        Dagoid {
            skeleton: dag.skeleton(),
            immoralities: dag.immoralities(),
            representative: dag.clone(),
            tvec: d_clique_vector(dag),
        }
    }

    /// Class with the given skeleton and immoralities, if some DAG realises them.
    ///
    /// Searches orientations induced by vertex orderings, so it is capped at
    /// [`FROM_PARTS_CAP`] vertices.
    pub fn from_parts(skeleton: UGraph, immoralities: BTreeSet<Immorality>) -> Result<Self> {
        let verts: Vec<usize> = skeleton.vertices().iter().collect();
        check_cap("dagoid from skeleton", verts.len(), FROM_PARTS_CAP)?;
        for &(a, b, c) in &immoralities {
            if a >= c
                || !skeleton.has_edge(a, b)
                || !skeleton.has_edge(c, b)
                || skeleton.has_edge(a, c)
            {
                return Err(Error::InvalidInput(format!(
                    "({a}, {b}, {c}) is not an unshielded triple of the skeleton"
                )));
            }
        }
        let mut order = verts.clone();
        loop {
            let dag = orient_by_order(&skeleton, &order);
            if dag.immoralities() == immoralities {
                return Ok(Self::of(&dag));
            }
            if !next_permutation(&mut order) {
                return Err(Error::InvalidInput(
                    "no DAG has this skeleton and immorality set".into(),
                ));
            }
        }
    }

    /// Class of the complete DAG on `{0, .., n-1}`.
    pub fn complete(n: usize) -> Self {
        Self::of(&Dag::complete_on(n, VertexSet::full(n)))
    }

    /// Class of the edgeless DAG on `{0, .., n-1}`.
    pub fn sparse(n: usize) -> Self {
        Self::of(&Dag::empty(n))
    }

    /// Class complete on `a` and sparse elsewhere.
    pub fn complete_on(n: usize, a: VertexSet) -> Self {
        Self::of(&Dag::complete_on(n, a))
    }

    pub fn n(&self) -> usize {
        self.skeleton.n()
    }

    pub fn vertices(&self) -> VertexSet {
        self.skeleton.vertices()
    }

    pub fn skeleton(&self) -> &UGraph {
        &self.skeleton
    }

    pub fn immoralities(&self) -> &BTreeSet<Immorality> {
        &self.immoralities
    }

    pub fn representative(&self) -> &Dag {
        &self.representative
    }

    /// d-clique vector shared by all members.
    pub fn tvec(&self) -> &SubsetVector<i64> {
        &self.tvec
    }

    pub fn edge_count(&self) -> usize {
        self.skeleton.edge_count()
    }

    /// Every member, by breadth-first closure under covered-edge reversals,
    /// sorted by edge list.
    pub fn members(&self) -> Result<Vec<Dag>> {
        check_cap("dagoid members", self.vertices().len(), MEMBERS_CAP)?;
        let mut seen: HashSet<Dag> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.representative.clone());
        queue.push_back(self.representative.clone());
        while let Some(d) = queue.pop_front() {
            for e in d.covered_edges() {
                let r = d.reverse_covered_edge(e)?;
                if seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        let mut out: Vec<Dag> = seen.into_iter().collect();
        out.sort_by_key(Dag::edges);
        Ok(out)
    }

    /// A member in which `a` is ancestral, if any.
    pub fn ancestral_member(&self, a: VertexSet) -> Result<Option<Dag>> {
        if self.representative.is_ancestral(a) {
            return Ok(Some(self.representative.clone()));
        }
        Ok(self.members()?.into_iter().find(|m| m.is_ancestral(a)))
    }

    /// `a` is ancestral in some member.
    pub fn is_ancestral(&self, a: VertexSet) -> Result<bool> {
        Ok(self.ancestral_member(a)?.is_some())
    }

    /// Remainder dagoid `D_{V|A}`: a complete DAG on `a` inserted into a member
    /// in which `a` is ancestral.
    pub fn remainder(&self, a: VertexSet) -> Result<Dagoid> {
        let member = self
            .ancestral_member(a)?
            .ok_or(Error::NotAncestralInDagoid(a))?;
        let complete = Dag::complete_on(self.n(), a).induced(a);
        let out = Dagoid::of(&ancestral_insert(&complete, &member)?);
        #[cfg(debug_assertions)]
        for other in self.members()?.iter().filter(|m| m.is_ancestral(a)) {
            debug_assert_eq!(
                Dagoid::of(&ancestral_insert(&complete, other)?),
                out,
                "remainder depends on the member chosen"
            );
        }
        Ok(out)
    }

    /// Induced subdagoid `D_A`, a dagoid on vertex set `a`.
    pub fn induced(&self, a: VertexSet) -> Result<Dagoid> {
        let member = self
            .ancestral_member(a)?
            .ok_or(Error::NotAncestralInDagoid(a))?;
        let out = Dagoid::of(&member.induced(a));
        #[cfg(debug_assertions)]
        for other in self.members()?.iter().filter(|m| m.is_ancestral(a)) {
            debug_assert_eq!(
                Dagoid::of(&other.induced(a)),
                out,
                "induced dagoid depends on the member chosen"
            );
        }
        Ok(out)
    }
}

/// Orient every skeleton edge from the earlier to the later vertex of `order`.
fn orient_by_order(skeleton: &UGraph, order: &[usize]) -> Dag {
    let mut dag = Dag::empty_on(skeleton.n(), skeleton.vertices());
    let mut before = VertexSet::EMPTY;
    for &v in order {
        dag.parents_mut()[v] = skeleton.neighbors(v).intersection(before);
        before.insert(v);
    }
    dag
}

/// Lexicographic successor; false once the last permutation is reached.
fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let Some(i) = (0..xs.len() - 1).rev().find(|&i| xs[i] < xs[i + 1]) else {
        return false;
    };
    let j = (i + 1..xs.len()).rev().find(|&j| xs[j] > xs[i]).unwrap();
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, e: &[(usize, usize)]) -> Dag {
        Dag::from_edges(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn class_sizes() {
        assert_eq!(Dagoid::complete(3).members().unwrap().len(), 6);
        assert_eq!(Dagoid::of(&d(3, &[(0, 1)])).members().unwrap().len(), 2);
        assert_eq!(
            Dagoid::of(&d(3, &[(0, 1), (2, 1)]))
                .members()
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn chain_fork_and_reverse_chain_share_a_class() {
        let a = Dagoid::of(&d(3, &[(0, 1), (1, 2)]));
        let b = Dagoid::of(&d(3, &[(2, 1), (1, 0)]));
        let c = Dagoid::of(&d(3, &[(1, 0), (1, 2)]));
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert_ne!(a, Dagoid::of(&d(3, &[(0, 1), (2, 1)])));
    }

    #[test]
    fn from_parts_recovers_class() {
        let vee = d(4, &[(0, 2), (1, 2), (2, 3)]);
        let dg = Dagoid::of(&vee);
        let rebuilt = Dagoid::from_parts(dg.skeleton().clone(), dg.immoralities().clone()).unwrap();
        assert_eq!(rebuilt, dg);
        assert_eq!(rebuilt.tvec(), dg.tvec());
        // a lone collider on a triangle is not realisable
        let tri = UGraph::complete(3);
        let bad: BTreeSet<Immorality> = [(0, 1, 2)].into_iter().collect();
        assert!(Dagoid::from_parts(tri, bad).is_err());
    }

    #[test]
    fn remainder_of_v_structure() {
        let vee = Dagoid::of(&d(3, &[(0, 2), (1, 2)]));
        let a = VertexSet::pair(0, 1);
        assert_eq!(vee.remainder(a).unwrap(), Dagoid::complete(3));
        assert_eq!(
            vee.induced(a).unwrap(),
            Dagoid::sparse(3).induced(a).unwrap()
        );
        assert_eq!(
            vee.remainder(VertexSet::pair(0, 2)),
            Err(Error::NotAncestralInDagoid(VertexSet::pair(0, 2)))
        );
    }

    #[test]
    fn remainder_of_sparse_is_complete_on_a() {
        for a in VertexSet::full(3).subsets() {
            assert_eq!(
                Dagoid::sparse(3).remainder(a).unwrap(),
                Dagoid::complete_on(3, a)
            );
        }
    }

    #[test]
    fn permutations_enumerate_all() {
        let mut xs = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut xs) {
            count += 1;
        }
        assert_eq!(count, 24);
    }
}
