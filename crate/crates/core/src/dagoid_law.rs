//! Laws over dagoids and over DAGs with a fixed vertex order.

use std::collections::HashMap;

use crate::dag::{ancestral_insert, enumerate_dags, Dag, Dagoid, DAG_ENUMERATION_CAP};
use crate::error::{check_cap, Error, Result};
use crate::numeric::{log_close, log_sum_exp, LOG_RTOL};
use crate::subset_vector::SubsetVector;
use crate::vertex_set::VertexSet;

/// Largest vertex count for the exhaustive dagoid structural check.
pub const DAGOID_CHECK_CAP: usize = 4;

/// A Markov equivalence class together with all of its members.
#[derive(Clone, Debug)]
pub struct DagoidClass {
    pub dagoid: Dagoid,
    /// Sorted by edge list.
    pub members: Vec<Dag>,
}

/// Every dagoid on `{0, .., n-1}` with its members, ordered by skeleton edge
/// list and then immorality set.
pub fn enumerate_dagoids(n: usize) -> Result<Vec<DagoidClass>> {
    check_cap("dagoid enumeration", n, DAG_ENUMERATION_CAP)?;
    let mut classes: HashMap<Dagoid, Vec<Dag>> = HashMap::new();
    for d in enumerate_dags(n)? {
        classes.entry(Dagoid::of(&d)).or_default().push(d);
    }
    let mut out: Vec<DagoidClass> = classes
        .into_values()
        .map(|mut members| {
            members.sort_by_key(Dag::edges);
            let dagoid = Dagoid::of(&members[0]);
            DagoidClass { dagoid, members }
        })
        .collect();
    out.sort_by(|x, y| {
        (x.dagoid.skeleton().edges(), x.dagoid.immoralities())
            .cmp(&(y.dagoid.skeleton().edges(), y.dagoid.immoralities()))
    });
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum DagoidLawKind {
    /// Unnormalised log-density `ω · t(D)` over every dagoid.
    Exponential(SubsetVector<f64>),
    /// Normalised log-probabilities; absent dagoids have mass zero.
    Table(HashMap<Dagoid, f64>),
}

/// A probability law over dagoids on `{0, .., n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DagoidLaw {
    n: usize,
    kind: DagoidLawKind,
}

impl DagoidLaw {
    pub fn exponential(n: usize, omega: SubsetVector<f64>) -> Self {
        assert_eq!(omega.n(), n, "parameter over the wrong lattice");
        DagoidLaw {
            n,
            kind: DagoidLawKind::Exponential(omega),
        }
    }

    /// Table law from log-weights, normalised on construction; `-∞` weights are dropped.
    pub fn table<I: IntoIterator<Item = (Dagoid, f64)>>(n: usize, entries: I) -> Result<Self> {
        let mut map = HashMap::new();
        for (d, w) in entries {
            if d.n() != n || d.vertices() != VertexSet::full(n) {
                return Err(Error::InvalidInput(
                    "table dagoid on the wrong vertex set".into(),
                ));
            }
            if w.is_nan() || w == f64::INFINITY {
                return Err(Error::InvalidInput(format!("log-weight {w}")));
            }
            if map.contains_key(&d) {
                return Err(Error::InvalidInput("dagoid listed twice".into()));
            }
            if w > f64::NEG_INFINITY {
                map.insert(d, w);
            }
        }
        let z = log_sum_exp(map.values().copied());
        if z == f64::NEG_INFINITY {
            return Err(Error::ZeroMassEvent);
        }
        for w in map.values_mut() {
            *w -= z;
        }
        Ok(DagoidLaw {
            n,
            kind: DagoidLawKind::Table(map),
        })
    }

    /// `π(D) ∝ |D|`, the number of DAGs in the class.
    pub fn class_size(n: usize) -> Result<Self> {
        let classes = enumerate_dagoids(n)?;
        Self::table(
            n,
            classes
                .into_iter()
                .map(|c| (c.dagoid, (c.members.len() as f64).ln())),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &DagoidLawKind {
        &self.kind
    }

    pub fn omega(&self) -> Option<&SubsetVector<f64>> {
        match &self.kind {
            DagoidLawKind::Exponential(omega) => Some(omega),
            DagoidLawKind::Table(_) => None,
        }
    }

    pub fn log_density(&self, d: &Dagoid) -> Result<f64> {
        if d.n() != self.n || d.vertices() != VertexSet::full(self.n) {
            return Err(Error::InvalidInput("dagoid on the wrong vertex set".into()));
        }
        match &self.kind {
            DagoidLawKind::Exponential(omega) => Ok(omega.dot(d.tvec())),
            DagoidLawKind::Table(map) => map.get(d).copied().ok_or(Error::OutOfSupport),
        }
    }

    pub(crate) fn log_weight(&self, d: &Dagoid) -> f64 {
        self.log_density(d).unwrap_or(f64::NEG_INFINITY)
    }

    pub fn log_normalizer(&self) -> Result<f64> {
        match &self.kind {
            DagoidLawKind::Table(_) => Ok(0.0),
            DagoidLawKind::Exponential(_) => Ok(log_sum_exp(
                enumerate_dagoids(self.n)?
                    .iter()
                    .map(|c| self.log_weight(&c.dagoid)),
            )),
        }
    }

    pub fn log_prob(&self, d: &Dagoid) -> Result<f64> {
        Ok(self.log_density(d)? - self.log_normalizer()?)
    }

    pub fn to_table(&self) -> Result<DagoidLaw> {
        match &self.kind {
            DagoidLawKind::Table(_) => Ok(self.clone()),
            DagoidLawKind::Exponential(_) => {
                let classes = enumerate_dagoids(self.n)?;
                Self::table(
                    self.n,
                    classes.into_iter().map(|c| {
                        let w = self.log_weight(&c.dagoid);
                        (c.dagoid, w)
                    }),
                )
            }
        }
    }

    /// Normalised `(dagoid, log-probability)` pairs in enumeration order.
    pub fn entries(&self) -> Result<Vec<(Dagoid, f64)>> {
        let table = self.to_table()?;
        Ok(enumerate_dagoids(self.n)?
            .into_iter()
            .map(|c| c.dagoid)
            .filter_map(|d| table.log_density(&d).ok().map(|w| (d, w)))
            .collect())
    }
}

pub fn dagoid_log_density(law: &DagoidLaw, d: &Dagoid) -> Result<f64> {
    law.log_density(d)
}

/// `D_A ⋉ D'_{V|A}`: the class of `G_A ⋉ G'` for members `G ∈ D`, `G' ∈ D'`
/// in which `A` is ancestral.
pub fn dagoid_product(d: &Dagoid, d2: &Dagoid, a: VertexSet) -> Result<Dagoid> {
    let g = d
        .ancestral_member(a)?
        .ok_or(Error::NotAncestralInDagoid(a))?;
    let g2 = d2
        .ancestral_member(a)?
        .ok_or(Error::NotAncestralInDagoid(a))?;
    Ok(Dagoid::of(&ancestral_insert(&g.induced(a), &g2)?))
}

/// A violated identity `π(D)π(D') = π(D_A ⋉ D'_{V|A}) π(D'_A ⋉ D_{V|A})`.
#[derive(Clone, Debug, PartialEq)]
pub struct DagoidWitness {
    pub a: VertexSet,
    pub d: Dagoid,
    pub d2: Dagoid,
    /// `D_A ⋉ D'_{V|A}`.
    pub cross: Dagoid,
    /// `D'_A ⋉ D_{V|A}`.
    pub cross2: Dagoid,
    pub lhs: f64,
    pub rhs: f64,
}

/// Both sides of the ancestral product identity for one quadruple.
pub fn dagoid_product_identity(
    law: &DagoidLaw,
    a: VertexSet,
    d: &Dagoid,
    d2: &Dagoid,
) -> Result<DagoidWitness> {
    let cross = dagoid_product(d, d2, a)?;
    let cross2 = dagoid_product(d2, d, a)?;
    Ok(DagoidWitness {
        a,
        lhs: law.log_weight(d) + law.log_weight(d2),
        rhs: law.log_weight(&cross) + law.log_weight(&cross2),
        d: d.clone(),
        d2: d2.clone(),
        cross,
        cross2,
    })
}

/// Exhaustive check over every `A` and every pair of dagoids in which `A` is
/// ancestral; returns the first violation in enumeration order.
pub fn check_dagoid_structural_markov(law: &DagoidLaw) -> Result<Option<DagoidWitness>> {
    let n = law.n();
    check_cap("dagoid structural Markov check", n, DAGOID_CHECK_CAP)?;
    let classes = enumerate_dagoids(n)?;
    let position: HashMap<&Dagoid, usize> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| (&c.dagoid, i))
        .collect();
    let logp: Vec<f64> = classes.iter().map(|c| law.log_weight(&c.dagoid)).collect();
    let full = VertexSet::full(n);
    for a in full.subsets().filter(|&a| !a.is_empty() && a != full) {
        // one member per class with `a` ancestral
        let ances: Vec<(usize, &Dag)> = classes
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.members.iter().find(|m| m.is_ancestral(a)).map(|m| (i, m)))
            .collect();
        let heads: Vec<Dag> = ances.iter().map(|(_, m)| m.induced(a)).collect();
        let product = |x: usize, y: usize| -> Result<usize> {
            let d = Dagoid::of(&ancestral_insert(&heads[x], ances[y].1)?);
            Ok(position[&d])
        };
        for x in 0..ances.len() {
            for y in x + 1..ances.len() {
                let (i, j) = (ances[x].0, ances[y].0);
                let (c1, c2) = (product(x, y)?, product(y, x)?);
                let lhs = logp[i] + logp[j];
                let rhs = logp[c1] + logp[c2];
                if !log_close(lhs, rhs, LOG_RTOL) {
                    return Ok(Some(DagoidWitness {
                        a,
                        d: classes[i].dagoid.clone(),
                        d2: classes[j].dagoid.clone(),
                        cross: classes[c1].dagoid.clone(),
                        cross2: classes[c2].dagoid.clone(),
                        lhs,
                        rhs,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// `ω_A = log π(D^(A))`, with `D^(A)` complete on `A` and sparse elsewhere.
pub fn recover_dagoid_omega(law: &DagoidLaw) -> Result<SubsetVector<f64>> {
    let n = law.n();
    check_cap("dagoid parameter recovery", n, DAGOID_CHECK_CAP)?;
    let table = law.to_table()?;
    let classes = enumerate_dagoids(n)?;
    if classes
        .iter()
        .any(|c| table.log_weight(&c.dagoid) == f64::NEG_INFINITY)
    {
        return Err(Error::IncompleteSupport);
    }
    if check_dagoid_structural_markov(&table)?.is_some() {
        return Err(Error::NotStructurallyMarkov);
    }
    let omega = SubsetVector::from_entries(
        n,
        VertexSet::full(n)
            .subsets()
            .map(|a| (a, table.log_weight(&Dagoid::complete_on(n, a)))),
    );
    let max_error = classes
        .iter()
        .map(|c| {
            let w = table.log_weight(&c.dagoid);
            (omega.dot(c.dagoid.tvec()) - w).abs() / 1f64.max(w.abs())
        })
        .fold(0.0, f64::max);
    if max_error > LOG_RTOL {
        return Err(Error::RecoveryMismatch { max_error });
    }
    Ok(omega)
}

/// Largest vertex count for exhaustive work over ordered DAGs.
pub const ORDERED_CAP: usize = 5;

/// Law over DAGs compatible with a fixed order, with independent parent sets.
///
/// Vertex `v` draws its parent set `S ⊆ pr(v)` with probability proportional
/// to `exp(w_v(S))`; parent sets absent from `w_v` have weight zero.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderedLaw {
    n: usize,
    order: Vec<usize>,
    weights: Vec<SubsetVector<f64>>,
    log_z: Vec<f64>,
}

impl OrderedLaw {
    pub fn new(n: usize, order: Vec<usize>, weights: Vec<SubsetVector<f64>>) -> Result<Self> {
        let mut seen = VertexSet::EMPTY;
        for &v in &order {
            if v >= n || seen.contains(v) {
                return Err(Error::InvalidInput("order is not a permutation".into()));
            }
            seen.insert(v);
        }
        if seen != VertexSet::full(n) || weights.len() != n {
            return Err(Error::InvalidInput(
                "order or weights do not cover every vertex".into(),
            ));
        }
        let mut log_z = vec![0.0; n];
        let mut pred = VertexSet::EMPTY;
        for &v in &order {
            if weights[v].n() != n || weights[v].iter().any(|(s, _)| !s.is_subset(pred)) {
                return Err(Error::InvalidInput(format!(
                    "weight for {v} on a non-predecessor set"
                )));
            }
            if weights[v]
                .iter()
                .any(|(_, w)| w.is_nan() || w == f64::INFINITY)
            {
                return Err(Error::InvalidInput(format!("non-finite weight for {v}")));
            }
            check_cap("ordered law parent sets", pred.len(), 20)?;
            log_z[v] = log_sum_exp(pred.subsets().map(|s| weights[v].get(s)));
            if log_z[v] == f64::NEG_INFINITY {
                return Err(Error::InvalidInput(format!("weights for {v} are all -inf")));
            }
            pred.insert(v);
        }
        Ok(OrderedLaw {
            n,
            order,
            weights,
            log_z,
        })
    }

    pub fn uniform(n: usize, order: Vec<usize>) -> Result<Self> {
        Self::new(n, order, vec![SubsetVector::zeros(n); n])
    }

    /// `w_v(S) = Σ_{u∈S} odds[u][v]`: each `u → v` with `u ≺ v` present
    /// independently with log-odds `odds[u][v]`.
    pub fn from_edge_log_odds(n: usize, order: Vec<usize>, odds: &[Vec<f64>]) -> Result<Self> {
        if odds.len() != n || odds.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("log-odds matrix must be n × n".into()));
        }
        let mut weights = vec![SubsetVector::zeros(n); n];
        let mut pred = VertexSet::EMPTY;
        for &v in &order {
            if v >= n {
                return Err(Error::InvalidInput("order is not a permutation".into()));
            }
            weights[v] = SubsetVector::from_entries(
                n,
                pred.subsets()
                    .map(|s| (s, s.iter().map(|u| odds[u][v]).sum())),
            );
            pred.insert(v);
        }
        Self::new(n, order, weights)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn predecessors(&self, v: usize) -> VertexSet {
        self.order
            .iter()
            .take_while(|&&w| w != v)
            .copied()
            .collect()
    }

    /// `log P(pa(v) = S)`.
    pub fn parent_log_prob(&self, v: usize, s: VertexSet) -> f64 {
        if !s.is_subset(self.predecessors(v)) {
            return f64::NEG_INFINITY;
        }
        self.weights[v].get(s) - self.log_z[v]
    }

    /// `Σ_v [w_v(pa(v)) - log Z_v]`.
    pub fn log_density(&self, d: &Dag) -> Result<f64> {
        if d.n() != self.n || !d.is_compatible_order(&self.order) {
            return Err(Error::IncompatibleOrder);
        }
        Ok((0..self.n)
            .map(|v| self.parent_log_prob(v, d.parents(v)))
            .sum())
    }

    /// Every DAG compatible with the order, in parent-set code order.
    pub fn ordered_dags(&self) -> Result<Vec<Dag>> {
        check_cap("ordered DAG enumeration", self.n, ORDERED_CAP)?;
        let mut out = vec![Dag::empty(self.n)];
        let mut pred = VertexSet::EMPTY;
        for &v in &self.order {
            let mut next = Vec::with_capacity(out.len() << pred.len());
            for d in &out {
                for s in pred.subsets() {
                    let mut e = d.clone();
                    e.parents_mut()[v] = s;
                    next.push(e);
                }
            }
            out = next;
            pred.insert(v);
        }
        Ok(out)
    }
}

pub fn ordered_law_density(law: &OrderedLaw, d: &Dag) -> Result<f64> {
    law.log_density(d)
}

/// A failure of the ordered law to factorise over parent sets.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderedViolation {
    pub dag: Dag,
    pub joint: f64,
    pub product_of_margins: f64,
}

/// Exhaustively checks that the joint over ordered DAGs sums to one and equals
/// the product of the parent-set marginals computed from it.
pub fn check_ordered_independence(law: &OrderedLaw) -> Result<Option<OrderedViolation>> {
    let dags = law.ordered_dags()?;
    let joint: Vec<f64> = dags
        .iter()
        .map(|d| law.log_density(d))
        .collect::<Result<_>>()?;
    let total = log_sum_exp(joint.iter().copied());
    if total.abs() > LOG_RTOL {
        return Err(Error::NumericalFailure(format!(
            "ordered law has total log-mass {total}"
        )));
    }
    let mut margins: Vec<HashMap<VertexSet, Vec<f64>>> = vec![HashMap::new(); law.n()];
    for (d, &w) in dags.iter().zip(&joint) {
        for (v, m) in margins.iter_mut().enumerate() {
            m.entry(d.parents(v)).or_default().push(w);
        }
    }
    let margins: Vec<HashMap<VertexSet, f64>> = margins
        .into_iter()
        .map(|m| m.into_iter().map(|(s, ws)| (s, log_sum_exp(ws))).collect())
        .collect();
    for (d, &w) in dags.iter().zip(&joint) {
        let prod: f64 = (0..law.n()).map(|v| margins[v][&d.parents(v)]).sum();
        if !log_close(w, prod, LOG_RTOL) {
            return Ok(Some(OrderedViolation {
                dag: d.clone(),
                joint: w,
                product_of_margins: prod,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    #[test]
    fn class_counts() {
        assert_eq!(enumerate_dagoids(2).unwrap().len(), 2);
        let three = enumerate_dagoids(3).unwrap();
        assert_eq!(three.len(), 11);
        assert_eq!(three.iter().map(|c| c.members.len()).sum::<usize>(), 25);
        assert_eq!(three.iter().map(|c| c.members.len()).max(), Some(6));
    }

    #[test]
    fn uniform_and_class_size_laws() {
        let u = DagoidLaw::exponential(3, SubsetVector::zeros(3));
        assert_eq!(check_dagoid_structural_markov(&u).unwrap(), None);
        let sized = DagoidLaw::class_size(3).unwrap();
        assert!(check_dagoid_structural_markov(&sized).unwrap().is_some());
        let w = dagoid_product_identity(
            &sized,
            vs(&[0, 1]),
            &Dagoid::complete(3),
            &Dagoid::sparse(3),
        )
        .unwrap();
        assert!((w.lhs - w.rhs - 3f64.ln()).abs() < 1e-12);
        assert_eq!(
            recover_dagoid_omega(&sized),
            Err(Error::NotStructurallyMarkov)
        );
    }

    #[test]
    fn ordered_uniform() {
        let law = OrderedLaw::uniform(3, vec![0, 1, 2]).unwrap();
        let dags = law.ordered_dags().unwrap();
        assert_eq!(dags.len(), 8);
        for d in &dags {
            assert!((law.log_density(d).unwrap() + 8f64.ln()).abs() < 1e-12);
        }
        assert_eq!(check_ordered_independence(&law).unwrap(), None);
        let bad = Dag::from_edges(3, [(2, 0)]).unwrap();
        assert_eq!(law.log_density(&bad), Err(Error::IncompatibleOrder));
    }
}
