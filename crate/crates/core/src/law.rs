//! Laws over decomposable graphs: the clique exponential family, table laws,
//! the built-in examples, and exhaustive structural-Markov and meta-Markov checks.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::clique::clique_vector;
use crate::error::{check_cap, Error, Result};
use crate::graph::{
    covering_pairs, enumerate_decomposable_on, is_chordal, is_decomposition, product_of_margins,
    UGraph, ENUMERATION_CAP,
};
use crate::numeric::{log_close, log_sum_exp, logit, pairs, LOG_RTOL};
use crate::subset_vector::{SubsetVector, DENSE_CAP};
use crate::vertex_set::VertexSet;

/// Largest vertex count for the exhaustive structural checks.
pub const STRUCTURAL_CHECK_CAP: usize = 5;

/// An explicit set of decomposable graphs on a common vertex set.
#[derive(Clone, Debug)]
pub struct GraphFamily {
    n: usize,
    vertices: VertexSet,
    members: Vec<UGraph>,
    set: HashSet<UGraph>,
}

impl PartialEq for GraphFamily {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.vertices == other.vertices && self.set == other.set
    }
}

impl GraphFamily {
    /// Members are deduplicated and kept in edge-mask order.
    pub fn new<I: IntoIterator<Item = UGraph>>(
        n: usize,
        vertices: VertexSet,
        members: I,
    ) -> Result<Self> {
        let set: HashSet<UGraph> = members.into_iter().collect();
        for g in &set {
            if g.n() != n || g.vertices() != vertices {
                return Err(Error::InvalidInput(format!(
                    "family member {g:?} is not on {vertices}"
                )));
            }
            if !is_chordal(g) {
                return Err(Error::NotDecomposable);
            }
        }
        let mut members: Vec<UGraph> = set.iter().cloned().collect();
        members.sort_by_key(UGraph::edge_mask);
        Ok(GraphFamily {
            n,
            vertices,
            members,
            set,
        })
    }

    /// Every decomposable graph on `{0, .., n-1}`.
    pub fn all(n: usize) -> Result<Self> {
        check_cap("graph family", n, ENUMERATION_CAP)?;
        Self::new(
            n,
            VertexSet::full(n),
            enumerate_decomposable_on(n, VertexSet::full(n)),
        )
    }

    /// Forests: decomposable graphs without triangles.
    pub fn forests(n: usize) -> Result<Self> {
        let all = Self::all(n)?;
        let forests = all.members.into_iter().filter(|g| {
            g.edges()
                .iter()
                .all(|&(u, v)| g.neighbors(u).is_disjoint(g.neighbors(v)))
        });
        Self::new(n, VertexSet::full(n), forests)
    }

    /// Decomposable graphs whose edge sets lie between those of `lower` and `upper`.
    pub fn sandwich(lower: &UGraph, upper: &UGraph) -> Result<Self> {
        if lower.n() != upper.n() || lower.vertices() != upper.vertices() {
            return Err(Error::InvalidInput(
                "sandwich bounds on different vertex sets".into(),
            ));
        }
        check_cap("graph family", lower.vertices().len(), ENUMERATION_CAP)?;
        let (lo, hi) = (lower.edge_mask(), upper.edge_mask());
        if lo & !hi != 0 {
            return Err(Error::InvalidInput(
                "lower bound is not a subgraph of the upper bound".into(),
            ));
        }
        let members = enumerate_decomposable_on(lower.n(), lower.vertices()).filter(|g| {
            let m = g.edge_mask();
            m & lo == lo && m & !hi == 0
        });
        Self::new(lower.n(), lower.vertices(), members)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    pub fn members(&self) -> &[UGraph] {
        &self.members
    }

    pub fn contains(&self, g: &UGraph) -> bool {
        self.set.contains(g)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Where an exponential law puts positive mass.
#[derive(Clone, Debug, PartialEq)]
pub enum Support {
    /// Every decomposable graph on the law's vertex set.
    Full,
    Family(GraphFamily),
}

#[derive(Clone, Debug, PartialEq)]
pub enum LawKind {
    /// Unnormalised log-density `ω · t(G)` on the support.
    Exponential {
        omega: SubsetVector<f64>,
        support: Support,
    },
    /// Normalised log-probabilities; graphs absent from the table have mass zero.
    Table(HashMap<UGraph, f64>),
}

/// A probability law over decomposable graphs on `vertices ⊆ {0, .., n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphLaw {
    n: usize,
    vertices: VertexSet,
    kind: LawKind,
}

impl GraphLaw {
    pub fn exponential(n: usize, omega: SubsetVector<f64>) -> Self {
        Self::exponential_on(n, VertexSet::full(n), omega)
    }

    pub fn exponential_on(n: usize, vertices: VertexSet, omega: SubsetVector<f64>) -> Self {
        assert_eq!(omega.n(), n, "parameter over the wrong lattice");
        GraphLaw {
            n,
            vertices,
            kind: LawKind::Exponential {
                omega,
                support: Support::Full,
            },
        }
    }

    /// Table law from log-weights, normalised on construction.
    ///
    /// `-∞` weights are dropped; graphs must be decomposable and on `vertices`.
    pub fn table<I>(n: usize, vertices: VertexSet, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (UGraph, f64)>,
    {
        let mut map = HashMap::new();
        for (g, w) in entries {
            if g.n() != n || g.vertices() != vertices {
                return Err(Error::InvalidInput(format!(
                    "table graph {g:?} is not on {vertices}"
                )));
            }
            if !is_chordal(&g) {
                return Err(Error::NotDecomposable);
            }
            if w.is_nan() || w == f64::INFINITY {
                return Err(Error::InvalidInput(format!("log-weight {w} for {g:?}")));
            }
            if map.contains_key(&g) {
                return Err(Error::InvalidInput(format!("graph {g:?} listed twice")));
            }
            if w > f64::NEG_INFINITY {
                map.insert(g, w);
            }
        }
        let z = log_sum_exp(map.values().copied());
        if z == f64::NEG_INFINITY {
            return Err(Error::ZeroMassEvent);
        }
        for w in map.values_mut() {
            *w -= z;
        }
        Ok(GraphLaw {
            n,
            vertices,
            kind: LawKind::Table(map),
        })
    }

    /// The same law conditioned on `family`.
    pub fn restricted_to(&self, family: GraphFamily) -> Result<Self> {
        if family.n() != self.n || family.vertices() != self.vertices {
            return Err(Error::InvalidInput(
                "family on a different vertex set".into(),
            ));
        }
        match &self.kind {
            LawKind::Exponential { omega, support } => {
                let family = match support {
                    Support::Full => family,
                    Support::Family(own) => {
                        let kept = family.members().iter().filter(|g| own.contains(g)).cloned();
                        GraphFamily::new(self.n, self.vertices, kept)?
                    }
                };
                if family.is_empty() {
                    return Err(Error::ZeroMassEvent);
                }
                Ok(GraphLaw {
                    n: self.n,
                    vertices: self.vertices,
                    kind: LawKind::Exponential {
                        omega: omega.clone(),
                        support: Support::Family(family),
                    },
                })
            }
            LawKind::Table(map) => Self::table(
                self.n,
                self.vertices,
                map.iter()
                    .filter(|(g, _)| family.contains(g))
                    .map(|(g, &w)| (g.clone(), w)),
            ),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    pub fn kind(&self) -> &LawKind {
        &self.kind
    }

    pub fn omega(&self) -> Option<&SubsetVector<f64>> {
        match &self.kind {
            LawKind::Exponential { omega, .. } => Some(omega),
            LawKind::Table(_) => None,
        }
    }

    /// `ω · t(G)` for exponential laws, the stored log-probability for tables.
    pub fn log_density(&self, g: &UGraph) -> Result<f64> {
        if g.n() != self.n || g.vertices() != self.vertices {
            return Err(Error::InvalidInput(format!(
                "{g:?} is not on {}",
                self.vertices
            )));
        }
        match &self.kind {
            LawKind::Exponential { omega, support } => {
                if let Support::Family(f) = support {
                    if !f.contains(g) {
                        return Err(Error::OutOfSupport);
                    }
                }
                Ok(omega.dot(&clique_vector(g)?))
            }
            LawKind::Table(map) => map.get(g).copied().ok_or(Error::OutOfSupport),
        }
    }

    /// Log-density with `-∞` off the support.
    pub(crate) fn log_weight(&self, g: &UGraph) -> f64 {
        self.log_density(g).unwrap_or(f64::NEG_INFINITY)
    }

    /// Graphs with positive mass, in edge-mask order.
    pub fn support_graphs(&self) -> Result<Vec<UGraph>> {
        match &self.kind {
            LawKind::Exponential {
                support: Support::Family(f),
                ..
            } => Ok(f.members().to_vec()),
            LawKind::Exponential { .. } => {
                check_cap("support enumeration", self.vertices.len(), ENUMERATION_CAP)?;
                Ok(enumerate_decomposable_on(self.n, self.vertices).collect())
            }
            LawKind::Table(map) => {
                let mut out: Vec<UGraph> = map.keys().cloned().collect();
                out.sort_by_key(UGraph::edge_mask);
                Ok(out)
            }
        }
    }

    /// `log Z` by exhaustive summation over the support.
    pub fn log_normalizer(&self) -> Result<f64> {
        match &self.kind {
            LawKind::Table(_) => Ok(0.0),
            LawKind::Exponential { .. } => {
                let graphs = self.support_graphs()?;
                Ok(log_sum_exp(graphs.iter().map(|g| self.log_weight(g))))
            }
        }
    }

    /// Normalised log-probability of `g`.
    pub fn log_prob(&self, g: &UGraph) -> Result<f64> {
        Ok(self.log_density(g)? - self.log_normalizer()?)
    }

    /// Equivalent table law over the support.
    pub fn to_table(&self) -> Result<GraphLaw> {
        if let LawKind::Table(_) = self.kind {
            return Ok(self.clone());
        }
        let graphs = self.support_graphs()?;
        let weights: Vec<(UGraph, f64)> = graphs
            .into_iter()
            .map(|g| {
                let w = self.log_weight(&g);
                (g, w)
            })
            .collect();
        Self::table(self.n, self.vertices, weights)
    }

    /// Normalised `(graph, log-probability)` pairs in canonical edge-list order.
    pub fn entries(&self) -> Result<Vec<(UGraph, f64)>> {
        let LawKind::Table(map) = self.to_table()?.kind else {
            unreachable!("to_table returns a table");
        };
        let mut out: Vec<(UGraph, f64)> = map.into_iter().collect();
        out.sort_by_key(|(g, _)| g.edges());
        Ok(out)
    }

    /// Positive mass on every decomposable graph of the vertex set.
    pub fn has_full_support(&self) -> Result<bool> {
        check_cap("support enumeration", self.vertices.len(), ENUMERATION_CAP)?;
        Ok(enumerate_decomposable_on(self.n, self.vertices)
            .all(|g| self.log_weight(&g) > f64::NEG_INFINITY))
    }
}

/// `log Z(ω)` of an exponential law, or zero for a table law.
pub fn normalize(law: &GraphLaw) -> Result<f64> {
    law.log_normalizer()
}

/// `ω*_A = ω_A + (|A|-1) ω_∅ - Σ_{v∈A} ω_v`, zero on `∅` and singletons.
///
/// `ω` and `ω*` give the same law over any set of graphs on `{0, .., n-1}`.
pub fn standardize_omega(omega: &SubsetVector<f64>, n: usize) -> Result<SubsetVector<f64>> {
    check_cap("standardize", n, DENSE_CAP)?;
    let empty = omega.get(VertexSet::EMPTY);
    Ok(SubsetVector::from_entries(
        n,
        VertexSet::full(n).subsets().map(|a| {
            let singles: f64 = a.iter().map(|v| omega.get(VertexSet::singleton(v))).sum();
            let x = omega.get(a) + (a.len() as f64 - 1.0) * empty - singles;
            (a, if a.len() <= 1 { 0.0 } else { x })
        }),
    ))
}

/// Parameters of the built-in laws; unused fields are ignored.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LawParams {
    /// Edge probability for `edge-bernoulli`, default for `per-edge-bernoulli`.
    pub psi: Option<f64>,
    /// `[u, v, ψ_uv]` overrides for `per-edge-bernoulli`.
    pub edge_psi: Vec<(usize, usize, f64)>,
    /// Per-edge log-odds in `forest-penalty`.
    pub rho: Option<f64>,
    /// Penalty per vertex beyond two in a clique, for `forest-penalty`.
    pub kappa: Option<f64>,
}

pub const BUILTIN_LAWS: [&str; 5] = [
    "uniform",
    "edge-bernoulli",
    "per-edge-bernoulli",
    "forest-penalty",
    "armstrong",
];

fn probability(name: &str, p: f64) -> Result<f64> {
    if p > 0.0 && p < 1.0 {
        Ok(p)
    } else {
        Err(Error::InvalidInput(format!(
            "{name} = {p} is not in (0, 1)"
        )))
    }
}

/// Dense `ω_A = f(A)` over every subset of `{0, .., n-1}`.
fn omega_from<F: Fn(VertexSet) -> f64>(n: usize, f: F) -> Result<SubsetVector<f64>> {
    check_cap("dense parameter", n, DENSE_CAP)?;
    Ok(SubsetVector::from_entries(
        n,
        VertexSet::full(n).subsets().map(|a| (a, f(a))),
    ))
}

/// A named example law on `{0, .., n-1}`.
pub fn builtin_law(name: &str, params: &LawParams, n: usize) -> Result<GraphLaw> {
    match name {
        "uniform" => Ok(GraphLaw::exponential(n, SubsetVector::zeros(n))),
        "edge-bernoulli" => {
            let psi = probability("psi", params.psi.ok_or_else(|| missing("psi"))?)?;
            let w = logit(psi);
            Ok(GraphLaw::exponential(
                n,
                omega_from(n, |a| pairs(a.len()) as f64 * w)?,
            ))
        }
        "per-edge-bernoulli" => {
            let default = logit(probability("psi", params.psi.unwrap_or(0.5))?);
            let mut odds: HashMap<(usize, usize), f64> = HashMap::new();
            for &(u, v, p) in &params.edge_psi {
                if u == v || u >= n || v >= n {
                    return Err(Error::InvalidInput(format!(
                        "edge ({u}, {v}) outside 0..{n}"
                    )));
                }
                odds.insert((u.min(v), u.max(v)), logit(probability("edge psi", p)?));
            }
            let omega = omega_from(n, |a| {
                UGraph::vertex_pairs(a)
                    .into_iter()
                    .map(|e| odds.get(&e).copied().unwrap_or(default))
                    .sum()
            })?;
            Ok(GraphLaw::exponential(n, omega))
        }
        "forest-penalty" => {
            let rho = params.rho.unwrap_or(0.0);
            let kappa = params.kappa.ok_or_else(|| missing("kappa"))?;
            if !(kappa > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "kappa = {kappa} must be positive"
                )));
            }
            let omega = omega_from(n, |a| {
                pairs(a.len()) as f64 * rho - kappa * a.len().saturating_sub(2) as f64
            })?;
            Ok(GraphLaw::exponential(n, omega))
        }
        "armstrong" => {
            check_cap("armstrong law", n, ENUMERATION_CAP)?;
            let graphs: Vec<UGraph> = enumerate_decomposable_on(n, VertexSet::full(n)).collect();
            let mut by_size = vec![0usize; pairs(n) + 1];
            for g in &graphs {
                by_size[g.edge_count()] += 1;
            }
            let levels = (pairs(n) + 1) as f64;
            let entries = graphs.into_iter().map(|g| {
                let w = -levels.ln() - (by_size[g.edge_count()] as f64).ln();
                (g, w)
            });
            GraphLaw::table(n, VertexSet::full(n), entries)
        }
        other => Err(Error::UnknownLaw(other.to_string())),
    }
}

fn missing(what: &str) -> Error {
    Error::InvalidInput(format!("missing parameter `{what}`"))
}

/// Decomposable graphs on a vertex set, indexed by edge mask for fast products.
pub(crate) struct GraphIndex {
    pub n: usize,
    pub vertices: VertexSet,
    pub pairs: Vec<(usize, usize)>,
    pub graphs: Vec<UGraph>,
    pub masks: Vec<u128>,
    pub position: HashMap<u128, usize>,
}

impl GraphIndex {
    pub fn new(n: usize, vertices: VertexSet, graphs: Vec<UGraph>) -> Self {
        let pairs = UGraph::vertex_pairs(vertices);
        let masks: Vec<u128> = graphs.iter().map(UGraph::edge_mask).collect();
        let position = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        GraphIndex {
            n,
            vertices,
            pairs,
            graphs,
            masks,
            position,
        }
    }

    pub fn universe(n: usize, vertices: VertexSet) -> Self {
        Self::new(
            n,
            vertices,
            enumerate_decomposable_on(n, vertices).collect(),
        )
    }

    /// Bits of the pairs lying inside `a`.
    pub fn inside(&self, a: VertexSet) -> u128 {
        self.pairs
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| a.contains(u) && a.contains(v))
            .fold(0, |m, (k, _)| m | 1u128 << k)
    }

    /// Indices of graphs for which `(a, b)` is a decomposition.
    pub fn event(&self, a: VertexSet, b: VertexSet) -> Vec<usize> {
        (0..self.graphs.len())
            .filter(|&i| is_decomposition(&self.graphs[i], a, b))
            .collect()
    }

    pub fn graph(&self, mask: u128) -> UGraph {
        UGraph::from_edge_mask(self.n, self.vertices, &self.pairs, mask)
    }
}

/// Covering pairs of `vertices` other than those with `A = V` or `B = V`,
/// for which every product identity holds trivially.
pub(crate) fn proper_covering_pairs(
    vertices: VertexSet,
) -> impl Iterator<Item = (VertexSet, VertexSet)> {
    covering_pairs(vertices)
        .into_iter()
        .filter(move |&(a, b)| a != vertices && b != vertices)
}

/// A violated product identity `π(G)π(G') = π(G_A ⋈ G'_B) π(G'_A ⋈ G_B)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub a: VertexSet,
    pub b: VertexSet,
    pub g: UGraph,
    pub g2: UGraph,
    /// `G_A ⋈ G'_B`.
    pub cross: UGraph,
    /// `G'_A ⋈ G_B`.
    pub cross2: UGraph,
    /// `log π(G) + log π(G')`.
    pub lhs: f64,
    /// `log π(G_A ⋈ G'_B) + log π(G'_A ⋈ G_B)`.
    pub rhs: f64,
}

/// Exhaustive product-identity check over all covering pairs and all pairs of
/// graphs admitting the decomposition; the first violation in canonical order
/// is returned.
pub fn check_structural_markov(law: &GraphLaw) -> Result<Option<Witness>> {
    check_cap(
        "structural Markov check",
        law.vertices().len(),
        STRUCTURAL_CHECK_CAP,
    )?;
    let index = GraphIndex::universe(law.n(), law.vertices());
    let logp: Vec<f64> = index.graphs.iter().map(|g| law.log_weight(g)).collect();
    for (a, b) in proper_covering_pairs(law.vertices()) {
        let (in_a, in_b) = (index.inside(a), index.inside(b));
        let event = index.event(a, b);
        for (k, &i) in event.iter().enumerate() {
            for &j in &event[k + 1..] {
                let (mi, mj) = (index.masks[i], index.masks[j]);
                let c1 = index.position[&((mi & in_a) | (mj & in_b))];
                let c2 = index.position[&((mj & in_a) | (mi & in_b))];
                let lhs = logp[i] + logp[j];
                let rhs = logp[c1] + logp[c2];
                if !log_close(lhs, rhs, LOG_RTOL) {
                    return Ok(Some(Witness {
                        a,
                        b,
                        g: index.graphs[i].clone(),
                        g2: index.graphs[j].clone(),
                        cross: index.graphs[c1].clone(),
                        cross2: index.graphs[c2].clone(),
                        lhs,
                        rhs,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Both sides of the product identity at one quadruple; `(a, b)` must be a
/// decomposition of both graphs.
pub fn product_identity(
    law: &GraphLaw,
    a: VertexSet,
    b: VertexSet,
    g: &UGraph,
    g2: &UGraph,
) -> Result<Witness> {
    if !is_decomposition(g, a, b) || !is_decomposition(g2, a, b) {
        return Err(Error::InvalidInput(format!(
            "({a}, {b}) does not decompose both graphs"
        )));
    }
    let cross = product_of_margins(g, a, g2, b);
    let cross2 = product_of_margins(g2, a, g, b);
    let lhs = law.log_weight(g) + law.log_weight(g2);
    let rhs = law.log_weight(&cross) + law.log_weight(&cross2);
    Ok(Witness {
        a,
        b,
        g: g.clone(),
        g2: g2.clone(),
        cross,
        cross2,
        lhs,
        rhs,
    })
}

/// How [`recover_omega_with`] treats the support of the law.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecoverSupport {
    /// The law must give positive mass to every decomposable graph.
    Full,
    /// Experimental: the support only needs to contain `G^(C)` for every
    /// complete `C` in one of its members. The recovered parameter is checked
    /// on the support, but no result guarantees it exists in this setting.
    ClosedFamily,
}

/// `ω_C = log π(G^(C))`, with `G^(C)` complete on `C` and sparse elsewhere.
pub fn recover_omega(law: &GraphLaw) -> Result<SubsetVector<f64>> {
    recover_omega_with(law, RecoverSupport::Full)
}

pub fn recover_omega_with(law: &GraphLaw, mode: RecoverSupport) -> Result<SubsetVector<f64>> {
    let (n, verts) = (law.n(), law.vertices());
    check_cap("parameter recovery", verts.len(), STRUCTURAL_CHECK_CAP)?;
    let table = law.to_table()?;
    let logp = |g: &UGraph| table.log_weight(g);
    let support = table.support_graphs()?;
    if mode == RecoverSupport::Full && !table.has_full_support()? {
        return Err(Error::IncompleteSupport);
    }
    if check_structural_markov(&table)?.is_some() {
        return Err(Error::NotStructurallyMarkov);
    }
    let sparse_complete_on = |c: VertexSet| {
        let mut g = UGraph::empty_on(n, verts);
        for (u, v) in UGraph::vertex_pairs(c) {
            g.add_edge(u, v);
        }
        g
    };
    let mut omega = SubsetVector::zeros(n);
    let mut defined = HashSet::new();
    for c in verts.subsets() {
        let w = logp(&sparse_complete_on(c));
        if w > f64::NEG_INFINITY {
            omega.set(c, w);
            defined.insert(c);
        }
    }
    let mut max_error = 0f64;
    for g in &support {
        let t = clique_vector(g)?;
        if let Some((a, _)) = t.iter().find(|(a, _)| !defined.contains(a)) {
            return Err(Error::InvalidInput(format!(
                "support lacks the graph complete on {a} and sparse elsewhere"
            )));
        }
        let err = (omega.dot(&t) - logp(g)).abs();
        max_error = max_error.max(err / 1f64.max(logp(g).abs()));
    }
    if max_error > LOG_RTOL {
        return Err(Error::RecoveryMismatch { max_error });
    }
    Ok(omega)
}

/// A pair of family members whose product leaves the family.
#[derive(Clone, Debug, PartialEq)]
pub struct MetaWitness {
    pub a: VertexSet,
    pub b: VertexSet,
    pub g: UGraph,
    pub g2: UGraph,
    /// `G_A ⋈ G'_B`, not a member.
    pub product: UGraph,
}

/// The family is closed under `G_A ⋈ G'_B` for every covering pair and all
/// members `G, G'` admitting the decomposition.
pub fn check_meta_markov(family: &GraphFamily) -> Result<Option<MetaWitness>> {
    check_cap(
        "meta-Markov check",
        family.vertices().len(),
        STRUCTURAL_CHECK_CAP,
    )?;
    let index = GraphIndex::new(family.n(), family.vertices(), family.members().to_vec());
    for (a, b) in proper_covering_pairs(family.vertices()) {
        let (in_a, in_b) = (index.inside(a), index.inside(b));
        let event = index.event(a, b);
        for &i in &event {
            for &j in &event {
                let product = (index.masks[i] & in_a) | (index.masks[j] & in_b);
                if !index.position.contains_key(&product) {
                    return Ok(Some(MetaWitness {
                        a,
                        b,
                        g: index.graphs[i].clone(),
                        g2: index.graphs[j].clone(),
                        product: index.graph(product),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// The law conditioned on `(A, B)` being a decomposition, as a table.
pub fn conditional_given_decomposition(
    law: &GraphLaw,
    a: VertexSet,
    b: VertexSet,
) -> Result<GraphLaw> {
    if a.union(b) != law.vertices() {
        return Err(Error::InvalidInput(format!(
            "{a} and {b} do not cover {}",
            law.vertices()
        )));
    }
    check_cap("conditioning", law.vertices().len(), STRUCTURAL_CHECK_CAP)?;
    let entries: Vec<(UGraph, f64)> = law
        .support_graphs()?
        .into_iter()
        .filter(|g| is_decomposition(g, a, b))
        .map(|g| {
            let w = law.log_weight(&g);
            (g, w)
        })
        .collect();
    GraphLaw::table(law.n(), law.vertices(), entries)
}

/// Law of `G_A`, a table over graphs on `a`.
pub fn margin(law: &GraphLaw, a: VertexSet) -> Result<GraphLaw> {
    if !a.is_subset(law.vertices()) {
        return Err(Error::InvalidInput(format!(
            "{a} is not inside {}",
            law.vertices()
        )));
    }
    let table = law.to_table()?;
    let mut acc: HashMap<UGraph, Vec<f64>> = HashMap::new();
    for (g, w) in table.entries()? {
        acc.entry(g.induced(a)).or_default().push(w);
    }
    GraphLaw::table(
        law.n(),
        a,
        acc.into_iter().map(|(g, ws)| (g, log_sum_exp(ws))),
    )
}
