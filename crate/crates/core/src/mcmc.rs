//! Single-edge Metropolis–Hastings over decomposable graphs, with exact
//! enumeration diagnostics.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::clique::{clique_vector, sparse_delta};
use crate::error::{check_cap, Error, Result};
use crate::graph::{enumerate_decomposable_on, is_chordal, UGraph};
use crate::numeric::{log_sum_exp, pairs};
use crate::subset_vector::SubsetVector;
use crate::vertex_set::VertexSet;

/// Largest vertex count for exact distributions.
pub const EXACT_CAP: usize = 6;

/// Current graph of a chain with its clique vector, log-density and RNG.
///
/// The log-density is always `ω · t` evaluated from the cached `t`, which is
/// kept exact by integer updates, so both equal a full recomputation.
#[derive(Clone, Debug)]
pub struct ChainState {
    current: UGraph,
    t: SubsetVector<i64>,
    log_density: f64,
    rng: ChaCha8Rng,
    steps: u64,
    accepted: u64,
}

impl ChainState {
    /// Chain at `start` whose random stream is fixed by `seed` and `stream`.
    pub fn new(start: UGraph, omega: &SubsetVector<f64>, seed: u64, stream: u64) -> Result<Self> {
        if omega.n() != start.n() {
            return Err(Error::InvalidInput(
                "parameter and graph differ in vertex count".into(),
            ));
        }
        let t = clique_vector(&start)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Ok(ChainState {
            log_density: omega.dot(&t),
            current: start,
            t,
            rng,
            steps: 0,
            accepted: 0,
        })
    }

    pub fn current(&self) -> &UGraph {
        &self.current
    }

    pub fn t(&self) -> &SubsetVector<i64> {
        &self.t
    }

    pub fn log_density(&self) -> f64 {
        self.log_density
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn accepted(&self) -> u64 {
        self.accepted
    }

    /// Cached `t` and log-density agree exactly with a fresh computation.
    pub fn is_consistent(&self, omega: &SubsetVector<f64>) -> bool {
        clique_vector(&self.current).is_ok_and(|t| t == self.t && omega.dot(&t) == self.log_density)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StepOutcome {
    /// The toggle was accepted; `delta` is the change in `t`.
    Accepted {
        pair: (usize, usize),
        delta: SubsetVector<i64>,
    },
    /// The toggled graph is not decomposable.
    RejectedNotDecomposable { pair: (usize, usize) },
    /// The acceptance draw failed.
    Rejected { pair: (usize, usize) },
    /// Fewer than two vertices; nothing to propose.
    NoProposal,
}

fn nth_pair(n: usize, mut k: usize) -> (usize, usize) {
    for u in 0..n {
        let row = n - u - 1;
        if k < row {
            return (u, u + 1 + k);
        }
        k -= row;
    }
    unreachable!("pair index out of range")
}

/// One step: toggle a uniformly chosen vertex pair and accept with
/// probability `min(1, exp{ω · Δt})`, or reject outright when the result is
/// not decomposable.
pub fn mh_step(state: &mut ChainState, omega: &SubsetVector<f64>) -> StepOutcome {
    state.steps += 1;
    let n = state.current.n();
    let total = pairs(n);
    if total == 0 {
        return StepOutcome::NoProposal;
    }
    let pair = nth_pair(n, state.rng.random_range(0..total));
    let u: f64 = state.rng.random();
    let (a, b) = pair;
    let proposal = state.current.toggled(a, b);
    if !is_chordal(&proposal) {
        return StepOutcome::RejectedNotDecomposable { pair };
    }
    let delta = sparse_delta(&state.current, a, b);
    let log_ratio = omega.dot(&delta);
    if log_ratio < 0.0 && u >= log_ratio.exp() {
        return StepOutcome::Rejected { pair };
    }
    state.t += &delta;
    state.log_density = omega.dot(&state.t);
    state.current = proposal;
    state.accepted += 1;
    debug_assert!(state.is_consistent(omega));
    StepOutcome::Accepted { pair, delta }
}

/// Post-burn-in summary of one or more chains.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub n: usize,
    /// Recorded (post-burn-in) steps.
    pub steps: u64,
    /// Proposals and acceptances over every step, burn-in included.
    pub proposals: u64,
    pub accepted: u64,
    /// Visit counts keyed by sorted edge list.
    pub visits: BTreeMap<Vec<(usize, usize)>, u64>,
    /// Recorded steps at which each pair was an edge, in pair order.
    pub edge_counts: Vec<((usize, usize), u64)>,
}

impl ChainReport {
    pub fn empty(n: usize) -> Self {
        ChainReport {
            n,
            steps: 0,
            proposals: 0,
            accepted: 0,
            visits: BTreeMap::new(),
            edge_counts: UGraph::vertex_pairs(VertexSet::full(n))
                .into_iter()
                .map(|e| (e, 0))
                .collect(),
        }
    }

    pub fn acceptance_rate(&self) -> f64 {
        if self.proposals == 0 {
            0.0
        } else {
            self.accepted as f64 / self.proposals as f64
        }
    }

    pub fn edge_freq(&self) -> Vec<((usize, usize), f64)> {
        self.edge_counts
            .iter()
            .map(|&(e, c)| (e, c as f64 / self.steps.max(1) as f64))
            .collect()
    }

    /// Empirical frequency of each visited graph.
    pub fn frequencies(&self) -> BTreeMap<Vec<(usize, usize)>, f64> {
        self.visits
            .iter()
            .map(|(k, &c)| (k.clone(), c as f64 / self.steps.max(1) as f64))
            .collect()
    }

    /// Most visited graphs, ties broken by edge list.
    pub fn top_graphs(&self, k: usize) -> Vec<(Vec<(usize, usize)>, f64)> {
        let mut all: Vec<(Vec<(usize, usize)>, f64)> = self.frequencies().into_iter().collect();
        all.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        all.truncate(k);
        all
    }

    /// Pools the counts of two reports on the same vertex count.
    pub fn merge(&mut self, other: &ChainReport) -> Result<()> {
        if self.n != other.n {
            return Err(Error::InvalidInput(
                "cannot merge reports over different n".into(),
            ));
        }
        self.steps += other.steps;
        self.proposals += other.proposals;
        self.accepted += other.accepted;
        for (k, &c) in &other.visits {
            *self.visits.entry(k.clone()).or_default() += c;
        }
        for (mine, theirs) in self.edge_counts.iter_mut().zip(&other.edge_counts) {
            mine.1 += theirs.1;
        }
        Ok(())
    }

    fn record(&mut self, g: &UGraph) {
        self.steps += 1;
        *self.visits.entry(g.edges()).or_default() += 1;
        for (e, c) in &mut self.edge_counts {
            if g.has_edge(e.0, e.1) {
                *c += 1;
            }
        }
    }
}

/// Runs one chain from the empty graph for `steps` steps, recording the
/// state after each step past `burn_in`.
pub fn run_chain(
    omega: &SubsetVector<f64>,
    n: usize,
    steps: u64,
    burn_in: u64,
    seed: u64,
) -> Result<ChainReport> {
    run_chain_stream(omega, n, steps, burn_in, seed, 0)
}

fn run_chain_stream(
    omega: &SubsetVector<f64>,
    n: usize,
    steps: u64,
    burn_in: u64,
    seed: u64,
    stream: u64,
) -> Result<ChainReport> {
    if steps <= burn_in {
        return Err(Error::InvalidInput(format!(
            "steps = {steps} must exceed burn-in = {burn_in}"
        )));
    }
    let mut state = ChainState::new(UGraph::empty(n), omega, seed, stream)?;
    let mut report = ChainReport::empty(n);
    for i in 0..steps {
        if mh_step(&mut state, omega) != StepOutcome::NoProposal {
            report.proposals += 1;
        }
        if i >= burn_in {
            report.record(state.current());
        }
    }
    report.accepted = state.accepted();
    Ok(report)
}

/// `chains` independent chains on separate streams of one seed, run
/// concurrently and merged in stream order.
pub fn run_chains(
    omega: &SubsetVector<f64>,
    n: usize,
    steps: u64,
    burn_in: u64,
    seed: u64,
    chains: usize,
) -> Result<ChainReport> {
    if chains == 0 {
        return Err(Error::InvalidInput("at least one chain is required".into()));
    }
    let reports: Vec<Result<ChainReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..chains as u64)
            .map(|k| scope.spawn(move || run_chain_stream(omega, n, steps, burn_in, seed, k)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("chain thread panicked"))
            .collect()
    });
    let mut merged = ChainReport::empty(n);
    for r in reports {
        merged.merge(&r?)?;
    }
    Ok(merged)
}

/// `π(G) ∝ exp{ω · t(G)}` over every decomposable graph, in edge-mask order.
pub fn exact_distribution(omega: &SubsetVector<f64>, n: usize) -> Result<Vec<(UGraph, f64)>> {
    check_cap("exact distribution", n, EXACT_CAP)?;
    let graphs: Vec<UGraph> = enumerate_decomposable_on(n, VertexSet::full(n)).collect();
    let logw: Vec<f64> = graphs
        .iter()
        .map(|g| clique_vector(g).map(|t| omega.dot(&t)))
        .collect::<Result<_>>()?;
    let z = log_sum_exp(logw.iter().copied());
    Ok(graphs
        .into_iter()
        .zip(logw)
        .map(|(g, w)| (g, (w - z).exp()))
        .collect())
}

/// `½ Σ_G |empirical(G) - exact(G)|`.
pub fn tv_distance(report: &ChainReport, exact: &[(UGraph, f64)]) -> f64 {
    let empirical = report.frequencies();
    let mut tv = 0.0;
    let mut seen = 0.0;
    for (g, p) in exact {
        let q = empirical.get(&g.edges()).copied().unwrap_or(0.0);
        seen += q;
        tv += (p - q).abs();
    }
    // empirical mass on graphs absent from `exact`
    tv += (1.0 - seen).max(0.0);
    tv / 2.0
}

/// TV distance between two distributions over the same graphs.
pub fn tv_between(p: &[(UGraph, f64)], q: &[(UGraph, f64)]) -> f64 {
    let q: BTreeMap<Vec<(usize, usize)>, f64> = q.iter().map(|(g, x)| (g.edges(), *x)).collect();
    let mut tv = 0.0;
    let mut seen = 0.0;
    for (g, x) in p {
        let y = q.get(&g.edges()).copied().unwrap_or(0.0);
        seen += y;
        tv += (x - y).abs();
    }
    (tv + (q.values().sum::<f64>() - seen).max(0.0)) / 2.0
}

/// `log P(from → to)` of one sampler step; `-∞` unless `to` equals `from` or
/// differs by a single decomposable toggle.
pub fn transition_log_prob(omega: &SubsetVector<f64>, from: &UGraph, to: &UGraph) -> Result<f64> {
    let n = from.n();
    let total = pairs(n);
    if total == 0 {
        return Ok(if from == to { 0.0 } else { f64::NEG_INFINITY });
    }
    let log_pick = -(total as f64).ln();
    let move_prob = |u: usize, v: usize| -> Option<f64> {
        let h = from.toggled(u, v);
        is_chordal(&h).then(|| log_pick + omega.dot(&sparse_delta(from, u, v)).min(0.0))
    };
    if from == to {
        let leave: f64 = UGraph::vertex_pairs(from.vertices())
            .into_iter()
            .filter_map(|(u, v)| move_prob(u, v))
            .map(f64::exp)
            .sum();
        return Ok((1.0 - leave).max(0.0).ln());
    }
    let diff: Vec<(usize, usize)> = UGraph::vertex_pairs(from.vertices())
        .into_iter()
        .filter(|&(u, v)| from.has_edge(u, v) != to.has_edge(u, v))
        .collect();
    match diff.as_slice() {
        [(u, v)] => Ok(move_prob(*u, *v).unwrap_or(f64::NEG_INFINITY)),
        _ => Ok(f64::NEG_INFINITY),
    }
}
