//! Brute-force reference computations, written independently of the main
//! algorithms they are compared with.

use crate::dag::Dag;
use crate::graph::UGraph;
use crate::vertex_set::VertexSet;

/// Chordality by repeatedly deleting a vertex whose neighbourhood is complete.
pub fn is_chordal_by_elimination(g: &UGraph) -> bool {
    let mut left = g.vertices();
    'outer: while !left.is_empty() {
        for v in left {
            let nb = g.neighbors(v).intersection(left);
            let simplicial = nb.iter().all(|u| nb.without(u).is_subset(g.neighbors(u)));
            if simplicial {
                left.remove(v);
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Number of chordal graphs among all `2^C(n,2)` labelled graphs.
pub fn count_chordal(n: usize) -> usize {
    let pairs = UGraph::vertex_pairs(VertexSet::full(n));
    (0..1u64 << pairs.len())
        .filter(|&mask| {
            let mut g = UGraph::empty(n);
            for (k, &(u, v)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            is_chordal_by_elimination(&g)
        })
        .count()
}

/// Every DAG on `n` vertices, from all subsets of ordered pairs filtered by a
/// depth-first cycle test.
pub fn all_dags(n: usize) -> Vec<Dag> {
    let arcs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    assert!(
        arcs.len() < 32,
        "too many arcs for brute-force DAG enumeration"
    );
    let mut out = Vec::new();
    for mask in 0..1u64 << arcs.len() {
        let chosen: Vec<(usize, usize)> = arcs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if !has_cycle(n, &chosen) {
            out.push(Dag::from_edges(n, chosen).expect("acyclic by the cycle test"));
        }
    }
    out
}

fn has_cycle(n: usize, arcs: &[(usize, usize)]) -> bool {
    fn visit(v: usize, arcs: &[(usize, usize)], colour: &mut [u8]) -> bool {
        colour[v] = 1;
        for &(_, w) in arcs.iter().filter(|&&(u, _)| u == v) {
            if colour[w] == 1 || (colour[w] == 0 && visit(w, arcs, colour)) {
                return true;
            }
        }
        colour[v] = 2;
        false
    }
    let mut colour = vec![0u8; n];
    (0..n).any(|v| colour[v] == 0 && visit(v, arcs, &mut colour))
}

/// Vertices reachable from `x` along trails that are active given `z`.
///
/// Walks `(vertex, direction)` states: a trail entering a vertex from a child
/// may continue anywhere unless the vertex is observed; entering from a
/// parent it continues to children when unobserved and to parents when the
/// vertex has an observed descendant or is observed.
pub fn reachable_given(d: &Dag, x: VertexSet, z: VertexSet) -> VertexSet {
    let n = d.n();
    let mut anc_z = z;
    loop {
        let grown = anc_z.iter().fold(anc_z, |acc, v| acc.union(d.parents(v)));
        if grown == anc_z {
            break;
        }
        anc_z = grown;
    }
    const UP: usize = 0;
    const DOWN: usize = 1;
    let mut seen = vec![[false; 2]; n];
    let mut stack: Vec<(usize, usize)> = x.iter().map(|v| (v, UP)).collect();
    let mut reached = VertexSet::EMPTY;
    while let Some((v, dir)) = stack.pop() {
        if seen[v][dir] {
            continue;
        }
        seen[v][dir] = true;
        if !z.contains(v) {
            reached.insert(v);
        }
        if dir == UP && !z.contains(v) {
            stack.extend(d.parents(v).iter().map(|p| (p, UP)));
            stack.extend(d.children(v).iter().map(|c| (c, DOWN)));
        } else if dir == DOWN {
            if !z.contains(v) {
                stack.extend(d.children(v).iter().map(|c| (c, DOWN)));
            }
            if anc_z.contains(v) {
                stack.extend(d.parents(v).iter().map(|p| (p, UP)));
            }
        }
    }
    reached
}

/// `x` and `y` are d-separated by `z`, for pairwise disjoint sets.
pub fn d_separated_by_trails(d: &Dag, x: VertexSet, y: VertexSet, z: VertexSet) -> bool {
    reachable_given(d, x, z).is_disjoint(y)
}

/// Every triple `(A, B, C)` of pairwise disjoint sets with `A`, `B` nonempty,
/// in a fixed order.
pub fn disjoint_triples(n: usize) -> Vec<(VertexSet, VertexSet, VertexSet)> {
    let mut out = Vec::new();
    for code in 0..4usize.pow(n as u32) {
        let (mut a, mut b, mut c) = (VertexSet::EMPTY, VertexSet::EMPTY, VertexSet::EMPTY);
        let mut k = code;
        for v in 0..n {
            match k % 4 {
                1 => a.insert(v),
                2 => b.insert(v),
                3 => c.insert(v),
                _ => {}
            }
            k /= 4;
        }
        if !a.is_empty() && !b.is_empty() {
            out.push((a, b, c));
        }
    }
    out
}

/// Which disjoint triples are d-separation statements of `d`.
pub fn separation_signature(d: &Dag, triples: &[(VertexSet, VertexSet, VertexSet)]) -> Vec<bool> {
    triples
        .iter()
        .map(|&(a, b, c)| d_separated_by_trails(d, a, b, c))
        .collect()
}

/// `log ∫ Π_i N(x_i | 0, σ²) IW(σ² | δ, φ) dσ²` by the trapezoid rule in
/// `s = log σ²`; the scalar inverse-Wishart is inverse-gamma with shape
/// `δ/2` and scale `φ/2`.
pub fn univariate_log_marginal_by_quadrature(delta: f64, phi: f64, xs: &[f64]) -> f64 {
    use statrs::function::gamma::ln_gamma;
    let (shape, scale) = (delta / 2.0, phi / 2.0);
    let ss: f64 = xs.iter().map(|x| x * x).sum();
    let m = xs.len() as f64;
    // log of integrand times the Jacobian σ²
    let log_f = |s: f64| {
        let var = s.exp();
        let lik = -0.5 * m * (2.0 * std::f64::consts::PI * var).ln() - ss / (2.0 * var);
        let prior = shape * scale.ln() - ln_gamma(shape) - (shape + 1.0) * s - scale / var;
        lik + prior + s
    };
    let (lo, hi, h) = (-60.0, 60.0, 1e-3);
    let steps = ((hi - lo) / h) as usize;
    let logs: Vec<f64> = (0..=steps).map(|i| log_f(lo + i as f64 * h)).collect();
    let peak = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = logs
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let w = if i == 0 || i == steps { 0.5 } else { 1.0 };
            w * (l - peak).exp()
        })
        .sum();
    peak + (sum * h).ln()
}

/// `∫ f(x) dx` over the real line by the substitution `x = scale · tan θ`
/// followed by tanh-sinh quadrature on `(-π/2, π/2)`.
pub fn integrate_real_line<F: Fn(f64) -> f64>(f: F, scale: f64) -> f64 {
    let half = std::f64::consts::FRAC_PI_2;
    let g = |theta: f64| {
        let c = theta.cos();
        f(scale * theta.tan()) * scale / (c * c)
    };
    let h = 1.0 / 64.0;
    let mut total = 0.0;
    for k in -(6 * 64)..=(6 * 64) {
        let t = k as f64 * h;
        let u = half * t.sinh();
        let theta = half * u.tanh();
        let weight = half * half * t.cosh() / u.cosh().powi(2);
        if theta.abs() >= half {
            continue;
        }
        let v = g(theta);
        if v.is_finite() {
            total += weight * v;
        }
    }
    total * h
}
