//! Zero-mean Gaussian sampling with an inverse-Wishart hyper law: marginal
//! data likelihoods of vertex subsets, their combination through clique
//! vectors, conjugate updating of `ω`, and exhaustive MAP search.
//!
//! `Σ ~ IW(δ; Φ)` has density proportional to
//! `|Σ|^{-(δ+2q)/2} exp{-tr(Σ^{-1} Φ)/2}` for `q × q` matrices. Under this
//! convention the margin of `Σ` on `A` is `IW(δ; Φ_A)`, so `p_A` does not
//! depend on which superset of `A` it is computed from.

use nalgebra::DMatrix;
use statrs::function::gamma::ln_gamma;

use crate::clique::clique_vector;
use crate::dag::Dagoid;
use crate::dagoid_law::enumerate_dagoids;
use crate::error::{check_cap, Error, Result};
use crate::graph::{enumerate_decomposable_on, UGraph, ENUMERATION_CAP};
use crate::subset_vector::{SubsetVector, DENSE_CAP};
use crate::vertex_set::VertexSet;

/// Observations, one row per sample and one column per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct DataMatrix {
    x: DMatrix<f64>,
}

impl DataMatrix {
    /// `rows` samples of `cols` variables given row by row.
    pub fn from_rows(cols: usize, rows: &[Vec<f64>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput(format!(
                "every row needs {cols} values"
            )));
        }
        if rows.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(
                "data contain a non-finite value".into(),
            ));
        }
        Ok(DataMatrix {
            x: DMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]),
        })
    }

    pub fn empty(cols: usize) -> Self {
        DataMatrix {
            x: DMatrix::zeros(0, cols),
        }
    }

    pub fn n_obs(&self) -> usize {
        self.x.nrows()
    }

    pub fn n_vars(&self) -> usize {
        self.x.ncols()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.x
    }

    /// Raw scatter `XᵀX`.
    pub fn scatter(&self) -> DMatrix<f64> {
        self.x.transpose() * &self.x
    }

    /// Rows `start..end`.
    pub fn rows(&self, start: usize, end: usize) -> Self {
        DataMatrix {
            x: self.x.rows(start, end - start).into_owned(),
        }
    }
}

/// Parameters `(δ, Φ)` of the inverse-Wishart law of `Σ`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussHyper {
    delta: f64,
    phi: DMatrix<f64>,
}

impl GaussHyper {
    /// Requires `δ > 0` and `Φ` symmetric to within `1e-12` and positive definite.
    pub fn new(delta: f64, phi: DMatrix<f64>) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "delta = {delta} must be positive"
            )));
        }
        if !phi.is_square() {
            return Err(Error::InvalidInput("phi must be square".into()));
        }
        let asym = (&phi - phi.transpose()).abs().max();
        if !(asym <= 1e-12) {
            return Err(Error::InvalidInput("phi is not symmetric".into()));
        }
        if phi.clone().cholesky().is_none() {
            return Err(Error::InvalidInput("phi is not positive definite".into()));
        }
        Ok(GaussHyper { delta, phi })
    }

    /// `δ` with `Φ = I`.
    pub fn identity(n: usize, delta: f64) -> Result<Self> {
        Self::new(delta, DMatrix::identity(n, n))
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn phi(&self) -> &DMatrix<f64> {
        &self.phi
    }

    pub fn n_vars(&self) -> usize {
        self.phi.nrows()
    }

    /// Conjugate update `(δ + m, Φ + XᵀX)`.
    pub fn updated(&self, x: &DataMatrix) -> Result<Self> {
        check_dims(self, x)?;
        Ok(GaussHyper {
            delta: self.delta + x.n_obs() as f64,
            phi: &self.phi + x.scatter(),
        })
    }
}

fn check_dims(h: &GaussHyper, x: &DataMatrix) -> Result<()> {
    if h.n_vars() != x.n_vars() {
        return Err(Error::InvalidInput(format!(
            "hyperparameter has {} variables, data have {}",
            h.n_vars(),
            x.n_vars()
        )));
    }
    Ok(())
}

/// `log Γ_q(a) = q(q-1)/4 · log π + Σ_{j=1..q} log Γ(a + (1-j)/2)`.
pub fn ln_multigamma(q: usize, a: f64) -> f64 {
    let base = (q * q.saturating_sub(1)) as f64 / 4.0 * std::f64::consts::PI.ln();
    base + (1..=q)
        .map(|j| ln_gamma(a + (1.0 - j as f64) / 2.0))
        .sum::<f64>()
}

fn submatrix(m: &DMatrix<f64>, a: VertexSet) -> DMatrix<f64> {
    let idx: Vec<usize> = a.iter().collect();
    DMatrix::from_fn(idx.len(), idx.len(), |i, j| m[(idx[i], idx[j])])
}

fn log_det_pd(m: DMatrix<f64>, what: &str) -> Result<f64> {
    let chol = m
        .cholesky()
        .ok_or_else(|| Error::NumericalFailure(format!("{what} is not positive definite")))?;
    Ok(2.0
        * chol
            .l_dirty()
            .diagonal()
            .iter()
            .map(|d| d.ln())
            .sum::<f64>())
}

fn log_marginal_with(
    h: &GaussHyper,
    scatter: &DMatrix<f64>,
    m: usize,
    a: VertexSet,
) -> Result<f64> {
    if a.is_empty() || m == 0 {
        return Ok(0.0);
    }
    let q = a.len();
    let (mf, qf, d) = (m as f64, q as f64, h.delta);
    let phi_a = submatrix(&h.phi, a);
    let post_a = &phi_a + submatrix(scatter, a);
    Ok(
        -(mf * qf / 2.0) * std::f64::consts::PI.ln() + ln_multigamma(q, (d + mf + qf - 1.0) / 2.0)
            - ln_multigamma(q, (d + qf - 1.0) / 2.0)
            + ((d + qf - 1.0) / 2.0) * log_det_pd(phi_a, "prior scale")?
            - ((d + mf + qf - 1.0) / 2.0) * log_det_pd(post_a, "updated scale")?,
    )
}

/// `log p_A(x_A)`, the marginal likelihood of the columns in `a`.
pub fn clique_log_marginal(h: &GaussHyper, x: &DataMatrix, a: VertexSet) -> Result<f64> {
    check_dims(h, x)?;
    if !a.fits(h.n_vars()) {
        return Err(Error::InvalidInput(format!(
            "{a} is outside the data columns"
        )));
    }
    log_marginal_with(h, &x.scatter(), x.n_obs(), a)
}

/// `log p_A(x_A)` for every `A ⊆ V`, computed once.
#[derive(Clone, Debug, PartialEq)]
pub struct CliqueMarginalTable {
    table: SubsetVector<f64>,
}

impl CliqueMarginalTable {
    pub fn new(h: &GaussHyper, x: &DataMatrix) -> Result<Self> {
        check_dims(h, x)?;
        let n = h.n_vars();
        check_cap("clique marginal table", n, DENSE_CAP)?;
        let s = x.scatter();
        let mut table = SubsetVector::zeros(n);
        for a in VertexSet::full(n).subsets() {
            table.set(a, log_marginal_with(h, &s, x.n_obs(), a)?);
        }
        Ok(CliqueMarginalTable { table })
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn get(&self, a: VertexSet) -> f64 {
        self.table.get(a)
    }

    pub fn as_vector(&self) -> &SubsetVector<f64> {
        &self.table
    }

    /// `Σ_A t_A(G) log p_A`.
    pub fn graph_log_marginal(&self, g: &UGraph) -> Result<f64> {
        Ok(self.table.dot(&clique_vector(g)?))
    }

    /// `Σ_A t_A(D) log p_A`.
    pub fn dagoid_log_marginal(&self, d: &Dagoid) -> f64 {
        self.table.dot(d.tvec())
    }
}

/// `log π^(G)(x) = Σ_A t_A(G) log p_A(x_A)`, evaluating only the sets in the support of `t(G)`.
pub fn graph_log_marginal(h: &GaussHyper, x: &DataMatrix, g: &UGraph) -> Result<f64> {
    check_dims(h, x)?;
    let s = x.scatter();
    clique_vector(g)?
        .iter()
        .map(|(a, t)| Ok(t as f64 * log_marginal_with(h, &s, x.n_obs(), a)?))
        .sum()
}

/// `log π^(D)(x) = Σ_A t_A(D) log p_A(x_A)`.
pub fn dagoid_log_marginal(h: &GaussHyper, x: &DataMatrix, d: &Dagoid) -> Result<f64> {
    check_dims(h, x)?;
    let s = x.scatter();
    d.tvec()
        .iter()
        .map(|(a, t)| Ok(t as f64 * log_marginal_with(h, &s, x.n_obs(), a)?))
        .sum()
}

/// `ω'_A = ω_A + log p_A(x_A)` for every `A`.
pub fn posterior_omega(
    omega: &SubsetVector<f64>,
    h: &GaussHyper,
    x: &DataMatrix,
) -> Result<SubsetVector<f64>> {
    if omega.n() != h.n_vars() {
        return Err(Error::InvalidInput(
            "prior parameter and data differ in vertex count".into(),
        ));
    }
    Ok(omega + CliqueMarginalTable::new(h, x)?.as_vector())
}

/// Relative band within which two scores count as tied.
const TIE_RTOL: f64 = 1e-12;

fn better(score: f64, best: f64) -> bool {
    score > best + TIE_RTOL * 1f64.max(best.abs())
}

/// `argmax_G ω'·t(G)` over decomposable graphs; ties go to the smallest sorted edge list.
pub fn map_graph(omega: &SubsetVector<f64>, n: usize) -> Result<UGraph> {
    check_cap("MAP search", n, ENUMERATION_CAP)?;
    let mut graphs: Vec<UGraph> = enumerate_decomposable_on(n, VertexSet::full(n)).collect();
    graphs.sort_by_cached_key(UGraph::edges);
    let mut best: Option<(f64, UGraph)> = None;
    for g in graphs {
        let score = omega.dot(&clique_vector(&g)?);
        if best.as_ref().is_none_or(|(b, _)| better(score, *b)) {
            best = Some((score, g));
        }
    }
    Ok(best.expect("at least the empty graph").1)
}

/// `argmax_D ω'·t(D)` over dagoids; ties go to the smallest skeleton edge
/// list, then the smallest immorality set.
pub fn map_dagoid(omega: &SubsetVector<f64>, n: usize) -> Result<Dagoid> {
    let mut best: Option<(f64, Dagoid)> = None;
    for class in enumerate_dagoids(n)? {
        let score = omega.dot(class.dagoid.tvec());
        if best.as_ref().is_none_or(|(b, _)| better(score, *b)) {
            best = Some((score, class.dagoid));
        }
    }
    Ok(best.expect("at least the sparse dagoid").1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    fn data() -> DataMatrix {
        DataMatrix::from_rows(
            3,
            &[
                vec![0.3, -1.2, 0.8],
                vec![1.1, 0.4, -0.2],
                vec![-0.7, 0.9, 0.5],
                vec![0.2, 0.1, -1.4],
            ],
        )
        .unwrap()
    }

    #[test]
    fn trivial_marginals() {
        let h = GaussHyper::identity(3, 3.0).unwrap();
        assert_eq!(
            clique_log_marginal(&h, &data(), VertexSet::EMPTY).unwrap(),
            0.0
        );
        assert_eq!(
            clique_log_marginal(&h, &DataMatrix::empty(3), vs(&[0, 1])).unwrap(),
            0.0
        );
    }

    #[test]
    fn univariate_closed_form() {
        // Student-t form of the inverse-gamma mixture of normals
        let h = GaussHyper::identity(1, 3.0).unwrap();
        let x = DataMatrix::from_rows(1, &[vec![0.5]]).unwrap();
        let got = clique_log_marginal(&h, &x, vs(&[0])).unwrap();
        let (a, b) = (1.5f64, 0.5f64);
        let expect = ln_gamma(a + 0.5) - ln_gamma(a) + a * b.ln()
            - (a + 0.5) * (b + 0.125f64).ln()
            - 0.5 * (2.0 * std::f64::consts::PI).ln();
        assert!((got - expect).abs() < 1e-12);
    }

    #[test]
    fn graph_marginal_factorises() {
        let h = GaussHyper::identity(3, 3.0).unwrap();
        let x = data();
        let path = UGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let p = |a: &[usize]| clique_log_marginal(&h, &x, vs(a)).unwrap();
        let direct = graph_log_marginal(&h, &x, &path).unwrap();
        assert!((direct - (p(&[0, 1]) + p(&[1, 2]) - p(&[1]))).abs() < 1e-12);
        let table = CliqueMarginalTable::new(&h, &x).unwrap();
        assert!((table.graph_log_marginal(&path).unwrap() - direct).abs() < 1e-12);
        assert!(
            (table.graph_log_marginal(&UGraph::complete(3)).unwrap() - p(&[0, 1, 2])).abs() < 1e-12
        );
    }

    #[test]
    fn sequential_equals_batch() {
        let h = GaussHyper::identity(3, 2.5).unwrap();
        let x = data();
        let a = VertexSet::full(3);
        let batch = clique_log_marginal(&h, &x, a).unwrap();
        let first = x.rows(0, 2);
        let seq = clique_log_marginal(&h, &first, a).unwrap()
            + clique_log_marginal(&h.updated(&first).unwrap(), &x.rows(2, 4), a).unwrap();
        assert!((batch - seq).abs() < 1e-9);
    }

    #[test]
    fn map_ties_and_signal() {
        assert_eq!(
            map_graph(&SubsetVector::zeros(3), 3).unwrap(),
            UGraph::empty(3)
        );
        let omega = SubsetVector::from_entries(3, [(vs(&[0, 1]), 5.0)]);
        assert_eq!(
            map_graph(&omega, 3).unwrap(),
            UGraph::from_edges(3, [(0, 1)]).unwrap()
        );
        assert_eq!(
            map_dagoid(&SubsetVector::zeros(3), 3).unwrap(),
            Dagoid::sparse(3)
        );
    }

    #[test]
    fn hyper_validation() {
        assert!(GaussHyper::new(0.0, DMatrix::identity(2, 2)).is_err());
        assert!(
            GaussHyper::new(3.0, DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0])).is_err()
        );
        assert!(
            GaussHyper::new(3.0, DMatrix::from_row_slice(2, 2, &[1.0, 0.1, 0.0, 1.0])).is_err()
        );
    }
}
