//! Structural Markov graph laws.
//!
//! Decomposable graphs and dagoids (Markov equivalence classes of DAGs), their
//! clique and d-clique vectors, the exponential families of graph laws with
//! those vectors as natural statistic, conjugate updating under compatible
//! Gaussian sampling, and a single-edge Metropolis–Hastings sampler. Every
//! construction has an exhaustive counterpart for small vertex counts.

// `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod clique;
pub mod dag;
pub mod dagoid_law;
pub mod error;
pub mod gaussian;
pub mod graph;
pub mod io;
pub mod law;
pub mod mcmc;
pub mod numeric;
pub mod oracle;
pub mod subset_vector;
pub mod vertex_set;

pub use dag::{Dag, Dagoid};
pub use error::{Error, Result};
pub use graph::UGraph;
pub use law::{GraphFamily, GraphLaw};
pub use subset_vector::SubsetVector;
pub use vertex_set::VertexSet;
