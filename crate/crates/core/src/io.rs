//! JSON forms of graphs, DAGs, dagoids, subset vectors, laws, hyperparameters
//! and chain reports.
//!
//! Every writer emits keys in a fixed order and collections in canonical
//! order, so output is byte-stable; every reader accepts what the writer emits.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::dag::{Dag, Dagoid};
use crate::dagoid_law::{DagoidLaw, DagoidLawKind};
use crate::error::{Error, Result};
use crate::gaussian::GaussHyper;
use crate::graph::UGraph;
use crate::law::{GraphLaw, LawKind, Support};
use crate::mcmc::ChainReport;
use crate::subset_vector::SubsetVector;
use crate::vertex_set::VertexSet;

/// A value with a JSON form.
pub trait JsonArtifact: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: JsonArtifact>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(&x.to_json()).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn from_json_str<T: JsonArtifact>(s: &str) -> Result<T> {
    let v: Value =
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))?;
    T::from_json(&v)
}

fn parse<T: for<'de> Deserialize<'de>>(v: &Value, what: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::InvalidInput(format!("bad {what} JSON: {e}")))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeListJson {
    n: usize,
    /// Present only when the vertex set is not `{0, .., n-1}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<usize>>,
    edges: Vec<[usize; 2]>,
}

impl EdgeListJson {
    fn of(n: usize, vertices: VertexSet, edges: Vec<(usize, usize)>) -> Value {
        let listed = (vertices != VertexSet::full(n)).then(|| vertices.iter().collect());
        let raw = EdgeListJson {
            n,
            vertices: listed,
            edges: edges.into_iter().map(|(u, v)| [u, v]).collect(),
        };
        serde_json::to_value(raw).expect("edge lists always serialize")
    }

    fn vertex_set(&self) -> Result<VertexSet> {
        if self.n > crate::vertex_set::MAX_VERTICES {
            return Err(Error::InvalidInput(format!("n = {} is too large", self.n)));
        }
        match &self.vertices {
            None => Ok(VertexSet::full(self.n)),
            Some(vs) if vs.iter().all(|&v| v < self.n) => {
                Ok(VertexSet::from_vertices(vs.iter().copied()))
            }
            Some(vs) => Err(Error::InvalidInput(format!(
                "vertices {vs:?} outside 0..{}",
                self.n
            ))),
        }
    }
}

impl JsonArtifact for UGraph {
    fn to_json(&self) -> Value {
        EdgeListJson::of(self.n(), self.vertices(), self.edges())
    }

    fn from_json(v: &Value) -> Result<Self> {
        let raw: EdgeListJson = parse(v, "graph")?;
        let g = UGraph::from_edges(raw.n, raw.edges.iter().map(|&[u, v]| (u, v)))?;
        let vertices = raw.vertex_set()?;
        if vertices == VertexSet::full(raw.n) {
            return Ok(g);
        }
        if g.edges()
            .iter()
            .any(|&(u, v)| !vertices.contains(u) || !vertices.contains(v))
        {
            return Err(Error::InvalidInput(
                "edge outside the listed vertices".into(),
            ));
        }
        let mut out = UGraph::empty_on(raw.n, vertices);
        for (u, v) in g.edges() {
            out.add_edge(u, v);
        }
        Ok(out)
    }
}

impl JsonArtifact for Dag {
    fn to_json(&self) -> Value {
        EdgeListJson::of(self.n(), self.vertices(), self.edges())
    }

    fn from_json(v: &Value) -> Result<Self> {
        let raw: EdgeListJson = parse(v, "DAG")?;
        let d = Dag::from_edges(raw.n, raw.edges.iter().map(|&[u, v]| (u, v)))?;
        let vertices = raw.vertex_set()?;
        if vertices == VertexSet::full(raw.n) {
            return Ok(d);
        }
        if d.edges()
            .iter()
            .any(|&(u, v)| !vertices.contains(u) || !vertices.contains(v))
        {
            return Err(Error::InvalidInput(
                "edge outside the listed vertices".into(),
            ));
        }
        Ok(d.induced(vertices))
    }
}

impl JsonArtifact for Dagoid {
    fn to_json(&self) -> Value {
        json!({
            "skeleton": self.skeleton().to_json(),
            "immoralities": self.immoralities().iter().map(|&(a, b, c)| [a, b, c]).collect::<Vec<_>>(),
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct DagoidJson {
            skeleton: Value,
            immoralities: Vec<[usize; 3]>,
        }
        let d: DagoidJson = parse(v, "dagoid")?;
        let skeleton = UGraph::from_json(&d.skeleton)?;
        let imm = d
            .immoralities
            .into_iter()
            .map(|[a, b, c]| (a.min(c), b, a.max(c)))
            .collect();
        Dagoid::from_parts(skeleton, imm)
    }
}

/// Number types that can sit in a subset-vector entry.
pub trait JsonScalar: crate::subset_vector::Scalar {
    fn to_value(self) -> Value;
    fn from_value(v: &Value) -> Option<Self>;
}

impl JsonScalar for i64 {
    fn to_value(self) -> Value {
        json!(self)
    }

    fn from_value(v: &Value) -> Option<Self> {
        v.as_i64()
    }
}

impl JsonScalar for f64 {
    fn to_value(self) -> Value {
        json!(self)
    }

    fn from_value(v: &Value) -> Option<Self> {
        v.as_f64()
    }
}

impl<T: JsonScalar> JsonArtifact for SubsetVector<T> {
    fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .iter()
            .map(|(a, x)| json!({ "set": a.iter().collect::<Vec<_>>(), "value": x.to_value() }))
            .collect();
        json!({ "n": self.n(), "entries": entries })
    }

    fn from_json(v: &Value) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Entry {
            set: Vec<usize>,
            value: Value,
        }
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct VectorJson {
            n: usize,
            entries: Vec<Entry>,
        }
        let raw: VectorJson = parse(v, "subset vector")?;
        if raw.n > crate::vertex_set::MAX_VERTICES {
            return Err(Error::InvalidInput(format!("n = {} is too large", raw.n)));
        }
        let mut out = SubsetVector::zeros(raw.n);
        for e in raw.entries {
            if e.set.iter().any(|&u| u >= raw.n) {
                return Err(Error::InvalidInput(format!(
                    "set {:?} outside 0..{}",
                    e.set, raw.n
                )));
            }
            let x = T::from_value(&e.value).ok_or_else(|| {
                Error::InvalidInput(format!("bad value {} in subset vector", e.value))
            })?;
            out.add_at(VertexSet::from_vertices(e.set), x);
        }
        Ok(out)
    }
}

impl JsonArtifact for GraphLaw {
    /// Exponential laws restricted to an explicit family are written as tables.
    fn to_json(&self) -> Value {
        match self.kind() {
            LawKind::Exponential {
                omega,
                support: Support::Full,
            } if self.vertices() == VertexSet::full(self.n()) => {
                json!({ "kind": "exponential", "omega": omega.to_json() })
            }
            _ => {
                let entries: Vec<Value> = self
                    .entries()
                    .expect("table laws enumerate their entries")
                    .into_iter()
                    .map(|(g, w)| json!({ "graph": g.to_json(), "logp": w }))
                    .collect();
                json!({ "kind": "table", "entries": entries })
            }
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v.get("kind").and_then(Value::as_str) {
            Some("exponential") => {
                let omega = SubsetVector::<f64>::from_json(v.get("omega").unwrap_or(&Value::Null))?;
                Ok(GraphLaw::exponential(omega.n(), omega))
            }
            Some("table") => {
                #[derive(Deserialize)]
                #[serde(deny_unknown_fields)]
                struct Entry {
                    graph: Value,
                    logp: f64,
                }
                let entries: Vec<Entry> =
                    parse(v.get("entries").unwrap_or(&Value::Null), "law entries")?;
                let graphs = entries
                    .into_iter()
                    .map(|e| Ok((UGraph::from_json(&e.graph)?, e.logp)))
                    .collect::<Result<Vec<_>>>()?;
                let n = graphs
                    .first()
                    .map(|(g, _)| g.n())
                    .ok_or_else(|| Error::InvalidInput("table law without entries".into()))?;
                GraphLaw::table(n, VertexSet::full(n), graphs)
            }
            _ => Err(Error::InvalidInput(
                "law JSON needs kind `exponential` or `table`".into(),
            )),
        }
    }
}

impl JsonArtifact for DagoidLaw {
    fn to_json(&self) -> Value {
        match self.kind() {
            DagoidLawKind::Exponential(omega) => {
                json!({ "kind": "exponential", "omega": omega.to_json() })
            }
            DagoidLawKind::Table(_) => {
                let entries: Vec<Value> = self
                    .entries()
                    .expect("table laws enumerate their entries")
                    .into_iter()
                    .map(|(d, w)| json!({ "dagoid": d.to_json(), "logp": w }))
                    .collect();
                json!({ "kind": "table", "entries": entries })
            }
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v.get("kind").and_then(Value::as_str) {
            Some("exponential") => {
                let omega = SubsetVector::<f64>::from_json(v.get("omega").unwrap_or(&Value::Null))?;
                Ok(DagoidLaw::exponential(omega.n(), omega))
            }
            Some("table") => {
                #[derive(Deserialize)]
                #[serde(deny_unknown_fields)]
                struct Entry {
                    dagoid: Value,
                    logp: f64,
                }
                let entries: Vec<Entry> =
                    parse(v.get("entries").unwrap_or(&Value::Null), "law entries")?;
                let classes = entries
                    .into_iter()
                    .map(|e| Ok((Dagoid::from_json(&e.dagoid)?, e.logp)))
                    .collect::<Result<Vec<_>>>()?;
                let n = classes
                    .first()
                    .map(|(d, _)| d.n())
                    .ok_or_else(|| Error::InvalidInput("table law without entries".into()))?;
                DagoidLaw::table(n, classes)
            }
            _ => Err(Error::InvalidInput(
                "law JSON needs kind `exponential` or `table`".into(),
            )),
        }
    }
}

impl JsonArtifact for GaussHyper {
    fn to_json(&self) -> Value {
        let phi = self.phi();
        let rows: Vec<Vec<f64>> = (0..phi.nrows())
            .map(|i| phi.row(i).iter().copied().collect())
            .collect();
        json!({ "delta": self.delta(), "phi": rows })
    }

    fn from_json(v: &Value) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct HyperJson {
            delta: f64,
            phi: Vec<Vec<f64>>,
        }
        let h: HyperJson = parse(v, "hyperparameter")?;
        let k = h.phi.len();
        if h.phi.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidInput("phi must be square".into()));
        }
        GaussHyper::new(h.delta, DMatrix::from_fn(k, k, |i, j| h.phi[i][j]))
    }
}

/// Graphs listed under `top_graphs` in a written report.
pub const REPORT_TOP_GRAPHS: usize = 10;

/// Summary form of a [`ChainReport`] as written to JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportSummary {
    pub n: usize,
    pub steps: u64,
    pub acceptance_rate: f64,
    pub edge_freq: Vec<(usize, usize, f64)>,
    pub top_graphs: Vec<TopGraph>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopGraph {
    pub graph: Value,
    pub freq: f64,
}

impl ReportSummary {
    pub fn of(report: &ChainReport) -> Self {
        ReportSummary {
            n: report.n,
            steps: report.steps,
            acceptance_rate: report.acceptance_rate(),
            edge_freq: report.edge_freq().into_iter().map(|((u, v), f)| (u, v, f)).collect(),
            top_graphs: report
                .top_graphs(REPORT_TOP_GRAPHS)
                .into_iter()
                .map(|(edges, freq)| TopGraph {
                    graph: json!({ "n": report.n, "edges": edges.into_iter().map(|(u, v)| [u, v]).collect::<Vec<_>>() }),
                    freq,
                })
                .collect(),
        }
    }
}

impl JsonArtifact for ReportSummary {
    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report summaries always serialize")
    }

    fn from_json(v: &Value) -> Result<Self> {
        let r: ReportSummary = parse(v, "report")?;
        for t in &r.top_graphs {
            UGraph::from_json(&t.graph)?;
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip<T: JsonArtifact + PartialEq + std::fmt::Debug>(x: &T) {
        let s = to_json_string(x);
        let back: T = from_json_str(&s).unwrap();
        assert_eq!(&back, x);
        assert_eq!(to_json_string(&back), s);
    }

    #[test]
    fn graph_and_vector_forms() {
        let g = UGraph::from_edges(3, [(1, 0), (1, 2)]).unwrap();
        assert_eq!(g.to_json(), json!({"n": 3, "edges": [[0, 1], [1, 2]]}));
        round_trip(&g);
        let t = crate::clique::clique_vector(&g).unwrap();
        assert_eq!(
            t.to_json(),
            json!({"n": 3, "entries": [
                {"set": [1], "value": -1},
                {"set": [0, 1], "value": 1},
                {"set": [1, 2], "value": 1},
            ]})
        );
        round_trip(&t);
    }

    #[test]
    fn dag_and_dagoid_forms() {
        let d = Dag::from_edges(3, [(0, 2), (1, 2)]).unwrap();
        round_trip(&d);
        round_trip(&Dagoid::of(&d));
        assert!(from_json_str::<Dag>(r#"{"n":2,"edges":[[0,1],[1,0]]}"#).is_err());
    }

    #[test]
    fn law_and_hyper_forms() {
        let law = crate::law::builtin_law("uniform", &Default::default(), 3).unwrap();
        round_trip(&law);
        let arm = crate::law::builtin_law("armstrong", &Default::default(), 3).unwrap();
        let back: GraphLaw = from_json_str(&to_json_string(&arm)).unwrap();
        for (g, w) in arm.entries().unwrap() {
            assert!((back.log_density(&g).unwrap() - w).abs() < 1e-14);
        }
        round_trip(&GaussHyper::identity(3, 3.0).unwrap());
        round_trip(&DagoidLaw::exponential(3, SubsetVector::zeros(3)));
    }

    #[test]
    fn rejects_unknown_fields() {
        assert!(from_json_str::<UGraph>(r#"{"n":2,"edges":[],"x":1}"#).is_err());
        assert!(from_json_str::<GraphLaw>(r#"{"kind":"other"}"#).is_err());
    }
}
