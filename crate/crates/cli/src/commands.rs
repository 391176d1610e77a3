use serde_json::{json, Value};
use structmark::acceptance;
use structmark::clique::clique_vector;
use structmark::dag::{
    d_clique_vector, enumerate_dags, markov_equivalent, skeleton_and_immoralities,
};
use structmark::dagoid_law::{check_dagoid_structural_markov, enumerate_dagoids};
use structmark::gaussian::{map_dagoid, map_graph, posterior_omega, GaussHyper};
use structmark::graph::enumerate_decomposable;
use structmark::io::{to_json_string, JsonArtifact, ReportSummary};
use structmark::law::{check_meta_markov, check_structural_markov};
use structmark::mcmc::run_chains;
use structmark::{Dag, Dagoid, Error, GraphFamily, Result, SubsetVector, UGraph, VertexSet};

use crate::args::{ClassSource, Command, EnumerateKind, Over, Structure};
use crate::input;

/// What a subcommand produced.
pub enum Output {
    /// A single JSON document.
    Doc(Value),
    /// One compact JSON document per line; `key` names the item kind.
    Stream {
        key: &'static str,
        items: Vec<Value>,
    },
    /// Already written elsewhere.
    Nothing,
    /// Acceptance results; the run fails unless all passed.
    Oracle(Vec<acceptance::Outcome>),
}

fn set_json(a: VertexSet) -> Value {
    json!(a.iter().collect::<Vec<_>>())
}

pub fn run(command: Command) -> Result<Output> {
    match command {
        Command::Enumerate {
            kind,
            n,
            count_only,
        } => enumerate(kind, n, count_only),
        Command::Tvec(s) => tvec(s),
        Command::LawEval { law, graph } => {
            let law = input::graph_law(&law)?;
            let g: UGraph = input::load(&graph)?;
            Ok(Output::Doc(json!({
                "log_density": law.log_density(&g)?,
                "log_prob": law.log_prob(&g)?,
            })))
        }
        Command::CheckSm { law, over } => match over {
            Over::Graphs => check_graph_law(&input::graph_law(&law)?),
            Over::Dagoids => check_dagoid_law(&input::dagoid_law(&law)?),
        },
        Command::CheckMeta {
            family,
            n,
            lower,
            upper,
        } => check_meta(&family, n, lower.as_deref(), upper.as_deref()),
        Command::Posterior {
            omega,
            hyper,
            data,
            header,
            out,
        } => {
            let omega: SubsetVector<f64> = input::load(&omega)?;
            let hyper: GaussHyper = input::load(&hyper)?;
            let x = input::data(&data, header)?;
            let post = posterior_omega(&omega, &hyper, &x)?;
            match out {
                Some(path) => {
                    std::fs::write(&path, to_json_string(&post))
                        .map_err(|e| Error::InvalidInput(format!("cannot write {path}: {e}")))?;
                    Ok(Output::Nothing)
                }
                None => Ok(Output::Doc(post.to_json())),
            }
        }
        Command::Map { omega, over } => {
            let omega: SubsetVector<f64> = input::load(&omega)?;
            let n = omega.n();
            Ok(Output::Doc(match over {
                Over::Graphs => map_graph(&omega, n)?.to_json(),
                Over::Dagoids => map_dagoid(&omega, n)?.to_json(),
            }))
        }
        Command::Mcmc {
            omega,
            steps,
            burn_in,
            seed,
            chains,
        } => {
            let omega: SubsetVector<f64> = input::load(&omega)?;
            let report = run_chains(&omega, omega.n(), steps, burn_in, seed, chains)?;
            Ok(Output::Doc(ReportSummary::of(&report).to_json()))
        }
        Command::DagEquiv { dag } => {
            let (d, e): (Dag, Dag) = match dag.as_slice() {
                [x, y] => (input::load(x)?, input::load(y)?),
                _ => unreachable!("argument count checked before dispatch"),
            };
            let verdict = markov_equivalent(&d, &e)?;
            Ok(Output::Doc(json!({
                "equivalent": verdict,
                "skeleton_immoralities": skeleton_and_immoralities(&d) == skeleton_and_immoralities(&e),
                "d_clique_vector": d_clique_vector(&d) == d_clique_vector(&e),
            })))
        }
        Command::Dagoid { dag } => {
            let dag: Dag = input::load(&dag)?;
            let class = Dagoid::of(&dag);
            let members: Vec<Value> = class.members()?.iter().map(Dag::to_json).collect();
            Ok(Output::Doc(
                json!({ "dagoid": class.to_json(), "members": members }),
            ))
        }
        Command::Remainder { source, set } => remainder(source, &set),
        Command::Oracle { criterion } => {
            let ids: Vec<u8> = if criterion.is_empty() {
                acceptance::CRITERIA.iter().map(|&(id, _)| id).collect()
            } else {
                criterion
            };
            let outcomes = ids
                .into_iter()
                .map(|id| {
                    acceptance::run(id)
                        .ok_or_else(|| Error::InvalidInput(format!("no criterion {id}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Output::Oracle(outcomes))
        }
    }
}

fn enumerate(kind: EnumerateKind, n: usize, count_only: bool) -> Result<Output> {
    let (key, items): (&'static str, Vec<Value>) = match kind {
        EnumerateKind::Decomposable => {
            if count_only {
                return Ok(Output::Doc(json!(enumerate_decomposable(n)?.count())));
            }
            (
                "graph",
                enumerate_decomposable(n)?.map(|g| g.to_json()).collect(),
            )
        }
        EnumerateKind::Dags => ("dag", enumerate_dags(n)?.iter().map(Dag::to_json).collect()),
        EnumerateKind::Dagoids => (
            "dagoid",
            enumerate_dagoids(n)?
                .iter()
                .map(|c| c.dagoid.to_json())
                .collect(),
        ),
    };
    if count_only {
        return Ok(Output::Doc(json!(items.len())));
    }
    Ok(Output::Stream { key, items })
}

fn tvec(s: Structure) -> Result<Output> {
    let t = match (s.graph, s.dag, s.dagoid) {
        (Some(g), _, _) => clique_vector(&input::load::<UGraph>(&g)?)?,
        (_, Some(d), _) => d_clique_vector(&input::load::<Dag>(&d)?),
        (_, _, Some(d)) => input::load::<Dagoid>(&d)?.tvec().clone(),
        _ => unreachable!("clap requires one source"),
    };
    Ok(Output::Doc(t.to_json()))
}

/// Witness sides are reported as log-probabilities and probabilities.
fn sides(lhs: f64, rhs: f64, log_z: f64) -> (Value, Value) {
    let side = |x: f64| json!({ "log_prob": x - 2.0 * log_z, "prob": (x - 2.0 * log_z).exp() });
    (side(lhs), side(rhs))
}

fn check_graph_law(law: &structmark::GraphLaw) -> Result<Output> {
    let Some(w) = check_structural_markov(law)? else {
        return Ok(Output::Doc(json!({ "structurally_markov": true })));
    };
    let (lhs, rhs) = sides(w.lhs, w.rhs, law.log_normalizer()?);
    Ok(Output::Doc(json!({
        "structurally_markov": false,
        "witness": {
            "a": set_json(w.a),
            "b": set_json(w.b),
            "g": w.g.to_json(),
            "g_prime": w.g2.to_json(),
            "g_a_times_g_prime_b": w.cross.to_json(),
            "g_prime_a_times_g_b": w.cross2.to_json(),
            "lhs": lhs,
            "rhs": rhs,
        },
    })))
}

fn check_dagoid_law(law: &structmark::dagoid_law::DagoidLaw) -> Result<Output> {
    let Some(w) = check_dagoid_structural_markov(law)? else {
        return Ok(Output::Doc(json!({ "structurally_markov": true })));
    };
    let (lhs, rhs) = sides(w.lhs, w.rhs, law.log_normalizer()?);
    Ok(Output::Doc(json!({
        "structurally_markov": false,
        "witness": {
            "a": set_json(w.a),
            "d": w.d.to_json(),
            "d_prime": w.d2.to_json(),
            "d_a_times_d_prime_rest": w.cross.to_json(),
            "d_prime_a_times_d_rest": w.cross2.to_json(),
            "lhs": lhs,
            "rhs": rhs,
        },
    })))
}

fn family(
    name: &str,
    n: Option<usize>,
    lower: Option<&str>,
    upper: Option<&str>,
) -> Result<GraphFamily> {
    let need_n = || n.ok_or_else(|| Error::InvalidInput(format!("family `{name}` needs --n")));
    match name {
        "all" => GraphFamily::all(need_n()?),
        "forests" => GraphFamily::forests(need_n()?),
        "trees" => {
            let n = need_n()?;
            let forests = GraphFamily::forests(n)?;
            let trees = forests
                .members()
                .iter()
                .filter(|g| g.components().len() == 1)
                .cloned();
            GraphFamily::new(n, VertexSet::full(n), trees.collect::<Vec<_>>())
        }
        "sandwich" => {
            let missing =
                || Error::InvalidInput("family `sandwich` needs --lower and --upper".into());
            let lo: UGraph = input::load(lower.ok_or_else(missing)?)?;
            let hi: UGraph = input::load(upper.ok_or_else(missing)?)?;
            input::check_n(n, lo.n())?;
            GraphFamily::sandwich(&lo, &hi)
        }
        src => {
            let items = match input::load_value(src)? {
                Value::Array(items) => items,
                _ => {
                    return Err(Error::InvalidInput(
                        "a family is a JSON array of graphs".into(),
                    ))
                }
            };
            let graphs = items
                .iter()
                .map(UGraph::from_json)
                .collect::<Result<Vec<_>>>()?;
            let first = graphs
                .first()
                .ok_or_else(|| Error::InvalidInput("empty graph family".into()))?;
            let (size, vertices) = (first.n(), first.vertices());
            input::check_n(n, size)?;
            GraphFamily::new(size, vertices, graphs)
        }
    }
}

fn check_meta(
    name: &str,
    n: Option<usize>,
    lower: Option<&str>,
    upper: Option<&str>,
) -> Result<Output> {
    let f = family(name, n, lower, upper)?;
    Ok(Output::Doc(match check_meta_markov(&f)? {
        None => json!({ "meta_markov": true, "members": f.len() }),
        Some(w) => json!({
            "meta_markov": false,
            "members": f.len(),
            "witness": {
                "a": set_json(w.a),
                "b": set_json(w.b),
                "g": w.g.to_json(),
                "g_prime": w.g2.to_json(),
                "product": w.product.to_json(),
            },
        }),
    }))
}

fn remainder(source: ClassSource, set: &str) -> Result<Output> {
    let d: Dagoid = match (source.dagoid, source.dag) {
        (Some(src), _) => input::load(&src)?,
        (_, Some(src)) => Dagoid::of(&input::load::<Dag>(&src)?),
        _ => unreachable!("clap requires one source"),
    };
    let a = input::vertex_set(set, d.n())?;
    Ok(Output::Doc(json!({
        "a": set_json(a),
        "induced": d.induced(a)?.to_json(),
        "remainder": d.remainder(a)?.to_json(),
    })))
}
