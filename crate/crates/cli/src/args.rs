use clap::{Args, Parser, Subcommand, ValueEnum};

/// Structural Markov laws over decomposable graphs and DAG equivalence classes.
///
/// Inputs marked SRC take a path to a JSON file or the JSON text itself.
/// Output is JSON unless `--format table` is given. Domain errors exit with
/// status 1 and a JSON object on stderr; usage errors exit with status 2.
#[derive(Debug, Parser)]
#[command(name = "structmark", version)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnumerateKind {
    Decomposable,
    Dags,
    Dagoids,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Over {
    Graphs,
    Dagoids,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List or count decomposable graphs, DAGs or dagoids on n vertices.
    Enumerate {
        #[arg(long, value_enum)]
        kind: EnumerateKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Clique vector of a graph, or d-clique vector of a DAG or dagoid.
    Tvec(Structure),
    /// Log-density and log-probability of a graph under a law.
    LawEval {
        #[command(flatten)]
        law: LawArgs,
        /// Graph SRC.
        #[arg(long)]
        graph: String,
    },
    /// Exhaustive structural Markov check, with a witness on failure.
    CheckSm {
        #[command(flatten)]
        law: LawArgs,
        #[arg(long, value_enum, default_value_t = Over::Graphs)]
        over: Over,
    },
    /// Exhaustive meta-Markov check of a graph family.
    CheckMeta {
        /// `all`, `forests`, `trees`, `sandwich` (with --lower/--upper) or a
        /// SRC holding a JSON array of graphs.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: Option<usize>,
        /// Graph SRC, lower bound of a sandwich family.
        #[arg(long)]
        lower: Option<String>,
        /// Graph SRC, upper bound of a sandwich family.
        #[arg(long)]
        upper: Option<String>,
    },
    /// Posterior parameter from a prior parameter, hyperparameters and data.
    Posterior {
        /// Prior parameter SRC (subset vector).
        #[arg(long)]
        omega: String,
        /// Hyperparameter SRC: {"delta": .., "phi": [[..], ..]}.
        #[arg(long)]
        hyper: String,
        /// CSV file with one observation per row.
        #[arg(long)]
        data: String,
        /// The first CSV row is a header.
        #[arg(long)]
        header: bool,
        /// Write the parameter here instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Highest-scoring graph or dagoid under a parameter.
    Map {
        /// Parameter SRC (subset vector).
        #[arg(long)]
        omega: String,
        #[arg(long, value_enum, default_value_t = Over::Graphs)]
        over: Over,
    },
    /// Metropolis-Hastings sampling over decomposable graphs.
    Mcmc {
        /// Parameter SRC (subset vector).
        #[arg(long)]
        omega: String,
        #[arg(long)]
        steps: u64,
        #[arg(long, default_value_t = 0)]
        burn_in: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        chains: usize,
    },
    /// Markov equivalence of two DAGs by both criteria.
    DagEquiv {
        /// DAG SRC; give exactly two.
        #[arg(long, required = true, num_args = 1)]
        dag: Vec<String>,
    },
    /// Equivalence class of a DAG with all of its members.
    Dagoid {
        /// DAG SRC.
        #[arg(long)]
        dag: String,
    },
    /// Remainder and induced dagoids for an ancestral set.
    Remainder {
        #[command(flatten)]
        source: ClassSource,
        /// Comma-separated vertices, e.g. `0,1`; empty for the empty set.
        #[arg(long, allow_hyphen_values = false)]
        set: String,
    },
    /// Run the acceptance suite and print one pass/fail line per criterion.
    Oracle {
        /// Run only these criteria.
        #[arg(long)]
        criterion: Vec<u8>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Structure {
    /// Graph SRC.
    #[arg(long)]
    pub graph: Option<String>,
    /// DAG SRC.
    #[arg(long)]
    pub dag: Option<String>,
    /// Dagoid SRC.
    #[arg(long)]
    pub dagoid: Option<String>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ClassSource {
    /// Dagoid SRC.
    #[arg(long)]
    pub dagoid: Option<String>,
    /// DAG SRC, standing for its class.
    #[arg(long)]
    pub dag: Option<String>,
}

#[derive(Debug, Args)]
pub struct LawArgs {
    /// Built-in law name or law SRC.
    #[arg(long)]
    pub law: String,
    /// Vertex count for built-in laws.
    #[arg(long)]
    pub n: Option<usize>,
    /// Law parameter SRC, e.g. {"psi": 0.3, "edge_psi": [[0, 1, 0.9]]}.
    #[arg(long)]
    pub params: Option<String>,
    #[arg(long)]
    pub psi: Option<f64>,
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long)]
    pub kappa: Option<f64>,
}
