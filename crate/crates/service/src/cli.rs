//! Command-line front end. Every JSON-producing subcommand builds the same
//! payload the HTTP API accepts and prints [`jobs::render`] of the result.

use std::ffi::OsString;
use std::io::Read;
use std::path::Path;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::http;
use crate::jobs::{self, JobError, JobKind, QuiverSource};
use crate::models;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser)]
#[command(name = "quivercat", version, about = "Quiver mutation and orbit-category models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SearchArgs {
    /// `builtin:NAME` or a quiver JSON file
    #[arg(long)]
    seed: String,
    #[arg(long)]
    max_depth: Option<usize>,
    #[arg(long)]
    max_nodes: Option<usize>,
}

#[derive(Args)]
struct ModelArgs {
    /// A model name (`a6-tau4`, `a3-cluster`, `d4-cluster-d3`) or a JSON model file
    #[arg(long, conflicts_with = "seed", required_unless_present = "seed")]
    model: Option<String>,
    /// Quiver of the derived category, `builtin:NAME` or a JSON file
    #[arg(long)]
    seed: Option<String>,
    /// Build the `n`-cluster category of `--seed`
    #[arg(long, requires = "seed", conflicts_with_all = ["tau", "shift"])]
    cluster: Option<i64>,
    /// Build `D / tau^t S^s` from `--seed` with `t = --tau`, `s = --shift`
    #[arg(long, requires = "seed", allow_negative_numbers = true)]
    tau: Option<i64>,
    #[arg(long, requires = "seed", allow_negative_numbers = true)]
    shift: Option<i64>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Calabi-Yau / cluster-tilting dimension
    #[arg(long)]
    d: i64,
    /// Object indices or names, comma separated
    #[arg(long, value_delimiter = ',')]
    summands: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum Command {
    /// Mutate a quiver at one vertex
    Mutate {
        #[arg(long)]
        seed: String,
        #[arg(long)]
        vertex: usize,
    },
    /// Enumerate the mutation class up to isomorphism
    MutationClass(SearchArgs),
    /// Breadth-first search for an acyclic quiver in the mutation class
    FindAcyclic(SearchArgs),
    /// Build an orbit-category model and print its Hom table
    BuildModel(ModelArgs),
    /// Check Calabi-Yau duality of a model's Hom table
    CyCheck {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        d: i64,
    },
    /// Test a candidate, or enumerate all d-cluster-tilting objects
    ClusterTilting {
        #[command(flatten)]
        check: CheckArgs,
        /// Enumeration cap
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Check Hom(T, S^-j T) = 0 for 1 <= j <= d - 2 (summands default to the projectives)
    NegativeExt(CheckArgs),
    /// Quiver of the endomorphism algebra of a candidate (default: the projectives)
    EndoQuiver(CheckArgs),
    /// Decide whether a Hom table is a higher cluster category
    Recognize {
        /// Recognition input JSON file, `-` for standard input
        #[arg(long)]
        model: String,
    },
    /// Rigidity of transjective objects in the cluster category of the 3-Kronecker quiver
    KroneckerSurvey {
        #[arg(long, allow_negative_numbers = true)]
        depth: i64,
    },
    /// Window of the Auslander-Reiten quiver of the derived category
    ArWindow {
        #[arg(long)]
        seed: String,
        #[arg(long)]
        slices: usize,
    },
    /// Graphviz text for a quiver, an AR window or a model's AR quiver
    ExportDot {
        #[arg(long, conflicts_with = "seed", required_unless_present = "seed")]
        model: Option<String>,
        #[arg(long)]
        seed: Option<String>,
        /// With `--seed`: export the AR window with this many slices instead of the quiver
        #[arg(long, requires = "seed")]
        slices: Option<usize>,
    },
    /// Serve the JSON API (port from --port, else QUIVERCAT_PORT, else 8080)
    Serve {
        #[arg(long)]
        port: Option<u16>,
    },
    /// Run a `{"schema", "kind", "payload"}` job file, `-` for standard input
    Job {
        #[arg(long)]
        file: String,
    },
}

fn read_json(path: &str) -> Result<Value, JobError> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| JobError::Validation(format!("standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| JobError::Validation(format!("{path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| JobError::Validation(format!("{path}: {e}")))
}

fn seed_value(seed: &str) -> Result<Value, JobError> {
    if seed.starts_with("builtin:") {
        Ok(Value::String(seed.into()))
    } else {
        read_json(seed)
    }
}

fn model_value(args: &ModelArgs) -> Result<Value, JobError> {
    if let Some(m) = &args.model {
        return if Path::new(m).is_file() {
            read_json(m)
        } else {
            Ok(Value::String(m.clone()))
        };
    }
    let quiver = seed_value(args.seed.as_deref().unwrap_or_default())?;
    match (args.cluster, args.tau, args.shift) {
        (Some(d), ..) => Ok(json!({ "quiver": quiver, "d": d })),
        (None, None, None) => Err(JobError::Validation("--seed needs --cluster or --tau/--shift".into())),
        (None, t, s) => Ok(json!({ "quiver": quiver, "auto": { "tau": t.unwrap_or(0), "shift": s.unwrap_or(0) } })),
    }
}

fn summands_value(summands: &Option<Vec<String>>) -> Value {
    match summands {
        None => Value::Null,
        Some(list) => list
            .iter()
            .map(|s| s.trim().parse::<usize>().map_or_else(|_| json!(s.trim()), |i| json!(i)))
            .collect(),
    }
}

fn check_payload(c: &CheckArgs) -> Result<Map<String, Value>, JobError> {
    let mut p = Map::new();
    p.insert("model".into(), model_value(&c.model)?);
    p.insert("d".into(), json!(c.d));
    if c.summands.is_some() {
        p.insert("summands".into(), summands_value(&c.summands));
    }
    Ok(p)
}

fn search_payload(a: &SearchArgs) -> Result<Value, JobError> {
    let mut p = Map::new();
    p.insert("quiver".into(), seed_value(&a.seed)?);
    if let Some(d) = a.max_depth {
        p.insert("max_depth".into(), json!(d));
    }
    if let Some(n) = a.max_nodes {
        p.insert("max_nodes".into(), json!(n));
    }
    Ok(Value::Object(p))
}

enum Output {
    Json(Value),
    Text(String),
}

fn export_dot(model: &Option<String>, seed: &Option<String>, slices: Option<usize>) -> Result<String, JobError> {
    if let Some(name) = model {
        return Ok(models::named_model(name)?.ar_dot(name));
    }
    let seed = seed.as_deref().unwrap_or_default();
    let source: QuiverSource =
        serde_json::from_value(seed_value(seed)?).map_err(|e| JobError::Validation(format!("{seed}: {e}")))?;
    let q = source.resolve()?;
    let name = seed.strip_prefix("builtin:").unwrap_or("quiver");
    match slices {
        None => Ok(q.to_dot(name)),
        Some(n) => Ok(quivercat::derived::DerivedCategory::new(&q)?.ar_window(n)?.to_dot(name)),
    }
}

fn serve(port: Option<u16>) -> Result<Output, JobError> {
    let (host, port) = http::bind_target(port)?;
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| JobError::Internal(e.to_string()))?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind((host.as_str(), port))
            .await
            .map_err(|e| JobError::Validation(format!("cannot listen on {host}:{port}: {e}")))?;
        if let Ok(addr) = listener.local_addr() {
            eprintln!("quivercat listening on http://{addr}");
        }
        http::serve(listener)
            .await
            .map_err(|e| JobError::Internal(e.to_string()))
    })?;
    Ok(Output::Text(String::new()))
}

fn dispatch(command: Command) -> Result<Output, JobError> {
    let run = |kind, payload| jobs::run(kind, payload).map(Output::Json);
    match command {
        Command::Mutate { seed, vertex } => run(
            JobKind::Mutate,
            json!({ "quiver": seed_value(&seed)?, "vertex": vertex }),
        ),
        Command::MutationClass(a) => run(JobKind::MutationClass, search_payload(&a)?),
        Command::FindAcyclic(a) => run(JobKind::FindAcyclic, search_payload(&a)?),
        Command::BuildModel(m) => run(JobKind::BuildModel, model_value(&m)?),
        Command::CyCheck { model, d } => run(JobKind::CyCheck, json!({ "model": model_value(&model)?, "d": d })),
        Command::ClusterTilting { check, cap } => {
            let mut p = check_payload(&check)?;
            if let Some(c) = cap {
                p.insert("cap".into(), json!(c));
            }
            run(JobKind::ClusterTilting, Value::Object(p))
        }
        Command::NegativeExt(c) => run(JobKind::NegativeExt, Value::Object(check_payload(&c)?)),
        Command::EndoQuiver(c) => run(JobKind::EndoQuiver, Value::Object(check_payload(&c)?)),
        Command::Recognize { model } => run(JobKind::Recognize, read_json(&model)?),
        Command::KroneckerSurvey { depth } => run(JobKind::KroneckerSurvey, json!({ "depth": depth })),
        Command::ArWindow { seed, slices } => run(
            JobKind::ArWindow,
            json!({ "quiver": seed_value(&seed)?, "slices": slices }),
        ),
        Command::ExportDot { model, seed, slices } => export_dot(&model, &seed, slices).map(Output::Text),
        Command::Serve { port } => serve(port),
        Command::Job { file } => {
            let req =
                serde_json::from_value(read_json(&file)?).map_err(|e| JobError::Validation(format!("{file}: {e}")))?;
            jobs::run_job(req).map(Output::Json)
        }
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    match dispatch(cli.command) {
        Ok(Output::Json(v)) => {
            print!("{}", jobs::render(&v));
            EXIT_OK
        }
        Ok(Output::Text(t)) => {
            print!("{t}");
            EXIT_OK
        }
        Err(e) => {
            print!("{}", jobs::render(&e.to_json()));
            eprintln!("quivercat: {e}");
            match e {
                JobError::Internal(_) => EXIT_INTERNAL,
                _ => EXIT_VALIDATION,
            }
        }
    }
}
