//! Command-line front end: argument parsing, graph specs and reports.

use std::fmt::Write as _;
use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphcoh::cohomology::BlockStats;
use graphcoh::complex::{differential_matrix, BasisFilter};
use graphcoh::graph::{parse_named, to_graph6};
use graphcoh::{
    census, parse_edge_list, parse_graph6, run_suite, CacheStats, CliqueFamily, Engine,
    EssentialCache, Generators, Graph, Suite, VertexSet,
};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Input(#[from] graphcoh::Error),
    #[error("reading {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) => 1,
            _ => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "graphcoh",
    version,
    about = "Cohomology of Lie algebras attached to graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti numbers of L(G) or L(G, Σ).
    Betti(BettiArgs),
    /// Essential (and bigraded essential) Betti numbers of L(G).
    Essential(EssentialArgs),
    /// Induced-subgraph census by isomorphism class.
    Census(CensusArgs),
    /// Run a self-check suite.
    Verify(VerifyArgs),
    /// Dump one differential matrix.
    Matrix(MatrixArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Blockwise exact ranks on the full complex.
    Direct,
    /// Sum over induced subgraphs weighted by essential Betti numbers.
    Decomposition,
    /// Reduction of L(G, Σ) to the graph outside the cliques.
    Reduced,
    /// One exact rank per degree on the unsplit complex.
    Monolithic,
}

#[derive(Debug, Args)]
pub struct Common {
    /// `name:K5`, `name:S2+K1`, `g6:<graph6>`, or `file:<path>`.
    #[arg(long)]
    pub graph: String,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Ignore the on-disk cache named by GRAPHCOH_CACHE_DIR.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Debug, Args)]
pub struct BettiArgs {
    #[command(flatten)]
    pub common: Common,
    /// Clique family as JSON (`[[1,2,3]]`) or a path to a JSON file.
    #[arg(long)]
    pub cliques: Option<String>,
    #[arg(long, conflicts_with = "all")]
    pub degree: Option<usize>,
    #[arg(long)]
    pub all: bool,
    #[arg(long, value_enum, default_value = "direct")]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct EssentialArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub bigraded: bool,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 5)]
    pub max_order: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_suite)]
    pub suite: Suite,
    #[arg(long)]
    pub max_vertices: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub cliques: Option<String>,
    #[arg(long)]
    pub degree: usize,
    /// Comma-separated support set, e.g. `1,3,4`.
    #[arg(long)]
    pub support: Option<String>,
    #[arg(long)]
    pub weight: Option<u32>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: graphcoh::Error| e.to_string())
}

/// Parses `name:`, `g6:` and `file:` graph specs. File contents are read
/// as an edge list when the first meaningful line starts with `n`, and as
/// graph6 otherwise.
pub fn parse_graph_spec(spec: &str) -> CliResult<Graph> {
    let (kind, body) = spec.split_once(':').ok_or_else(|| {
        CliError::Usage(format!(
            "graph spec `{spec}` needs a name:, g6: or file: prefix"
        ))
    })?;
    match kind {
        "name" => Ok(parse_named(body)?),
        "g6" => Ok(parse_graph6(body)?),
        "file" => {
            let text = read(body)?;
            let first = text
                .lines()
                .map(|l| l.split('#').next().unwrap_or("").trim())
                .find(|l| !l.is_empty());
            match first {
                Some(line)
                    if line.starts_with('n') && line[1..].starts_with(char::is_whitespace) =>
                {
                    Ok(parse_edge_list(&text)?)
                }
                Some(line) => Ok(parse_graph6(line)?),
                None => Err(CliError::Usage(format!("graph file `{body}` is empty"))),
            }
        }
        other => Err(CliError::Usage(format!(
            "unknown graph spec prefix `{other}:`"
        ))),
    }
}

fn read(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_string(),
        source,
    })
}

fn parse_cliques(arg: Option<&str>, g: &Graph) -> CliResult<CliqueFamily> {
    let Some(arg) = arg else {
        return Ok(CliqueFamily::empty());
    };
    let text = if arg.trim_start().starts_with('[') {
        arg.to_string()
    } else {
        read(arg)?
    };
    let sigma = CliqueFamily::from_json(&text)?;
    sigma.validate(g)?;
    Ok(sigma)
}

fn engine(no_cache: bool) -> CliResult<Engine> {
    let cache = if no_cache {
        None
    } else {
        Some(Arc::new(
            EssentialCache::from_env()?.unwrap_or_else(EssentialCache::in_memory),
        ))
    };
    Ok(Engine::new().with_cache(cache))
}

#[derive(Serialize)]
struct GraphSummary {
    order: usize,
    size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    graph6: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cliques: Option<Vec<Vec<usize>>>,
}

impl GraphSummary {
    fn new(g: &Graph, sigma: &CliqueFamily) -> Self {
        let cliques = (!sigma.is_empty())
            .then(|| sigma.cliques().iter().map(|c| c.iter().collect()).collect());
        GraphSummary {
            order: g.order(),
            size: g.size(),
            graph6: to_graph6(g).ok(),
            cliques,
        }
    }
}

#[derive(Serialize)]
struct Report {
    schema_version: u32,
    command: String,
    args: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    graph: Option<GraphSummary>,
    result: Value,
    timing_ms: f64,
    blocks: BlockStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    cache: Option<CacheStats>,
}

struct Output {
    graph: Option<GraphSummary>,
    result: Value,
    table: String,
    failure: Option<String>,
}

/// Runs the CLI with `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let echo: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match execute(&cli, echo, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, echo: Vec<String>, out: &mut dyn Write) -> CliResult<i32> {
    let start = Instant::now();
    let (name, format, no_cache) = match &cli.command {
        Command::Betti(a) => ("betti", a.common.format, a.common.no_cache),
        Command::Essential(a) => ("essential", a.common.format, a.common.no_cache),
        Command::Census(a) => ("census", a.common.format, a.common.no_cache),
        Command::Verify(a) => ("verify", a.format, a.no_cache),
        Command::Matrix(a) => ("matrix", a.common.format, a.common.no_cache),
    };
    let engine = engine(no_cache)?;
    let output = match &cli.command {
        Command::Betti(a) => betti(&engine, a)?,
        Command::Essential(a) => essential(&engine, a)?,
        Command::Census(a) => census_cmd(a)?,
        Command::Verify(a) => verify(&engine, a)?,
        Command::Matrix(a) => matrix(a)?,
    };
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    match format {
        Format::Json => {
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: name.to_string(),
                args: echo,
                graph: output.graph,
                result: output.result,
                timing_ms: elapsed,
                blocks: engine.block_stats(),
                cache: engine.cache_stats(),
            };
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            let _ = writeln!(out, "{text}");
        }
        Format::Table => {
            let _ = write!(out, "{}", output.table);
        }
    }
    match output.failure {
        Some(msg) => Err(CliError::Invariant(msg)),
        None => Ok(0),
    }
}

fn betti(engine: &Engine, a: &BettiArgs) -> CliResult<Output> {
    let g = parse_graph_spec(&a.common.graph)?;
    let sigma = parse_cliques(a.cliques.as_deref(), &g)?;
    if a.degree.is_none() && !a.all {
        return Err(CliError::Usage("pass --degree <k> or --all".into()));
    }
    match a.method {
        Method::Reduced if sigma.is_empty() => {
            return Err(CliError::Usage("--method reduced needs --cliques".into()))
        }
        Method::Decomposition if !sigma.is_empty() => {
            return Err(CliError::Usage(
                "--method decomposition does not take --cliques".into(),
            ))
        }
        _ => {}
    }
    let top = match a.method {
        Method::Reduced => {
            let (reduced, s) = graphcoh::ggi_reduce(&g, &sigma)?;
            reduced.order() + reduced.size() + s
        }
        _ => g.order() + g.size() + sigma.len(),
    };
    let degrees: Vec<usize> = match a.degree {
        Some(d) => vec![d],
        None => (0..=top).collect(),
    };
    let values: Vec<u64> = match a.method {
        Method::Direct => match a.degree {
            Some(d) => vec![engine.betti_degree(&g, &sigma, d)?],
            None => engine.betti(&g, &sigma)?.into_dims(),
        },
        Method::Monolithic => match a.degree {
            Some(d) => vec![engine.betti_monolithic_degree(&g, &sigma, d)?],
            None => engine.betti_monolithic(&g, &sigma)?.into_dims(),
        },
        Method::Decomposition => degrees
            .iter()
            .map(|&d| engine.betti_via_decomposition(&g, d))
            .collect::<graphcoh::Result<_>>()?,
        Method::Reduced => {
            let table = engine.ggi_betti_reduced(&g, &sigma)?;
            degrees.iter().map(|&d| table.get(d)).collect()
        }
    };
    let mut failure = None;
    if a.all {
        let table = graphcoh::BettiTable::new(values.clone());
        if top > 0 && table.euler_characteristic() != 0 {
            failure = Some(format!(
                "Euler characteristic {} is not zero",
                table.euler_characteristic()
            ));
        } else if sigma.is_empty() && !table.is_palindromic() {
            failure = Some("Betti table is not palindromic".to_string());
        }
    }
    let result = match a.degree {
        Some(d) => json!({ "method": a.method, "degree": d, "value": values[0] }),
        None => json!({ "method": a.method, "betti": values }),
    };
    let mut table = format!(
        "graph: {} vertices, {} edges, {} cliques\nmethod: {:?}\n",
        g.order(),
        g.size(),
        sigma.len(),
        a.method
    )
    .to_lowercase();
    table.push_str("degree\tbetti\n");
    for (d, v) in degrees.iter().zip(&values) {
        let _ = writeln!(table, "{d}\t{v}");
    }
    Ok(Output {
        graph: Some(GraphSummary::new(&g, &sigma)),
        result,
        table,
        failure,
    })
}

fn essential(engine: &Engine, a: &EssentialArgs) -> CliResult<Output> {
    let g = parse_graph_spec(&a.common.graph)?;
    let e = engine.essential(&g)?;
    let mut result = json!({ "essential": e.dims });
    let mut table = format!(
        "graph: {} vertices, {} edges\ndegree\tessential\n",
        g.order(),
        g.size()
    );
    for (d, v) in e.dims.iter().enumerate() {
        let _ = writeln!(table, "{d}\t{v}");
    }
    if a.bigraded {
        let entries: Vec<Value> = e
            .bigraded
            .iter()
            .map(|(&(n, r), &v)| json!({ "n": n, "r": r, "value": v }))
            .collect();
        result["bigraded"] = Value::Array(entries);
        table.push_str("n\tr\tvalue\n");
        for (&(n, r), v) in &e.bigraded {
            let _ = writeln!(table, "{n}\t{r}\t{v}");
        }
    }
    let failure = e
        .dims
        .iter()
        .enumerate()
        .find(|&(n, &b)| g.order() > 0 && b != 0 && g.order() > 2 * n)
        .map(|(n, _)| format!("nonzero essential class in degree {n} below the support bound"));
    Ok(Output {
        graph: Some(GraphSummary::new(&g, &CliqueFamily::empty())),
        result,
        table,
        failure,
    })
}

fn census_cmd(a: &CensusArgs) -> CliResult<Output> {
    let g = parse_graph_spec(&a.common.graph)?;
    let c = census(&g, a.max_order)?;
    let entries = c.entries();
    let mut table = String::from("order\tcode\tcount\tname\n");
    for e in &entries {
        let _ = writeln!(
            table,
            "{}\t{}\t{}\t{}",
            e.order,
            e.code,
            e.count,
            e.name.as_deref().unwrap_or("-")
        );
    }
    let result = json!({ "max_order": a.max_order, "entries": entries });
    Ok(Output {
        graph: Some(GraphSummary::new(&g, &CliqueFamily::empty())),
        result,
        table,
        failure: None,
    })
}

fn verify(engine: &Engine, a: &VerifyArgs) -> CliResult<Output> {
    let report = run_suite(engine, a.suite, a.max_vertices, a.seed)?;
    let status = if report.passed() { "PASS" } else { "FAIL" };
    let mut table = format!(
        "suite {} (max vertices {}, seed {}): {} checks, {} failures: {status}\n",
        report.suite,
        report.max_vertices,
        report.seed,
        report.checks,
        report.failures.len()
    );
    for f in &report.failures {
        let _ = writeln!(table, "  {f}");
    }
    let failure = (!report.passed()).then(|| {
        format!(
            "suite {} had {} failing checks",
            report.suite,
            report.failures.len()
        )
    });
    let mut result = serde_json::to_value(&report).expect("suite report serializes");
    result["passed"] = Value::Bool(report.passed());
    Ok(Output {
        graph: None,
        result,
        table,
        failure,
    })
}

fn matrix(a: &MatrixArgs) -> CliResult<Output> {
    let g = parse_graph_spec(&a.common.graph)?;
    let sigma = parse_cliques(a.cliques.as_deref(), &g)?;
    let support = match &a.support {
        None => None,
        Some(text) => {
            let verts = text
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| CliError::Usage(format!("bad vertex `{t}` in --support")))
                })
                .collect::<CliResult<Vec<usize>>>()?;
            if verts.iter().any(|&v| v == 0 || v > g.order()) {
                return Err(CliError::Usage(
                    "--support names a vertex outside the graph".into(),
                ));
            }
            Some(VertexSet::from_vertices(verts))
        }
    };
    let layout = Generators::new(&g, &sigma)?;
    let m = differential_matrix(
        &layout,
        a.degree,
        BasisFilter {
            support,
            weight: a.weight,
        },
    );
    let dump = m.dump();
    let result = json!({ "degree": a.degree, "rows": m.rows(), "cols": m.cols(), "nnz": m.nnz(), "dump": dump });
    Ok(Output {
        graph: Some(GraphSummary::new(&g, &sigma)),
        result,
        table: dump,
        failure: None,
    })
}
