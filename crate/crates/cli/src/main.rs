use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bihamilton::bigraph::{
    encode_edge_json, encode_graph6, load_graph_with_limit, FormatError, GraphDocument, GraphError,
    MAX_PART,
};
use bihamilton::hamilton::{
    bipartite_closure, find_hamilton_cycle_with, find_two_factor, Certificate, HamiltonError,
    HamiltonOptions,
};
use bihamilton::spectral::{spectral_radius, SpectralError, DEFAULT_TOLERANCE};
use bihamilton::toughness::{
    bipartite_toughness_with, is_one_tough_with, ToughnessError, ToughnessLimits, DEFAULT_MAX_PART,
};
use bihamilton::verify::{
    proof_trace, run_suite, verify_main_theorem_with, write_report, RecordFormat, SuiteConfig,
    TheoremOptions, Verdict, VerifyError,
};
use bihamilton::BipartiteGraph;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Spectral Hamiltonicity tools for balanced bipartite graphs.
///
/// Graphs are read from `--input`: a file path, `-` for stdin, or an inline
/// construction `gnn:<n>` or `complete:<m>,<n>`. Exit codes: 0 success, 1 usage
/// error, 2 input format error, 3 counterexample or failed suite, 4 resource
/// limit refused.
#[derive(Parser, Debug)]
#[command(name = "bihamilton", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build G_{n,n} (`gnn:<n>`) or K_{m,n} (`complete:<m>,<n>`).
    Construct {
        /// Construction spec; may also be given with --input.
        spec: Option<String>,
        #[command(flatten)]
        io: GraphIo,
    },
    /// Spectral radius by power iteration.
    Rho {
        #[command(flatten)]
        io: GraphIo,
        /// Convergence tolerance on ρ.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Bipartite toughness with a minimising cut set, and the 1-tough decision.
    Tough {
        #[command(flatten)]
        io: GraphIo,
    },
    /// Bipartite closure, written as a graph document.
    Closure {
        #[command(flatten)]
        io: GraphIo,
    },
    /// Hamilton cycle as a vertex sequence, or `none`.
    Hamilton {
        #[command(flatten)]
        io: GraphIo,
        /// Give up after this many search nodes (exit code 4).
        #[arg(long)]
        budget: Option<u64>,
        /// Also write a certificate document to this path.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// A 2-factor as its cycles, or `none`.
    TwoFactor {
        #[command(flatten)]
        io: GraphIo,
        /// Also write a certificate document to this path.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Replay of the main theorem's case analysis, as JSON.
    Trace {
        #[command(flatten)]
        io: GraphIo,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Classify every graph in a graph6 file, one record per line.
    Scan {
        #[command(flatten)]
        io: GraphIo,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        /// Keep measured times in the records.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Args, Debug)]
struct GraphIo {
    /// Graph source: path, `-` for stdin, `gnn:<n>` or `complete:<m>,<n>`.
    #[arg(long)]
    input: Option<String>,
    /// Graph document format; input is sniffed when omitted, output defaults
    /// to edge-json.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Part-size limit; for tough and scan, the toughness enumeration limit
    /// [default: 64, or 24 for tough and scan].
    #[arg(long)]
    limit: Option<usize>,
    /// Write data here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite config file (`key = value` lines); flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// extremal, edge-bound, monotonicity, closure-equivalence, claim3, sweep.
    #[arg(long)]
    suite: Option<String>,
    /// Inclusive part-size range, e.g. `16..18`.
    #[arg(long)]
    n_range: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    /// Toughness enumeration limit [default: 24].
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Record format.
    #[arg(long, value_enum)]
    records: Option<RecordsArg>,
    /// Directory for Hamilton-cycle certificate sidecars.
    #[arg(long)]
    certificates: Option<PathBuf>,
    /// Keep measured times in the output.
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Graph6,
    EdgeJson,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RecordsArg {
    Jsonl,
    Csv,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Format(String),
    Counterexample(String),
    Resource(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Format(_) => 2,
            Failure::Counterexample(_) => 3,
            Failure::Resource(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Format(m) | Failure::Counterexample(m) | Failure::Resource(m) => m,
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::PartTooLarge { .. } => Failure::Resource(e.to_string()),
            GraphError::Unbalanced { .. } => Failure::Format(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Graph(g) => g.into(),
            other => Failure::Format(other.to_string()),
        }
    }
}

impl From<SpectralError> for Failure {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::NoConvergence { .. } => Failure::Resource(e.to_string()),
            SpectralError::Graph(g) => g.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ToughnessError> for Failure {
    fn from(e: ToughnessError) -> Self {
        match e {
            ToughnessError::TooLarge { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<HamiltonError> for Failure {
    fn from(e: HamiltonError) -> Self {
        match e {
            HamiltonError::BudgetExhausted(_) => Failure::Resource(e.to_string()),
            HamiltonError::Unbalanced { .. } => Failure::Format(e.to_string()),
            HamiltonError::Graph(g) => g.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        if e.is_resource_limit() {
            return Failure::Resource(e.to_string());
        }
        match e {
            VerifyError::Graph(g) => g.into(),
            VerifyError::Hamilton(h) => h.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Construct { spec, io } => {
            let spec = match (spec, &io.input) {
                (Some(s), None) => s,
                (None, Some(s)) => s.clone(),
                (Some(_), Some(_)) => {
                    return Err(Failure::Usage("give the spec once, positionally or with --input".into()))
                }
                (None, None) => return Err(Failure::Usage("missing construction spec".into())),
            };
            let g = construct(&spec)?.ok_or_else(|| {
                Failure::Usage(format!("{spec:?} is not gnn:<n> or complete:<m>,<n>"))
            })?;
            emit(&io.output, &graph_document(&g, io.format))
        }
        Command::Rho { io, tol } => {
            let g = read_graph(&io, MAX_PART)?;
            if g.order() == 0 {
                return Err(Failure::Usage("graph has no vertices".into()));
            }
            let r = spectral_radius(&g, tol)?;
            emit(&io.output, &format!("{}\n", r.rho))
        }
        Command::Tough { io } => {
            let limits = ToughnessLimits {
                max_part: io.limit.unwrap_or(DEFAULT_MAX_PART),
            };
            let g = read_graph(&io, MAX_PART)?;
            let one = is_one_tough_with(&g, limits)?;
            let value = match bipartite_toughness_with(&g, limits) {
                Ok(w) => serde_json::json!({
                    "toughness": w.ratio().to_string(),
                    "one_tough": one.tough,
                    "part": w.part,
                    "set": w.set.iter().map(|v| v.index).collect::<Vec<_>>(),
                    "components": w.components,
                }),
                Err(ToughnessError::CompleteGraph | ToughnessError::NoAdmissibleSet) => {
                    serde_json::json!({ "toughness": null, "one_tough": one.tough })
                }
                Err(e) => return Err(e.into()),
            };
            emit(&io.output, &format!("{value}\n"))
        }
        Command::Closure { io } => {
            let g = read_graph(&io, io.limit.unwrap_or(MAX_PART))?;
            let h = bipartite_closure(&g)?;
            emit(&io.output, &graph_document(&h, io.format))
        }
        Command::Hamilton {
            io,
            budget,
            certificate,
        } => {
            let g = read_graph(&io, io.limit.unwrap_or(MAX_PART))?;
            let opts = HamiltonOptions {
                step_budget: budget,
                ..HamiltonOptions::default()
            };
            match find_hamilton_cycle_with(&g, opts)?.cycle {
                Some(c) => {
                    if let Some(path) = &certificate {
                        write_certificate(path, &Certificate::Cycle(c.clone()), &g)?;
                    }
                    emit(&io.output, &format!("{c}\n"))
                }
                None => emit(&io.output, "none\n"),
            }
        }
        Command::TwoFactor { io, certificate } => {
            let g = read_graph(&io, io.limit.unwrap_or(MAX_PART))?;
            match find_two_factor(&g)? {
                Some(f) => {
                    let text = f
                        .cycles()
                        .iter()
                        .map(|c| {
                            let mut s: String = c.iter().map(|v| v.to_string()).collect();
                            if let Some(first) = c.first() {
                                s.push_str(&first.to_string());
                            }
                            s
                        })
                        .collect::<Vec<_>>()
                        .join(" ");
                    if let Some(path) = &certificate {
                        write_certificate(path, &Certificate::TwoFactor(f), &g)?;
                    }
                    emit(&io.output, &format!("{text}\n"))
                }
                None => emit(&io.output, "none\n"),
            }
        }
        Command::Trace { io } => {
            let g = read_graph(&io, io.limit.unwrap_or(MAX_PART))?;
            let trace = proof_trace(&g)?;
            if !trace.in_theorem_range {
                eprintln!("note: n = {} is outside theorem range (n >= 16)", trace.n);
            }
            let text = serde_json::to_string_pretty(&trace).expect("traces serialize");
            emit(&io.output, &format!("{text}\n"))
        }
        Command::Verify(args) => verify(args),
        Command::Scan { io, tol, timings } => scan(&io, tol, timings),
    }
}

/// Inline constructions; `None` when `spec` is not one.
fn construct(spec: &str) -> Result<Option<BipartiteGraph>, Failure> {
    let bad = || Failure::Usage(format!("malformed construction {spec:?}"));
    if let Some(n) = spec.strip_prefix("gnn:") {
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        return Ok(Some(BipartiteGraph::extremal(n)?));
    }
    if let Some(rest) = spec.strip_prefix("complete:") {
        let (m, n) = rest.split_once(',').ok_or_else(bad)?;
        let m: usize = m.trim().parse().map_err(|_| bad())?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        return Ok(Some(BipartiteGraph::complete(m, n)?));
    }
    Ok(None)
}

fn read_source(input: &str) -> Result<Vec<u8>, Failure> {
    if input == "-" {
        let mut buf = Vec::new();
        io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read(input).map_err(|e| Failure::Usage(format!("reading {input}: {e}")))
    }
}

fn read_graph(io: &GraphIo, limit: usize) -> Result<BipartiteGraph, Failure> {
    let input = io
        .input
        .as_deref()
        .ok_or_else(|| Failure::Usage("missing --input".into()))?;
    if let Some(g) = construct(input)? {
        for size in [g.nx(), g.ny()] {
            if size > limit {
                return Err(GraphError::PartTooLarge { size, limit }.into());
            }
        }
        return Ok(g);
    }
    let payload = read_source(input)?;
    let doc = match io.format {
        Some(FormatArg::Graph6) => GraphDocument::graph6(payload),
        Some(FormatArg::EdgeJson) => GraphDocument::edge_json(payload),
        None => GraphDocument::sniff(payload),
    };
    Ok(load_graph_with_limit(&doc, limit)?)
}

fn graph_document(g: &BipartiteGraph, format: Option<FormatArg>) -> String {
    match format.unwrap_or(FormatArg::EdgeJson) {
        FormatArg::Graph6 => format!("{}\n", encode_graph6(g)),
        FormatArg::EdgeJson => format!("{}\n", encode_edge_json(g)),
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("writing {}: {e}", path.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|e| Failure::Usage(format!("writing stdout: {e}")))
        }
    }
}

fn write_certificate(path: &Path, cert: &Certificate, g: &BipartiteGraph) -> Result<(), Failure> {
    let doc = serde_json::to_string(&cert.to_document(g)).expect("certificates serialize");
    fs::write(path, format!("{doc}\n"))
        .map_err(|e| Failure::Usage(format!("writing {}: {e}", path.display())))
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("reading {}: {e}", path.display())))?;
            SuiteConfig::parse(&text)?
        }
        None => {
            let name = args
                .suite
                .as_deref()
                .ok_or_else(|| Failure::Usage("give --suite or --config".into()))?;
            SuiteConfig::new(name.parse()?)
        }
    };
    let overrides = [
        ("suite", args.suite.clone()),
        ("n-range", args.n_range.clone()),
        ("samples", args.samples.map(|v| v.to_string())),
        ("seed", args.seed.map(|v| v.to_string())),
        ("tol", args.tol.map(|v| v.to_string())),
        ("limit", args.limit.map(|v| v.to_string())),
    ];
    for (key, value) in overrides {
        if let Some(value) = value {
            config.set(key, &value)?;
        }
    }
    if let Some(path) = args.output {
        config.output = Some(path);
    }
    if let Some(records) = args.records {
        config.format = match records {
            RecordsArg::Jsonl => RecordFormat::Jsonl,
            RecordsArg::Csv => RecordFormat::Csv,
        };
    }
    if let Some(dir) = args.certificates {
        config.certificates = Some(dir);
    }
    config.timings |= args.timings;

    let report = run_suite(&config)?;
    if config.output.is_none() {
        let mut out = io::stdout().lock();
        write_report(&report, config.format, &mut out)
            .and_then(|()| out.flush())
            .map_err(|e| Failure::Usage(format!("writing stdout: {e}")))?;
    }
    let s = &report.summary;
    eprintln!(
        "{}: {} records, {} passed, {} failed, {} counterexamples, max deviation {:e}",
        s.suite, s.records, s.passed, s.failed, s.counterexamples, s.max_deviation
    );
    if s.ok() {
        Ok(())
    } else {
        Err(Failure::Counterexample(format!(
            "suite {} failed on {} of {} records",
            s.suite, s.failed, s.records
        )))
    }
}

fn scan(io: &GraphIo, tol: f64, timings: bool) -> Result<(), Failure> {
    let input = io
        .input
        .as_deref()
        .ok_or_else(|| Failure::Usage("missing --input".into()))?;
    let text = String::from_utf8(read_source(input)?)
        .map_err(|_| Failure::Format("input is not ASCII graph6".into()))?;
    let opts = TheoremOptions {
        tol,
        toughness: ToughnessLimits {
            max_part: io.limit.unwrap_or(DEFAULT_MAX_PART),
        },
        ..TheoremOptions::default()
    };
    let mut out = String::new();
    let mut counterexamples = 0;
    let lines = text
        .lines()
        .map(|l| l.trim().trim_start_matches(">>graph6<<"))
        .filter(|l| !l.is_empty());
    for (i, line) in lines.enumerate() {
        let g = load_graph_with_limit(&GraphDocument::graph6(line), MAX_PART)
            .map_err(|e| Failure::from(e).with_context(&format!("graph {}", i + 1)))?;
        let mut record = verify_main_theorem_with(&g, &opts)?;
        if !timings {
            record.micros = 0;
        }
        if record.verdict == Verdict::Counterexample {
            counterexamples += 1;
        }
        out.push_str(&serde_json::to_string(&record).expect("records serialize"));
        out.push('\n');
    }
    emit(&io.output, &out)?;
    if counterexamples > 0 {
        return Err(Failure::Counterexample(format!(
            "{counterexamples} counterexample(s) found"
        )));
    }
    Ok(())
}

impl Failure {
    fn with_context(self, context: &str) -> Self {
        match self {
            Failure::Usage(m) => Failure::Usage(format!("{context}: {m}")),
            Failure::Format(m) => Failure::Format(format!("{context}: {m}")),
            Failure::Counterexample(m) => Failure::Counterexample(format!("{context}: {m}")),
            Failure::Resource(m) => Failure::Resource(format!("{context}: {m}")),
        }
    }
}
