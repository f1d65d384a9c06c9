//! Command-line front end: every engine operation as a subcommand.
//!
//! Exit codes: 0 definite positive answer / SUCCESS, 1 definite negative,
//! 2 usage or input error, 3 budget exhausted / PARTIAL. Output is
//! byte-deterministic for fixed inputs (timings only appear with
//! `--timings`).

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use arrowlab::fo::{self, CorpusSentence};
use arrowlab::gadget::FarVertexChoice;
use arrowlab::io;
use arrowlab::report::Report;
use arrowlab::{
    build_far_apart_minimal, build_witness_pair, enumerate_good_colorings, find_good_coloring,
    hanf_certificate, is_arrow_minimal, is_sender_minimal, r_type, run_pipeline, search_sender,
    signals_non_adjacent, type_census, verify_determiner, verify_sender, BudgetExceeded,
    CertificateStatus, EdgeColoring, EngineError, Graph, HanfConclusion, MarkedGraph,
    PartialColoring, PipelineError, Polarity, SearchConfig, Verdict3,
};

#[derive(Parser)]
#[command(name = "arrowlab", version, about = "Ramsey arrowing, gadget verification, and locality certificates on finite graphs")]
struct Cli {
    /// Backtracking node budget for every search.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    budget: u64,

    /// Worker threads for parallelizable steps (censuses, corpus sweeps).
    /// Results are identical for every worker count.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Append timing entries to structured reports (not byte-reproducible).
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Graph predicates and transformations.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Arrowing decisions and good-coloring enumeration.
    #[command(subcommand)]
    Arrow(ArrowCmd),
    /// Gadget surgery and verification.
    #[command(subcommand)]
    Gadget(GadgetCmd),
    /// Neighborhood types, censuses, and locality certificates.
    #[command(subcommand)]
    Hanf(HanfCmd),
    /// First-order formulas over graphs.
    #[command(subcommand)]
    Fo(FoCmd),
    /// The sender-to-witness-pair pipeline.
    #[command(subcommand)]
    Witness(WitnessCmd),
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Basic facts about a graph.
    Info(FileF),
    /// Isomorphism test with a witness mapping.
    Iso {
        #[arg(short = 'F')]
        f: String,
        #[arg(short = 'G')]
        g: String,
    },
    /// Shortest-path distance between two vertices.
    Distance {
        #[arg(short = 'F')]
        f: String,
        #[arg(short = 'u')]
        u: u32,
        #[arg(short = 'v')]
        v: u32,
    },
    /// Exact and lower-bound vertex connectivity.
    Kconn {
        #[arg(short = 'F')]
        f: String,
        #[arg(short = 'k')]
        k: usize,
    },
}

#[derive(Args)]
struct FileF {
    #[arg(short = 'F')]
    f: String,
}

#[derive(Args)]
struct ArrowArgs {
    #[arg(short = 'F')]
    f: String,
    #[arg(short = 'G')]
    g: String,
    #[arg(short = 'H')]
    h: String,
}

#[derive(Subcommand)]
enum ArrowCmd {
    /// Decide F -> (G, H). Prints ARROWS (exit 0) or DOES-NOT-ARROW with a
    /// good coloring (exit 1).
    Decide(ArrowArgs),
    /// Enumerate good colorings in deterministic order.
    Enumerate {
        #[command(flatten)]
        args: ArrowArgs,
        /// Stop after this many colorings.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Check that F arrows (G, H) and no single-edge deletion does.
    Minimal(ArrowArgs),
}

#[derive(Subcommand)]
enum GadgetCmd {
    /// Glue two marked graphs along marked edges (first endpoints onto
    /// each other). Prints the resulting marked graph.
    Join {
        #[arg(short = 'F')]
        f: String,
        #[arg(short = 'G')]
        g: String,
        /// Marked edge of -F to identify.
        #[arg(long, default_value = "f")]
        left_edge: String,
        /// Marked edge of -G to identify.
        #[arg(long, default_value = "e")]
        right_edge: String,
    },
    /// Identify two disjoint marked edges of one graph.
    Identify {
        #[arg(short = 'S')]
        s: String,
        #[arg(long, default_value = "e")]
        first: String,
        #[arg(long, default_value = "f")]
        second: String,
    },
    /// Chain an odd number of copies of a sender (marks `e`, `f`).
    Chain {
        #[arg(short = 'S')]
        s: String,
        #[arg(long)]
        copies: usize,
    },
    /// Close a chain built from 2n+1 copies into a ring; marks `u`, `v`.
    Close {
        #[arg(short = 'S')]
        s: String,
        #[arg(short = 'n')]
        n: usize,
        /// Use this copy's `a`-vertex as the far mark instead of the
        /// middle copy.
        #[arg(long)]
        far_copy: Option<usize>,
    },
    /// Verify a determiner (signal edge forced red).
    VerifyDeterminer {
        #[arg(short = 'S')]
        s: String,
        #[arg(short = 'G')]
        g: String,
        #[arg(short = 'H')]
        h: String,
        #[arg(long, default_value = "f")]
        signal: String,
    },
    /// Verify a negative sender (signals forced to differ).
    VerifyNegativeSender(SenderArgs),
    /// Verify a positive sender (signals forced to agree).
    VerifyPositiveSender(SenderArgs),
    /// Exhaustive search for the smallest sender witness.
    Search {
        #[arg(short = 'G')]
        g: String,
        #[arg(short = 'H')]
        h: String,
        #[arg(long, value_enum, default_value_t = PolarityArg::Negative)]
        polarity: PolarityArg,
        #[arg(long)]
        max_vertices: usize,
        /// Require the signal edges to share no vertex.
        #[arg(long)]
        nonadjacent: bool,
    },
}

#[derive(Args)]
struct SenderArgs {
    #[arg(short = 'S')]
    s: String,
    #[arg(short = 'G')]
    g: String,
    #[arg(short = 'H')]
    h: String,
    /// First signal mark.
    #[arg(long, default_value = "e")]
    e: String,
    /// Second signal mark.
    #[arg(long, default_value = "f")]
    f: String,
    /// Additionally check sender minimality.
    #[arg(long)]
    minimal: bool,
}

#[derive(Copy, Clone, ValueEnum)]
enum PolarityArg {
    Negative,
    Positive,
}

impl From<PolarityArg> for Polarity {
    fn from(p: PolarityArg) -> Polarity {
        match p {
            PolarityArg::Negative => Polarity::Negative,
            PolarityArg::Positive => Polarity::Positive,
        }
    }
}

#[derive(Subcommand)]
enum HanfCmd {
    /// Per-vertex neighborhood types at radius r.
    Types {
        #[arg(short = 'F')]
        f: String,
        #[arg(short = 'r')]
        r: u32,
    },
    /// Type census (multiplicities) at radius r.
    Census {
        #[arg(short = 'F')]
        f: String,
        #[arg(short = 'r')]
        r: u32,
    },
    /// Radius-r equivalence of two graphs, with a witness bijection.
    Equiv {
        #[arg(short = 'F')]
        f: String,
        #[arg(short = 'G')]
        g: String,
        #[arg(short = 'r')]
        r: u32,
    },
    /// Locality certificate: radius-2^r census check with its
    /// first-order consequence.
    Certificate {
        #[arg(short = 'F')]
        f: String,
        #[arg(short = 'G')]
        g: String,
        #[arg(short = 'r')]
        r: u32,
    },
}

#[derive(Subcommand)]
enum FoCmd {
    /// Quantifier rank of a formula.
    Qr {
        #[arg(long)]
        formula: String,
    },
    /// Evaluate a formula on a graph under an assignment.
    Eval {
        #[arg(short = 'F')]
        f: String,
        #[arg(long)]
        formula: String,
        /// Comma-separated bindings, e.g. `x=0,y=2`.
        #[arg(long)]
        assign: Option<String>,
    },
    /// Evaluate a sentence corpus on two graphs and report separations.
    Compare {
        #[arg(short = 'F')]
        f: String,
        #[arg(short = 'G')]
        g: String,
        #[arg(short = 'r')]
        r: u32,
        /// Sentences file (one formula per line); default: built-in corpus.
        #[arg(long)]
        sentences: Option<String>,
    },
}

#[derive(Subcommand)]
enum WitnessCmd {
    /// Chain a verified sender into an arrow-minimal graph with far-apart
    /// marks `u`, `v`.
    Build {
        #[arg(short = 'S')]
        s: String,
        #[arg(short = 'G')]
        g: String,
        #[arg(short = 'H')]
        h: String,
        #[arg(short = 'n')]
        n: usize,
        /// Skip the sender-minimality precondition.
        #[arg(long)]
        waive_minimality: bool,
    },
    /// Split a marked graph (marks `u`, `v`) into the witness pair.
    Pair {
        #[arg(short = 'F')]
        f: String,
        /// Write the first side to this file.
        #[arg(long)]
        out1: Option<String>,
        /// Write the second side to this file.
        #[arg(long)]
        out2: Option<String>,
    },
    /// Full pipeline: build, split, certify at rank r.
    Run {
        #[arg(short = 'S')]
        s: String,
        #[arg(short = 'G')]
        g: String,
        #[arg(short = 'H')]
        h: String,
        #[arg(short = 'r')]
        r: u32,
        /// Chain parameter override (default 2^(r+1)).
        #[arg(short = 'n')]
        n: Option<usize>,
    },
}

enum CliError {
    Input(String),
    Budget,
}

impl From<BudgetExceeded> for CliError {
    fn from(_: BudgetExceeded) -> Self {
        CliError::Budget
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Budget(_) => CliError::Budget,
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Engine(EngineError::Budget(_)) => CliError::Budget,
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<io::FormatError> for CliError {
    fn from(e: io::FormatError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<arrowlab::MarkError> for CliError {
    fn from(e: arrowlab::MarkError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<arrowlab::GraphError> for CliError {
    fn from(e: arrowlab::GraphError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<arrowlab::LogicError> for CliError {
    fn from(e: arrowlab::LogicError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<fo::ParseError> for CliError {
    fn from(e: fo::ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// What a subcommand produced: text lines, a structured report, and the
/// exit code (0 positive, 1 negative, 3 partial).
struct Outcome {
    text: String,
    report: Report,
    code: u8,
}

impl Outcome {
    fn new(kind: &str) -> Outcome {
        Outcome {
            text: String::new(),
            report: Report::new(kind),
            code: 0,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) -> &mut Self {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
        self
    }

    fn kv(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.report.entry(key, value);
        self
    }

    fn both(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.text.push_str(&format!("{key} {value}\n"));
        self.report.entry(key, value);
        self
    }

    /// Text mode marks blocks with a `#` comment so multi-graph outputs
    /// stay readable while each block still parses as a graph file.
    fn block(&mut self, name: &str, payload: &str) -> &mut Self {
        self.text.push_str(&format!("# {name}\n"));
        self.text.push_str(payload);
        self.report.block(name, payload);
        self
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let cfg = SearchConfig::with_budget(cli.budget.max(1));
    let workers = cli.workers.max(1);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = pool.install(|| dispatch(&cli.command, &cfg));
    match result {
        Ok(mut outcome) => {
            match cli.format {
                Format::Text => print!("{}", outcome.text),
                Format::Structured => {
                    if cli.timings {
                        outcome
                            .report
                            .entry("timing-total-ms", started.elapsed().as_millis());
                    }
                    print!("{}", outcome.report.render());
                }
            }
            ExitCode::from(outcome.code)
        }
        Err(CliError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Budget) => {
            eprintln!("error: {BudgetExceeded}");
            ExitCode::from(3)
        }
    }
}

fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

fn load_graph(path: &str) -> Result<Graph, CliError> {
    Ok(io::parse_graph(&read_file(path)?)?)
}

fn load_marked(path: &str) -> Result<MarkedGraph, CliError> {
    Ok(io::parse_marked_graph(&read_file(path)?)?)
}

fn coloring_lines(c: &EdgeColoring) -> String {
    io::write_coloring(c)
}

fn dispatch(command: &Command, cfg: &SearchConfig) -> Result<Outcome, CliError> {
    match command {
        Command::Graph(cmd) => graph_cmd(cmd, cfg),
        Command::Arrow(cmd) => arrow_cmd(cmd, cfg),
        Command::Gadget(cmd) => gadget_cmd(cmd, cfg),
        Command::Hanf(cmd) => hanf_cmd(cmd, cfg),
        Command::Fo(cmd) => fo_cmd(cmd, cfg),
        Command::Witness(cmd) => witness_cmd(cmd, cfg),
    }
}

fn graph_cmd(cmd: &GraphCmd, _cfg: &SearchConfig) -> Result<Outcome, CliError> {
    match cmd {
        GraphCmd::Info(args) => {
            let g = load_graph(&args.f)?;
            let mut out = Outcome::new("graph-info");
            out.both("n", g.vertex_count());
            out.both("m", g.edge_count());
            out.both("components", g.connected_components().len());
            out.both("isolated-vertices", g.isolated_vertices().len());
            let degs: Vec<String> = g.degree_sequence().iter().map(|d| d.to_string()).collect();
            out.both("degree-sequence", degs.join(" "));
            Ok(out)
        }
        GraphCmd::Iso { f, g } => {
            let a = load_graph(f)?;
            let b = load_graph(g)?;
            let mut out = Outcome::new("graph-iso");
            match arrowlab::isomorphism(&a, &b) {
                Some(map) => {
                    out.line("ISOMORPHIC");
                    out.kv("isomorphic", true);
                    let mut text = String::new();
                    for (u, v) in map.iter() {
                        writeln!(text, "map {u} {v}").unwrap();
                    }
                    out.block("witness", &text);
                }
                None => {
                    out.line("NOT-ISOMORPHIC");
                    out.kv("isomorphic", false);
                    out.code = 1;
                }
            }
            Ok(out)
        }
        GraphCmd::Distance { f, u, v } => {
            let g = load_graph(f)?;
            let d = g.distance(*u, *v)?;
            let mut out = Outcome::new("graph-distance");
            out.both("distance", d);
            Ok(out)
        }
        GraphCmd::Kconn { f, k } => {
            let g = load_graph(f)?;
            if *k == 0 {
                return Err(CliError::Input("k must be at least 1".into()));
            }
            let kappa = g.vertex_connectivity();
            let exact = g.is_k_connected(*k)?;
            let at_least = g.min_connectivity_at_least(*k)?;
            let mut out = Outcome::new("graph-kconn");
            out.both("kappa", kappa);
            out.both("exactly-k-connected", exact);
            out.both("at-least-k-connected", at_least);
            out.code = u8::from(!exact);
            Ok(out)
        }
    }
}

fn arrow_cmd(cmd: &ArrowCmd, cfg: &SearchConfig) -> Result<Outcome, CliError> {
    match cmd {
        ArrowCmd::Decide(args) => {
            let f = load_graph(&args.f)?;
            let g = load_graph(&args.g)?;
            let h = load_graph(&args.h)?;
            let witness = find_good_coloring(&f, &g, &h, &PartialColoring::new(), cfg)?;
            let mut out = Outcome::new("arrow-decide");
            match witness {
                None => {
                    out.line("ARROWS");
                    out.kv("arrows", true);
                }
                Some(c) => {
                    out.line("DOES-NOT-ARROW");
                    out.kv("arrows", false);
                    out.block("good-coloring", &coloring_lines(&c));
                    out.code = 1;
                }
            }
            Ok(out)
        }
        ArrowCmd::Enumerate { args, limit } => {
            let f = load_graph(&args.f)?;
            let g = load_graph(&args.g)?;
            let h = load_graph(&args.h)?;
            let e = enumerate_good_colorings(&f, &g, &h, *limit, cfg)?;
            let mut out = Outcome::new("arrow-enumerate");
            out.both("count", e.colorings.len());
            out.both("truncated", e.truncated);
            let mut text = String::new();
            for c in &e.colorings {
                writeln!(text, "coloring {c}").unwrap();
            }
            out.block("colorings", &text);
            Ok(out)
        }
        ArrowCmd::Minimal(args) => {
            let f = load_graph(&args.f)?;
            let g = load_graph(&args.g)?;
            let h = load_graph(&args.h)?;
            let minimal = is_arrow_minimal(&f, &g, &h, cfg)?;
            let mut out = Outcome::new("arrow-minimal");
            out.line(if minimal { "MINIMAL" } else { "NOT-MINIMAL" });
            out.kv("arrow-minimal", minimal);
            out.code = u8::from(!minimal);
            Ok(out)
        }
    }
}

fn marked_graph_outcome(kind: &str, m: &MarkedGraph, collapsed: usize) -> Outcome {
    let mut out = Outcome::new(kind);
    out.kv("collapsed-edges", collapsed);
    let text = io::write_marked_graph(m);
    out.block("marked-graph", &text);
    out
}

fn gadget_cmd(cmd: &GadgetCmd, cfg: &SearchConfig) -> Result<Outcome, CliError> {
    match cmd {
        GadgetCmd::Join {
            f,
            g,
            left_edge,
            right_edge,
        } => {
            let a = load_marked(f)?;
            let mut b = load_marked(g)?;
            // Both operands often carry the conventional e/f labels; keep
            // the left side's and prefix the right side's on collision.
            let mut right_edge = right_edge.clone();
            let colliding: Vec<String> = b
                .edge_marks()
                .map(|(l, _)| l.to_string())
                .chain(b.vertex_marks().map(|(l, _)| l.to_string()))
                .filter(|l| a.has_mark(l))
                .collect();
            for label in colliding {
                let mut renamed = format!("r_{label}");
                while a.has_mark(&renamed) || b.has_mark(&renamed) {
                    renamed.insert_str(0, "r_");
                }
                b.rename_mark(&label, &renamed)?;
                if label == right_edge {
                    right_edge = renamed;
                }
            }
            let r = arrowlab::edge_join(&a, left_edge, &b, &right_edge)?;
            Ok(marked_graph_outcome("gadget-join", &r.graph, r.collapsed_edges))
        }
        GadgetCmd::Identify { s, first, second } => {
            let a = load_marked(s)?;
            let r = arrowlab::self_identify(&a, first, second)?;
            Ok(marked_graph_outcome("gadget-identify", &r.graph, r.collapsed_edges))
        }
        GadgetCmd::Chain { s, copies } => {
            let a = load_marked(s)?;
            let chained = arrowlab::chain_senders(&a, *copies)?;
            Ok(marked_graph_outcome("gadget-chain", &chained, 0))
        }
        GadgetCmd::Close { s, n, far_copy } => {
            let a = load_marked(s)?;
            let far = match far_copy {
                Some(i) => FarVertexChoice::CopyIndex(*i),
                None => FarVertexChoice::MiddleCopy,
            };
            let closed = arrowlab::close_chain(&a, *n, far)?;
            Ok(marked_graph_outcome("gadget-close", &closed, 0))
        }
        GadgetCmd::VerifyDeterminer { s, g, h, signal } => {
            let d = load_marked(s)?;
            let gg = load_graph(g)?;
            let hh = load_graph(h)?;
            let verdict = verify_determiner(&d, signal, &gg, &hh, cfg)?;
            let mut out = Outcome::new("gadget-verify-determiner");
            render_verdict(&mut out, verdict.ok, verdict.violated_condition, verdict.witness, None);
            Ok(out)
        }
        GadgetCmd::VerifyNegativeSender(args) => sender_verify(args, Polarity::Negative, cfg),
        GadgetCmd::VerifyPositiveSender(args) => sender_verify(args, Polarity::Positive, cfg),
        GadgetCmd::Search {
            g,
            h,
            polarity,
            max_vertices,
            nonadjacent,
        } => {
            let gg = load_graph(g)?;
            let hh = load_graph(h)?;
            let found =
                search_sender(&gg, &hh, (*polarity).into(), *max_vertices, *nonadjacent, cfg)?;
            match found {
                Some(m) => Ok(marked_graph_outcome("gadget-search", &m, 0)),
                None => {
                    let mut out = Outcome::new("gadget-search");
                    out.line("NONE");
                    out.kv("found", false);
                    out.code = 1;
                    Ok(out)
                }
            }
        }
    }
}

fn sender_verify(args: &SenderArgs, polarity: Polarity, cfg: &SearchConfig) -> Result<Outcome, CliError> {
    let s = load_marked(&args.s)?;
    let g = load_graph(&args.g)?;
    let h = load_graph(&args.h)?;
    let verdict = verify_sender(&s, &args.e, &args.f, &g, &h, polarity, cfg)?;
    let nonadjacent = signals_non_adjacent(&s, &args.e, &args.f)?;
    let kind = match polarity {
        Polarity::Negative => "gadget-verify-negative-sender",
        Polarity::Positive => "gadget-verify-positive-sender",
    };
    let mut out = Outcome::new(kind);
    let minimal = if args.minimal && verdict.ok {
        Some(is_sender_minimal(&s, &args.e, &args.f, &g, &h, polarity, cfg)?)
    } else {
        None
    };
    render_verdict(
        &mut out,
        verdict.ok && minimal != Some(false),
        verdict.violated_condition,
        verdict.witness,
        Some(nonadjacent),
    );
    if let Some(m) = minimal {
        out.both("minimal", m);
        if !m {
            out.code = 1;
        }
    }
    Ok(out)
}

fn render_verdict(
    out: &mut Outcome,
    ok: bool,
    condition: Option<u8>,
    witness: Option<EdgeColoring>,
    nonadjacent: Option<bool>,
) {
    if ok {
        match nonadjacent {
            Some(na) => out.line(format!("OK non-adjacent-signals={na}")),
            None => out.line("OK"),
        };
    } else if let Some(c) = condition {
        out.line(format!("FAIL condition={c}"));
        out.code = 1;
    }
    out.kv("ok", ok);
    if let Some(na) = nonadjacent {
        out.kv("non-adjacent-signals", na);
    }
    if let Some(c) = condition {
        out.both("violated-condition", c);
    }
    if let Some(w) = witness {
        out.block("witness-coloring", &coloring_lines(&w));
    }
}

fn hanf_cmd(cmd: &HanfCmd, _cfg: &SearchConfig) -> Result<Outcome, CliError> {
    match cmd {
        HanfCmd::Types { f, r } => {
            let g = load_graph(f)?;
            let mut out = Outcome::new("hanf-types");
            out.kv("radius", r);
            let mut text = String::new();
            for v in 0..g.vertex_count() as u32 {
                writeln!(text, "vertex {v} type {}", r_type(&g, v, *r)?.hex()).unwrap();
            }
            out.block("types", &text);
            Ok(out)
        }
        HanfCmd::Census { f, r } => {
            let g = load_graph(f)?;
            let census = type_census(&g, *r);
            let mut out = Outcome::new("hanf-census");
            out.kv("radius", r);
            out.kv("total", census.total());
            let mut text = String::new();
            for (t, c) in census.iter() {
                writeln!(text, "type {} {c}", t.hex()).unwrap();
            }
            out.block("census", &text);
            Ok(out)
        }
        HanfCmd::Equiv { f, g, r } => {
            let a = load_graph(f)?;
            let b = load_graph(g)?;
            let mut out = Outcome::new("hanf-equiv");
            out.kv("radius", r);
            match arrowlab::r_equivalence_bijection(&a, &b, *r) {
                Some(map) => {
                    out.line("EQUIVALENT");
                    out.kv("equivalent", true);
                    let mut text = String::new();
                    for (u, v) in map.iter() {
                        writeln!(text, "map {u} {v}").unwrap();
                    }
                    out.block("bijection", &text);
                }
                None => {
                    out.line("NOT-EQUIVALENT");
                    out.kv("equivalent", false);
                    out.code = 1;
                }
            }
            Ok(out)
        }
        HanfCmd::Certificate { f, g, r } => {
            if *r == 0 {
                return Err(CliError::Input("rank must be at least 1".into()));
            }
            let a = load_graph(f)?;
            let b = load_graph(g)?;
            let cert = hanf_certificate(&a, &b, *r);
            let mut out = Outcome::new("hanf-certificate");
            out.both("rank", cert.rank);
            out.both("radius", cert.radius);
            out.both("equivalent", cert.equivalent);
            let conclusion = match cert.conclusion {
                HanfConclusion::FoEquivalent(r) => format!("fo-{r}-equivalent"),
                HanfConclusion::Inconclusive => "inconclusive".to_string(),
            };
            out.both("conclusion", conclusion);
            for w in &cert.warnings {
                out.both("warning", w);
            }
            let mut text = String::new();
            for (t, c) in cert.census_a.iter() {
                writeln!(text, "type {} {c}", t.hex()).unwrap();
            }
            out.block("census-a", &text);
            let mut text = String::new();
            for (t, c) in cert.census_b.iter() {
                writeln!(text, "type {} {c}", t.hex()).unwrap();
            }
            out.block("census-b", &text);
            out.code = u8::from(!cert.equivalent);
            Ok(out)
        }
    }
}

fn parse_assignment(text: &str) -> Result<fo::Assignment, CliError> {
    let mut out = fo::Assignment::new();
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        let Some((var, val)) = part.split_once('=') else {
            return Err(CliError::Input(format!("bad binding `{part}`, expected var=vertex")));
        };
        let vertex: u32 = val
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("bad vertex `{val}` in binding `{part}`")))?;
        out.insert(var.trim().to_string(), vertex);
    }
    Ok(out)
}

fn fo_cmd(cmd: &FoCmd, _cfg: &SearchConfig) -> Result<Outcome, CliError> {
    match cmd {
        FoCmd::Qr { formula } => {
            let f = fo::parse_formula(formula)?;
            let mut out = Outcome::new("fo-qr");
            out.both("qr", f.quantifier_rank());
            Ok(out)
        }
        FoCmd::Eval { f, formula, assign } => {
            let g = load_graph(f)?;
            let parsed = fo::parse_formula(formula)?;
            let assignment = match assign {
                Some(a) => parse_assignment(a)?,
                None => fo::Assignment::new(),
            };
            let value = fo::evaluate(&g, &parsed, &assignment)?;
            let mut out = Outcome::new("fo-eval");
            out.both("value", value);
            out.code = u8::from(!value);
            Ok(out)
        }
        FoCmd::Compare { f, g, r, sentences } => {
            let a = load_graph(f)?;
            let b = load_graph(g)?;
            let corpus: Vec<CorpusSentence> = match sentences {
                Some(path) => fo::parse_sentences_file(&read_file(path)?)?
                    .into_iter()
                    .enumerate()
                    .map(|(i, (text, formula))| CorpusSentence {
                        name: format!("line-{}", i + 1),
                        text,
                        formula,
                    })
                    .collect(),
                None => fo::default_corpus(),
            };
            let report = fo::compare_models(&a, &b, &corpus, *r)?;
            let mut out = Outcome::new("fo-compare");
            out.both("rank", r);
            out.both("sentences-evaluated", report.rows.len());
            out.both("separating", report.separating.len());
            let mut text = String::new();
            for row in &report.rows {
                writeln!(
                    text,
                    "sentence qr={} a={} b={} agree={} {}",
                    row.rank, row.holds_in_a, row.holds_in_b, row.agree(), row.name
                )
                .unwrap();
            }
            out.block("table", &text);
            let mut text = String::new();
            for &i in &report.separating {
                writeln!(text, "separated-by {} {}", report.rows[i].name, report.rows[i].text)
                    .unwrap();
            }
            out.block("separations", &text);
            out.code = u8::from(!report.separating.is_empty());
            Ok(out)
        }
    }
}

fn verdict3_str(v: Verdict3) -> &'static str {
    match v {
        Verdict3::True => "true",
        Verdict3::False => "false",
        Verdict3::Unknown => "unknown",
    }
}

fn witness_cmd(cmd: &WitnessCmd, cfg: &SearchConfig) -> Result<Outcome, CliError> {
    match cmd {
        WitnessCmd::Build {
            s,
            g,
            h,
            n,
            waive_minimality,
        } => {
            let sender = load_marked(s)?;
            let gg = load_graph(g)?;
            let hh = load_graph(h)?;
            let w = build_far_apart_minimal(&sender, &gg, &hh, *n, *waive_minimality, cfg)?;
            let mut out = Outcome::new("witness-build");
            out.both("d-uv", w.distance_uv);
            out.both("arrow-minimal", verdict3_str(w.minimality));
            out.both("sender-minimality-waived", w.minimality_waived);
            out.block("marked-graph", &io::write_marked_graph(&w.marked));
            Ok(out)
        }
        WitnessCmd::Pair { f, out1, out2 } => {
            let marked = load_marked(f)?;
            let pair = build_witness_pair(&marked)?;
            let text1 = io::write_graph(&pair.f1);
            let text2 = io::write_graph(&pair.f2);
            if let Some(path) = out1 {
                std::fs::write(path, &text1).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
            }
            if let Some(path) = out2 {
                std::fs::write(path, &text2).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
            }
            let mut out = Outcome::new("witness-pair");
            out.both("f1-vertices", pair.f1.vertex_count());
            out.both("f2-vertices", pair.f2.vertex_count());
            out.block("f1", &text1);
            out.block("f2", &text2);
            Ok(out)
        }
        WitnessCmd::Run { s, g, h, r, n } => {
            if *r == 0 {
                return Err(CliError::Input("rank must be at least 1".into()));
            }
            let sender = load_marked(s)?;
            let gg = load_graph(g)?;
            let hh = load_graph(h)?;
            let corpus = fo::default_corpus();
            let run = run_pipeline(&sender, &gg, &hh, *r, *n, &corpus, cfg)?;
            let cert = &run.certificate;
            let mut out = Outcome::new("witness-run");
            out.both("status", cert.status);
            for w in &cert.warnings {
                out.both("warning", w);
            }
            out.both("rank", cert.rank);
            out.both("census-radius", cert.radius);
            out.both("chain-parameter", run.chain_parameter);
            out.both("d-uv", run.witness.distance_uv);
            out.both("base-arrow-minimal", verdict3_str(run.witness.minimality));
            out.both("census-equal", cert.hanf.equivalent);
            out.both("arrows-f1", verdict3_str(cert.arrows_f1));
            out.both("arrows-f2", verdict3_str(cert.arrows_f2));
            out.both(
                "explicit-bijection",
                run.explicit_bijection
                    .map(|b| b.to_string())
                    .unwrap_or_else(|| "not-applicable".to_string()),
            );
            out.both("fo-sentences-evaluated", cert.fo_comparison.rows.len());
            out.both("fo-separating", cert.fo_comparison.separating.len());
            out.both("budget", cfg.node_budget);
            out.block("sender", &io::write_marked_graph(&sender));
            out.block("pattern-g", &io::write_graph(&gg));
            out.block("pattern-h", &io::write_graph(&hh));
            out.block("base-graph", &io::write_marked_graph(&run.witness.marked));
            out.block("f1", &io::write_graph(&cert.f1));
            out.block("f2", &io::write_graph(&cert.f2));
            out.code = match cert.status {
                CertificateStatus::Success => 0,
                CertificateStatus::Partial => 3,
                _ => 1,
            };
            Ok(out)
        }
    }
}

