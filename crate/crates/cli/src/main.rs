use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use mopdim_core::bound::{build_resolving_set_with, target_size, BuildOptions};
use mopdim_core::dim_two::{decide_dim_two, decide_dim_two_simple, embed, verify_characterization};
use mopdim_core::families::{self, brute_force_beta, BETA_LIMIT};
use mopdim_core::io::{self, Answer, ResultRecord};
use mopdim_core::{distance_table, Error, MopGraph, VertexSet};

/// Metric dimension tools for maximal outerplanar graphs.
///
/// Exit codes: 0 success, 1 negative answer or invalid graph, 2 I/O error,
/// 3 internal failure.
#[derive(Parser)]
#[command(name = "mopdim", version)]
struct Cli {
    /// Print one JSON record per result instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Input {
    /// Graph file: `n` then one diagonal per line, or `n` then all edges with --edges.
    path: PathBuf,

    /// Read an arbitrary edge list and relabel it clockwise.
    #[arg(long)]
    edges: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file describes a maximal outerplanar graph.
    Validate(Input),
    /// Decide whether the metric dimension is 2.
    Dim2 {
        #[command(flatten)]
        input: Input,
        /// Also run the quadratic decider and, for small graphs, the brute-force oracle.
        #[arg(long)]
        cross_check: bool,
    },
    /// Build a resolving set of size ⌈2n/5⌉.
    Resolve {
        #[command(flatten)]
        input: Input,
        /// Skip the final BFS verification.
        #[arg(long)]
        no_verify: bool,
    },
    /// Metric dimension by exhaustive search (n ≤ 16).
    Beta(Input),
    /// Write generated graphs.
    Gen {
        family: Family,
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; with `enumerate --split` a directory. Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write one file per enumerated graph into the --out directory.
        #[arg(long, requires = "out")]
        split: bool,
    },
    /// Grid embedding of a dimension-2 graph, as DOT or coordinates.
    Embed {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = EmbedFormat::Dot)]
        format: EmbedFormat,
    },
    /// Run one operation over every graph of a stream, in parallel.
    ///
    /// Worker count follows MOPDIM_THREADS when set.
    Batch { path: PathBuf, op: BatchOp },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Fan,
    Zigzag,
    Random,
    Enumerate,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmbedFormat {
    Dot,
    Coords,
}

#[derive(Clone, Copy, ValueEnum)]
enum BatchOp {
    Dim2,
    Resolve,
    Beta,
}

impl BatchOp {
    fn name(self) -> &'static str {
        match self {
            BatchOp::Dim2 => "dim2",
            BatchOp::Resolve => "resolve",
            BatchOp::Beta => "beta",
        }
    }
}

/// A failed command: message plus the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn negative(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Self {
            code: 2,
            message: format!("{}: {e}", path.display()),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ConstructionFailed(..) | Error::InvariantViolation(_) => {
                Failure::internal(e.to_string())
            }
            _ => Failure::negative(e.to_string()),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

type Outcome = Result<ExitCode, Failure>;

/// A graph read from disk, with the labels used in the file.
struct Loaded {
    id: String,
    graph: MopGraph,
    /// Clockwise label to file label, when the input was an edge list.
    original: Option<BTreeMap<u32, u32>>,
}

impl Loaded {
    fn labels(&self, s: &VertexSet) -> VertexSet {
        match &self.original {
            Some(map) => VertexSet::from_labels(s.members().iter().map(|v| map[v])),
            None => s.clone(),
        }
    }

    fn label(&self, v: u32) -> u32 {
        self.original.as_ref().map_or(v, |m| m[&v])
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn load(input: &Input) -> Result<Loaded, Failure> {
    let text = read(&input.path)?;
    let id = input.path.display().to_string();
    if input.edges {
        let (graph, map) = io::parse_edge_list(&text)?;
        let original = map.into_iter().map(|(old, new)| (new, old)).collect();
        Ok(Loaded {
            id,
            graph,
            original: Some(original),
        })
    } else {
        Ok(Loaded {
            id,
            graph: io::parse_mop(&text)?,
            original: None,
        })
    }
}

fn record(
    id: &str,
    n: usize,
    op: &str,
    answer: Answer,
    witness: Option<VertexSet>,
    start: Instant,
) -> ResultRecord {
    ResultRecord {
        graph: id.to_string(),
        n,
        operation: op.to_string(),
        answer,
        witness,
        micros: start.elapsed().as_micros() as u64,
    }
}

fn validate(cli: &Cli, input: &Input) -> Outcome {
    let start = Instant::now();
    let g = load(input)?;
    if cli.json {
        let r = record(
            &g.id,
            g.graph.n(),
            "validate",
            Answer::Bool(true),
            None,
            start,
        );
        println!("{}", r.to_line());
    } else {
        println!(
            "valid: n = {}, {} diagonals",
            g.graph.n(),
            g.graph.diagonals().len()
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn dim2(cli: &Cli, input: &Input, cross_check: bool) -> Outcome {
    let start = Instant::now();
    let g = load(input)?;
    let n = g.graph.n();
    let answer = decide_dim_two(&g.graph);
    if cross_check {
        let simple = decide_dim_two_simple(&g.graph, &distance_table(&g.graph));
        if simple.is_some() != answer.is_some() {
            return Err(Failure::internal(format!(
                "deciders disagree: linear {answer:?}, quadratic {simple:?}"
            )));
        }
        if n <= BETA_LIMIT {
            let (beta, _) = brute_force_beta(&g.graph)?;
            if (beta == 2) != answer.is_some() {
                return Err(Failure::internal(format!(
                    "decider says {answer:?} but the oracle finds dimension {beta}"
                )));
            }
        }
    }
    let witness = answer.as_ref().map(|s| g.labels(s));
    if cli.json {
        let r = record(
            &g.id,
            n,
            "dim2",
            Answer::Bool(answer.is_some()),
            witness.clone(),
            start,
        );
        println!("{}", r.to_line());
    } else {
        match &witness {
            Some(s) => println!("YES {s}"),
            None => println!("NO"),
        }
    }
    Ok(if answer.is_some() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn resolve(cli: &Cli, input: &Input, no_verify: bool) -> Outcome {
    let g = load(input)?;
    let start = Instant::now();
    let opts = BuildOptions {
        verify: !no_verify,
        ..BuildOptions::for_order(g.graph.n())
    };
    let (set, _) = build_resolving_set_with(&g.graph, opts)?;
    let set = g.labels(&set);
    let status = if no_verify { "unverified" } else { "verified" };
    if cli.json {
        let r = record(
            &g.id,
            g.graph.n(),
            "resolve",
            Answer::Count(set.len() as u64),
            Some(set),
            start,
        );
        println!("{}", r.to_line());
    } else {
        println!("size {} ({status}) in {:.3?}", set.len(), start.elapsed());
        println!("{set}");
    }
    Ok(ExitCode::SUCCESS)
}

fn beta(cli: &Cli, input: &Input) -> Outcome {
    let start = Instant::now();
    let g = load(input)?;
    let (b, basis) = brute_force_beta(&g.graph)?;
    let basis = g.labels(&basis);
    if cli.json {
        let r = record(
            &g.id,
            g.graph.n(),
            "beta",
            Answer::Count(b as u64),
            Some(basis),
            start,
        );
        println!("{}", r.to_line());
    } else {
        println!("beta {b} {basis}");
    }
    Ok(ExitCode::SUCCESS)
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::io(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn gen(family: Family, n: usize, seed: u64, out: Option<&Path>, split: bool) -> Outcome {
    if n < 3 {
        return Err(Error::TooFewVertices(n).into());
    }
    let graph = match family {
        Family::Fan => families::fan(n),
        Family::Zigzag => families::zigzag(n),
        Family::Random => families::random_mop(n, seed),
        Family::Enumerate => {
            if split {
                let dir = out.expect("clap enforces --out with --split");
                fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
                for (k, g) in families::enumerate_mops(n).enumerate() {
                    let path = dir.join(format!("mop-{n}-{k:06}.txt"));
                    fs::write(&path, io::write_mop(&g)).map_err(|e| Failure::io(&path, e))?;
                }
            } else {
                let graphs: Vec<MopGraph> = families::enumerate_mops(n).collect();
                write_out(out, &io::write_mop_stream(&graphs))?;
            }
            return Ok(ExitCode::SUCCESS);
        }
    };
    write_out(out, &io::write_mop(&graph))?;
    Ok(ExitCode::SUCCESS)
}

fn embed_cmd(cli: &Cli, input: &Input, format: EmbedFormat) -> Outcome {
    let g = load(input)?;
    let Some(basis) = decide_dim_two(&g.graph) else {
        return Err(Failure::negative(
            "NO_DIM2_BASIS: the metric dimension is greater than 2",
        ));
    };
    let emb = embed(&g.graph, &basis, &distance_table(&g.graph))?;
    if let Err(v) = verify_characterization(&g.graph, &emb) {
        return Err(Failure::internal(format!(
            "embedding fails the characterization: {v}"
        )));
    }
    if cli.json {
        let coords: BTreeMap<String, (u32, u32)> = (1..=g.graph.n() as u32)
            .map(|v| (g.label(v).to_string(), emb.coord(v)))
            .collect();
        let value = serde_json::json!({ "d": emb.d, "basis": g.labels(&basis), "coords": coords });
        println!("{value}");
        return Ok(ExitCode::SUCCESS);
    }
    match format {
        EmbedFormat::Dot => print!("{}", io::embedding_dot(&g.graph, &emb)),
        EmbedFormat::Coords => {
            println!("# d = {}, basis {}", emb.d, g.labels(&basis));
            for v in 1..=g.graph.n() as u32 {
                let (i, j) = emb.coord(v);
                println!("{} {i} {j}", g.label(v));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn batch_one(id: String, g: &MopGraph, op: BatchOp) -> Result<ResultRecord, Failure> {
    let start = Instant::now();
    let n = g.n();
    let (answer, witness) = match op {
        BatchOp::Dim2 => {
            let s = decide_dim_two(g);
            (Answer::Bool(s.is_some()), s)
        }
        BatchOp::Resolve => {
            let (s, _) = build_resolving_set_with(g, BuildOptions::for_order(n))?;
            if s.len() != target_size(n) {
                return Err(Failure::internal(format!("{id}: set of size {}", s.len())));
            }
            (Answer::Count(s.len() as u64), Some(s))
        }
        BatchOp::Beta => {
            let (b, s) = brute_force_beta(g)?;
            (Answer::Count(b as u64), Some(s))
        }
    };
    Ok(record(&id, n, op.name(), answer, witness, start))
}

fn batch(path: &Path, op: BatchOp) -> Outcome {
    let graphs = io::parse_mop_stream(&read(path)?)?;
    let threads = std::env::var("MOPDIM_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::internal(e.to_string()))?;
    let name = path.display().to_string();
    let records: Vec<Result<ResultRecord, Failure>> = pool.install(|| {
        graphs
            .par_iter()
            .enumerate()
            .map(|(k, g)| batch_one(format!("{name}#{k}"), g, op))
            .collect()
    });
    for r in records {
        println!("{}", r?.to_line());
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate(input) => validate(cli, input),
        Command::Dim2 { input, cross_check } => dim2(cli, input, *cross_check),
        Command::Resolve { input, no_verify } => resolve(cli, input, *no_verify),
        Command::Beta(input) => beta(cli, input),
        Command::Gen {
            family,
            n,
            seed,
            out,
            split,
        } => gen(*family, *n, *seed, out.as_deref(), *split),
        Command::Embed { input, format } => embed_cmd(cli, input, *format),
        Command::Batch { path, op } => batch(path, *op),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
