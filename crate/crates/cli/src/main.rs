//! `p2mcb`: minimum cycle bases of weighted partial 2-trees.
//!
//! Exit codes: 0 success, 1 input error, 2 not a partial 2-tree,
//! 3 internal invariant violation.

mod render;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mcb_core::generator::{gen_random_outerplanar, gen_random_partial_2tree};
use mcb_core::reference::verify::verify_basis;
use mcb_core::reference::DEFAULT_BOUND;
use mcb_core::{compute_mcb, load_graph, write_graph, McbError, WeightedGraph};

const EXIT_INPUT: u8 = 1;
const EXIT_NOT_PARTIAL_2TREE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "p2mcb",
    version,
    about = "Minimum cycle bases of weighted partial 2-trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a minimum cycle basis.
    Mcb(McbArgs),
    /// Emit a random partial 2-tree in the input format.
    Gen(GenArgs),
    /// Compute a basis and check it independently.
    Verify(VerifyArgs),
    /// Time the pipeline on generated graphs of growing size.
    Bench(BenchArgs),
    /// Dump tree decompositions and separator events.
    Decompose(InputArg),
}

#[derive(Args, Debug)]
struct InputArg {
    /// Graph file, or `-` for standard input.
    input: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct McbArgs {
    #[command(flatten)]
    input: InputArg,
    /// Print expanded cycles instead of the implicit form.
    #[arg(long)]
    explicit: bool,
    /// Append summary statistics.
    #[arg(long)]
    stats: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.2)]
    delete_prob: f64,
    #[arg(long, default_value_t = 1)]
    wmin: u64,
    #[arg(long, default_value_t = 20)]
    wmax: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Generate an outerplanar graph instead.
    #[arg(long)]
    outerplanar: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArg,
    /// Largest vertex count for the exhaustive weight check.
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    max_n: usize,
    /// Corrupt the basis before checking (test hook).
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [10_000usize, 100_000, 1_000_000])]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 0.2)]
    delete_prob: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Timed rounds; each round runs every size once and the median per
    /// size is reported.
    #[arg(long, default_value_t = 3)]
    repeats: usize,
}

enum Failure {
    Input(String),
    NotPartial2Tree,
    Internal(String),
}

impl From<McbError> for Failure {
    fn from(e: McbError) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::NotPartial2Tree
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Mcb(a) => cmd_mcb(&a, &mut out),
        Command::Gen(a) => cmd_gen(&a, &mut out),
        Command::Verify(a) => cmd_verify(&a, &mut out),
        Command::Bench(a) => cmd_bench(&a, &mut out),
        Command::Decompose(a) => cmd_decompose(&a, &mut out),
    };
    let flushed = out.flush();
    match result.and_then(|code| flushed.map(|()| code).map_err(Failure::from)) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::NotPartial2Tree) => {
            eprintln!("error: input graph is not a partial 2-tree");
            ExitCode::from(EXIT_NOT_PARTIAL_2TREE)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

fn read_input(arg: &InputArg) -> Result<WeightedGraph, Failure> {
    let parsed = if arg.input.as_os_str() == "-" {
        load_graph(io::stdin().lock())
    } else {
        let file = File::open(&arg.input)
            .map_err(|e| Failure::Input(format!("{}: {e}", arg.input.display())))?;
        load_graph(BufReader::new(file))
    };
    parsed.map_err(|e| Failure::Input(e.to_string()))
}

fn cmd_mcb(a: &McbArgs, out: &mut impl Write) -> Result<u8, Failure> {
    let g = read_input(&a.input)?;
    let mcb = compute_mcb(&g)?;
    let explicit = if a.explicit {
        Some(mcb.report_explicit(&g)?)
    } else {
        None
    };
    let stats = a.stats.then(|| mcb.stats());
    match a.format {
        Format::Text => {
            match &explicit {
                Some(cycles) => render::explicit_text(&g, cycles, out)?,
                None => render::implicit_text(&mcb, out)?,
            }
            if let Some(s) = &stats {
                render::stats_text(s, g.scale(), out)?;
            }
        }
        Format::Json => {
            let doc = render::json_document(&g, &mcb, explicit.as_deref(), stats.as_ref());
            serde_json::to_writer_pretty(&mut *out, &doc)
                .map_err(|e| Failure::Internal(e.to_string()))?;
            writeln!(out)?;
        }
    }
    Ok(0)
}

fn cmd_gen(a: &GenArgs, out: &mut impl Write) -> Result<u8, Failure> {
    let gen = if a.outerplanar {
        gen_random_outerplanar
    } else {
        gen_random_partial_2tree
    };
    let g = gen(a.n, a.delete_prob, (a.wmin, a.wmax), a.seed)
        .map_err(|e| Failure::Input(e.to_string()))?;
    write_graph(&g, out)?;
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs, out: &mut impl Write) -> Result<u8, Failure> {
    let g = read_input(&a.input)?;
    let mcb = compute_mcb(&g)?;
    let mut cycles: Vec<Vec<usize>> = mcb
        .report_explicit(&g)?
        .into_iter()
        .map(|c| c.edges)
        .collect();
    if a.inject_fault {
        let dup = cycles.first().cloned().unwrap_or_default();
        cycles.push(dup);
    }
    let r = verify_basis(&g, &cycles, a.max_n);
    writeln!(out, "simple={}", r.simple.as_str())?;
    writeln!(
        out,
        "count={} expected={} actual={}",
        r.count.as_str(),
        r.expected_count,
        r.actual_count
    )?;
    writeln!(out, "rank={} rank_value={}", r.rank.as_str(), r.rank_value)?;
    match r.reference_weight {
        Some(w) => writeln!(
            out,
            "weight={} total={} reference={}",
            r.weight.as_str(),
            r.total_weight.display(g.scale()),
            w.display(g.scale())
        )?,
        None => writeln!(
            out,
            "weight={} total={}",
            r.weight.as_str(),
            r.total_weight.display(g.scale())
        )?,
    }
    Ok(if r.passed() { 0 } else { EXIT_INTERNAL })
}

fn cmd_bench(a: &BenchArgs, out: &mut impl Write) -> Result<u8, Failure> {
    if a.repeats == 0 {
        return Err(Failure::Input("--repeats must be positive".into()));
    }
    writeln!(
        out,
        "{:>10} {:>10} {:>12} {:>12} {:>14} {:>8}",
        "n", "m", "time_ms", "implicit", "explicit", "ratio"
    )?;
    let graphs = a
        .sizes
        .iter()
        .map(|&n| gen_random_partial_2tree(n, a.delete_prob, (1, 20), a.seed))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Input(e.to_string()))?;
    // interleaved rounds expose every size to the same machine drift
    let mut times = vec![Vec::with_capacity(a.repeats); graphs.len()];
    let mut stats = Vec::with_capacity(graphs.len());
    for round in 0..a.repeats {
        for (i, g) in graphs.iter().enumerate() {
            let start = Instant::now();
            let mcb = compute_mcb(g)?;
            times[i].push(start.elapsed().as_secs_f64() * 1e3);
            if round == 0 {
                stats.push(mcb.stats());
            }
        }
    }
    let mut last: Option<f64> = None;
    for ((g, times), s) in graphs.iter().zip(&mut times).zip(stats) {
        times.sort_by(f64::total_cmp);
        let t = times[times.len() / 2];
        let ratio = last.map_or("-".to_string(), |p| format!("{:.2}", t / p));
        writeln!(
            out,
            "{:>10} {:>10} {:>12.1} {:>12} {:>14} {:>8}",
            g.n(),
            g.m(),
            t,
            s.implicit_size,
            s.explicit_size,
            ratio
        )?;
        last = Some(t);
    }
    Ok(0)
}

fn cmd_decompose(a: &InputArg, out: &mut impl Write) -> Result<u8, Failure> {
    let g = read_input(a)?;
    let mcb = compute_mcb(&g)?;
    render::decomposition_text(&mcb, out)?;
    Ok(0)
}
