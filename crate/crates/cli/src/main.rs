//! `lcpindex`: build and query suffix indexes from the command line.

mod bench;
mod stream;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lcpindex::batch::{check_pairs, locate_many, sample_ranks};
use lcpindex::metrics::{OpRecorder, OpStats};
use lcpindex::oracle::{naive_suffix_array, naive_suffix_tree, trees_isomorphic};
use lcpindex::{CounterSnapshot, SuffixIndex, SuffixTree, Symbol};

#[derive(Parser)]
#[command(name = "lcpindex", version, about = "Online suffix indexes over prepend-only texts")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Debug)]
pub struct Opts {
    /// Check results against brute-force oracles.
    #[arg(long, global = true)]
    verify: bool,
    /// Largest text (sentinel included) the oracles accept.
    #[arg(long, global = true, default_value_t = 5000)]
    verify_limit: usize,
    /// Write per-operation statistics as JSON to this path.
    #[arg(long, global = true)]
    stats: Option<PathBuf>,
    /// Branching parameter of the list's main tree (must exceed 4).
    #[arg(long, global = true, default_value_t = 8, value_parser = parse_branching)]
    bucket_b: usize,
    /// Seed for randomized containers and sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Read whitespace-separated integer tokens instead of bytes.
    #[arg(long, global = true)]
    tokens: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Index a file and answer pattern queries.
    Index {
        file: PathBuf,
        /// Pattern to locate; prints "count pos...". Repeatable.
        #[arg(short, long = "query")]
        query: Vec<String>,
    },
    /// Run the line protocol on standard input.
    Stream,
    /// Print the suffix array and lcp array of a file.
    Sort { file: PathBuf },
    /// Run scripted workloads and print per-operation statistics.
    Bench {
        /// Workloads to run: random, a, ab, fib.
        #[arg(long, value_delimiter = ',', default_value = "random,a,ab,fib")]
        workload: Vec<String>,
        /// Text sizes as powers of two.
        #[arg(long, value_delimiter = ',', default_value = "12,16,20")]
        log_sizes: Vec<u32>,
    },
}

fn parse_branching(s: &str) -> Result<usize, String> {
    let b: usize = s.parse().map_err(|e| format!("{e}"))?;
    if b <= 4 {
        return Err("branching parameter must be greater than 4".into());
    }
    Ok(b)
}

/// Converts raw input into symbols: bytes map to codes 1..=256, tokens `t`
/// to code `t + 1`.
pub fn to_symbols(data: &[u8], tokens: bool) -> Result<Vec<Symbol>, String> {
    if !tokens {
        return Ok(lcpindex::symbols_from_bytes(data));
    }
    let s = std::str::from_utf8(data).map_err(|e| format!("token input: {e}"))?;
    s.split_whitespace()
        .map(|t| match t.parse::<u32>() {
            Ok(v) if v < u32::MAX => Ok(Symbol(v + 1)),
            _ => Err(format!("bad token {t:?}")),
        })
        .collect()
}

pub fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn occurrences_line(positions: &[usize]) -> String {
    if positions.is_empty() {
        "0".into()
    } else {
        format!("{} {}", positions.len(), join(positions))
    }
}

/// Oracle comparison of a tree's suffix array and shape.
pub fn verify_tree(tree: &SuffixTree, limit: usize) -> Result<bool, String> {
    let text = tree.text().to_symbols();
    let sa = naive_suffix_array(&text, limit).map_err(|e| e.to_string())?;
    let shape = naive_suffix_tree(&text, limit).map_err(|e| e.to_string())?;
    Ok(tree.dump_suffix_array() == sa && trees_isomorphic(&tree.to_ref_tree(), &shape))
}

/// Extends `tree` by one symbol and records the operation's cost.
pub fn extend_recorded(tree: &mut SuffixTree, a: Symbol, rec: &mut OpRecorder) -> lcpindex::Result<()> {
    let probes = tree.index().list().counters().snapshot().probes;
    tree.extend_front(a)?;
    let c = tree.last_cost();
    rec.record(CounterSnapshot {
        steps: c.steps,
        rebuild_steps: c.rebuild_steps,
        probes: tree.index().list().counters().snapshot().probes - probes,
        char_reads: c.char_reads,
    });
    Ok(())
}

pub fn write_stats(path: &Option<PathBuf>, stats: &[OpStats]) -> Result<(), String> {
    if let Some(p) = path {
        let json = serde_json::to_string_pretty(stats).map_err(|e| e.to_string())?;
        std::fs::write(p, json + "\n").map_err(|e| format!("{}: {e}", p.display()))?;
    }
    Ok(())
}

fn read(path: &PathBuf) -> Result<Vec<u8>, String> {
    std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_index(opts: &Opts, file: &PathBuf, queries: &[String]) -> Result<(), String> {
    let text = to_symbols(&read(file)?, opts.tokens)?;
    let mut tree = SuffixTree::with_options(opts.seed, opts.bucket_b);
    let mut rec = OpRecorder::default();
    // The text arrives last symbol first.
    for &a in text.iter().rev() {
        extend_recorded(&mut tree, a, &mut rec).map_err(|e| e.to_string())?;
    }
    if opts.verify && !verify_tree(&tree, opts.verify_limit)? {
        return Err("verification failed".into());
    }
    let patterns = queries
        .iter()
        .map(|q| to_symbols(q.as_bytes(), opts.tokens))
        .collect::<Result<Vec<_>, _>>()?;
    for occ in locate_many(tree.index(), &patterns) {
        println!("{}", occurrences_line(&occ.positions));
    }
    write_stats(&opts.stats, &[rec.finish("extend", text.len() as u64)])
}

fn cmd_sort(opts: &Opts, file: &PathBuf) -> Result<(), String> {
    let text = to_symbols(&read(file)?, opts.tokens)?;
    let mut idx: SuffixIndex = SuffixIndex::with_options(opts.seed, opts.bucket_b);
    let mut rec = OpRecorder::default();
    for &a in text.iter().rev() {
        let before = idx.list().counters().snapshot();
        let info = idx.push_front(a).map_err(|e| e.to_string())?;
        let mut d = idx.list().counters().snapshot() - before;
        d.steps += info.comparisons;
        d.char_reads += info.char_reads;
        rec.record(d);
    }
    let (sa, lcp) = idx.dump_suffix_array();
    if opts.verify {
        if text.len() < opts.verify_limit {
            let want = naive_suffix_array(&text, opts.verify_limit).map_err(|e| e.to_string())?;
            if want != (sa.clone(), lcp.clone()) {
                return Err("verification failed".into());
            }
        } else {
            let ranks = sample_ranks(sa.len(), 1000, opts.seed);
            let bad = check_pairs(idx.text(), &sa, &lcp, &ranks);
            if !bad.is_empty() {
                return Err(format!("verification failed on {} of {} sampled pairs", bad.len(), ranks.len()));
            }
            eprintln!("spot-checked {} adjacent pairs", ranks.len());
        }
    }
    println!("{}", join(&sa));
    println!("{}", join(&lcp));
    write_stats(&opts.stats, &[rec.finish("push", text.len() as u64)])
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match &cli.cmd {
        Cmd::Index { file, query } => cmd_index(&cli.opts, file, query),
        Cmd::Stream => stream::run(&cli.opts, std::io::stdin().lock(), std::io::stdout().lock()),
        Cmd::Sort { file } => cmd_sort(&cli.opts, file),
        Cmd::Bench { workload, log_sizes } => bench::run(&cli.opts, workload, log_sizes),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
