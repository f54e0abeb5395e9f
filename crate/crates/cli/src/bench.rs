//! Scripted workloads with per-operation statistics.

use std::time::Instant;

use lcpindex::metrics::OpRecorder;
use lcpindex::{SuffixTree, Symbol};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::{extend_recorded, write_stats, Opts};

fn fibonacci(n: usize) -> Vec<u8> {
    let (mut a, mut b) = (b"a".to_vec(), b"ab".to_vec());
    while b.len() < n {
        let next = [b.as_slice(), a.as_slice()].concat();
        a = b;
        b = next;
    }
    b.truncate(n);
    b
}

fn workload(name: &str, n: usize, seed: u64) -> Result<Vec<u8>, String> {
    Ok(match name {
        "random" => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n).map(|_| rng.gen()).collect()
        }
        "a" => vec![b'a'; n],
        "ab" => b"ab".iter().copied().cycle().take(n).collect(),
        "fib" => fibonacci(n),
        _ => return Err(format!("unknown workload {name:?}")),
    })
}

pub fn run(opts: &Opts, workloads: &[String], log_sizes: &[u32]) -> Result<(), String> {
    let mut sizes = log_sizes.to_vec();
    sizes.sort_unstable();
    let mut all = Vec::new();
    for w in workloads {
        for &lg in &sizes {
            let n = 1usize << lg;
            let text = workload(w, n, opts.seed)?;
            let mut tree: SuffixTree = SuffixTree::with_options(opts.seed, opts.bucket_b);
            let mut rec = OpRecorder::default();
            let start = Instant::now();
            for &b in text.iter().rev() {
                extend_recorded(&mut tree, Symbol::from_byte(b), &mut rec).map_err(|e| e.to_string())?;
            }
            let secs = start.elapsed().as_secs_f64();
            let stats = rec.finish("extend", n as u64);
            let total = stats.steps.total + stats.rebuild_steps.total;
            let report = json!({
                "workload": w,
                "n": n,
                "seconds": secs,
                "steps_per_n_log_n": total as f64 / (n as f64 * lg.max(1) as f64),
                "stats": stats,
            });
            println!("{report}");
            all.push(stats);
        }
    }
    write_stats(&opts.stats, &all)
}
