//! Sequential vs rayon batch paths over one built index.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lcpindex::batch::{check_pairs_seq, locate_many_seq, sample_ranks};
use lcpindex::{SuffixIndex, Symbol};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn setup(n: usize) -> (SuffixIndex, Vec<Vec<Symbol>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let text: Vec<Symbol> = (0..n).map(|_| Symbol(1 + rng.gen_range(0..4))).collect();
    let idx = SuffixIndex::build(&text).unwrap();
    let patterns = (0..2000)
        .map(|_| {
            let m = rng.gen_range(4..24);
            let s = rng.gen_range(0..n - m);
            text[s..s + m].to_vec()
        })
        .collect();
    (idx, patterns)
}

fn locate(c: &mut Criterion) {
    let mut g = c.benchmark_group("locate_many");
    for n in [1 << 14, 1 << 17] {
        let (idx, patterns) = setup(n);
        g.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, _| {
            b.iter(|| black_box(locate_many_seq(&idx, &patterns)))
        });
        #[cfg(feature = "parallel")]
        g.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, _| {
            b.iter(|| black_box(lcpindex::batch::locate_many_par(&idx, &patterns)))
        });
    }
    g.finish();
}

fn spot_check(c: &mut Criterion) {
    let mut g = c.benchmark_group("check_pairs");
    let (idx, _) = setup(1 << 17);
    let (sa, lcp) = idx.dump_suffix_array();
    let ranks = sample_ranks(sa.len(), 5000, 2);
    g.bench_function("sequential", |b| b.iter(|| black_box(check_pairs_seq(idx.text(), &sa, &lcp, &ranks))));
    #[cfg(feature = "parallel")]
    g.bench_function("parallel", |b| {
        b.iter(|| black_box(lcpindex::batch::check_pairs_par(idx.text(), &sa, &lcp, &ranks)))
    });
    g.finish();
}

criterion_group!(benches, locate, spot_check);
criterion_main!(benches);
