//! Batch queries and audits over a built index.
//!
//! With the `parallel` feature (on by default) the work is spread over the
//! rayon pool; without it the same functions run sequentially. Both paths
//! are always available under explicit names so they can be benchmarked
//! against each other.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::container::OrderedContainer;
use crate::oracle::naive_lcp;
use crate::suffix_index::{Occurrences, SuffixIndex};
use crate::symbol::{StringView, Symbol};
use crate::text::TextBuffer;

/// A sampled adjacent pair of the suffix array that failed the audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairMismatch {
    /// Rank of the left suffix.
    pub rank: usize,
    pub reported_lcp: usize,
    pub actual_lcp: usize,
    pub out_of_order: bool,
}

pub fn locate_many_seq<W, C>(index: &SuffixIndex<W, C>, patterns: &[Vec<Symbol>]) -> Vec<Occurrences>
where
    W: Copy + Default,
    C: OrderedContainer,
{
    patterns.iter().map(|p| index.locate(p)).collect()
}

#[cfg(feature = "parallel")]
pub fn locate_many_par<W, C>(index: &SuffixIndex<W, C>, patterns: &[Vec<Symbol>]) -> Vec<Occurrences>
where
    W: Copy + Default + Sync,
    C: OrderedContainer + Sync,
{
    use rayon::prelude::*;
    patterns.par_iter().map(|p| index.locate(p)).collect()
}

/// Answers every pattern; parallel when the feature is enabled.
#[cfg(feature = "parallel")]
pub fn locate_many<W, C>(index: &SuffixIndex<W, C>, patterns: &[Vec<Symbol>]) -> Vec<Occurrences>
where
    W: Copy + Default + Sync,
    C: OrderedContainer + Sync,
{
    locate_many_par(index, patterns)
}

#[cfg(not(feature = "parallel"))]
pub fn locate_many<W, C>(index: &SuffixIndex<W, C>, patterns: &[Vec<Symbol>]) -> Vec<Occurrences>
where
    W: Copy + Default,
    C: OrderedContainer,
{
    locate_many_seq(index, patterns)
}

/// `k` distinct ranks `i` (pairs `(i, i+1)`) drawn uniformly, ascending.
pub fn sample_ranks(sa_len: usize, k: usize, seed: u64) -> Vec<usize> {
    let pairs = sa_len.saturating_sub(1);
    if k >= pairs {
        return (0..pairs).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = rand::seq::index::sample(&mut rng, pairs, k).into_vec();
    v.sort_unstable();
    v
}

fn check_one(text: &TextBuffer, sa: &[usize], lcp: &[usize], i: usize) -> Option<PairMismatch> {
    let total = text.len();
    let (a, b) = (text.suffix(total - sa[i]), text.suffix(total - sa[i + 1]));
    let actual = naive_lcp(&a, &b);
    // The endmarker is unique, so the first mismatch decides the order.
    let out_of_order =
        actual < a.len().min(b.len()) && a.symbol_at(actual + 1) > b.symbol_at(actual + 1);
    (actual != lcp[i] || out_of_order).then_some(PairMismatch {
        rank: i,
        reported_lcp: lcp[i],
        actual_lcp: actual,
        out_of_order,
    })
}

pub fn check_pairs_seq(text: &TextBuffer, sa: &[usize], lcp: &[usize], ranks: &[usize]) -> Vec<PairMismatch> {
    ranks.iter().filter_map(|&i| check_one(text, sa, lcp, i)).collect()
}

#[cfg(feature = "parallel")]
pub fn check_pairs_par(text: &TextBuffer, sa: &[usize], lcp: &[usize], ranks: &[usize]) -> Vec<PairMismatch> {
    use rayon::prelude::*;
    ranks.par_iter().filter_map(|&i| check_one(text, sa, lcp, i)).collect()
}

/// Recomputes the lcp of each sampled adjacent pair by direct scanning and
/// checks the pair's order; parallel when the feature is enabled.
pub fn check_pairs(text: &TextBuffer, sa: &[usize], lcp: &[usize], ranks: &[usize]) -> Vec<PairMismatch> {
    #[cfg(feature = "parallel")]
    {
        check_pairs_par(text, sa, lcp, ranks)
    }
    #[cfg(not(feature = "parallel"))]
    {
        check_pairs_seq(text, sa, lcp, ranks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::symbols_from_bytes;

    #[test]
    fn batch_matches_single_queries() {
        let idx: SuffixIndex = SuffixIndex::build(&symbols_from_bytes(b"abracadabra")).unwrap();
        let pats: Vec<Vec<Symbol>> = ["abra", "a", "cad", "x"].iter().map(|p| symbols_from_bytes(p.as_bytes())).collect();
        let got = locate_many(&idx, &pats);
        assert_eq!(got, locate_many_seq(&idx, &pats));
        assert_eq!(got[0].positions, vec![0, 7]);
        assert_eq!(got[1].count(), 5);
    }

    #[test]
    fn pair_check_flags_corruption() {
        let idx: SuffixIndex = SuffixIndex::build(&symbols_from_bytes(b"mississippi")).unwrap();
        let (mut sa, mut lcp) = idx.dump_suffix_array();
        let all = sample_ranks(sa.len(), 100, 0);
        assert_eq!(all.len(), sa.len() - 1);
        assert!(check_pairs(idx.text(), &sa, &lcp, &all).is_empty());
        lcp[3] += 1;
        sa.swap(5, 6);
        let bad = check_pairs(idx.text(), &sa, &lcp, &all);
        assert!(bad.iter().any(|m| m.rank == 3 && m.actual_lcp + 1 == m.reported_lcp));
        assert!(bad.iter().any(|m| m.rank == 5 && m.out_of_order));
        assert_eq!(sample_ranks(1000, 10, 4).len(), 10);
    }
}
