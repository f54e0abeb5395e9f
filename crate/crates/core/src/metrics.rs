//! Operation counters and per-operation statistics.

use std::sync::atomic::{AtomicU64, Ordering::Relaxed};

use serde::Serialize;

/// Counters shared by a structure and its readers. Relaxed atomics keep
/// read-only queries `Sync`.
#[derive(Debug, Default)]
pub struct Counters {
    steps: AtomicU64,
    rebuild_steps: AtomicU64,
    probes: AtomicU64,
    char_reads: AtomicU64,
}

/// Snapshot of a [`Counters`] value.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CounterSnapshot {
    /// Steady-state structural steps.
    pub steps: u64,
    /// Steps spent in amortized rebuilds (node/bucket splits, capacity
    /// rebuilds, minima recomputation).
    pub rebuild_steps: u64,
    /// LCP/order queries answered by the list.
    pub probes: u64,
    /// Symbol reads from key material.
    pub char_reads: u64,
}

impl Counters {
    #[inline]
    pub fn step(&self, n: u64) {
        self.steps.fetch_add(n, Relaxed);
    }
    #[inline]
    pub fn rebuild(&self, n: u64) {
        self.rebuild_steps.fetch_add(n, Relaxed);
    }
    #[inline]
    pub fn probe(&self) {
        self.probes.fetch_add(1, Relaxed);
    }
    #[inline]
    pub fn read(&self, n: u64) {
        self.char_reads.fetch_add(n, Relaxed);
    }

    pub fn snapshot(&self) -> CounterSnapshot {
        CounterSnapshot {
            steps: self.steps.load(Relaxed),
            rebuild_steps: self.rebuild_steps.load(Relaxed),
            probes: self.probes.load(Relaxed),
            char_reads: self.char_reads.load(Relaxed),
        }
    }
}

impl std::ops::Add for CounterSnapshot {
    type Output = CounterSnapshot;
    fn add(self, o: CounterSnapshot) -> CounterSnapshot {
        CounterSnapshot {
            steps: self.steps + o.steps,
            rebuild_steps: self.rebuild_steps + o.rebuild_steps,
            probes: self.probes + o.probes,
            char_reads: self.char_reads + o.char_reads,
        }
    }
}

impl std::ops::Sub for CounterSnapshot {
    type Output = CounterSnapshot;
    fn sub(self, o: CounterSnapshot) -> CounterSnapshot {
        CounterSnapshot {
            steps: self.steps - o.steps,
            rebuild_steps: self.rebuild_steps - o.rebuild_steps,
            probes: self.probes - o.probes,
            char_reads: self.char_reads - o.char_reads,
        }
    }
}

/// Distribution summary of one per-operation quantity.
#[derive(Debug, Default, Clone, Serialize, PartialEq)]
pub struct Summary {
    pub count: u64,
    pub total: u64,
    pub max: u64,
    pub mean: f64,
    pub p50: u64,
    pub p90: u64,
    pub p99: u64,
    pub p999: u64,
}

impl Summary {
    pub fn from_samples(samples: &[u64]) -> Summary {
        if samples.is_empty() {
            return Summary::default();
        }
        let mut v = samples.to_vec();
        v.sort_unstable();
        let total: u64 = v.iter().sum();
        Summary {
            count: v.len() as u64,
            total,
            max: *v.last().unwrap(),
            mean: total as f64 / v.len() as f64,
            p50: percentile(&v, 0.50),
            p90: percentile(&v, 0.90),
            p99: percentile(&v, 0.99),
            p999: percentile(&v, 0.999),
        }
    }
}

/// Nearest-rank percentile of an ascending slice.
pub fn percentile(sorted: &[u64], q: f64) -> u64 {
    if sorted.is_empty() {
        return 0;
    }
    let rank = (q * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

/// Per-operation statistics for one kind of operation.
#[derive(Debug, Default, Clone, Serialize, PartialEq)]
pub struct OpStats {
    pub op: String,
    pub n: u64,
    pub steps: Summary,
    pub rebuild_steps: Summary,
    pub probes: Summary,
    pub char_reads: Summary,
}

/// Collects per-operation counter deltas.
#[derive(Debug, Default, Clone)]
pub struct OpRecorder {
    steps: Vec<u64>,
    rebuild: Vec<u64>,
    probes: Vec<u64>,
    reads: Vec<u64>,
}

impl OpRecorder {
    pub fn record(&mut self, delta: CounterSnapshot) {
        self.steps.push(delta.steps);
        self.rebuild.push(delta.rebuild_steps);
        self.probes.push(delta.probes);
        self.reads.push(delta.char_reads);
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[u64] {
        &self.steps
    }

    pub fn rebuild_steps(&self) -> &[u64] {
        &self.rebuild
    }

    pub fn finish(&self, op: &str, n: u64) -> OpStats {
        OpStats {
            op: op.to_string(),
            n,
            steps: Summary::from_samples(&self.steps),
            rebuild_steps: Summary::from_samples(&self.rebuild),
            probes: Summary::from_samples(&self.probes),
            char_reads: Summary::from_samples(&self.reads),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearest_rank_percentiles() {
        let v: Vec<u64> = (1..=1000).collect();
        assert_eq!(percentile(&v, 0.5), 500);
        assert_eq!(percentile(&v, 0.999), 999);
        assert_eq!(percentile(&v, 1.0), 1000);
        let s = Summary::from_samples(&[3, 1, 2]);
        assert_eq!((s.max, s.total, s.p50), (3, 6, 2));
    }
}
