//! Dynamic LCP oracle over a sorted list of strings.
//!
//! [`DsLcpList`] stores handles to strings in lexicographic order. Between
//! consecutive handles sits an *entry* holding the LCP of the two strings
//! (plus two permanent sentinel entries at the ends). The LCP of any two
//! handles is the minimum of the entries between them, so the list answers
//! LCP and order queries with a range-minimum query.
//!
//! Entries are grouped into buckets (micro trees with Cartesian topology
//! codes); bucket minima form the leaves of a weight-balanced main tree.
//! Insertion is *monotone*: the new entry is placed next to the entry whose
//! value it equals, inside the same micro leaf, so no bucket minimum changes.

mod cartesian;
mod main_tree;
mod micro;
mod size_queue;

use std::cmp::Ordering;

pub use cartesian::{code_of, range_min, scan_min, table_shapes, TABLE_MAX};

use crate::error::{Error, Result};
use crate::metrics::Counters;
use main_tree::MainTree;
use micro::{Lower, Min, NIL};

const S_L: u32 = 0;
const S_R: u32 = 1;

/// Default branching parameter of the main tree.
pub const DEFAULT_BRANCHING: usize = 8;

/// Stable reference to a string stored in a [`DsLcpList`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ListHandle {
    idx: u32,
    gen: u32,
}

impl ListHandle {
    /// Raw slot number; reused after removal (the generation differs).
    pub fn index(self) -> usize {
        self.idx as usize
    }
}

/// A neighbour of a string being inserted: its handle, the LCP between it
/// and the new string, and the witness to record for that LCP.
#[derive(Clone, Copy, Debug)]
pub struct Neighbor<W> {
    pub handle: ListHandle,
    pub lcp: usize,
    pub witness: W,
}

impl<W> Neighbor<W> {
    pub fn new(handle: ListHandle, lcp: usize, witness: W) -> Self {
        Neighbor { handle, lcp, witness }
    }
}

#[derive(Clone, Debug)]
struct HandleRec {
    left: u32,
    right: u32,
    strlen: usize,
    gen: u32,
    live: bool,
}

/// Size-dependent parameters, fixed between capacity rebuilds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Params {
    /// Capacity `N`, a power of two; rebuilt when `n > 2N` or `n < N/4`.
    pub capacity: usize,
    pub log_n: usize,
    /// The largest bucket is split every `split_period` insertions.
    pub split_period: usize,
    /// Maximum items per micro-tree node.
    pub micro_cap: usize,
    /// Hard cap on bucket size; exceeding it forces an immediate split.
    pub bucket_bound: usize,
    pub branching: usize,
}

impl Params {
    fn for_capacity(capacity: usize, branching: usize) -> Params {
        let log_n = capacity.trailing_zeros() as usize;
        let loglog = (usize::BITS - log_n.leading_zeros() - 1) as usize;
        let micro_cap = log_n.div_ceil(loglog.max(1)).clamp(2, 24);
        Params {
            capacity,
            log_n,
            split_period: log_n,
            micro_cap,
            bucket_bound: BUCKET_BOUND_FACTOR * log_n * log_n,
            branching,
        }
    }
}

/// Constant `C` in the bucket-size cap `C * k * log N`.
pub const BUCKET_BOUND_FACTOR: usize = 4;

const MIN_CAPACITY: usize = 16;

/// Summary of the list's shape, for diagnostics.
#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct ShapeStats {
    pub len: usize,
    pub entries: usize,
    pub buckets: usize,
    pub max_bucket: usize,
    pub max_micro_height: usize,
    pub main_height: usize,
    pub capacity_rebuilds: u64,
    pub bucket_splits: u64,
    pub forced_splits: u64,
}

/// The DS+LCP list. `W` is a witness attached to each adjacent-LCP entry
/// (for example the suffix-tree node at that string depth).
#[derive(Debug)]
pub struct DsLcpList<W: Copy + Default = ()> {
    handles: Vec<HandleRec>,
    free_handles: Vec<u32>,
    len: usize,
    lower: Lower<W>,
    upper: MainTree,
    params: Params,
    since_split: usize,
    counters: Counters,
    capacity_rebuilds: u64,
    bucket_splits: u64,
    forced_splits: u64,
}

impl<W: Copy + Default> Default for DsLcpList<W> {
    fn default() -> Self {
        Self::new()
    }
}

impl<W: Copy + Default> DsLcpList<W> {
    pub fn new() -> Self {
        Self::with_branching(DEFAULT_BRANCHING)
    }

    /// # Panics
    /// If `b <= 4`.
    pub fn with_branching(b: usize) -> Self {
        assert!(b > 4, "branching parameter must exceed 4");
        let params = Params::for_capacity(MIN_CAPACITY, b);
        let mut list = DsLcpList {
            handles: Vec::new(),
            free_handles: Vec::new(),
            len: 0,
            lower: Lower::new(params.micro_cap),
            upper: MainTree::new(b),
            params,
            since_split: 0,
            counters: Counters::default(),
            capacity_rebuilds: 0,
            bucket_splits: 0,
            forced_splits: 0,
        };
        let l = list.lower.alloc_entry(0, W::default());
        let r = list.lower.alloc_entry(0, W::default());
        debug_assert_eq!((l, r), (S_L, S_R));
        list.rebuild(MIN_CAPACITY);
        list
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn counters(&self) -> &Counters {
        &self.counters
    }

    fn rec(&self, h: ListHandle) -> Result<&HandleRec> {
        match self.handles.get(h.idx as usize) {
            Some(r) if r.live && r.gen == h.gen => Ok(r),
            _ => Err(Error::InvalidHandle),
        }
    }

    fn handle_at(&self, idx: u32) -> ListHandle {
        ListHandle {
            idx,
            gen: self.handles[idx as usize].gen,
        }
    }

    pub fn contains(&self, h: ListHandle) -> bool {
        self.rec(h).is_ok()
    }

    /// Length of the string behind `h` (including its endmarker).
    pub fn strlen(&self, h: ListHandle) -> Result<usize> {
        Ok(self.rec(h)?.strlen)
    }

    pub fn first(&self) -> Option<ListHandle> {
        let h = self.lower.entries[S_L as usize].rh;
        (h != NIL).then(|| self.handle_at(h))
    }

    pub fn last(&self) -> Option<ListHandle> {
        let h = self.lower.entries[S_R as usize].lh;
        (h != NIL).then(|| self.handle_at(h))
    }

    pub fn next(&self, h: ListHandle) -> Result<Option<ListHandle>> {
        let e = self.rec(h)?.right;
        let n = self.lower.entries[e as usize].rh;
        Ok((n != NIL).then(|| self.handle_at(n)))
    }

    pub fn prev(&self, h: ListHandle) -> Result<Option<ListHandle>> {
        let e = self.rec(h)?.left;
        let p = self.lower.entries[e as usize].lh;
        Ok((p != NIL).then(|| self.handle_at(p)))
    }

    /// LCP between `h` and its successor, `None` for the last handle.
    pub fn adjacent_lcp(&self, h: ListHandle) -> Result<Option<usize>> {
        let e = self.rec(h)?.right;
        Ok((e != S_R).then(|| self.lower.entries[e as usize].value))
    }

    /// Witness of the entry between `h` and its successor.
    pub fn adjacent_witness(&self, h: ListHandle) -> Result<Option<W>> {
        let e = self.rec(h)?.right;
        Ok((e != S_R).then(|| self.lower.entries[e as usize].witness))
    }

    /// Handles in order.
    pub fn iter(&self) -> Iter<'_, W> {
        Iter {
            list: self,
            cur: self.first(),
        }
    }

    /// Adjacent-LCP values in order (one fewer than `len()`).
    pub fn adjacent_lcps(&self) -> Vec<usize> {
        self.iter()
            .filter_map(|h| self.adjacent_lcp(h).ok().flatten())
            .collect()
    }

    fn alloc_handle(&mut self, left: u32, right: u32, strlen: usize) -> u32 {
        match self.free_handles.pop() {
            Some(i) => {
                let r = &mut self.handles[i as usize];
                r.left = left;
                r.right = right;
                r.strlen = strlen;
                r.live = true;
                i
            }
            None => {
                self.handles.push(HandleRec {
                    left,
                    right,
                    strlen,
                    gen: 0,
                    live: true,
                });
                (self.handles.len() - 1) as u32
            }
        }
    }

    /// Inserts a string between adjacent handles `pred` and `succ`.
    ///
    /// The LCPs must satisfy `min(pred.lcp, succ.lcp) == lcp(pred, succ)`,
    /// which holds for any string sorting between its neighbours.
    pub fn insert(
        &mut self,
        pred: Option<Neighbor<W>>,
        succ: Option<Neighbor<W>>,
        strlen: usize,
    ) -> Result<ListHandle> {
        for n in pred.iter().chain(succ.iter()) {
            self.rec(n.handle)?;
        }
        let c = &self.counters;
        let h = match (pred, succ) {
            (None, None) => {
                if self.len != 0 {
                    return Err(Error::AdjacencyViolation);
                }
                let h = self.alloc_handle(S_L, S_R, strlen);
                self.lower.entries[S_L as usize].rh = h;
                self.lower.entries[S_R as usize].lh = h;
                h
            }
            (Some(p), None) => {
                let pr = p.handle.idx;
                if self.handles[pr as usize].right != S_R {
                    return Err(Error::AdjacencyViolation);
                }
                let e = self.lower.insert_adjacent(S_R, false, p.lcp, p.witness, c);
                let h = self.alloc_handle(e, S_R, strlen);
                self.link(pr, e, h);
                self.lower.entries[S_R as usize].lh = h;
                h
            }
            (None, Some(s)) => {
                let sr = s.handle.idx;
                if self.handles[sr as usize].left != S_L {
                    return Err(Error::AdjacencyViolation);
                }
                let e = self.lower.insert_adjacent(S_L, true, s.lcp, s.witness, c);
                let h = self.alloc_handle(S_L, e, strlen);
                self.lower.entries[S_L as usize].rh = h;
                self.link(h, e, sr);
                h
            }
            (Some(p), Some(s)) => {
                let (pr, sr) = (p.handle.idx, s.handle.idx);
                let e = self.handles[pr as usize].right;
                if self.handles[sr as usize].left != e || pr == sr {
                    return Err(Error::AdjacencyViolation);
                }
                let cur = self.lower.entries[e as usize].value;
                if p.lcp.min(s.lcp) != cur {
                    return Err(Error::MonotonicityViolation {
                        lcp_pred: p.lcp,
                        lcp_succ: s.lcp,
                        current: cur,
                    });
                }
                if s.lcp == cur {
                    // The old entry now separates the new string from succ.
                    let ne = self.lower.insert_adjacent(e, false, p.lcp, p.witness, c);
                    self.lower.entries[e as usize].witness = s.witness;
                    let h = self.alloc_handle(ne, e, strlen);
                    self.link(pr, ne, h);
                    self.lower.entries[e as usize].lh = h;
                    h
                } else {
                    let ne = self.lower.insert_adjacent(e, true, s.lcp, s.witness, c);
                    self.lower.entries[e as usize].witness = p.witness;
                    let h = self.alloc_handle(e, ne, strlen);
                    self.lower.entries[e as usize].rh = h;
                    self.link(h, ne, sr);
                    h
                }
            }
        };
        self.len += 1;
        if self.len > 2 * self.params.capacity {
            self.rebuild(2 * self.params.capacity);
        } else {
            let e = self.handles[h as usize].right;
            let e = if e == S_R { self.handles[h as usize].left } else { e };
            let b = self.lower.bucket_of(e);
            if self.lower.bucket_size(b) > self.params.bucket_bound {
                self.forced_splits += 1;
                self.split_bucket(b);
            }
            self.since_split += 1;
            if self.since_split >= self.params.split_period {
                self.since_split = 0;
                if let Some((b, size)) = self.lower.queue.largest() {
                    if size >= 2 {
                        self.split_bucket(b);
                    }
                }
            }
        }
        Ok(self.handle_at(h))
    }

    /// Links handle `a`, entry `e`, handle `b` left to right.
    fn link(&mut self, a: u32, e: u32, b: u32) {
        self.handles[a as usize].right = e;
        self.handles[b as usize].left = e;
        let en = &mut self.lower.entries[e as usize];
        en.lh = a;
        en.rh = b;
    }

    fn split_bucket(&mut self, b: u32) {
        let c = &self.counters;
        let (nb, right) = self.lower.split_bucket(b, c);
        let leaf = self.lower.buckets[b as usize].leaf;
        let v = self.lower.bucket_min(nb).0;
        let nl = self.upper.insert_leaf(leaf, right, nb, v, c);
        self.lower.buckets[nb as usize].leaf = nl;
        self.bucket_splits += 1;
    }

    /// Removes the string behind `h`.
    pub fn remove(&mut self, h: ListHandle) -> Result<()> {
        let r = self.rec(h)?.clone();
        let (a, cc) = (r.left, r.right);
        let dead = if a == S_L && cc == S_R {
            self.lower.entries[S_L as usize].rh = NIL;
            self.lower.entries[S_R as usize].lh = NIL;
            None
        } else if a == S_L {
            let n = self.lower.entries[cc as usize].rh;
            self.lower.entries[S_L as usize].rh = n;
            self.handles[n as usize].left = S_L;
            Some(cc)
        } else if cc == S_R {
            let p = self.lower.entries[a as usize].lh;
            self.handles[p as usize].right = S_R;
            self.lower.entries[S_R as usize].lh = p;
            Some(a)
        } else if self.lower.entries[a as usize].value <= self.lower.entries[cc as usize].value {
            let n = self.lower.entries[cc as usize].rh;
            self.lower.entries[a as usize].rh = n;
            self.handles[n as usize].left = a;
            Some(cc)
        } else {
            let p = self.lower.entries[a as usize].lh;
            self.lower.entries[cc as usize].lh = p;
            self.handles[p as usize].right = cc;
            Some(a)
        };
        if let Some(e) = dead {
            let c = &self.counters;
            let out = self.lower.remove_entry(e, c);
            let leaf = self.lower.buckets[out.bucket as usize].leaf;
            match out.new_min {
                None => {
                    self.lower.free_bucket(out.bucket);
                    self.upper.delete_leaf(leaf, c);
                }
                Some(v) if v != out.old_min => self.upper.update_value(leaf, v, c),
                Some(_) => {}
            }
        }
        let rec = &mut self.handles[h.idx as usize];
        rec.live = false;
        rec.gen = rec.gen.wrapping_add(1);
        self.free_handles.push(h.idx);
        self.len -= 1;
        if self.params.capacity > MIN_CAPACITY && self.len < self.params.capacity / 4 {
            self.rebuild(self.params.capacity / 2);
        }
        Ok(())
    }

    /// Rebuilds buckets and main tree for a new capacity.
    fn rebuild(&mut self, capacity: usize) {
        let capacity = capacity.max(MIN_CAPACITY).next_power_of_two();
        self.params = Params::for_capacity(capacity, self.params.branching);
        self.capacity_rebuilds += 1;
        self.since_split = 0;
        let mut order = Vec::with_capacity(self.len + 2);
        order.push(S_L);
        let mut h = self.lower.entries[S_L as usize].rh;
        while h != NIL {
            let e = self.handles[h as usize].right;
            order.push(e);
            h = self.lower.entries[e as usize].rh;
        }
        if order.len() == 1 {
            order.push(S_R);
        }
        debug_assert_eq!(*order.last().unwrap(), S_R);
        self.lower.reset_structure(self.params.micro_cap);
        let target = self.params.split_period.max(2);
        let mut leaves = Vec::new();
        for chunk in order.chunks(target) {
            let b = self.lower.build_bucket(chunk);
            leaves.push((b, self.lower.bucket_min(b).0));
        }
        let ids = self.upper.build(&leaves, &self.counters);
        for (&(b, _), &l) in leaves.iter().zip(&ids) {
            self.lower.buckets[b as usize].leaf = l;
        }
        self.counters.rebuild(order.len() as u64);
    }

    fn entry_order(&self, e1: u32, e2: u32) -> Ordering {
        if e1 == e2 {
            return Ordering::Equal;
        }
        let (b1, b2) = (self.lower.bucket_of(e1), self.lower.bucket_of(e2));
        if b1 == b2 {
            self.lower.cmp_same(e1, e2, &self.counters)
        } else {
            let (l1, l2) = (self.lower.buckets[b1 as usize].leaf, self.lower.buckets[b2 as usize].leaf);
            self.upper.order(l1, l2, &self.counters)
        }
    }

    /// Range minimum over entries `el..=er`, `el` not after `er`.
    fn rmq(&self, el: u32, er: u32) -> Min {
        let c = &self.counters;
        let (bl, br) = (self.lower.bucket_of(el), self.lower.bucket_of(er));
        if bl == br {
            return self.lower.rmq_same(el, er, c);
        }
        let left = self.lower.suffix_min(el, c);
        let right = self.lower.prefix_min(er, c);
        let (ll, lr) = (self.lower.buckets[bl as usize].leaf, self.lower.buckets[br as usize].leaf);
        let nl = self.upper.next_leaf(ll);
        let mut acc = left;
        if nl != lr {
            let pl = self.upper.prev_leaf(lr);
            let (v, leaf) = self.upper.rmq(nl, pl, c);
            if v < acc.0 {
                let b = self.upper.leaf_bucket(leaf);
                acc = self.lower.bucket_min(b);
            }
        }
        if right.0 < acc.0 {
            acc = right;
        }
        acc
    }

    /// Lexicographic order of the strings behind two handles.
    pub fn order(&self, h1: ListHandle, h2: ListHandle) -> Result<Ordering> {
        let (r1, r2) = (self.rec(h1)?, self.rec(h2)?);
        self.counters.probe();
        Ok(self.entry_order(r1.right, r2.right))
    }

    /// Longest common prefix of two stored strings (counting the endmarker,
    /// so `lcp(h, h) == strlen(h)`).
    pub fn lcp(&self, h1: ListHandle, h2: ListHandle) -> Result<usize> {
        Ok(self.lcp_witness(h1, h2)?.0)
    }

    /// LCP together with the witness of the minimal entry between the two
    /// handles (`None` when `h1 == h2`).
    pub fn lcp_witness(&self, h1: ListHandle, h2: ListHandle) -> Result<(usize, Option<W>)> {
        let (r1, r2) = (self.rec(h1)?, self.rec(h2)?);
        self.counters.probe();
        if h1 == h2 {
            return Ok((r1.strlen, None));
        }
        let (a, b) = match self.entry_order(r1.right, r2.right) {
            Ordering::Less => (r1, r2),
            _ => (r2, r1),
        };
        let (v, e) = self.rmq(a.right, b.left);
        Ok((v, Some(self.lower.entries[e as usize].witness)))
    }

    pub fn shape(&self) -> ShapeStats {
        let buckets: Vec<u32> = self.lower.live_buckets().collect();
        ShapeStats {
            len: self.len,
            entries: self.len + 1,
            buckets: buckets.len(),
            max_bucket: buckets.iter().map(|&b| self.lower.bucket_size(b)).max().unwrap_or(0),
            max_micro_height: buckets.iter().map(|&b| self.lower.height(b)).max().unwrap_or(0),
            main_height: self.upper.height(),
            capacity_rebuilds: self.capacity_rebuilds,
            bucket_splits: self.bucket_splits,
            forced_splits: self.forced_splits,
        }
    }

    /// Full structural audit. Returns a list of violated invariants (empty
    /// when the structure is sound). Linear time.
    pub fn validate_structure(&self) -> Vec<String> {
        let mut out = Vec::new();
        // Entry/handle chain.
        let mut chain = vec![S_L];
        let mut h = self.lower.entries[S_L as usize].rh;
        let mut count = 0;
        while h != NIL {
            let r = &self.handles[h as usize];
            if !r.live {
                out.push(format!("dead handle {h} in chain"));
                return out;
            }
            let last = *chain.last().unwrap();
            if r.left != last {
                out.push(format!("handle {h} left entry mismatch"));
            }
            let e = r.right;
            if self.lower.entries[e as usize].lh != h {
                out.push(format!("entry {e} left handle mismatch"));
            }
            chain.push(e);
            count += 1;
            if count > self.len + 1 {
                out.push("handle chain does not terminate".into());
                return out;
            }
            h = self.lower.entries[e as usize].rh;
        }
        if count != self.len {
            out.push(format!("chain has {count} handles, len is {}", self.len));
        }
        if self.len == 0 {
            chain.push(S_R);
        }
        if *chain.last().unwrap() != S_R {
            out.push("chain does not end at the right sentinel".into());
        }
        // Bucket contents versus chain, bucket order versus main tree.
        let mut from_buckets = Vec::new();
        for leaf in self.upper.leaves() {
            let b = self.upper.leaf_bucket(leaf);
            if !self.lower.buckets[b as usize].live || self.lower.buckets[b as usize].leaf != leaf {
                out.push(format!("main-tree leaf {leaf} and bucket {b} disagree"));
                continue;
            }
            self.lower.validate_bucket(b, &mut out);
            if self.lower.bucket_min(b).0 != self.upper.leaf_value(leaf) {
                out.push(format!("bucket {b} minimum not published"));
            }
            let size = self.lower.bucket_size(b);
            if size > self.params.bucket_bound {
                out.push(format!("bucket {b} size {size} exceeds bound {}", self.params.bucket_bound));
            }
            from_buckets.extend(self.lower.bucket_entries(b));
        }
        if from_buckets != chain {
            out.push("bucket order disagrees with entry chain".into());
        }
        if self.lower.queue.len() != self.lower.live_buckets().count() {
            out.push("size queue holds stale buckets".into());
        }
        for &e in &[S_L, S_R] {
            if self.lower.entries[e as usize].value != 0 {
                out.push("sentinel entry is nonzero".into());
            }
        }
        self.upper.validate(&mut out);
        out
    }
}

/// Iterator over handles in order.
pub struct Iter<'a, W: Copy + Default> {
    list: &'a DsLcpList<W>,
    cur: Option<ListHandle>,
}

impl<W: Copy + Default> Iterator for Iter<'_, W> {
    type Item = ListHandle;
    fn next(&mut self) -> Option<ListHandle> {
        let h = self.cur?;
        self.cur = self.list.next(h).ok().flatten();
        Some(h)
    }
}
