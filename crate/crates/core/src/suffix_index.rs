//! All suffixes of a prepend-only text, kept sorted with O(1) comparisons.
//!
//! When `aT` is inserted every shorter suffix is already indexed, so
//! comparing it with a stored suffix `bx` needs one symbol comparison and,
//! when `a == b`, one list query: `lcp(aT, ax) = lcp(T, x) + 1`, where `T` and
//! `x` are reached by suffix links (the record one shorter). No suffix is
//! ever rescanned.

use std::cmp::Ordering;

use crate::container::{AvlTree, OrderedContainer, SearchResult, Slot, Step};
use crate::dslcp::{DsLcpList, ListHandle, Neighbor};
use crate::error::{Error, Result};
use crate::fly::{FlySession, Termination};
use crate::symbol::Symbol;
use crate::text::TextBuffer;

#[derive(Clone, Copy, Debug)]
struct Record {
    handle: Option<ListHandle>,
    slot: Slot,
}

/// Neighbourhood of a suffix that has entered the container but not yet the
/// list. Lengths name suffixes (the sentinel suffix has length 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PushInfo {
    pub len: usize,
    pub slot: Slot,
    pub pred: Option<usize>,
    pub succ: Option<usize>,
    pub lcp_pred: usize,
    pub lcp_succ: usize,
    /// Text symbols read while placing the suffix.
    pub char_reads: u64,
    pub comparisons: u64,
}

/// Result of a pattern query.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Occurrences {
    /// 0-based starting positions, ascending.
    pub positions: Vec<usize>,
    pub char_reads: u64,
    pub comparisons: u64,
}

impl Occurrences {
    pub fn count(&self) -> usize {
        self.positions.len()
    }
}

#[derive(Debug)]
pub struct SuffixIndex<W: Copy + Default = (), C: OrderedContainer = AvlTree> {
    text: TextBuffer,
    container: C,
    list: DsLcpList<W>,
    /// `recs[len - 1]` describes the suffix of length `len`.
    recs: Vec<Record>,
    len_of_slot: Vec<u32>,
    len_of_handle: Vec<u32>,
    pending: Option<PushInfo>,
}

impl<W: Copy + Default, C: OrderedContainer> Default for SuffixIndex<W, C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<W: Copy + Default, C: OrderedContainer> SuffixIndex<W, C> {
    pub fn new() -> Self {
        Self::with_options(0, crate::dslcp::DEFAULT_BRANCHING)
    }

    /// `seed` feeds randomized containers; `branching` is the list's main
    /// tree parameter.
    pub fn with_options(seed: u64, branching: usize) -> Self {
        let mut idx = SuffixIndex {
            text: TextBuffer::new(),
            container: C::with_seed(seed),
            list: DsLcpList::with_branching(branching),
            recs: Vec::new(),
            len_of_slot: Vec::new(),
            len_of_handle: Vec::new(),
            pending: None,
        };
        let ins = idx.container.insert_with(|_| unreachable!("empty container"));
        let h = idx.list.insert(None, None, 1).expect("empty list");
        idx.recs.push(Record {
            handle: Some(h),
            slot: ins.slot,
        });
        idx.map_slot(ins.slot, 1);
        idx.map_handle(h, 1);
        idx
    }

    /// Indexes `symbols` by prepending them right to left.
    pub fn build(symbols: &[Symbol]) -> Result<Self> {
        let mut idx = Self::new();
        for &s in symbols.iter().rev() {
            idx.push_front(s)?;
        }
        Ok(idx)
    }

    fn map_slot(&mut self, slot: Slot, len: usize) {
        if self.len_of_slot.len() <= slot as usize {
            self.len_of_slot.resize(slot as usize + 1, 0);
        }
        self.len_of_slot[slot as usize] = len as u32;
    }

    fn map_handle(&mut self, h: ListHandle, len: usize) {
        if self.len_of_handle.len() <= h.index() {
            self.len_of_handle.resize(h.index() + 1, 0);
        }
        self.len_of_handle[h.index()] = len as u32;
    }

    pub fn text(&self) -> &TextBuffer {
        &self.text
    }

    pub fn list(&self) -> &DsLcpList<W> {
        &self.list
    }

    pub fn container(&self) -> &C {
        &self.container
    }

    /// Number of indexed suffixes (the sentinel suffix included).
    pub fn len(&self) -> usize {
        self.recs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// List handle of the suffix of length `len`.
    pub fn handle(&self, len: usize) -> ListHandle {
        self.recs[len - 1].handle.expect("suffix committed")
    }

    /// Length of the suffix behind a list handle.
    pub fn len_of(&self, h: ListHandle) -> usize {
        self.len_of_handle[h.index()] as usize
    }

    /// Suffix-link target of the suffix of length `len` (`None` for the
    /// sentinel suffix, whose link is the empty string).
    pub fn slink(&self, len: usize) -> Option<usize> {
        (len > 1).then(|| len - 1)
    }

    fn compare_new(&self, l1: usize, l2: usize, reads: &mut u64) -> (Ordering, usize) {
        compare_new(&self.text, &self.list, &self.recs, l1, l2, reads)
    }

    /// Prepends `a` and places the new longest suffix in the container.
    /// [`Self::commit_push`] must follow before any other mutation.
    pub fn begin_push(&mut self, a: Symbol) -> Result<PushInfo> {
        assert!(self.pending.is_none(), "push already in progress");
        self.text.prepend(a)?;
        let l = self.text.len();
        let mut reads = 0u64;
        let mut comparisons = 0u64;
        let SuffixIndex {
            text,
            container,
            list,
            recs,
            len_of_slot,
            ..
        } = self;
        let ins = container.insert_with(|s| {
            comparisons += 1;
            let lx = len_of_slot[s as usize] as usize;
            compare_new(text, list, recs, l, lx, &mut reads).0
        });
        let pred = ins.pred.map(|s| self.len_of_slot[s as usize] as usize);
        let succ = ins.succ.map(|s| self.len_of_slot[s as usize] as usize);
        let lcp_pred = pred.map_or(0, |p| self.compare_new(l, p, &mut reads).1);
        let lcp_succ = succ.map_or(0, |q| self.compare_new(l, q, &mut reads).1);
        self.map_slot(ins.slot, l);
        self.recs.push(Record {
            handle: None,
            slot: ins.slot,
        });
        let info = PushInfo {
            len: l,
            slot: ins.slot,
            pred,
            succ,
            lcp_pred,
            lcp_succ,
            char_reads: reads,
            comparisons,
        };
        self.pending = Some(info);
        Ok(info)
    }

    /// Enters the pending suffix into the list with the given witnesses for
    /// the entries towards its predecessor and successor.
    pub fn commit_push(&mut self, witness_pred: W, witness_succ: W) -> Result<ListHandle> {
        let info = self.pending.take().expect("no push in progress");
        let pred = info
            .pred
            .map(|p| Neighbor::new(self.handle(p), info.lcp_pred, witness_pred));
        let succ = info
            .succ
            .map(|q| Neighbor::new(self.handle(q), info.lcp_succ, witness_succ));
        let h = self.list.insert(pred, succ, info.len)?;
        self.recs[info.len - 1].handle = Some(h);
        self.map_handle(h, info.len);
        Ok(h)
    }

    /// The pending push, if any.
    pub fn pending(&self) -> Option<PushInfo> {
        self.pending
    }

    pub fn push_front(&mut self, a: Symbol) -> Result<PushInfo> {
        let info = self.begin_push(a)?;
        self.commit_push(W::default(), W::default())?;
        Ok(info)
    }

    /// Removes the longest suffix and the first text symbol.
    pub fn pop_front(&mut self) -> Result<Symbol> {
        assert!(self.pending.is_none(), "push in progress");
        if self.text.user_len() == 0 {
            return Err(Error::Underflow);
        }
        let rec = self.recs.pop().expect("records");
        self.container.remove(rec.slot);
        self.list.remove(rec.handle.expect("committed"))?;
        self.text.pop_front()
    }

    /// Order of two committed suffixes (by length).
    pub fn order(&self, l1: usize, l2: usize) -> Ordering {
        self.list
            .order(self.handle(l1), self.handle(l2))
            .expect("live handles")
    }

    pub fn lcp(&self, l1: usize, l2: usize) -> usize {
        self.list
            .lcp(self.handle(l1), self.handle(l2))
            .expect("live handles")
    }

    /// During a pending push: the greatest committed suffix `S < pred` with
    /// `lcp(S, pred) <= k`, by a root-to-leaf descent of the container.
    /// Such suffixes form a prefix of everything below `pred`, since the lcp
    /// with `pred` cannot decrease when approaching it.
    pub fn boundary_below(&self, pred: usize, k: usize) -> Option<usize> {
        let new = self.pending.map(|p| p.slot);
        let hp = self.handle(pred);
        let mut best = None;
        self.container.descend(|s| {
            if Some(s) == new {
                return Step::Left;
            }
            let lx = self.len_of_slot[s as usize] as usize;
            if lx == pred {
                return Step::Left;
            }
            let hx = self.handle(lx);
            match self.list.order(hx, hp).expect("live") {
                Ordering::Less => {
                    if self.list.lcp(hx, hp).expect("live") <= k {
                        best = Some(lx);
                        Step::Right
                    } else {
                        Step::Left
                    }
                }
                _ => Step::Left,
            }
        });
        best
    }

    /// Mirror of [`Self::boundary_below`]: the least committed `S > succ`
    /// with `lcp(succ, S) <= k`.
    pub fn boundary_above(&self, succ: usize, k: usize) -> Option<usize> {
        let new = self.pending.map(|p| p.slot);
        let hs = self.handle(succ);
        let mut best = None;
        self.container.descend(|s| {
            if Some(s) == new {
                return Step::Right;
            }
            let lx = self.len_of_slot[s as usize] as usize;
            if lx == succ {
                return Step::Right;
            }
            let hx = self.handle(lx);
            match self.list.order(hx, hs).expect("live") {
                Ordering::Greater => {
                    if self.list.lcp(hx, hs).expect("live") <= k {
                        best = Some(lx);
                        Step::Left
                    } else {
                        Step::Right
                    }
                }
                _ => Step::Right,
            }
        });
        best
    }

    /// Occurrences of `pattern` (user symbols only) in the current text.
    pub fn locate(&self, pattern: &[Symbol]) -> Occurrences {
        let n = self.text.user_len();
        let m = pattern.len();
        if m == 0 {
            return Occurrences {
                positions: (0..n).collect(),
                ..Default::default()
            };
        }
        let mut sess = FlySession::with_mode(pattern, Termination::Prefix);
        let r = self.container.search_with(|s| {
            let lx = self.len_of_slot[s as usize] as usize;
            sess.compare(&self.list, self.handle(lx), &self.text.suffix(lx))
                .expect("live handle")
                .0
        });
        let mut out = Occurrences {
            positions: Vec::new(),
            char_reads: sess.char_cmps(),
            comparisons: sess.calls(),
        };
        let succ = match r {
            SearchResult::Between(_, Some(s)) => s,
            _ => return out,
        };
        let lx = self.len_of_slot[succ as usize] as usize;
        let mut h = self.handle(lx);
        if sess.known_lcp(h).expect("successor was compared") < m {
            return out;
        }
        loop {
            out.positions.push(n + 1 - self.len_of(h));
            match self.list.adjacent_lcp(h).expect("live") {
                Some(v) if v >= m => h = self.list.next(h).expect("live").expect("has next"),
                _ => break,
            }
        }
        out.positions.sort_unstable();
        out
    }

    /// Suffix array (0-based starting positions, the sentinel suffix
    /// included) and the adjacent-lcp array, by one list walk.
    pub fn dump_suffix_array(&self) -> (Vec<usize>, Vec<usize>) {
        let total = self.text.len();
        let mut sa = Vec::with_capacity(total);
        let mut lcp = Vec::with_capacity(total.saturating_sub(1));
        for h in self.list.iter() {
            sa.push(total - self.len_of(h));
            if let Some(v) = self.list.adjacent_lcp(h).expect("live") {
                lcp.push(v);
            }
        }
        (sa, lcp)
    }

    /// Suffix lengths in list order.
    pub fn sorted_lengths(&self) -> Vec<usize> {
        self.list.iter().map(|h| self.len_of(h)).collect()
    }

    pub fn validate(&self) -> Vec<String> {
        let mut out = self.container.validate();
        out.extend(self.list.validate_structure());
        let by_container: Vec<usize> = crate::container::in_order(&self.container)
            .into_iter()
            .map(|s| self.len_of_slot[s as usize] as usize)
            .collect();
        if by_container != self.sorted_lengths() {
            out.push("container order differs from list order".into());
        }
        if self.recs.len() != self.text.len() {
            out.push("record stack out of step with text".into());
        }
        out
    }
}

/// Compares the suffix of length `l1` (not yet in the list) with the stored
/// suffix of length `l2`; returns the order and the lcp.
fn compare_new<W: Copy + Default>(
    t: &TextBuffer,
    list: &DsLcpList<W>,
    recs: &[Record],
    l1: usize,
    l2: usize,
    reads: &mut u64,
) -> (Ordering, usize) {
    let (a, b) = (t.at(l1), t.at(l2));
    *reads += 2;
    if a != b {
        return (a.cmp(&b), 0);
    }
    let h = |len: usize| recs[len - 1].handle.expect("suffix committed");
    let l = list.lcp(h(l1 - 1), h(l2 - 1)).expect("live handles") + 1;
    *reads += 2;
    (t.at(l1 - l).cmp(&t.at(l2 - l)), l)
}
