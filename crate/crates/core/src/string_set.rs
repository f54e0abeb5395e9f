//! A sorted set of strings: any [`OrderedContainer`] plus a [`DsLcpList`].
//!
//! Stored-vs-stored comparisons come from the list in O(1); comparisons of a
//! new string against stored ones go through a [`FlySession`], so an
//! operation on `y` costs the container's comparison count plus `O(|y|)`
//! character reads.

use std::cell::Cell;
use std::cmp::Ordering;

use crate::container::{in_order, AvlTree, OrderedContainer, SearchResult, Slot};
use crate::dslcp::{DsLcpList, ListHandle, Neighbor};
use crate::error::{Error, Result};
use crate::fly::{FlySession, Termination};
use crate::symbol::{StringView, Symbol};

/// Key symbols that count every read into a shared cell.
struct Audited<'a> {
    key: &'a [Symbol],
    reads: &'a Cell<u64>,
}

impl StringView for Audited<'_> {
    fn user_len(&self) -> usize {
        self.key.len()
    }
    fn user_symbol(&self, i: usize) -> Symbol {
        self.reads.set(self.reads.get() + 1);
        self.key[i - 1]
    }
}

/// Where key reads happened.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct ReadAudit {
    /// Reads made by comparison callbacks handed to the container.
    pub in_comparator: u64,
    /// Reads made by the adapter itself (neighbour lcp scans).
    pub by_adapter: u64,
    /// Everything else; the container has no access path to keys, so this
    /// stays zero.
    pub stray: u64,
}

/// Result of [`StringSet::search`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lookup {
    Found(ListHandle),
    Between(Option<ListHandle>, Option<ListHandle>),
}

#[derive(Debug)]
pub struct StringSet<C: OrderedContainer = AvlTree> {
    container: C,
    list: DsLcpList<()>,
    keys: Vec<Vec<Symbol>>,
    handle_of: Vec<Option<ListHandle>>,
    slot_of: Vec<Slot>,
    reads: Cell<u64>,
    audit: Cell<ReadAudit>,
    char_cmps: Cell<u64>,
}

impl<C: OrderedContainer> Default for StringSet<C> {
    fn default() -> Self {
        Self::with_seed(0)
    }
}

impl<C: OrderedContainer> StringSet<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_seed(seed: u64) -> Self {
        StringSet {
            container: C::with_seed(seed),
            list: DsLcpList::new(),
            keys: Vec::new(),
            handle_of: Vec::new(),
            slot_of: Vec::new(),
            reads: Cell::new(0),
            audit: Cell::new(ReadAudit::default()),
            char_cmps: Cell::new(0),
        }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn list(&self) -> &DsLcpList<()> {
        &self.list
    }

    pub fn container(&self) -> &C {
        &self.container
    }

    pub fn audit(&self) -> ReadAudit {
        let mut a = self.audit.get();
        a.stray = self.reads.get() - a.in_comparator - a.by_adapter;
        a
    }

    /// Character comparisons made by fly sessions and neighbour scans.
    pub fn char_cmps(&self) -> u64 {
        self.char_cmps.get()
    }

    fn slot(&self, h: ListHandle) -> Result<Slot> {
        if !self.list.contains(h) {
            return Err(Error::InvalidHandle);
        }
        Ok(self.slot_of[h.index()])
    }

    pub fn key(&self, h: ListHandle) -> Result<&[Symbol]> {
        Ok(&self.keys[self.slot(h)? as usize])
    }

    pub fn lcp(&self, a: ListHandle, b: ListHandle) -> Result<usize> {
        self.list.lcp(a, b)
    }

    /// Handles in lexicographic order.
    pub fn handles(&self) -> Vec<ListHandle> {
        self.list.iter().collect()
    }

    fn note_cmp_reads(&self, before: u64) {
        let mut a = self.audit.get();
        a.in_comparator += self.reads.get() - before;
        self.audit.set(a);
    }

    /// Inserts `y`. Equal strings are allowed and sort before existing
    /// copies.
    pub fn insert_string(&mut self, y: &[Symbol]) -> ListHandle {
        let StringSet {
            container,
            list,
            keys,
            handle_of,
            reads,
            ..
        } = self;
        let mut sess = FlySession::with_mode(y, Termination::Prefix);
        let before = reads.get();
        let ins = container.insert_with(|s| {
            let h = handle_of[s as usize].expect("live slot");
            let x = Audited {
                key: &keys[s as usize],
                reads,
            };
            sess.compare(list, h, &x).expect("live handle").0
        });
        self.note_cmp_reads(before);
        let ylen = y.len();
        let neighbor = |s: Slot, this: &Self, sess: &mut FlySession<[Symbol]>| {
            let h = this.handle_of[s as usize].expect("live slot");
            let key = &this.keys[s as usize];
            let m = match sess.known_lcp(h) {
                Some(m) => m,
                None => {
                    let before = this.reads.get();
                    let m = sess.scan_lcp(&Audited { key, reads: &this.reads });
                    let mut a = this.audit.get();
                    a.by_adapter += this.reads.get() - before;
                    this.audit.set(a);
                    m
                }
            };
            // Identical strings also share their endmarker.
            let m = if m == ylen && key.len() == ylen { ylen + 1 } else { m };
            Neighbor::new(h, m, ())
        };
        let pred = ins.pred.map(|s| neighbor(s, self, &mut sess));
        let succ = ins.succ.map(|s| neighbor(s, self, &mut sess));
        self.char_cmps.set(self.char_cmps.get() + sess.char_cmps());
        let h = self
            .list
            .insert(pred, succ, ylen + 1)
            .expect("container neighbours are list neighbours");
        let slot = ins.slot as usize;
        if self.keys.len() <= slot {
            self.keys.resize(slot + 1, Vec::new());
            self.handle_of.resize(slot + 1, None);
        }
        self.keys[slot] = y.to_vec();
        self.handle_of[slot] = Some(h);
        if self.slot_of.len() <= h.index() {
            self.slot_of.resize(h.index() + 1, 0);
        }
        self.slot_of[h.index()] = ins.slot;
        h
    }

    /// Looks `y` up as a whole string.
    pub fn search(&self, y: &[Symbol]) -> Lookup {
        let mut sess = FlySession::with_mode(y, Termination::Exact);
        let before = self.reads.get();
        let r = self.container.search_with(|s| {
            let h = self.handle_of[s as usize].expect("live slot");
            let x = Audited {
                key: &self.keys[s as usize],
                reads: &self.reads,
            };
            sess.compare(&self.list, h, &x).expect("live handle").0
        });
        self.note_cmp_reads(before);
        self.char_cmps.set(self.char_cmps.get() + sess.char_cmps());
        let h = |s: Slot| self.handle_of[s as usize].expect("live slot");
        match r {
            SearchResult::Found(s) => Lookup::Found(h(s)),
            SearchResult::Between(p, q) => Lookup::Between(p.map(h), q.map(h)),
        }
    }

    pub fn remove_string(&mut self, h: ListHandle) -> Result<()> {
        let slot = self.slot(h)?;
        self.container.remove(slot);
        self.list.remove(h)?;
        self.handle_of[slot as usize] = None;
        self.keys[slot as usize] = Vec::new();
        Ok(())
    }

    /// Checks that container order, list order and lexicographic order
    /// coincide, plus both structures' own audits.
    pub fn validate(&self) -> Vec<String> {
        let mut out = self.container.validate();
        out.extend(self.list.validate_structure());
        let by_list = self.handles();
        let by_container: Vec<ListHandle> = in_order(&self.container)
            .into_iter()
            .map(|s| self.handle_of[s as usize].expect("live slot"))
            .collect();
        if by_list != by_container {
            out.push("container order differs from list order".into());
        }
        for w in by_list.windows(2) {
            let (a, b) = (&self.keys[self.slot_of[w[0].index()] as usize], &self.keys[self.slot_of[w[1].index()] as usize]);
            if a.cmp(b) == Ordering::Greater {
                out.push("stored strings out of lexicographic order".into());
                break;
            }
        }
        out
    }
}
