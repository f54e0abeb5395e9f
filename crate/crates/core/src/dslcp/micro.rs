//! Buckets of adjacent-LCP entries.
//!
//! Each bucket is a micro tree: a shallow B-tree whose nodes hold at most
//! `cap` items together with the items' values, the entry achieving each
//! value, and the node's Cartesian topology code. Every leaf sits at the same
//! depth. In-node range minima come from [`cartesian::range_min`], so a range
//! minimum over a bucket touches one node per level on each side.

use std::cmp::Ordering;

use super::cartesian::{code_of, range_min};
use super::size_queue::SizeQueue;
use crate::metrics::Counters;

pub(crate) const NIL: u32 = u32::MAX;

/// A value paired with the entry that attains it.
pub(crate) type Min = (usize, u32);

#[derive(Clone, Debug)]
pub(crate) struct Entry<W> {
    pub value: usize,
    pub witness: W,
    /// Handle on the left, `NIL` for the left sentinel.
    pub lh: u32,
    /// Handle on the right, `NIL` for the right sentinel.
    pub rh: u32,
    pub node: u32,
    pub idx: u32,
    pub live: bool,
}

#[derive(Clone, Debug, Default)]
struct MicroNode {
    parent: u32,
    pidx: u32,
    leaf: bool,
    items: Vec<u32>,
    vals: Vec<usize>,
    args: Vec<u32>,
    code: u64,
    size: u32,
    bucket: u32,
    live: bool,
}

#[derive(Clone, Debug)]
pub(crate) struct Bucket {
    pub root: u32,
    /// Main-tree leaf standing for this bucket.
    pub leaf: u32,
    pub live: bool,
}

/// Outcome of removing one entry.
pub(crate) struct Removal {
    pub bucket: u32,
    pub old_min: usize,
    /// `None` when the bucket became empty.
    pub new_min: Option<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct Lower<W> {
    pub entries: Vec<Entry<W>>,
    free_entries: Vec<u32>,
    nodes: Vec<MicroNode>,
    free_nodes: Vec<u32>,
    pub buckets: Vec<Bucket>,
    free_buckets: Vec<u32>,
    pub queue: SizeQueue,
    pub cap: usize,
}

#[inline]
fn better(cur: Option<Min>, cand: Min) -> Option<Min> {
    // `cur` lies to the left of `cand`; ties keep the left one.
    match cur {
        Some(c) if c.0 <= cand.0 => Some(c),
        _ => Some(cand),
    }
}

impl<W: Copy + Default> Lower<W> {
    pub fn new(cap: usize) -> Self {
        Lower {
            entries: Vec::new(),
            free_entries: Vec::new(),
            nodes: Vec::new(),
            free_nodes: Vec::new(),
            buckets: Vec::new(),
            free_buckets: Vec::new(),
            queue: SizeQueue::default(),
            cap,
        }
    }

    pub fn alloc_entry(&mut self, value: usize, witness: W) -> u32 {
        let e = Entry {
            value,
            witness,
            lh: NIL,
            rh: NIL,
            node: NIL,
            idx: 0,
            live: true,
        };
        match self.free_entries.pop() {
            Some(id) => {
                self.entries[id as usize] = e;
                id
            }
            None => {
                self.entries.push(e);
                (self.entries.len() - 1) as u32
            }
        }
    }

    fn free_entry(&mut self, id: u32) {
        self.entries[id as usize].live = false;
        self.free_entries.push(id);
    }

    fn alloc_node(&mut self, leaf: bool) -> u32 {
        let cap = self.cap + 1;
        let id = match self.free_nodes.pop() {
            Some(id) => id,
            None => {
                self.nodes.push(MicroNode::default());
                (self.nodes.len() - 1) as u32
            }
        };
        // Freed nodes keep their buffers.
        let n = &mut self.nodes[id as usize];
        n.parent = NIL;
        n.pidx = 0;
        n.leaf = leaf;
        n.code = 0;
        n.size = 0;
        n.bucket = NIL;
        n.live = true;
        for v in [&mut n.items, &mut n.args] {
            v.clear();
            v.reserve(cap);
        }
        n.vals.clear();
        n.vals.reserve(cap);
        id
    }

    fn free_node(&mut self, id: u32) {
        self.nodes[id as usize].live = false;
        self.free_nodes.push(id);
    }

    fn alloc_bucket(&mut self, root: u32) -> u32 {
        let b = Bucket {
            root,
            leaf: NIL,
            live: true,
        };
        let id = match self.free_buckets.pop() {
            Some(id) => {
                self.buckets[id as usize] = b;
                id
            }
            None => {
                self.buckets.push(b);
                (self.buckets.len() - 1) as u32
            }
        };
        self.nodes[root as usize].bucket = id;
        id
    }

    pub fn free_bucket(&mut self, b: u32) {
        let root = self.buckets[b as usize].root;
        self.free_node(root);
        self.buckets[b as usize].live = false;
        self.queue.remove(b);
        self.free_buckets.push(b);
    }

    /// Drops all buckets and micro nodes; entries are kept.
    pub fn reset_structure(&mut self, cap: usize) {
        self.nodes.clear();
        self.free_nodes.clear();
        self.buckets.clear();
        self.free_buckets.clear();
        self.queue.clear();
        self.cap = cap;
    }

    #[inline]
    fn refresh(&mut self, x: u32) {
        let n = &mut self.nodes[x as usize];
        n.code = code_of(&n.vals);
    }

    #[inline]
    fn node_min(&self, x: u32) -> Min {
        let n = &self.nodes[x as usize];
        let p = range_min(n.code, &n.vals, 0, n.vals.len() - 1);
        (n.vals[p], n.args[p])
    }

    #[inline]
    fn piece(&self, x: u32, i: usize, j: usize) -> Min {
        let n = &self.nodes[x as usize];
        let p = range_min(n.code, &n.vals, i, j);
        (n.vals[p], n.args[p])
    }

    /// Re-publishes the minimum of `x` into its ancestors while it changes.
    fn propagate_min(&mut self, mut x: u32, c: &Counters) {
        loop {
            let p = self.nodes[x as usize].parent;
            if p == NIL {
                return;
            }
            let m = self.node_min(x);
            let i = self.nodes[x as usize].pidx as usize;
            let pn = &mut self.nodes[p as usize];
            if pn.vals[i] == m.0 && pn.args[i] == m.1 {
                return;
            }
            pn.vals[i] = m.0;
            pn.args[i] = m.1;
            self.refresh(p);
            c.step(1);
            x = p;
        }
    }

    fn add_size(&mut self, mut x: u32, delta: i64) {
        while x != NIL {
            let n = &mut self.nodes[x as usize];
            n.size = (n.size as i64 + delta) as u32;
            x = n.parent;
        }
    }

    pub fn root_of(&self, mut x: u32) -> u32 {
        loop {
            let p = self.nodes[x as usize].parent;
            if p == NIL {
                return x;
            }
            x = p;
        }
    }

    #[inline]
    pub fn bucket_of(&self, e: u32) -> u32 {
        let r = self.root_of(self.entries[e as usize].node);
        self.nodes[r as usize].bucket
    }

    pub fn bucket_size(&self, b: u32) -> usize {
        self.nodes[self.buckets[b as usize].root as usize].size as usize
    }

    pub fn bucket_min(&self, b: u32) -> Min {
        self.node_min(self.buckets[b as usize].root)
    }

    /// Fixes back-references of the items at positions `from..` of `x`.
    fn reindex_items(&mut self, x: u32, from: usize) {
        let leaf = self.nodes[x as usize].leaf;
        for p in from..self.nodes[x as usize].items.len() {
            let it = self.nodes[x as usize].items[p];
            if leaf {
                let e = &mut self.entries[it as usize];
                e.node = x;
                e.idx = p as u32;
            } else {
                let ch = &mut self.nodes[it as usize];
                ch.parent = x;
                ch.pidx = p as u32;
            }
        }
    }

    /// Inserts a new entry next to `anchor` (after it when `after`).
    pub fn insert_adjacent(
        &mut self,
        anchor: u32,
        after: bool,
        value: usize,
        witness: W,
        c: &Counters,
    ) -> u32 {
        let e = self.alloc_entry(value, witness);
        let leaf = self.entries[anchor as usize].node;
        let pos = self.entries[anchor as usize].idx as usize + after as usize;
        {
            let n = &mut self.nodes[leaf as usize];
            n.items.insert(pos, e);
            n.vals.insert(pos, value);
            n.args.insert(pos, e);
        }
        self.reindex_items(leaf, pos);
        self.refresh(leaf);
        self.add_size(leaf, 1);
        self.propagate_min(leaf, c);
        c.step(2);
        if self.nodes[leaf as usize].items.len() > self.cap {
            self.split_overfull(leaf, c);
        }
        let b = self.bucket_of(e);
        let size = self.bucket_size(b);
        self.queue.update(b, size);
        e
    }

    fn split_overfull(&mut self, mut x: u32, c: &Counters) {
        while self.nodes[x as usize].items.len() > self.cap {
            let leaf = self.nodes[x as usize].leaf;
            let y = self.alloc_node(leaf);
            let half = self.nodes[x as usize].items.len() / 2;
            let (items, vals, args) = {
                let n = &mut self.nodes[x as usize];
                (n.items.split_off(half), n.vals.split_off(half), n.args.split_off(half))
            };
            let moved_size: u32 = if leaf {
                items.len() as u32
            } else {
                items.iter().map(|&ch| self.nodes[ch as usize].size).sum()
            };
            {
                let yn = &mut self.nodes[y as usize];
                yn.items = items;
                yn.vals = vals;
                yn.args = args;
                yn.size = moved_size;
            }
            self.nodes[x as usize].size -= moved_size;
            self.reindex_items(y, 0);
            self.refresh(x);
            self.refresh(y);
            c.step(self.cap as u64);
            let parent = self.nodes[x as usize].parent;
            if parent == NIL {
                let r = self.alloc_node(false);
                let (mx, my) = (self.node_min(x), self.node_min(y));
                let bucket = self.nodes[x as usize].bucket;
                {
                    let rn = &mut self.nodes[r as usize];
                    rn.items = vec![x, y];
                    rn.vals = vec![mx.0, my.0];
                    rn.args = vec![mx.1, my.1];
                    rn.bucket = bucket;
                }
                self.nodes[r as usize].size = self.nodes[x as usize].size + moved_size;
                self.reindex_items(r, 0);
                self.refresh(r);
                self.buckets[bucket as usize].root = r;
                return;
            }
            let xi = self.nodes[x as usize].pidx as usize;
            let (mx, my) = (self.node_min(x), self.node_min(y));
            {
                let pn = &mut self.nodes[parent as usize];
                pn.vals[xi] = mx.0;
                pn.args[xi] = mx.1;
                pn.items.insert(xi + 1, y);
                pn.vals.insert(xi + 1, my.0);
                pn.args.insert(xi + 1, my.1);
            }
            self.reindex_items(parent, xi + 1);
            self.refresh(parent);
            self.propagate_min(parent, c);
            x = parent;
        }
    }

    /// Removes entry `e` from its bucket.
    pub fn remove_entry(&mut self, e: u32, c: &Counters) -> Removal {
        let leaf = self.entries[e as usize].node;
        let idx = self.entries[e as usize].idx as usize;
        let root = self.root_of(leaf);
        let bucket = self.nodes[root as usize].bucket;
        let old_min = self.node_min(root).0;
        {
            let n = &mut self.nodes[leaf as usize];
            n.items.remove(idx);
            n.vals.remove(idx);
            n.args.remove(idx);
        }
        self.free_entry(e);
        self.reindex_items(leaf, idx);
        self.add_size(leaf, -1);
        c.step(2);

        // Drop emptied nodes bottom-up.
        let mut x = leaf;
        loop {
            let n = &self.nodes[x as usize];
            if !n.items.is_empty() || n.parent == NIL {
                break;
            }
            let p = n.parent;
            let i = n.pidx as usize;
            {
                let pn = &mut self.nodes[p as usize];
                pn.items.remove(i);
                pn.vals.remove(i);
                pn.args.remove(i);
            }
            self.free_node(x);
            self.reindex_items(p, i);
            c.step(1);
            x = p;
        }
        if !self.nodes[x as usize].items.is_empty() {
            self.refresh(x);
            self.propagate_min(x, c);
        }
        // Collapse single-child roots.
        let mut r = self.buckets[bucket as usize].root;
        loop {
            let n = &self.nodes[r as usize];
            if n.leaf || n.items.len() != 1 {
                break;
            }
            let ch = n.items[0];
            self.free_node(r);
            let cn = &mut self.nodes[ch as usize];
            cn.parent = NIL;
            cn.pidx = 0;
            cn.bucket = bucket;
            self.buckets[bucket as usize].root = ch;
            r = ch;
        }
        let rn = &mut self.nodes[r as usize];
        if rn.items.is_empty() {
            rn.leaf = true;
            return Removal {
                bucket,
                old_min,
                new_min: None,
            };
        }
        let size = rn.size as usize;
        self.queue.update(bucket, size);
        Removal {
            bucket,
            old_min,
            new_min: Some(self.node_min(r).0),
        }
    }

    /// Builds a fresh bucket over `ids`, in order.
    pub fn build_bucket(&mut self, ids: &[u32]) -> u32 {
        debug_assert!(!ids.is_empty());
        let mut level: Vec<u32> = Vec::new();
        for chunk in ids.chunks(self.cap) {
            let x = self.alloc_node(true);
            {
                let n = &mut self.nodes[x as usize];
                n.items = chunk.to_vec();
                n.args = chunk.to_vec();
                n.size = chunk.len() as u32;
            }
            let vals: Vec<usize> = chunk.iter().map(|&e| self.entries[e as usize].value).collect();
            self.nodes[x as usize].vals = vals;
            self.reindex_items(x, 0);
            self.refresh(x);
            level.push(x);
        }
        while level.len() > 1 {
            let mut next = Vec::new();
            for chunk in level.chunks(self.cap) {
                let x = self.alloc_node(false);
                let mins: Vec<Min> = chunk.iter().map(|&ch| self.node_min(ch)).collect();
                let size = chunk.iter().map(|&ch| self.nodes[ch as usize].size).sum();
                {
                    let n = &mut self.nodes[x as usize];
                    n.items = chunk.to_vec();
                    n.vals = mins.iter().map(|m| m.0).collect();
                    n.args = mins.iter().map(|m| m.1).collect();
                    n.size = size;
                }
                self.reindex_items(x, 0);
                self.refresh(x);
                next.push(x);
            }
            level = next;
        }
        let root = level[0];
        let b = self.alloc_bucket(root);
        self.queue.insert(b, ids.len());
        b
    }

    /// Entries of bucket `b` in order.
    pub fn bucket_entries(&self, b: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.bucket_size(b));
        let mut stack = vec![self.buckets[b as usize].root];
        while let Some(x) = stack.pop() {
            let n = &self.nodes[x as usize];
            if n.leaf {
                out.extend_from_slice(&n.items);
            } else {
                stack.extend(n.items.iter().rev());
            }
        }
        out
    }

    /// Splits `x` so the left part holds the first `p` entries
    /// (`0 < p < size(x)`). Returns `(left, right)`; `left == x`.
    fn split_at(&mut self, x: u32, p: usize, c: &Counters) -> (u32, u32) {
        c.rebuild(self.cap as u64);
        let leaf = self.nodes[x as usize].leaf;
        let y = self.alloc_node(leaf);
        if leaf {
            let (items, vals, args) = {
                let n = &mut self.nodes[x as usize];
                (n.items.split_off(p), n.vals.split_off(p), n.args.split_off(p))
            };
            let moved = items.len() as u32;
            {
                let yn = &mut self.nodes[y as usize];
                yn.items = items;
                yn.vals = vals;
                yn.args = args;
                yn.size = moved;
            }
            self.nodes[x as usize].size -= moved;
        } else {
            let mut before = 0usize;
            let mut k = 0usize;
            let len = self.nodes[x as usize].items.len();
            while k < len {
                let s = self.nodes[self.nodes[x as usize].items[k] as usize].size as usize;
                if p < before + s {
                    break;
                }
                before += s;
                k += 1;
            }
            let cut = if p == before {
                k
            } else {
                let child = self.nodes[x as usize].items[k];
                let (_, r) = self.split_at(child, p - before, c);
                let m = self.node_min(child);
                let rm = self.node_min(r);
                let n = &mut self.nodes[x as usize];
                n.vals[k] = m.0;
                n.args[k] = m.1;
                n.items.insert(k + 1, r);
                n.vals.insert(k + 1, rm.0);
                n.args.insert(k + 1, rm.1);
                k + 1
            };
            let (items, vals, args) = {
                let n = &mut self.nodes[x as usize];
                (n.items.split_off(cut), n.vals.split_off(cut), n.args.split_off(cut))
            };
            let moved: u32 = items.iter().map(|&ch| self.nodes[ch as usize].size).sum();
            {
                let yn = &mut self.nodes[y as usize];
                yn.items = items;
                yn.vals = vals;
                yn.args = args;
                yn.size = moved;
            }
            self.nodes[x as usize].size = p as u32;
            self.reindex_items(x, 0);
        }
        self.reindex_items(y, 0);
        self.refresh(x);
        self.refresh(y);
        (x, y)
    }

    fn collapse(&mut self, mut r: u32) -> u32 {
        loop {
            let n = &self.nodes[r as usize];
            if n.leaf || n.items.len() != 1 {
                return r;
            }
            let ch = n.items[0];
            self.free_node(r);
            let cn = &mut self.nodes[ch as usize];
            cn.parent = NIL;
            cn.pidx = 0;
            r = ch;
        }
    }

    /// Splits bucket `b` at its midpoint. Returns the new bucket and whether
    /// it holds the right half.
    ///
    /// The half that keeps `b` is the one holding the old minimum, so the
    /// main-tree leaf of `b` keeps its value and the new leaf's value is at
    /// least as large.
    pub fn split_bucket(&mut self, b: u32, c: &Counters) -> (u32, bool) {
        let root = self.buckets[b as usize].root;
        let size = self.nodes[root as usize].size as usize;
        debug_assert!(size >= 2);
        let (l, r) = self.split_at(root, size / 2, c);
        self.nodes[l as usize].parent = NIL;
        self.nodes[r as usize].parent = NIL;
        let l = self.collapse(l);
        let r = self.collapse(r);
        let (lmin, rmin) = (self.node_min(l).0, self.node_min(r).0);
        let (keep, fresh, new_is_right) = if lmin <= rmin {
            (l, r, true)
        } else {
            (r, l, false)
        };
        self.buckets[b as usize].root = keep;
        self.nodes[keep as usize].bucket = b;
        let nb = self.alloc_bucket(fresh);
        self.queue
            .update(b, self.nodes[keep as usize].size as usize);
        self.queue.insert(nb, self.nodes[fresh as usize].size as usize);
        (nb, new_is_right)
    }

    /// Range minimum over entries `el..=er` of one bucket, `el` not after `er`.
    pub fn rmq_same(&self, el: u32, er: u32, c: &Counters) -> Min {
        let (mut a, mut ia) = {
            let e = &self.entries[el as usize];
            (e.node, e.idx as usize)
        };
        let (mut b, mut ib) = {
            let e = &self.entries[er as usize];
            (e.node, e.idx as usize)
        };
        if a == b {
            c.step(1);
            return self.piece(a, ia, ib);
        }
        let mut acc = better(None, self.piece(a, ia, self.nodes[a as usize].items.len() - 1));
        let mut right: [Min; 48] = [(0, 0); 48];
        let mut nr = 0usize;
        right[nr] = self.piece(b, 0, ib);
        nr += 1;
        let mut steps = 2u64;
        loop {
            let (pa, pia) = (self.nodes[a as usize].parent, self.nodes[a as usize].pidx as usize);
            let (pb, pib) = (self.nodes[b as usize].parent, self.nodes[b as usize].pidx as usize);
            steps += 2;
            if pa == pb {
                if pia + 1 < pib {
                    acc = better(acc, self.piece(pa, pia + 1, pib - 1));
                }
                break;
            }
            let la = self.nodes[pa as usize].items.len();
            if pia + 1 < la {
                acc = better(acc, self.piece(pa, pia + 1, la - 1));
            }
            if pib >= 1 {
                right[nr] = self.piece(pb, 0, pib - 1);
                nr += 1;
            }
            a = pa;
            b = pb;
            ia = pia;
            ib = pib;
        }
        let _ = (ia, ib);
        for k in (0..nr).rev() {
            acc = better(acc, right[k]);
        }
        c.step(steps);
        acc.expect("non-empty range")
    }

    /// Minimum over the bucket's entries from its start through `er`.
    pub fn prefix_min(&self, er: u32, c: &Counters) -> Min {
        let mut x = self.entries[er as usize].node;
        let mut pieces: [Min; 48] = [(0, 0); 48];
        let mut np = 0usize;
        pieces[np] = self.piece(x, 0, self.entries[er as usize].idx as usize);
        np += 1;
        loop {
            let n = &self.nodes[x as usize];
            if n.parent == NIL {
                break;
            }
            if n.pidx >= 1 {
                pieces[np] = self.piece(n.parent, 0, n.pidx as usize - 1);
                np += 1;
            }
            x = n.parent;
        }
        c.step(np as u64 + 1);
        let mut acc = None;
        for k in (0..np).rev() {
            acc = better(acc, pieces[k]);
        }
        acc.expect("non-empty")
    }

    /// Minimum over the bucket's entries from `el` through its end.
    pub fn suffix_min(&self, el: u32, c: &Counters) -> Min {
        let mut x = self.entries[el as usize].node;
        let len = self.nodes[x as usize].items.len();
        let mut acc = better(None, self.piece(x, self.entries[el as usize].idx as usize, len - 1));
        let mut steps = 1u64;
        loop {
            let n = &self.nodes[x as usize];
            if n.parent == NIL {
                break;
            }
            let plen = self.nodes[n.parent as usize].items.len();
            if (n.pidx as usize) + 1 < plen {
                acc = better(acc, self.piece(n.parent, n.pidx as usize + 1, plen - 1));
            }
            steps += 1;
            x = n.parent;
        }
        c.step(steps);
        acc.expect("non-empty")
    }

    /// Relative position of two entries of the same bucket.
    pub fn cmp_same(&self, e1: u32, e2: u32, c: &Counters) -> Ordering {
        let (mut a, mut ia) = (self.entries[e1 as usize].node, self.entries[e1 as usize].idx);
        let (mut b, mut ib) = (self.entries[e2 as usize].node, self.entries[e2 as usize].idx);
        let mut steps = 1;
        while a != b {
            let (na, nb) = (&self.nodes[a as usize], &self.nodes[b as usize]);
            ia = na.pidx;
            ib = nb.pidx;
            a = na.parent;
            b = nb.parent;
            steps += 1;
        }
        c.step(steps);
        ia.cmp(&ib)
    }

    pub fn height(&self, b: u32) -> usize {
        let mut x = self.buckets[b as usize].root;
        let mut h = 1;
        while !self.nodes[x as usize].leaf {
            x = self.nodes[x as usize].items[0];
            h += 1;
        }
        h
    }

    /// Structural audit of one bucket.
    pub fn validate_bucket(&self, b: u32, out: &mut Vec<String>) {
        let root = self.buckets[b as usize].root;
        let rn = &self.nodes[root as usize];
        if rn.parent != NIL {
            out.push(format!("bucket {b}: root has a parent"));
        }
        if rn.bucket != b {
            out.push(format!("bucket {b}: root records bucket {}", rn.bucket));
        }
        if !self.queue.contains(b) || self.queue.size(b) != rn.size as usize {
            out.push(format!("bucket {b}: size queue out of sync"));
        }
        let mut leaf_depth = None;
        self.validate_node(root, 0, &mut leaf_depth, b, out);
    }

    fn validate_node(
        &self,
        x: u32,
        depth: usize,
        leaf_depth: &mut Option<usize>,
        b: u32,
        out: &mut Vec<String>,
    ) -> usize {
        let n = &self.nodes[x as usize];
        if !n.live {
            out.push(format!("bucket {b}: dead micro node {x} reachable"));
            return 0;
        }
        if n.items.len() != n.vals.len() || n.items.len() != n.args.len() {
            out.push(format!("bucket {b}: node {x} arrays differ in length"));
            return 0;
        }
        if n.items.len() > self.cap {
            out.push(format!("bucket {b}: node {x} over capacity"));
        }
        if n.code != code_of(&n.vals) {
            out.push(format!("bucket {b}: node {x} stale topology code"));
        }
        let mut size = 0usize;
        if n.leaf {
            match leaf_depth {
                None => *leaf_depth = Some(depth),
                Some(d) if *d != depth => out.push(format!("bucket {b}: uneven leaf depth")),
                _ => {}
            }
            for (i, &e) in n.items.iter().enumerate() {
                let en = &self.entries[e as usize];
                if !en.live || en.node != x || en.idx as usize != i {
                    out.push(format!("bucket {b}: entry {e} back-reference broken"));
                }
                if n.vals[i] != en.value || n.args[i] != e {
                    out.push(format!("bucket {b}: entry {e} value copy stale"));
                }
            }
            size = n.items.len();
        } else {
            for (i, &ch) in n.items.iter().enumerate() {
                let cn = &self.nodes[ch as usize];
                if cn.parent != x || cn.pidx as usize != i {
                    out.push(format!("bucket {b}: child {ch} back-reference broken"));
                }
                let s = self.validate_node(ch, depth + 1, leaf_depth, b, out);
                size += s;
                if s > 0 {
                    let m = self.node_min(ch);
                    if n.vals[i] != m.0 {
                        out.push(format!("bucket {b}: node {x} child min stale"));
                    }
                    let a = n.args[i];
                    let ae = &self.entries[a as usize];
                    if !ae.live || ae.value != n.vals[i] || !self.is_under(ae.node, ch) {
                        out.push(format!("bucket {b}: node {x} child argmin unsound"));
                    }
                }
            }
        }
        if n.size as usize != size {
            out.push(format!("bucket {b}: node {x} size {} != {}", n.size, size));
        }
        size
    }

    fn is_under(&self, mut x: u32, anc: u32) -> bool {
        while x != NIL {
            if x == anc {
                return true;
            }
            x = self.nodes[x as usize].parent;
        }
        false
    }

    pub fn live_buckets(&self) -> impl Iterator<Item = u32> + '_ {
        self.buckets
            .iter()
            .enumerate()
            .filter(|(_, b)| b.live)
            .map(|(i, _)| i as u32)
    }
}
