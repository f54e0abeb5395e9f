//! Weight-balanced B-tree over bucket minima.
//!
//! Leaves stand for buckets and carry the bucket's minimum. Every internal
//! node keeps an "lcplist": one copy per leaf of its subtree, in order, each
//! copy holding the prefix and suffix minima of the list up to and from it.
//! Leaves additionally store their root path as a packed string of sibling
//! numbers, which makes the lowest common ancestor of two leaves a single
//! word comparison. A range minimum over leaves then reads one suffix
//! minimum, one prefix minimum and the children strictly between them at the
//! meeting node.

use std::cmp::Ordering;

use super::micro::{Min, NIL};
use crate::metrics::Counters;

#[derive(Clone, Debug, Default)]
struct Node {
    parent: u32,
    level: u32,
    sibnum: u32,
    live: bool,
    // Internal nodes.
    children: Vec<u32>,
    rank_of: Vec<u16>,
    weight: usize,
    head: u32,
    tail: u32,
    // Leaves.
    bucket: u32,
    value: usize,
    prev: u32,
    next: u32,
    path: Vec<u64>,
    anc: Vec<u32>,
    clones: Vec<u32>,
}

#[derive(Clone, Copy, Debug)]
struct Copy_ {
    leaf: u32,
    prev: u32,
    next: u32,
    pmin: Min,
    smin: Min,
}

const NO_RANK: u16 = u16::MAX;

#[inline]
fn left_pref(a: Min, b: Min) -> Min {
    if a.0 <= b.0 {
        a
    } else {
        b
    }
}

#[derive(Clone, Debug)]
pub(crate) struct MainTree {
    nodes: Vec<Node>,
    free_nodes: Vec<u32>,
    copies: Vec<Copy_>,
    free_copies: Vec<u32>,
    root: u32,
    /// Level of the root; leaves are at depth `height`.
    height: usize,
    b: usize,
    bits: u32,
    per_word: usize,
    max_sib: usize,
    first_leaf: u32,
}

impl MainTree {
    pub fn new(b: usize) -> Self {
        assert!(b > 4, "branching parameter must exceed 4");
        let max_sib = 4 * b + 2;
        let bits = usize::BITS - (max_sib - 1).leading_zeros();
        MainTree {
            nodes: Vec::new(),
            free_nodes: Vec::new(),
            copies: Vec::new(),
            free_copies: Vec::new(),
            root: NIL,
            height: 0,
            b,
            bits,
            per_word: (64 / bits) as usize,
            max_sib,
            first_leaf: NIL,
        }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn leaf_value(&self, leaf: u32) -> usize {
        self.nodes[leaf as usize].value
    }

    pub fn leaf_bucket(&self, leaf: u32) -> u32 {
        self.nodes[leaf as usize].bucket
    }

    pub fn next_leaf(&self, leaf: u32) -> u32 {
        self.nodes[leaf as usize].next
    }

    pub fn prev_leaf(&self, leaf: u32) -> u32 {
        self.nodes[leaf as usize].prev
    }

    fn alloc_node(&mut self, level: u32) -> u32 {
        let n = Node {
            parent: NIL,
            level,
            live: true,
            head: NIL,
            tail: NIL,
            bucket: NIL,
            prev: NIL,
            next: NIL,
            ..Node::default()
        };
        match self.free_nodes.pop() {
            Some(id) => {
                self.nodes[id as usize] = n;
                id
            }
            None => {
                self.nodes.push(n);
                (self.nodes.len() - 1) as u32
            }
        }
    }

    fn free_node(&mut self, id: u32) {
        self.nodes[id as usize] = Node::default();
        self.free_nodes.push(id);
    }

    fn alloc_copy(&mut self, c: Copy_) -> u32 {
        match self.free_copies.pop() {
            Some(id) => {
                self.copies[id as usize] = c;
                id
            }
            None => {
                self.copies.push(c);
                (self.copies.len() - 1) as u32
            }
        }
    }

    // ---- packed paths -------------------------------------------------

    fn words_for(&self, h: usize) -> usize {
        h.div_ceil(self.per_word).max(1)
    }

    #[inline]
    fn set_comp(&self, path: &mut [u64], d: usize, v: u32) {
        let w = d / self.per_word;
        let shift = 64 - self.bits as usize * (d % self.per_word + 1);
        let mask = ((1u64 << self.bits) - 1) << shift;
        path[w] = (path[w] & !mask) | ((v as u64) << shift);
    }

    /// Index of the first differing component of two distinct leaves' paths.
    #[inline]
    fn path_lcp(&self, a: u32, b: u32) -> usize {
        let (pa, pb) = (&self.nodes[a as usize].path, &self.nodes[b as usize].path);
        for (w, (x, y)) in pa.iter().zip(pb).enumerate() {
            let d = x ^ y;
            if d != 0 {
                return w * self.per_word + d.leading_zeros() as usize / self.bits as usize;
            }
        }
        unreachable!("distinct leaves share a root path")
    }

    // ---- weights ----------------------------------------------------------

    fn unit(&self, level: u32) -> usize {
        self.b.saturating_pow(level)
    }

    fn overweight(&self, x: u32) -> bool {
        let n = &self.nodes[x as usize];
        if n.level == 1 {
            n.weight >= 2 * self.b
        } else {
            n.weight >= self.unit(n.level).saturating_mul(2)
        }
    }

    fn underweight(&self, x: u32) -> bool {
        let n = &self.nodes[x as usize];
        if n.level == 1 {
            n.weight < self.b
        } else {
            n.weight.saturating_mul(2) <= self.unit(n.level)
        }
    }

    fn child_weight(&self, ch: u32) -> usize {
        let n = &self.nodes[ch as usize];
        if n.level == 0 {
            1
        } else {
            n.weight
        }
    }

    fn rebuild_rank(&mut self, x: u32) {
        let max_sib = self.max_sib;
        let children = std::mem::take(&mut self.nodes[x as usize].children);
        let mut rank = vec![NO_RANK; max_sib];
        for (i, &ch) in children.iter().enumerate() {
            rank[self.nodes[ch as usize].sibnum as usize] = i as u16;
        }
        let n = &mut self.nodes[x as usize];
        n.children = children;
        n.rank_of = rank;
    }

    fn fresh_sibnum(&self, x: u32) -> u32 {
        let r = &self.nodes[x as usize].rank_of;
        r.iter()
            .position(|&v| v == NO_RANK)
            .expect("fan-out bound exceeded") as u32
    }

    fn rank(&self, x: u32) -> usize {
        let n = &self.nodes[x as usize];
        self.nodes[n.parent as usize].rank_of[n.sibnum as usize] as usize
    }

    fn node_min(&self, x: u32) -> Min {
        let n = &self.nodes[x as usize];
        if n.level == 0 {
            (n.value, x)
        } else {
            self.copies[n.head as usize].smin
        }
    }

    /// Recomputes the prefix and suffix minima along the lcplist of `x`.
    fn recompute(&mut self, x: u32, c: &Counters) {
        let (head, tail) = (self.nodes[x as usize].head, self.nodes[x as usize].tail);
        let mut acc: Option<Min> = None;
        let mut k = head;
        let mut steps = 0;
        while k != NIL {
            let leaf = self.copies[k as usize].leaf;
            let own = (self.nodes[leaf as usize].value, leaf);
            let m = match acc {
                Some(a) => left_pref(a, own),
                None => own,
            };
            self.copies[k as usize].pmin = m;
            acc = Some(m);
            k = self.copies[k as usize].next;
            steps += 1;
        }
        let mut acc: Option<Min> = None;
        let mut k = tail;
        while k != NIL {
            let leaf = self.copies[k as usize].leaf;
            let own = (self.nodes[leaf as usize].value, leaf);
            let m = match acc {
                Some(a) => left_pref(own, a),
                None => own,
            };
            self.copies[k as usize].smin = m;
            acc = Some(m);
            k = self.copies[k as usize].prev;
        }
        c.rebuild(2 * steps);
    }

    fn leftmost_leaf(&self, mut x: u32) -> u32 {
        while self.nodes[x as usize].level > 0 {
            x = self.nodes[x as usize].children[0];
        }
        x
    }

    fn leaves_under(&self, x: u32) -> Vec<u32> {
        if self.nodes[x as usize].level == 0 {
            return vec![x];
        }
        let mut out = Vec::new();
        let mut k = self.nodes[x as usize].head;
        while k != NIL {
            out.push(self.copies[k as usize].leaf);
            k = self.copies[k as usize].next;
        }
        out
    }

    // ---- construction -------------------------------------------------------

    /// Builds a tree over `(bucket, value)` leaves, in order. Returns the
    /// leaf ids.
    pub fn build(&mut self, leaves: &[(u32, usize)], c: &Counters) -> Vec<u32> {
        assert!(!leaves.is_empty());
        self.nodes.clear();
        self.free_nodes.clear();
        self.copies.clear();
        self.free_copies.clear();
        let b = self.b;
        let mut ids = Vec::with_capacity(leaves.len());
        for &(bucket, value) in leaves {
            let id = self.alloc_node(0);
            let n = &mut self.nodes[id as usize];
            n.bucket = bucket;
            n.value = value;
            ids.push(id);
        }
        for w in ids.windows(2) {
            self.nodes[w[0] as usize].next = w[1];
            self.nodes[w[1] as usize].prev = w[0];
        }
        self.first_leaf = ids[0];

        // Level 1.
        let m = ids.len();
        let groups = if m <= 2 * b - 1 { 1 } else { m.div_ceil(2 * b - 1) };
        let mut level: Vec<u32> = Vec::with_capacity(groups);
        for g in 0..groups {
            let (lo, hi) = (g * m / groups, (g + 1) * m / groups);
            level.push(self.make_internal(1, &ids[lo..hi]));
        }
        let mut l = 1u32;
        while level.len() > 1 {
            l += 1;
            let weights: Vec<usize> = level.iter().map(|&x| self.nodes[x as usize].weight).collect();
            let total: usize = weights.iter().sum();
            let unit = self.unit(l);
            let groups = if total < unit.saturating_mul(2) { 1 } else { total / unit };
            let mut next = Vec::with_capacity(groups);
            let mut start = 0usize;
            let mut acc = 0usize;
            for g in 1..=groups {
                let end = if g == groups {
                    level.len()
                } else {
                    let target = g * total / groups;
                    let mut end = start + 1;
                    let mut cum = acc + weights[start];
                    while end < level.len() - (groups - g)
                        && (cum + weights[end]).abs_diff(target) < cum.abs_diff(target)
                    {
                        cum += weights[end];
                        end += 1;
                    }
                    end
                };
                acc += weights[start..end].iter().sum::<usize>();
                let chunk = level[start..end].to_vec();
                next.push(self.make_internal(l, &chunk));
                start = end;
            }
            level = next;
        }
        self.root = level[0];
        self.height = self.nodes[self.root as usize].level as usize;
        self.reindex_all(c);
        ids
    }

    fn make_internal(&mut self, level: u32, children: &[u32]) -> u32 {
        let x = self.alloc_node(level);
        let mut w = 0;
        for (i, &ch) in children.iter().enumerate() {
            let cn = &mut self.nodes[ch as usize];
            cn.parent = x;
            cn.sibnum = i as u32;
            w += if cn.level == 0 { 1 } else { cn.weight };
        }
        self.nodes[x as usize].children = children.to_vec();
        self.nodes[x as usize].weight = w;
        self.rebuild_rank(x);
        x
    }

    /// Recomputes every leaf path, ancestor vector and lcplist.
    fn reindex_all(&mut self, c: &Counters) {
        let h = self.height;
        self.copies.clear();
        self.free_copies.clear();
        // Reset lcplists of internal nodes.
        let mut stack = vec![self.root];
        while let Some(x) = stack.pop() {
            let n = &mut self.nodes[x as usize];
            if n.level > 0 {
                n.head = NIL;
                n.tail = NIL;
                stack.extend(n.children.iter().copied());
            }
        }
        let words = self.words_for(h);
        let mut leaf = self.first_leaf;
        let mut steps = 0u64;
        while leaf != NIL {
            let mut anc = vec![NIL; h];
            let mut path = vec![0u64; words];
            let mut x = leaf;
            for d in (0..h).rev() {
                let sib = self.nodes[x as usize].sibnum;
                self.set_comp(&mut path, d, sib);
                x = self.nodes[x as usize].parent;
                anc[d] = x;
            }
            debug_assert_eq!(x, self.root);
            let mut clones = vec![NIL; h];
            for d in 0..h {
                let a = anc[d];
                let tail = self.nodes[a as usize].tail;
                let k = self.alloc_copy(Copy_ {
                    leaf,
                    prev: tail,
                    next: NIL,
                    pmin: (0, NIL),
                    smin: (0, NIL),
                });
                if tail == NIL {
                    self.nodes[a as usize].head = k;
                } else {
                    self.copies[tail as usize].next = k;
                }
                self.nodes[a as usize].tail = k;
                clones[d] = k;
            }
            steps += h as u64;
            let n = &mut self.nodes[leaf as usize];
            n.anc = anc;
            n.path = path;
            n.clones = clones;
            leaf = n.next;
        }
        c.rebuild(steps);
        let mut stack = vec![self.root];
        while let Some(x) = stack.pop() {
            if self.nodes[x as usize].level > 0 {
                self.recompute(x, c);
                stack.extend(self.nodes[x as usize].children.iter().copied());
            }
        }
    }

    // ---- queries ------------------------------------------------------------

    /// Range minimum over the leaves `la..=lb` (`la` not after `lb`).
    pub fn rmq(&self, la: u32, lb: u32, c: &Counters) -> Min {
        if la == lb {
            c.step(1);
            return (self.nodes[la as usize].value, la);
        }
        let j = self.path_lcp(la, lb);
        let (na, nb) = (&self.nodes[la as usize], &self.nodes[lb as usize]);
        let lca = na.anc[j];
        let (left, right, ua, ub) = if j + 1 == self.height {
            ((na.value, la), (nb.value, lb), la, lb)
        } else {
            (
                self.copies[na.clones[j + 1] as usize].smin,
                self.copies[nb.clones[j + 1] as usize].pmin,
                na.anc[j + 1],
                nb.anc[j + 1],
            )
        };
        let ln = &self.nodes[lca as usize];
        let ra = ln.rank_of[self.nodes[ua as usize].sibnum as usize] as usize;
        let rb = ln.rank_of[self.nodes[ub as usize].sibnum as usize] as usize;
        let mut acc = left;
        for &ch in &ln.children[ra + 1..rb] {
            acc = left_pref(acc, self.node_min(ch));
        }
        c.step(3 + (rb - ra) as u64);
        left_pref(acc, right)
    }

    /// Relative order of two leaves.
    pub fn order(&self, la: u32, lb: u32, c: &Counters) -> Ordering {
        if la == lb {
            return Ordering::Equal;
        }
        c.step(2);
        let j = self.path_lcp(la, lb);
        let na = &self.nodes[la as usize];
        let lca = &self.nodes[na.anc[j] as usize];
        let (ua, ub) = if j + 1 == self.height {
            (la, lb)
        } else {
            (na.anc[j + 1], self.nodes[lb as usize].anc[j + 1])
        };
        let ra = lca.rank_of[self.nodes[ua as usize].sibnum as usize];
        let rb = lca.rank_of[self.nodes[ub as usize].sibnum as usize];
        ra.cmp(&rb)
    }

    // ---- updates ------------------------------------------------------------

    /// Inserts a new leaf next to `anchor` (after it when `after`).
    pub fn insert_leaf(&mut self, anchor: u32, after: bool, bucket: u32, value: usize, c: &Counters) -> u32 {
        let h = self.height;
        let p = self.nodes[anchor as usize].parent;
        let x = self.alloc_node(0);
        let sib = self.fresh_sibnum(p);
        {
            let (anc, mut path) = {
                let a = &self.nodes[anchor as usize];
                (a.anc.clone(), a.path.clone())
            };
            self.set_comp(&mut path, h - 1, sib);
            let n = &mut self.nodes[x as usize];
            n.parent = p;
            n.sibnum = sib;
            n.bucket = bucket;
            n.value = value;
            n.anc = anc;
            n.path = path;
        }
        // Leaf chain.
        if after {
            let nx = self.nodes[anchor as usize].next;
            self.nodes[x as usize].prev = anchor;
            self.nodes[x as usize].next = nx;
            self.nodes[anchor as usize].next = x;
            if nx != NIL {
                self.nodes[nx as usize].prev = x;
            }
        } else {
            let pv = self.nodes[anchor as usize].prev;
            self.nodes[x as usize].next = anchor;
            self.nodes[x as usize].prev = pv;
            self.nodes[anchor as usize].prev = x;
            if pv != NIL {
                self.nodes[pv as usize].next = x;
            } else {
                self.first_leaf = x;
            }
        }
        // Copies.
        let own = (value, x);
        let mut clones = vec![NIL; h];
        for (d, clone) in clones.iter_mut().enumerate() {
            let node = self.nodes[x as usize].anc[d];
            let ac = self.nodes[anchor as usize].clones[d];
            let (prev, next) = if after {
                (ac, self.copies[ac as usize].next)
            } else {
                (self.copies[ac as usize].prev, ac)
            };
            let pmin = if prev == NIL {
                own
            } else {
                left_pref(self.copies[prev as usize].pmin, own)
            };
            let smin = if next == NIL {
                own
            } else {
                left_pref(own, self.copies[next as usize].smin)
            };
            let k = self.alloc_copy(Copy_ { leaf: x, prev, next, pmin, smin });
            if prev == NIL {
                self.nodes[node as usize].head = k;
            } else {
                self.copies[prev as usize].next = k;
            }
            if next == NIL {
                self.nodes[node as usize].tail = k;
            } else {
                self.copies[next as usize].prev = k;
            }
            *clone = k;
        }
        self.nodes[x as usize].clones = clones;
        // Child list.
        let r = self.rank(anchor) + after as usize;
        self.nodes[p as usize].children.insert(r, x);
        self.rebuild_rank(p);
        let mut a = p;
        while a != NIL {
            self.nodes[a as usize].weight += 1;
            a = self.nodes[a as usize].parent;
        }
        c.step(2 * h as u64 + 2);
        // Rebalance bottom-up.
        let mut y = p;
        while y != NIL {
            if self.overweight(y) && self.split(y, c) {
                break;
            }
            y = self.nodes[y as usize].parent;
        }
        x
    }

    /// Splits `x` in two. Returns true when a new root was created.
    fn split(&mut self, x: u32, c: &Counters) -> bool {
        let level = self.nodes[x as usize].level;
        let depth = self.height - level as usize;
        let children = self.nodes[x as usize].children.clone();
        let s = if level == 1 {
            children.len() / 2
        } else {
            let total: usize = children.iter().map(|&ch| self.child_weight(ch)).sum();
            let mut best = (usize::MAX, 1);
            let mut cum = 0;
            for (i, &ch) in children.iter().enumerate().take(children.len() - 1) {
                cum += self.child_weight(ch);
                let dev = (2 * cum).abs_diff(total);
                if dev < best.0 {
                    best = (dev, i + 1);
                }
            }
            best.1
        };
        let y = self.alloc_node(level);
        let moved: Vec<u32> = children[s..].to_vec();
        let mut w = 0;
        for &ch in &moved {
            self.nodes[ch as usize].parent = y;
            w += self.child_weight(ch);
        }
        self.nodes[x as usize].children.truncate(s);
        self.nodes[x as usize].weight -= w;
        self.nodes[y as usize].children = moved;
        self.nodes[y as usize].weight = w;
        self.rebuild_rank(x);
        self.rebuild_rank(y);
        // Split the lcplist at y's first leaf.
        let fl = self.leftmost_leaf(y);
        let k = self.nodes[fl as usize].clones[depth];
        let kp = self.copies[k as usize].prev;
        self.nodes[y as usize].head = k;
        self.nodes[y as usize].tail = self.nodes[x as usize].tail;
        self.nodes[x as usize].tail = kp;
        self.copies[kp as usize].next = NIL;
        self.copies[k as usize].prev = NIL;
        self.recompute(x, c);
        self.recompute(y, c);

        let parent = self.nodes[x as usize].parent;
        if parent == NIL {
            let r = self.make_internal(level + 1, &[x, y]);
            self.root = r;
            self.height += 1;
            self.reindex_all(c);
            return true;
        }
        let sib = self.fresh_sibnum(parent);
        self.nodes[y as usize].parent = parent;
        self.nodes[y as usize].sibnum = sib;
        let r = self.rank(x);
        self.nodes[parent as usize].children.insert(r + 1, y);
        self.rebuild_rank(parent);
        let leaves = self.leaves_under(y);
        c.rebuild(leaves.len() as u64);
        for l in leaves {
            let mut path = std::mem::take(&mut self.nodes[l as usize].path);
            self.set_comp(&mut path, depth - 1, sib);
            let n = &mut self.nodes[l as usize];
            n.path = path;
            n.anc[depth] = y;
        }
        false
    }

    /// Sets the value of `leaf`, repairing minima that referenced it or that
    /// it now improves.
    pub fn update_value(&mut self, leaf: u32, value: usize, c: &Counters) {
        let old = self.nodes[leaf as usize].value;
        self.nodes[leaf as usize].value = value;
        for d in 0..self.height {
            let k = self.nodes[leaf as usize].clones[d];
            let cp = self.copies[k as usize];
            let touched = cp.pmin.1 == leaf || cp.smin.1 == leaf || value < old;
            if touched {
                self.recompute(self.nodes[leaf as usize].anc[d], c);
            }
        }
        c.step(self.height as u64);
    }

    pub fn delete_leaf(&mut self, leaf: u32, c: &Counters) {
        let h = self.height;
        let p = self.nodes[leaf as usize].parent;
        for d in 0..h {
            let k = self.nodes[leaf as usize].clones[d];
            let node = self.nodes[leaf as usize].anc[d];
            let cp = self.copies[k as usize];
            if cp.prev == NIL {
                self.nodes[node as usize].head = cp.next;
            } else {
                self.copies[cp.prev as usize].next = cp.next;
            }
            if cp.next == NIL {
                self.nodes[node as usize].tail = cp.prev;
            } else {
                self.copies[cp.next as usize].prev = cp.prev;
            }
            self.free_copies.push(k);
            if cp.pmin.1 == leaf || cp.smin.1 == leaf {
                self.recompute(node, c);
            }
        }
        let r = self.rank(leaf);
        self.nodes[p as usize].children.remove(r);
        self.rebuild_rank(p);
        let (pv, nx) = (self.nodes[leaf as usize].prev, self.nodes[leaf as usize].next);
        if pv != NIL {
            self.nodes[pv as usize].next = nx;
        } else {
            self.first_leaf = nx;
        }
        if nx != NIL {
            self.nodes[nx as usize].prev = pv;
        }
        self.free_node(leaf);
        let mut a = p;
        while a != NIL {
            self.nodes[a as usize].weight -= 1;
            a = self.nodes[a as usize].parent;
        }
        c.step(2 * h as u64 + 2);
        self.fix_underflow(p, c);
    }

    fn fix_underflow(&mut self, mut x: u32, c: &Counters) {
        loop {
            if x == self.root {
                let n = &self.nodes[x as usize];
                if n.level > 1 && n.children.len() == 1 {
                    let ch = n.children[0];
                    self.free_node(x);
                    self.nodes[ch as usize].parent = NIL;
                    self.root = ch;
                    self.height -= 1;
                    self.reindex_all(c);
                    x = ch;
                    continue;
                }
                return;
            }
            let p = self.nodes[x as usize].parent;
            if self.underweight(x) && self.nodes[p as usize].children.len() > 1 {
                let r = self.rank(x);
                let pc = &self.nodes[p as usize].children;
                let (l, rt) = if r + 1 < pc.len() { (x, pc[r + 1]) } else { (pc[r - 1], x) };
                self.merge(l, rt, c);
                if self.overweight(l) {
                    self.split(l, c);
                }
            }
            x = p;
        }
    }

    /// Absorbs `r` into its left sibling `l`.
    fn merge(&mut self, l: u32, r: u32, c: &Counters) {
        let depth = self.height - self.nodes[l as usize].level as usize;
        let moved = std::mem::take(&mut self.nodes[r as usize].children);
        let w = self.nodes[r as usize].weight;
        for &ch in &moved {
            let sib = self.fresh_sibnum(l);
            self.nodes[ch as usize].parent = l;
            self.nodes[ch as usize].sibnum = sib;
            self.nodes[l as usize].children.push(ch);
            self.rebuild_rank(l);
        }
        self.nodes[l as usize].weight += w;
        // Concatenate lcplists.
        let (lt, rh, rt) = (
            self.nodes[l as usize].tail,
            self.nodes[r as usize].head,
            self.nodes[r as usize].tail,
        );
        self.copies[lt as usize].next = rh;
        self.copies[rh as usize].prev = lt;
        self.nodes[l as usize].tail = rt;
        self.recompute(l, c);
        let p = self.nodes[l as usize].parent;
        let rr = self.rank(r);
        self.nodes[p as usize].children.remove(rr);
        self.rebuild_rank(p);
        self.free_node(r);
        let lsib = self.nodes[l as usize].sibnum;
        let mut steps = 0;
        for &ch in &moved {
            let csib = self.nodes[ch as usize].sibnum;
            for leaf in self.leaves_under(ch) {
                let mut path = std::mem::take(&mut self.nodes[leaf as usize].path);
                self.set_comp(&mut path, depth - 1, lsib);
                self.set_comp(&mut path, depth, csib);
                let n = &mut self.nodes[leaf as usize];
                n.path = path;
                n.anc[depth] = l;
                steps += 1;
            }
        }
        c.rebuild(steps + self.max_sib as u64);
    }

    // ---- audit --------------------------------------------------------------

    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut l = self.first_leaf;
        while l != NIL {
            out.push(l);
            l = self.nodes[l as usize].next;
        }
        out
    }

    pub fn validate(&self, out: &mut Vec<String>) {
        let mut leaves_dfs = Vec::new();
        self.validate_node(self.root, 0, &mut leaves_dfs, out);
        if leaves_dfs != self.leaves() {
            out.push("main tree: leaf chain disagrees with tree order".into());
        }
        for (i, &l) in leaves_dfs.iter().enumerate() {
            let n = &self.nodes[l as usize];
            if n.anc.len() != self.height || n.clones.len() != self.height {
                out.push(format!("main tree: leaf {l} vectors have wrong length"));
                continue;
            }
            let mut x = l;
            for d in (0..self.height).rev() {
                let parent = self.nodes[x as usize].parent;
                if n.anc[d] != parent {
                    out.push(format!("main tree: leaf {l} ancestor {d} stale"));
                }
                let mut probe = vec![0u64; n.path.len()];
                self.set_comp(&mut probe, d, self.nodes[x as usize].sibnum);
                let w = d / self.per_word;
                let shift = 64 - self.bits as usize * (d % self.per_word + 1);
                if (n.path[w] >> shift) & ((1 << self.bits) - 1) != (probe[w] >> shift) & ((1 << self.bits) - 1) {
                    out.push(format!("main tree: leaf {l} path component {d} stale"));
                }
                if self.copies[n.clones[d] as usize].leaf != l {
                    out.push(format!("main tree: leaf {l} clone {d} points elsewhere"));
                }
                x = parent;
            }
            let _ = i;
        }
    }

    fn validate_node(&self, x: u32, depth: usize, leaves: &mut Vec<u32>, out: &mut Vec<String>) -> usize {
        let n = &self.nodes[x as usize];
        if !n.live {
            out.push(format!("main tree: dead node {x} reachable"));
            return 0;
        }
        if n.level == 0 {
            if depth != self.height {
                out.push(format!("main tree: leaf {x} at depth {depth}"));
            }
            leaves.push(x);
            return 1;
        }
        if n.level as usize + depth != self.height {
            out.push(format!("main tree: node {x} level/depth mismatch"));
        }
        let start = leaves.len();
        let mut w = 0;
        for (i, &ch) in n.children.iter().enumerate() {
            let cn = &self.nodes[ch as usize];
            if cn.parent != x || n.rank_of[cn.sibnum as usize] as usize != i {
                out.push(format!("main tree: child {ch} of {x} badly linked"));
            }
            w += self.validate_node(ch, depth + 1, leaves, out);
        }
        if w != n.weight {
            out.push(format!("main tree: node {x} weight {} != {w}", n.weight));
        }
        let is_root = x == self.root;
        let b = self.b;
        let ok = if n.level == 1 {
            w <= 2 * b - 1 && (is_root || w >= b)
        } else {
            let u = self.unit(n.level);
            w < 2 * u && (is_root || 2 * w > u)
        };
        if !ok {
            out.push(format!("main tree: node {x} (level {}) weight {w} out of bounds", n.level));
        }
        let fan = n.children.len();
        if fan > 4 * b || (!is_root && n.level > 1 && 4 * fan < b) {
            out.push(format!("main tree: node {x} fan-out {fan} out of bounds"));
        }
        // lcplist contents and minima.
        let expect = &leaves[start..];
        let got = self.leaves_under(x);
        if got != expect {
            out.push(format!("main tree: node {x} lcplist disagrees with subtree"));
            return w;
        }
        let mut k = n.head;
        let mut prev = NIL;
        let mut acc: Option<Min> = None;
        while k != NIL {
            let cp = &self.copies[k as usize];
            let own = (self.nodes[cp.leaf as usize].value, cp.leaf);
            let m = acc.map_or(own, |a| left_pref(a, own));
            if cp.prev != prev || cp.pmin.0 != m.0 {
                out.push(format!("main tree: node {x} prefix minimum stale"));
            }
            if self.nodes[cp.pmin.1 as usize].value != cp.pmin.0 {
                out.push(format!("main tree: node {x} prefix argmin unsound"));
            }
            acc = Some(m);
            prev = k;
            k = cp.next;
        }
        if prev != n.tail {
            out.push(format!("main tree: node {x} tail pointer stale"));
        }
        let mut k = n.tail;
        let mut acc: Option<Min> = None;
        while k != NIL {
            let cp = &self.copies[k as usize];
            let own = (self.nodes[cp.leaf as usize].value, cp.leaf);
            let m = acc.map_or(own, |a| left_pref(own, a));
            if cp.smin.0 != m.0 || self.nodes[cp.smin.1 as usize].value != cp.smin.0 {
                out.push(format!("main tree: node {x} suffix minimum stale"));
            }
            acc = Some(m);
            k = cp.prev;
        }
        w
    }
}
