//! Height-balanced search trees.

use std::cmp::Ordering;

use super::bst::{Arena, NONE};
use super::{Inserted, OrderedContainer, SearchResult, Slot, Step};

/// Many AVL trees sharing one arena, with caller-chosen node ids. Each node
/// belongs to at most one tree at a time; a tree is named by its root id,
/// held by the caller (`NONE`-valued [`AvlForest::EMPTY`] for an empty
/// tree). Used for the per-node child maps of the suffix tree.
#[derive(Clone, Debug, Default)]
pub struct AvlForest {
    a: Arena,
}

impl AvlForest {
    pub const EMPTY: u32 = NONE;

    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    fn h(&self, x: u32) -> u32 {
        if x == NONE {
            0
        } else {
            self.a.at(x).aux
        }
    }

    fn fix_height(&mut self, x: u32) {
        let l = self.a.at(x);
        let h = 1 + self.h(l.left).max(self.h(l.right));
        self.a.at_mut(x).aux = h;
    }

    fn rebalance(&mut self, root: &mut u32, mut x: u32) {
        while x != NONE {
            self.fix_height(x);
            let (l, r) = (self.a.at(x).left, self.a.at(x).right);
            let bf = self.h(l) as i64 - self.h(r) as i64;
            if bf > 1 {
                if self.h(self.a.at(l).left) < self.h(self.a.at(l).right) {
                    let y = self.a.rotate_left(root, l);
                    self.fix_height(l);
                    self.fix_height(y);
                }
                let y = self.a.rotate_right(root, x);
                self.fix_height(x);
                self.fix_height(y);
                x = y;
            } else if bf < -1 {
                if self.h(self.a.at(r).right) < self.h(self.a.at(r).left) {
                    let y = self.a.rotate_right(root, r);
                    self.fix_height(r);
                    self.fix_height(y);
                }
                let y = self.a.rotate_left(root, x);
                self.fix_height(x);
                self.fix_height(y);
                x = y;
            }
            x = self.a.at(x).parent;
        }
    }

    /// Inserts node `id` into the tree at `root`. Returns its neighbours.
    pub fn insert<F: FnMut(u32) -> Ordering>(
        &mut self,
        root: &mut u32,
        id: u32,
        cmp: F,
    ) -> (Option<u32>, Option<u32>) {
        let nb = self.a.attach(root, id, 1, cmp);
        let p = self.a.at(id).parent;
        self.rebalance(root, p);
        nb
    }

    pub fn remove(&mut self, root: &mut u32, id: u32) {
        let l = *self.a.at(id);
        let start;
        if l.left != NONE && l.right != NONE {
            let s = self.a.leftmost(l.right);
            let (sp, sr) = (self.a.at(s).parent, self.a.at(s).right);
            if sp != id {
                self.a.at_mut(sp).left = sr;
                if sr != NONE {
                    self.a.at_mut(sr).parent = sp;
                }
                self.a.at_mut(s).right = l.right;
                self.a.at_mut(l.right).parent = s;
                start = sp;
            } else {
                start = s;
            }
            self.a.at_mut(s).left = l.left;
            self.a.at_mut(l.left).parent = s;
            self.a.replace_child(root, l.parent, id, s);
            self.a.at_mut(s).aux = l.aux;
        } else {
            let child = if l.left != NONE { l.left } else { l.right };
            self.a.replace_child(root, l.parent, id, child);
            start = l.parent;
        }
        *self.a.at_mut(id) = Default::default();
        self.rebalance(root, start);
    }

    /// Puts `new` where `old` is; `old` leaves the tree.
    pub fn replace(&mut self, root: &mut u32, old: u32, new: u32) {
        self.a.replace(root, old, new);
    }

    pub fn search<F: FnMut(u32) -> Ordering>(&self, root: u32, cmp: F) -> SearchResult {
        self.a.search(root, cmp)
    }

    pub fn descend<F: FnMut(u32) -> Step>(&self, root: u32, f: F) {
        self.a.descend(root, f)
    }

    pub fn first(&self, root: u32) -> Option<u32> {
        (root != NONE).then(|| self.a.leftmost(root))
    }

    pub fn last(&self, root: u32) -> Option<u32> {
        (root != NONE).then(|| self.a.rightmost(root))
    }

    pub fn next(&self, id: u32) -> Option<u32> {
        self.a.next(id)
    }

    pub fn prev(&self, id: u32) -> Option<u32> {
        self.a.prev(id)
    }

    pub fn contains(&self, id: u32) -> bool {
        self.a.n.get(id as usize).is_some_and(|l| l.live)
    }

    /// Node ids of the tree at `root`, in order.
    pub fn iter(&self, root: u32) -> impl Iterator<Item = u32> + '_ {
        std::iter::successors(self.first(root), move |&x| self.next(x))
    }

    pub fn height(&self, root: u32) -> usize {
        self.h(root) as usize
    }

    /// Audits links, stored heights and balance; returns the node count.
    pub fn validate(&self, root: u32, out: &mut Vec<String>) -> usize {
        let n = self.a.check_links(root, out);
        self.check_balance(root, out);
        n
    }

    fn check_balance(&self, x: u32, out: &mut Vec<String>) -> u32 {
        if x == NONE {
            return 0;
        }
        let l = self.check_balance(self.a.at(x).left, out);
        let r = self.check_balance(self.a.at(x).right, out);
        if l.abs_diff(r) > 1 {
            out.push(format!("avl node {x} unbalanced ({l} vs {r})"));
        }
        let h = 1 + l.max(r);
        if self.a.at(x).aux != h {
            out.push(format!("avl node {x} stores height {} not {h}", self.a.at(x).aux));
        }
        h
    }
}

/// A single AVL tree with its own slot allocation.
#[derive(Clone, Debug)]
pub struct AvlTree {
    f: AvlForest,
    root: u32,
    len: usize,
    free: Vec<u32>,
    next_id: u32,
}

impl Default for AvlTree {
    fn default() -> Self {
        AvlTree {
            f: AvlForest::new(),
            root: NONE,
            len: 0,
            free: Vec::new(),
            next_id: 0,
        }
    }
}

impl OrderedContainer for AvlTree {
    fn with_seed(_seed: u64) -> Self {
        Self::default()
    }

    fn len(&self) -> usize {
        self.len
    }

    fn insert_with<F: FnMut(Slot) -> Ordering>(&mut self, cmp: F) -> Inserted {
        let id = self.free.pop().unwrap_or_else(|| {
            self.next_id += 1;
            self.next_id - 1
        });
        let (pred, succ) = self.f.insert(&mut self.root, id, cmp);
        self.len += 1;
        Inserted { slot: id, pred, succ }
    }

    fn remove(&mut self, slot: Slot) {
        self.f.remove(&mut self.root, slot);
        self.free.push(slot);
        self.len -= 1;
    }

    fn search_with<F: FnMut(Slot) -> Ordering>(&self, cmp: F) -> SearchResult {
        self.f.search(self.root, cmp)
    }

    fn descend<F: FnMut(Slot) -> Step>(&self, f: F) {
        self.f.descend(self.root, f)
    }

    fn first(&self) -> Option<Slot> {
        self.f.first(self.root)
    }

    fn last(&self) -> Option<Slot> {
        self.f.last(self.root)
    }

    fn next(&self, slot: Slot) -> Option<Slot> {
        self.f.next(slot)
    }

    fn prev(&self, slot: Slot) -> Option<Slot> {
        self.f.prev(slot)
    }

    fn height(&self) -> usize {
        self.f.height(self.root)
    }

    fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.f.validate(self.root, &mut out);
        if n != self.len {
            out.push(format!("avl tree holds {n} nodes, len is {}", self.len));
        }
        out
    }

    fn name() -> &'static str {
        "avl"
    }
}
