//! Randomized search tree (max-heap on random priorities).

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bst::{Arena, NONE};
use super::{Inserted, OrderedContainer, SearchResult, Slot, Step};

#[derive(Clone, Debug)]
pub struct Treap {
    a: Arena,
    root: u32,
    len: usize,
    free: Vec<u32>,
    next_id: u32,
    rng: ChaCha8Rng,
}

impl Treap {
    fn prio(&self, x: u32) -> u32 {
        self.a.at(x).aux
    }

    fn check_heap(&self, x: u32, out: &mut Vec<String>) {
        if x == NONE {
            return;
        }
        for c in [self.a.at(x).left, self.a.at(x).right] {
            if c != NONE {
                if self.prio(c) > self.prio(x) {
                    out.push(format!("treap node {c} outranks its parent"));
                }
                self.check_heap(c, out);
            }
        }
    }
}

impl OrderedContainer for Treap {
    fn with_seed(seed: u64) -> Self {
        Treap {
            a: Arena::default(),
            root: NONE,
            len: 0,
            free: Vec::new(),
            next_id: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn len(&self) -> usize {
        self.len
    }

    fn insert_with<F: FnMut(Slot) -> Ordering>(&mut self, cmp: F) -> Inserted {
        let id = self.free.pop().unwrap_or_else(|| {
            self.next_id += 1;
            self.next_id - 1
        });
        let prio = self.rng.gen();
        let (pred, succ) = self.a.attach(&mut self.root, id, prio, cmp);
        loop {
            let p = self.a.at(id).parent;
            if p == NONE || self.prio(p) >= prio {
                break;
            }
            if self.a.at(p).left == id {
                self.a.rotate_right(&mut self.root, p);
            } else {
                self.a.rotate_left(&mut self.root, p);
            }
        }
        self.len += 1;
        Inserted { slot: id, pred, succ }
    }

    fn remove(&mut self, slot: Slot) {
        loop {
            let (l, r) = (self.a.at(slot).left, self.a.at(slot).right);
            if l == NONE || r == NONE {
                let child = if l != NONE { l } else { r };
                let p = self.a.at(slot).parent;
                self.a.replace_child(&mut self.root, p, slot, child);
                break;
            }
            if self.prio(l) > self.prio(r) {
                self.a.rotate_right(&mut self.root, slot);
            } else {
                self.a.rotate_left(&mut self.root, slot);
            }
        }
        *self.a.at_mut(slot) = Default::default();
        self.free.push(slot);
        self.len -= 1;
    }

    fn search_with<F: FnMut(Slot) -> Ordering>(&self, cmp: F) -> SearchResult {
        self.a.search(self.root, cmp)
    }

    fn descend<F: FnMut(Slot) -> Step>(&self, f: F) {
        self.a.descend(self.root, f)
    }

    fn first(&self) -> Option<Slot> {
        (self.root != NONE).then(|| self.a.leftmost(self.root))
    }

    fn last(&self) -> Option<Slot> {
        (self.root != NONE).then(|| self.a.rightmost(self.root))
    }

    fn next(&self, slot: Slot) -> Option<Slot> {
        self.a.next(slot)
    }

    fn prev(&self, slot: Slot) -> Option<Slot> {
        self.a.prev(slot)
    }

    fn height(&self) -> usize {
        self.a.height(self.root)
    }

    fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.a.check_links(self.root, &mut out);
        if n != self.len {
            out.push(format!("treap holds {n} nodes, len is {}", self.len));
        }
        self.check_heap(self.root, &mut out);
        out
    }

    fn name() -> &'static str {
        "treap"
    }
}
