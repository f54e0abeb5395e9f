//! Binary-search-tree arena shared by the balanced containers. Node ids are
//! caller chosen; `aux` holds the height (AVL) or priority (treap).

use std::cmp::Ordering;

use super::{SearchResult, Step};

pub(crate) const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Link {
    pub left: u32,
    pub right: u32,
    pub parent: u32,
    pub aux: u32,
    pub live: bool,
}

impl Default for Link {
    fn default() -> Self {
        Link {
            left: NONE,
            right: NONE,
            parent: NONE,
            aux: 0,
            live: false,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Arena {
    pub n: Vec<Link>,
}

impl Arena {
    #[inline]
    pub fn at(&self, id: u32) -> &Link {
        &self.n[id as usize]
    }

    #[inline]
    pub fn at_mut(&mut self, id: u32) -> &mut Link {
        &mut self.n[id as usize]
    }

    pub fn ensure(&mut self, id: u32) {
        if self.n.len() <= id as usize {
            self.n.resize(id as usize + 1, Link::default());
        }
    }

    /// Points `p`'s link to `old` at `new` (or the root when `p` is NONE).
    pub fn replace_child(&mut self, root: &mut u32, p: u32, old: u32, new: u32) {
        if p == NONE {
            *root = new;
        } else if self.at(p).left == old {
            self.at_mut(p).left = new;
        } else {
            debug_assert_eq!(self.at(p).right, old);
            self.at_mut(p).right = new;
        }
        if new != NONE {
            self.at_mut(new).parent = p;
        }
    }

    pub fn rotate_left(&mut self, root: &mut u32, x: u32) -> u32 {
        let y = self.at(x).right;
        let b = self.at(y).left;
        let p = self.at(x).parent;
        self.at_mut(x).right = b;
        if b != NONE {
            self.at_mut(b).parent = x;
        }
        self.replace_child(root, p, x, y);
        self.at_mut(y).left = x;
        self.at_mut(x).parent = y;
        y
    }

    pub fn rotate_right(&mut self, root: &mut u32, x: u32) -> u32 {
        let y = self.at(x).left;
        let b = self.at(y).right;
        let p = self.at(x).parent;
        self.at_mut(x).left = b;
        if b != NONE {
            self.at_mut(b).parent = x;
        }
        self.replace_child(root, p, x, y);
        self.at_mut(y).right = x;
        self.at_mut(x).parent = y;
        y
    }

    /// Attaches `id` as a leaf by comparison; returns in-order neighbours.
    pub fn attach<F: FnMut(u32) -> Ordering>(
        &mut self,
        root: &mut u32,
        id: u32,
        aux: u32,
        mut cmp: F,
    ) -> (Option<u32>, Option<u32>) {
        self.ensure(id);
        *self.at_mut(id) = Link {
            aux,
            live: true,
            ..Link::default()
        };
        let (mut pred, mut succ) = (None, None);
        let mut cur = *root;
        let mut parent = NONE;
        let mut go_left = false;
        while cur != NONE {
            parent = cur;
            go_left = cmp(cur) == Ordering::Less;
            if go_left {
                succ = Some(cur);
                cur = self.at(cur).left;
            } else {
                pred = Some(cur);
                cur = self.at(cur).right;
            }
        }
        self.at_mut(id).parent = parent;
        if parent == NONE {
            *root = id;
        } else if go_left {
            self.at_mut(parent).left = id;
        } else {
            self.at_mut(parent).right = id;
        }
        (pred, succ)
    }

    pub fn search<F: FnMut(u32) -> Ordering>(&self, root: u32, mut cmp: F) -> SearchResult {
        let (mut pred, mut succ) = (None, None);
        let mut cur = root;
        while cur != NONE {
            match cmp(cur) {
                Ordering::Equal => return SearchResult::Found(cur),
                Ordering::Less => {
                    succ = Some(cur);
                    cur = self.at(cur).left;
                }
                Ordering::Greater => {
                    pred = Some(cur);
                    cur = self.at(cur).right;
                }
            }
        }
        SearchResult::Between(pred, succ)
    }

    pub fn descend<F: FnMut(u32) -> Step>(&self, root: u32, mut f: F) {
        let mut cur = root;
        while cur != NONE {
            cur = match f(cur) {
                Step::Left => self.at(cur).left,
                Step::Right => self.at(cur).right,
                Step::Stop => return,
            };
        }
    }

    pub fn leftmost(&self, mut x: u32) -> u32 {
        while x != NONE && self.at(x).left != NONE {
            x = self.at(x).left;
        }
        x
    }

    pub fn rightmost(&self, mut x: u32) -> u32 {
        while x != NONE && self.at(x).right != NONE {
            x = self.at(x).right;
        }
        x
    }

    pub fn next(&self, x: u32) -> Option<u32> {
        let r = self.at(x).right;
        if r != NONE {
            return Some(self.leftmost(r));
        }
        let (mut c, mut p) = (x, self.at(x).parent);
        while p != NONE && self.at(p).right == c {
            c = p;
            p = self.at(p).parent;
        }
        (p != NONE).then_some(p)
    }

    pub fn prev(&self, x: u32) -> Option<u32> {
        let l = self.at(x).left;
        if l != NONE {
            return Some(self.rightmost(l));
        }
        let (mut c, mut p) = (x, self.at(x).parent);
        while p != NONE && self.at(p).left == c {
            c = p;
            p = self.at(p).parent;
        }
        (p != NONE).then_some(p)
    }

    /// Puts `new` in `old`'s place (same links); `old` is retired.
    pub fn replace(&mut self, root: &mut u32, old: u32, new: u32) {
        self.ensure(new);
        let l = *self.at(old);
        *self.at_mut(new) = l;
        self.replace_child(root, l.parent, old, new);
        if l.left != NONE {
            self.at_mut(l.left).parent = new;
        }
        if l.right != NONE {
            self.at_mut(l.right).parent = new;
        }
        *self.at_mut(old) = Link::default();
    }

    pub fn height(&self, x: u32) -> usize {
        if x == NONE {
            0
        } else {
            1 + self.height(self.at(x).left).max(self.height(self.at(x).right))
        }
    }

    /// Checks parent links below `root`; returns the node count.
    pub fn check_links(&self, root: u32, out: &mut Vec<String>) -> usize {
        if root == NONE {
            return 0;
        }
        if self.at(root).parent != NONE {
            out.push(format!("root {root} has a parent"));
        }
        let mut count = 0;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            count += 1;
            let l = self.at(x);
            if !l.live {
                out.push(format!("dead node {x} reachable"));
            }
            for c in [l.left, l.right] {
                if c != NONE {
                    if self.at(c).parent != x {
                        out.push(format!("node {c} parent link broken"));
                    }
                    stack.push(c);
                }
            }
        }
        count
    }
}
