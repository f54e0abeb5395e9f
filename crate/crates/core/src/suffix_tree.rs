//! Online suffix tree over a text that grows at the front.
//!
//! Each list entry between adjacent suffixes carries, as its witness, the
//! tree node at exactly that string depth above both leaves. The new leaf for
//! `aT` hangs off its list neighbours' root paths; the node or edge where it
//! attaches is found with O(1) list queries plus one container descent:
//!
//! * equal neighbour lcps: the witness of the entry between them;
//! * otherwise, with `k` the larger lcp (say toward `pred`), the deepest
//!   node on pred's root path not below depth `k` has depth
//!   `max(lcp(z', pred), lcp(pred, succ))`, where `z'` is the last suffix
//!   before `pred` sharing at most `k` symbols with it. Its witness is that
//!   node; a shallower node means the edge below it is split at depth `k`.
//!
//! Edge labels are pairs of end-anchored text positions, so prepending never
//! invalidates them.

use std::cmp::Ordering;

use crate::container::{AvlForest, AvlTree, OrderedContainer, SearchResult};
use crate::error::{Error, Result};
use crate::metrics::CounterSnapshot;
use crate::oracle::{RefNode, RefTree};
use crate::suffix_index::{Occurrences, PushInfo, SuffixIndex};
use crate::symbol::Symbol;
use crate::text::TextBuffer;

pub type NodeId = u32;

pub const ROOT: NodeId = 0;
const NONE: u32 = u32::MAX;

/// Edge label as end-anchored positions `first >= last`; the label reads
/// `at(first), at(first - 1), ..., at(last)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct TextRef {
    pub first: usize,
    pub last: usize,
}

impl TextRef {
    pub fn len(self) -> usize {
        self.first + 1 - self.last
    }

    pub fn is_empty(self) -> bool {
        false
    }
}

#[derive(Clone, Debug)]
struct StNode {
    parent: NodeId,
    length: usize,
    edge: TextRef,
    map: u32,
    nchildren: u32,
    leaf: bool,
    live: bool,
}

/// Where a new leaf joins the tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryPoint {
    AttachTo(NodeId),
    SplitEdge {
        parent: NodeId,
        key: Symbol,
        depth: usize,
    },
}

/// Deepest tree position matching a prefix of a pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Locus {
    /// The node at the position, or the upper end of its edge.
    pub node: NodeId,
    /// Lower end of the edge when the position is inside one.
    pub edge_child: Option<NodeId>,
    /// Pattern symbols matched (the string depth of the position).
    pub matched: usize,
}

/// Cost of the latest update.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct UpdateCost {
    /// Steady-state structural steps: container comparisons, boundary
    /// descent probes, child-map comparisons, tree edits and list steps.
    pub steps: u64,
    /// Amortized rebuild work inside the list.
    pub rebuild_steps: u64,
    pub char_reads: u64,
    pub comparisons: u64,
}

#[derive(Debug)]
pub struct SuffixTree<C: OrderedContainer = AvlTree> {
    index: SuffixIndex<NodeId, C>,
    nodes: Vec<StNode>,
    free: Vec<NodeId>,
    maps: AvlForest,
    /// `leaf_of[len - 1]` is the leaf of the suffix of length `len`.
    leaf_of: Vec<NodeId>,
    last_cost: UpdateCost,
}

impl<C: OrderedContainer> Default for SuffixTree<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: OrderedContainer> SuffixTree<C> {
    pub fn new() -> Self {
        Self::with_options(0, crate::dslcp::DEFAULT_BRANCHING)
    }

    pub fn with_options(seed: u64, branching: usize) -> Self {
        let mut t = SuffixTree {
            index: SuffixIndex::with_options(seed, branching),
            nodes: Vec::new(),
            free: Vec::new(),
            maps: AvlForest::new(),
            leaf_of: Vec::new(),
            last_cost: UpdateCost::default(),
        };
        let root = t.alloc(StNode {
            parent: NONE,
            length: 0,
            edge: TextRef::default(),
            map: AvlForest::EMPTY,
            nchildren: 0,
            leaf: false,
            live: true,
        });
        debug_assert_eq!(root, ROOT);
        let leaf = t.new_leaf(ROOT, 1);
        t.leaf_of.push(leaf);
        t
    }

    /// Tree of `symbols`, built by prepending right to left.
    pub fn build(symbols: &[Symbol]) -> Result<Self> {
        let mut t = Self::new();
        for &s in symbols.iter().rev() {
            t.extend_front(s)?;
        }
        Ok(t)
    }

    fn alloc(&mut self, n: StNode) -> NodeId {
        match self.free.pop() {
            Some(id) => {
                self.nodes[id as usize] = n;
                id
            }
            None => {
                self.nodes.push(n);
                (self.nodes.len() - 1) as NodeId
            }
        }
    }

    fn release(&mut self, id: NodeId) {
        self.nodes[id as usize].live = false;
        self.free.push(id);
    }

    pub fn text(&self) -> &TextBuffer {
        self.index.text()
    }

    pub fn index(&self) -> &SuffixIndex<NodeId, C> {
        &self.index
    }

    pub fn last_cost(&self) -> UpdateCost {
        self.last_cost
    }

    pub fn length(&self, v: NodeId) -> usize {
        self.nodes[v as usize].length
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        let p = self.nodes[v as usize].parent;
        (p != NONE).then_some(p)
    }

    pub fn edge(&self, v: NodeId) -> TextRef {
        self.nodes[v as usize].edge
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.nodes[v as usize].leaf
    }

    /// Children of `v` in key order.
    pub fn children(&self, v: NodeId) -> Vec<NodeId> {
        self.maps.iter(self.nodes[v as usize].map).collect()
    }

    /// Leaf of the suffix of length `len`.
    pub fn leaf(&self, len: usize) -> NodeId {
        self.leaf_of[len - 1]
    }

    /// Number of live nodes.
    pub fn node_count(&self) -> usize {
        self.nodes.len() - self.free.len()
    }

    #[inline]
    fn key_of(&self, child: NodeId) -> Symbol {
        self.text().at(self.nodes[child as usize].edge.first)
    }

    fn find_child(&self, v: NodeId, key: Symbol, probes: &mut u64) -> Option<NodeId> {
        match self.maps.search(self.nodes[v as usize].map, |c| {
            *probes += 1;
            key.cmp(&self.key_of(c))
        }) {
            SearchResult::Found(c) => Some(c),
            SearchResult::Between(..) => None,
        }
    }

    fn attach_child(&mut self, v: NodeId, c: NodeId, probes: &mut u64) {
        let key = self.key_of(c);
        let mut root = self.nodes[v as usize].map;
        let SuffixTree { maps, index, nodes, .. } = self;
        let text = index.text();
        maps.insert(&mut root, c, |s| {
            *probes += 1;
            key.cmp(&text.at(nodes[s as usize].edge.first))
        });
        let n = &mut self.nodes[v as usize];
        n.map = root;
        n.nchildren += 1;
        self.nodes[c as usize].parent = v;
    }

    fn new_leaf(&mut self, parent: NodeId, len: usize) -> NodeId {
        let plen = self.nodes[parent as usize].length;
        let leaf = self.alloc(StNode {
            parent,
            length: len,
            edge: TextRef {
                first: len - plen,
                last: 1,
            },
            map: AvlForest::EMPTY,
            nchildren: 0,
            leaf: true,
            live: true,
        });
        let mut probes = 0;
        self.attach_child(parent, leaf, &mut probes);
        self.last_cost.steps += probes + 1;
        leaf
    }

    /// Splits the edge below `v` keyed `key` at string depth `depth`;
    /// returns the new node.
    fn split(&mut self, v: NodeId, key: Symbol, depth: usize) -> NodeId {
        let mut probes = 0;
        let c = self
            .find_child(v, key, &mut probes)
            .expect("split edge exists");
        let t = depth - self.nodes[v as usize].length;
        let TextRef { first, last } = self.nodes[c as usize].edge;
        debug_assert!(t < first + 1 - last);
        let w = self.alloc(StNode {
            parent: v,
            length: depth,
            edge: TextRef {
                first,
                last: first + 1 - t,
            },
            map: AvlForest::EMPTY,
            nchildren: 0,
            leaf: false,
            live: true,
        });
        let mut root = self.nodes[v as usize].map;
        self.maps.replace(&mut root, c, w);
        self.nodes[v as usize].map = root;
        self.nodes[c as usize].edge = TextRef {
            first: first - t,
            last,
        };
        self.attach_child(w, c, &mut probes);
        self.last_cost.steps += probes + 2;
        w
    }

    /// Locates where the suffix being pushed joins the tree.
    pub fn find_entry_point(&self, info: &PushInfo) -> EntryPoint {
        let list = self.index.list();
        let (lp, ls) = (info.lcp_pred, info.lcp_succ);
        let old = match (info.pred, info.succ) {
            (Some(p), Some(_)) => {
                let h = self.index.handle(p);
                Some((
                    list.adjacent_lcp(h).expect("live").expect("has successor"),
                    list.adjacent_witness(h).expect("live").expect("has successor"),
                ))
            }
            _ => None,
        };
        if lp == ls {
            return EntryPoint::AttachTo(old.map_or(ROOT, |o| o.1));
        }
        let (near, k, boundary) = if lp > ls {
            let p = info.pred.expect("pred exists when its lcp is positive");
            (p, lp, self.index.boundary_below(p, lp))
        } else {
            let q = info.succ.expect("succ exists when its lcp is positive");
            (q, ls, self.index.boundary_above(q, ls))
        };
        let mut best = old.unwrap_or((0, ROOT));
        if let Some(z) = boundary {
            let (d, w) = list
                .lcp_witness(self.index.handle(z), self.index.handle(near))
                .expect("live");
            if d > best.0 {
                best = (d, w.expect("distinct handles"));
            }
        }
        let v = best.1;
        let lv = self.nodes[v as usize].length;
        debug_assert_eq!(lv, best.0, "witness depth");
        if lv == k {
            EntryPoint::AttachTo(v)
        } else {
            EntryPoint::SplitEdge {
                parent: v,
                key: self.text().at(near - lv),
                depth: k,
            }
        }
    }

    /// Prepends `a` to the text and updates the tree.
    pub fn extend_front(&mut self, a: Symbol) -> Result<()> {
        if a.is_sentinel() {
            return Err(Error::ReservedSymbol);
        }
        let before = self.index.list().counters().snapshot();
        self.last_cost = UpdateCost::default();
        let info = self.index.begin_push(a)?;
        let container_before = info.comparisons;
        let ep = self.find_entry_point(&info);
        let p = match ep {
            EntryPoint::AttachTo(v) => v,
            EntryPoint::SplitEdge { parent, key, depth } => self.split(parent, key, depth),
        };
        let leaf = self.new_leaf(p, info.len);
        self.leaf_of.push(leaf);
        let (wp, ws) = if info.lcp_pred == info.lcp_succ {
            (p, p)
        } else {
            let old = info
                .pred
                .filter(|_| info.succ.is_some())
                .and_then(|q| {
                    self.index
                        .list()
                        .adjacent_witness(self.index.handle(q))
                        .expect("live")
                })
                .unwrap_or(ROOT);
            if info.lcp_pred > info.lcp_succ {
                (p, old)
            } else {
                (old, p)
            }
        };
        self.index.commit_push(wp, ws)?;
        let d: CounterSnapshot = self.index.list().counters().snapshot() - before;
        let c = &mut self.last_cost;
        c.steps += d.steps + d.probes + container_before + 1;
        c.rebuild_steps = d.rebuild_steps;
        c.char_reads = info.char_reads;
        c.comparisons = info.comparisons;
        Ok(())
    }

    /// Removes the first text symbol (inverse of the latest
    /// [`Self::extend_front`]).
    pub fn contract_front(&mut self) -> Result<Symbol> {
        if self.text().user_len() == 0 {
            return Err(Error::Underflow);
        }
        let before = self.index.list().counters().snapshot();
        self.last_cost = UpdateCost::default();
        let leaf = self.leaf_of.pop().expect("leaf");
        let p = self.nodes[leaf as usize].parent;
        let mut root = self.nodes[p as usize].map;
        self.maps.remove(&mut root, leaf);
        self.nodes[p as usize].map = root;
        self.nodes[p as usize].nchildren -= 1;
        self.release(leaf);
        if p != ROOT && self.nodes[p as usize].nchildren == 1 {
            let c = self.maps.first(self.nodes[p as usize].map).expect("one child");
            let g = self.nodes[p as usize].parent;
            let upper = self.nodes[p as usize].edge;
            self.nodes[c as usize].edge.first = upper.first;
            self.nodes[c as usize].parent = g;
            let mut groot = self.nodes[g as usize].map;
            self.maps.replace(&mut groot, p, c);
            self.nodes[g as usize].map = groot;
            self.release(p);
        }
        let a = self.index.pop_front()?;
        let d = self.index.list().counters().snapshot() - before;
        self.last_cost.steps += d.steps + 4;
        self.last_cost.rebuild_steps = d.rebuild_steps;
        Ok(a)
    }

    /// Deepest position matching a prefix of `pattern`.
    pub fn locus(&self, pattern: &[Symbol]) -> Locus {
        let text = self.text();
        let mut v = ROOT;
        let mut m = 0;
        let mut probes = 0;
        loop {
            if m == pattern.len() {
                return Locus { node: v, edge_child: None, matched: m };
            }
            let Some(c) = self.find_child(v, pattern[m], &mut probes) else {
                return Locus { node: v, edge_child: None, matched: m };
            };
            let e = self.nodes[c as usize].edge;
            let mut i = 0;
            while i < e.len() && m + i < pattern.len() && text.at(e.first - i) == pattern[m + i] {
                i += 1;
            }
            if i == e.len() {
                v = c;
                m += i;
            } else {
                return Locus {
                    node: v,
                    edge_child: Some(c),
                    matched: m + i,
                };
            }
        }
    }

    pub fn locate(&self, pattern: &[Symbol]) -> Occurrences {
        self.index.locate(pattern)
    }

    pub fn dump_suffix_array(&self) -> (Vec<usize>, Vec<usize>) {
        self.index.dump_suffix_array()
    }

    /// Decoded copy of the tree, children in key order.
    pub fn to_ref_tree(&self) -> RefTree {
        let mut out = RefTree {
            nodes: vec![RefNode::default()],
        };
        let mut stack = vec![(ROOT, 0usize)];
        while let Some((v, r)) = stack.pop() {
            for c in self.children(v) {
                let n = &self.nodes[c as usize];
                let label = (n.edge.last..=n.edge.first)
                    .rev()
                    .map(|i| self.text().at(i))
                    .collect();
                let id = out.nodes.len();
                out.nodes.push(RefNode {
                    label,
                    children: Vec::new(),
                    depth: n.length,
                    suffix_len: n.leaf.then_some(n.length),
                });
                out.nodes[r].children.push(id);
                stack.push((c, id));
            }
        }
        out
    }

    /// Leaves (as suffix lengths) in depth-first child-map order.
    pub fn leaf_order(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![ROOT];
        while let Some(v) = stack.pop() {
            if self.nodes[v as usize].leaf {
                out.push(self.nodes[v as usize].length);
            }
            let mut ch = self.children(v);
            ch.reverse();
            stack.extend(ch);
        }
        out
    }

    /// Corrupts an edge label (fault injection for tests).
    #[doc(hidden)]
    pub fn debug_shift_edge(&mut self, v: NodeId, delta: isize) {
        let e = &mut self.nodes[v as usize].edge;
        e.first = e.first.wrapping_add_signed(delta);
    }

    /// Full audit. Quadratic in the worst case (labels are decoded).
    pub fn validate_tree(&self) -> Vec<String> {
        let mut out = Vec::new();
        let text = self.text();
        let r = &self.nodes[ROOT as usize];
        if r.length != 0 || r.parent != NONE {
            out.push("root malformed".into());
        }
        let mut leaves = 0;
        let mut stack = vec![ROOT];
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            let n = &self.nodes[v as usize];
            if !n.live {
                out.push(format!("dead node {v} reachable"));
                continue;
            }
            let count = self.maps.validate(n.map, &mut out);
            if count != n.nchildren as usize {
                out.push(format!("node {v}: child count {} vs map {count}", n.nchildren));
            }
            if v != ROOT && !n.leaf && count < 2 {
                out.push(format!("internal node {v} has {count} children"));
            }
            if n.leaf && count != 0 {
                out.push(format!("leaf {v} has children"));
            }
            let ch = self.children(v);
            for w in ch.windows(2) {
                if self.key_of(w[0]) >= self.key_of(w[1]) {
                    out.push(format!("node {v}: child keys out of order"));
                }
            }
            for &c in &ch {
                let cn = &self.nodes[c as usize];
                if cn.parent != v {
                    out.push(format!("node {c}: parent link broken"));
                }
                if cn.edge.first < cn.edge.last || cn.edge.last < 1 || cn.edge.first > text.len() {
                    out.push(format!("node {c}: edge {:?} out of range", cn.edge));
                    continue;
                }
                if cn.edge.len() != cn.length - n.length {
                    out.push(format!("node {c}: edge length disagrees with depths"));
                }
                stack.push(c);
            }
            if n.leaf {
                leaves += 1;
                if self.leaf_of.get(n.length - 1) != Some(&v) {
                    out.push(format!("leaf {v} not registered for its length"));
                }
                // Decode the root-to-leaf label and compare with the suffix.
                let mut u = v;
                while u != ROOT {
                    let un = &self.nodes[u as usize];
                    let base = self.nodes[un.parent as usize].length;
                    if un.edge.first < un.edge.last || un.edge.first > text.len() {
                        break;
                    }
                    for i in 0..un.edge.len() {
                        if base + i >= n.length || text.at(un.edge.first - i) != text.at(n.length - base - i) {
                            out.push(format!("leaf {v}: label of edge into {u} does not spell the suffix"));
                            break;
                        }
                    }
                    u = un.parent;
                }
            }
        }
        if seen != self.node_count() {
            out.push(format!("{seen} nodes reachable, {} live", self.node_count()));
        }
        if leaves != text.len() {
            out.push(format!("{leaves} leaves for {} suffixes", text.len()));
        }
        if self.leaf_order() != self.index.sorted_lengths() {
            out.push("depth-first leaf order differs from list order".into());
        }
        // Witness depths.
        let list = self.index.list();
        for h in list.iter() {
            let (Some(v), Some(w)) = (list.adjacent_lcp(h).unwrap(), list.adjacent_witness(h).unwrap()) else {
                continue;
            };
            let wn = &self.nodes[w as usize];
            if !wn.live || wn.length != v {
                out.push(format!("entry {v}: witness {w} has depth {}", wn.length));
                continue;
            }
            let mut u = self.leaf(self.index.len_of(h));
            while u != NONE && self.nodes[u as usize].length > v {
                u = self.nodes[u as usize].parent;
            }
            if u != w {
                out.push(format!("entry {v}: witness {w} is not above the left leaf"));
            }
        }
        out.extend(self.index.validate());
        out
    }
}

impl<C: OrderedContainer> SuffixTree<C> {
    /// Order helper used by tests: compares two suffix lengths.
    pub fn order(&self, l1: usize, l2: usize) -> Ordering {
        self.index.order(l1, l2)
    }
}
