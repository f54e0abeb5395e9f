//! Brute-force references: obviously correct, quadratic, size-guarded.

use crate::error::{Error, Result};
use crate::symbol::{StringView, Symbol};

/// Default input bound for the quadratic oracles.
pub const DEFAULT_LIMIT: usize = 5000;

/// Longest common prefix by direct scan, endmarkers included.
pub fn naive_lcp<A: StringView + ?Sized, B: StringView + ?Sized>(a: &A, b: &B) -> usize {
    let n = a.len().min(b.len());
    (1..=n).take_while(|&i| a.symbol_at(i) == b.symbol_at(i)).count()
}

fn with_sentinel(text: &[Symbol]) -> Vec<Symbol> {
    let mut t = text.to_vec();
    t.push(Symbol::SENTINEL);
    t
}

fn guard(len: usize, limit: usize) -> Result<()> {
    if len > limit {
        Err(Error::OracleBound { len, limit })
    } else {
        Ok(())
    }
}

/// Suffix array and adjacent-lcp array of `text` + sentinel, by comparison
/// sort of the suffixes.
pub fn naive_suffix_array(text: &[Symbol], limit: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    guard(text.len() + 1, limit)?;
    let t = with_sentinel(text);
    let mut sa: Vec<usize> = (0..t.len()).collect();
    sa.sort_by(|&i, &j| t[i..].cmp(&t[j..]));
    let lcp = sa
        .windows(2)
        .map(|w| {
            t[w[0]..]
                .iter()
                .zip(&t[w[1]..])
                .take_while(|(a, b)| a == b)
                .count()
        })
        .collect();
    Ok((sa, lcp))
}

/// A suffix tree with explicit edge labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RefTree {
    pub nodes: Vec<RefNode>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RefNode {
    /// Label of the edge into this node (empty at the root).
    pub label: Vec<Symbol>,
    /// Children ordered by the first symbol of their labels.
    pub children: Vec<usize>,
    /// String depth.
    pub depth: usize,
    /// For leaves: length of the suffix (sentinel included).
    pub suffix_len: Option<usize>,
}

impl RefTree {
    pub fn root(&self) -> usize {
        0
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.suffix_len.is_some()).count()
    }

    /// Leaves in depth-first order (lexicographic order of suffixes).
    pub fn leaf_order(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            let n = &self.nodes[x];
            if let Some(l) = n.suffix_len {
                out.push(l);
            }
            stack.extend(n.children.iter().rev());
        }
        out
    }

    /// Depth of every internal node, each once.
    pub fn internal_depths(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .filter(|n| n.suffix_len.is_none())
            .map(|n| n.depth)
            .collect()
    }
}

/// Builds the suffix tree of `text` + sentinel from first principles: sort
/// the suffixes, then split sorted runs by their common prefixes.
pub fn naive_suffix_tree(text: &[Symbol], limit: usize) -> Result<RefTree> {
    guard(text.len() + 1, limit)?;
    let t = with_sentinel(text);
    let (sa, _) = naive_suffix_array(text, limit)?;
    let mut tree = RefTree {
        nodes: vec![RefNode::default()],
    };
    // (node, run of suffix starts, depth of node)
    let mut work = vec![(0usize, sa, 0usize)];
    while let Some((node, run, depth)) = work.pop() {
        let mut i = 0;
        while i < run.len() {
            let c = t[run[i] + depth];
            let mut j = i + 1;
            while j < run.len() && t[run[j] + depth] == c {
                j += 1;
            }
            let group = &run[i..j];
            let child = tree.nodes.len();
            if group.len() == 1 {
                let s = group[0];
                tree.nodes.push(RefNode {
                    label: t[s + depth..].to_vec(),
                    children: Vec::new(),
                    depth: t.len() - s,
                    suffix_len: Some(t.len() - s),
                });
            } else {
                let (a, b) = (group[0], group[group.len() - 1]);
                let common = t[a..]
                    .iter()
                    .zip(&t[b..])
                    .take_while(|(x, y)| x == y)
                    .count();
                tree.nodes.push(RefNode {
                    label: t[a + depth..a + common].to_vec(),
                    children: Vec::new(),
                    depth: common,
                    suffix_len: None,
                });
                work.push((child, group.to_vec(), common));
            }
            tree.nodes[node].children.push(child);
            i = j;
        }
    }
    Ok(tree)
}

/// Structural equality of two labelled trees (children compared in order).
pub fn trees_isomorphic(a: &RefTree, b: &RefTree) -> bool {
    if a.nodes.len() != b.nodes.len() {
        return false;
    }
    let mut stack = vec![(0usize, 0usize)];
    while let Some((x, y)) = stack.pop() {
        let (nx, ny) = (&a.nodes[x], &b.nodes[y]);
        if nx.label != ny.label
            || nx.depth != ny.depth
            || nx.suffix_len != ny.suffix_len
            || nx.children.len() != ny.children.len()
        {
            return false;
        }
        stack.extend(nx.children.iter().copied().zip(ny.children.iter().copied()));
    }
    true
}

/// Starting positions of `pattern` in `text`, ascending. The empty pattern
/// matches at every position of the text.
pub fn naive_search(text: &[Symbol], pattern: &[Symbol]) -> Vec<usize> {
    if pattern.is_empty() {
        return (0..text.len()).collect();
    }
    text.windows(pattern.len())
        .enumerate()
        .filter(|(_, w)| *w == pattern)
        .map(|(i, _)| i)
        .collect()
}

/// Minimum of `arr[i..=j]` and the leftmost index attaining it.
pub fn naive_rmq(arr: &[usize], i: usize, j: usize) -> (usize, usize) {
    let mut best = (arr[i], i);
    for (k, &v) in arr.iter().enumerate().take(j + 1).skip(i + 1) {
        if v < best.0 {
            best = (v, k);
        }
    }
    best
}

/// Rooted tree with parent pointers, answering lca by walking up.
#[derive(Clone, Debug, Default)]
pub struct ParentTree {
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    children: Vec<usize>,
    live: Vec<bool>,
}

impl ParentTree {
    /// A tree holding only the root, node 0.
    pub fn new() -> Self {
        ParentTree {
            parent: vec![None],
            depth: vec![0],
            children: vec![0],
            live: vec![true],
        }
    }

    pub fn add_leaf(&mut self, parent: usize) -> usize {
        self.parent.push(Some(parent));
        self.depth.push(self.depth[parent] + 1);
        self.children.push(0);
        self.live.push(true);
        self.children[parent] += 1;
        self.parent.len() - 1
    }

    pub fn remove_leaf(&mut self, u: usize) {
        assert_eq!(self.children[u], 0);
        self.live[u] = false;
        if let Some(p) = self.parent[u] {
            self.children[p] -= 1;
        }
    }

    pub fn is_leaf(&self, u: usize) -> bool {
        self.children[u] == 0
    }

    pub fn is_live(&self, u: usize) -> bool {
        self.live[u]
    }

    pub fn depth(&self, u: usize) -> usize {
        self.depth[u]
    }

    pub fn lca(&self, mut u: usize, mut v: usize) -> usize {
        while self.depth[u] > self.depth[v] {
            u = self.parent[u].unwrap();
        }
        while self.depth[v] > self.depth[u] {
            v = self.parent[v].unwrap();
        }
        while u != v {
            u = self.parent[u].unwrap();
            v = self.parent[v].unwrap();
        }
        u
    }

    pub fn ancestor_at(&self, mut u: usize, d: usize) -> usize {
        while self.depth[u] > d {
            u = self.parent[u].unwrap();
        }
        u
    }
}
