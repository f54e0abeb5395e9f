//! Dynamic lowest common ancestors through an Euler tour in a [`DsLcpList`].
//!
//! Each node `u` owns an implicit string of length `depth(u)` (its root
//! path); the Euler tour lists these strings, one copy per visit, and is
//! sorted by construction. The lcp of any copies of `u` and `v` is the depth
//! of their lca, so an lca query is one list query plus a level-ancestor
//! lookup (binary lifting here, O(log n)).

use crate::dslcp::{DsLcpList, ListHandle, Neighbor};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LcaNode(pub u32);

#[derive(Clone, Debug)]
struct Node {
    parent: u32,
    depth: usize,
    primary: ListHandle,
    /// Parent copy created right after this node's tour segment.
    extra: Option<ListHandle>,
    /// Parent copy this node's segment was inserted after.
    after: Option<ListHandle>,
    /// Last copy of this node in the tour.
    last_copy: ListHandle,
    children: u32,
    jump: Vec<u32>,
    live: bool,
}

#[derive(Clone, Copy, Debug)]
struct Owner {
    node: u32,
    primary: bool,
}

#[derive(Debug)]
pub struct DynamicLca {
    list: DsLcpList<()>,
    nodes: Vec<Node>,
    owner: Vec<Owner>,
    live: usize,
}

impl Default for DynamicLca {
    fn default() -> Self {
        Self::new()
    }
}

impl DynamicLca {
    /// A tree holding only its root.
    pub fn new() -> Self {
        let mut list = DsLcpList::new();
        let h = list.insert(None, None, 1).expect("empty list");
        let mut t = DynamicLca {
            list,
            nodes: vec![Node {
                parent: u32::MAX,
                depth: 0,
                primary: h,
                extra: None,
                after: None,
                last_copy: h,
                children: 0,
                jump: Vec::new(),
                live: true,
            }],
            owner: Vec::new(),
            live: 1,
        };
        t.set_owner(h, 0, true);
        t
    }

    pub fn root(&self) -> LcaNode {
        LcaNode(0)
    }

    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn list(&self) -> &DsLcpList<()> {
        &self.list
    }

    fn set_owner(&mut self, h: ListHandle, node: u32, primary: bool) {
        if self.owner.len() <= h.index() {
            self.owner.resize(h.index() + 1, Owner { node: 0, primary: false });
        }
        self.owner[h.index()] = Owner { node, primary };
    }

    fn node(&self, u: LcaNode) -> Result<&Node> {
        match self.nodes.get(u.0 as usize) {
            Some(n) if n.live => Ok(n),
            _ => Err(Error::InvalidHandle),
        }
    }

    pub fn depth(&self, u: LcaNode) -> Result<usize> {
        Ok(self.node(u)?.depth)
    }

    pub fn parent(&self, u: LcaNode) -> Result<Option<LcaNode>> {
        let p = self.node(u)?.parent;
        Ok((p != u32::MAX).then_some(LcaNode(p)))
    }

    pub fn is_leaf(&self, u: LcaNode) -> Result<bool> {
        Ok(self.node(u)?.children == 0)
    }

    /// The handle of `u`'s first tour copy.
    pub fn primary_copy(&self, u: LcaNode) -> Result<ListHandle> {
        Ok(self.node(u)?.primary)
    }

    pub fn add_leaf(&mut self, parent: LcaNode) -> Result<LcaNode> {
        let p = self.node(parent)?;
        let (pd, h) = (p.depth, p.last_copy);
        let next = self.list.next(h)?;
        let old = self.list.adjacent_lcp(h)?;
        // Second copy of the parent right after its last one.
        let succ = next.map(|n| Neighbor::new(n, old.expect("entry before next"), ()));
        let h2 = self.list.insert(Some(Neighbor::new(h, pd, ())), succ, pd + 1)?;
        // The leaf between the two parent copies.
        let hl = self.list.insert(
            Some(Neighbor::new(h, pd, ())),
            Some(Neighbor::new(h2, pd, ())),
            pd + 2,
        )?;
        let id = self.nodes.len() as u32;
        let mut jump = vec![parent.0];
        while let Some(&up) = jump.last() {
            match self.nodes[up as usize].jump.get(jump.len() - 1) {
                Some(&j) => jump.push(j),
                None => break,
            }
        }
        self.nodes.push(Node {
            parent: parent.0,
            depth: pd + 1,
            primary: hl,
            extra: Some(h2),
            after: Some(h),
            last_copy: hl,
            children: 0,
            jump,
            live: true,
        });
        let pn = &mut self.nodes[parent.0 as usize];
        pn.last_copy = h2;
        pn.children += 1;
        self.set_owner(hl, id, true);
        self.set_owner(h2, parent.0, false);
        self.live += 1;
        Ok(LcaNode(id))
    }

    pub fn remove_leaf(&mut self, u: LcaNode) -> Result<()> {
        let n = self.node(u)?.clone();
        if n.children > 0 {
            return Err(Error::HasChildren);
        }
        let (Some(extra), Some(after)) = (n.extra, n.after) else {
            return Err(Error::InvalidHandle);
        };
        let p = n.parent as usize;
        if self.nodes[p].last_copy == extra {
            self.nodes[p].last_copy = after;
        } else {
            // A later sibling's segment starts right after our parent copy.
            let nx = self.list.next(extra)?.expect("later sibling");
            let o = self.owner[nx.index()];
            debug_assert!(o.primary && self.nodes[o.node as usize].parent == n.parent);
            self.nodes[o.node as usize].after = Some(after);
        }
        self.list.remove(n.primary)?;
        self.list.remove(extra)?;
        self.nodes[p].children -= 1;
        self.nodes[u.0 as usize].live = false;
        self.live -= 1;
        Ok(())
    }

    /// Ancestor of `u` at depth `d`.
    pub fn level_ancestor(&self, u: LcaNode, d: usize) -> Result<LcaNode> {
        let n = self.node(u)?;
        if d > n.depth {
            return Err(Error::DepthOutOfRange {
                depth: d,
                node_depth: n.depth,
            });
        }
        let mut x = u.0;
        let mut up = n.depth - d;
        while up > 0 {
            let i = up.trailing_zeros() as usize;
            x = self.nodes[x as usize].jump[i];
            up &= up - 1;
        }
        Ok(LcaNode(x))
    }

    pub fn lca(&self, u: LcaNode, v: LcaNode) -> Result<LcaNode> {
        let (a, b) = (self.node(u)?, self.node(v)?);
        if u == v {
            return Ok(u);
        }
        let d = self.list.lcp(a.primary, b.primary)?;
        self.level_ancestor(u, d)
    }
}
