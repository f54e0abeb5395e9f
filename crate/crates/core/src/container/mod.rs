//! Comparison-driven ordered containers.
//!
//! A container here never sees keys: every decision goes through a caller
//! supplied comparison on slots. That is what lets a string set plug
//! constant-time LCP-based comparisons into an off-the-shelf search tree.

mod avl;
mod bst;
mod treap;

use std::cmp::Ordering;

pub use avl::{AvlForest, AvlTree};
pub use treap::Treap;

/// Identifier of a stored key inside a container.
pub type Slot = u32;

/// Result of a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchResult {
    Found(Slot),
    /// The key would sit between these two slots.
    Between(Option<Slot>, Option<Slot>),
}

/// Where a descent goes next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Left,
    Right,
    Stop,
}

/// Outcome of an insertion: the new slot and its in-order neighbours.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inserted {
    pub slot: Slot,
    pub pred: Option<Slot>,
    pub succ: Option<Slot>,
}

/// An ordered container driven by external comparisons.
///
/// `cmp(s)` returns the order of the key being inserted or searched for
/// relative to the key stored in slot `s`. On insertion `Equal` is treated as
/// `Greater`, so equal keys keep insertion order.
pub trait OrderedContainer {
    /// Creates an empty container; `seed` feeds randomized variants.
    fn with_seed(seed: u64) -> Self
    where
        Self: Sized;
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn insert_with<F: FnMut(Slot) -> Ordering>(&mut self, cmp: F) -> Inserted;
    fn remove(&mut self, slot: Slot);
    fn search_with<F: FnMut(Slot) -> Ordering>(&self, cmp: F) -> SearchResult;
    /// Walks from the root, following `f`, until `f` says stop or a leaf is
    /// passed.
    fn descend<F: FnMut(Slot) -> Step>(&self, f: F);
    fn first(&self) -> Option<Slot>;
    fn last(&self) -> Option<Slot>;
    fn next(&self, slot: Slot) -> Option<Slot>;
    fn prev(&self, slot: Slot) -> Option<Slot>;
    fn height(&self) -> usize;
    /// Structural audit; empty when sound.
    fn validate(&self) -> Vec<String>;
    /// Short name for reports.
    fn name() -> &'static str
    where
        Self: Sized;
}

/// In-order slots of a container.
pub fn in_order<C: OrderedContainer>(c: &C) -> Vec<Slot> {
    let mut out = Vec::with_capacity(c.len());
    let mut cur = c.first();
    while let Some(s) = cur {
        out.push(s);
        cur = c.next(s);
    }
    out
}
