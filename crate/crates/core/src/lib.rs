//! Sorted string collections with constant-time lcp queries.
//!
//! The core structure is [`DsLcpList`], a doubly linked list of strings in
//! sorted order that answers `lcp(x, y)` and `x < y` for any two members in
//! O(1) and accepts insertions next to a known neighbour. Built on it:
//!
//! - [`FlySession`]: comparison of a fresh string against list members,
//!   reading each symbol of the fresh string about once per search;
//! - [`StringSet`]: a string dictionary over any [`OrderedContainer`]
//!   (AVL tree or treap) that never reads the stored keys directly;
//! - [`SuffixIndex`] / [`SuffixTree`]: all suffixes of a text that grows and
//!   shrinks at the front, with amortized logarithmic update time;
//! - [`DynamicLca`]: lowest common ancestors in a tree with leaf updates.

pub mod batch;
pub mod container;
pub mod dslcp;
pub mod error;
pub mod fly;
pub mod lca;
pub mod metrics;
pub mod oracle;
pub mod string_set;
pub mod suffix_index;
pub mod suffix_tree;
pub mod symbol;
pub mod text;

pub use container::{AvlTree, OrderedContainer, Treap};
pub use dslcp::{DsLcpList, ListHandle, Neighbor, Params, ShapeStats};
pub use error::{Error, Result};
pub use fly::{FlySession, Termination};
pub use lca::{DynamicLca, LcaNode};
pub use metrics::{CounterSnapshot, Counters, OpStats, Summary};
pub use string_set::{Lookup, StringSet};
pub use suffix_index::{Occurrences, PushInfo, SuffixIndex};
pub use suffix_tree::{NodeId, SuffixTree};
pub use symbol::{symbols_from_bytes, StringView, Symbol};
pub use text::TextBuffer;
