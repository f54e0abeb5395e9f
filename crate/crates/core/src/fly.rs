//! On-the-fly comparison of an external string against stored strings.
//!
//! A [`FlySession`] remembers the stored string that shares the longest
//! prefix with `y` seen so far (`bestfriend`, `bestlcp`). For a new stored
//! string `x`, `lcp(bestfriend, x)` from the list bounds `lcp(y, x)`: when it
//! is below `bestlcp` it *is* the answer, `y` falls on the same side of `x`
//! as the best friend, and no characters are read; otherwise characters are scanned from `bestlcp` on, and every scanned
//! match advances `bestlcp` for good. Over `g` comparisons the character
//! work is at most `g + |y|`.

use std::cmp::Ordering;

use crate::dslcp::{DsLcpList, ListHandle};
use crate::error::Result;
use crate::symbol::{StringView, Symbol};

/// How an exhausted `y` compares with a stored string it is a prefix of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Termination {
    /// `y` is a pattern: a proper prefix sorts before every extension,
    /// including the stored string equal to it.
    #[default]
    Prefix,
    /// `y` carries a virtual endmarker; equal to a stored string with the
    /// same user symbols.
    Exact,
}

/// State of one comparison session for the external string `y`.
#[derive(Clone, Debug)]
pub struct FlySession<'y, Y: StringView + ?Sized> {
    y: &'y Y,
    mode: Termination,
    bestfriend: Option<ListHandle>,
    bestlcp: usize,
    char_cmps: u64,
    calls: u64,
    last_less: Option<(ListHandle, usize)>,
    last_greater: Option<(ListHandle, usize)>,
}

impl<'y, Y: StringView + ?Sized> FlySession<'y, Y> {
    pub fn start(y: &'y Y) -> Self {
        Self::with_mode(y, Termination::Prefix)
    }

    pub fn with_mode(y: &'y Y, mode: Termination) -> Self {
        FlySession {
            y,
            mode,
            bestfriend: None,
            bestlcp: 0,
            char_cmps: 0,
            calls: 0,
            last_less: None,
            last_greater: None,
        }
    }

    pub fn bestfriend(&self) -> Option<ListHandle> {
        self.bestfriend
    }

    pub fn bestlcp(&self) -> usize {
        self.bestlcp
    }

    /// Character comparisons performed so far.
    pub fn char_cmps(&self) -> u64 {
        self.char_cmps
    }

    pub fn calls(&self) -> u64 {
        self.calls
    }

    /// Most recent stored string found greater than `y`, with its lcp.
    pub fn last_less(&self) -> Option<(ListHandle, usize)> {
        self.last_less
    }

    /// Most recent stored string found smaller than `y`, with its lcp.
    pub fn last_greater(&self) -> Option<(ListHandle, usize)> {
        self.last_greater
    }

    /// Compares `y` with the stored string `x` whose symbols are `text_of_x`.
    /// Returns the order of `y` relative to `x` and `lcp(y, x)` over user
    /// symbols.
    pub fn compare<W, X>(
        &mut self,
        list: &DsLcpList<W>,
        x: ListHandle,
        text_of_x: &X,
    ) -> Result<(Ordering, usize)>
    where
        W: Copy + Default,
        X: StringView + ?Sized,
    {
        self.calls += 1;
        let mut m = match self.bestfriend {
            Some(bf) => list.lcp(bf, x)?,
            None => {
                list.strlen(x)?;
                0
            }
        };
        let y = self.y;
        let ylen = y.user_len();
        let ord;
        if m >= self.bestlcp {
            m = self.bestlcp;
            loop {
                if m == ylen {
                    ord = self.exhausted(text_of_x, m);
                    break;
                }
                self.char_cmps += 1;
                let (a, b) = (y.user_symbol(m + 1), text_of_x.symbol_at(m + 1));
                if a != b {
                    ord = a.cmp(&b);
                    break;
                }
                m += 1;
            }
            self.bestfriend = Some(x);
            self.bestlcp = m;
        } else {
            // `y` agrees with the best friend beyond `m`, so it sits on the
            // same side of `x`.
            ord = list.order(self.bestfriend.expect("m < bestlcp"), x)?;
        }
        match ord {
            Ordering::Less => self.last_less = Some((x, m)),
            Ordering::Greater => self.last_greater = Some((x, m)),
            Ordering::Equal => {}
        }
        Ok((ord, m))
    }

    fn exhausted<X: StringView + ?Sized>(&mut self, x: &X, m: usize) -> Ordering {
        match self.mode {
            Termination::Prefix => Ordering::Less,
            Termination::Exact => {
                self.char_cmps += 1;
                Symbol::SENTINEL.cmp(&x.symbol_at(m + 1))
            }
        }
    }

    /// `lcp(y, x)` by a direct scan bounded by `|y|`, for a neighbour the
    /// session never compared against.
    pub fn scan_lcp<X: StringView + ?Sized>(&mut self, text_of_x: &X) -> usize {
        let y = self.y;
        let mut m = 0;
        while m < y.user_len() {
            self.char_cmps += 1;
            if y.user_symbol(m + 1) != text_of_x.symbol_at(m + 1) {
                break;
            }
            m += 1;
        }
        m
    }

    /// The lcp with `x` if the session has already determined it.
    pub fn known_lcp(&self, x: ListHandle) -> Option<usize> {
        [self.last_less, self.last_greater]
            .into_iter()
            .flatten()
            .find(|&(h, _)| h == x)
            .map(|(_, l)| l)
    }
}
