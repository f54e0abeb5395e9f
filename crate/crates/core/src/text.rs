use crate::error::{Error, Result};
use crate::symbol::{StringView, Symbol};

/// Prepend-only text with LIFO removal.
///
/// Characters are stored back to front so that cell 0 is the sentinel and a
/// prepend is a push. An end-anchored index `i` names the character `i`
/// positions from the end (the sentinel is 1); such indices never move when
/// the text grows at the front.
#[derive(Clone, Debug)]
pub struct TextBuffer {
    cells: Vec<Symbol>,
}

impl Default for TextBuffer {
    fn default() -> Self {
        Self::new()
    }
}

impl TextBuffer {
    pub fn new() -> Self {
        TextBuffer {
            cells: vec![Symbol::SENTINEL],
        }
    }

    pub fn from_symbols(text: &[Symbol]) -> Result<Self> {
        let mut buf = TextBuffer::new();
        for &s in text.iter().rev() {
            buf.prepend(s)?;
        }
        Ok(buf)
    }

    pub fn prepend(&mut self, s: Symbol) -> Result<()> {
        if s.is_sentinel() {
            return Err(Error::ReservedSymbol);
        }
        self.cells.push(s);
        Ok(())
    }

    pub fn pop_front(&mut self) -> Result<Symbol> {
        if self.cells.len() == 1 {
            return Err(Error::Underflow);
        }
        Ok(self.cells.pop().expect("non-empty"))
    }

    /// Total length including the sentinel.
    #[inline]
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.cells.len() == 1
    }

    #[inline]
    pub fn user_len(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn char_at(&self, i: usize) -> Result<Symbol> {
        if i == 0 || i > self.cells.len() {
            return Err(Error::OutOfRange {
                index: i,
                len: self.cells.len(),
            });
        }
        Ok(self.cells[i - 1])
    }

    /// Unchecked variant of [`TextBuffer::char_at`] for hot paths.
    #[inline]
    pub fn at(&self, i: usize) -> Symbol {
        self.cells[i - 1]
    }

    /// First (leftmost) character, `None` when only the sentinel remains.
    pub fn front(&self) -> Option<Symbol> {
        if self.is_empty() {
            None
        } else {
            self.cells.last().copied()
        }
    }

    /// Front-to-back user symbols.
    pub fn to_symbols(&self) -> Vec<Symbol> {
        self.cells[1..].iter().rev().copied().collect()
    }

    /// View of the suffix of length `len` (sentinel included).
    pub fn suffix(&self, len: usize) -> SuffixView<'_> {
        debug_assert!(len >= 1 && len <= self.len());
        SuffixView { text: self, len }
    }
}

/// A suffix of a [`TextBuffer`], addressed through end-anchored indices.
#[derive(Clone, Copy)]
pub struct SuffixView<'a> {
    text: &'a TextBuffer,
    len: usize,
}

impl StringView for SuffixView<'_> {
    #[inline]
    fn user_len(&self) -> usize {
        self.len - 1
    }
    #[inline]
    fn user_symbol(&self, i: usize) -> Symbol {
        self.text.at(self.len + 1 - i)
    }
}
