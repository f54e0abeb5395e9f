use std::fmt;

/// One text symbol. Code 0 is the sentinel endmarker, smaller than every
/// user symbol.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Symbol(pub u32);

impl Symbol {
    pub const SENTINEL: Symbol = Symbol(0);

    /// Maps byte `b` to code `b + 1`.
    #[inline]
    pub fn from_byte(b: u8) -> Symbol {
        Symbol(b as u32 + 1)
    }

    /// Inverse of [`Symbol::from_byte`]; `None` for the sentinel and for
    /// codes outside the byte range.
    pub fn to_byte(self) -> Option<u8> {
        match self.0 {
            1..=256 => Some((self.0 - 1) as u8),
            _ => None,
        }
    }

    #[inline]
    pub fn is_sentinel(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_byte() {
            None if self.0 == 0 => write!(f, "$"),
            Some(b) if b.is_ascii_graphic() => write!(f, "{}", b as char),
            _ => write!(f, "#{}", self.0),
        }
    }
}

pub fn symbols_from_bytes(bytes: &[u8]) -> Vec<Symbol> {
    bytes.iter().map(|&b| Symbol::from_byte(b)).collect()
}

/// Random-access view of a string whose last position is an endmarker.
///
/// Positions are 1-based. `symbol_at(len())` is always the sentinel, so a
/// view over user symbols `s` has `len() == s.len() + 1`.
pub trait StringView {
    /// Number of user symbols (the endmarker excluded).
    fn user_len(&self) -> usize;

    /// User symbol at 1-based position `i`, `1 <= i <= user_len()`.
    fn user_symbol(&self, i: usize) -> Symbol;

    #[inline]
    fn len(&self) -> usize {
        self.user_len() + 1
    }

    #[inline]
    fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    fn symbol_at(&self, i: usize) -> Symbol {
        if i == self.len() {
            Symbol::SENTINEL
        } else {
            self.user_symbol(i)
        }
    }
}

impl StringView for [Symbol] {
    #[inline]
    fn user_len(&self) -> usize {
        <[Symbol]>::len(self)
    }
    #[inline]
    fn user_symbol(&self, i: usize) -> Symbol {
        self[i - 1]
    }
}

impl StringView for Vec<Symbol> {
    #[inline]
    fn user_len(&self) -> usize {
        <[Symbol]>::len(self)
    }
    #[inline]
    fn user_symbol(&self, i: usize) -> Symbol {
        self[i - 1]
    }
}

impl<T: StringView + ?Sized> StringView for &T {
    #[inline]
    fn user_len(&self) -> usize {
        (**self).user_len()
    }
    #[inline]
    fn user_symbol(&self, i: usize) -> Symbol {
        (**self).user_symbol(i)
    }
}
