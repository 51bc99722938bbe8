//! Symbols, sequences and tokenization.
//!
//! Every algorithm in the crate is generic over a slice of comparable
//! symbols, so plain `&[char]` or `&[u8]` work directly. [`Sequence`] is the
//! owned form produced by [`tokenize`], where a symbol is either a single
//! Unicode scalar value or a whole token.

use std::borrow::Cow;
use std::fmt;
use std::ops::Deref;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// One atomic unit of comparison.
///
/// Symbols compare by variant and content: `Char('a')` and `Token("a")` are
/// different symbols. A single call to [`tokenize`] never mixes the two.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Symbol {
    Char(char),
    Token(Box<str>),
}

impl Symbol {
    /// The textual content of the symbol.
    pub fn text(&self) -> Cow<'_, str> {
        match self {
            Symbol::Char(c) => Cow::Owned(c.to_string()),
            Symbol::Token(t) => Cow::Borrowed(t),
        }
    }

    /// Number of chars the symbol occupies when rendered.
    pub fn width(&self) -> usize {
        match self {
            Symbol::Char(_) => 1,
            Symbol::Token(t) => t.chars().count(),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Char(c) => fmt::Display::fmt(c, f),
            Symbol::Token(t) => f.pad(t),
        }
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.text())
    }
}

impl From<char> for Symbol {
    fn from(c: char) -> Self {
        Symbol::Char(c)
    }
}

impl From<&str> for Symbol {
    fn from(t: &str) -> Self {
        Symbol::Token(t.into())
    }
}

/// A stable 64-bit fingerprint of a symbol, used by rolling hashes.
///
/// Characters map to their code point and bytes to their value. Strings use
/// 64-bit FNV-1a over their UTF-8 bytes, so fingerprints are identical across
/// platforms and runs.
pub trait Fingerprint {
    fn fingerprint(&self) -> u64;
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// 64-bit FNV-1a.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(FNV_OFFSET, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(FNV_PRIME)
    })
}

impl Fingerprint for char {
    fn fingerprint(&self) -> u64 {
        u64::from(*self)
    }
}

impl Fingerprint for u8 {
    fn fingerprint(&self) -> u64 {
        u64::from(*self)
    }
}

impl Fingerprint for u32 {
    fn fingerprint(&self) -> u64 {
        u64::from(*self)
    }
}

impl Fingerprint for str {
    fn fingerprint(&self) -> u64 {
        fnv1a(self.as_bytes())
    }
}

impl Fingerprint for String {
    fn fingerprint(&self) -> u64 {
        fnv1a(self.as_bytes())
    }
}

impl Fingerprint for &str {
    fn fingerprint(&self) -> u64 {
        fnv1a(self.as_bytes())
    }
}

impl Fingerprint for Symbol {
    fn fingerprint(&self) -> u64 {
        match self {
            Symbol::Char(c) => c.fingerprint(),
            Symbol::Token(t) => fnv1a(t.as_bytes()),
        }
    }
}

/// How [`tokenize`] splits text into symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenizeMode {
    /// One symbol per Unicode scalar value.
    Char,
    /// Maximal runs of non-whitespace.
    Whitespace,
    /// Maximal nonempty runs between occurrences of the delimiter.
    Delimiter(String),
}

/// An owned, ordered list of symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Sequence {
    symbols: Vec<Symbol>,
}

impl Sequence {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Sequence { symbols }
    }

    pub fn from_chars(text: &str) -> Self {
        text.chars().map(Symbol::Char).collect()
    }

    pub fn from_tokens<I, S>(tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        tokens
            .into_iter()
            .map(|t| Symbol::Token(t.as_ref().into()))
            .collect()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    /// Concatenates the symbols' text with `sep` between them.
    pub fn join(&self, sep: &str) -> String {
        let mut out = String::new();
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                out.push_str(sep);
            }
            out.push_str(&s.text());
        }
        out
    }
}

impl Deref for Sequence {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.symbols
    }
}

impl FromIterator<Symbol> for Sequence {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Sequence {
            symbols: iter.into_iter().collect(),
        }
    }
}

impl From<Vec<Symbol>> for Sequence {
    fn from(symbols: Vec<Symbol>) -> Self {
        Sequence { symbols }
    }
}

/// Splits `text` into a [`Sequence`] according to `mode`.
pub fn tokenize(text: &str, mode: &TokenizeMode) -> Result<Sequence> {
    match mode {
        TokenizeMode::Char => Ok(Sequence::from_chars(text)),
        TokenizeMode::Whitespace => Ok(Sequence::from_tokens(text.split_whitespace())),
        TokenizeMode::Delimiter(d) if d.is_empty() => {
            Err(Error::invalid("delimiter must be nonempty"))
        }
        TokenizeMode::Delimiter(d) => Ok(Sequence::from_tokens(
            text.split(d.as_str()).filter(|t| !t.is_empty()),
        )),
    }
}
