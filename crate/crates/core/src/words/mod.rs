//! Alphabets, finite words, infinite-word generators and factor statistics.
//!
//! Letters are indices into an [`Alphabet`]; symbol names only matter at the
//! parsing and printing boundary.

mod factors;
mod generator;

pub use factors::{
    factors, factors_of_prefix, uniform_recurrence_report, Balance, FactorSet, Imbalance,
    RecurrenceEntry,
    Side,
};
pub use generator::{Coding, WordGenerator, DEFAULT_PREFIX_MULTIPLIER};

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a letter in its alphabet.
pub type Letter = u8;

/// Maximum alphabet size supported (letter sets are stored as bitmasks).
pub const MAX_ALPHABET: usize = 16;

/// An ordered list of distinct symbol names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must be non-empty".into()));
        }
        if symbols.len() > MAX_ALPHABET {
            return Err(Error::InvalidAlphabet(format!(
                "{} symbols given, at most {MAX_ALPHABET} supported",
                symbols.len()
            )));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::InvalidAlphabet(format!("bad symbol name {s:?}")));
            }
            if symbols[..i].contains(s) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {s:?}")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// The alphabet `{"0", "1", ..., "m-1"}`.
    pub fn numeric(m: usize) -> Self {
        Alphabet::new((0..m).map(|i| i.to_string())).expect("numeric alphabet")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter as usize]
    }

    pub fn index_of(&self, symbol: &str) -> Option<Letter> {
        self.symbols.iter().position(|s| s == symbol).map(|i| i as Letter)
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a word. Whitespace-separated input is read token by token;
    /// otherwise symbols are matched greedily, longest name first.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let bad = |reason: String| Error::InvalidWord { word: text.to_string(), reason };
        if text.contains(char::is_whitespace) {
            return text
                .split_whitespace()
                .map(|tok| self.index_of(tok).ok_or_else(|| bad(format!("unknown symbol {tok:?}"))))
                .collect::<Result<Vec<_>>>()
                .map(Word);
        }
        let mut letters = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let best = self
                .symbols
                .iter()
                .enumerate()
                .filter(|(_, s)| rest.starts_with(s.as_str()))
                .max_by_key(|(_, s)| s.len());
            match best {
                Some((i, s)) => {
                    letters.push(i as Letter);
                    rest = &rest[s.len()..];
                }
                None => return Err(bad(format!("no symbol matches at {rest:?}"))),
            }
        }
        Ok(Word(letters))
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        let parts = word.iter().map(|&l| self.symbol(l));
        if self.single_char() {
            parts.collect()
        } else {
            parts.collect::<Vec<_>>().join(" ")
        }
    }

    /// Renders a letter set as `{x,y}`.
    pub fn format_set(&self, set: LetterSet) -> String {
        let names: Vec<&str> = set.iter().map(|l| self.symbol(l)).collect();
        format!("{{{}}}", names.join(","))
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        Alphabet::new(v)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(a: Alphabet) -> Self {
        a.symbols
    }
}

/// A finite word over letter indices. The empty word stands for the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Number of occurrences of `letter`.
    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    /// `true` iff `other` occurs as a contiguous factor of `self`.
    pub fn contains_factor(&self, other: &[Letter]) -> bool {
        contains_factor(&self.0, other)
    }
}

pub(crate) fn contains_factor(hay: &[Letter], needle: &[Letter]) -> bool {
    needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Display for Word {
    /// Digits for small alphabets; this is what tests and debugging output use
    /// when no alphabet is at hand.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            if l < 10 {
                write!(f, "{l}")?;
            } else {
                write!(f, "<{l}>")?;
            }
        }
        Ok(())
    }
}

/// A subset of the alphabet, stored as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LetterSet(pub u16);

impl LetterSet {
    pub fn singleton(l: Letter) -> Self {
        LetterSet(1 << l)
    }

    pub fn full(m: usize) -> Self {
        LetterSet(((1u32 << m) - 1) as u16)
    }

    pub fn contains(self, l: Letter) -> bool {
        self.0 & (1 << l) != 0
    }

    pub fn insert(self, l: Letter) -> Self {
        LetterSet(self.0 | (1 << l))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: LetterSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Letter> {
        (0..16u8).filter(move |&l| self.contains(l))
    }

    /// All non-empty subsets of an `m`-letter alphabet, in increasing mask order.
    pub fn all_nonempty(m: usize) -> impl Iterator<Item = LetterSet> {
        (1..(1u32 << m)).map(|mask| LetterSet(mask as u16))
    }
}
