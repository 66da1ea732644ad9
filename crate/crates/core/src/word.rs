//! Words over small alphabets and the periodicity toolkit built on them.
//!
//! Symbols are stored as integers `0..sigma`; at the text boundary they are
//! the letters `'a'..'z'`. All positions are 0-based.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported alphabet.
pub const MAX_SIGMA: usize = 26;

/// A finite word over an alphabet of at most 26 symbols.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    symbols: Vec<u8>,
}

impl Word {
    /// Builds a word from raw symbol indices, checking each against `sigma`.
    pub fn from_symbols(symbols: Vec<u8>, sigma: usize) -> Result<Self> {
        check_sigma(sigma)?;
        if let Some((position, &s)) = symbols
            .iter()
            .enumerate()
            .find(|(_, &s)| usize::from(s) >= sigma)
        {
            return Err(Error::SymbolOutOfAlphabet {
                symbol: symbol_char(s),
                position,
                sigma,
            });
        }
        Ok(Self { symbols })
    }

    /// Parses lowercase letters. With `sigma = None` the alphabet is taken to
    /// be `'a'..=max letter`, so any lowercase string is accepted.
    pub fn parse(text: &str, sigma: Option<usize>) -> Result<Self> {
        let limit = sigma.unwrap_or(MAX_SIGMA);
        check_sigma(limit)?;
        let mut symbols = Vec::with_capacity(text.len());
        for (position, c) in text.chars().enumerate() {
            let idx = match c {
                'a'..='z' => c as usize - 'a' as usize,
                _ => usize::MAX,
            };
            if idx >= limit {
                return Err(Error::SymbolOutOfAlphabet {
                    symbol: c,
                    position,
                    sigma: limit,
                });
            }
            symbols.push(idx as u8);
        }
        Ok(Self { symbols })
    }

    pub(crate) fn from_raw(symbols: Vec<u8>) -> Self {
        debug_assert!(symbols.iter().all(|&s| usize::from(s) < MAX_SIGMA));
        Self { symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }

    /// Smallest alphabet that contains every symbol of the word.
    pub fn alphabet_size(&self) -> usize {
        self.symbols
            .iter()
            .map(|&s| usize::from(s) + 1)
            .max()
            .unwrap_or(0)
    }

    /// Number of distinct symbols that occur.
    pub fn distinct_symbols(&self) -> usize {
        let mut seen = [false; MAX_SIGMA];
        self.symbols
            .iter()
            .for_each(|&s| seen[usize::from(s)] = true);
        seen.iter().filter(|&&b| b).count()
    }

    /// `w^(i)`: the word shifted left by `i` positions.
    pub fn rotate(&self, i: usize) -> Result<Self> {
        if i >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        let mut symbols = Vec::with_capacity(self.len());
        symbols.extend_from_slice(&self.symbols[i..]);
        symbols.extend_from_slice(&self.symbols[..i]);
        Ok(Self { symbols })
    }

    /// Least `p >= 1` such that `w[i] == w[i + p]` wherever both exist.
    pub fn period(&self) -> Result<usize> {
        self.require_nonempty()?;
        Ok(period_of(&self.symbols))
    }

    /// Whether `p` is a period (any `p >= |w|` is, vacuously).
    pub fn has_period(&self, p: usize) -> bool {
        p >= 1 && has_period(&self.symbols, p)
    }

    /// True iff the period exceeds half the length.
    pub fn is_aperiodic(&self) -> Result<bool> {
        Ok(2 * self.period()? > self.len())
    }

    /// True iff the word is not a power `y^p` with `p >= 2`.
    pub fn is_primitive(&self) -> Result<bool> {
        let p = self.period()?;
        Ok(p == self.len() || self.len() % p != 0)
    }

    /// Lexicographically least rotation.
    pub fn canonical_rotation(&self) -> Result<Self> {
        self.require_nonempty()?;
        let shift = least_rotation(&self.symbols);
        self.rotate(shift)
    }

    /// Checks the periodicity lemma for two verified periods `p`, `q`:
    /// returns whether `gcd(p, q)` is a period as well.
    pub fn fine_wilf_holds(&self, p: usize, q: usize) -> Result<bool> {
        self.require_nonempty()?;
        for x in [p, q] {
            if !self.has_period(x) {
                return Err(Error::NotAPeriod { p: x });
            }
        }
        Ok(self.has_period(p.gcd(&q)))
    }

    pub fn reversed(&self) -> Self {
        Self {
            symbols: self.symbols.iter().rev().copied().collect(),
        }
    }

    /// Applies the alphabet map `symbol -> perm[symbol]`.
    pub fn relabeled(&self, perm: &[u8]) -> Result<Self> {
        let symbols = self
            .symbols
            .iter()
            .map(|&s| perm.get(usize::from(s)).copied())
            .collect::<Option<Vec<u8>>>()
            .ok_or_else(|| Error::InvalidParameter("relabeling does not cover alphabet".into()))?;
        Self::from_symbols(symbols, MAX_SIGMA)
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Word) -> Self {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Self { symbols }
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Self {
        Self {
            symbols: self.symbols[range].to_vec(),
        }
    }

    fn require_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptyWord)
        } else {
            Ok(())
        }
    }
}

/// Convenience constructor over the full lowercase alphabet.
pub fn make_word(text: &str, sigma: usize) -> Result<Word> {
    Word::parse(text, Some(sigma))
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s, None)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.symbols
            .iter()
            .try_for_each(|&s| write!(f, "{}", symbol_char(s)))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A necklace, stored as its lexicographically least rotation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct CircularWord {
    representative: Word,
}

impl CircularWord {
    pub fn new(word: &Word) -> Result<Self> {
        Ok(Self {
            representative: word.canonical_rotation()?,
        })
    }

    pub fn representative(&self) -> &Word {
        &self.representative
    }

    pub fn n(&self) -> usize {
        self.representative.len()
    }
}

impl fmt::Display for CircularWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.representative)
    }
}

pub(crate) fn symbol_char(s: u8) -> char {
    if usize::from(s) < MAX_SIGMA {
        (b'a' + s) as char
    } else {
        '?'
    }
}

fn check_sigma(sigma: usize) -> Result<()> {
    if (1..=MAX_SIGMA).contains(&sigma) {
        Ok(())
    } else {
        Err(Error::AlphabetSize(sigma))
    }
}

/// Failure function: `border[i]` is the length of the longest proper border
/// of `s[..=i]`.
pub fn border_array(s: &[u8]) -> Vec<usize> {
    let mut border = vec![0; s.len()];
    for i in 1..s.len() {
        let mut b = border[i - 1];
        while b > 0 && s[i] != s[b] {
            b = border[b - 1];
        }
        if s[i] == s[b] {
            b += 1;
        }
        border[i] = b;
    }
    border
}

/// Period of a non-empty slice, via its longest border.
pub fn period_of(s: &[u8]) -> usize {
    debug_assert!(!s.is_empty());
    s.len() - border_array(s).last().copied().unwrap_or(0)
}

pub(crate) fn has_period(s: &[u8], p: usize) -> bool {
    p >= s.len() || s[p..].iter().zip(s).all(|(a, b)| a == b)
}

/// Start index of the least rotation, linear time (two-candidate scan over
/// the doubled word). Ties resolve to the smallest index.
pub fn least_rotation(s: &[u8]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = s[(i + k) % n];
        let b = s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j).min(n.saturating_sub(1))
}
