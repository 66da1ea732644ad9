//! Distinct squares in linear and circular words.
//!
//! The counting engine scans longest common extensions between every pair of
//! positions, one row at a time from the right. Row `i` gives, for each
//! `j > i`, the length of the longest common prefix of the suffixes at `i`
//! and `j`. From it we read off both the squares starting at `i` (`lce(i, i +
//! L) >= L`) and whether a square occurrence at `i` is the rightmost one (no
//! later suffix shares a prefix of length `2L`). Each distinct square has
//! exactly one rightmost occurrence, so counting those counts distinct
//! squares exactly, in `O(m^2)` time and `O(m)` space.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{CircularWord, Word};

/// A square `uu`, identified by its text.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Square {
    text: Word,
}

impl Square {
    pub fn from_root(root: &Word) -> Self {
        Self {
            text: root.concat(root),
        }
    }

    /// Returns `None` unless `text` has the form `uu` with `u` non-empty.
    pub fn from_text(text: Word) -> Option<Self> {
        let half = text.len() / 2;
        let s = text.symbols();
        (half > 0 && s.len() % 2 == 0 && s[..half] == s[half..]).then_some(Self { text })
    }

    pub fn text(&self) -> &Word {
        &self.text
    }

    pub fn root(&self) -> Word {
        self.text.slice(0..self.root_len())
    }

    pub fn root_len(&self) -> usize {
        self.text.len() / 2
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.text.fmt(f)
    }
}

impl fmt::Debug for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Square({})", self.text)
    }
}

/// A distinct square together with the start of its rightmost occurrence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct OccurrenceRecord {
    pub square: Square,
    pub rightmost_start: usize,
}

/// Two rightmost square occurrences `uu`, `UU` sharing a start, `|u| < |U|`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DoubleSquare {
    pub position: usize,
    pub short_root: Word,
    pub long_root: Word,
}

/// Scratch space for repeated scans; reuse one per thread in hot loops.
#[derive(Debug, Default, Clone)]
pub struct SquareScanner {
    row: Vec<u32>,
    doubled: Vec<u8>,
}

impl SquareScanner {
    pub fn new() -> Self {
        Self::default()
    }

    /// Calls `visit(start, root_len)` for the rightmost occurrence of every
    /// distinct square of `s` with length at most `max_len`. Starts are
    /// visited in decreasing order, root lengths increasing within a start.
    pub fn for_each_rightmost(
        &mut self,
        s: &[u8],
        max_len: usize,
        mut visit: impl FnMut(usize, usize),
    ) {
        let m = s.len();
        self.row.clear();
        self.row.resize(m + 1, 0);
        let row = &mut self.row[..];
        let half_cap = max_len / 2;
        for i in (0..m).rev() {
            let c = s[i];
            let mut later_max = 0u32;
            // row[j] still holds lce(i + 1, j) until overwritten; row[j + 1]
            // is read before it is updated.
            for j in i + 1..m {
                let v = if s[j] == c { row[j + 1] + 1 } else { 0 };
                row[j] = v;
                later_max = later_max.max(v);
            }
            let roots = half_cap.min((m - i) / 2);
            for len in 1..=roots {
                if row[i + len] as usize >= len && (later_max as usize) < 2 * len {
                    visit(i, len);
                }
            }
        }
    }

    /// Number of distinct squares of length at most `max_len` in `s`.
    pub fn count(&mut self, s: &[u8], max_len: usize) -> usize {
        let mut total = 0;
        self.for_each_rightmost(s, max_len, |_, _| total += 1);
        total
    }

    /// Number of distinct squares of the circular word whose representative
    /// (any rotation) is `rep`.
    pub fn count_circular(&mut self, rep: &[u8]) -> usize {
        let n = rep.len();
        let mut doubled = std::mem::take(&mut self.doubled);
        doubled.clear();
        doubled.extend_from_slice(rep);
        doubled.extend_from_slice(rep);
        let total = self.count(&doubled, n);
        self.doubled = doubled;
        total
    }
}

fn require_nonempty(w: &Word) -> Result<()> {
    if w.is_empty() {
        Err(Error::EmptyWord)
    } else {
        Ok(())
    }
}

/// Brute-force reference: compares both halves of every even-length
/// substring directly.
pub fn distinct_squares_oracle(w: &Word) -> Result<BTreeSet<Square>> {
    require_nonempty(w)?;
    Ok(oracle_squares(w.symbols(), w.len()))
}

pub(crate) fn oracle_squares(s: &[u8], max_len: usize) -> BTreeSet<Square> {
    let mut out = BTreeSet::new();
    for i in 0..s.len() {
        for half in 1..=((s.len() - i) / 2).min(max_len / 2) {
            if s[i..i + half] == s[i + half..i + 2 * half] {
                out.insert(Square {
                    text: Word::from_raw(s[i..i + 2 * half].to_vec()),
                });
            }
        }
    }
    out
}

pub fn count_distinct_squares(w: &Word) -> Result<usize> {
    require_nonempty(w)?;
    Ok(SquareScanner::new().count(w.symbols(), w.len()))
}

/// Squares `uu` with `|uu| <= n` occurring in `rep·rep`.
pub fn distinct_circular_squares(cw: &CircularWord) -> Result<BTreeSet<Square>> {
    let rep = cw.representative();
    require_nonempty(rep)?;
    let doubled = rep.concat(rep);
    Ok(rightmost_occurrences_capped(&doubled, rep.len())
        .into_iter()
        .map(|r| r.square)
        .collect())
}

pub fn count_distinct_circular_squares(cw: &CircularWord) -> Result<usize> {
    require_nonempty(cw.representative())?;
    Ok(SquareScanner::new().count_circular(cw.representative().symbols()))
}

/// One record per distinct square, ordered by start then length.
pub fn rightmost_occurrences(w: &Word) -> Result<Vec<OccurrenceRecord>> {
    require_nonempty(w)?;
    Ok(rightmost_occurrences_capped(w, w.len()))
}

/// Rightmost occurrences restricted to squares of length at most `max_len`.
pub fn rightmost_occurrences_capped(w: &Word, max_len: usize) -> Vec<OccurrenceRecord> {
    let s = w.symbols();
    let mut out = Vec::new();
    SquareScanner::new().for_each_rightmost(s, max_len, |start, half| {
        out.push(OccurrenceRecord {
            square: Square {
                text: Word::from_raw(s[start..start + 2 * half].to_vec()),
            },
            rightmost_start: start,
        })
    });
    out.sort_by_key(|r| (r.rightmost_start, r.square.len()));
    out
}

pub fn rightmost_start_multiplicities(w: &Word) -> Result<BTreeMap<usize, usize>> {
    require_nonempty(w)?;
    let mut counts = BTreeMap::new();
    SquareScanner::new().for_each_rightmost(w.symbols(), w.len(), |start, _| {
        *counts.entry(start).or_insert(0) += 1;
    });
    Ok(counts)
}

/// Every position carrying exactly two rightmost occurrences, ascending.
pub fn fs_double_squares(w: &Word) -> Result<Vec<DoubleSquare>> {
    require_nonempty(w)?;
    let mut by_start: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    SquareScanner::new().for_each_rightmost(w.symbols(), w.len(), |start, half| {
        by_start.entry(start).or_default().push(half);
    });
    Ok(by_start
        .into_iter()
        .filter_map(|(position, mut halves)| {
            if halves.len() != 2 {
                return None;
            }
            halves.sort_unstable();
            Some(DoubleSquare {
                position,
                short_root: w.slice(position..position + halves[0]),
                long_root: w.slice(position..position + halves[1]),
            })
        })
        .collect())
}

pub fn leftmost_fs_double_square(w: &Word) -> Result<Option<DoubleSquare>> {
    Ok(fs_double_squares(w)?.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::family_word;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn texts(set: &BTreeSet<Square>) -> Vec<String> {
        set.iter().map(|s| s.to_string()).collect()
    }

    fn cw(s: &str) -> CircularWord {
        CircularWord::new(&w(s)).unwrap()
    }

    fn rightmost(s: &str) -> Vec<(String, usize)> {
        rightmost_occurrences(&w(s))
            .unwrap()
            .into_iter()
            .map(|r| (r.square.to_string(), r.rightmost_start))
            .collect()
    }

    fn all_words(n: usize, sigma: u8) -> Vec<Word> {
        let total = (sigma as usize).pow(n as u32);
        (0..total)
            .map(|mut code| {
                let mut v = vec![0u8; n];
                for slot in v.iter_mut().rev() {
                    *slot = (code % sigma as usize) as u8;
                    code /= sigma as usize;
                }
                Word::from_raw(v)
            })
            .collect()
    }

    #[test]
    fn square_type_invariants() {
        let sq = Square::from_root(&w("ab"));
        assert_eq!(sq.text(), &w("abab"));
        assert_eq!(sq.root(), w("ab"));
        assert_eq!(sq.len(), 2 * sq.root_len());
        assert!(Square::from_text(w("abab")).is_some());
        assert!(Square::from_text(w("abba")).is_none());
        assert!(Square::from_text(w("aba")).is_none());
        assert!(Square::from_text(Word::default()).is_none());
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(
            texts(&distinct_squares_oracle(&w("aaaa")).unwrap()),
            ["aa", "aaaa"]
        );
        assert!(distinct_squares_oracle(&w("abc")).unwrap().is_empty());
        assert_eq!(
            texts(&distinct_squares_oracle(&w("abaabaa")).unwrap()),
            ["aa", "abaaba", "baabaa"]
        );
        assert_eq!(
            distinct_squares_oracle(&Word::default()),
            Err(Error::EmptyWord)
        );
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_distinct_squares(&w("aaaa")).unwrap(), 2);
        assert_eq!(count_distinct_squares(&w("abcacb")).unwrap(), 0);
        assert_eq!(
            count_distinct_squares(&Word::default()),
            Err(Error::EmptyWord)
        );
        // squares of length <= 24 in f_1 f_1
        let f1 = family_word(1);
        let doubled = f1.concat(&f1);
        assert_eq!(SquareScanner::new().count(doubled.symbols(), 24), 25);
    }

    #[test]
    fn circular_examples() {
        assert!(distinct_circular_squares(&cw("ab")).unwrap().is_empty());
        assert_eq!(
            texts(&distinct_circular_squares(&cw("aa")).unwrap()),
            ["aa"]
        );
        assert_eq!(
            texts(&distinct_circular_squares(&cw("aba")).unwrap()),
            ["aa"]
        );
        assert_eq!(count_distinct_circular_squares(&cw("a")).unwrap(), 0);
        assert_eq!(count_distinct_circular_squares(&cw("aaaa")).unwrap(), 2);
        let f1 = CircularWord::new(&family_word(1)).unwrap();
        assert_eq!(count_distinct_circular_squares(&f1).unwrap(), 25);
        let f5 = CircularWord::new(&family_word(5)).unwrap();
        assert_eq!(count_distinct_circular_squares(&f5).unwrap(), 65);
    }

    #[test]
    fn rightmost_examples() {
        assert_eq!(rightmost("aaaa"), [("aaaa".into(), 0), ("aa".into(), 2)]);
        assert_eq!(rightmost("abab"), [("abab".into(), 0)]);
        assert_eq!(
            rightmost("abaabaa"),
            [("abaaba".into(), 0), ("baabaa".into(), 1), ("aa".into(), 5)]
        );
    }

    #[test]
    fn multiplicity_examples() {
        let m = rightmost_start_multiplicities(&w("aaaa")).unwrap();
        assert_eq!(m, BTreeMap::from([(0, 1), (2, 1)]));
        assert!(rightmost_start_multiplicities(&w("abcab"))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn fs_double_square_examples() {
        assert!(fs_double_squares(&w("abaabaa")).unwrap().is_empty());
        assert!(fs_double_squares(&w("abcbac")).unwrap().is_empty());
        assert!(leftmost_fs_double_square(&w("abaabaa")).unwrap().is_none());
        assert!(leftmost_fs_double_square(&w("abc")).unwrap().is_none());
    }

    /// Lexicographically least binary word (shortest first) with an
    /// FS-double square, found by scanning every binary word of length
    /// <= 12 with the brute-force oracle and a naive rightmost search.
    #[test]
    fn golden_fs_double_square_word() {
        let naive_fs_starts = |word: &Word| -> Vec<(usize, Vec<usize>)> {
            let s = word.symbols();
            let mut by_start: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for sq in oracle_squares(s, s.len()) {
                let t = sq.text().symbols();
                let start = (0..=s.len() - t.len())
                    .rev()
                    .find(|&i| &s[i..i + t.len()] == t)
                    .unwrap();
                by_start.entry(start).or_default().push(sq.root_len());
            }
            by_start
                .into_iter()
                .filter(|(_, v)| v.len() == 2)
                .map(|(p, mut v)| {
                    v.sort();
                    (p, v)
                })
                .collect()
        };
        let found = (1..=12)
            .flat_map(|n| all_words(n, 2))
            .find(|word| !naive_fs_starts(word).is_empty())
            .unwrap();
        assert_eq!(found, w("abaababaab"));
        assert_eq!(naive_fs_starts(&found), [(0, vec![3, 5])]);

        let got = fs_double_squares(&found).unwrap();
        assert_eq!(
            got,
            [DoubleSquare {
                position: 0,
                short_root: w("aba"),
                long_root: w("abaab"),
            }]
        );
        assert_eq!(
            leftmost_fs_double_square(&found).unwrap(),
            got.first().cloned()
        );
    }

    #[test]
    fn counter_matches_oracle_small_exhaustive() {
        let mut scanner = SquareScanner::new();
        for n in 1..=10 {
            for word in all_words(n, 2) {
                let expect = oracle_squares(word.symbols(), n).len();
                assert_eq!(scanner.count(word.symbols(), n), expect, "{word}");
            }
        }
    }

    #[test]
    fn circular_matches_union_over_rotations() {
        for n in 1..=9 {
            for word in all_words(n, 2) {
                let union: BTreeSet<Square> = (0..n)
                    .flat_map(|i| oracle_squares(word.rotate(i).unwrap().symbols(), n))
                    .collect();
                let got = distinct_circular_squares(&CircularWord::new(&word).unwrap()).unwrap();
                assert_eq!(got, union, "{word}");
            }
        }
    }

    fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
        (2u8..=4).prop_flat_map(move |sigma| {
            prop::collection::vec(0..sigma, 1..=max_len).prop_map(Word::from_raw)
        })
    }

    proptest! {
        #[test]
        fn counter_agrees_with_oracle(word in arb_word(60)) {
            prop_assert_eq!(
                count_distinct_squares(&word).unwrap(),
                distinct_squares_oracle(&word).unwrap().len()
            );
        }

        #[test]
        fn circular_count_is_rotation_invariant(word in arb_word(40), shift in 0usize..40) {
            let mut scanner = SquareScanner::new();
            let base = scanner.count_circular(word.symbols());
            let rotated = word.rotate(shift % word.len()).unwrap();
            prop_assert_eq!(scanner.count_circular(rotated.symbols()), base);
        }

        #[test]
        fn circular_count_is_reversal_invariant(word in arb_word(40)) {
            let mut scanner = SquareScanner::new();
            prop_assert_eq!(
                scanner.count_circular(word.reversed().symbols()),
                scanner.count_circular(word.symbols())
            );
        }

        #[test]
        fn counts_are_relabeling_invariant(
            word in arb_word(40),
            perm in Just(vec![0u8, 1, 2, 3]).prop_shuffle(),
        ) {
            let relabeled = word.relabeled(&perm).unwrap();
            let mut scanner = SquareScanner::new();
            prop_assert_eq!(
                scanner.count_circular(relabeled.symbols()),
                scanner.count_circular(word.symbols())
            );
            prop_assert_eq!(
                count_distinct_squares(&relabeled).unwrap(),
                count_distinct_squares(&word).unwrap()
            );
        }

        #[test]
        fn rightmost_records_are_rightmost(word in arb_word(50)) {
            let s = word.symbols();
            for r in rightmost_occurrences(&word).unwrap() {
                let t = r.square.text().symbols();
                prop_assert_eq!(&s[r.rightmost_start..r.rightmost_start + t.len()], t);
                for later in r.rightmost_start + 1..=s.len() - t.len() {
                    prop_assert_ne!(&s[later..later + t.len()], t);
                }
            }
        }

        #[test]
        fn ceilings_hold(word in arb_word(80)) {
            let n = word.len();
            let linear = count_distinct_squares(&word).unwrap();
            prop_assert!(linear <= 2 * n);
            let circular = SquareScanner::new().count_circular(word.symbols());
            prop_assert!(circular * 100 <= 314 * n);
        }
    }
}
