//! Executable checks for the statements behind the upper bound: the
//! two-rightmost-occurrences lemma, the quarter lemma, period extension, the
//! FS-double-square count bound and the density ceilings.
//!
//! All comparisons are exact. A `false` / non-holding report is a
//! falsification to surface, not an error.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{serialize_opt_ratio, serialize_ratio};
use crate::squares::{
    fs_double_squares, leftmost_fs_double_square, rightmost_occurrences_capped,
    rightmost_start_multiplicities, SquareScanner,
};
use crate::word::{CircularWord, Word};

/// No position starts three or more rightmost occurrences.
pub fn check_two_rightmost(w: &Word) -> Result<bool> {
    Ok(rightmost_start_multiplicities(w)?.values().all(|&c| c <= 2))
}

/// Outcome of the quarter-lemma check on one word `w` of length `n`.
///
/// Rounding: `s = w[ceil(n/4) - 1 ..= ceil(n/2) - 1]` and the first quarter
/// is the start range `0 ..= ceil(n/4) - 1` (0-based, inclusive). Squares are
/// those of length at most `n` in `ww`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuarterReport {
    pub host: Word,
    pub s: Word,
    pub s_start: usize,
    pub s_end: usize,
    pub quarter_end: usize,
    pub s_aperiodic: bool,
    /// Lengths `|uu|` of rightmost occurrences in `ww` starting in the first quarter.
    pub first_quarter_lengths: BTreeSet<usize>,
    pub uniform: bool,
}

impl QuarterReport {
    /// `s` aperiodic implies a single length.
    pub fn holds(&self) -> bool {
        !self.s_aperiodic || self.uniform
    }
}

pub const QUARTER_MIN_LEN: usize = 8;

pub fn check_quarter_lemma(w: &Word) -> Result<QuarterReport> {
    let n = w.len();
    if n < QUARTER_MIN_LEN {
        return Err(Error::TooShort {
            len: n,
            min: QUARTER_MIN_LEN,
        });
    }
    let s_start = n.div_ceil(4) - 1;
    let s_end = n.div_ceil(2) - 1;
    let s = w.slice(s_start..s_end + 1);
    let s_aperiodic = s.is_aperiodic()?;
    let doubled = w.concat(w);
    let first_quarter_lengths: BTreeSet<usize> = rightmost_occurrences_capped(&doubled, n)
        .into_iter()
        .filter(|r| r.rightmost_start <= s_start)
        .map(|r| r.square.len())
        .collect();
    Ok(QuarterReport {
        host: w.clone(),
        s,
        s_start,
        s_end,
        quarter_end: s_start,
        s_aperiodic,
        uniform: first_quarter_lengths.len() <= 1,
        first_quarter_lengths,
    })
}

/// If `aw` and `wb` are both periodic their periods coincide; vacuously true
/// otherwise.
pub fn check_extend_period(w: &Word, a: u8, b: u8) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let sigma = w.alphabet_size().max(usize::from(a.max(b)) + 1);
    let left = Word::from_symbols(vec![a], sigma)?.concat(w);
    let right = w.concat(&Word::from_symbols(vec![b], sigma)?);
    if left.is_aperiodic()? || right.is_aperiodic()? {
        return Ok(true);
    }
    Ok(left.period()? == right.period()?)
}

pub const FS_BOUND_MIN_LEN: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FsBoundReport {
    pub host: Word,
    pub fs_count: usize,
    /// `|u|` of the leftmost FS-double square `(u, U)`.
    pub leftmost_u_len: Option<usize>,
    /// `5/6 |x| - 1/3 |u|`, present when a leftmost FS-double square exists.
    #[serde(serialize_with = "serialize_opt_ratio")]
    pub bound: Option<Ratio<i64>>,
    pub holds: bool,
}

impl FsBoundReport {
    pub fn is_vacuous(&self) -> bool {
        self.fs_count == 0
    }
}

pub fn fs_bound(x_len: usize, u_len: usize) -> Ratio<i64> {
    Ratio::new(5, 6) * Ratio::from_integer(x_len as i64)
        - Ratio::new(1, 3) * Ratio::from_integer(u_len as i64)
}

pub fn check_fs_bound(x: &Word) -> Result<FsBoundReport> {
    if x.len() < FS_BOUND_MIN_LEN {
        return Err(Error::TooShort {
            len: x.len(),
            min: FS_BOUND_MIN_LEN,
        });
    }
    let fs_count = fs_double_squares(x)?.len();
    let leftmost_u_len = leftmost_fs_double_square(x)?.map(|d| d.short_root.len());
    let bound = leftmost_u_len.map(|u| fs_bound(x.len(), u));
    let holds = match bound {
        Some(b) => Ratio::from_integer(fs_count as i64) <= b,
        None => true,
    };
    Ok(FsBoundReport {
        host: x.clone(),
        fs_count,
        leftmost_u_len,
        bound,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub n: usize,
    pub count: usize,
    #[serde(serialize_with = "serialize_ratio")]
    pub density: Ratio<u64>,
    /// `count <= 3.14 n`
    pub below_314: bool,
    /// `count >= 1.25 n`
    pub meets_125: bool,
}

pub fn density_report(cw: &CircularWord) -> Result<DensityReport> {
    let n = cw.n();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    let count = SquareScanner::new().count_circular(cw.representative().symbols());
    Ok(DensityReport {
        n,
        count,
        density: Ratio::new(count as u64, n as u64),
        below_314: below_314(count, n),
        meets_125: count * 4 >= 5 * n,
    })
}

/// `count <= 3.14 n` in integers.
pub fn below_314(count: usize, n: usize) -> bool {
    count * 100 <= 314 * n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::family_word;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn two_rightmost_examples() {
        assert!(check_two_rightmost(&w("aaaa")).unwrap());
        assert!(check_two_rightmost(&w("abcab")).unwrap());
        assert!(check_two_rightmost(&Word::default()).is_err());
    }

    #[test]
    fn quarter_rounding_is_recorded() {
        let r = check_quarter_lemma(&w("abaabbab")).unwrap();
        assert_eq!((r.s_start, r.s_end), (1, 3));
        assert_eq!(r.s, w("baa"));
        let r = check_quarter_lemma(&family_word(1)).unwrap();
        assert_eq!((r.s_start, r.s_end), (5, 11));
        assert_eq!(r.s, family_word(1).slice(5..12));
        assert!(r.holds());
        assert!(matches!(
            check_quarter_lemma(&w("abcabca")),
            Err(Error::TooShort { len: 7, min: 8 })
        ));
    }

    #[test]
    fn quarter_periodic_slice_is_vacuous() {
        let r = check_quarter_lemma(&w("aaaaaaaaaa")).unwrap();
        assert!(!r.s_aperiodic);
        assert!(r.holds());
    }

    #[test]
    fn quarter_first_quarter_lengths_are_rightmost() {
        // in a^16 the rightmost a^2j starts at 16 - 2j >= 8
        let r = check_quarter_lemma(&w("aaaaaaaa")).unwrap();
        assert!(r.first_quarter_lengths.is_empty());
        assert!(r.uniform);
    }

    #[test]
    fn extend_period_examples() {
        assert!(check_extend_period(&w("aaa"), 0, 0).unwrap());
        assert!(check_extend_period(&w("ab"), 1, 0).unwrap());
        assert!(check_extend_period(&Word::default(), 0, 0).is_err());
    }

    #[test]
    fn fs_bound_examples() {
        let square_free = w("abcacbabcbac");
        let r = check_fs_bound(&square_free).unwrap();
        assert_eq!(r.fs_count, 0);
        assert!(r.holds && r.is_vacuous());
        assert_eq!(r.bound, None);

        let golden = w("abaababaab");
        let r = check_fs_bound(&golden).unwrap();
        assert_eq!(r.fs_count, 1);
        assert_eq!(r.leftmost_u_len, Some(3));
        assert_eq!(r.bound, Some(Ratio::new(22, 3)));
        assert!(r.holds);

        assert!(matches!(
            check_fs_bound(&w("abaabab")),
            Err(Error::TooShort { len: 7, min: 10 })
        ));
    }

    #[test]
    fn density_examples() {
        let r = density_report(&CircularWord::new(&family_word(1)).unwrap()).unwrap();
        assert_eq!((r.n, r.count), (24, 25));
        assert_eq!(r.density, Ratio::new(25, 24));
        assert!(r.below_314 && !r.meets_125);
        let r = density_report(&CircularWord::new(&w("ab")).unwrap()).unwrap();
        assert_eq!(r.count, 0);
        assert_eq!(r.density, Ratio::from_integer(0));
        let r = density_report(&CircularWord::new(&family_word(5)).unwrap()).unwrap();
        assert_eq!((r.n, r.count), (56, 65));
        assert_eq!(r.density, Ratio::new(65, 56));
        assert!(r.below_314);
    }

    #[test]
    fn ceiling_is_exact_integer_comparison() {
        assert!(below_314(314, 100));
        assert!(!below_314(315, 100));
        assert!(below_314(3, 1));
        assert!(!below_314(4, 1));
    }
}
