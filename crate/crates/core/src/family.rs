//! The lower-bound family `f_k = a(ba)^{k+1} a(ba)^{k+2} a(ba)^{k+1} a(ba)^{k+2}`
//! and the census that splits its circular squares by how often `aa` occurs
//! inside them.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::squares::distinct_circular_squares;
use crate::word::{CircularWord, Word};

const A: u8 = 0;
const B: u8 = 1;

fn push_block(out: &mut Vec<u8>, reps: usize) {
    out.push(A);
    for _ in 0..reps {
        out.extend_from_slice(&[B, A]);
    }
}

/// `x_k = a(ba)^{k+1} a(ba)^{k+2}`, so that `f_k = x_k x_k`.
pub fn family_half(k: usize) -> Word {
    let mut s = Vec::with_capacity(4 * k + 8);
    push_block(&mut s, k + 1);
    push_block(&mut s, k + 2);
    Word::from_raw(s)
}

/// `f_k`, of length `8k + 16`.
pub fn family_word(k: usize) -> Word {
    let half = family_half(k);
    half.concat(&half)
}

/// `10k + 16 - (k mod 2)`.
pub fn predicted_count(k: usize) -> usize {
    10 * k + 16 - (k % 2)
}

/// Closed-form square density of `(f_k)`.
pub fn density(k: usize) -> Ratio<u64> {
    Ratio::new(predicted_count(k) as u64, (8 * k + 16) as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyCensus {
    pub k: usize,
    /// Squares containing no `aa`.
    pub no_aa: usize,
    /// Squares containing `aa` exactly once.
    pub one_aa: usize,
    /// Exactly two `aa`, root length `2k + 3`.
    pub two_aa_len_2k3: usize,
    /// Exactly two `aa`, root length `2k + 5`.
    pub two_aa_len_2k5: usize,
    /// Three or more `aa`; these are the rotations of `f_k`.
    pub full_length: usize,
    pub total: usize,
}

impl FamilyCensus {
    /// The counts the lower-bound argument predicts for `k`.
    pub fn closed_form(k: usize) -> Self {
        let no_aa = 2 * ((k + 2) / 2);
        let one_aa = k + 2;
        let two = 2 * k + 2;
        let full_length = 4 * k + 8;
        Self {
            k,
            no_aa,
            one_aa,
            two_aa_len_2k3: two,
            two_aa_len_2k5: two,
            full_length,
            total: no_aa + one_aa + 2 * two + full_length,
        }
    }

    pub fn category_sum(&self) -> usize {
        self.no_aa + self.one_aa + self.two_aa_len_2k3 + self.two_aa_len_2k5 + self.full_length
    }
}

/// Occurrences of `aa` in `s`, overlapping ones included.
fn aa_occurrences(s: &[u8]) -> usize {
    s.windows(2).filter(|p| p == &[A, A]).count()
}

/// Classifies every distinct square of `(f_k)`. A square that fits none of
/// the five categories is an error.
pub fn census(k: usize) -> Result<FamilyCensus> {
    let word = family_word(k);
    let cw = CircularWord::new(&word)?;
    let mut c = FamilyCensus {
        k,
        no_aa: 0,
        one_aa: 0,
        two_aa_len_2k3: 0,
        two_aa_len_2k5: 0,
        full_length: 0,
        total: 0,
    };
    for sq in distinct_circular_squares(&cw)? {
        let root = sq.root_len();
        match aa_occurrences(sq.text().symbols()) {
            0 => c.no_aa += 1,
            1 => c.one_aa += 1,
            2 if root == 2 * k + 3 => c.two_aa_len_2k3 += 1,
            2 if root == 2 * k + 5 => c.two_aa_len_2k5 += 1,
            n if n >= 3 && sq.len() == word.len() => c.full_length += 1,
            _ => {
                return Err(Error::CensusMismatch {
                    k,
                    text: sq.to_string(),
                })
            }
        }
        c.total += 1;
    }
    Ok(c)
}
