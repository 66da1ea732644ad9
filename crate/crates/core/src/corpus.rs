//! Word corpora for sweeps: exhaustive enumeration and seeded random samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::word::Word;

/// Number of words of length `n` over `sigma` symbols.
pub fn word_count(n: usize, sigma: usize) -> u128 {
    (sigma as u128).pow(n as u32)
}

/// The `index`-th word of length `n` in lexicographic order.
pub fn word_at(index: u128, n: usize, sigma: usize) -> Word {
    let mut v = vec![0u8; n];
    let mut code = index;
    for slot in v.iter_mut().rev() {
        *slot = (code % sigma as u128) as u8;
        code /= sigma as u128;
    }
    Word::from_raw(v)
}

/// All words of length `n` over `sigma` symbols, lexicographically.
pub fn all_words(n: usize, sigma: usize) -> impl Iterator<Item = Word> {
    (0..word_count(n, sigma)).map(move |i| word_at(i, n, sigma))
}

/// `count` words, lengths uniform in `min_len..=max_len`, symbols uniform
/// over `sigma`. Same seed, same corpus.
pub fn random_words(
    seed: u64,
    count: usize,
    min_len: usize,
    max_len: usize,
    sigma: usize,
) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(min_len..=max_len.max(min_len));
            Word::from_raw((0..len).map(|_| rng.gen_range(0..sigma as u8)).collect())
        })
        .collect()
}

/// Like [`random_words`] but the alphabet size of each word is drawn from
/// `sigmas`.
pub fn random_words_mixed(seed: u64, count: usize, max_len: usize, sigmas: &[usize]) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let sigma = sigmas[rng.gen_range(0..sigmas.len())];
            let len = rng.gen_range(1..=max_len);
            Word::from_raw((0..len).map(|_| rng.gen_range(0..sigma as u8)).collect())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_order_and_size() {
        let words: Vec<String> = all_words(2, 3).map(|w| w.to_string()).collect();
        assert_eq!(
            words,
            ["aa", "ab", "ac", "ba", "bb", "bc", "ca", "cb", "cc"]
        );
        assert_eq!(all_words(0, 2).count(), 1);
        assert_eq!(word_count(10, 2), 1024);
    }

    #[test]
    fn random_corpus_is_seeded() {
        let a = random_words(7, 50, 3, 20, 3);
        assert_eq!(a, random_words(7, 50, 3, 20, 3));
        assert_ne!(a, random_words(8, 50, 3, 20, 3));
        assert!(a
            .iter()
            .all(|w| (3..=20).contains(&w.len()) && w.alphabet_size() <= 3));
        let b = random_words_mixed(1, 100, 30, &[2, 3, 4]);
        assert_eq!(b, random_words_mixed(1, 100, 30, &[2, 3, 4]));
        assert!(b
            .iter()
            .all(|w| (1..=30).contains(&w.len()) && w.alphabet_size() <= 4));
    }
}
