//! Exhaustive extremal search over necklaces.
//!
//! Necklaces are produced in lexicographic order by the
//! Fredricksen–Kessler–Maiorana recursion. For parallel runs the recursion
//! tree is cut at a fixed depth; every cut node is a block covering a
//! contiguous lexicographic range. Blocks are reduced independently and
//! merged in block order, so a record never depends on the thread count.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::serialize_ratio;
use crate::squares::SquareScanner;
use crate::word::{least_rotation, Word};

/// Default refusal threshold on the number of necklaces in one search.
pub const DEFAULT_BUDGET: u128 = 1 << 32;
/// Witnesses kept per record (the lexicographically least ones).
pub const WITNESS_CAP: usize = 16;

fn check_params(n: usize, sigma: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if !(2..=4).contains(&sigma) {
        return Err(Error::InvalidParameter(format!(
            "sigma must be in 2..=4, got {sigma}"
        )));
    }
    Ok(())
}

fn euler_phi(mut m: u128) -> u128 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// `(1/n) Σ_{d | n} φ(d) σ^{n/d}`.
pub fn necklace_count(n: usize, sigma: usize) -> u128 {
    assert!(n >= 1);
    let total: u128 = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| euler_phi(d as u128) * (sigma as u128).pow((n / d) as u32))
        .sum();
    total / n as u128
}

/// Streaming necklace enumerator: yields each class's least rotation once,
/// in lexicographic order.
#[derive(Debug, Clone)]
pub struct Necklaces {
    n: usize,
    sigma: u8,
    // 1-based prenecklace buffer; a[0] is unused.
    a: Vec<u8>,
    started: bool,
    done: bool,
    yielded: u128,
}

impl Iterator for Necklaces {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.yielded += 1;
            return Some(Word::from_raw(self.a[1..].to_vec()));
        }
        loop {
            let mut i = self.n;
            while i > 0 && self.a[i] == self.sigma - 1 {
                i -= 1;
            }
            if i == 0 {
                self.done = true;
                assert_eq!(
                    self.yielded,
                    necklace_count(self.n, self.sigma.into()),
                    "necklace enumeration disagrees with the counting formula"
                );
                return None;
            }
            self.a[i] += 1;
            for j in i + 1..=self.n {
                self.a[j] = self.a[j - i];
            }
            if self.n % i == 0 {
                self.yielded += 1;
                return Some(Word::from_raw(self.a[1..].to_vec()));
            }
        }
    }
}

pub fn enumerate_necklaces(n: usize, sigma: usize) -> Result<Necklaces> {
    check_params(n, sigma)?;
    Ok(Necklaces {
        n,
        sigma: sigma as u8,
        a: vec![0; n + 1],
        started: false,
        done: false,
        yielded: 0,
    })
}

/// Symmetries used to skip equivalent necklaces. Both preserve the circular
/// square count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Quotient {
    pub relabel: bool,
    pub reversal: bool,
}

impl Quotient {
    pub const NONE: Quotient = Quotient {
        relabel: false,
        reversal: false,
    };
    pub const FULL: Quotient = Quotient {
        relabel: true,
        reversal: true,
    };
}

impl fmt::Display for Quotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match (self.relabel, self.reversal) {
            (false, false) => "none",
            (true, false) => "relabel",
            (false, true) => "reversal",
            (true, true) => "relabel+reversal",
        })
    }
}

impl FromStr for Quotient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (relabel, reversal) = match s {
            "none" => (false, false),
            "relabel" => (true, false),
            "reversal" => (false, true),
            "relabel+reversal" | "reversal+relabel" | "full" => (true, true),
            _ => return Err(Error::InvalidParameter(format!("unknown quotient {s:?}"))),
        };
        Ok(Quotient { relabel, reversal })
    }
}

/// How a record was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchMode {
    Exhaustive(Quotient),
    /// Uniform random words; a lower estimate, not a maximum.
    Sampled,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchMode::Exhaustive(q) => q.fmt(f),
            SearchMode::Sampled => f.write_str("sampled"),
        }
    }
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "sampled" {
            Ok(SearchMode::Sampled)
        } else {
            s.parse().map(SearchMode::Exhaustive)
        }
    }
}

impl Serialize for SearchMode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchRecord {
    pub n: usize,
    pub sigma: usize,
    pub quotient: SearchMode,
    pub max_count: usize,
    #[serde(serialize_with = "serialize_ratio")]
    pub density: Ratio<u64>,
    /// Lexicographically least maximizers, at most [`WITNESS_CAP`].
    pub witnesses: Vec<Word>,
    pub num_maximizers: u64,
    pub words_examined: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub jobs: usize,
    pub budget: u128,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            jobs: 1,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Binary word packed one bit per symbol, first symbol in the most
/// significant used bit, so integer order is lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PackedBinary {
    bits: u64,
    len: u32,
}

impl PackedBinary {
    pub const MAX_LEN: usize = 64;

    pub fn from_symbols(s: &[u8]) -> Option<Self> {
        if s.len() > Self::MAX_LEN || s.iter().any(|&c| c > 1) {
            return None;
        }
        let bits = s.iter().fold(0u64, |acc, &c| (acc << 1) | u64::from(c));
        Some(Self {
            bits,
            len: s.len() as u32,
        })
    }

    pub fn to_word(self) -> Word {
        Word::from_raw(
            (0..self.len)
                .rev()
                .map(|i| ((self.bits >> i) & 1) as u8)
                .collect(),
        )
    }

    fn mask(self) -> u64 {
        if self.len == 64 {
            u64::MAX
        } else {
            (1u64 << self.len) - 1
        }
    }

    pub fn rotate_left(self, r: u32) -> Self {
        let r = r % self.len.max(1);
        if r == 0 {
            return self;
        }
        let bits = ((self.bits << r) | (self.bits >> (self.len - r))) & self.mask();
        Self { bits, ..self }
    }

    pub fn complement(self) -> Self {
        Self {
            bits: !self.bits & self.mask(),
            ..self
        }
    }

    pub fn reverse(self) -> Self {
        if self.len == 0 {
            return self;
        }
        Self {
            bits: self.bits.reverse_bits() >> (64 - self.len),
            ..self
        }
    }

    pub fn canonical(self) -> Self {
        (1..self.len)
            .map(|r| self.rotate_left(r))
            .fold(self, |best, x| best.min(x))
    }
}

/// Decides whether a canonical necklace is the least member of its orbit
/// under the chosen symmetries.
struct OrbitFilter {
    quotient: Quotient,
    sigma: usize,
    perms: Vec<Vec<u8>>,
    image: Vec<u8>,
}

impl OrbitFilter {
    fn new(quotient: Quotient, sigma: usize) -> Self {
        let mut perms = vec![(0..sigma as u8).collect::<Vec<u8>>()];
        if quotient.relabel {
            perms = permutations(sigma);
        }
        Self {
            quotient,
            sigma,
            perms,
            image: Vec::new(),
        }
    }

    fn keeps(&mut self, rep: &[u8]) -> bool {
        if self.quotient == Quotient::NONE {
            return true;
        }
        if self.sigma == 2 && rep.len() <= PackedBinary::MAX_LEN {
            return self.keeps_binary(rep);
        }
        let reversals: &[bool] = if self.quotient.reversal {
            &[false, true]
        } else {
            &[false]
        };
        for &rev in reversals {
            for perm in &self.perms {
                self.image.clear();
                if rev {
                    self.image
                        .extend(rep.iter().rev().map(|&c| perm[usize::from(c)]));
                } else {
                    self.image.extend(rep.iter().map(|&c| perm[usize::from(c)]));
                }
                let shift = least_rotation(&self.image);
                let (head, tail) = self.image.split_at(shift);
                let smaller = tail.iter().chain(head).cmp(rep.iter()).is_lt();
                if smaller {
                    return false;
                }
            }
        }
        true
    }

    fn keeps_binary(&self, rep: &[u8]) -> bool {
        let w = PackedBinary::from_symbols(rep).expect("binary word");
        let mut images = Vec::with_capacity(3);
        if self.quotient.relabel {
            images.push(w.complement());
        }
        if self.quotient.reversal {
            images.push(w.reverse());
            if self.quotient.relabel {
                images.push(w.reverse().complement());
            }
        }
        images.into_iter().all(|img| w <= img.canonical())
    }
}

fn permutations(k: usize) -> Vec<Vec<u8>> {
    fn go(prefix: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for s in 0..used.len() {
            if !used[s] {
                used[s] = true;
                prefix.push(s as u8);
                go(prefix, used, out);
                prefix.pop();
                used[s] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// A subtree of the necklace recursion: fixed prefix and its period.
#[derive(Debug, Clone)]
struct Block {
    prefix: Vec<u8>,
    period: usize,
}

fn blocks(n: usize, sigma: u8, depth: usize) -> Vec<Block> {
    fn go(a: &mut Vec<u8>, t: usize, p: usize, depth: usize, sigma: u8, out: &mut Vec<Block>) {
        if t > depth {
            out.push(Block {
                prefix: a[1..t].to_vec(),
                period: p,
            });
            return;
        }
        let base = a[t - p];
        a[t] = base;
        go(a, t + 1, p, depth, sigma, out);
        for c in base + 1..sigma {
            a[t] = c;
            go(a, t + 1, t, depth, sigma, out);
        }
    }
    let mut a = vec![0u8; n + 1];
    let mut out = Vec::new();
    go(&mut a, 1, 1, depth, sigma, &mut out);
    out
}

/// Runs the recursion below `block`, calling `visit` on every necklace.
fn walk_block(n: usize, sigma: u8, block: &Block, visit: &mut impl FnMut(&[u8])) {
    fn go(a: &mut [u8], t: usize, p: usize, n: usize, sigma: u8, visit: &mut impl FnMut(&[u8])) {
        if t > n {
            if n % p == 0 {
                visit(&a[1..]);
            }
            return;
        }
        let base = a[t - p];
        a[t] = base;
        go(a, t + 1, p, n, sigma, visit);
        for c in base + 1..sigma {
            a[t] = c;
            go(a, t + 1, t, n, sigma, visit);
        }
    }
    let mut a = vec![0u8; n + 1];
    a[1..=block.prefix.len()].copy_from_slice(&block.prefix);
    go(
        &mut a,
        block.prefix.len() + 1,
        block.period,
        n,
        sigma,
        visit,
    );
}

/// Cut depth for the block split; depends only on `(n, sigma)`.
fn split_depth(n: usize, sigma: usize) -> usize {
    let mut depth = 0;
    while depth + 1 < n && (sigma as u128).pow(depth as u32 + 1) <= 4096 {
        depth += 1;
    }
    depth
}

/// Partial result over a lexicographic range of necklaces. Merging two
/// adjacent partials in order is associative.
#[derive(Debug, Clone, Default)]
struct Partial {
    max_count: usize,
    witnesses: Vec<Vec<u8>>,
    num_maximizers: u64,
    examined: u64,
    enumerated: u128,
}

impl Partial {
    fn offer(&mut self, count: usize, word: &[u8]) {
        if count > self.max_count || self.num_maximizers == 0 {
            self.max_count = count;
            self.witnesses.clear();
            self.num_maximizers = 0;
        }
        if count == self.max_count {
            self.num_maximizers += 1;
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(word.to_vec());
            }
        }
    }

    /// `self` covers words lexicographically before `later`.
    fn merge(mut self, later: Partial) -> Partial {
        self.examined += later.examined;
        self.enumerated += later.enumerated;
        if later.num_maximizers == 0 {
            return self;
        }
        if self.num_maximizers == 0 || later.max_count > self.max_count {
            self.max_count = later.max_count;
            self.witnesses = later.witnesses;
            self.num_maximizers = later.num_maximizers;
        } else if later.max_count == self.max_count {
            self.num_maximizers += later.num_maximizers;
            let room = WITNESS_CAP - self.witnesses.len().min(WITNESS_CAP);
            self.witnesses
                .extend(later.witnesses.into_iter().take(room));
        }
        self
    }
}

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start worker pool: {e}")))
}

fn finish(n: usize, sigma: usize, mode: SearchMode, p: Partial, started: Instant) -> SearchRecord {
    SearchRecord {
        n,
        sigma,
        quotient: mode,
        max_count: p.max_count,
        density: Ratio::new(p.max_count as u64, n as u64),
        witnesses: p.witnesses.into_iter().map(Word::from_raw).collect(),
        num_maximizers: p.num_maximizers,
        words_examined: p.examined,
        elapsed_ms: started.elapsed().as_millis() as u64,
    }
}

/// Maximum circular distinct-square count over all necklaces of length `n`
/// over `sigma` symbols, optionally visiting one necklace per symmetry orbit.
pub fn max_square_density(
    n: usize,
    sigma: usize,
    quotient: Quotient,
    options: &SearchOptions,
) -> Result<SearchRecord> {
    check_params(n, sigma)?;
    let estimated = necklace_count(n, sigma);
    if estimated > options.budget {
        return Err(Error::BudgetExceeded {
            estimated,
            budget: options.budget,
        });
    }
    let started = Instant::now();
    let work = blocks(n, sigma as u8, split_depth(n, sigma));
    let pool = thread_pool(options.jobs)?;
    let partials: Vec<Partial> = pool.install(|| {
        work.par_iter()
            .map_init(
                || (SquareScanner::new(), OrbitFilter::new(quotient, sigma)),
                |(scanner, filter), block| {
                    let mut part = Partial::default();
                    walk_block(n, sigma as u8, block, &mut |rep| {
                        part.enumerated += 1;
                        if filter.keeps(rep) {
                            part.examined += 1;
                            part.offer(scanner.count_circular(rep), rep);
                        }
                    });
                    part
                },
            )
            .collect()
    });
    let total = partials
        .into_iter()
        .fold(Partial::default(), Partial::merge);
    assert_eq!(
        total.enumerated, estimated,
        "necklace enumeration disagrees with the counting formula"
    );
    Ok(finish(
        n,
        sigma,
        SearchMode::Exhaustive(quotient),
        total,
        started,
    ))
}

/// Non-exhaustive probe: `samples` uniform random words of length `n`.
/// Witnesses are reported as canonical rotations, deduplicated.
pub fn sample_square_density(
    n: usize,
    sigma: usize,
    samples: usize,
    seed: u64,
    jobs: usize,
) -> Result<SearchRecord> {
    check_params(n, sigma)?;
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32) ^ sigma as u64);
    let words: Vec<Vec<u8>> = (0..samples)
        .map(|_| (0..n).map(|_| rng.gen_range(0..sigma as u8)).collect())
        .collect();
    let pool = thread_pool(jobs)?;
    let counts: Vec<(usize, Vec<u8>)> = pool.install(|| {
        words
            .par_iter()
            .map_init(SquareScanner::new, |scanner, w| {
                let shift = least_rotation(w);
                let canon = [&w[shift..], &w[..shift]].concat();
                (scanner.count_circular(w), canon)
            })
            .collect()
    });
    let max_count = counts.iter().map(|(c, _)| *c).max().unwrap_or(0);
    let mut maximizers: Vec<Vec<u8>> = counts
        .into_iter()
        .filter(|(c, _)| *c == max_count)
        .map(|(_, w)| w)
        .collect();
    maximizers.sort();
    maximizers.dedup();
    let part = Partial {
        max_count,
        num_maximizers: maximizers.len() as u64,
        witnesses: maximizers.into_iter().take(WITNESS_CAP).collect(),
        examined: samples as u64,
        enumerated: 0,
    };
    Ok(finish(n, sigma, SearchMode::Sampled, part, started))
}
