//! Lemma sweeps: run one checker over an exhaustive corpus plus a seeded
//! random one and collect counterexamples. Words are checked in parallel;
//! results are merged in corpus order, so reports do not depend on the
//! thread count.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    check_extend_period, check_fs_bound, check_quarter_lemma, check_two_rightmost,
    FS_BOUND_MIN_LEN, QUARTER_MIN_LEN,
};
use crate::corpus::{random_words, word_at, word_count};
use crate::error::{Error, Result};
use crate::rational::format_ratio;
use crate::squares::rightmost_start_multiplicities;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    TwoRightmost,
    Quarter,
    ExtendPeriod,
    FsBound,
    FineWilf,
}

impl Lemma {
    pub const ALL: [Lemma; 5] = [
        Lemma::TwoRightmost,
        Lemma::Quarter,
        Lemma::ExtendPeriod,
        Lemma::FsBound,
        Lemma::FineWilf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::TwoRightmost => "two-rightmost",
            Lemma::Quarter => "quarter",
            Lemma::ExtendPeriod => "extend-period",
            Lemma::FsBound => "fs-bound",
            Lemma::FineWilf => "fine-wilf",
        }
    }

    /// Shortest word the checker accepts.
    pub fn min_len(self) -> usize {
        match self {
            Lemma::Quarter => QUARTER_MIN_LEN,
            Lemma::FsBound => FS_BOUND_MIN_LEN,
            _ => 1,
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown lemma {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub n_max: usize,
    pub sigma: usize,
    pub samples: usize,
    pub seed: u64,
    /// Longest random word.
    pub sample_max_len: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            n_max: 12,
            sigma: 2,
            samples: 0,
            seed: 0,
            sample_max_len: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub word: Word,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub lemma: Lemma,
    pub n_max: usize,
    pub sigma: usize,
    pub samples: usize,
    pub seed: u64,
    pub words_checked: u64,
    /// Individual assertions evaluated (several per word for some lemmas).
    pub checks: u64,
    /// Checks whose premise did not apply.
    pub vacuous: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    checks: u64,
    vacuous: u64,
}

/// Runs one lemma over one word. Returns the tally and an optional witness
/// description of a falsification.
fn check_word(lemma: Lemma, w: &Word, sigma: usize) -> Result<(Tally, Option<String>)> {
    let mut t = Tally::default();
    let failure = match lemma {
        Lemma::TwoRightmost => {
            t.checks = 1;
            if check_two_rightmost(w)? {
                None
            } else {
                let m = rightmost_start_multiplicities(w)?;
                let (pos, count) = m.into_iter().find(|&(_, c)| c > 2).unwrap_or_default();
                Some(format!(
                    "position {pos} starts {count} rightmost occurrences"
                ))
            }
        }
        Lemma::Quarter => {
            t.checks = 1;
            let r = check_quarter_lemma(w)?;
            if !r.s_aperiodic {
                t.vacuous = 1;
            }
            (!r.holds()).then(|| {
                format!(
                    "s = w[{}..={}] = {} aperiodic, first-quarter square lengths {:?}",
                    r.s_start, r.s_end, r.s, r.first_quarter_lengths
                )
            })
        }
        Lemma::ExtendPeriod => {
            let mut failure = None;
            for a in 0..sigma as u8 {
                for b in 0..sigma as u8 {
                    t.checks += 1;
                    let left = Word::from_symbols(vec![a], sigma)?.concat(w);
                    let right = w.concat(&Word::from_symbols(vec![b], sigma)?);
                    if left.is_aperiodic()? || right.is_aperiodic()? {
                        t.vacuous += 1;
                    }
                    if failure.is_none() && !check_extend_period(w, a, b)? {
                        failure = Some(format!(
                            "period({left}) = {} but period({right}) = {}",
                            left.period()?,
                            right.period()?
                        ));
                    }
                }
            }
            failure
        }
        Lemma::FsBound => {
            t.checks = 1;
            let r = check_fs_bound(w)?;
            if r.is_vacuous() {
                t.vacuous = 1;
            }
            (!r.holds).then(|| {
                format!(
                    "{} FS-double squares exceed bound {} (|u| = {})",
                    r.fs_count,
                    r.bound.as_ref().map(format_ratio).unwrap_or_default(),
                    r.leftmost_u_len.unwrap_or(0)
                )
            })
        }
        Lemma::FineWilf => {
            let n = w.len();
            let periods: Vec<usize> = (1..=n).filter(|&p| w.has_period(p)).collect();
            let mut failure = None;
            for (i, &p) in periods.iter().enumerate() {
                for &q in &periods[i..] {
                    t.checks += 1;
                    if p + q > n + p.gcd(&q) {
                        t.vacuous += 1;
                        continue;
                    }
                    if failure.is_none() && !w.fine_wilf_holds(p, q)? {
                        failure = Some(format!("periods {p}, {q} but gcd {} is not", p.gcd(&q)));
                    }
                }
            }
            failure
        }
    };
    Ok((t, failure))
}

fn check_batch(lemma: Lemma, words: &[Word], sigma: usize) -> Result<(Tally, Vec<Counterexample>)> {
    let results: Vec<(Tally, Option<String>)> = words
        .par_iter()
        .map(|w| check_word(lemma, w, sigma))
        .collect::<Result<_>>()?;
    let mut total = Tally::default();
    let mut found = Vec::new();
    for (w, (t, failure)) in words.iter().zip(results) {
        total.checks += t.checks;
        total.vacuous += t.vacuous;
        if let Some(witness) = failure {
            found.push(Counterexample {
                word: w.clone(),
                witness,
            });
        }
    }
    Ok((total, found))
}

/// Exhaustive lengths `min_len..=n_max`, then `samples` random words.
pub fn sweep(lemma: Lemma, config: &SweepConfig) -> Result<SweepReport> {
    if !(1..=4).contains(&config.sigma) {
        return Err(Error::InvalidParameter(format!(
            "sigma must be in 1..=4, got {}",
            config.sigma
        )));
    }
    let exhaustive: u128 = (lemma.min_len()..=config.n_max)
        .map(|n| word_count(n, config.sigma))
        .sum();
    if exhaustive > 1 << 26 {
        return Err(Error::BudgetExceeded {
            estimated: exhaustive,
            budget: 1 << 26,
        });
    }
    let mut report = SweepReport {
        lemma,
        n_max: config.n_max,
        sigma: config.sigma,
        samples: config.samples,
        seed: config.seed,
        words_checked: 0,
        checks: 0,
        vacuous: 0,
        counterexamples: Vec::new(),
    };
    let mut absorb = |words: Vec<Word>| -> Result<()> {
        let (t, found) = check_batch(lemma, &words, config.sigma)?;
        report.words_checked += words.len() as u64;
        report.checks += t.checks;
        report.vacuous += t.vacuous;
        report.counterexamples.extend(found);
        Ok(())
    };
    for n in lemma.min_len()..=config.n_max {
        let words = (0..word_count(n, config.sigma))
            .map(|i| word_at(i, n, config.sigma))
            .collect();
        absorb(words)?;
    }
    if config.samples > 0 {
        absorb(random_words(
            config.seed,
            config.samples,
            lemma.min_len(),
            config.sample_max_len,
            config.sigma,
        ))?;
    }
    Ok(report)
}
