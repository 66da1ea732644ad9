use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use circsq_core::bounds::below_314;
use circsq_core::campaign::{search_campaign, CampaignConfig};
use circsq_core::family::{census, family_word, predicted_count, FamilyCensus};
use circsq_core::rational::format_ratio;
use circsq_core::search::{Quotient, SearchMode, SearchOptions, SearchRecord};
use circsq_core::squares::{distinct_circular_squares, rightmost_occurrences, SquareScanner};
use circsq_core::verify::{sweep, Lemma, SweepConfig, SweepReport};
use circsq_core::{CircularWord, Word};
use clap::ValueEnum;
use serde::Serialize;

use crate::output::{emit, Format, Tabular};

#[derive(Serialize)]
struct CountPayload {
    word: String,
    n: usize,
    sigma: usize,
    circular: bool,
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    squares: Option<Vec<String>>,
}

impl Tabular for CountPayload {
    fn header(&self) -> Vec<&'static str> {
        let mut h = vec!["word", "n", "sigma", "circular", "count"];
        if self.squares.is_some() {
            h.push("squares");
        }
        h
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let mut row = vec![
            self.word.clone(),
            self.n.to_string(),
            self.sigma.to_string(),
            self.circular.to_string(),
            self.count.to_string(),
        ];
        if let Some(sq) = &self.squares {
            row.push(sq.join(","));
        }
        vec![row]
    }
}

pub fn count(
    out: &mut impl Write,
    text: &str,
    circular: bool,
    list_squares: bool,
    sigma: Option<usize>,
    format: Format,
) -> anyhow::Result<ExitCode> {
    let word = Word::parse(text, sigma).with_context(|| format!("invalid word {text:?}"))?;
    if word.is_empty() {
        anyhow::bail!("word must be non-empty");
    }
    let sigma = sigma.unwrap_or_else(|| word.alphabet_size());
    let count = if circular {
        SquareScanner::new().count_circular(word.symbols())
    } else {
        SquareScanner::new().count(word.symbols(), word.len())
    };
    let squares = if !list_squares {
        None
    } else if circular {
        Some(distinct_circular_squares(&CircularWord::new(&word)?)?)
    } else {
        Some(
            rightmost_occurrences(&word)?
                .into_iter()
                .map(|r| r.square)
                .collect(),
        )
    };
    let payload = CountPayload {
        word: word.to_string(),
        n: word.len(),
        sigma,
        circular,
        count,
        squares: squares.map(|set: BTreeSet<_>| set.iter().map(|s| s.to_string()).collect()),
    };
    emit(out, format, &payload)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct FamilyRow {
    k: usize,
    word: String,
    count: usize,
    length: usize,
    predicted: usize,
    census: FamilyCensus,
    matches: bool,
}

#[derive(Serialize)]
struct FamilyPayload {
    rows: Vec<FamilyRow>,
}

impl Tabular for FamilyPayload {
    fn header(&self) -> Vec<&'static str> {
        vec![
            "k",
            "f_k",
            "count",
            "length",
            "predicted",
            "no_aa",
            "one_aa",
            "two_aa_len_2k3",
            "two_aa_len_2k5",
            "full_length",
            "matches",
        ]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.k.to_string(),
                    r.word.clone(),
                    r.count.to_string(),
                    r.length.to_string(),
                    r.predicted.to_string(),
                    r.census.no_aa.to_string(),
                    r.census.one_aa.to_string(),
                    r.census.two_aa_len_2k3.to_string(),
                    r.census.two_aa_len_2k5.to_string(),
                    r.census.full_length.to_string(),
                    r.matches.to_string(),
                ]
            })
            .collect()
    }
}

pub fn family(
    out: &mut impl Write,
    k_min: usize,
    k_max: usize,
    format: Format,
) -> anyhow::Result<ExitCode> {
    if k_min > k_max {
        anyhow::bail!("empty range: --k-min {k_min} > --k-max {k_max}");
    }
    let mut rows = Vec::new();
    for k in k_min..=k_max {
        let word = family_word(k);
        let c = census(k)?;
        let count = SquareScanner::new().count_circular(word.symbols());
        let predicted = predicted_count(k);
        rows.push(FamilyRow {
            k,
            word: word.to_string(),
            count,
            length: word.len(),
            predicted,
            matches: count == predicted && c == FamilyCensus::closed_form(k),
            census: c,
        });
    }
    let all_match = rows.iter().all(|r| r.matches);
    emit(out, format, &FamilyPayload { rows })?;
    Ok(if all_match {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LemmaArg {
    TwoRightmost,
    Quarter,
    ExtendPeriod,
    FsBound,
    FineWilf,
}

impl From<LemmaArg> for Lemma {
    fn from(l: LemmaArg) -> Self {
        match l {
            LemmaArg::TwoRightmost => Lemma::TwoRightmost,
            LemmaArg::Quarter => Lemma::Quarter,
            LemmaArg::ExtendPeriod => Lemma::ExtendPeriod,
            LemmaArg::FsBound => Lemma::FsBound,
            LemmaArg::FineWilf => Lemma::FineWilf,
        }
    }
}

#[derive(Serialize)]
struct VerifyPayload {
    status: &'static str,
    #[serde(flatten)]
    report: SweepReport,
}

impl Tabular for VerifyPayload {
    fn header(&self) -> Vec<&'static str> {
        vec![
            "lemma",
            "n_max",
            "sigma",
            "samples",
            "seed",
            "words_checked",
            "checks",
            "vacuous",
            "status",
            "counterexample",
            "witness",
        ]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let r = &self.report;
        let prefix = vec![
            r.lemma.to_string(),
            r.n_max.to_string(),
            r.sigma.to_string(),
            r.samples.to_string(),
            r.seed.to_string(),
            r.words_checked.to_string(),
            r.checks.to_string(),
            r.vacuous.to_string(),
            self.status.to_string(),
        ];
        if r.counterexamples.is_empty() {
            let mut row = prefix;
            row.extend([String::new(), String::new()]);
            return vec![row];
        }
        r.counterexamples
            .iter()
            .map(|c| {
                let mut row = prefix.clone();
                row.extend([c.word.to_string(), c.witness.clone()]);
                row
            })
            .collect()
    }
}

#[allow(clippy::too_many_arguments)]
pub fn verify(
    out: &mut impl Write,
    lemma: Lemma,
    n_max: usize,
    sigma: usize,
    samples: usize,
    seed: u64,
    max_len: usize,
    format: Format,
) -> anyhow::Result<ExitCode> {
    let report = sweep(
        lemma,
        &SweepConfig {
            n_max,
            sigma,
            samples,
            seed,
            sample_max_len: max_len,
        },
    )?;
    let passed = report.passed();
    let payload = VerifyPayload {
        status: if passed { "pass" } else { "falsified" },
        report,
    };
    emit(out, format, &payload)?;
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

pub struct SearchArgs {
    pub n_min: usize,
    pub n_max: usize,
    pub sigma: usize,
    pub jobs: usize,
    pub quotient: String,
    pub out: PathBuf,
    pub budget: u128,
    pub sample: Option<usize>,
    pub seed: u64,
    pub timing: bool,
}

#[derive(Serialize)]
struct SearchRow {
    #[serde(flatten)]
    record: SearchRecord,
    resumed: bool,
    below_314: bool,
}

#[derive(Serialize)]
struct SearchPayload {
    out: String,
    rows: Vec<SearchRow>,
}

impl Tabular for SearchPayload {
    fn header(&self) -> Vec<&'static str> {
        vec![
            "n",
            "sigma",
            "quotient",
            "max_count",
            "density",
            "num_maximizers",
            "first_witness",
            "words_examined",
            "elapsed_ms",
            "resumed",
            "below_314",
        ]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|row| {
                let r = &row.record;
                vec![
                    r.n.to_string(),
                    r.sigma.to_string(),
                    r.quotient.to_string(),
                    r.max_count.to_string(),
                    format_ratio(&r.density),
                    r.num_maximizers.to_string(),
                    r.witnesses.first().map(Word::to_string).unwrap_or_default(),
                    r.words_examined.to_string(),
                    r.elapsed_ms.to_string(),
                    row.resumed.to_string(),
                    row.below_314.to_string(),
                ]
            })
            .collect()
    }
}

pub fn search(out: &mut impl Write, args: SearchArgs, format: Format) -> anyhow::Result<ExitCode> {
    let mode = match args.sample {
        Some(_) => SearchMode::Sampled,
        None => SearchMode::Exhaustive(args.quotient.parse::<Quotient>()?),
    };
    let config = CampaignConfig {
        n_min: args.n_min,
        n_max: args.n_max,
        sigma: args.sigma,
        mode,
        options: SearchOptions {
            jobs: args.jobs,
            budget: args.budget,
        },
        samples: args.sample.unwrap_or(0),
        seed: args.seed,
        record_timing: args.timing,
    };
    let mut rows = Vec::new();
    search_campaign(&config, &args.out, |r, computed| {
        if computed {
            eprintln!(
                "n={} max_count={} density={} ({} ms)",
                r.n,
                r.max_count,
                format_ratio(&r.density),
                r.elapsed_ms
            );
        }
        rows.push(SearchRow {
            record: r.clone(),
            resumed: !computed,
            below_314: below_314(r.max_count, r.n),
        });
    })?;
    let ceiling_ok = rows.iter().all(|r| r.below_314);
    emit(
        out,
        format,
        &SearchPayload {
            out: args.out.display().to_string(),
            rows,
        },
    )?;
    Ok(if ceiling_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
