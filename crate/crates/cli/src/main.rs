//! `circsq`: count squares, print the f_k table, verify lemmas, run necklace
//! searches.
//!
//! Exit codes: 0 success, 1 a checked statement was falsified, 2 usage or
//! input error.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(version, about = "Distinct squares in circular words", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count distinct squares in a word (lowercase letters).
    Count {
        word: String,
        /// Treat the word as a necklace: squares of length <= n in all rotations.
        #[arg(long)]
        circular: bool,
        /// Also print the squares, sorted.
        #[arg(long)]
        list_squares: bool,
        /// Alphabet size; inferred from the letters used when absent.
        #[arg(long)]
        sigma: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Square counts and census of the f_k family.
    Family {
        #[arg(long, default_value_t = 1)]
        k_min: usize,
        #[arg(long, default_value_t = 5)]
        k_max: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Sweep a lemma over all words up to --n-max plus seeded random words.
    Verify {
        #[arg(value_enum)]
        lemma: commands::LemmaArg,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        sigma: usize,
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Longest random word.
        #[arg(long, default_value_t = 64)]
        max_len: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Exhaustive (or sampled) maximum circular square count per n, as CSV.
    Search {
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        sigma: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// none, relabel, reversal or relabel+reversal.
        #[arg(long, default_value = "none")]
        quotient: String,
        #[arg(long)]
        out: PathBuf,
        /// Refuse any n whose necklace count exceeds this.
        #[arg(long, default_value_t = 1u128 << 32)]
        budget: u128,
        #[arg(long)]
        override_budget: bool,
        /// Probe with this many uniform random words per n instead of an
        /// exhaustive search.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write elapsed_ms as 0 so the CSV is reproducible byte for byte.
        #[arg(long)]
        no_timing: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let result = match cli.command {
        Command::Count {
            word,
            circular,
            list_squares,
            sigma,
            format,
        } => commands::count(&mut stdout, &word, circular, list_squares, sigma, format),
        Command::Family {
            k_min,
            k_max,
            format,
        } => commands::family(&mut stdout, k_min, k_max, format),
        Command::Verify {
            lemma,
            n_max,
            sigma,
            samples,
            seed,
            max_len,
            format,
        } => commands::verify(
            &mut stdout,
            lemma.into(),
            n_max,
            sigma,
            samples,
            seed,
            max_len,
            format,
        ),
        Command::Search {
            n_min,
            n_max,
            sigma,
            jobs,
            quotient,
            out,
            budget,
            override_budget,
            sample,
            seed,
            no_timing,
            format,
        } => commands::search(
            &mut stdout,
            commands::SearchArgs {
                n_min,
                n_max,
                sigma,
                jobs,
                quotient,
                out,
                budget: if override_budget { u128::MAX } else { budget },
                sample,
                seed,
                timing: !no_timing,
            },
            format,
        ),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
