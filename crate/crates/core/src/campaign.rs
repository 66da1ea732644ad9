//! Resumable search campaigns written to CSV, one row per `n`.
//!
//! Schema (headered, comma-separated, never quoted):
//!
//! ```text
//! n,sigma,quotient,max_count,density_num,density_den,num_maximizers,witnesses,words_examined,elapsed_ms
//! ```
//!
//! `witnesses` is semicolon-joined. Rows are appended in ascending `n` and
//! flushed as each one completes. On restart the existing rows are validated
//! and skipped; any row that fails validation stops the campaign.

use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::search::{
    max_square_density, sample_square_density, SearchMode, SearchOptions, SearchRecord, WITNESS_CAP,
};
use crate::word::Word;

pub const CSV_HEADER: &str =
    "n,sigma,quotient,max_count,density_num,density_den,num_maximizers,witnesses,words_examined,elapsed_ms";

#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub sigma: usize,
    pub mode: SearchMode,
    pub options: SearchOptions,
    /// Random words per `n` in sampled mode.
    pub samples: usize,
    pub seed: u64,
    /// When false, `elapsed_ms` is written as 0 so files are reproducible
    /// byte for byte.
    pub record_timing: bool,
}

/// Outcome of a campaign run.
#[derive(Debug, Clone)]
pub struct CampaignOutcome {
    pub records: Vec<SearchRecord>,
    /// Rows found already complete on disk.
    pub resumed: usize,
    /// Rows computed in this run.
    pub computed: usize,
}

pub fn format_row(r: &SearchRecord) -> String {
    let witnesses: Vec<String> = r.witnesses.iter().map(Word::to_string).collect();
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        r.n,
        r.sigma,
        r.quotient,
        r.max_count,
        r.density.numer(),
        r.density.denom(),
        r.num_maximizers,
        witnesses.join(";"),
        r.words_examined,
        r.elapsed_ms
    )
}

fn corrupt(path: &Path, line: usize, reason: impl Into<String>) -> Error {
    Error::CorruptCsv {
        path: path.display().to_string(),
        line,
        reason: reason.into(),
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

/// Parses and validates one data row.
pub fn parse_row(text: &str) -> std::result::Result<SearchRecord, String> {
    let fields: Vec<&str> = text.split(',').collect();
    if fields.len() != 10 {
        return Err(format!("expected 10 fields, found {}", fields.len()));
    }
    let int = |i: usize| -> std::result::Result<u64, String> {
        fields[i]
            .parse::<u64>()
            .map_err(|_| format!("field {} is not an integer: {:?}", i + 1, fields[i]))
    };
    let n = int(0)? as usize;
    let sigma = int(1)? as usize;
    let quotient: SearchMode = fields[2].parse().map_err(|e| format!("{e}"))?;
    let max_count = int(3)? as usize;
    let (num, den) = (int(4)?, int(5)?);
    let num_maximizers = int(6)?;
    let words_examined = int(8)?;
    let elapsed_ms = int(9)?;
    if n == 0 || !(2..=4).contains(&sigma) {
        return Err(format!("parameters out of range: n={n} sigma={sigma}"));
    }
    let density = Ratio::new(max_count as u64, n as u64);
    if (*density.numer(), *density.denom()) != (num, den) {
        return Err(format!(
            "density {num}/{den} does not reduce {max_count}/{n}"
        ));
    }
    if max_count * 100 > 314 * n {
        return Err(format!("max_count {max_count} exceeds 3.14n"));
    }
    let witnesses = if fields[7].is_empty() {
        Vec::new()
    } else {
        fields[7]
            .split(';')
            .map(|w| Word::parse(w, Some(sigma)).map_err(|e| e.to_string()))
            .collect::<std::result::Result<Vec<_>, _>>()?
    };
    if witnesses.iter().any(|w| w.len() != n) {
        return Err("witness length differs from n".into());
    }
    if witnesses.is_empty() || witnesses.len() > WITNESS_CAP {
        return Err(format!(
            "witness count {} outside 1..={WITNESS_CAP}",
            witnesses.len()
        ));
    }
    if (witnesses.len() as u64) > num_maximizers {
        return Err("more witnesses than maximizers".into());
    }
    Ok(SearchRecord {
        n,
        sigma,
        quotient,
        max_count,
        density,
        witnesses,
        num_maximizers,
        words_examined,
        elapsed_ms,
    })
}

/// Reads the rows already on disk. A missing or empty file yields no rows.
fn load_existing(path: &Path, config: &CampaignConfig) -> Result<Vec<SearchRecord>> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(io_error(path, e)),
    };
    if text.is_empty() {
        return Ok(Vec::new());
    }
    if !text.ends_with('\n') {
        return Err(corrupt(path, text.lines().count(), "truncated final row"));
    }
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(corrupt(path, 1, "unexpected header"));
    }
    let mut rows = Vec::new();
    for (idx, line) in lines.enumerate() {
        let lineno = idx + 2;
        let r = parse_row(line).map_err(|reason| corrupt(path, lineno, reason))?;
        let expect_n = config.n_min + idx;
        if r.n != expect_n {
            return Err(corrupt(
                path,
                lineno,
                format!("expected n = {expect_n}, found {}", r.n),
            ));
        }
        if r.sigma != config.sigma || r.quotient != config.mode {
            return Err(corrupt(
                path,
                lineno,
                format!(
                    "row is sigma={} {}, campaign is sigma={} {}",
                    r.sigma, r.quotient, config.sigma, config.mode
                ),
            ));
        }
        rows.push(r);
    }
    Ok(rows)
}

fn run_one(n: usize, config: &CampaignConfig) -> Result<SearchRecord> {
    let mut r = match config.mode {
        SearchMode::Exhaustive(q) => max_square_density(n, config.sigma, q, &config.options)?,
        SearchMode::Sampled => sample_square_density(
            n,
            config.sigma,
            config.samples,
            config.seed,
            config.options.jobs,
        )?,
    };
    if !config.record_timing {
        r.elapsed_ms = 0;
    }
    Ok(r)
}

/// Runs `n_min..=n_max`, appending each finished row to `output`. Rows
/// already present are kept as they are; `on_row` sees every record in order,
/// with a flag telling whether it was computed in this run.
pub fn search_campaign(
    config: &CampaignConfig,
    output: impl AsRef<Path>,
    mut on_row: impl FnMut(&SearchRecord, bool),
) -> Result<CampaignOutcome> {
    let path: PathBuf = output.as_ref().to_path_buf();
    if config.n_min == 0 || config.n_min > config.n_max {
        return Err(Error::InvalidParameter(format!(
            "invalid range {}..={}",
            config.n_min, config.n_max
        )));
    }
    if config.mode == SearchMode::Sampled && config.samples == 0 {
        return Err(Error::InvalidParameter(
            "sampled mode needs samples > 0".into(),
        ));
    }
    let existing = load_existing(&path, config)?;
    let mut records: Vec<SearchRecord> = existing
        .into_iter()
        .filter(|r| r.n <= config.n_max)
        .collect();
    let resumed = records.len();
    for r in &records {
        on_row(r, false);
    }
    let next_n = config.n_min + resumed;
    if next_n > config.n_max {
        return Ok(CampaignOutcome {
            records,
            resumed,
            computed: 0,
        });
    }

    let fresh = !path.exists()
        || std::fs::metadata(&path)
            .map_err(|e| io_error(&path, e))?
            .len()
            == 0;
    let file: File = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&path)
        .map_err(|e| io_error(&path, e))?;
    let mut out = BufWriter::new(file);
    if fresh {
        writeln!(out, "{CSV_HEADER}").map_err(|e| io_error(&path, e))?;
        out.flush().map_err(|e| io_error(&path, e))?;
    }
    let mut computed = 0;
    for n in next_n..=config.n_max {
        let r = run_one(n, config)?;
        writeln!(out, "{}", format_row(&r)).map_err(|e| io_error(&path, e))?;
        out.flush().map_err(|e| io_error(&path, e))?;
        on_row(&r, true);
        records.push(r);
        computed += 1;
    }
    Ok(CampaignOutcome {
        records,
        resumed,
        computed,
    })
}
