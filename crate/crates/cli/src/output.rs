use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Tsv,
    Json,
}

/// A payload that can be rendered as one headered table.
pub trait Tabular {
    fn header(&self) -> Vec<&'static str>;
    fn rows(&self) -> Vec<Vec<String>>;
}

pub fn emit<T: Serialize + Tabular>(
    out: &mut impl Write,
    format: Format,
    payload: &T,
) -> anyhow::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, payload)?;
            writeln!(out)?;
        }
        Format::Tsv => {
            writeln!(out, "{}", payload.header().join("\t"))?;
            for row in payload.rows() {
                writeln!(out, "{}", row.join("\t"))?;
            }
        }
    }
    Ok(())
}
