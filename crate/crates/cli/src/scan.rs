//! Parallel range scans with ordered output.

use std::io::{self, Write};

use num_bigint::BigUint;
use perfect_forge::{factorize, Class};
use rayon::prelude::*;

use crate::records::ScanRecord;
use crate::CliError;

const CHUNK: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Jsonl,
    Csv,
    Bfile,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanConfig {
    pub lo: u64,
    pub hi: u64,
    pub classes: Vec<Class>,
    pub workers: usize,
    pub output_format: OutputFormat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanHit {
    pub n: u64,
    pub class: Class,
    pub order: Option<BigUint>,
}

impl ScanConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.lo < 2 {
            return Err(CliError::Usage(format!("--lo must be at least 2, got {}", self.lo)));
        }
        if self.hi < self.lo {
            return Err(CliError::Usage(format!("--hi {} is below --lo {}", self.hi, self.lo)));
        }
        if self.workers == 0 {
            return Err(CliError::Usage("--workers must be positive".into()));
        }
        if self.classes.is_empty() {
            return Err(CliError::Usage("at least one --class is required".into()));
        }
        if self.output_format == OutputFormat::Bfile && self.classes.len() != 1 {
            return Err(CliError::Usage("b-file output takes exactly one class".into()));
        }
        Ok(())
    }
}

fn hits_for(n: u64, classes: &[Class]) -> Result<Vec<ScanHit>, CliError> {
    let f = factorize(n).map_err(CliError::from)?;
    let mut out = Vec::new();
    for &class in classes {
        if let Some(m) = class.membership(&f).map_err(|e| CliError::Usage(format!("n = {n}: {e}")))? {
            out.push(ScanHit { n, class, order: m.order });
        }
    }
    Ok(out)
}

/// Feeds every member of `[lo, hi]` to `sink`, ascending in `n` and in
/// command-line class order for equal `n`. The order does not depend on
/// the worker count.
pub fn scan_members(
    config: &ScanConfig,
    mut sink: impl FnMut(&ScanHit) -> io::Result<()>,
) -> Result<(), CliError> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut start = config.lo;
    loop {
        let end = start.saturating_add(CHUNK - 1).min(config.hi);
        let chunk: Vec<Vec<ScanHit>> = pool.install(|| {
            (start..=end)
                .into_par_iter()
                .map(|n| hits_for(n, &config.classes))
                .collect::<Result<_, _>>()
        })?;
        for hit in chunk.iter().flatten() {
            sink(hit)?;
        }
        if end == config.hi {
            return Ok(());
        }
        start = end + 1;
    }
}

pub fn record(hit: &ScanHit) -> ScanRecord {
    ScanRecord {
        n: hit.n.to_string(),
        class: hit.class.name().to_string(),
        order: hit.order.as_ref().map(BigUint::to_string),
    }
}

/// Runs the scan and writes it in the configured format.
pub fn write_scan(config: &ScanConfig, out: &mut dyn Write) -> Result<(), CliError> {
    match config.output_format {
        OutputFormat::Jsonl => scan_members(config, |hit| {
            serde_json::to_writer(&mut *out, &record(hit))?;
            out.write_all(b"\n")
        }),
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(&mut *out);
            w.write_record(["n", "class", "order"]).map_err(io::Error::from)?;
            scan_members(config, |hit| w.serialize(record(hit)).map_err(io::Error::from))?;
            w.flush()?;
            Ok(())
        }
        OutputFormat::Bfile => {
            let mut index = 0u64;
            scan_members(config, |hit| {
                index += 1;
                writeln!(out, "{index} {}", hit.n)
            })
        }
    }
}
