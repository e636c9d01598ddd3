//! Append-only JSON-lines cache for search results, keyed by
//! (n, d, r, seed).

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::search::SearchReport;
use crate::weights::WeightFunction;
use serde::{Deserialize, Serialize};
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CacheRecord {
    pub n: usize,
    pub d: usize,
    pub r: usize,
    pub seed: u64,
    pub restarts: usize,
    pub best_phi: u64,
    pub best_f: Vec<String>,
    pub method: String,
}

impl CacheRecord {
    pub fn from_report(report: &SearchReport, restarts: usize) -> Self {
        CacheRecord {
            n: report.n,
            d: report.d,
            r: report.r,
            seed: report.seed,
            restarts,
            best_phi: report.best_phi,
            best_f: report.best_f.values().iter().map(|v| v.to_string()).collect(),
            method: report.method.clone(),
        }
    }

    pub fn weight_function(&self) -> Result<WeightFunction> {
        let values = self
            .best_f
            .iter()
            .map(|s| s.parse::<Rational>())
            .collect::<Result<Vec<_>>>()?;
        WeightFunction::new(values)
    }
}

#[derive(Debug, Clone)]
pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Cache { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// All records, oldest first. A missing file is an empty cache.
    pub fn load_all(&self) -> Result<Vec<CacheRecord>> {
        let file = match std::fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        let mut out = Vec::new();
        for (idx, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let record: CacheRecord = serde_json::from_str(&line).map_err(|e| Error::Parse {
                line: idx + 1,
                msg: format!("bad cache line: {e}"),
            })?;
            out.push(record);
        }
        Ok(out)
    }

    /// Most recent record for the exact key (n, d, r, seed).
    pub fn lookup(&self, n: usize, d: usize, r: usize, seed: u64) -> Result<Option<CacheRecord>> {
        Ok(self
            .load_all()?
            .into_iter()
            .rev()
            .find(|rec| rec.n == n && rec.d == d && rec.r == r && rec.seed == seed))
    }

    /// Best cached phi per (n,d,r) across all seeds, for table rendering.
    pub fn best_phi(&self, n: usize, d: usize, r: usize) -> Result<Option<u64>> {
        Ok(self
            .load_all()?
            .into_iter()
            .filter(|rec| rec.n == n && rec.d == d && rec.r == r)
            .map(|rec| rec.best_phi)
            .min())
    }

    pub fn append(&self, record: &CacheRecord) -> Result<()> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        let line = serde_json::to_string(record)
            .map_err(|e| Error::Io(format!("cache serialization: {e}")))?;
        writeln!(file, "{line}")?;
        Ok(())
    }
}
