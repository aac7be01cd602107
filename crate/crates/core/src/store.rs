//! Persistent per-prime cache of normalized Gauss sums, report envelopes and table export.
//!
//! The cache is a CSV file holding every split prime `p <= P` for some `P`, in order. It is only
//! ever extended at the end, by one writer at a time holding an exclusive lock on the file.

use std::fs::{File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, primes_up_to};
use crate::eisenstein::{split_rational_prime, EisensteinInt};
use crate::error::{Error, Result};
use crate::experiments::{ExperimentReport, KummerHistogram, KummerInterval};
use crate::gauss::{gauss_sum_prime, prime_sweep_range, GaussSumValue, PrimeGauss, Provenance};

pub const CACHE_MAGIC: &str = "# cubic-gauss-cache v1";
pub const CACHE_HEADER: &str = "p,a,b,re,im,err";
pub const CACHE_ENV: &str = "CUBIC_GAUSS_CACHE";
pub const DEFAULT_CACHE: &str = ".cubic-cache/gauss.csv";
pub const SCHEMA_VERSION: &str = "1";

/// Cached values with a larger error bound are recomputed on lookup.
pub const ACCEPTABLE_ERR: f64 = 1e-9;

/// `--cache` if given, else the environment variable, else a dot-directory under the working directory.
pub fn resolve_cache_path(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    match std::env::var_os(CACHE_ENV) {
        Some(v) if !v.is_empty() => PathBuf::from(v),
        _ => PathBuf::from(DEFAULT_CACHE),
    }
}

/// `g(pi)` at the canonical prime `pi = a + b w` above `p`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussCacheRecord {
    pub p: u64,
    pub a: i128,
    pub b: i128,
    pub re: f64,
    pub im: f64,
    pub err: f64,
}

impl GaussCacheRecord {
    pub fn pi(&self) -> EisensteinInt {
        EisensteinInt::new(self.a, self.b)
    }

    fn to_line(self) -> String {
        format!("{},{},{},{:.16e},{:.16e},{:.16e}\n", self.p, self.a, self.b, self.re, self.im, self.err)
    }

    fn parse(line: &str, lineno: usize) -> Result<Self> {
        let bad = |reason: String| Error::CorruptCache { line: lineno, reason };
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 6 {
            return Err(bad(format!("expected 6 fields, found {}", f.len())));
        }
        let int = |s: &str| s.trim().parse::<i128>().map_err(|e| bad(format!("{s:?}: {e}")));
        let float = |s: &str| s.trim().parse::<f64>().map_err(|e| bad(format!("{s:?}: {e}")));
        let p = int(f[0])?;
        let rec = GaussCacheRecord {
            p: u64::try_from(p).map_err(|_| bad(format!("p = {p} out of range")))?,
            a: int(f[1])?,
            b: int(f[2])?,
            re: float(f[3])?,
            im: float(f[4])?,
            err: float(f[5])?,
        };
        rec.validate().map_err(bad)?;
        Ok(rec)
    }

    fn validate(&self) -> std::result::Result<(), String> {
        let (p, a, b) = (self.p, self.a, self.b);
        if a * a - a * b + b * b != p as i128 {
            return Err(format!("a^2 - ab + b^2 = {} but p = {p}", a * a - a * b + b * b));
        }
        if p % 3 != 1 || !is_prime(p) {
            return Err(format!("{p} is not a prime congruent to 1 mod 3"));
        }
        let canon = split_rational_prime(p).map_err(|e| e.to_string())?.0;
        if canon != self.pi() {
            return Err(format!("{} is not the canonical prime {canon} above {p}", self.pi()));
        }
        if ![self.re, self.im, self.err].iter().all(|x| x.is_finite()) || self.err < 0.0 {
            return Err("non-finite value or negative error".into());
        }
        let modulus = (self.re * self.re + self.im * self.im - 1.0).abs();
        if modulus > self.err + 1e-12 {
            return Err(format!("|g|^2 - 1 = {modulus:e} exceeds err {:e}", self.err));
        }
        Ok(())
    }
}

impl From<PrimeGauss> for GaussCacheRecord {
    fn from(r: PrimeGauss) -> Self {
        GaussCacheRecord { p: r.p, a: r.pi.a, b: r.pi.b, re: r.value.re, im: r.value.im, err: r.err }
    }
}

impl From<GaussCacheRecord> for PrimeGauss {
    fn from(r: GaussCacheRecord) -> Self {
        PrimeGauss { p: r.p, pi: r.pi(), value: Complex64::new(r.re, r.im), err: r.err }
    }
}

/// A loaded snapshot of the cache file.
#[derive(Clone, Debug)]
pub struct GaussCache {
    path: PathBuf,
    records: Vec<GaussCacheRecord>,
}

impl GaussCache {
    /// Loads and validates the file; a missing file is an empty cache.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let records = match File::open(&path) {
            Ok(mut f) => {
                f.lock_shared()?;
                let mut text = String::new();
                f.read_to_string(&mut text)?;
                parse_cache(&text)?
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Vec::new(),
            Err(e) => return Err(e.into()),
        };
        Ok(GaussCache { path, records })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn records(&self) -> &[GaussCacheRecord] {
        &self.records
    }

    /// Largest cached prime, or 0.
    pub fn covered(&self) -> u64 {
        self.records.last().map_or(0, |r| r.p)
    }

    pub fn get(&self, p: u64) -> Option<&GaussCacheRecord> {
        self.records.binary_search_by_key(&p, |r| r.p).ok().map(|i| &self.records[i])
    }

    /// Makes the file cover every split prime `p <= x`, computing only what is missing.
    pub fn extend_to(&mut self, x: u64) -> Result<()> {
        if x <= self.covered() {
            return Ok(());
        }
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let mut f = OpenOptions::new().read(true).write(true).create(true).truncate(false).open(&self.path)?;
        f.lock()?;
        // another writer may have extended the file since the snapshot was taken
        let mut text = String::new();
        f.read_to_string(&mut text)?;
        let mut records = parse_cache(&text)?;
        let last = records.last().map_or(0, |r| r.p);
        let mut out = String::new();
        if text.is_empty() {
            out.push_str(&format!("{CACHE_MAGIC}\n{CACHE_HEADER}\n"));
        }
        if x > last {
            for r in prime_sweep_range(last, x)? {
                let rec = GaussCacheRecord::from(r);
                out.push_str(&rec.to_line());
                records.push(rec);
            }
        }
        f.seek(SeekFrom::End(0))?;
        f.write_all(out.as_bytes())?;
        f.sync_data()?;
        f.unlock()?;
        self.records = records;
        Ok(())
    }

    /// Sweep entries for every split prime `p <= x`, extending the file when needed.
    pub fn sweep(&mut self, x: u64) -> Result<Vec<PrimeGauss>> {
        self.extend_to(x)?;
        Ok(self.records.iter().take_while(|r| r.p <= x).map(|&r| r.into()).collect())
    }
}

fn parse_cache(text: &str) -> Result<Vec<GaussCacheRecord>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut lines = text.lines();
    if lines.next() != Some(CACHE_MAGIC) {
        return Err(Error::CorruptCache { line: 1, reason: format!("missing magic header {CACHE_MAGIC:?}") });
    }
    if lines.next() != Some(CACHE_HEADER) {
        return Err(Error::CorruptCache { line: 2, reason: format!("expected column header {CACHE_HEADER:?}") });
    }
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        records.push(GaussCacheRecord::parse(line, i + 3)?);
    }
    let last = records.last().map_or(0, |r| r.p);
    let expected = primes_up_to(last).into_iter().filter(|p| p % 3 == 1);
    for (i, (r, want)) in records.iter().zip(expected).enumerate() {
        if r.p != want {
            let reason = if r.p > want { format!("missing p = {want}") } else { format!("p = {} out of order", r.p) };
            return Err(Error::CorruptCache { line: i + 3, reason });
        }
    }
    Ok(records)
}

/// `g(pi)` at the canonical prime above `p`, from the cache when present with an acceptable error.
pub fn cache_get_or_compute(cache: &mut GaussCache, p: u64) -> Result<GaussSumValue> {
    let (pi, _) = split_rational_prime(p)?;
    if p > cache.covered() {
        cache.extend_to(p)?;
    }
    let rec = cache.get(p).copied().ok_or_else(|| Error::Numeric(format!("cache has no entry for {p}")))?;
    if rec.err > ACCEPTABLE_ERR {
        return gauss_sum_prime(pi);
    }
    Ok(GaussSumValue {
        value: Complex64::new(rec.re, rec.im),
        modulus_norm: p,
        provenance: Provenance::FastPrime,
        err_bound: rec.err,
    })
}

/// Self-describing wrapper around a command's results.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub schema_version: String,
    pub command: String,
    pub params: serde_json::Value,
    pub results: serde_json::Value,
    pub provenance: Vec<String>,
    pub wall_time: f64,
}

impl ReportEnvelope {
    pub fn new<T: Serialize>(
        command: &str,
        params: serde_json::Value,
        results: &T,
        provenance: Vec<String>,
        wall_time: f64,
    ) -> Result<Self> {
        Ok(ReportEnvelope {
            schema_version: SCHEMA_VERSION.into(),
            command: command.into(),
            params,
            results: serde_json::to_value(results).map_err(|e| Error::Serde(e.to_string()))?,
            provenance,
            wall_time,
        })
    }

    pub fn from_report(report: &ExperimentReport) -> Result<Self> {
        Self::new(
            &report.command,
            report.params.clone(),
            report,
            report.provenance.clone(),
            report.runtime_secs,
        )
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Serde(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let env: ReportEnvelope = serde_json::from_str(s).map_err(|e| Error::Serde(e.to_string()))?;
        if env.schema_version != SCHEMA_VERSION {
            return Err(Error::Serde(format!("unsupported schema version {:?}", env.schema_version)));
        }
        Ok(env)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Cell {
    Int(i128),
    Float(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Text(s) => s.clone(),
        }
    }

    fn parse(s: &str) -> Cell {
        if let Ok(v) = s.parse::<i128>() {
            Cell::Int(v)
        } else if let Ok(v) = s.parse::<f64>() {
            Cell::Float(v)
        } else {
            Cell::Text(s.to_string())
        }
    }
}

/// Rows for CSV export.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn from_kummer(h: &KummerHistogram) -> Self {
        let rows = h
            .angles
            .iter()
            .map(|a| {
                vec![
                    Cell::Int(a.p as i128),
                    Cell::Float(a.theta),
                    Cell::Float(a.cos2pitheta),
                    Cell::Text(KummerInterval::of(a.cos2pitheta).label().into()),
                ]
            })
            .collect();
        Table { header: ["p", "theta", "cos", "interval"].map(String::from).to_vec(), rows }
    }

    pub fn from_report(r: &ExperimentReport) -> Self {
        let rows = (0..r.checkpoints.len())
            .map(|i| {
                vec![
                    Cell::Float(r.checkpoints[i]),
                    Cell::Float(r.observed[i].re),
                    Cell::Float(r.observed[i].im),
                    Cell::Float(r.predicted[i]),
                    r.ratio[i].map_or(Cell::Text(String::new()), Cell::Float),
                    Cell::Float(r.err_bounds[i]),
                ]
            })
            .collect();
        let header = ["x", "observed_re", "observed_im", "predicted", "ratio", "err_bound"];
        Table { header: header.map(String::from).to_vec(), rows }
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(reader);
        let header = rd.headers().map_err(csv_err)?.iter().map(String::from).collect();
        let mut rows = Vec::new();
        for rec in rd.records() {
            rows.push(rec.map_err(csv_err)?.iter().map(Cell::parse).collect());
        }
        Ok(Table { header, rows })
    }
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => io.into(),
        other => Error::Serde(format!("{other:?}")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Csv,
    Json,
}

/// CSV writes the table with a header row; JSON writes the envelope.
pub fn export_table<W: Write>(envelope: &ReportEnvelope, table: &Table, format: ExportFormat, mut out: W) -> Result<()> {
    match format {
        ExportFormat::Json => {
            out.write_all(envelope.to_json()?.as_bytes())?;
            out.write_all(b"\n")?;
        }
        ExportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&table.header).map_err(csv_err)?;
            for row in &table.rows {
                w.write_record(row.iter().map(Cell::render)).map_err(csv_err)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
