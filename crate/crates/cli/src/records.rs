//! Result records and their CSV / JSON-lines encodings.

use std::fs::OpenOptions;
use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Serial,
    Naive,
    Balanced,
    Oracle,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Serial => "serial",
            Algorithm::Naive => "naive",
            Algorithm::Balanced => "balanced",
            Algorithm::Oracle => "oracle",
        }
    }
}

/// One timed solve of a whole batch by one algorithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run_id: String,
    pub algorithm: Algorithm,
    pub batch: usize,
    pub lp_size: usize,
    pub seed: u64,
    pub wall_time_ns: u64,
    pub work_units: u64,
    pub violation_events: u64,
    pub imbalance: f64,
    /// Sum of optimal values in batch order; infeasible problems add 0.
    pub value_checksum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContentionRecord {
    pub run_id: String,
    pub strategy: String,
    pub contention: usize,
    pub rep: usize,
    pub elements: usize,
    pub wall_time_ns: u64,
    /// Sum of `min + max` over all slots.
    pub checksum: f64,
}

/// Naive over balanced wall time for one configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeedupRow {
    pub batch: usize,
    pub lp_size: usize,
    pub seed: u64,
    pub naive_ns: Option<u64>,
    pub balanced_ns: Option<u64>,
    pub ratio: Option<f64>,
}

pub const GAP: &str = "gap";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
}

/// Records whose non-timing fields can be compared across runs.
pub trait Record: Serialize {
    fn without_timing(&self) -> Self;
    /// CSV fields in header order.
    fn csv_fields(&self) -> Vec<String>;
    fn csv_header() -> &'static [&'static str];
}

impl Record for RunRecord {
    fn without_timing(&self) -> Self {
        RunRecord {
            wall_time_ns: 0,
            ..self.clone()
        }
    }

    fn csv_header() -> &'static [&'static str] {
        &[
            "run_id",
            "algorithm",
            "batch",
            "lp_size",
            "seed",
            "wall_time_ns",
            "work_units",
            "violation_events",
            "imbalance",
            "value_checksum",
        ]
    }

    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.run_id.clone(),
            self.algorithm.name().to_string(),
            self.batch.to_string(),
            self.lp_size.to_string(),
            self.seed.to_string(),
            self.wall_time_ns.to_string(),
            self.work_units.to_string(),
            self.violation_events.to_string(),
            self.imbalance.to_string(),
            self.value_checksum.to_string(),
        ]
    }
}

impl Record for ContentionRecord {
    fn without_timing(&self) -> Self {
        ContentionRecord {
            wall_time_ns: 0,
            ..self.clone()
        }
    }

    fn csv_header() -> &'static [&'static str] {
        &["run_id", "strategy", "contention", "rep", "elements", "wall_time_ns", "checksum"]
    }

    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.run_id.clone(),
            self.strategy.clone(),
            self.contention.to_string(),
            self.rep.to_string(),
            self.elements.to_string(),
            self.wall_time_ns.to_string(),
            self.checksum.to_string(),
        ]
    }
}

impl Record for SpeedupRow {
    fn without_timing(&self) -> Self {
        SpeedupRow {
            naive_ns: self.naive_ns.map(|_| 0),
            balanced_ns: self.balanced_ns.map(|_| 0),
            ratio: self.ratio.map(|_| 0.0),
            ..self.clone()
        }
    }

    fn csv_header() -> &'static [&'static str] {
        &["batch", "lp_size", "seed", "naive_ns", "balanced_ns", "ratio"]
    }

    fn csv_fields(&self) -> Vec<String> {
        let or_gap = |v: Option<String>| v.unwrap_or_else(|| GAP.to_string());
        vec![
            self.batch.to_string(),
            self.lp_size.to_string(),
            self.seed.to_string(),
            or_gap(self.naive_ns.map(|v| v.to_string())),
            or_gap(self.balanced_ns.map(|v| v.to_string())),
            or_gap(self.ratio.map(|v| v.to_string())),
        ]
    }
}

/// Encodes records; the CSV header is written only when `header` is set.
pub fn encode<R: Record>(records: &[R], format: Format, header: bool) -> anyhow::Result<Vec<u8>> {
    let mut out = Vec::new();
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(&mut out);
            if header {
                w.write_record(R::csv_header())?;
            }
            for r in records {
                w.write_record(r.csv_fields())?;
            }
            w.flush()?;
        }
        Format::Jsonl => {
            for r in records {
                serde_json::to_writer(&mut out, r)?;
                out.push(b'\n');
            }
        }
    }
    Ok(out)
}

/// Appends to `path` (header only if the file is new or empty), or writes to
/// stdout with a header.
pub fn emit<R: Record>(records: &[R], format: Format, path: Option<&Path>) -> anyhow::Result<()> {
    match path {
        Some(path) => {
            let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
            let bytes = encode(records, format, fresh)?;
            let mut f = OpenOptions::new().create(true).append(true).open(path)?;
            f.write_all(&bytes)?;
        }
        None => {
            let bytes = encode(records, format, true)?;
            io::stdout().lock().write_all(&bytes)?;
        }
    }
    Ok(())
}

/// Reads run records from CSV (with header) or JSON lines.
pub fn read_run_records(text: &str, format: Format) -> anyhow::Result<Vec<RunRecord>> {
    match format {
        Format::Csv => {
            let mut r = csv::Reader::from_reader(text.as_bytes());
            Ok(r.deserialize().collect::<Result<_, _>>()?)
        }
        Format::Jsonl => text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| Ok(serde_json::from_str(l)?))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(alg: Algorithm, ns: u64) -> RunRecord {
        RunRecord {
            run_id: format!("{}-x", alg.name()),
            algorithm: alg,
            batch: 4,
            lp_size: 8,
            seed: 3,
            wall_time_ns: ns,
            work_units: 100,
            violation_events: 7,
            imbalance: 1.25,
            value_checksum: -0.1,
        }
    }

    #[test]
    fn csv_round_trip_preserves_floats() {
        let recs = vec![record(Algorithm::Naive, 10), record(Algorithm::Balanced, 5)];
        let bytes = encode(&recs, Format::Csv, true).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        assert!(text.starts_with("run_id,algorithm,batch,lp_size,seed,wall_time_ns,"));
        assert_eq!(read_run_records(&text, Format::Csv).unwrap(), recs);
    }

    #[test]
    fn jsonl_round_trip() {
        let recs = vec![record(Algorithm::Serial, 1), record(Algorithm::Oracle, 2)];
        let text = String::from_utf8(encode(&recs, Format::Jsonl, true).unwrap()).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert_eq!(read_run_records(&text, Format::Jsonl).unwrap(), recs);
    }

    #[test]
    fn speedup_gaps_are_explicit() {
        let row = SpeedupRow {
            batch: 1,
            lp_size: 2,
            seed: 3,
            naive_ns: Some(10),
            balanced_ns: None,
            ratio: None,
        };
        assert_eq!(row.csv_fields()[3..], ["10", "gap", "gap"]);
    }

    #[test]
    fn appending_writes_one_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("runs.csv");
        let recs = vec![record(Algorithm::Naive, 10)];
        emit(&recs, Format::Csv, Some(&path)).unwrap();
        emit(&recs, Format::Csv, Some(&path)).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert_eq!(text.matches("run_id").count(), 1);
    }
}
