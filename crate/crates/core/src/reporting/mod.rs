//! Saturation reports and their CSV / plot exports.

mod facts;

pub use facts::{emit_fact, parse_fact, FactClause, FactError};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::inventory::PatternInventory;
use crate::resolution::{ResolutionRecord, ResolutionStatus};

pub const CSV_HEADER: [&str; 6] = [
    "fragment_id",
    "primitives",
    "new_patterns",
    "cum_new_patterns",
    "resolutions",
    "cum_resolutions",
];

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("bad csv header: {0}")]
    Header(String),
    #[error("bad csv row {row}: {message}")]
    Row { row: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub fragment_id: usize,
    pub primitives: usize,
    pub new_patterns: usize,
    pub cum_new_patterns: usize,
    pub resolutions: usize,
    pub cum_resolutions: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReportTotals {
    pub primitives: usize,
    pub new_patterns: usize,
    pub resolutions: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SaturationReport {
    pub rows: Vec<ReportRow>,
}

impl SaturationReport {
    /// Builds rows from `(fragment_id, primitives, new_patterns, resolutions)`.
    pub fn from_counts(counts: impl IntoIterator<Item = (usize, usize, usize, usize)>) -> Self {
        let mut cum_new = 0;
        let mut cum_res = 0;
        let rows = counts
            .into_iter()
            .map(|(fragment_id, primitives, new_patterns, resolutions)| {
                cum_new += new_patterns;
                cum_res += resolutions;
                ReportRow {
                    fragment_id,
                    primitives,
                    new_patterns,
                    cum_new_patterns: cum_new,
                    resolutions,
                    cum_resolutions: cum_res,
                }
            })
            .collect();
        SaturationReport { rows }
    }

    /// Report from the inventory's own counters.
    pub fn from_inventory(inv: &PatternInventory) -> Self {
        Self::from_counts(
            inv.counters()
                .per_fragment
                .iter()
                .map(|f| (f.fragment_id, f.primitives, f.new_patterns, f.resolutions)),
        )
    }

    pub fn totals(&self) -> ReportTotals {
        ReportTotals {
            primitives: self.rows.iter().map(|r| r.primitives).sum(),
            new_patterns: self.rows.iter().map(|r| r.new_patterns).sum(),
            resolutions: self.rows.iter().map(|r| r.resolutions).sum(),
        }
    }
}

/// Builds the report from an inventory and the resolution audit. Resolved
/// records are attributed to the fragment holding their trigger.
pub fn build_report(inv: &PatternInventory, records: &[ResolutionRecord]) -> SaturationReport {
    let resolved_in = |fid: usize| {
        records
            .iter()
            .filter(|r| r.status == ResolutionStatus::Resolved && r.anaphor_span.fragment_id == fid)
            .count()
    };
    SaturationReport::from_counts(inv.counters().per_fragment.iter().map(|f| {
        (
            f.fragment_id,
            f.primitives,
            f.new_patterns,
            resolved_in(f.fragment_id),
        )
    }))
}

/// CSV text: header, one line per fragment, then a `total` line.
pub fn export_csv(report: &SaturationReport) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in &report.rows {
        w.write_record(
            [
                r.fragment_id,
                r.primitives,
                r.new_patterns,
                r.cum_new_patterns,
                r.resolutions,
                r.cum_resolutions,
            ]
            .map(|v| v.to_string()),
        )
        .expect("in-memory write");
    }
    let t = report.totals();
    w.write_record([
        "total".to_string(),
        t.primitives.to_string(),
        t.new_patterns.to_string(),
        t.new_patterns.to_string(),
        t.resolutions.to_string(),
        t.resolutions.to_string(),
    ])
    .expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii csv")
}

/// Parses [`export_csv`] output back into rows; the totals line is checked
/// and skipped.
pub fn parse_csv(text: &str) -> Result<SaturationReport, ReportError> {
    let mut rdr = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(ReportError::Header(header.join(",")));
    }
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        if rec.get(0) == Some("total") {
            continue;
        }
        let nums: Result<Vec<usize>, _> = rec.iter().map(str::parse::<usize>).collect();
        let nums = nums.map_err(|e| ReportError::Row {
            row: i + 1,
            message: e.to_string(),
        })?;
        let [fragment_id, primitives, new_patterns, cum_new_patterns, resolutions, cum_resolutions] =
            nums[..]
        else {
            return Err(ReportError::Row {
                row: i + 1,
                message: format!("expected 6 fields, found {}", nums.len()),
            });
        };
        rows.push(ReportRow {
            fragment_id,
            primitives,
            new_patterns,
            cum_new_patterns,
            resolutions,
            cum_resolutions,
        });
    }
    Ok(SaturationReport { rows })
}

#[derive(Serialize)]
struct Series {
    name: &'static str,
    points: Vec<[usize; 2]>,
}

/// Plot data: cumulative new patterns and cumulative resolutions per fragment.
pub fn export_plotdata(report: &SaturationReport) -> serde_json::Value {
    let series = [
        Series {
            name: "cumulative_new_patterns",
            points: report
                .rows
                .iter()
                .map(|r| [r.fragment_id, r.cum_new_patterns])
                .collect(),
        },
        Series {
            name: "cumulative_resolutions",
            points: report
                .rows
                .iter()
                .map(|r| [r.fragment_id, r.cum_resolutions])
                .collect(),
        },
    ];
    serde_json::json!({ "series": series })
}
