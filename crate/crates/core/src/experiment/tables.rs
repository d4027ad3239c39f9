//! CSV tables with fixed headers and their JSON mirrors.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::{json, Value};

use super::{BoundsRow, ExperimentConfig, HeightRow, ProbEstimate, ValencyRow};

/// A record type with a fixed CSV header.
pub trait TableRow: Serialize {
    const HEADER: &'static [&'static str];
}

impl<R: TableRow> TableRow for &R {
    const HEADER: &'static [&'static str] = R::HEADER;
}

impl TableRow for ProbEstimate {
    const HEADER: &'static [&'static str] = &["n", "trials", "successes", "p_hat", "ci_low", "ci_high", "sentence", "seed"];
}

impl TableRow for BoundsRow {
    const HEADER: &'static [&'static str] = &[
        "n",
        "trial",
        "root",
        "k",
        "level_size",
        "bound_c1",
        "bound_cC",
        "threshold_mid",
        "within",
    ];
}

impl TableRow for ValencyRow {
    const HEADER: &'static [&'static str] = &["n", "trials", "mean_deg2", "target", "band_lo", "band_hi", "frac_in_band"];
}

impl TableRow for HeightRow {
    const HEADER: &'static [&'static str] = &["n", "trial", "height", "floor_loglog", "meets_floor"];
}

/// Writes the header row followed by one line per record.
pub fn write_csv<W, R, I>(out: W, rows: I) -> io::Result<()>
where
    W: Write,
    R: TableRow,
    I: IntoIterator<Item = R>,
{
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(R::HEADER)?;
    for row in rows {
        w.serialize(row).map_err(io::Error::other)?;
    }
    w.flush()
}

/// `{"config": .., "rows": [..], "summary": ..}`.
pub fn json_mirror<R: Serialize, S: Serialize>(
    config: &ExperimentConfig,
    rows: impl IntoIterator<Item = R>,
    summary: Option<S>,
) -> Value {
    let rows: Vec<Value> = rows
        .into_iter()
        .map(|r| serde_json::to_value(r).expect("rows serialize"))
        .collect();
    let mut doc = json!({ "config": config, "rows": rows });
    if let Some(s) = summary {
        doc["summary"] = serde_json::to_value(s).expect("summary serializes");
    }
    doc
}
