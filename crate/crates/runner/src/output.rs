//! CSV and JSON result files.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::config::Format;
use crate::error::{Result, RunError};
use crate::experiment::ResultRow;

pub const COLUMNS: [&str; 9] = [
    "experiment",
    "alpha",
    "value",
    "stderr",
    "calls",
    "entanglement",
    "seed",
    "shards",
    "walltime_s",
];

/// Writes rows to `path`; floats use shortest round-trip decimals.
pub fn write_results(rows: &[ResultRow], format: Format, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|source| RunError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut w = BufWriter::new(file);
    write_to(rows, format, &mut w, path)?;
    w.flush().map_err(|source| RunError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes rows to any sink; `label` names it in errors.
pub fn write_to<W: Write>(rows: &[ResultRow], format: Format, sink: W, label: &Path) -> Result<()> {
    match format {
        Format::Csv => {
            let csv_err = |source| RunError::Csv {
                path: label.to_path_buf(),
                source,
            };
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(sink);
            w.write_record(COLUMNS).map_err(csv_err)?;
            for row in rows {
                w.serialize(row).map_err(csv_err)?;
            }
            w.flush().map_err(|source| RunError::Io {
                path: label.to_path_buf(),
                source,
            })
        }
        Format::Json => {
            let mut sink = sink;
            serde_json::to_writer_pretty(&mut sink, rows).map_err(|source| RunError::Json {
                path: label.to_path_buf(),
                source,
            })?;
            sink.write_all(b"\n").map_err(|source| RunError::Io {
                path: label.to_path_buf(),
                source,
            })
        }
    }
}

pub fn read_results(format: Format, path: &Path) -> Result<Vec<ResultRow>> {
    let mut text = String::new();
    File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|source| RunError::Io {
            path: path.to_path_buf(),
            source,
        })?;
    match format {
        Format::Csv => csv::Reader::from_reader(text.as_bytes())
            .deserialize()
            .collect::<std::result::Result<Vec<ResultRow>, _>>()
            .map_err(|source| RunError::Csv {
                path: path.to_path_buf(),
                source,
            }),
        Format::Json => serde_json::from_str(&text).map_err(|source| RunError::Json {
            path: path.to_path_buf(),
            source,
        }),
    }
}
