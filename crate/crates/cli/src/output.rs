use std::io::Write;

use serde::Serialize;

use crate::cli::Format;
use crate::error::CliResult;

pub fn write_table<T: Serialize, W: Write>(rows: &[T], format: Format, out: &mut W) -> CliResult<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}
