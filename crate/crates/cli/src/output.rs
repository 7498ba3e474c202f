//! CSV and JSON serialisation of command results.

use std::io::Write;

use gausscap::BoundResult;

use crate::error::CliError;

pub const BOUNDS_COLUMNS: [&str; 7] = [
    "N",
    "holevo",
    "maximal",
    "upper",
    "lower_approx",
    "coherent_info",
    "coherent_lower",
];

/// One CSV row in [`BOUNDS_COLUMNS`] order; `None` is an empty field.
pub type BoundsRow = [Option<f64>; 7];

pub fn row_of(r: &BoundResult) -> BoundsRow {
    [
        Some(r.n),
        r.holevo,
        Some(r.maximal),
        Some(r.upper),
        Some(r.lower_approx),
        Some(r.coherent_info),
        Some(r.coherent_lower),
    ]
}

/// 17 significant digits, which round-trips every `f64`.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_rows_csv<W: Write>(out: W, rows: &[BoundsRow]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(BOUNDS_COLUMNS)?;
    for row in rows {
        w.write_record(row.iter().map(|v| v.map(format_value).unwrap_or_default()))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_bounds_csv<W: Write>(out: W, results: &[BoundResult]) -> Result<(), CliError> {
    let rows: Vec<BoundsRow> = results.iter().map(row_of).collect();
    write_rows_csv(out, &rows)
}

pub fn parse_bounds_csv(text: &str) -> Result<Vec<BoundsRow>, CliError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
    if header != BOUNDS_COLUMNS {
        return Err(CliError::Io(format!("unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let mut row: BoundsRow = [None; 7];
        for (slot, field) in row.iter_mut().zip(record.iter()) {
            if !field.is_empty() {
                *slot = Some(
                    field
                        .parse()
                        .map_err(|e| CliError::Io(format!("bad number {field:?}: {e}")))?,
                );
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn write_json<W: Write, T: serde::Serialize + ?Sized>(mut out: W, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_is_byte_identical() {
        let rows: Vec<BoundsRow> = vec![
            [Some(0.0), Some(1.0 / 3.0), Some(2.5e-17), Some(-0.0), Some(1e300), Some(f64::MIN_POSITIVE), Some(-7.25)],
            [Some(1.0), None, Some(std::f64::consts::PI), Some(0.1), Some(0.2), Some(0.30000000000000004), Some(-1e-9)],
        ];
        let mut first = Vec::new();
        write_rows_csv(&mut first, &rows).unwrap();
        let text = String::from_utf8(first.clone()).unwrap();
        let parsed = parse_bounds_csv(&text).unwrap();
        assert_eq!(parsed.len(), 2);
        for (a, b) in parsed.iter().flatten().zip(rows.iter().flatten()) {
            assert_eq!(a.map(f64::to_bits), b.map(f64::to_bits));
        }
        let mut second = Vec::new();
        write_rows_csv(&mut second, &parsed).unwrap();
        assert_eq!(first, second);
        assert!(text.starts_with("N,holevo,maximal,upper,lower_approx,coherent_info,coherent_lower\n"));
    }

    #[test]
    fn rejects_foreign_header() {
        assert!(parse_bounds_csv("a,b\n1,2\n").is_err());
    }
}
