//! CSV import/export of sampled signals.
//!
//! Layout: one column per signal, first row a header of signal names. Cell
//! values are either plain reals (`1.5`, `-2e-3`) or complex literals in
//! `re±imj` form (`0.75-0.25j`, `2j`, `-j`); [`parse_complex`] accepts both
//! `j` and `i` as the imaginary unit, [`format_complex`] writes `j`.

use std::io;

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tensor::Matrix;

/// Parses a real or complex literal.
pub fn parse_complex(raw: &str) -> Result<Complex64> {
    let s = raw.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty complex literal".into()));
    }
    let z = match s.strip_suffix(['j', 'i']) {
        None => Complex64::new(parse_real(s)?, 0.0),
        Some(body) => {
            // Split before the sign of the imaginary part: the rightmost
            // '+'/'-' that is neither leading nor an exponent sign.
            let bytes = body.as_bytes();
            let split = (1..bytes.len())
                .rev()
                .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
            match split {
                Some(k) => Complex64::new(parse_real(&body[..k])?, parse_imag(&body[k..])?),
                None => Complex64::new(0.0, parse_imag(body)?),
            }
        }
    };
    if !z.is_finite() {
        return Err(Error::Parse(format!("non-finite value `{s}`")));
    }
    Ok(z)
}

fn parse_real(s: &str) -> Result<f64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad numeric literal `{s}`")))
}

/// The part in front of the imaginary unit; a bare sign means ±1.
fn parse_imag(s: &str) -> Result<f64> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_real(s),
    }
}

/// Formats a complex value so that [`parse_complex`] round-trips it: plain
/// real when the imaginary part is exactly zero, `re±imj` otherwise.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}j", z.re, z.im)
    }
}

/// Reads named signal columns from CSV: header row, then one value per
/// column per row. All columns share the row count (ragged input errors).
pub fn read_signals_csv<R: io::Read>(reader: R) -> Result<(Vec<String>, Vec<Vec<Complex64>>)> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let names: Vec<String> = csv
        .headers()
        .map_err(|e| Error::Parse(format!("bad CSV header: {e}")))?
        .iter()
        .map(str::to_owned)
        .collect();
    if names.is_empty() {
        return Err(Error::Parse("CSV has no columns".into()));
    }
    let mut columns: Vec<Vec<Complex64>> = vec![Vec::new(); names.len()];
    for (row, record) in csv.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(format!("bad CSV row: {e}")))?;
        if record.len() != names.len() {
            return Err(Error::Parse(format!(
                "row {} has {} fields, header has {}",
                row + 2,
                record.len(),
                names.len()
            )));
        }
        for (col, cell) in record.iter().enumerate() {
            columns[col].push(parse_complex(cell).map_err(|e| {
                Error::Parse(format!("column `{}`, row {}: {e}", names[col], row + 2))
            })?);
        }
    }
    Ok((names, columns))
}

/// Writes named signal columns as CSV (inverse of [`read_signals_csv`]).
pub fn write_signals_csv<W: io::Write>(
    writer: W,
    names: &[String],
    columns: &[Vec<Complex64>],
) -> Result<()> {
    if names.len() != columns.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} names for {} columns",
            names.len(),
            columns.len()
        )));
    }
    let rows = columns.first().map_or(0, Vec::len);
    if columns.iter().any(|c| c.len() != rows) {
        return Err(Error::ShapeMismatch("signal columns differ in length".into()));
    }
    let mut csv = csv::Writer::from_writer(writer);
    csv.write_record(names).map_err(|e| Error::Parse(e.to_string()))?;
    for row in 0..rows {
        csv.write_record(columns.iter().map(|c| format_complex(c[row])))
            .map_err(|e| Error::Parse(e.to_string()))?;
    }
    csv.flush()?;
    Ok(())
}

/// Stacks equal-length columns into an `N×J` matrix (column `j` = signal `j`).
pub fn columns_to_matrix(columns: &[Vec<Complex64>]) -> Result<Matrix> {
    let rows = columns.first().map_or(0, Vec::len);
    if rows == 0 {
        return Err(Error::InvalidDims("no signal data".into()));
    }
    if columns.iter().any(|c| c.len() != rows) {
        return Err(Error::ShapeMismatch("signal columns differ in length".into()));
    }
    Ok(Array2::from_shape_fn((rows, columns.len()), |(k, j)| columns[j][k]))
}

/// The columns of an `N×J` matrix as owned vectors.
pub fn matrix_columns(m: &Matrix) -> Vec<Vec<Complex64>> {
    m.columns().into_iter().map(|c| c.to_vec()).collect()
}
