//! Plain-text tensor serialization.
//!
//! The format is line-oriented and self-describing:
//!
//! ```text
//! tnsr 1 complex
//! 3 3 4
//! 0 0 1.5 -0.25 …
//! ```
//!
//! Line 1 is the magic `tnsr`, the format version (`1`), and the scalar kind
//! (`real` or `complex`). Line 2 lists the dimensions. The remaining tokens
//! are the values in first-index-fastest order — the same order as
//! [`DenseTensor::data`] — with complex values written as consecutive
//! `re im` pairs. Whitespace and line breaks between values are not
//! significant. The reader rejects anything with a wrong token count, so a
//! truncated file cannot silently load.

use std::io::{BufRead, Write};

use num_complex::Complex64;

use super::DenseTensor;
use crate::error::{Error, Result};

const MAGIC: &str = "tnsr";
const VERSION: &str = "1";

impl DenseTensor {
    /// Parses a tensor from the text format.
    pub fn read_tnsr(mut reader: impl BufRead) -> Result<DenseTensor> {
        let mut header = String::new();
        if reader.read_line(&mut header)? == 0 {
            return Err(Error::Parse("empty input, expected a tnsr header".into()));
        }
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != MAGIC {
            return Err(Error::Parse(format!(
                "bad header {:?}, expected \"tnsr 1 real|complex\"",
                header.trim_end()
            )));
        }
        if fields[1] != VERSION {
            return Err(Error::Parse(format!("unsupported tnsr version {:?}", fields[1])));
        }
        let complex = match fields[2] {
            "real" => false,
            "complex" => true,
            other => {
                return Err(Error::Parse(format!(
                    "unknown scalar kind {:?}, expected real or complex",
                    other
                )))
            }
        };

        let mut dims_line = String::new();
        if reader.read_line(&mut dims_line)? == 0 {
            return Err(Error::Parse("missing dimensions line".into()));
        }
        let dims: Vec<usize> = dims_line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad dimension {:?}", tok)))
            })
            .collect::<Result<_>>()?;

        let mut body = String::new();
        reader.read_to_string(&mut body)?;
        let mut values = Vec::new();
        for tok in body.split_whitespace() {
            let v: f64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad value {:?}", tok)))?;
            if !v.is_finite() {
                return Err(Error::Parse(format!("non-finite value {:?}", tok)));
            }
            values.push(v);
        }

        let len: usize = dims.iter().product();
        let expected = if complex { 2 * len } else { len };
        if values.len() != expected {
            return Err(Error::Parse(format!(
                "dims {:?} require {} {} values, found {}",
                dims,
                expected,
                if complex { "re/im" } else { "real" },
                values.len()
            )));
        }
        let data: Vec<Complex64> = if complex {
            values.chunks_exact(2).map(|p| Complex64::new(p[0], p[1])).collect()
        } else {
            values.iter().map(|&re| Complex64::new(re, 0.0)).collect()
        };
        DenseTensor::new(dims, data)
    }

    /// Writes the tensor in the text format.
    ///
    /// Chooses the `real` encoding when every imaginary part is exactly
    /// zero, `complex` otherwise, so real-valued data round-trips through
    /// the compact form. Values use shortest round-trip float formatting,
    /// making write → read lossless.
    pub fn write_tnsr(&self, mut writer: impl Write) -> Result<()> {
        let complex = self.data().iter().any(|z| z.im != 0.0);
        writeln!(writer, "{} {} {}", MAGIC, VERSION, if complex { "complex" } else { "real" })?;
        let dims: Vec<String> = self.dims().iter().map(|d| d.to_string()).collect();
        writeln!(writer, "{}", dims.join(" "))?;
        // one mode-0 fiber per line keeps files diffable without affecting
        // the parse
        let per_line = self.dims()[0];
        for chunk in self.data().chunks(per_line) {
            let line: Vec<String> = chunk
                .iter()
                .map(|z| {
                    if complex {
                        format!("{} {}", z.re, z.im)
                    } else {
                        format!("{}", z.re)
                    }
                })
                .collect();
            writeln!(writer, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn real_round_trip() {
        let t = DenseTensor::new(
            vec![2, 3],
            vec![0.5, -1.25, 3.0, 4.75, -0.125, 9.5].into_iter().map(|v| c(v, 0.0)).collect(),
        )
        .unwrap();
        let mut buf = Vec::new();
        t.write_tnsr(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("tnsr 1 real\n2 3\n"));
        let back = DenseTensor::read_tnsr(buf.as_slice()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn complex_round_trip_preserves_bits() {
        let t = DenseTensor::new(
            vec![2, 2],
            vec![
                c(1.0 / 3.0, -2.0 / 7.0),
                c(0.0, 1e-17),
                c(-5.5, 0.0),
                c(std::f64::consts::PI, -std::f64::consts::E),
            ],
        )
        .unwrap();
        let mut buf = Vec::new();
        t.write_tnsr(&mut buf).unwrap();
        let back = DenseTensor::read_tnsr(buf.as_slice()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn values_may_span_arbitrary_lines() {
        let text = "tnsr 1 real\n2 2\n1\n2 3\n\n4\n";
        let t = DenseTensor::read_tnsr(text.as_bytes()).unwrap();
        assert_eq!(t.get(&[1, 1]), c(4.0, 0.0));
    }

    #[test]
    fn rejects_wrong_value_counts() {
        assert!(DenseTensor::read_tnsr("tnsr 1 real\n2 2\n1 2 3\n".as_bytes()).is_err());
        assert!(DenseTensor::read_tnsr("tnsr 1 real\n2 2\n1 2 3 4 5\n".as_bytes()).is_err());
        // complex needs pairs: 4 values for a 2×2 complex tensor is short
        assert!(DenseTensor::read_tnsr("tnsr 1 complex\n2 2\n1 2 3 4\n".as_bytes()).is_err());
    }

    #[test]
    fn rejects_malformed_headers() {
        assert!(DenseTensor::read_tnsr("tsnr 1 real\n2 2\n1 2 3 4\n".as_bytes()).is_err());
        assert!(DenseTensor::read_tnsr("tnsr 2 real\n2 2\n1 2 3 4\n".as_bytes()).is_err());
        assert!(DenseTensor::read_tnsr("tnsr 1 quaternion\n2 2\n1 2 3 4\n".as_bytes()).is_err());
        assert!(DenseTensor::read_tnsr("tnsr 1 real\n2 0\n".as_bytes()).is_err());
        assert!(DenseTensor::read_tnsr("tnsr 1 real\n4\n1 2 3 4\n".as_bytes()).is_err());
        assert!(DenseTensor::read_tnsr("tnsr 1 real\n2 2\n1 2 nan 4\n".as_bytes()).is_err());
    }
}
