//! Reading and writing sampled Clifford-valued grids.
//!
//! Two encodings share one header:
//!
//! * `json`: a single document `{"header": {...}, "data": [...]}` where
//!   `data[b][k] = [re, im]` is the coefficient of blade `b` at flat sample
//!   index `k` (row-major, last axis fastest).
//! * `f64le`: the header as one JSON line terminated by `\n`, then
//!   `2^m * N` complex numbers as little-endian `f64` pairs `(re, im)` in the
//!   same blade-major order.
//!
//! Blades are listed in `blade_order` by their labels (`1`, `e1`, `e2`,
//! `e12`, ...); only the canonical bitmask order is accepted.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::{blade_label, check_dim, Multivector};
use crate::error::{Error, Result};
use crate::spectral::GridFunction;

pub const FORMAT_NAME: &str = "monogenic-grid";
pub const FORMAT_VERSION: u32 = 1;
/// Refuse files declaring more than this many complex values.
pub const MAX_VALUES: usize = 1 << 27;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Encoding {
    Json,
    F64le,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Header {
    pub format: String,
    pub version: u32,
    pub m: usize,
    pub shape: Vec<usize>,
    pub spacing: Vec<f64>,
    pub origin: Vec<f64>,
    pub blade_order: Vec<String>,
    pub encoding: Encoding,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGrid {
    header: Header,
    data: Vec<Vec<[f64; 2]>>,
}

impl Header {
    pub fn for_grid(grid: &GridFunction, encoding: Encoding) -> Self {
        Self {
            format: FORMAT_NAME.into(),
            version: FORMAT_VERSION,
            m: grid.m,
            shape: grid.shape.clone(),
            spacing: grid.spacing.clone(),
            origin: grid.origin.clone(),
            blade_order: (0..1usize << grid.m).map(blade_label).collect(),
            encoding,
        }
    }

    /// Number of samples, after checking the header against the format.
    fn validate(&self, offset: usize) -> Result<usize> {
        let fail = |message: String| Error::Parse { offset, message };
        if self.format != FORMAT_NAME {
            return Err(fail(format!(
                "format must be '{FORMAT_NAME}', found '{}'",
                self.format
            )));
        }
        if self.version != FORMAT_VERSION {
            return Err(fail(format!("unsupported version {}", self.version)));
        }
        check_dim(self.m).map_err(|e| fail(e.to_string()))?;
        let expected: Vec<String> = (0..1usize << self.m).map(blade_label).collect();
        if self.blade_order != expected {
            return Err(fail(format!("blade_order must be {expected:?}")));
        }
        if self.shape.len() != self.m || self.spacing.len() != self.m || self.origin.len() != self.m
        {
            return Err(fail(format!(
                "shape, spacing and origin need {} entries each",
                self.m
            )));
        }
        let count = self
            .shape
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .filter(|&n| n.saturating_mul(1 << self.m) <= MAX_VALUES)
            .ok_or_else(|| fail(format!("grid larger than {MAX_VALUES} values")))?;
        Ok(count)
    }
}

/// Byte offset of a 1-based line/column position.
fn offset_of(text: &[u8], line: usize, column: usize) -> usize {
    let mut start = 0;
    for _ in 1..line {
        match text[start..].iter().position(|&b| b == b'\n') {
            Some(p) => start += p + 1,
            None => return text.len(),
        }
    }
    (start + column.saturating_sub(1)).min(text.len())
}

fn json_error(text: &[u8], base: usize, e: serde_json::Error) -> Error {
    Error::Parse {
        offset: base + offset_of(text, e.line(), e.column()),
        message: e.to_string(),
    }
}

fn assemble(
    header: Header,
    count: usize,
    mut coeff: impl FnMut(usize, usize) -> Complex64,
) -> Result<GridFunction> {
    let blades = 1usize << header.m;
    let samples = (0..count)
        .map(|k| {
            let c: Vec<Complex64> = (0..blades).map(|b| coeff(b, k)).collect();
            Multivector::from_coeffs(header.m, &c)
        })
        .collect::<Result<Vec<_>>>()?;
    GridFunction::new(
        header.m,
        header.shape,
        header.spacing,
        header.origin,
        samples,
    )
    .map_err(|e| Error::Parse {
        offset: 0,
        message: e.to_string(),
    })
}

/// Parses either encoding.
pub fn parse_grid(bytes: &[u8]) -> Result<GridFunction> {
    if let Some(nl) = bytes.iter().position(|&b| b == b'\n') {
        if let Ok(header) = serde_json::from_slice::<Header>(&bytes[..nl]) {
            if header.encoding == Encoding::F64le {
                return parse_binary(header, &bytes[nl + 1..], nl + 1);
            }
        }
    }
    let doc: JsonGrid = serde_json::from_slice(bytes).map_err(|e| json_error(bytes, 0, e))?;
    if doc.header.encoding != Encoding::Json {
        return Err(Error::Parse {
            offset: 0,
            message: "binary header must be alone on the first line".into(),
        });
    }
    let count = doc.header.validate(0)?;
    let blades = 1usize << doc.header.m;
    if doc.data.len() != blades {
        return Err(Error::Parse {
            offset: 0,
            message: format!("data needs {blades} blade arrays, found {}", doc.data.len()),
        });
    }
    if let Some(b) = doc.data.iter().position(|d| d.len() != count) {
        return Err(Error::Parse {
            offset: 0,
            message: format!(
                "blade array {b} has {} samples, expected {count}",
                doc.data[b].len()
            ),
        });
    }
    let data = doc.data;
    assemble(doc.header, count, |b, k| {
        Complex64::new(data[b][k][0], data[b][k][1])
    })
}

fn parse_binary(header: Header, payload: &[u8], base: usize) -> Result<GridFunction> {
    let count = header.validate(0)?;
    let values = count << header.m;
    let need = values * 16;
    if payload.len() != need {
        return Err(Error::Parse {
            offset: base + payload.len().min(need),
            message: format!(
                "binary payload must be {need} bytes, found {}",
                payload.len()
            ),
        });
    }
    let read =
        |i: usize| f64::from_le_bytes(payload[8 * i..8 * i + 8].try_into().expect("8 bytes"));
    assemble(header, count, |b, k| {
        let i = 2 * (b * count + k);
        Complex64::new(read(i), read(i + 1))
    })
}

/// Serialises a grid. The JSON encoding rejects non-finite samples.
pub fn encode_grid(grid: &GridFunction, encoding: Encoding) -> Result<Vec<u8>> {
    let header = Header::for_grid(grid, encoding);
    let blades = 1usize << grid.m;
    match encoding {
        Encoding::Json => {
            let data: Vec<Vec<[f64; 2]>> = (0..blades)
                .map(|b| {
                    grid.samples
                        .iter()
                        .map(|s| [s.coeff(b).re, s.coeff(b).im])
                        .collect()
                })
                .collect();
            if data.iter().flatten().flatten().any(|v| !v.is_finite()) {
                return Err(Error::InvalidParameter(
                    "non-finite samples need the f64le encoding".into(),
                ));
            }
            let mut out = serde_json::to_vec(&JsonGrid { header, data })
                .map_err(|e| Error::Io(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        Encoding::F64le => {
            let mut out = serde_json::to_vec(&header).map_err(|e| Error::Io(e.to_string()))?;
            out.push(b'\n');
            out.reserve(grid.samples.len() * blades * 16);
            for b in 0..blades {
                for s in &grid.samples {
                    out.extend_from_slice(&s.coeff(b).re.to_le_bytes());
                    out.extend_from_slice(&s.coeff(b).im.to_le_bytes());
                }
            }
            Ok(out)
        }
    }
}

pub fn read_grid(path: &Path) -> Result<GridFunction> {
    let bytes = fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_grid(&bytes)
}

pub fn write_grid(path: &Path, grid: &GridFunction, encoding: Encoding) -> Result<()> {
    fs::write(path, encode_grid(grid, encoding)?)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
