//! CSV and JSON serialization of grids, weight sets, sample tables and
//! coefficient tables.
//!
//! Rows are written in lexicographic coordinate order; reals use a fixed
//! 17-significant-digit scientific format with `-0` folded to `0`, so the same
//! input always produces byte-identical files. Readers match coordinates
//! against the canonical enumeration exactly: unknown, duplicate or missing
//! rows are errors.

use std::collections::HashSet;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::grids::{PointGrid, Variant, WeightSet};
use crate::transform::{CoefficientTable, SampleTable};
use crate::{AlgebraSpec, Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Parse(format!("format {other:?}; expected json or csv"))),
        }
    }
}

/// Fixed decimal rendering: 17 significant digits, no negative zero.
pub fn format_real(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn raw(x: f64) -> Result<Box<RawValue>> {
    if !x.is_finite() {
        return Err(Error::Parse(format!("non-finite value {x}")));
    }
    Ok(RawValue::from_string(format_real(x))?)
}

fn header(prefix: &str, rank: usize, tail: &[&str]) -> Vec<String> {
    (0..=rank)
        .map(|i| format!("{prefix}_{i}"))
        .chain(tail.iter().map(|s| s.to_string()))
        .collect()
}

fn write_csv<W: Write>(out: W, head: Vec<String>, rows: impl Iterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&head)?;
    for r in rows {
        w.write_record(&r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct GridFile<'a, R> {
    algebra: String,
    level: i64,
    variant: Variant,
    side: &'a str,
    count: usize,
    rows: Vec<R>,
}

#[derive(Serialize)]
struct PointRow<'a> {
    u: &'a [i64],
    epsilon: u64,
}

#[derive(Serialize)]
struct WeightRow<'a> {
    t: &'a [i64],
    h_dual: u64,
}

pub fn write_grid<W: Write>(grid: &PointGrid, format: Format, mut out: W) -> Result<()> {
    match format {
        Format::Csv => write_csv(
            out,
            header("u", grid.spec.rank(), &["epsilon"]),
            grid.points
                .iter()
                .map(|p| p.u.iter().map(i64::to_string).chain([p.epsilon.to_string()]).collect()),
        ),
        Format::Json => {
            let file = GridFile {
                algebra: grid.spec.name(),
                level: grid.level,
                variant: grid.variant,
                side: "points",
                count: grid.len(),
                rows: grid
                    .points
                    .iter()
                    .map(|p| PointRow {
                        u: &p.u,
                        epsilon: p.epsilon,
                    })
                    .collect(),
            };
            serde_json::to_writer_pretty(&mut out, &file)?;
            writeln!(out)?;
            Ok(())
        }
    }
}

pub fn write_weights<W: Write>(set: &WeightSet, format: Format, mut out: W) -> Result<()> {
    match format {
        Format::Csv => write_csv(
            out,
            header("t", set.spec.rank(), &["h_dual"]),
            set.weights
                .iter()
                .map(|w| w.t.iter().map(i64::to_string).chain([w.h_dual.to_string()]).collect()),
        ),
        Format::Json => {
            let file = GridFile {
                algebra: set.spec.name(),
                level: set.level,
                variant: set.variant,
                side: "weights",
                count: set.len(),
                rows: set.weights.iter().map(|w| WeightRow { t: &w.t, h_dual: w.h_dual }).collect(),
            };
            serde_json::to_writer_pretty(&mut out, &file)?;
            writeln!(out)?;
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct ValueFile {
    algebra: String,
    level: i64,
    variant: Variant,
    rows: Vec<ValueRowOut>,
}

#[derive(Serialize)]
struct ValueRowOut {
    #[serde(rename = "coords")]
    key: Vec<i64>,
    re: Box<RawValue>,
    im: Box<RawValue>,
}

#[derive(Deserialize)]
struct ValueFileIn {
    algebra: Option<String>,
    level: Option<i64>,
    variant: Option<Variant>,
    rows: Vec<ValueRowIn>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ValueRowIn {
    coords: Vec<i64>,
    re: f64,
    im: f64,
}

#[allow(clippy::too_many_arguments)]
fn write_values<W: Write, T: Scalar>(
    spec: AlgebraSpec,
    level: i64,
    variant: Variant,
    prefix: &str,
    keys: &[&[i64]],
    values: &[Complex<T>],
    format: Format,
    mut out: W,
) -> Result<()> {
    let pairs = values
        .iter()
        .map(|v| (v.re.to_f64().unwrap_or(f64::NAN), v.im.to_f64().unwrap_or(f64::NAN)));
    match format {
        Format::Csv => {
            let rows = keys
                .iter()
                .zip(pairs)
                .map(|(k, (re, im))| k.iter().map(i64::to_string).chain([format_real(re), format_real(im)]).collect());
            write_csv(out, header(prefix, spec.rank(), &["re", "im"]), rows)
        }
        Format::Json => {
            let rows = keys
                .iter()
                .zip(pairs)
                .map(|(k, (re, im))| {
                    Ok(ValueRowOut {
                        key: k.to_vec(),
                        re: raw(re)?,
                        im: raw(im)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let file = ValueFile {
                algebra: spec.name(),
                level,
                variant,
                rows,
            };
            serde_json::to_writer_pretty(&mut out, &file)?;
            writeln!(out)?;
            Ok(())
        }
    }
}

pub fn write_samples<W: Write, T: Scalar>(table: &SampleTable<T>, format: Format, out: W) -> Result<()> {
    let keys: Vec<&[i64]> = table.points.iter().map(|p| p.u.as_slice()).collect();
    write_values(table.spec, table.level, table.variant, "u", &keys, &table.values, format, out)
}

pub fn write_coefficients<W: Write, T: Scalar>(table: &CoefficientTable<T>, format: Format, out: W) -> Result<()> {
    let keys: Vec<&[i64]> = table.weights.iter().map(|w| w.t.as_slice()).collect();
    write_values(table.spec, table.level, table.variant, "t", &keys, &table.values, format, out)
}

fn parse_int(s: &str, line: usize) -> Result<i64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("row {line}: bad integer {s:?}")))
}

fn parse_real(s: &str, line: usize) -> Result<f64> {
    let x: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("row {line}: bad number {s:?}")))?;
    if !x.is_finite() {
        return Err(Error::Parse(format!("row {line}: non-finite value {s:?}")));
    }
    Ok(x)
}

/// Reads `(coords, re, im)` rows; `keys` is the canonical key order.
fn read_values<R: Read>(
    spec: AlgebraSpec,
    level: i64,
    variant: Variant,
    prefix: &str,
    keys: &[&[i64]],
    format: Format,
    mut input: R,
) -> Result<Vec<Complex<f64>>> {
    let rank = spec.rank();
    let mut rows: Vec<(Vec<i64>, f64, f64)> = Vec::new();
    match format {
        Format::Csv => {
            let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
            let expected = header(prefix, rank, &["re", "im"]);
            let found: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
            if found != expected {
                return Err(Error::Parse(format!("header {found:?}; expected {expected:?}")));
            }
            for (i, rec) in r.records().enumerate() {
                let rec = rec?;
                let line = i + 2;
                if rec.len() != rank + 3 {
                    return Err(Error::Parse(format!("row {line}: {} fields, expected {}", rec.len(), rank + 3)));
                }
                let coords = (0..=rank).map(|j| parse_int(&rec[j], line)).collect::<Result<Vec<_>>>()?;
                rows.push((coords, parse_real(&rec[rank + 1], line)?, parse_real(&rec[rank + 2], line)?));
            }
        }
        Format::Json => {
            let mut text = String::new();
            input.read_to_string(&mut text)?;
            let file: ValueFileIn = serde_json::from_str(&text)?;
            if let Some(a) = &file.algebra {
                let a: AlgebraSpec = a.parse()?;
                if a != spec {
                    return Err(Error::VariantMismatch(format!("file is for {a}, expected {spec}")));
                }
            }
            if file.level.is_some_and(|m| m != level) {
                return Err(Error::VariantMismatch(format!(
                    "file level {:?}, expected {level}",
                    file.level.unwrap()
                )));
            }
            if file.variant.is_some_and(|v| v != variant) {
                return Err(Error::VariantMismatch(format!(
                    "file variant {}, expected {variant}",
                    file.variant.unwrap()
                )));
            }
            for (i, row) in file.rows.into_iter().enumerate() {
                if row.coords.len() != rank + 1 {
                    return Err(Error::Parse(format!(
                        "row {}: {} coordinates, expected {}",
                        i + 1,
                        row.coords.len(),
                        rank + 1
                    )));
                }
                if !row.re.is_finite() || !row.im.is_finite() {
                    return Err(Error::Parse(format!("row {}: non-finite value", i + 1)));
                }
                rows.push((row.coords, row.re, row.im));
            }
        }
    }
    let mut values = vec![None; keys.len()];
    let mut seen = HashSet::new();
    for (coords, re, im) in rows {
        if !seen.insert(coords.clone()) {
            return Err(Error::DuplicateRow(coords));
        }
        let idx = keys
            .binary_search(&coords.as_slice())
            .map_err(|_| Error::NotOnGrid(coords.clone()))?;
        values[idx] = Some(Complex::new(re, im));
    }
    if seen.len() != keys.len() {
        return Err(Error::Dimension {
            expected: keys.len(),
            found: seen.len(),
        });
    }
    Ok(values.into_iter().map(|v| v.expect("every key seen")).collect())
}

/// Reads samples for `grid`; rows may come in any order but must cover it exactly.
pub fn read_samples<R: Read>(grid: &PointGrid, format: Format, input: R) -> Result<SampleTable<f64>> {
    let keys: Vec<&[i64]> = grid.points.iter().map(|p| p.u.as_slice()).collect();
    let values = read_values(grid.spec, grid.level, grid.variant, "u", &keys, format, input)?;
    SampleTable::new(grid, values)
}

pub fn read_coefficients<R: Read>(set: &WeightSet, format: Format, input: R) -> Result<CoefficientTable<f64>> {
    let keys: Vec<&[i64]> = set.weights.iter().map(|w| w.t.as_slice()).collect();
    let values = read_values(set.spec, set.level, set.variant, "t", &keys, format, input)?;
    CoefficientTable::new(set, values)
}
