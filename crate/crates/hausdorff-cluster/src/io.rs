//! CSV and JSON codecs for every artifact the pipeline passes around.
//!
//! CSV layouts:
//! - prices: `date,<ticker>,...` with one row per day;
//! - returns: same shape as prices, one fewer row;
//! - distance matrix: header row of the n labels, then n rows of n values;
//! - points: `x,y,group`;
//! - entropy curve: `step,height,n_clusters,entropy`.
//!
//! Floats are written with the shortest representation that parses back to
//! the identical bit pattern, so every round trip is lossless and two runs
//! produce byte-identical files.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::analysis::EntropyCurve;
use crate::datasets::LabeledPointSet;
use crate::error::{Error, Result};
use crate::linkage::{Dendrogram, Linkage, Merge};
use crate::metric::{DistanceMatrix, Point, PriceTable, ReturnSeries};

fn parse_cell(what: &'static str, row: usize, column: &str, field: &str) -> Result<f64> {
    match field.trim().parse::<f64>() {
        Ok(v) => Ok(v),
        Err(_) => Err(Error::MalformedInput {
            what,
            location: format!("row {row}, column {column}"),
            detail: format!("cannot parse {field:?} as a number"),
        }),
    }
}

pub fn write_prices<W: Write>(writer: W, table: &PriceTable) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["date".to_string()];
    header.extend(table.labels().iter().cloned());
    w.write_record(&header)?;
    for (t, date) in table.dates().iter().enumerate() {
        let mut row = vec![date.clone()];
        row.extend(table.prices().iter().map(|series| series[t].to_string()));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_prices<R: Read>(reader: R) -> Result<PriceTable> {
    let mut r = csv::Reader::from_reader(reader);
    let headers = r.headers()?.clone();
    if headers.len() < 2 || headers.get(0).map(str::trim) != Some("date") {
        return Err(Error::MalformedInput {
            what: "price table",
            location: "header".into(),
            detail: "expected `date` followed by at least one series label".into(),
        });
    }
    let labels: Vec<String> = headers.iter().skip(1).map(|h| h.trim().to_string()).collect();
    let mut dates = Vec::new();
    let mut prices: Vec<Vec<f64>> = vec![Vec::new(); labels.len()];
    for (i, record) in r.records().enumerate() {
        let record = record?;
        dates.push(record.get(0).unwrap_or("").trim().to_string());
        for (s, field) in record.iter().skip(1).enumerate() {
            prices[s].push(parse_cell("price table", i + 1, &labels[s], field)?);
        }
    }
    if dates.is_empty() {
        return Err(Error::MalformedInput {
            what: "price table",
            location: "body".into(),
            detail: "no data rows".into(),
        });
    }
    PriceTable::new(labels, dates, prices)
}

/// Writes one row per return observation; `dates` must align with the
/// series, i.e. hold the date each return was realised on.
pub fn write_returns<W: Write>(writer: W, dates: &[String], series: &[ReturnSeries]) -> Result<()> {
    if series.is_empty() {
        return Err(Error::NoItems);
    }
    for s in series {
        if s.len() != dates.len() {
            return Err(Error::SeriesLengthMismatch {
                left: dates.len(),
                right: s.len(),
            });
        }
    }
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["date".to_string()];
    header.extend(series.iter().map(|s| s.label().to_string()));
    w.write_record(&header)?;
    for (t, date) in dates.iter().enumerate() {
        let mut row = vec![date.clone()];
        row.extend(series.iter().map(|s| s.values()[t].to_string()));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_returns<R: Read>(reader: R) -> Result<(Vec<String>, Vec<ReturnSeries>)> {
    let mut r = csv::Reader::from_reader(reader);
    let headers = r.headers()?.clone();
    if headers.len() < 2 || headers.get(0).map(str::trim) != Some("date") {
        return Err(Error::MalformedInput {
            what: "return table",
            location: "header".into(),
            detail: "expected `date` followed by at least one series label".into(),
        });
    }
    let labels: Vec<String> = headers.iter().skip(1).map(|h| h.trim().to_string()).collect();
    let mut dates = Vec::new();
    let mut values: Vec<Vec<f64>> = vec![Vec::new(); labels.len()];
    for (i, record) in r.records().enumerate() {
        let record = record?;
        dates.push(record.get(0).unwrap_or("").trim().to_string());
        for (s, field) in record.iter().skip(1).enumerate() {
            values[s].push(parse_cell("return table", i + 1, &labels[s], field)?);
        }
    }
    let series = labels
        .into_iter()
        .zip(values)
        .map(|(label, vals)| ReturnSeries::new(label, vals))
        .collect::<Result<Vec<_>>>()?;
    Ok((dates, series))
}

pub fn write_matrix<W: Write>(writer: W, matrix: &DistanceMatrix) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(matrix.labels())?;
    let n = matrix.n();
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| matrix.get(i, j).to_string()).collect();
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_matrix<R: Read>(reader: R) -> Result<DistanceMatrix> {
    let mut r = csv::Reader::from_reader(reader);
    let labels: Vec<String> = r.headers()?.iter().map(|h| h.trim().to_string()).collect();
    let n = labels.len();
    let mut data = Vec::with_capacity(n * n);
    let mut rows = 0usize;
    for (i, record) in r.records().enumerate() {
        let record = record?;
        rows += 1;
        for (j, field) in record.iter().enumerate() {
            data.push(parse_cell("distance matrix", i + 1, &labels[j], field)?);
        }
    }
    if rows != n {
        return Err(Error::MalformedInput {
            what: "distance matrix",
            location: "body".into(),
            detail: format!("{n} labelled columns but {rows} rows"),
        });
    }
    DistanceMatrix::new(labels, data)
}

pub fn write_points<W: Write>(writer: W, set: &LabeledPointSet) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["x", "y", "group"])?;
    for (point, group) in set.points().iter().zip(set.group_labels()) {
        let c = point.coords();
        if c.len() != 2 {
            return Err(Error::DimensionMismatch {
                left: 2,
                right: c.len(),
            });
        }
        w.write_record([c[0].to_string(), c[1].to_string(), group.clone()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_points<R: Read>(reader: R) -> Result<LabeledPointSet> {
    let mut r = csv::Reader::from_reader(reader);
    let headers = r.headers()?.clone();
    let names: Vec<&str> = headers.iter().map(str::trim).collect();
    if names != ["x", "y", "group"] {
        return Err(Error::MalformedInput {
            what: "point set",
            location: "header".into(),
            detail: format!("expected `x,y,group`, got {:?}", names.join(",")),
        });
    }
    let mut points = Vec::new();
    let mut groups = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record?;
        let x = parse_cell("point set", i + 1, "x", record.get(0).unwrap_or(""))?;
        let y = parse_cell("point set", i + 1, "y", record.get(1).unwrap_or(""))?;
        points.push(Point::xy(x, y)?);
        groups.push(record.get(2).unwrap_or("").trim().to_string());
    }
    LabeledPointSet::new(points, groups)
}

pub fn write_entropy_curve<W: Write>(writer: W, curve: &EntropyCurve) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["step", "height", "n_clusters", "entropy"])?;
    for p in &curve.points {
        w.write_record([
            p.step.to_string(),
            p.height.to_string(),
            p.n_clusters.to_string(),
            p.entropy.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct DendrogramWithBacksteps<'a> {
    #[serde(flatten)]
    dendrogram: &'a Dendrogram,
    backsteps: &'a [usize],
}

/// Writes a dendrogram as pretty-printed JSON. When `backsteps` is given it
/// is appended as an extra top-level field; readers that only know the base
/// layout can ignore it.
pub fn write_dendrogram_json<W: Write>(
    writer: W,
    dendrogram: &Dendrogram,
    backsteps: Option<&[usize]>,
) -> Result<()> {
    match backsteps {
        Some(steps) => serde_json::to_writer_pretty(
            writer,
            &DendrogramWithBacksteps {
                dendrogram,
                backsteps: steps,
            },
        )?,
        None => serde_json::to_writer_pretty(writer, dendrogram)?,
    }
    Ok(())
}

#[derive(Deserialize)]
struct DendrogramFile {
    n_leaves: usize,
    labels: Vec<String>,
    linkage: Linkage,
    merges: Vec<MergeFile>,
}

#[derive(Deserialize)]
struct MergeFile {
    left: usize,
    right: usize,
    height: f64,
    step: usize,
}

/// Reads a dendrogram back, re-running the full structural validation, so a
/// hand-edited file with inconsistent merges is rejected rather than
/// trusted.
pub fn read_dendrogram_json<R: Read>(reader: R) -> Result<Dendrogram> {
    let file: DendrogramFile = serde_json::from_reader(reader)?;
    let merges = file
        .merges
        .into_iter()
        .map(|m| Merge {
            left: m.left,
            right: m.right,
            height: m.height,
            new_id: 0,
            step: m.step,
        })
        .collect();
    Dendrogram::new(file.n_leaves, file.labels, file.linkage, merges)
}

/// What a `cluster` invocation was fed, decided by the CSV header: the
/// exact header `x,y,group` means 2-D points, anything else is read as a
/// labelled distance matrix.
pub enum ClusterInput {
    Points(LabeledPointSet),
    Matrix(DistanceMatrix),
}

pub fn read_cluster_input(text: &str) -> Result<ClusterInput> {
    let header = text.lines().next().unwrap_or("");
    let names: Vec<&str> = header.split(',').map(str::trim).collect();
    if names == ["x", "y", "group"] {
        Ok(ClusterInput::Points(read_points(text.as_bytes())?))
    } else {
        Ok(ClusterInput::Matrix(read_matrix(text.as_bytes())?))
    }
}
