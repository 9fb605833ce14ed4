//! CSV and JSON artifacts. Floats are written in Rust's shortest
//! round-trip form, so reading an artifact back gives the identical values.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::abm::TrajectoryRecord;
use crate::dist::{EmpiricalDistribution, GridDistribution};
use crate::error::{Error, Result};
use crate::meanfield::MomentRow;

fn writer(path: &Path, header: &[&str]) -> Result<csv::Writer<BufWriter<File>>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut w = csv::Writer::from_writer(BufWriter::new(File::create(path)?));
    w.write_record(header)?;
    Ok(w)
}

fn reader(path: &Path, header: &[&str]) -> Result<csv::Reader<File>> {
    let mut r = csv::Reader::from_path(path)?;
    let found: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if found != header {
        return Err(Error::Config(format!(
            "{}: expected header {:?}, found {:?}",
            path.display(),
            header,
            found
        )));
    }
    Ok(r)
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, path: &Path) -> Result<T> {
    rec.get(i)
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::Config(format!("{}: bad value in column {i} of row {:?}", path.display(), rec)))
}

fn write_rows(path: &Path, header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Result<()> {
    let mut w = writer(path, header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

const TRAJECTORY_HEADER: [&str; 3] = ["t", "mean", "second_moment"];

/// `t,mean,second_moment`, one row per record time.
pub fn write_trajectory_csv(path: &Path, rec: &TrajectoryRecord) -> Result<()> {
    write_rows(
        path,
        &TRAJECTORY_HEADER,
        (0..rec.times.len()).map(|k| {
            vec![
                rec.times[k].to_string(),
                rec.mean_opinion[k].to_string(),
                rec.second_moment[k].to_string(),
            ]
        }),
    )
}

/// Reads a trajectory; snapshots are stored separately and come back empty.
pub fn read_trajectory_csv(path: &Path) -> Result<TrajectoryRecord> {
    let rows = read_moments_csv(path)?;
    Ok(TrajectoryRecord {
        times: rows.iter().map(|r| r.t).collect(),
        mean_opinion: rows.iter().map(|r| r.mean).collect(),
        second_moment: rows.iter().map(|r| r.second_moment).collect(),
        snapshots: Vec::new(),
    })
}

pub fn write_moments_csv(path: &Path, rows: &[MomentRow]) -> Result<()> {
    write_rows(
        path,
        &TRAJECTORY_HEADER,
        rows.iter()
            .map(|r| vec![r.t.to_string(), r.mean.to_string(), r.second_moment.to_string()]),
    )
}

pub fn read_moments_csv(path: &Path) -> Result<Vec<MomentRow>> {
    let mut r = reader(path, &TRAJECTORY_HEADER)?;
    r.records()
        .map(|rec| {
            let rec = rec?;
            Ok(MomentRow {
                t: field(&rec, 0, path)?,
                mean: field(&rec, 1, path)?,
                second_moment: field(&rec, 2, path)?,
            })
        })
        .collect()
}

const SNAPSHOT_HEADER: [&str; 3] = ["t", "agent_index", "opinion"];

pub fn write_snapshots_csv(path: &Path, snapshots: &[(f64, Vec<f64>)]) -> Result<()> {
    let mut w = writer(path, &SNAPSHOT_HEADER)?;
    for (t, ops) in snapshots {
        let ts = t.to_string();
        for (i, x) in ops.iter().enumerate() {
            w.write_record([ts.as_str(), &i.to_string(), &x.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_snapshots_csv(path: &Path) -> Result<Vec<(f64, Vec<f64>)>> {
    let mut r = reader(path, &SNAPSHOT_HEADER)?;
    let mut out: Vec<(f64, Vec<f64>)> = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let t: f64 = field(&rec, 0, path)?;
        let i: usize = field(&rec, 1, path)?;
        let x: f64 = field(&rec, 2, path)?;
        if out.last().map(|s| s.0) != Some(t) {
            out.push((t, Vec::new()));
        }
        let snap = &mut out.last_mut().expect("pushed above").1;
        if i != snap.len() {
            return Err(Error::Config(format!("{}: agent indices out of order at t={t}", path.display())));
        }
        snap.push(x);
    }
    Ok(out)
}

const CDF_HEADER: [&str; 2] = ["x", "F"];

pub fn write_cdf_csv(path: &Path, dist: &GridDistribution) -> Result<()> {
    write_rows(
        path,
        &CDF_HEADER,
        dist.grid()
            .iter()
            .zip(dist.values())
            .map(|(x, f)| vec![x.to_string(), f.to_string()]),
    )
}

pub fn read_cdf_csv(path: &Path) -> Result<GridDistribution> {
    let mut r = reader(path, &CDF_HEADER)?;
    let (mut xs, mut fs) = (Vec::new(), Vec::new());
    for rec in r.records() {
        let rec = rec?;
        xs.push(field(&rec, 0, path)?);
        fs.push(field(&rec, 1, path)?);
    }
    GridDistribution::new(xs, fs)
}

pub fn write_samples_csv(path: &Path, dist: &EmpiricalDistribution) -> Result<()> {
    write_rows(path, &["z"], dist.samples().iter().map(|z| vec![z.to_string()]))
}

pub fn read_samples_csv(path: &Path) -> Result<EmpiricalDistribution> {
    let mut r = reader(path, &["z"])?;
    let mut zs = Vec::new();
    for rec in r.records() {
        zs.push(field(&rec?, 0, path)?);
    }
    EmpiricalDistribution::new(zs)
}

const COVER_HEADER: [&str; 3] = ["depth", "left", "right"];

/// Rows of `(depth, left, right)`.
pub fn write_intervals_csv(path: &Path, rows: &[(usize, f64, f64)]) -> Result<()> {
    write_rows(
        path,
        &COVER_HEADER,
        rows.iter()
            .map(|(d, a, b)| vec![d.to_string(), a.to_string(), b.to_string()]),
    )
}

pub fn read_intervals_csv(path: &Path) -> Result<Vec<(usize, f64, f64)>> {
    let mut r = reader(path, &COVER_HEADER)?;
    r.records()
        .map(|rec| {
            let rec = rec?;
            Ok((field(&rec, 0, path)?, field(&rec, 1, path)?, field(&rec, 2, path)?))
        })
        .collect()
}

/// Generic table with a caller-chosen header.
pub fn write_table_csv(path: &Path, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    write_rows(path, header, rows.iter().map(|r| r.iter().map(f64::to_string).collect()))
}

pub fn read_table_csv(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut r = csv::Reader::from_path(path)?;
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        rows.push((0..rec.len()).map(|i| field(&rec, i, path)).collect::<Result<Vec<f64>>>()?);
    }
    Ok((header, rows))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_reader(std::io::BufReader::new(File::open(path)?))?)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text)?;
    Ok(())
}
