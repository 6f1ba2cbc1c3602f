use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::Path;

use crate::config::Method;
use crate::error::{CliError, CliResult};

pub const HEADER: [&str; 12] = [
    "image",
    "method",
    "sr",
    "r_or_d",
    "lambda",
    "psnr_db",
    "ssim",
    "wall_seconds",
    "iterations",
    "status",
    "baseline_psnr_db",
    "baseline_ssim",
];

#[derive(Clone, Debug, PartialEq)]
pub struct Metrics {
    pub psnr_db: f64,
    pub ssim: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub image: String,
    pub method: Method,
    pub sr: f64,
    pub r_or_d: usize,
    pub lambda: f64,
    pub result: Option<Metrics>,
    pub wall_seconds: f64,
    pub iterations: usize,
    pub status: String,
    pub baseline: Option<Metrics>,
}

fn fmt_psnr(v: f64) -> String {
    if v.is_infinite() && v > 0.0 {
        "inf".to_string()
    } else {
        format!("{v:.4}")
    }
}

impl Row {
    pub fn record(&self) -> [String; 12] {
        let (psnr, ssim) = metric_fields(self.result.as_ref());
        let (base_psnr, base_ssim) = metric_fields(self.baseline.as_ref());
        [
            self.image.clone(),
            self.method.to_string(),
            format!("{}", self.sr),
            self.r_or_d.to_string(),
            format!("{:e}", self.lambda),
            psnr,
            ssim,
            format!("{:.3}", self.wall_seconds),
            self.iterations.to_string(),
            self.status.clone(),
            base_psnr,
            base_ssim,
        ]
    }
}

fn metric_fields(m: Option<&Metrics>) -> (String, String) {
    match m {
        Some(m) => (fmt_psnr(m.psnr_db), format!("{:.6}", m.ssim)),
        None => (String::new(), String::new()),
    }
}

/// Writes a fresh CSV with header and the given rows.
pub fn write_csv(path: &Path, rows: &[Row]) -> CliResult<()> {
    let file = File::create(path).map_err(|e| output_err(path, e))?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record(HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(())
}

/// Appends one row, writing the header first if the file is new or empty.
pub fn append_csv(path: &Path, row: &Row) -> CliResult<()> {
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| output_err(path, e))?;
    let empty = file.metadata()?.len() == 0;
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    if empty {
        w.write_record(HEADER)?;
    }
    w.write_record(row.record())?;
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    file.write_all(&bytes)?;
    Ok(())
}

fn output_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Output {
        path: path.to_path_buf(),
        source: Box::new(e),
    }
}
