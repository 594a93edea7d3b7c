use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use crate::protocol::Scheme;

pub const CSV_HEADER: &str =
    "sweep_value,scheme,mean_throughput,std_error,frames,seed,n_c,n_i,feasible";

/// One `(sweep point, scheme)` result. Unsimulated rows have no mean.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub sweep_value: f64,
    pub scheme: Scheme,
    /// Vehicles contending at this point.
    pub offered: usize,
    pub mean_throughput: Option<f64>,
    pub std_error: Option<f64>,
    pub frames: usize,
    pub seed: u64,
    pub n_c: i64,
    pub n_i: i64,
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepReport {
    /// Ascending sweep value, RTS-TDMA before CSA at each point.
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn row(&self, sweep_value: f64, scheme: Scheme) -> Option<&SweepRow> {
        self.rows
            .iter()
            .find(|r| r.sweep_value == sweep_value && r.scheme == scheme)
    }
}

/// Formats `x` with six significant digits, dropping trailing zeros.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&magnitude) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(trimmed);
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

fn opt(x: Option<f64>) -> String {
    x.map(format_sig).unwrap_or_default()
}

pub fn write_csv_to<W: Write>(report: &SweepReport, mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in &report.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            format_sig(r.sweep_value),
            r.scheme,
            opt(r.mean_throughput),
            opt(r.std_error),
            r.frames,
            r.seed,
            r.n_c,
            r.n_i,
            r.feasible
        )?;
    }
    out.flush()
}

pub fn write_csv(report: &SweepReport, destination: &Path) -> io::Result<()> {
    write_csv_to(report, BufWriter::new(File::create(destination)?))
}
