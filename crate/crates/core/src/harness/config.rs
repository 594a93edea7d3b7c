//! `key = value` experiment configuration.
//!
//! ```text
//! # durations in milliseconds
//! t_frame_ms = 100
//! tau_c_ms = 0.02
//! distribution = 2:0.5,3:0.28,8:0.22
//! m_max_values = 50..200:10
//! ```
//!
//! Blank lines and `#` comments are ignored; values may be quoted. Every key
//! is optional and falls back to the reference setup (100 ms frames, 0.02 ms
//! mini-slots, 0.5 ms time slots, default degree law, 500 frames, seed 1).

use std::path::Path;

use crate::degree_dist::{DegreeDistribution, DEFAULT_DISTRIBUTION};
use crate::timing::{TimingConfig, TimingError};

use super::{SweepError, SweepKind, SweepSpec};

const KEYS: &[&str] = &[
    "t_frame_ms",
    "tau_c_ms",
    "tau_t_ms",
    "tau_i_ms",
    "distribution",
    "frames",
    "seed",
    "m_max",
    "m_max_values",
    "t_frame_values",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub t_frame_ms: f64,
    pub tau_c_ms: f64,
    pub tau_t_ms: f64,
    pub tau_i_ms: f64,
    pub dist: DegreeDistribution,
    pub frames: usize,
    pub seed: u64,
    /// Vehicle count held fixed while sweeping the frame duration.
    pub m_max: usize,
    pub m_max_values: Vec<f64>,
    pub t_frame_values: Vec<f64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            t_frame_ms: 100.0,
            tau_c_ms: 0.02,
            tau_t_ms: 0.5,
            tau_i_ms: 0.5,
            dist: DEFAULT_DISTRIBUTION.parse().expect("valid default"),
            frames: 500,
            seed: 1,
            m_max: 150,
            m_max_values: (50..=200).map(f64::from).collect(),
            t_frame_values: (75..=120).map(f64::from).collect(),
        }
    }
}

impl ExperimentConfig {
    pub fn timing(&self, n_t: usize) -> Result<TimingConfig, TimingError> {
        TimingConfig::new(
            self.t_frame_ms,
            self.tau_c_ms,
            self.tau_t_ms,
            self.tau_i_ms,
            n_t,
        )
    }

    pub fn sweep_spec(&self, kind: SweepKind) -> Result<SweepSpec, SweepError> {
        let values = match kind {
            SweepKind::MMax => self.m_max_values.clone(),
            SweepKind::TFrame => self.t_frame_values.clone(),
        };
        SweepSpec::new(
            kind,
            values,
            self.timing(self.m_max)?,
            self.frames,
            self.seed,
            self.dist.clone(),
        )
    }
}

fn syntax(line: usize, message: impl Into<String>) -> SweepError {
    SweepError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T, SweepError> {
    value
        .parse()
        .map_err(|_| syntax(line, format!("{key}: cannot parse {value:?}")))
}

/// Parses `v1,v2,a..b,a..b:step` into an explicit list (ranges inclusive).
pub fn parse_values(text: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let Some((start, rest)) = item.split_once("..") else {
            out.push(
                item.parse::<f64>()
                    .map_err(|_| format!("bad value {item:?}"))?,
            );
            continue;
        };
        let (end, step) = match rest.split_once(':') {
            Some((e, s)) => (e, s.trim()),
            None => (rest, "1"),
        };
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad range {item:?}"))
        };
        let (start, end, step) = (num(start)?, num(end)?, num(step)?);
        if step.is_nan() || step <= 0.0 || !start.is_finite() || !end.is_finite() || end < start {
            return Err(format!("bad range {item:?}"));
        }
        let count = ((end - start) / step + 1e-9).floor() as usize;
        out.extend((0..=count).map(|k| start + k as f64 * step));
    }
    Ok(out)
}

/// Parses configuration text, rejecting unknown or repeated keys.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, SweepError> {
    let mut cfg = ExperimentConfig::default();
    let mut seen: Vec<&str> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| syntax(line, format!("expected `key = value`, got {content:?}")))?;
        let key = key.trim();
        let value = value.trim().trim_matches('"');
        let Some(&known) = KEYS.iter().find(|&&k| k == key) else {
            return Err(SweepError::UnknownKey(key.to_string()));
        };
        if seen.contains(&known) {
            return Err(syntax(line, format!("duplicate key {key}")));
        }
        seen.push(known);
        match known {
            "t_frame_ms" => cfg.t_frame_ms = parse_num(line, key, value)?,
            "tau_c_ms" => cfg.tau_c_ms = parse_num(line, key, value)?,
            "tau_t_ms" => cfg.tau_t_ms = parse_num(line, key, value)?,
            "tau_i_ms" => cfg.tau_i_ms = parse_num(line, key, value)?,
            "distribution" => cfg.dist = value.parse()?,
            "frames" => cfg.frames = parse_num(line, key, value)?,
            "seed" => cfg.seed = parse_num(line, key, value)?,
            "m_max" => cfg.m_max = parse_num(line, key, value)?,
            "m_max_values" => {
                cfg.m_max_values = parse_values(value).map_err(|m| syntax(line, m))?
            }
            "t_frame_values" => {
                cfg.t_frame_values = parse_values(value).map_err(|m| syntax(line, m))?
            }
            _ => unreachable!("key list and match arms agree"),
        }
    }
    // Validate everything the sweeps will need up front.
    cfg.sweep_spec(SweepKind::MMax)?;
    cfg.sweep_spec(SweepKind::TFrame)?;
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig, SweepError> {
    parse_config(&std::fs::read_to_string(path)?)
}
