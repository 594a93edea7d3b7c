//! Seeded Monte-Carlo sweeps comparing RTS-TDMA against the CSA baseline.
//!
//! Every frame gets its own random source, seeded from
//! `(master seed, point index, scheme, frame index)`. Frames therefore run in
//! any order (and in parallel) without changing the report, and raising the
//! frame count leaves the earlier frames untouched.

mod config;
mod instance;
mod report;

pub use config::{load_config, parse_config, parse_values, ExperimentConfig};
pub use instance::{load_instance, parse_instance};
pub use report::{format_sig, write_csv, write_csv_to, SweepReport, SweepRow, CSV_HEADER};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::degree_dist::{DegreeDistribution, DistributionError};
use crate::protocol::{run_frame_csa, run_frame_rts, Scheme};
use crate::sic::InstanceError;
use crate::timing::{TimingConfig, TimingError};

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error(transparent)]
    Distribution(#[from] DistributionError),
    #[error(transparent)]
    Timing(#[from] TimingError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("invalid sweep: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    /// `N_t = M = M_max` varies at fixed frame duration.
    MMax,
    /// Frame duration varies at fixed `N_t = M = M_max`.
    TFrame,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    kind: SweepKind,
    values: Vec<f64>,
    /// Fixed timing; the swept field is overwritten per point.
    timing: TimingConfig,
    frames: usize,
    seed: u64,
    dist: DegreeDistribution,
}

impl SweepSpec {
    pub fn new(
        kind: SweepKind,
        values: Vec<f64>,
        timing: TimingConfig,
        frames: usize,
        seed: u64,
        dist: DegreeDistribution,
    ) -> Result<Self, SweepError> {
        if values.is_empty() {
            return Err(SweepError::InvalidSpec("no sweep values".into()));
        }
        if values.iter().any(|v| !v.is_finite()) || values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SweepError::InvalidSpec(
                "sweep values must be finite and strictly ascending".into(),
            ));
        }
        if frames < 1 {
            return Err(SweepError::InvalidSpec(
                "frames per point must be at least 1".into(),
            ));
        }
        for &v in &values {
            match kind {
                SweepKind::MMax if !(v >= 0.0 && v.fract() == 0.0 && v.is_finite()) => {
                    return Err(SweepError::InvalidSpec(format!(
                        "vehicle count {v} is not a non-negative integer"
                    )));
                }
                SweepKind::TFrame => {
                    timing.with_t_frame(v)?;
                }
                _ => {}
            }
        }
        Ok(Self {
            kind,
            values,
            timing,
            frames,
            seed,
            dist,
        })
    }

    pub fn kind(&self) -> SweepKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn frames(&self) -> usize {
        self.frames
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `(vehicle count, timing)` at one sweep point.
    pub fn point(&self, value: f64) -> (usize, TimingConfig) {
        match self.kind {
            SweepKind::MMax => {
                let m = value as usize;
                (m, self.timing.with_n_t(m))
            }
            SweepKind::TFrame => {
                let cfg = self
                    .timing
                    .with_t_frame(value)
                    .expect("validated at construction");
                (cfg.n_t(), cfg)
            }
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of one simulated frame.
pub fn frame_seed(master: u64, point: usize, scheme: Scheme, frame: usize) -> u64 {
    let scheme = match scheme {
        Scheme::RtsTdma => 0u64,
        Scheme::Csa => 1,
    };
    [point as u64, scheme, frame as u64]
        .into_iter()
        .fold(splitmix64(master), |acc, x| splitmix64(acc ^ splitmix64(x)))
}

fn mean_and_stderr(samples: &[usize]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<usize>() as f64 / n;
    if samples.len() < 2 {
        return (mean, 0.0);
    }
    let var = samples
        .iter()
        .map(|&s| (s as f64 - mean).powi(2))
        .sum::<f64>()
        / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn simulate_point(spec: &SweepSpec, index: usize, value: f64) -> [SweepRow; 2] {
    let (m, cfg) = spec.point(value);
    let n_c = cfg.mini_slot_count();
    let n_i = cfg.baseline_slot_count();
    let base = SweepRow {
        sweep_value: value,
        scheme: Scheme::RtsTdma,
        offered: m,
        mean_throughput: None,
        std_error: None,
        frames: 0,
        seed: spec.seed,
        n_c,
        n_i,
        feasible: false,
    };

    let run = |scheme: Scheme| -> Vec<usize> {
        (0..spec.frames)
            .into_par_iter()
            .map(|f| {
                let mut rng = ChaCha8Rng::seed_from_u64(frame_seed(spec.seed, index, scheme, f));
                let frame = match scheme {
                    Scheme::RtsTdma => run_frame_rts(m, &cfg, &spec.dist, &mut rng),
                    Scheme::Csa => run_frame_csa(m, n_i as usize, &spec.dist, &mut rng),
                }
                .expect("feasibility checked before simulating");
                let cap = match scheme {
                    Scheme::RtsTdma => m.min(cfg.n_t()),
                    Scheme::Csa => m,
                };
                assert!(frame.successes <= cap, "frame exceeded its success cap");
                frame.successes
            })
            .collect()
    };
    let simulated = |scheme: Scheme, feasible: bool| {
        if !feasible {
            return SweepRow {
                scheme,
                ..base.clone()
            };
        }
        let (mean, se) = mean_and_stderr(&run(scheme));
        SweepRow {
            scheme,
            mean_throughput: Some(mean),
            std_error: Some(se),
            frames: spec.frames,
            feasible: true,
            ..base.clone()
        }
    };
    [
        simulated(Scheme::RtsTdma, n_c >= 1),
        simulated(Scheme::Csa, n_i >= 1),
    ]
}

/// Runs any sweep.
pub fn run_sweep(spec: &SweepSpec) -> SweepReport {
    let rows = spec
        .values
        .iter()
        .enumerate()
        .flat_map(|(i, &v)| simulate_point(spec, i, v))
        .collect();
    SweepReport { rows }
}

fn expect_kind(spec: &SweepSpec, kind: SweepKind) -> Result<(), SweepError> {
    if spec.kind != kind {
        return Err(SweepError::InvalidSpec(format!(
            "expected a {kind:?} sweep, got {:?}",
            spec.kind
        )));
    }
    Ok(())
}

/// Throughput versus `M_max` with `N_t = M = M_max`.
pub fn sweep_mmax(spec: &SweepSpec) -> Result<SweepReport, SweepError> {
    expect_kind(spec, SweepKind::MMax)?;
    Ok(run_sweep(spec))
}

/// Throughput versus frame duration at fixed `M_max`.
pub fn sweep_tframe(spec: &SweepSpec) -> Result<SweepReport, SweepError> {
    expect_kind(spec, SweepKind::TFrame)?;
    Ok(run_sweep(spec))
}
