//! Closed-form frame budget and the crossover points where the contention
//! phase has exactly as many mini-slots as the baseline has slots.

use std::fmt;

use thiserror::Error;

use crate::timing::{check_positive, TimingConfig, TimingError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error(transparent)]
    Timing(#[from] TimingError),
    #[error("vehicle count must be positive")]
    NoVehicles,
}

fn check_taus(tau_t: f64, tau_c: f64) -> Result<(), TimingError> {
    check_positive("tau_t", tau_t)?;
    check_positive("tau_c", tau_c)?;
    if tau_t <= tau_c {
        return Err(TimingError::Degenerate { tau_c, tau_t });
    }
    Ok(())
}

/// Integer mini-slot count implied by the frame budget.
pub fn mini_slot_count(cfg: &TimingConfig) -> i64 {
    cfg.mini_slot_count()
}

/// Continuous `N_c / N_I`.
pub fn slot_ratio(cfg: &TimingConfig) -> f64 {
    let r = cfg.tau_t() / cfg.tau_c();
    r - (r + 1.0) * cfg.n_t() as f64 * cfg.tau_i() / cfg.t_frame()
}

/// Vehicle count at which `N_c = N_I` for a fixed frame.
pub fn critical_mmax(
    t_frame: f64,
    tau_i: f64,
    tau_t: f64,
    tau_c: f64,
) -> Result<f64, AnalyticError> {
    check_taus(tau_t, tau_c)?;
    check_positive("t_frame", t_frame)?;
    check_positive("tau_i", tau_i)?;
    Ok(t_frame / tau_i * (tau_t - tau_c) / (tau_t + tau_c))
}

/// Frame duration at which `N_c = N_I` for a fixed vehicle count.
pub fn critical_tframe(
    m_max: f64,
    tau_i: f64,
    tau_t: f64,
    tau_c: f64,
) -> Result<f64, AnalyticError> {
    check_taus(tau_t, tau_c)?;
    check_positive("tau_i", tau_i)?;
    if m_max.is_nan() || m_max <= 0.0 {
        return Err(AnalyticError::NoVehicles);
    }
    Ok(m_max * tau_i * (tau_t + tau_c) / (tau_t - tau_c))
}

/// `M_max / N*_I` at the critical frame duration.
pub fn critical_load(tau_t: f64, tau_c: f64) -> Result<f64, AnalyticError> {
    check_taus(tau_t, tau_c)?;
    Ok((tau_t - tau_c) / (tau_t + tau_c))
}

/// Largest `n_t` for which the integer geometry still gives `N_c > N_I`.
/// `None` when even an empty CTP does not beat the baseline.
pub fn mmax_threshold(cfg: &TimingConfig) -> Option<usize> {
    let n_i = cfg.baseline_slot_count();
    let beats = |n_t: usize| cfg.with_n_t(n_t).mini_slot_count() > n_i;
    if !beats(0) {
        return None;
    }
    // mini_slot_count is non-increasing in n_t and negative past T_F / τ_t
    let upper = (cfg.t_frame() / cfg.tau_t()).ceil() as usize + 1;
    let (mut lo, mut hi) = (0usize, upper);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if beats(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoints {
    /// Critical vehicle count for the config's frame duration.
    pub m_max_star: f64,
    /// Critical frame duration (ms) for the config's `n_t`.
    pub t_f_star: f64,
    pub load_star: f64,
}

impl CriticalPoints {
    pub fn n_i_star(&self, tau_i: f64) -> f64 {
        self.t_f_star / tau_i
    }
}

/// Critical points for `cfg`, taking `cfg.n_t()` as `M_max`.
pub fn critical_points(cfg: &TimingConfig) -> Result<CriticalPoints, AnalyticError> {
    Ok(CriticalPoints {
        m_max_star: critical_mmax(cfg.t_frame(), cfg.tau_i(), cfg.tau_t(), cfg.tau_c())?,
        t_f_star: critical_tframe(cfg.n_t() as f64, cfg.tau_i(), cfg.tau_t(), cfg.tau_c())?,
        load_star: critical_load(cfg.tau_t(), cfg.tau_c())?,
    })
}

/// Everything the `analytic` subcommand prints.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticReport {
    pub cfg: TimingConfig,
    pub critical: CriticalPoints,
    pub n_c: i64,
    pub n_i: i64,
    pub slot_ratio: f64,
    pub mmax_threshold: Option<usize>,
}

impl AnalyticReport {
    pub fn new(cfg: TimingConfig) -> Result<Self, AnalyticError> {
        Ok(Self {
            critical: critical_points(&cfg)?,
            n_c: cfg.mini_slot_count(),
            n_i: cfg.baseline_slot_count(),
            slot_ratio: slot_ratio(&cfg),
            mmax_threshold: mmax_threshold(&cfg),
            cfg,
        })
    }
}

impl fmt::Display for AnalyticReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.cfg;
        let k = &self.critical;
        writeln!(f, "t_frame_ms={}", c.t_frame())?;
        writeln!(f, "tau_c_ms={}", c.tau_c())?;
        writeln!(f, "tau_t_ms={}", c.tau_t())?;
        writeln!(f, "tau_i_ms={}", c.tau_i())?;
        writeln!(f, "m_max={}", c.n_t())?;
        writeln!(f, "t_feedback_ms={:.6}", c.t_feedback())?;
        writeln!(f, "n_c={}", self.n_c)?;
        writeln!(f, "n_i={}", self.n_i)?;
        writeln!(f, "feasible={}", self.n_c >= 1)?;
        writeln!(f, "slot_ratio={:.6}", self.slot_ratio)?;
        writeln!(f, "m_max_star={:.6}", k.m_max_star)?;
        writeln!(f, "m_max_star_floor={}", k.m_max_star.floor())?;
        writeln!(f, "m_max_star_ceil={}", k.m_max_star.ceil())?;
        match self.mmax_threshold {
            Some(m) => writeln!(f, "m_max_threshold={m}")?,
            None => writeln!(f, "m_max_threshold=none")?,
        }
        writeln!(f, "t_frame_star_ms={:.6}", k.t_f_star)?;
        writeln!(f, "n_i_star={:.6}", k.n_i_star(c.tau_i()))?;
        writeln!(f, "load_star={:.6}", k.load_star)
    }
}
