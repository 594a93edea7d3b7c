//! Frame geometry.
//!
//! A frame of length `T_F` holds a contention access phase of `N_c`
//! mini-slots (`τ_c` each), a feedback phase of `N_t · τ_c` and a
//! contention-free phase of `N_t` time slots (`τ_t` each). The baseline
//! splits the same frame into `N_I = T_F / τ_I` slots.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TimingError {
    #[error("{name} must be strictly positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("mini-slot duration {tau_c} ms must be shorter than time-slot duration {tau_t} ms")]
    Degenerate { tau_c: f64, tau_t: f64 },
    #[error("baseline slot duration {tau_i} ms must equal time-slot duration {tau_t} ms")]
    SlotMismatch { tau_i: f64, tau_t: f64 },
}

/// Floors `x`, treating values within a relative 1e-9 of the next integer as
/// that integer so decimal durations like 0.02 ms divide cleanly.
pub(crate) fn floor_tolerant(x: f64) -> i64 {
    let nearest = x.round();
    if (x - nearest).abs() <= 1e-9 * nearest.abs().max(1.0) {
        nearest as i64
    } else {
        x.floor() as i64
    }
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<(), TimingError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(TimingError::NonPositive { name, value })
    }
}

/// Durations are in milliseconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimingConfig {
    t_frame: f64,
    tau_c: f64,
    tau_t: f64,
    tau_i: f64,
    n_t: usize,
}

impl TimingConfig {
    pub fn new(
        t_frame: f64,
        tau_c: f64,
        tau_t: f64,
        tau_i: f64,
        n_t: usize,
    ) -> Result<Self, TimingError> {
        check_positive("t_frame", t_frame)?;
        check_positive("tau_c", tau_c)?;
        check_positive("tau_t", tau_t)?;
        check_positive("tau_i", tau_i)?;
        if tau_c >= tau_t {
            return Err(TimingError::Degenerate { tau_c, tau_t });
        }
        if (tau_i - tau_t).abs() > 1e-12 * tau_t {
            return Err(TimingError::SlotMismatch { tau_i, tau_t });
        }
        Ok(Self {
            t_frame,
            tau_c,
            tau_t,
            tau_i,
            n_t,
        })
    }

    /// 100 ms frames, 0.02 ms mini-slots, 0.5 ms time slots.
    pub fn reference(n_t: usize) -> Self {
        Self::new(100.0, 0.02, 0.5, 0.5, n_t).expect("reference timing is valid")
    }

    pub fn with_n_t(self, n_t: usize) -> Self {
        Self { n_t, ..self }
    }

    pub fn with_t_frame(self, t_frame: f64) -> Result<Self, TimingError> {
        check_positive("t_frame", t_frame)?;
        Ok(Self { t_frame, ..self })
    }

    pub fn t_frame(&self) -> f64 {
        self.t_frame
    }

    pub fn tau_c(&self) -> f64 {
        self.tau_c
    }

    pub fn tau_t(&self) -> f64 {
        self.tau_t
    }

    pub fn tau_i(&self) -> f64 {
        self.tau_i
    }

    pub fn n_t(&self) -> usize {
        self.n_t
    }

    /// Feedback phase duration: one mini-slot per allocation field.
    pub fn t_feedback(&self) -> f64 {
        self.n_t as f64 * self.tau_c
    }

    /// Mini-slots left for contention. Zero or negative means the frame
    /// cannot host the requested number of time slots.
    pub fn mini_slot_count(&self) -> i64 {
        let n_t = self.n_t as f64;
        floor_tolerant((self.t_frame - n_t * self.tau_c - n_t * self.tau_t) / self.tau_c)
    }

    /// Slots per frame for the baseline.
    pub fn baseline_slot_count(&self) -> i64 {
        floor_tolerant(self.t_frame / self.tau_i)
    }

    pub fn is_feasible(&self) -> bool {
        self.mini_slot_count() >= 1
    }
}
