//! Coded slotted ALOHA baseline with repetition component codes.
//!
//! Full safety packets contend directly in `N_I = T_F / τ_I` slots. Decoded
//! packets are delivered; there is no feedback phase and no grant limit.
//! Pointers ride along at no cost, so the only difference from the
//! contention phase of RTS-TDMA is the slot count.

use rand::Rng;

use crate::degree_dist::DegreeDistribution;
use crate::protocol::{csa_frame_from_cap, run_frame_csa, FrameResult, ProtocolError};
use crate::sic::CapInstance;
use crate::timing::TimingConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct CsaConfig {
    n_i: usize,
    dist: DegreeDistribution,
}

impl CsaConfig {
    pub fn new(n_i: usize, dist: DegreeDistribution) -> Result<Self, ProtocolError> {
        if n_i < 1 {
            return Err(ProtocolError::Infeasible(n_i as i64));
        }
        Ok(Self { n_i, dist })
    }

    /// Baseline sharing the frame duration of `timing`.
    pub fn for_timing(
        timing: &TimingConfig,
        dist: DegreeDistribution,
    ) -> Result<Self, ProtocolError> {
        let n_i = timing.baseline_slot_count();
        if n_i < 1 {
            return Err(ProtocolError::Infeasible(n_i));
        }
        Self::new(n_i as usize, dist)
    }

    pub fn n_i(&self) -> usize {
        self.n_i
    }

    pub fn dist(&self) -> &DegreeDistribution {
        &self.dist
    }
}

pub fn csa_frame<R: Rng + ?Sized>(
    m: usize,
    cfg: &CsaConfig,
    rng: &mut R,
) -> Result<FrameResult, ProtocolError> {
    run_frame_csa(m, cfg.n_i, &cfg.dist, rng)
}

/// Baseline outcome for an externally supplied slot pattern.
pub fn csa_frame_on(cap: &CapInstance) -> FrameResult {
    csa_frame_from_cap(cap)
}
