//! One RTS-TDMA frame: contention access, SIC at the roadside unit, slot
//! assignment broadcast, and contention-free transmission.

use std::fmt;

use rand::seq::index;
use rand::Rng;
use thiserror::Error;

use crate::degree_dist::DegreeDistribution;
use crate::sic::{peel, CapInstance, DecodeOutcome, RequestTransmission, VehicleId};
use crate::timing::TimingConfig;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProtocolError {
    #[error("infeasible frame: {0} contention slots")]
    Infeasible(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    RtsTdma,
    Csa,
}

impl Scheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::RtsTdma => "rts_tdma",
            Scheme::Csa => "csa",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What happened in one frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameResult {
    pub scheme: Scheme,
    /// Number of contending vehicles.
    pub offered: usize,
    /// Vehicles that delivered a safety packet, in slot order for RTS-TDMA.
    pub granted: Vec<VehicleId>,
    pub successes: usize,
    /// Decoder output the grants were taken from.
    pub outcome: DecodeOutcome,
}

/// Draws a contention phase for vehicles `1..=m` over `n_c` mini-slots.
///
/// Degrees are clamped to `n_c` since copies occupy distinct mini-slots.
pub fn run_cap<R: Rng + ?Sized>(
    m: usize,
    n_c: usize,
    dist: &DegreeDistribution,
    rng: &mut R,
) -> Result<CapInstance, ProtocolError> {
    if n_c < 1 {
        return Err(ProtocolError::Infeasible(n_c as i64));
    }
    let transmissions = (1..=m)
        .map(|id| {
            let degree = (dist.sample_degree(rng) as usize).min(n_c);
            let mut slots: Vec<usize> = index::sample(rng, n_c, degree)
                .into_iter()
                .map(|s| s + 1)
                .collect();
            slots.sort_unstable();
            RequestTransmission::new(id as u32, slots)
        })
        .collect();
    Ok(CapInstance::new(n_c, transmissions).expect("generated instance is valid"))
}

/// The first `n_t` extracted vehicles, position `k` owning CTP slot `k + 1`.
pub fn assign_slots(outcome: &DecodeOutcome, n_t: usize) -> Vec<VehicleId> {
    outcome.extracted.iter().take(n_t).copied().collect()
}

/// Runs the feedback and transmission phases on an already realized CAP.
pub fn rts_frame_from_cap(cap: &CapInstance, n_t: usize) -> FrameResult {
    let outcome = peel(cap);
    let granted = assign_slots(&outcome, n_t);
    FrameResult {
        scheme: Scheme::RtsTdma,
        offered: cap.transmissions().len(),
        successes: granted.len(),
        granted,
        outcome,
    }
}

/// Simulates a full RTS-TDMA frame with `m` vehicles.
pub fn run_frame_rts<R: Rng + ?Sized>(
    m: usize,
    cfg: &TimingConfig,
    dist: &DegreeDistribution,
    rng: &mut R,
) -> Result<FrameResult, ProtocolError> {
    let n_c = cfg.mini_slot_count();
    if n_c < 1 {
        return Err(ProtocolError::Infeasible(n_c));
    }
    let cap = run_cap(m, n_c as usize, dist, rng)?;
    Ok(rts_frame_from_cap(&cap, cfg.n_t()))
}

/// Baseline decoding of a realized phase: every decoded packet is a
/// delivered safety packet, with no feedback and no truncation.
pub fn csa_frame_from_cap(cap: &CapInstance) -> FrameResult {
    let outcome = peel(cap);
    let granted = outcome.extracted.clone();
    FrameResult {
        scheme: Scheme::Csa,
        offered: cap.transmissions().len(),
        successes: granted.len(),
        granted,
        outcome,
    }
}

/// Simulates a baseline frame of `n_i` slots carrying full safety packets.
pub fn run_frame_csa<R: Rng + ?Sized>(
    m: usize,
    n_i: usize,
    dist: &DegreeDistribution,
    rng: &mut R,
) -> Result<FrameResult, ProtocolError> {
    let cap = run_cap(m, n_i, dist, rng)?;
    Ok(csa_frame_from_cap(&cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fig3() -> CapInstance {
        CapInstance::new(
            8,
            vec![
                RequestTransmission::new(1, vec![3, 5, 6]),
                RequestTransmission::new(2, vec![1, 3]),
                RequestTransmission::new(3, vec![1, 4]),
                RequestTransmission::new(4, vec![6, 8]),
                RequestTransmission::new(5, vec![6, 8]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn empty_cap() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let cap = run_cap(0, 10, &DegreeDistribution::default(), &mut rng).unwrap();
        assert!(cap.transmissions().is_empty());
    }

    #[test]
    fn cap_shape() {
        let dist = DegreeDistribution::new(vec![(3, 1.0)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let cap = run_cap(1, 8, &dist, &mut rng).unwrap();
            let tx = &cap.transmissions()[0];
            assert_eq!(tx.vehicle, VehicleId(1));
            assert_eq!(tx.copy_slots.len(), 3);
            assert!(tx.copy_slots.iter().all(|&s| (1..=8).contains(&s)));
        }
    }

    #[test]
    fn degree_clamped_to_slot_count() {
        let dist = DegreeDistribution::new(vec![(8, 1.0)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cap = run_cap(2, 3, &dist, &mut rng).unwrap();
        assert!(cap
            .transmissions()
            .iter()
            .all(|t| t.copy_slots == vec![1, 2, 3]));
    }

    #[test]
    fn zero_slots_is_infeasible() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(
            run_cap(1, 0, &DegreeDistribution::default(), &mut rng),
            Err(ProtocolError::Infeasible(0))
        );
        assert!(run_frame_csa(1, 0, &DegreeDistribution::default(), &mut rng).is_err());
        let cfg = TimingConfig::reference(193);
        assert!(matches!(
            run_frame_rts(1, &cfg, &DegreeDistribution::default(), &mut rng),
            Err(ProtocolError::Infeasible(n)) if n < 0
        ));
    }

    #[test]
    fn assignment_truncates_in_order() {
        let outcome = DecodeOutcome {
            extracted: [3, 1, 2].into_iter().map(VehicleId).collect(),
            ..Default::default()
        };
        assert_eq!(assign_slots(&outcome, 5), outcome.extracted);
        let four = DecodeOutcome {
            extracted: [1, 2, 3, 4].into_iter().map(VehicleId).collect(),
            ..Default::default()
        };
        assert_eq!(assign_slots(&four, 2), vec![VehicleId(1), VehicleId(2)]);
        assert!(assign_slots(&DecodeOutcome::default(), 7).is_empty());
    }

    #[test]
    fn worked_example_frame() {
        let frame = rts_frame_from_cap(&fig3(), 5);
        assert_eq!(frame.successes, 3);
        assert_eq!(
            frame.granted,
            vec![VehicleId(3), VehicleId(1), VehicleId(2)]
        );
        // truncated feedback
        assert_eq!(rts_frame_from_cap(&fig3(), 2).successes, 2);
        // baseline shares the decoder
        assert_eq!(csa_frame_from_cap(&fig3()).granted, frame.granted);
    }

    #[test]
    fn lone_vehicle_always_succeeds() {
        let dist = DegreeDistribution::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let cfg = TimingConfig::reference(1);
        for _ in 0..50 {
            assert_eq!(
                run_frame_rts(1, &cfg, &dist, &mut rng).unwrap().successes,
                1
            );
            assert_eq!(run_frame_csa(1, 200, &dist, &mut rng).unwrap().successes, 1);
        }
        assert_eq!(run_frame_csa(0, 200, &dist, &mut rng).unwrap().successes, 0);
    }

    #[test]
    fn frames_reproduce_under_seed() {
        let dist = DegreeDistribution::default();
        let cfg = TimingConfig::reference(150);
        let a = run_frame_rts(150, &cfg, &dist, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        let b = run_frame_rts(150, &cfg, &dist, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        assert_eq!(a, b);
    }
}
