//! Successive interference cancellation over one contention access phase.
//!
//! Each vehicle repeats its request packet in a set of mini-slots. Every copy
//! points at its siblings, so decoding any clean copy (a mini-slot holding a
//! single undecoded copy) reveals the vehicle and lets the receiver cancel the
//! remaining copies. Peeling proceeds in passes over the mini-slots in
//! ascending index order until a pass extracts nothing.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::degree_dist::MAX_DEGREE;

/// Identity of a vehicle inside one service zone. Always positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VehicleId(pub u32);

impl fmt::Display for VehicleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("vehicle id must be positive")]
    ZeroVehicleId,
    #[error("vehicle {0} appears more than once")]
    DuplicateVehicle(VehicleId),
    #[error("vehicle {vehicle} sends {copies} copies, expected 1..={max}")]
    BadDegree {
        vehicle: VehicleId,
        copies: usize,
        max: u32,
    },
    #[error("vehicle {vehicle}: copy slots must be strictly increasing")]
    UnsortedSlots { vehicle: VehicleId },
    #[error("vehicle {vehicle}: slot {slot} outside [1, {n_c}]")]
    SlotOutOfRange {
        vehicle: VehicleId,
        slot: usize,
        n_c: usize,
    },
}

/// One vehicle's repeated request: the mini-slots (1-based) carrying a copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RequestTransmission {
    pub vehicle: VehicleId,
    pub copy_slots: Vec<usize>,
}

impl RequestTransmission {
    pub fn new(vehicle: u32, copy_slots: Vec<usize>) -> Self {
        Self {
            vehicle: VehicleId(vehicle),
            copy_slots,
        }
    }

    /// Slots that the copy in `slot` points at.
    pub fn pointer(&self, slot: usize) -> Vec<usize> {
        self.copy_slots
            .iter()
            .copied()
            .filter(|&s| s != slot)
            .collect()
    }
}

/// A realized contention access phase. Only constructible in a valid state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapInstance {
    n_c: usize,
    transmissions: Vec<RequestTransmission>,
}

impl CapInstance {
    pub fn new(n_c: usize, transmissions: Vec<RequestTransmission>) -> Result<Self, InstanceError> {
        let mut ids = HashSet::with_capacity(transmissions.len());
        for tx in &transmissions {
            if tx.vehicle.0 == 0 {
                return Err(InstanceError::ZeroVehicleId);
            }
            if !ids.insert(tx.vehicle) {
                return Err(InstanceError::DuplicateVehicle(tx.vehicle));
            }
            let copies = tx.copy_slots.len();
            if copies == 0 || copies > MAX_DEGREE as usize {
                return Err(InstanceError::BadDegree {
                    vehicle: tx.vehicle,
                    copies,
                    max: MAX_DEGREE,
                });
            }
            if tx.copy_slots.windows(2).any(|w| w[0] >= w[1]) {
                return Err(InstanceError::UnsortedSlots {
                    vehicle: tx.vehicle,
                });
            }
            if let Some(&slot) = tx.copy_slots.iter().find(|&&s| s == 0 || s > n_c) {
                return Err(InstanceError::SlotOutOfRange {
                    vehicle: tx.vehicle,
                    slot,
                    n_c,
                });
            }
        }
        Ok(Self { n_c, transmissions })
    }

    /// A phase with no transmitters.
    pub fn empty(n_c: usize) -> Self {
        Self {
            n_c,
            transmissions: Vec::new(),
        }
    }

    pub fn n_c(&self) -> usize {
        self.n_c
    }

    pub fn transmissions(&self) -> &[RequestTransmission] {
        &self.transmissions
    }

    pub fn total_copies(&self) -> usize {
        self.transmissions.iter().map(|t| t.copy_slots.len()).sum()
    }

    /// Same phase without `vehicle`'s transmissions.
    pub fn without(&self, vehicle: VehicleId) -> Self {
        Self {
            n_c: self.n_c,
            transmissions: self
                .transmissions
                .iter()
                .filter(|t| t.vehicle != vehicle)
                .cloned()
                .collect(),
        }
    }
}

/// Result of peeling one phase.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DecodeOutcome {
    /// Vehicles in the order they were extracted; this is the assignment list.
    pub extracted: Vec<VehicleId>,
    /// Number of passes performed, including a final pass that found nothing.
    pub iterations: usize,
    /// Mini-slots still holding two or more undecoded copies.
    pub residual_slots: Vec<usize>,
}

/// One extraction during peeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEvent {
    pub iteration: usize,
    pub slot: usize,
    pub vehicle: VehicleId,
    pub cancelled: Vec<usize>,
}

/// Full record of a peeling run.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DecodeTrace {
    pub events: Vec<TraceEvent>,
    pub iterations: usize,
    pub residual_slots: Vec<usize>,
}

impl DecodeTrace {
    /// Rebuilds the outcome by replaying the recorded extractions.
    pub fn outcome(&self) -> DecodeOutcome {
        DecodeOutcome {
            extracted: self.events.iter().map(|e| e.vehicle).collect(),
            iterations: self.iterations,
            residual_slots: self.residual_slots.clone(),
        }
    }
}

impl fmt::Display for DecodeTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.events {
            writeln!(
                f,
                "iter={} slot={} vehicle={} cancelled={}",
                e.iteration,
                e.slot,
                e.vehicle,
                join(&e.cancelled)
            )?;
        }
        writeln!(f, "residual={}", join(&self.residual_slots))
    }
}

fn join(slots: &[usize]) -> String {
    slots
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Runs SIC to its fixed point and returns the extraction order.
pub fn peel(cap: &CapInstance) -> DecodeOutcome {
    let (iterations, residual_slots, extracted) = run(cap, |_, _, _, _| {});
    DecodeOutcome {
        extracted,
        iterations,
        residual_slots,
    }
}

/// Same as [`peel`] but records every extraction.
pub fn decode_trace(cap: &CapInstance) -> DecodeTrace {
    let mut events = Vec::new();
    let (iterations, residual_slots, _) = run(cap, |iteration, slot, tx, cancelled| {
        events.push(TraceEvent {
            iteration,
            slot,
            vehicle: tx.vehicle,
            cancelled,
        })
    });
    DecodeTrace {
        events,
        iterations,
        residual_slots,
    }
}

fn run<F>(cap: &CapInstance, mut on_extract: F) -> (usize, Vec<usize>, Vec<VehicleId>)
where
    F: FnMut(usize, usize, &RequestTransmission, Vec<usize>),
{
    let n_c = cap.n_c;
    let txs = &cap.transmissions;
    // Per slot: number of undecoded copies and the XOR of their owners'
    // indices. When the count is 1 the XOR is the owner.
    let mut count = vec![0usize; n_c + 1];
    let mut owner_xor = vec![0usize; n_c + 1];
    for (t, tx) in txs.iter().enumerate() {
        for &s in &tx.copy_slots {
            count[s] += 1;
            owner_xor[s] ^= t;
        }
    }

    let mut extracted = Vec::with_capacity(txs.len());
    let mut iterations = 0;
    while extracted.len() < txs.len() {
        iterations += 1;
        let before = extracted.len();
        for slot in 1..=n_c {
            if count[slot] != 1 {
                continue;
            }
            let t = owner_xor[slot];
            let tx = &txs[t];
            for &s in &tx.copy_slots {
                count[s] -= 1;
                owner_xor[s] ^= t;
            }
            extracted.push(tx.vehicle);
            on_extract(iterations, slot, tx, tx.pointer(slot));
        }
        if extracted.len() == before {
            break;
        }
    }

    let residual = (1..=n_c).filter(|&s| count[s] >= 2).collect();
    (iterations, residual, extracted)
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: u32 = 1;
    const Y: u32 = 2;
    const Z: u32 = 3;
    const V: u32 = 4;
    const W: u32 = 5;

    fn fig3() -> CapInstance {
        CapInstance::new(
            8,
            vec![
                RequestTransmission::new(X, vec![3, 5, 6]),
                RequestTransmission::new(Y, vec![1, 3]),
                RequestTransmission::new(Z, vec![1, 4]),
                RequestTransmission::new(V, vec![6, 8]),
                RequestTransmission::new(W, vec![6, 8]),
            ],
        )
        .unwrap()
    }

    fn ids(v: &[u32]) -> Vec<VehicleId> {
        v.iter().copied().map(VehicleId).collect()
    }

    #[test]
    fn worked_example() {
        let out = peel(&fig3());
        assert_eq!(out.extracted, ids(&[Z, X, Y]));
        assert_eq!(out.residual_slots, vec![6, 8]);
        assert_eq!(out.iterations, 3);
    }

    #[test]
    fn worked_example_trace() {
        let trace = decode_trace(&fig3());
        let e = &trace.events;
        assert_eq!(e.len(), 3);
        assert_eq!(
            (e[0].iteration, e[0].slot, e[0].vehicle),
            (1, 4, VehicleId(Z))
        );
        assert_eq!(e[0].cancelled, vec![1]);
        assert_eq!(
            (e[1].iteration, e[1].slot, e[1].vehicle),
            (1, 5, VehicleId(X))
        );
        assert_eq!(e[1].cancelled, vec![3, 6]);
        assert_eq!(
            (e[2].iteration, e[2].slot, e[2].vehicle),
            (2, 1, VehicleId(Y))
        );
        assert_eq!(e[2].cancelled, vec![3]);
        assert_eq!(trace.iterations, 3);
        assert_eq!(trace.outcome(), peel(&fig3()));
        assert_eq!(
            trace.to_string(),
            "iter=1 slot=4 vehicle=3 cancelled=1\n\
             iter=1 slot=5 vehicle=1 cancelled=3,6\n\
             iter=2 slot=1 vehicle=2 cancelled=3\n\
             residual=6,8\n"
        );
    }

    #[test]
    fn lone_copy_is_clean() {
        let cap = CapInstance::new(1, vec![RequestTransmission::new(1, vec![1])]).unwrap();
        let out = peel(&cap);
        assert_eq!(out.extracted, ids(&[1]));
        assert!(out.residual_slots.is_empty());
        assert_eq!(out.iterations, 1);
    }

    #[test]
    fn identical_pairs_deadlock() {
        let cap = CapInstance::new(
            2,
            vec![
                RequestTransmission::new(1, vec![1, 2]),
                RequestTransmission::new(2, vec![1, 2]),
            ],
        )
        .unwrap();
        let out = peel(&cap);
        assert!(out.extracted.is_empty());
        assert_eq!(out.residual_slots, vec![1, 2]);
    }

    #[test]
    fn empty_instance_has_empty_trace() {
        let trace = decode_trace(&CapInstance::empty(4));
        assert!(trace.events.is_empty());
        assert_eq!(trace.iterations, 0);
        assert_eq!(trace.to_string(), "residual=\n");
    }

    #[test]
    fn disjoint_singletons_in_slot_order() {
        let cap = CapInstance::new(
            2,
            vec![
                RequestTransmission::new(2, vec![2]),
                RequestTransmission::new(1, vec![1]),
            ],
        )
        .unwrap();
        let trace = decode_trace(&cap);
        assert_eq!(trace.events.len(), 2);
        assert!(trace.events.iter().all(|e| e.iteration == 1));
        assert_eq!(trace.outcome().extracted, ids(&[1, 2]));
        assert_eq!(trace.iterations, 1);
    }

    #[test]
    fn clean_in_two_slots_is_extracted_once() {
        // b is alone in slots 2 and 3 from the start
        let cap = CapInstance::new(
            3,
            vec![
                RequestTransmission::new(1, vec![1]),
                RequestTransmission::new(2, vec![2, 3]),
            ],
        )
        .unwrap();
        let trace = decode_trace(&cap);
        assert_eq!(trace.outcome().extracted, ids(&[1, 2]));
        assert_eq!(trace.events[1].slot, 2);
        assert_eq!(trace.events[1].cancelled, vec![3]);
    }

    #[test]
    fn malformed_instances_are_rejected() {
        use InstanceError::*;
        let one = |v: u32, s: Vec<usize>| vec![RequestTransmission::new(v, s)];
        assert_eq!(CapInstance::new(4, one(0, vec![1])), Err(ZeroVehicleId));
        assert!(matches!(
            CapInstance::new(4, one(1, vec![])),
            Err(BadDegree { copies: 0, .. })
        ));
        assert!(matches!(
            CapInstance::new(20, one(1, (1..=9).collect())),
            Err(BadDegree { copies: 9, .. })
        ));
        assert!(matches!(
            CapInstance::new(4, one(1, vec![2, 2])),
            Err(UnsortedSlots { .. })
        ));
        assert!(matches!(
            CapInstance::new(4, one(1, vec![3, 2])),
            Err(UnsortedSlots { .. })
        ));
        assert!(matches!(
            CapInstance::new(4, one(1, vec![0, 2])),
            Err(SlotOutOfRange { slot: 0, .. })
        ));
        assert!(matches!(
            CapInstance::new(4, one(1, vec![2, 5])),
            Err(SlotOutOfRange { slot: 5, .. })
        ));
        let mut dup = one(1, vec![1]);
        dup.extend(one(1, vec![2]));
        assert_eq!(
            CapInstance::new(4, dup),
            Err(DuplicateVehicle(VehicleId(1)))
        );
    }

    #[test]
    fn pointer_excludes_own_slot() {
        let tx = RequestTransmission::new(1, vec![3, 5, 6]);
        assert_eq!(tx.pointer(5), vec![3, 6]);
    }
}
