//! Frame-level simulator and analytic calculator for RTS-TDMA, a vehicular
//! MAC that splits each frame into a repeated-request contention phase, a
//! slot-assignment feedback phase and a contention-free transmission phase,
//! compared against coded slotted ALOHA on the same frame.

pub mod analytic;
pub mod csa;
pub mod degree_dist;
pub mod harness;
pub mod protocol;
pub mod sic;
pub mod timing;

pub use degree_dist::{DegreeDistribution, DistributionError};
pub use protocol::{FrameResult, Scheme};
pub use sic::{decode_trace, peel, CapInstance, DecodeOutcome, RequestTransmission, VehicleId};
pub use timing::{TimingConfig, TimingError};
