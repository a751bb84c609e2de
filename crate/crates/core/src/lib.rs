//! Stochastic-geometry engine for post-disaster cellular networks.
//!
//! Terrestrial base stations (TBSs) are drawn from homogeneous or Gaussian
//! inhomogeneous Poisson fields, every TBS inside a circular disaster region
//! fails, and a fleet of aerial base stations (ABSs) is spread uniformly above
//! the region. The typical user sits at the disaster center and associates to
//! the strongest average-power candidate; every other base station interferes.
//!
//! The crate is `no_std` (it needs `alloc`). Parallel execution, file formats
//! and the command line live in the `rescuenet` crate, which plugs into
//! [`Executor`].
//!
//! - [`fields`]: point processes, disaster failure, fleet deployment
//! - [`channel`]: platform profiles, LoS model, path loss, fading
//! - [`link`]: association, SINR, Shannon rate
//! - [`estimate`]: Monte Carlo estimation of ergodic capacity and coverage
//! - [`advisor`]: successive-halving search for the best fleet
#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod advisor;
pub mod channel;
pub mod error;
pub mod estimate;
pub mod fields;
pub mod geometry;
pub mod link;
pub mod math;
pub mod scenario;
pub mod stream;

pub use advisor::{advise, AdvisorReport, Candidate, CandidateOutcome, HalvingSchedule};
pub use channel::{
    draw_fading, draw_link_state, los_probability, mean_received_power, LinkParams, LinkState,
    LosModel, Mount, PlatformProfile, Propagation,
};
pub use error::{Error, Result};
pub use estimate::{
    estimate_batch, estimate_metrics, summarize, CapacityMode, Executor, IterationOutcome,
    MetricEstimate, Sequential,
};
pub use fields::{
    apply_disaster, deploy_fleet, deploy_uav, sample_gaussian_ippp, sample_hppp, DisasterSpec,
    FleetLayout, TownModel,
};
pub use geometry::{AerialPoint, GroundPoint};
pub use link::{
    associate, instantaneous_sinr, shannon_rate, Association, RadioGlobals, ServingKind,
};
pub use scenario::{Fading, FleetSpec, Scenario};
pub use stream::{Purpose, StreamKey};
