//! Sweeps, fleet advice, configuration and file formats on top of
//! [`rescuenet_core`].

pub mod config;
pub mod csv_io;
pub mod error;
pub mod parallel;
pub mod platforms;
pub mod report;
pub mod sweep;

pub use config::{FleetGridEntry, ScenarioConfig};
pub use csv_io::{emit_csv, read_csv, write_csv, CsvRow};
pub use error::{Error, Result};
pub use parallel::RayonExecutor;
pub use platforms::PlatformTable;
pub use rescuenet_core as model;
pub use sweep::{
    run_distance_sweep, run_radius_sweep, SweepPlan, SweepRecord, SweepResult, SweptVariable,
};
