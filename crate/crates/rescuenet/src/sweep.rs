//! Sweeps over the disaster radius (homogeneous town) or the disaster's
//! distance from the town center (Gaussian town).

use rescuenet_core::{
    estimate_batch, CapacityMode, Error as ModelError, Executor, FleetSpec, MetricEstimate,
    Scenario, TownModel,
};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweptVariable {
    /// Disaster radius rho_d.
    DisasterRadius,
    /// Distance r_c between disaster and town center.
    CenterDistance,
}

impl SweptVariable {
    /// Label used in the CSV `sweep_variable` column.
    pub fn label(self) -> &'static str {
        match self {
            SweptVariable::DisasterRadius => "rho_d",
            SweptVariable::CenterDistance => "r_c",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        match label {
            "rho_d" => Some(SweptVariable::DisasterRadius),
            "r_c" => Some(SweptVariable::CenterDistance),
            _ => None,
        }
    }

    /// Default axis in km.
    pub fn default_range(self) -> (f64, f64) {
        match self {
            SweptVariable::DisasterRadius => (0.1, 5.0),
            SweptVariable::CenterDistance => (0.0, 30.0),
        }
    }

    pub fn default_fleets(self) -> Vec<crate::config::FleetGridEntry> {
        let sizes = match self {
            SweptVariable::DisasterRadius => vec![0, 1, 5, 15, 30],
            SweptVariable::CenterDistance => vec![0, 1, 5, 15],
        };
        vec![crate::config::FleetGridEntry {
            platform: "drone".into(),
            sizes,
        }]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan {
    pub variable: SweptVariable,
    /// Strictly increasing axis values in km.
    pub values: Vec<f64>,
    pub fleets: Vec<FleetSpec>,
    pub iterations: u64,
    pub seed: u64,
}

impl SweepPlan {
    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::config("sweep.values", "must not be empty"));
        }
        if !self.values.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::config("sweep.values", "must be strictly increasing"));
        }
        if self.fleets.is_empty() {
            return Err(Error::config("sweep.fleets", "needs at least one entry"));
        }
        if self.iterations == 0 {
            return Err(Error::config("sweep.iterations", "must be >= 1"));
        }
        Ok(())
    }
}

/// One estimate at one axis value for one fleet.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub variable: SweptVariable,
    pub value: f64,
    pub platform: String,
    pub fleet_size: usize,
    pub mode: CapacityMode,
    /// `None` when a conditional estimate is undefined (no covered iteration).
    pub estimate: Option<MetricEstimate>,
    pub coverage_probability: f64,
    pub iterations: u64,
    pub seed: u64,
}

/// Records ordered by fleet (plan order), then axis value.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepResult {
    pub records: Vec<SweepRecord>,
}

impl SweepResult {
    /// Records of one fleet, in axis order.
    pub fn curve<'a>(
        &'a self,
        platform: &'a str,
        fleet_size: usize,
    ) -> impl Iterator<Item = &'a SweepRecord> + 'a {
        self.records
            .iter()
            .filter(move |r| r.platform == platform && r.fleet_size == fleet_size)
    }
}

fn run_sweep<E: Executor>(
    plan: &SweepPlan,
    base: &Scenario,
    executor: &E,
    apply: impl Fn(&mut Scenario, f64),
) -> Result<SweepResult> {
    plan.validate()?;
    let mut columns: Vec<Vec<SweepRecord>> =
        vec![Vec::with_capacity(plan.values.len()); plan.fleets.len()];
    for (i, &value) in plan.values.iter().enumerate() {
        let mut scenario = base.clone();
        apply(&mut scenario, value);
        // one substream family per axis point, shared by every fleet
        let results = estimate_batch(
            &scenario,
            &plan.fleets,
            plan.iterations,
            plan.seed,
            i as u64,
            executor,
        )?;
        for ((column, fleet), result) in columns.iter_mut().zip(&plan.fleets).zip(results) {
            let (estimate, coverage_probability) = match result {
                Ok(e) => (Some(e), e.coverage_probability),
                Err(ModelError::UndefinedEstimate {
                    coverage_probability,
                }) => (None, coverage_probability),
                Err(e) => return Err(e.into()),
            };
            column.push(SweepRecord {
                variable: plan.variable,
                value,
                platform: fleet.platform.name.clone(),
                fleet_size: fleet.size,
                mode: scenario.mode,
                estimate,
                coverage_probability,
                iterations: plan.iterations,
                seed: plan.seed,
            });
        }
    }
    Ok(SweepResult {
        records: columns.into_iter().flatten().collect(),
    })
}

/// Sweeps the disaster radius over a homogeneous town.
pub fn run_radius_sweep<E: Executor>(
    plan: &SweepPlan,
    base: &Scenario,
    executor: &E,
) -> Result<SweepResult> {
    if !matches!(base.town, TownModel::Homogeneous { .. }) {
        return Err(Error::config(
            "town.model",
            "the radius sweep needs a homogeneous town",
        ));
    }
    if plan.variable != SweptVariable::DisasterRadius {
        return Err(Error::config(
            "sweep",
            "plan does not sweep the disaster radius",
        ));
    }
    run_sweep(plan, base, executor, |s, v| s.disaster.radius = v)
}

/// Sweeps the disaster's distance from the town center over a Gaussian town,
/// keeping the base scenario's radius.
pub fn run_distance_sweep<E: Executor>(
    plan: &SweepPlan,
    base: &Scenario,
    executor: &E,
) -> Result<SweepResult> {
    if !matches!(base.town, TownModel::GaussianInhomogeneous { .. }) {
        return Err(Error::config(
            "town.model",
            "the distance sweep needs a gaussian town",
        ));
    }
    if plan.variable != SweptVariable::CenterDistance {
        return Err(Error::config(
            "sweep",
            "plan does not sweep the center distance",
        ));
    }
    run_sweep(plan, base, executor, |s, v| s.disaster.center_distance = v)
}
