//! JSON scenario configuration.
//!
//! Every field is optional; missing fields take the defaults of the
//! homogeneous disaster-radius campaign. [`ScenarioConfig::distance_campaign`]
//! gives the Gaussian-town preset.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use rescuenet_core::{
    CapacityMode, DisasterSpec, FleetLayout, FleetSpec, HalvingSchedule, LosModel, Propagation,
    RadioGlobals, Scenario, TownModel,
};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::platforms::PlatformTable;
use crate::sweep::{SweepPlan, SweptVariable};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum TownConfig {
    Homogeneous {
        #[serde(default = "default_density")]
        density_per_km2: f64,
        #[serde(default = "default_window")]
        window_radius_km: f64,
    },
    Gaussian {
        #[serde(default = "default_variance")]
        variance_km2: f64,
        #[serde(default = "default_mean_count")]
        mean_count_100km: f64,
        #[serde(default = "default_truncation")]
        truncation_radius_km: f64,
    },
}

fn default_density() -> f64 {
    10.0
}
fn default_window() -> f64 {
    10.0
}
fn default_variance() -> f64 {
    10.0
}
fn default_mean_count() -> f64 {
    1254.0
}
fn default_truncation() -> f64 {
    100.0
}

impl TownConfig {
    pub fn gaussian() -> Self {
        TownConfig::Gaussian {
            variance_km2: default_variance(),
            mean_count_100km: default_mean_count(),
            truncation_radius_km: default_truncation(),
        }
    }
}

impl Default for TownConfig {
    fn default() -> Self {
        TownConfig::Homogeneous {
            density_per_km2: default_density(),
            window_radius_km: default_window(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DisasterConfig {
    pub center_distance_km: f64,
    pub radius_km: f64,
}

impl Default for DisasterConfig {
    fn default() -> Self {
        Self {
            center_distance_km: 0.0,
            radius_km: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FleetConfig {
    pub platform: String,
    pub size: usize,
}

impl Default for FleetConfig {
    fn default() -> Self {
        Self {
            platform: "drone".into(),
            size: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RadioConfig {
    pub bandwidth_hz: f64,
    pub sinr_threshold_db: f64,
    pub noise_psd_w_per_hz: f64,
}

impl Default for RadioConfig {
    fn default() -> Self {
        Self {
            bandwidth_hz: 1e8,
            sinr_threshold_db: -5.0,
            noise_psd_w_per_hz: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PropagationConfig {
    /// Meters per distance unit inside the power law.
    pub distance_unit_m: f64,
    pub min_distance_m: f64,
}

impl Default for PropagationConfig {
    fn default() -> Self {
        let p = Propagation::default();
        Self {
            distance_unit_m: p.distance_unit_m,
            min_distance_m: p.min_distance_m,
        }
    }
}

/// `sizes` fleets of one platform.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FleetGridEntry {
    pub platform: String,
    pub sizes: Vec<usize>,
}

impl FromStr for FleetGridEntry {
    type Err = String;

    /// `platform:n1,n2,...`
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (platform, list) = s
            .split_once(':')
            .ok_or_else(|| format!("expected `platform:n1,n2,...`, got `{s}`"))?;
        if platform.is_empty() {
            return Err(format!("missing platform name in `{s}`"));
        }
        let sizes = list
            .split(',')
            .map(|n| {
                n.trim()
                    .parse::<usize>()
                    .map_err(|_| format!("`{n}` is not a fleet size"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self {
            platform: platform.to_string(),
            sizes,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    /// Explicit axis values in km; overrides start/stop/points.
    pub values: Option<Vec<f64>>,
    pub start_km: Option<f64>,
    pub stop_km: Option<f64>,
    pub points: usize,
    pub spacing: Spacing,
    pub fleets: Option<Vec<FleetGridEntry>>,
    pub iterations: u64,
    pub seed: u64,
    /// Worker threads; all available cores when absent.
    pub workers: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            values: None,
            start_km: None,
            stop_km: None,
            points: 50,
            spacing: Spacing::Linear,
            fleets: None,
            iterations: 10_000,
            seed: 1,
            workers: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AdvisorConfig {
    pub candidates: Option<Vec<FleetGridEntry>>,
    pub budgets: Vec<u64>,
}

impl Default for AdvisorConfig {
    fn default() -> Self {
        Self {
            candidates: None,
            budgets: HalvingSchedule::default().budgets,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub town: TownConfig,
    pub disaster: DisasterConfig,
    pub fleet: FleetConfig,
    pub radio: RadioConfig,
    pub los: LosModel,
    pub propagation: PropagationConfig,
    pub capacity_mode: CapacityMode,
    pub fleet_resample: FleetLayout,
    /// Extra platform table merged over the bundled one.
    pub platforms_file: Option<PathBuf>,
    pub sweep: SweepConfig,
    pub advisor: AdvisorConfig,
}

fn check(ok: bool, field: &str, reason: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::config(field, reason))
    }
}

fn finite_positive(v: f64) -> bool {
    v.is_finite() && v > 0.0
}

impl ScenarioConfig {
    /// Homogeneous town, disaster radius swept.
    pub fn radius_campaign() -> Self {
        Self::default()
    }

    /// Gaussian town, 500 m disaster, center distance swept.
    pub fn distance_campaign() -> Self {
        Self {
            town: TownConfig::gaussian(),
            ..Self::default()
        }
    }

    pub fn from_json(text: &str, origin: &Path) -> Result<Self> {
        serde_json::from_str(text).map_err(|source| Error::Json {
            path: origin.to_path_buf(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config = Self::from_json(&text, path)?;
        if let (Some(file), Some(dir)) = (&config.platforms_file, path.parent()) {
            if file.is_relative() {
                config.platforms_file = Some(dir.join(file));
            }
        }
        Ok(config)
    }

    pub fn platform_table(&self) -> Result<PlatformTable> {
        let table = PlatformTable::builtin();
        match &self.platforms_file {
            Some(path) => Ok(table.merged(PlatformTable::load(path)?)),
            None => Ok(table),
        }
    }

    /// Checks every field, naming the first offending one.
    pub fn validate(&self) -> Result<()> {
        match self.town {
            TownConfig::Homogeneous {
                density_per_km2,
                window_radius_km,
            } => {
                check(
                    finite_positive(density_per_km2),
                    "town.density_per_km2",
                    "must be > 0",
                )?;
                check(
                    finite_positive(window_radius_km),
                    "town.window_radius_km",
                    "must be > 0",
                )?;
            }
            TownConfig::Gaussian {
                variance_km2,
                mean_count_100km,
                truncation_radius_km,
            } => {
                check(
                    finite_positive(variance_km2),
                    "town.variance_km2",
                    "must be > 0",
                )?;
                check(
                    finite_positive(mean_count_100km),
                    "town.mean_count_100km",
                    "must be > 0",
                )?;
                check(
                    truncation_radius_km >= 10.0 * variance_km2.sqrt(),
                    "town.truncation_radius_km",
                    "must be at least ten standard deviations",
                )?;
            }
        }
        let d = &self.disaster;
        check(
            d.center_distance_km.is_finite() && d.center_distance_km >= 0.0,
            "disaster.center_distance_km",
            "must be >= 0",
        )?;
        check(
            finite_positive(d.radius_km),
            "disaster.radius_km",
            "must be > 0",
        )?;
        let r = &self.radio;
        check(
            finite_positive(r.bandwidth_hz),
            "radio.bandwidth_hz",
            "must be > 0",
        )?;
        check(
            r.sinr_threshold_db.is_finite(),
            "radio.sinr_threshold_db",
            "must be finite",
        )?;
        check(
            r.noise_psd_w_per_hz.is_finite() && r.noise_psd_w_per_hz >= 0.0,
            "radio.noise_psd_w_per_hz",
            "must be >= 0",
        )?;
        match self.los {
            LosModel::Sigmoid { a, b } => {
                check(finite_positive(a), "los.sigmoid.a", "must be > 0")?;
                check(finite_positive(b), "los.sigmoid.b", "must be > 0")?;
            }
            LosModel::Constant { probability } => check(
                (0.0..=1.0).contains(&probability),
                "los.constant.probability",
                "must lie in [0, 1]",
            )?,
        }
        let p = &self.propagation;
        check(
            finite_positive(p.distance_unit_m),
            "propagation.distance_unit_m",
            "must be > 0",
        )?;
        check(
            finite_positive(p.min_distance_m),
            "propagation.min_distance_m",
            "must be > 0",
        )?;
        let s = &self.sweep;
        check(s.iterations >= 1, "sweep.iterations", "must be >= 1")?;
        check(s.points >= 1, "sweep.points", "must be >= 1")?;
        check(s.workers != Some(0), "sweep.workers", "must be >= 1")?;
        if let Some(values) = &s.values {
            check(!values.is_empty(), "sweep.values", "must not be empty")?;
            check(
                values.windows(2).all(|w| w[0] < w[1]),
                "sweep.values",
                "must be strictly increasing",
            )?;
        }
        if let Some(fleets) = &s.fleets {
            check(
                !fleets.is_empty(),
                "sweep.fleets",
                "needs at least one entry",
            )?;
        }
        check(
            !self.advisor.budgets.is_empty() && self.advisor.budgets.iter().all(|&b| b > 0),
            "advisor.budgets",
            "needs at least one positive budget",
        )?;

        let table = self.platform_table()?;
        let fleet = table.resolve("fleet.platform", &self.fleet.platform)?;
        check(
            fleet.is_aerial() || self.fleet.size == 0,
            "fleet.platform",
            "fleets must use an aerial platform",
        )?;
        check(
            table.get("tbs").is_some_and(|t| !t.is_aerial()),
            "platforms_file",
            "`tbs` must be a terrestrial platform",
        )?;
        for (name, grid) in [
            ("sweep.fleets", &self.sweep.fleets),
            ("advisor.candidates", &self.advisor.candidates),
        ] {
            for entry in grid.iter().flatten() {
                let profile = table.resolve(name, &entry.platform)?;
                check(
                    !entry.sizes.is_empty(),
                    name,
                    "every entry needs at least one size",
                )?;
                check(
                    profile.is_aerial() || entry.sizes.iter().all(|&n| n == 0),
                    name,
                    "fleets must use an aerial platform",
                )?;
            }
        }
        Ok(())
    }

    pub fn town_model(&self) -> TownModel {
        match self.town {
            TownConfig::Homogeneous {
                density_per_km2,
                window_radius_km,
            } => TownModel::Homogeneous {
                density: density_per_km2,
                window_radius: window_radius_km,
            },
            TownConfig::Gaussian {
                variance_km2,
                mean_count_100km,
                truncation_radius_km,
            } => TownModel::GaussianInhomogeneous {
                variance: variance_km2,
                mean_count_100km,
                truncation_radius: truncation_radius_km,
            },
        }
    }

    /// The simulated scenario, with platform names resolved.
    pub fn scenario(&self) -> Result<Scenario> {
        self.validate()?;
        let table = self.platform_table()?;
        let fleet = FleetSpec::new(
            table.resolve("fleet.platform", &self.fleet.platform)?,
            self.fleet.size,
        );
        let mut scenario = Scenario::new(
            self.town_model(),
            DisasterSpec::new(self.disaster.center_distance_km, self.disaster.radius_km),
            fleet,
        );
        scenario.tbs = table.resolve("platforms_file", "tbs")?;
        scenario.radio = RadioGlobals::new(
            self.radio.bandwidth_hz,
            self.radio.sinr_threshold_db,
            self.radio.noise_psd_w_per_hz,
        )?;
        scenario.los = self.los;
        scenario.propagation = Propagation {
            distance_unit_m: self.propagation.distance_unit_m,
            min_distance_m: self.propagation.min_distance_m,
        };
        scenario.mode = self.capacity_mode;
        scenario.layout = self.fleet_resample;
        scenario.validate()?;
        Ok(scenario)
    }

    fn fleet_grid(&self, field: &str, grid: &[FleetGridEntry]) -> Result<Vec<FleetSpec>> {
        let table = self.platform_table()?;
        let mut fleets = Vec::new();
        for entry in grid {
            let profile = table.resolve(field, &entry.platform)?;
            fleets.extend(
                entry
                    .sizes
                    .iter()
                    .map(|&n| FleetSpec::new(profile.clone(), n)),
            );
        }
        Ok(fleets)
    }

    /// Axis values for `variable`.
    pub fn sweep_values(&self, variable: SweptVariable) -> Vec<f64> {
        if let Some(values) = &self.sweep.values {
            return values.clone();
        }
        let (start, stop) = variable.default_range();
        let start = self.sweep.start_km.unwrap_or(start);
        let stop = self.sweep.stop_km.unwrap_or(stop);
        let n = self.sweep.points;
        if n == 1 {
            return vec![start];
        }
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.sweep.spacing {
                    Spacing::Linear => start + (stop - start) * t,
                    Spacing::Log => start * (stop / start).powf(t),
                }
            })
            .collect()
    }

    pub fn sweep_plan(&self, variable: SweptVariable) -> Result<SweepPlan> {
        self.validate()?;
        let default_grid = variable.default_fleets();
        let grid = self.sweep.fleets.as_ref().unwrap_or(&default_grid);
        let values = self.sweep_values(variable);
        if self.sweep.values.is_none() {
            let (start, stop) = (values[0], values[values.len() - 1]);
            check(
                values.len() == 1 || start < stop,
                "sweep.stop_km",
                "must exceed sweep.start_km",
            )?;
            if self.sweep.spacing == Spacing::Log {
                check(
                    start > 0.0,
                    "sweep.start_km",
                    "log spacing needs start_km > 0",
                )?;
            }
        }
        let plan = SweepPlan {
            variable,
            values,
            fleets: self.fleet_grid("sweep.fleets", grid)?,
            iterations: self.sweep.iterations,
            seed: self.sweep.seed,
        };
        plan.validate()?;
        Ok(plan)
    }

    pub fn advisor_candidates(&self) -> Result<Vec<FleetSpec>> {
        let default_grid = vec![FleetGridEntry {
            platform: "drone".into(),
            sizes: vec![1, 5, 15],
        }];
        let grid = self.advisor.candidates.as_ref().unwrap_or(&default_grid);
        self.fleet_grid("advisor.candidates", grid)
    }

    pub fn halving_schedule(&self) -> HalvingSchedule {
        HalvingSchedule::new(self.advisor.budgets.clone())
    }
}
