//! Monte Carlo estimation of ergodic capacity and coverage probability.

use alloc::vec::Vec;

use crate::channel::{draw_fading, draw_link_state, received_power, LinkState, Mount};
use crate::error::{invalid, Error, Result};
use crate::fields::{apply_disaster, deploy_fleet, deploy_uav, FleetLayout};
use crate::geometry::AerialPoint;
use crate::link::{shannon_rate, RadioGlobals, ServingKind};
use crate::math::{self, CompensatedSum};
use crate::scenario::{Fading, FleetSpec, Scenario};
use crate::stream::{Purpose, StreamKey};

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

/// How outage iterations enter the capacity average.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CapacityMode {
    /// Mean of `B log2(1 + SINR) 1{SINR >= tau}` over all iterations.
    #[default]
    Truncated,
    /// Mean of `B log2(1 + SINR)` over covered iterations only.
    Conditional,
}

impl CapacityMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CapacityMode::Truncated => "truncated",
            CapacityMode::Conditional => "conditional",
        }
    }
}

/// Runs independent, indexed work units and returns results in index order.
pub trait Executor {
    fn run<T, F>(&self, count: u64, task: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send;
}

/// Runs everything on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn run<T, F>(&self, count: u64, task: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        (0..count).map(task).collect()
    }
}

/// SINR seen by the typical user in one iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationOutcome {
    /// Linear SINR, 0 when no base station is available.
    pub sinr: f64,
    pub serving: Option<ServingKind>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MetricEstimate {
    /// Ergodic capacity in bit/s.
    pub ergodic_capacity: f64,
    pub coverage_probability: f64,
    /// Standard error of the capacity estimate, bit/s.
    pub std_error: f64,
    /// Sample standard deviation of the per-iteration rates, bit/s.
    pub sample_std: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub iterations: u64,
    pub covered_iterations: u64,
    pub seed: u64,
    pub mode: CapacityMode,
}

/// Reduces ordered iteration outcomes to a [`MetricEstimate`].
pub fn summarize(
    outcomes: &[IterationOutcome],
    radio: &RadioGlobals,
    mode: CapacityMode,
    seed: u64,
) -> Result<MetricEstimate> {
    if outcomes.is_empty() {
        return Err(invalid("iterations", "must be >= 1"));
    }
    let threshold = radio.threshold();
    let covered = |o: &&IterationOutcome| o.sinr >= threshold;
    let n = outcomes.len() as u64;
    let n_covered = outcomes.iter().filter(covered).count() as u64;
    let coverage_probability = n_covered as f64 / n as f64;

    let rate = |o: &IterationOutcome| {
        if o.sinr >= threshold {
            shannon_rate(radio.bandwidth(), o.sinr)
        } else {
            0.0
        }
    };
    let samples: Vec<f64> = match mode {
        CapacityMode::Truncated => outcomes.iter().map(rate).collect(),
        CapacityMode::Conditional => {
            if n_covered == 0 {
                return Err(Error::UndefinedEstimate {
                    coverage_probability,
                });
            }
            outcomes.iter().filter(covered).map(rate).collect()
        }
    };

    let count = samples.len() as f64;
    let mean = samples.iter().copied().collect::<CompensatedSum>().value() / count;
    let sample_std = if samples.len() > 1 {
        let ss = samples
            .iter()
            .map(|r| (r - mean) * (r - mean))
            .collect::<CompensatedSum>()
            .value();
        math::sqrt(ss / (count - 1.0))
    } else {
        0.0
    };
    let std_error = sample_std / math::sqrt(count);
    Ok(MetricEstimate {
        ergodic_capacity: mean,
        coverage_probability,
        std_error,
        sample_std,
        ci95_low: mean - Z95 * std_error,
        ci95_high: mean + Z95 * std_error,
        iterations: n,
        covered_iterations: n_covered,
        seed,
        mode,
    })
}

struct TerrestrialPart {
    /// Faded received power of every surviving TBS, survivor order.
    received: Vec<f64>,
    best_index: Option<usize>,
    best_mean: f64,
}

fn fading_gain<R: rand::Rng + ?Sized>(fading: Fading, m: f64, rng: &mut R) -> f64 {
    match fading {
        Fading::Nakagami => draw_fading(m, rng),
        Fading::Unit => 1.0,
    }
}

fn terrestrial_part(scenario: &Scenario, key: StreamKey) -> Result<TerrestrialPart> {
    let disaster = scenario.effective_disaster();
    let user = scenario.town.user_location(&scenario.disaster);
    let field = scenario
        .town
        .sample(&mut key.with_purpose(Purpose::Terrestrial).rng())?;
    let survivors = apply_disaster(&field, &disaster);

    let params = match &scenario.tbs.mount {
        Mount::Ground(p) => *p,
        Mount::Aerial { .. } => {
            return Err(invalid("tbs", "terrestrial profile must be ground mounted"))
        }
    };
    let floor = scenario.propagation.min_distance_km();
    let mut fading_rng = key.with_purpose(Purpose::TerrestrialFading).rng();
    let mut received = Vec::with_capacity(survivors.len());
    let mut best_index = None;
    let mut best_mean = f64::NEG_INFINITY;
    for (i, p) in survivors.iter().enumerate() {
        let d = user.distance(p).max(floor);
        let mean = received_power(
            scenario.tbs.transmit_power,
            &params,
            d,
            &scenario.propagation,
        );
        if mean > best_mean {
            best_mean = mean;
            best_index = Some(i);
        }
        let g = fading_gain(scenario.fading, params.nakagami_m, &mut fading_rng);
        received.push(mean * g);
    }
    Ok(TerrestrialPart {
        received,
        best_index,
        best_mean,
    })
}

struct UavLink {
    mean: f64,
    received: f64,
}

fn uav_links(
    scenario: &Scenario,
    fleet: &FleetSpec,
    frozen: Option<&[AerialPoint]>,
    key: StreamKey,
) -> Vec<UavLink> {
    let Mount::Aerial {
        altitude,
        los,
        nlos,
    } = fleet.platform.mount
    else {
        return Vec::new();
    };
    let disaster = scenario.effective_disaster();
    let user = scenario.town.user_location(&scenario.disaster);
    (0..fleet.size)
        .map(|j| {
            let mut rng = key.with_purpose(Purpose::Uav).with_index(j as u64).rng();
            let position = match (&scenario.fixed_fleet, frozen) {
                (Some(points), _) => AerialPoint {
                    h: altitude,
                    ..points[j]
                },
                (None, Some(points)) => points[j],
                (None, None) => deploy_uav(&disaster, altitude, &mut rng),
            };
            let state = draw_link_state(&user, &position, &scenario.los, &mut rng);
            let params = if state == LinkState::AerialLoS {
                &los
            } else {
                &nlos
            };
            let mean = received_power(
                fleet.platform.transmit_power,
                params,
                position.distance(&user),
                &scenario.propagation,
            );
            let g = fading_gain(scenario.fading, params.nakagami_m, &mut rng);
            UavLink {
                mean,
                received: mean * g,
            }
        })
        .collect()
}

fn sum_except(values: impl Iterator<Item = f64>, skip: Option<usize>) -> f64 {
    let mut acc = 0.0;
    for (i, v) in values.enumerate() {
        if Some(i) != skip {
            acc += v;
        }
    }
    acc
}

fn combine(terrestrial: &TerrestrialPart, uavs: &[UavLink], noise: f64) -> IterationOutcome {
    let mut serving: Option<(ServingKind, usize)> =
        terrestrial.best_index.map(|i| (ServingKind::Tbs, i));
    let mut best = terrestrial.best_mean;
    for (j, link) in uavs.iter().enumerate() {
        if link.mean > best {
            best = link.mean;
            serving = Some((ServingKind::Abs, j));
        }
    }
    let Some((kind, index)) = serving else {
        return IterationOutcome {
            sinr: 0.0,
            serving: None,
        };
    };
    let (tbs_skip, uav_skip, signal) = match kind {
        ServingKind::Tbs => (Some(index), None, terrestrial.received[index]),
        ServingKind::Abs => (None, Some(index), uavs[index].received),
    };
    let interference = sum_except(terrestrial.received.iter().copied(), tbs_skip)
        + sum_except(uavs.iter().map(|u| u.received), uav_skip);
    IterationOutcome {
        sinr: signal / (interference + noise),
        serving: Some(kind),
    }
}

/// Simulates one iteration for several fleets that share the terrestrial
/// field, the disaster and every per-UAV draw.
pub fn simulate_iteration(
    scenario: &Scenario,
    fleets: &[FleetSpec],
    frozen: &[Option<Vec<AerialPoint>>],
    key: StreamKey,
) -> Result<Vec<IterationOutcome>> {
    let terrestrial = terrestrial_part(scenario, key)?;
    let noise = scenario.radio.noise_power();
    Ok(fleets
        .iter()
        .zip(frozen)
        .map(|(fleet, layout)| {
            let links = uav_links(scenario, fleet, layout.as_deref(), key);
            combine(&terrestrial, &links, noise)
        })
        .collect())
}

/// Estimates every fleet in `fleets` on `scenario` (its own fleet is
/// ignored) with common random numbers. The outer error reports invalid
/// input; each inner result can be [`Error::UndefinedEstimate`] in
/// conditional mode.
pub fn estimate_batch<E: Executor>(
    scenario: &Scenario,
    fleets: &[FleetSpec],
    iterations: u64,
    seed: u64,
    sweep_index: u64,
    executor: &E,
) -> Result<Vec<Result<MetricEstimate>>> {
    if iterations == 0 {
        return Err(invalid("iterations", "must be >= 1"));
    }
    scenario.validate()?;
    for fleet in fleets {
        fleet.validate()?;
        scenario.check_fixed_fleet(fleet.size)?;
    }
    let disaster = scenario.effective_disaster();
    let frozen = fleets
        .iter()
        .map(|fleet| match scenario.layout {
            FleetLayout::Frozen if scenario.fixed_fleet.is_none() => {
                let key = StreamKey::new(seed, sweep_index, 0, Purpose::FrozenFleet);
                deploy_fleet(
                    &disaster,
                    fleet.size,
                    fleet.platform.altitude(),
                    &mut key.rng(),
                )
                .map(Some)
            }
            _ => Ok(None),
        })
        .collect::<Result<Vec<_>>>()?;

    let per_iteration = executor.run(iterations, |i| {
        simulate_iteration(
            scenario,
            fleets,
            &frozen,
            StreamKey::new(seed, sweep_index, i, Purpose::Terrestrial),
        )
    });
    let mut by_fleet: Vec<Vec<IterationOutcome>> = fleets
        .iter()
        .map(|_| Vec::with_capacity(iterations as usize))
        .collect();
    for outcome in per_iteration {
        for (column, o) in by_fleet.iter_mut().zip(outcome?) {
            column.push(o);
        }
    }
    Ok(by_fleet
        .iter()
        .map(|column| summarize(column, &scenario.radio, scenario.mode, seed))
        .collect())
}

/// Estimates ergodic capacity and coverage of `scenario`'s own fleet.
pub fn estimate_metrics<E: Executor>(
    scenario: &Scenario,
    iterations: u64,
    seed: u64,
    executor: &E,
) -> Result<MetricEstimate> {
    let mut results = estimate_batch(
        scenario,
        core::slice::from_ref(&scenario.fleet),
        iterations,
        seed,
        0,
        executor,
    )?;
    results.pop().unwrap_or(Err(Error::NoCandidates))
}
