//! Terrestrial point fields, the disaster hole and aerial fleet deployment.

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};

use crate::error::{invalid, Result};
use crate::geometry::{AerialPoint, GroundPoint};
use crate::math;

/// Radius (km) within which the Gaussian town's mean count is specified.
pub const COUNT_RADIUS_KM: f64 = 100.0;

/// Spatial model of the terrestrial base stations.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum TownModel {
    /// Homogeneous PPP of `density` BS/km² on a disk of `window_radius` km
    /// centered on the typical user.
    Homogeneous { density: f64, window_radius: f64 },
    /// Inhomogeneous PPP whose intensity is an isotropic bivariate Gaussian
    /// around the town center (per-axis variance `variance` km²), scaled so the
    /// mean count within 100 km equals `mean_count_100km`.
    GaussianInhomogeneous {
        variance: f64,
        mean_count_100km: f64,
        truncation_radius: f64,
    },
    /// A fixed set of TBS locations (town coordinates). Used for
    /// deterministic harnesses.
    Fixed { points: Vec<GroundPoint> },
}

impl TownModel {
    pub fn homogeneous(density: f64) -> Self {
        TownModel::Homogeneous {
            density,
            window_radius: 10.0,
        }
    }

    pub fn gaussian(variance: f64, mean_count_100km: f64) -> Self {
        TownModel::GaussianInhomogeneous {
            variance,
            mean_count_100km,
            truncation_radius: COUNT_RADIUS_KM,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            TownModel::Homogeneous {
                density,
                window_radius,
            } => {
                positive(density, "town.density")?;
                positive(window_radius, "town.window_radius")
            }
            TownModel::GaussianInhomogeneous {
                variance,
                mean_count_100km,
                truncation_radius,
            } => {
                positive(variance, "town.variance")?;
                positive(mean_count_100km, "town.mean_count_100km")?;
                if !(truncation_radius >= 10.0 * math::sqrt(variance)) {
                    return Err(invalid(
                        "town.truncation_radius",
                        "must be at least ten standard deviations",
                    ));
                }
                Ok(())
            }
            TownModel::Fixed { ref points } => {
                if points.iter().all(|p| p.x.is_finite() && p.y.is_finite()) {
                    Ok(())
                } else {
                    Err(invalid("town.points", "coordinates must be finite"))
                }
            }
        }
    }

    /// Where the typical user (and the disaster center) sits, in town
    /// coordinates. The homogeneous field is translation invariant, so its
    /// window is built around the origin and `r_c` plays no role.
    pub fn user_location(&self, disaster: &DisasterSpec) -> GroundPoint {
        match self {
            TownModel::Homogeneous { .. } => GroundPoint::ORIGIN,
            _ => GroundPoint::new(disaster.center_distance, 0.0),
        }
    }

    /// Draws the pre-disaster TBS field.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<GroundPoint>> {
        match *self {
            TownModel::Homogeneous {
                density,
                window_radius,
            } => sample_hppp(density, window_radius, rng),
            TownModel::GaussianInhomogeneous {
                variance,
                mean_count_100km,
                truncation_radius,
            } => sample_gaussian_ippp(variance, mean_count_100km, truncation_radius, rng),
            TownModel::Fixed { ref points } => Ok(points.clone()),
        }
    }
}

/// Circular failure region: center at `center_distance` km from the town
/// center, radius `radius` km.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DisasterSpec {
    pub center_distance: f64,
    pub radius: f64,
}

impl DisasterSpec {
    pub fn new(center_distance: f64, radius: f64) -> Self {
        Self {
            center_distance,
            radius,
        }
    }

    pub fn center(&self) -> GroundPoint {
        GroundPoint::new(self.center_distance, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.center_distance >= 0.0) || !self.center_distance.is_finite() {
            return Err(invalid(
                "disaster.center_distance",
                "must be finite and >= 0",
            ));
        }
        positive(self.radius, "disaster.radius")
    }
}

/// Whether the fleet layout is redrawn every Monte Carlo iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum FleetLayout {
    #[default]
    PerIteration,
    Frozen,
}

fn positive(value: f64, field: &'static str) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(invalid(field, "must be finite and > 0"))
    }
}

fn uniform_in_disk<R: Rng + ?Sized>(radius: f64, rng: &mut R) -> (f64, f64) {
    let r = radius * math::sqrt(rng.random::<f64>());
    let theta = 2.0 * PI * rng.random::<f64>();
    (r * math::cos(theta), r * math::sin(theta))
}

fn poisson_count<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> usize {
    match Poisson::new(mean) {
        Ok(dist) => dist.sample(rng) as usize,
        // mean is validated positive and finite by callers
        Err(_) => 0,
    }
}

/// Homogeneous PPP of intensity `density` on the disk of radius
/// `window_radius` around the origin.
pub fn sample_hppp<R: Rng + ?Sized>(
    density: f64,
    window_radius: f64,
    rng: &mut R,
) -> Result<Vec<GroundPoint>> {
    positive(density, "density")?;
    positive(window_radius, "window_radius")?;
    let count = poisson_count(density * PI * window_radius * window_radius, rng);
    Ok((0..count)
        .map(|_| {
            let (x, y) = uniform_in_disk(window_radius, rng);
            GroundPoint::new(x, y)
        })
        .collect())
}

/// Expected total count of the untruncated Gaussian field such that
/// `mean_count_100km` points fall within 100 km of the town center on average.
pub fn gaussian_total_mean(variance: f64, mean_count_100km: f64) -> f64 {
    let inside = 1.0 - math::exp(-COUNT_RADIUS_KM * COUNT_RADIUS_KM / (2.0 * variance));
    mean_count_100km / inside
}

/// Gaussian inhomogeneous PPP: Poisson total count, i.i.d. zero-mean
/// bivariate normal locations, points beyond `truncation_radius` discarded.
pub fn sample_gaussian_ippp<R: Rng + ?Sized>(
    variance: f64,
    mean_count_100km: f64,
    truncation_radius: f64,
    rng: &mut R,
) -> Result<Vec<GroundPoint>> {
    positive(variance, "variance")?;
    positive(mean_count_100km, "mean_count_100km")?;
    positive(truncation_radius, "truncation_radius")?;
    let sigma = math::sqrt(variance);
    let count = poisson_count(gaussian_total_mean(variance, mean_count_100km), rng);
    let limit_sq = truncation_radius * truncation_radius;
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        let x: f64 = rng.sample(StandardNormal);
        let y: f64 = rng.sample(StandardNormal);
        let p = GroundPoint::new(sigma * x, sigma * y);
        if p.distance_sq(&GroundPoint::ORIGIN) <= limit_sq {
            points.push(p);
        }
    }
    Ok(points)
}

/// Removes every point strictly inside the disaster disk. Survivors keep
/// their order and coordinates; a point exactly on the boundary survives.
pub fn apply_disaster(points: &[GroundPoint], disaster: &DisasterSpec) -> Vec<GroundPoint> {
    let center = disaster.center();
    let r_sq = disaster.radius * disaster.radius;
    points
        .iter()
        .copied()
        .filter(|p| p.distance_sq(&center) >= r_sq)
        .collect()
}

/// One UAV uniformly placed above the disaster disk at `altitude`.
pub fn deploy_uav<R: Rng + ?Sized>(
    disaster: &DisasterSpec,
    altitude: f64,
    rng: &mut R,
) -> AerialPoint {
    let (dx, dy) = uniform_in_disk(disaster.radius, rng);
    let c = disaster.center();
    AerialPoint::new(c.x + dx, c.y + dy, altitude)
}

/// `count` UAVs i.i.d. uniform above the disaster disk, all at `altitude`.
/// Each UAV consumes the same number of draws, so a fleet of `n` is a prefix
/// of any larger fleet drawn from the same stream.
pub fn deploy_fleet<R: Rng + ?Sized>(
    disaster: &DisasterSpec,
    count: usize,
    altitude: f64,
    rng: &mut R,
) -> Result<Vec<AerialPoint>> {
    if count > 0 {
        positive(altitude, "altitude")?;
    }
    Ok((0..count)
        .map(|_| deploy_uav(disaster, altitude, rng))
        .collect())
}

/// Share of the mean interference of a homogeneous field with path-loss
/// exponent `alpha > 2` (hole radius `inner`) that lies beyond `window`.
pub fn tail_interference_fraction(alpha: f64, inner: f64, window: f64) -> f64 {
    let g = |r: f64| libm::pow(r, 2.0 - alpha);
    g(window) / g(inner)
}
