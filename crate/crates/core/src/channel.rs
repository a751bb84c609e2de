//! Radio constants per platform, air-to-ground LoS model, power-law path
//! loss and Nakagami-m fading.

use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma};

use crate::error::{invalid, Error, Result};
use crate::geometry::{AerialPoint, GroundPoint};
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum LinkState {
    Terrestrial,
    AerialLoS,
    AerialNLoS,
}

/// Per-link-state propagation constants.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LinkParams {
    pub path_loss_exponent: f64,
    pub nakagami_m: f64,
    /// Linear mean additional loss, in (0, 1].
    pub excess_loss: f64,
}

impl LinkParams {
    pub const fn new(path_loss_exponent: f64, nakagami_m: f64, excess_loss: f64) -> Self {
        Self {
            path_loss_exponent,
            nakagami_m,
            excess_loss,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.path_loss_exponent >= 2.0) || !self.path_loss_exponent.is_finite() {
            return Err(invalid("platform.path_loss_exponent", "must be >= 2"));
        }
        if !(self.nakagami_m >= 0.5) || !self.nakagami_m.is_finite() {
            return Err(invalid("platform.nakagami_m", "must be >= 0.5"));
        }
        if !(self.excess_loss > 0.0 && self.excess_loss <= 1.0) {
            return Err(invalid("platform.excess_loss", "must lie in (0, 1]"));
        }
        Ok(())
    }
}

/// Terrestrial links and NLoS aerial links share exponent 3 and m = 1; LoS
/// aerial links use 2 and 2. The excess loss is 0.005 for NLoS and 0.692
/// for everything else.
pub const TERRESTRIAL_LINK: LinkParams = LinkParams::new(3.0, 1.0, 0.692);
pub const LOS_LINK: LinkParams = LinkParams::new(2.0, 2.0, 0.692);
pub const NLOS_LINK: LinkParams = LinkParams::new(3.0, 1.0, 0.005);

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Mount {
    Ground(LinkParams),
    Aerial {
        altitude: f64,
        los: LinkParams,
        nlos: LinkParams,
    },
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PlatformProfile {
    pub name: String,
    /// Transmit power in W.
    pub transmit_power: f64,
    pub mount: Mount,
}

impl PlatformProfile {
    pub fn ground(name: &str, transmit_power: f64, link: LinkParams) -> Self {
        Self {
            name: name.into(),
            transmit_power,
            mount: Mount::Ground(link),
        }
    }

    pub fn aerial(name: &str, transmit_power: f64, altitude: f64) -> Self {
        Self {
            name: name.into(),
            transmit_power,
            mount: Mount::Aerial {
                altitude,
                los: LOS_LINK,
                nlos: NLOS_LINK,
            },
        }
    }

    pub fn tbs() -> Self {
        Self::ground("tbs", 10.0, TERRESTRIAL_LINK)
    }

    pub fn drone() -> Self {
        Self::aerial("drone", 1.585, 0.1)
    }

    pub fn tethered_balloon() -> Self {
        Self::aerial("tethered_balloon", 10.0, 0.5)
    }

    pub fn hap() -> Self {
        Self::aerial("hap", 20.0, 17.0)
    }

    pub fn builtin() -> Vec<Self> {
        alloc::vec![
            Self::tbs(),
            Self::drone(),
            Self::tethered_balloon(),
            Self::hap()
        ]
    }

    /// Altitude in km (0 for ground platforms).
    pub fn altitude(&self) -> f64 {
        match self.mount {
            Mount::Ground(_) => 0.0,
            Mount::Aerial { altitude, .. } => altitude,
        }
    }

    pub fn is_aerial(&self) -> bool {
        matches!(self.mount, Mount::Aerial { .. })
    }

    pub fn params(&self, state: LinkState) -> Option<&LinkParams> {
        match (&self.mount, state) {
            (Mount::Ground(p), LinkState::Terrestrial) => Some(p),
            (Mount::Aerial { los, .. }, LinkState::AerialLoS) => Some(los),
            (Mount::Aerial { nlos, .. }, LinkState::AerialNLoS) => Some(nlos),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(invalid("platform.name", "must not be empty"));
        }
        if !(self.transmit_power > 0.0) || !self.transmit_power.is_finite() {
            return Err(invalid("platform.transmit_power", "must be finite and > 0"));
        }
        match &self.mount {
            Mount::Ground(p) => p.validate(),
            Mount::Aerial {
                altitude,
                los,
                nlos,
            } => {
                if !(*altitude > 0.0) || !altitude.is_finite() {
                    return Err(invalid(
                        "platform.altitude",
                        "aerial platforms need altitude > 0",
                    ));
                }
                los.validate()?;
                nlos.validate()
            }
        }
    }
}

/// Probability that an air-to-ground link is in line of sight, as a function
/// of the elevation angle in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum LosModel {
    /// `1 / (1 + a exp(-b (theta - a)))`.
    Sigmoid { a: f64, b: f64 },
    /// Same probability at every elevation.
    Constant { probability: f64 },
}

impl LosModel {
    /// Dense-urban sigmoid constants.
    pub const DENSE_URBAN: LosModel = LosModel::Sigmoid { a: 12.08, b: 0.11 };

    pub fn validate(&self) -> Result<()> {
        match *self {
            LosModel::Sigmoid { a, b } => {
                if !(a > 0.0 && a.is_finite()) {
                    return Err(invalid("los.a", "must be finite and > 0"));
                }
                if !(b > 0.0 && b.is_finite()) {
                    return Err(invalid("los.b", "must be finite and > 0"));
                }
                Ok(())
            }
            LosModel::Constant { probability } => {
                if (0.0..=1.0).contains(&probability) {
                    Ok(())
                } else {
                    Err(invalid("los.probability", "must lie in [0, 1]"))
                }
            }
        }
    }
}

impl Default for LosModel {
    fn default() -> Self {
        Self::DENSE_URBAN
    }
}

pub fn los_probability(elevation_deg: f64, model: &LosModel) -> Result<f64> {
    if !(0.0..=90.0).contains(&elevation_deg) {
        return Err(invalid("elevation_deg", "must lie in [0, 90] degrees"));
    }
    let p = match *model {
        LosModel::Sigmoid { a, b } => 1.0 / (1.0 + a * math::exp(-b * (elevation_deg - a))),
        LosModel::Constant { probability } => probability,
    };
    Ok(p.clamp(0.0, 1.0))
}

/// Bernoulli LoS/NLoS draw for one UAV as seen from `user`.
pub fn draw_link_state<R: Rng + ?Sized>(
    user: &GroundPoint,
    uav: &AerialPoint,
    model: &LosModel,
    rng: &mut R,
) -> LinkState {
    // atan2 with h > 0 stays in (0, 90]
    let elevation = uav.elevation_deg(user).clamp(0.0, 90.0);
    let p = los_probability(elevation, model).unwrap_or(0.0);
    if rng.random::<f64>() < p {
        LinkState::AerialLoS
    } else {
        LinkState::AerialNLoS
    }
}

/// Distance scaling inside the power law.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Propagation {
    /// Length, in meters, of the unit distances are expressed in before the
    /// power law is applied (1 = meters, 1000 = km).
    pub distance_unit_m: f64,
    /// Terrestrial links shorter than this (in meters) are evaluated at this
    /// distance.
    pub min_distance_m: f64,
}

impl Propagation {
    pub const KILOMETERS: Propagation = Propagation {
        distance_unit_m: 1000.0,
        min_distance_m: 1.0,
    };
    pub const METERS: Propagation = Propagation {
        distance_unit_m: 1.0,
        min_distance_m: 1.0,
    };

    pub fn validate(&self) -> Result<()> {
        if !(self.distance_unit_m > 0.0 && self.distance_unit_m.is_finite()) {
            return Err(invalid(
                "propagation.distance_unit_m",
                "must be finite and > 0",
            ));
        }
        if !(self.min_distance_m > 0.0 && self.min_distance_m.is_finite()) {
            return Err(invalid(
                "propagation.min_distance_m",
                "must be finite and > 0",
            ));
        }
        Ok(())
    }

    pub(crate) fn min_distance_km(&self) -> f64 {
        self.min_distance_m / 1000.0
    }
}

impl Default for Propagation {
    fn default() -> Self {
        Self::KILOMETERS
    }
}

/// Average received power in W: `p_t * eta * d^-alpha`, with `d` in the
/// propagation's distance unit.
pub fn mean_received_power(
    profile: &PlatformProfile,
    state: LinkState,
    distance_km: f64,
    propagation: &Propagation,
) -> Result<f64> {
    let params = profile.params(state).ok_or(invalid(
        "state",
        "link state does not match the platform mount",
    ))?;
    if !(distance_km > 0.0) {
        return Err(Error::ZeroDistance);
    }
    Ok(received_power(
        profile.transmit_power,
        params,
        distance_km,
        propagation,
    ))
}

#[inline]
pub(crate) fn received_power(
    transmit_power: f64,
    params: &LinkParams,
    distance_km: f64,
    propagation: &Propagation,
) -> f64 {
    let d = distance_km * 1000.0 / propagation.distance_unit_m;
    transmit_power * params.excess_loss / math::pow(d, params.path_loss_exponent)
}

/// Nakagami-m power gain: Gamma with shape `m` and scale `1/m` (unit mean).
pub fn draw_fading<R: Rng + ?Sized>(m: f64, rng: &mut R) -> f64 {
    if m == 1.0 {
        let g: f64 = rng.sample(Exp1);
        return g;
    }
    match Gamma::new(m, 1.0 / m) {
        Ok(dist) => dist.sample(rng),
        Err(_) => 1.0,
    }
}
