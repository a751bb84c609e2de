//! Association, SINR and Shannon rate at the typical user.

use crate::channel::{mean_received_power, LinkState, PlatformProfile, Propagation};
use crate::error::{invalid, Error, Result};
use crate::geometry::{AerialPoint, GroundPoint};
use crate::math;

/// Bandwidth, SINR threshold and noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioGlobals {
    bandwidth: f64,
    threshold_db: f64,
    threshold: f64,
    noise_psd: f64,
    noise_power: f64,
}

impl RadioGlobals {
    /// `bandwidth` in Hz, `threshold_db` in dB, `noise_psd` in W/Hz.
    pub fn new(bandwidth: f64, threshold_db: f64, noise_psd: f64) -> Result<Self> {
        if !(bandwidth > 0.0 && bandwidth.is_finite()) {
            return Err(invalid("radio.bandwidth_hz", "must be finite and > 0"));
        }
        if !threshold_db.is_finite() {
            return Err(invalid("radio.sinr_threshold_db", "must be finite"));
        }
        if !(noise_psd >= 0.0 && noise_psd.is_finite()) {
            return Err(invalid(
                "radio.noise_psd_w_per_hz",
                "must be finite and >= 0",
            ));
        }
        Ok(Self {
            bandwidth,
            threshold_db,
            threshold: math::db_to_linear(threshold_db),
            noise_psd,
            noise_power: noise_psd * bandwidth,
        })
    }

    /// 100 MHz, -5 dB, 1e-12 W/Hz.
    pub fn reference() -> Self {
        Self::new(1e8, -5.0, 1e-12).expect("reference radio constants are valid")
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn threshold_db(&self) -> f64 {
        self.threshold_db
    }

    /// Linear SINR threshold.
    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn noise_psd(&self) -> f64 {
        self.noise_psd
    }

    /// Noise power in W.
    pub fn noise_power(&self) -> f64 {
        self.noise_power
    }

    pub fn with_threshold_db(&self, threshold_db: f64) -> Result<Self> {
        Self::new(self.bandwidth, threshold_db, self.noise_psd)
    }
}

impl Default for RadioGlobals {
    fn default() -> Self {
        Self::reference()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ServingKind {
    Tbs,
    Abs,
}

/// The serving base station. `serving_index` indexes the TBS list followed
/// by the ABS list.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Association {
    pub serving_index: usize,
    pub serving_kind: ServingKind,
    pub serving_mean_power: f64,
}

/// Max-average-power association over surviving TBSs and the fleet. Ties go
/// to the lowest index.
pub fn associate(
    user: &GroundPoint,
    tbs: &[GroundPoint],
    uavs: &[(AerialPoint, LinkState)],
    tbs_profile: &PlatformProfile,
    uav_profile: &PlatformProfile,
    propagation: &Propagation,
) -> Result<Association> {
    let floor = propagation.min_distance_km();
    let terrestrial = tbs.iter().map(|p| {
        let d = user.distance(p).max(floor);
        mean_received_power(tbs_profile, LinkState::Terrestrial, d, propagation)
            .map(|w| (ServingKind::Tbs, w))
    });
    let aerial = uavs.iter().map(|(p, state)| {
        mean_received_power(uav_profile, *state, p.distance(user), propagation)
            .map(|w| (ServingKind::Abs, w))
    });
    let mut best: Option<Association> = None;
    for (index, candidate) in terrestrial.chain(aerial).enumerate() {
        let (kind, power) = candidate?;
        if best.is_none_or(|b| power > b.serving_mean_power) {
            best = Some(Association {
                serving_index: index,
                serving_kind: kind,
                serving_mean_power: power,
            });
        }
    }
    best.ok_or(Error::NoCandidates)
}

/// One base station's contribution at the user: average power times fading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadedLink {
    pub mean_power: f64,
    pub fading: f64,
}

impl FadedLink {
    pub fn received(&self) -> f64 {
        self.mean_power * self.fading
    }
}

/// Serving received power over the sum of every other link plus noise.
/// `links` follows the same ordering as the association.
pub fn instantaneous_sinr(assoc: &Association, links: &[FadedLink], globals: &RadioGlobals) -> f64 {
    let mut interference = math::CompensatedSum::default();
    for (i, link) in links.iter().enumerate() {
        if i != assoc.serving_index {
            interference.add(link.received());
        }
    }
    let signal = links[assoc.serving_index].received();
    signal / (interference.value() + globals.noise_power())
}

/// `bandwidth * log2(1 + sinr)` in bit/s.
pub fn shannon_rate(bandwidth: f64, sinr: f64) -> f64 {
    bandwidth * math::log2(1.0 + sinr)
}
