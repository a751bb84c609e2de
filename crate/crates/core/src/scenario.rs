use alloc::vec::Vec;

use crate::channel::{LosModel, PlatformProfile, Propagation};
use crate::error::{invalid, Result};
use crate::estimate::CapacityMode;
use crate::fields::{DisasterSpec, FleetLayout, TownModel};
use crate::geometry::AerialPoint;
use crate::link::RadioGlobals;

/// `size` identical platforms of one kind.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FleetSpec {
    pub platform: PlatformProfile,
    pub size: usize,
}

impl FleetSpec {
    pub fn new(platform: PlatformProfile, size: usize) -> Self {
        Self { platform, size }
    }

    pub fn validate(&self) -> Result<()> {
        self.platform.validate()?;
        if !self.platform.is_aerial() && self.size > 0 {
            return Err(invalid("fleet.platform", "fleet platforms must be aerial"));
        }
        Ok(())
    }
}

/// How small-scale fading gains are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Fading {
    /// Nakagami-m with the shape of each link's state.
    #[default]
    Nakagami,
    /// Every gain is exactly 1.
    Unit,
}

/// Everything needed to simulate the typical user of one disaster topology.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub town: TownModel,
    pub disaster: DisasterSpec,
    pub tbs: PlatformProfile,
    pub fleet: FleetSpec,
    pub radio: RadioGlobals,
    pub los: LosModel,
    pub propagation: Propagation,
    pub fading: Fading,
    pub mode: CapacityMode,
    pub layout: FleetLayout,
    /// Explicit fleet positions; when set, UAV `j` sits at `fixed_fleet[j]`
    /// every iteration (altitudes are taken from the platform).
    pub fixed_fleet: Option<Vec<AerialPoint>>,
}

impl Scenario {
    pub fn new(town: TownModel, disaster: DisasterSpec, fleet: FleetSpec) -> Self {
        Self {
            town,
            disaster,
            tbs: PlatformProfile::tbs(),
            fleet,
            radio: RadioGlobals::reference(),
            los: LosModel::default(),
            propagation: Propagation::default(),
            fading: Fading::default(),
            mode: CapacityMode::default(),
            layout: FleetLayout::default(),
            fixed_fleet: None,
        }
    }

    /// Disaster geometry in town coordinates as simulated: the homogeneous
    /// town ignores the center distance and puts the disaster on the origin.
    pub fn effective_disaster(&self) -> DisasterSpec {
        match self.town {
            TownModel::Homogeneous { .. } => DisasterSpec::new(0.0, self.disaster.radius),
            _ => self.disaster,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.town.validate()?;
        self.disaster.validate()?;
        self.tbs.validate()?;
        if self.tbs.is_aerial() {
            return Err(invalid("tbs", "terrestrial profile must be ground mounted"));
        }
        self.fleet.validate()?;
        self.los.validate()?;
        self.propagation.validate()?;
        self.check_fixed_fleet(self.fleet.size)
    }

    pub(crate) fn check_fixed_fleet(&self, size: usize) -> Result<()> {
        match &self.fixed_fleet {
            Some(points) if points.len() < size => Err(invalid(
                "fixed_fleet",
                "fewer fixed positions than fleet members",
            )),
            _ => Ok(()),
        }
    }
}
