use crate::math;

/// A location on the ground plane, in km.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GroundPoint {
    pub x: f64,
    pub y: f64,
}

impl GroundPoint {
    pub const ORIGIN: GroundPoint = GroundPoint { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance_sq(&self, other: &GroundPoint) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn distance(&self, other: &GroundPoint) -> f64 {
        math::sqrt(self.distance_sq(other))
    }
}

/// An airborne platform: horizontal position in km plus altitude `h` in km.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AerialPoint {
    pub x: f64,
    pub y: f64,
    pub h: f64,
}

impl AerialPoint {
    pub const fn new(x: f64, y: f64, h: f64) -> Self {
        Self { x, y, h }
    }

    pub fn ground(&self) -> GroundPoint {
        GroundPoint::new(self.x, self.y)
    }

    pub fn horizontal_distance(&self, user: &GroundPoint) -> f64 {
        self.ground().distance(user)
    }

    /// Slant range from a ground user.
    pub fn distance(&self, user: &GroundPoint) -> f64 {
        math::sqrt(self.ground().distance_sq(user) + self.h * self.h)
    }

    /// Elevation angle seen from `user`, in degrees.
    pub fn elevation_deg(&self, user: &GroundPoint) -> f64 {
        math::atan2(self.h, self.horizontal_distance(user)).to_degrees()
    }
}
