//! LiDAR sweep representation and polar-to-Cartesian projection.

use crate::geometry::{transform_point, Point2, Pose2};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Beam geometry and range limits of the sensor.
///
/// Defaults model a 270 degree scanner with 0.25 degree angular
/// resolution and a 0.1-30 m detection range running at 40 Hz.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LidarParams {
    pub angle_min: f64,
    pub angle_max: f64,
    pub angle_increment: f64,
    pub range_min: f64,
    pub range_max: f64,
    pub rate_hz: f64,
}

impl Default for LidarParams {
    fn default() -> Self {
        Self {
            angle_min: -0.75 * PI,
            angle_max: 0.75 * PI,
            angle_increment: 0.25_f64.to_radians(),
            range_min: 0.1,
            range_max: 30.0,
            rate_hz: 40.0,
        }
    }
}

impl LidarParams {
    /// Number of beams: floor((angle_max - angle_min)/angle_increment) + 1.
    pub fn beam_count(&self) -> usize {
        ((self.angle_max - self.angle_min) / self.angle_increment).floor() as usize + 1
    }

    pub fn bearing(&self, beam: usize) -> f64 {
        self.angle_min + beam as f64 * self.angle_increment
    }
}

/// One LiDAR sweep. Invalid returns are an explicit `None`, never a
/// sentinel range value.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scan {
    pub timestamp: f64,
    pub angle_min: f64,
    pub angle_max: f64,
    pub angle_increment: f64,
    pub range_min: f64,
    pub range_max: f64,
    pub ranges: Vec<Option<f64>>,
}

impl Scan {
    /// Build a scan, checking the beam-count and range invariants.
    pub fn new(params: &LidarParams, timestamp: f64, ranges: Vec<Option<f64>>) -> Self {
        assert_eq!(
            ranges.len(),
            params.beam_count(),
            "range count must match beam geometry"
        );
        debug_assert!(ranges
            .iter()
            .flatten()
            .all(|r| *r >= params.range_min && *r <= params.range_max));
        Self {
            timestamp,
            angle_min: params.angle_min,
            angle_max: params.angle_max,
            angle_increment: params.angle_increment,
            range_min: params.range_min,
            range_max: params.range_max,
            ranges,
        }
    }

    pub fn beam_count(&self) -> usize {
        self.ranges.len()
    }

    pub fn bearing(&self, beam: usize) -> f64 {
        self.angle_min + beam as f64 * self.angle_increment
    }

    pub fn valid_count(&self) -> usize {
        self.ranges.iter().filter(|r| r.is_some()).count()
    }

    /// Iterate `(beam index, bearing, range)` over valid returns.
    pub fn valid_returns(&self) -> impl Iterator<Item = (usize, f64, f64)> + '_ {
        self.ranges
            .iter()
            .enumerate()
            .filter_map(move |(i, r)| r.map(|range| (i, self.bearing(i), range)))
    }
}

/// Project every valid return into the frame of `sensor_pose`.
/// Invalid returns are dropped.
pub fn scan_to_points(scan: &Scan, sensor_pose: &Pose2) -> Vec<Point2> {
    scan.valid_returns()
        .map(|(_, bearing, range)| {
            let local = Point2::new(range * bearing.cos(), range * bearing.sin());
            transform_point(local, sensor_pose)
        })
        .collect()
}
