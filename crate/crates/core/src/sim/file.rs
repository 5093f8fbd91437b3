//! World file schema.
//!
//! Worlds are TOML documents listing walls as endpoint pairs, the robot
//! start pose and canonical drive route, pedestrian waypoint paths, the
//! default seed and noise parameters:
//!
//! ```toml
//! seed = 1
//!
//! [[walls]]
//! from = [0.0, 0.0]
//! to = [25.0, 0.0]
//!
//! [robot]
//! start = [1.5, 1.5, 0.0]
//! route = [[2.5, 1.5], [23.0, 1.5]]
//!
//! [[pedestrians]]
//! role = "leader"
//! speed = 0.8
//! start = [3.0, 1.5]
//! waypoints = [[23.0, 1.5]]
//!
//! [noise]
//! scan_sigma = 0.01
//! ```

use super::{NoiseParams, PedRole, PedestrianState, Segment, WorldModel};
use crate::geometry::{Point2, Pose2};
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum WorldError {
    #[error("world file parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("world file i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid world: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorldFile {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    pub walls: Vec<WallEntry>,
    pub robot: RobotEntry,
    #[serde(default)]
    pub pedestrians: Vec<PedestrianEntry>,
    #[serde(default)]
    pub noise: NoiseParams,
    /// Optional explicit bounds [xmin, ymin, xmax, ymax]; defaults to
    /// the wall bounding box.
    #[serde(default)]
    pub bounds: Option<[f64; 4]>,
}

fn default_seed() -> u64 {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WallEntry {
    pub from: [f64; 2],
    pub to: [f64; 2],
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RobotEntry {
    /// [x, y, theta]
    pub start: [f64; 3],
    /// Waypoints for the scripted ground-truth drive.
    #[serde(default)]
    pub route: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PedestrianEntry {
    pub role: PedRole,
    pub speed: f64,
    pub start: [f64; 2],
    pub waypoints: Vec<[f64; 2]>,
    #[serde(default = "default_leg_radius")]
    pub leg_radius: f64,
    #[serde(default = "default_leg_separation")]
    pub leg_separation: f64,
    #[serde(default = "default_gait_amplitude")]
    pub gait_amplitude: f64,
    #[serde(default = "default_cadence")]
    pub cadence_hz: f64,
    #[serde(default)]
    pub initial_gait_phase: f64,
}

fn default_leg_radius() -> f64 {
    0.06
}
fn default_leg_separation() -> f64 {
    0.25
}
fn default_gait_amplitude() -> f64 {
    0.12
}
fn default_cadence() -> f64 {
    1.8
}

impl WorldFile {
    pub fn from_str(text: &str) -> Result<Self, WorldError> {
        let file: WorldFile = toml::from_str(text)?;
        file.validate()?;
        Ok(file)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self, WorldError> {
        Self::from_str(&std::fs::read_to_string(path)?)
    }

    fn validate(&self) -> Result<(), WorldError> {
        if self.walls.is_empty() {
            return Err(WorldError::Invalid("world has no walls".into()));
        }
        for (i, w) in self.walls.iter().enumerate() {
            let len = ((w.to[0] - w.from[0]).powi(2) + (w.to[1] - w.from[1]).powi(2)).sqrt();
            if !(len > 0.0) {
                return Err(WorldError::Invalid(format!("wall {i} is degenerate")));
            }
        }
        for (i, p) in self.pedestrians.iter().enumerate() {
            if !(0.0..=2.0).contains(&p.speed) {
                return Err(WorldError::Invalid(format!(
                    "pedestrian {i} speed {} outside [0, 2.0] m/s",
                    p.speed
                )));
            }
            if p.waypoints.is_empty() {
                return Err(WorldError::Invalid(format!(
                    "pedestrian {i} has no waypoints"
                )));
            }
        }
        Ok(())
    }

    /// Instantiate the world. `keep_pedestrians` limits how many
    /// pedestrians are loaded (leader first), letting one world file
    /// serve the no-people / 1-person / 2-people conditions.
    pub fn build(&self, seed: u64, noise: NoiseParams, keep_pedestrians: usize) -> WorldModel {
        let walls = self
            .walls
            .iter()
            .map(|w| {
                Segment::new(
                    Point2::new(w.from[0], w.from[1]),
                    Point2::new(w.to[0], w.to[1]),
                )
            })
            .collect();
        let mut peds: Vec<PedestrianState> = self
            .pedestrians
            .iter()
            .map(|p| {
                let start = Point2::new(p.start[0], p.start[1]);
                let first = p
                    .waypoints
                    .first()
                    .map(|w| Point2::new(w[0], w[1]))
                    .unwrap_or(start);
                PedestrianState {
                    center: start,
                    heading: (first.y - start.y).atan2(first.x - start.x),
                    speed: p.speed,
                    gait_phase: p.initial_gait_phase,
                    leg_radius: p.leg_radius,
                    leg_separation: p.leg_separation,
                    gait_amplitude: p.gait_amplitude,
                    cadence_hz: p.cadence_hz,
                    waypoint_path: p.waypoints.iter().map(|w| Point2::new(w[0], w[1])).collect(),
                    next_waypoint: 0,
                    role: p.role,
                }
            })
            .collect();
        // Leader first so truncation keeps the leader.
        peds.sort_by_key(|p| match p.role {
            PedRole::Leader => 0,
            PedRole::Bystander => 1,
        });
        peds.truncate(keep_pedestrians);
        let start = Pose2::new(self.robot.start[0], self.robot.start[1], self.robot.start[2]);
        let mut world = WorldModel::new(walls, peds, start, seed, noise);
        world.route = self
            .robot
            .route
            .iter()
            .map(|w| Point2::new(w[0], w[1]))
            .collect();
        if let Some([x0, y0, x1, y1]) = self.bounds {
            world.set_bounds(Point2::new(x0, y0), Point2::new(x1, y1));
        }
        world
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
seed = 7
[[walls]]
from = [0.0, 0.0]
to = [4.0, 0.0]
[[walls]]
from = [4.0, 0.0]
to = [4.0, 4.0]
[robot]
start = [1.0, 1.0, 0.0]
route = [[2.0, 1.0]]
[[pedestrians]]
role = "leader"
speed = 0.8
start = [2.0, 1.0]
waypoints = [[3.0, 1.0]]
"#;

    #[test]
    fn parses_minimal_world() {
        let wf = WorldFile::from_str(MINIMAL).unwrap();
        assert_eq!(wf.seed, 7);
        let world = wf.build(7, NoiseParams::noise_free(), 2);
        assert_eq!(world.walls.len(), 2);
        assert_eq!(world.pedestrians.len(), 1);
        assert_eq!(world.route.len(), 1);
    }

    #[test]
    fn condition_truncates_pedestrians() {
        let wf = WorldFile::from_str(MINIMAL).unwrap();
        assert_eq!(wf.build(1, NoiseParams::noise_free(), 0).pedestrians.len(), 0);
    }

    #[test]
    fn parse_error_carries_line_info() {
        let bad = "walls = \"oops";
        let err = WorldFile::from_str(bad).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("line"), "diagnostic missing line info: {msg}");
    }

    #[test]
    fn rejects_degenerate_wall() {
        let bad = r#"
[[walls]]
from = [1.0, 1.0]
to = [1.0, 1.0]
[robot]
start = [0.0, 0.0, 0.0]
"#;
        assert!(matches!(
            WorldFile::from_str(bad),
            Err(WorldError::Invalid(_))
        ));
    }

    #[test]
    fn rejects_overspeed_pedestrian() {
        let bad = r#"
[[walls]]
from = [0.0, 0.0]
to = [4.0, 0.0]
[robot]
start = [0.0, 0.0, 0.0]
[[pedestrians]]
role = "leader"
speed = 3.5
start = [1.0, 1.0]
waypoints = [[2.0, 1.0]]
"#;
        assert!(WorldFile::from_str(bad).is_err());
    }
}
