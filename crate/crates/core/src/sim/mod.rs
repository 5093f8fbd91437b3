//! Deterministic 2D world: static walls, articulated pedestrians, a
//! unicycle robot, raycast LiDAR with optional Gaussian range noise and
//! drifting integrated odometry.
//!
//! Everything downstream is tested against this module's ground truth,
//! so determinism matters: the same seed and scenario produce a
//! bit-identical trace.

mod file;
mod raycast;

pub use file::{WorldError, WorldFile};
pub use raycast::{ray_circle, ray_segment};

use crate::geometry::{normalize_angle, Point2, Pose2};
use crate::grid::OccupancyGridMap;
use crate::scan::{LidarParams, Scan};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// A non-degenerate wall segment.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl Segment {
    pub fn new(a: Point2, b: Point2) -> Self {
        Self { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.distance(&self.b)
    }

    /// Distance from a point to the segment.
    pub fn distance_to(&self, p: &Point2) -> f64 {
        let vx = self.b.x - self.a.x;
        let vy = self.b.y - self.a.y;
        let len_sq = vx * vx + vy * vy;
        let t = (((p.x - self.a.x) * vx + (p.y - self.a.y) * vy) / len_sq).clamp(0.0, 1.0);
        let cx = self.a.x + t * vx;
        let cy = self.a.y + t * vy;
        p.distance(&Point2::new(cx, cy))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PedRole {
    Leader,
    Bystander,
}

/// Walking person modeled as two leg circles that swing along the
/// heading direction with the gait phase, so a scan can resolve the
/// legs as two clusters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PedestrianState {
    pub center: Point2,
    pub heading: f64,
    pub speed: f64,
    pub gait_phase: f64,
    pub leg_radius: f64,
    pub leg_separation: f64,
    pub gait_amplitude: f64,
    pub cadence_hz: f64,
    pub waypoint_path: Vec<Point2>,
    pub next_waypoint: usize,
    pub role: PedRole,
}

impl PedestrianState {
    /// Leg centers: center +/- (separation/2 + amplitude*sin(phase))
    /// along the heading.
    pub fn legs(&self) -> [Point2; 2] {
        let offset = self.leg_separation / 2.0 + self.gait_amplitude * self.gait_phase.sin();
        let (s, c) = self.heading.sin_cos();
        [
            Point2::new(self.center.x + c * offset, self.center.y + s * offset),
            Point2::new(self.center.x - c * offset, self.center.y - s * offset),
        ]
    }

    fn advance(&mut self, dt: f64) {
        let mut remaining = self.speed * dt;
        let mut moved = false;
        while remaining > 0.0 && self.next_waypoint < self.waypoint_path.len() {
            let target = self.waypoint_path[self.next_waypoint];
            let dist = self.center.distance(&target);
            if dist < 1e-9 {
                self.next_waypoint += 1;
                continue;
            }
            self.heading = (target.y - self.center.y).atan2(target.x - self.center.x);
            moved = true;
            if remaining >= dist {
                self.center = target;
                remaining -= dist;
                self.next_waypoint += 1;
            } else {
                self.center = Point2::new(
                    self.center.x + remaining * self.heading.cos(),
                    self.center.y + remaining * self.heading.sin(),
                );
                remaining = 0.0;
            }
        }
        // Gait freezes when standing at the end of the path.
        if moved {
            self.gait_phase = normalize_angle(self.gait_phase + 2.0 * PI * self.cadence_hz * dt);
        }
    }
}

/// Per-step Gaussian twist noise integrated into the odometry estimate.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseParams {
    /// Range noise std dev (m) applied to every hit.
    pub scan_sigma: f64,
    /// Linear twist noise std dev (m/s) per step.
    pub odom_v_sigma: f64,
    /// Angular twist noise std dev (rad/s) per step.
    pub odom_w_sigma: f64,
}

impl NoiseParams {
    pub fn noise_free() -> Self {
        Self::default()
    }
}

/// Integrated (drifting) odometry estimate plus the last twist.
#[derive(Debug, Clone, Copy)]
pub struct OdometryReading {
    pub pose: Pose2,
    pub twist: (f64, f64),
}

/// What a beam actually hit, for per-beam ground truth in tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeamLabel {
    Miss,
    Wall(usize),
    /// (pedestrian index, leg index)
    Leg(usize, usize),
}

#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error("command contains non-finite components: ({0}, {1})")]
    NonFiniteCommand(f64, f64),
    #[error("dt must be positive, got {0}")]
    NonPositiveDt(f64),
}

/// The full simulated world. Single writer; snapshots of its outputs
/// (scans, odometry, pedestrian states) are immutable values.
#[derive(Debug, Clone)]
pub struct WorldModel {
    pub walls: Vec<Segment>,
    pub pedestrians: Vec<PedestrianState>,
    pub robot_truth: Pose2,
    pub rng_seed: u64,
    pub lidar: LidarParams,
    pub noise: NoiseParams,
    /// Canonical drive route used by the scripted (no-people) run and
    /// as a reference path for leaders.
    pub route: Vec<Point2>,
    bounds_min: Point2,
    bounds_max: Point2,
    time: f64,
    odom_pose: Pose2,
    odom_twist: (f64, f64),
    rng: ChaCha8Rng,
}

impl WorldModel {
    pub fn new(
        walls: Vec<Segment>,
        pedestrians: Vec<PedestrianState>,
        robot_start: Pose2,
        seed: u64,
        noise: NoiseParams,
    ) -> Self {
        assert!(
            walls.iter().all(|w| w.length() > 0.0),
            "walls must be non-degenerate"
        );
        let (bounds_min, bounds_max) = wall_bounds(&walls);
        Self {
            walls,
            pedestrians,
            robot_truth: robot_start,
            rng_seed: seed,
            lidar: LidarParams::default(),
            noise,
            route: Vec::new(),
            bounds_min,
            bounds_max,
            time: 0.0,
            odom_pose: robot_start,
            odom_twist: (0.0, 0.0),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn bounds(&self) -> (Point2, Point2) {
        (self.bounds_min, self.bounds_max)
    }

    pub fn set_bounds(&mut self, min: Point2, max: Point2) {
        self.bounds_min = min;
        self.bounds_max = max;
    }

    pub fn robot_inside_bounds(&self) -> bool {
        let p = self.robot_truth.position();
        p.x >= self.bounds_min.x
            && p.x <= self.bounds_max.x
            && p.y >= self.bounds_min.y
            && p.y <= self.bounds_max.y
    }

    /// Advance the world by `dt` under the commanded twist: exact
    /// unicycle arc for the robot, waypoint walking for pedestrians,
    /// noisy twist integration for the odometry estimate.
    pub fn step(&mut self, cmd: (f64, f64), dt: f64) -> Result<(), SimError> {
        if !cmd.0.is_finite() || !cmd.1.is_finite() {
            return Err(SimError::NonFiniteCommand(cmd.0, cmd.1));
        }
        if dt <= 0.0 {
            return Err(SimError::NonPositiveDt(dt));
        }
        self.robot_truth = unicycle_step(&self.robot_truth, cmd.0, cmd.1, dt);
        for ped in &mut self.pedestrians {
            ped.advance(dt);
        }
        let mut v = cmd.0;
        let mut w = cmd.1;
        if self.noise.odom_v_sigma > 0.0 {
            v += self.sample_normal(self.noise.odom_v_sigma);
        }
        if self.noise.odom_w_sigma > 0.0 {
            w += self.sample_normal(self.noise.odom_w_sigma);
        }
        self.odom_pose = unicycle_step(&self.odom_pose, v, w, dt);
        self.odom_twist = (v, w);
        self.time += dt;
        Ok(())
    }

    pub fn read_odometry(&self) -> OdometryReading {
        OdometryReading {
            pose: self.odom_pose,
            twist: self.odom_twist,
        }
    }

    /// Raycast a sweep against walls and pedestrian legs; the nearest
    /// hit wins each beam. Range noise (if configured) is added per hit
    /// and results outside the sensor's range limits are flagged
    /// invalid.
    pub fn simulate_scan(&mut self) -> Scan {
        self.simulate_scan_labeled().0
    }

    /// Like `simulate_scan`, additionally reporting what each beam hit
    /// (before noise). Used by evaluation code that needs per-beam
    /// ground truth.
    pub fn simulate_scan_labeled(&mut self) -> (Scan, Vec<BeamLabel>) {
        let params = self.lidar;
        let n = params.beam_count();
        let mut ranges = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        let origin = self.robot_truth.position();
        let legs: Vec<(usize, usize, Point2, f64)> = self
            .pedestrians
            .iter()
            .enumerate()
            .flat_map(|(pi, p)| {
                let r = p.leg_radius;
                p.legs()
                    .into_iter()
                    .enumerate()
                    .map(move |(li, c)| (pi, li, c, r))
            })
            .collect();
        for i in 0..n {
            let angle = self.robot_truth.theta + params.bearing(i);
            let dir = (angle.cos(), angle.sin());
            let mut best = f64::INFINITY;
            let mut label = BeamLabel::Miss;
            for (wi, wall) in self.walls.iter().enumerate() {
                if let Some(t) = ray_segment(origin, dir, wall) {
                    if t < best {
                        best = t;
                        label = BeamLabel::Wall(wi);
                    }
                }
            }
            for &(pi, li, center, radius) in &legs {
                if let Some(t) = ray_circle(origin, dir, center, radius) {
                    if t < best {
                        best = t;
                        label = BeamLabel::Leg(pi, li);
                    }
                }
            }
            if !best.is_finite() || best > params.range_max {
                ranges.push(None);
                labels.push(BeamLabel::Miss);
                continue;
            }
            let mut range = best;
            if self.noise.scan_sigma > 0.0 {
                range += self.sample_normal(self.noise.scan_sigma);
            }
            if range < params.range_min || range > params.range_max {
                ranges.push(None);
                labels.push(label);
            } else {
                ranges.push(Some(range));
                labels.push(label);
            }
        }
        (Scan::new(&params, self.time, ranges), labels)
    }

    /// Mark every grid cell crossed by a wall segment. The caller
    /// supplies the grid so the rasterization shares the SLAM map's
    /// alignment; returns the cell centers.
    pub fn rasterize_walls(&self, grid: &OccupancyGridMap) -> Vec<Point2> {
        let step = grid.resolution() / 4.0;
        let mut cells: std::collections::BTreeSet<(usize, usize)> = Default::default();
        for wall in &self.walls {
            let len = wall.length();
            let steps = (len / step).ceil() as usize;
            for k in 0..=steps {
                let t = (k as f64 / steps as f64).min(1.0);
                let p = Point2::new(
                    wall.a.x + t * (wall.b.x - wall.a.x),
                    wall.a.y + t * (wall.b.y - wall.a.y),
                );
                if let Some(cell) = grid.world_to_cell(p) {
                    cells.insert(cell);
                }
            }
        }
        cells
            .into_iter()
            .map(|(ix, iy)| grid.cell_center(ix, iy))
            .collect()
    }

    fn sample_normal(&mut self, sigma: f64) -> f64 {
        Normal::new(0.0, sigma).unwrap().sample(&mut self.rng)
    }
}

/// Exact constant-twist (unicycle) integration over `dt`.
pub fn unicycle_step(pose: &Pose2, v: f64, w: f64, dt: f64) -> Pose2 {
    if w.abs() < 1e-12 {
        Pose2::new(
            pose.x + v * dt * pose.theta.cos(),
            pose.y + v * dt * pose.theta.sin(),
            pose.theta,
        )
    } else {
        let radius = v / w;
        let next = pose.theta + w * dt;
        Pose2::new(
            pose.x + radius * (next.sin() - pose.theta.sin()),
            pose.y + radius * (pose.theta.cos() - next.cos()),
            next,
        )
    }
}

fn wall_bounds(walls: &[Segment]) -> (Point2, Point2) {
    let mut min = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut max = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for w in walls {
        for p in [w.a, w.b] {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
    }
    (min, max)
}
