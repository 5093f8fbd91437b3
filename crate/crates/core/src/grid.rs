//! Log-odds occupancy grid used both for the SLAM map and the tracker's
//! local gating grid.

use crate::geometry::{Point2, Pose2};

/// Saturation bound for cell log-odds. The clamp keeps cells revisable:
/// a cell marked occupied by a passing person can still be driven free
/// by later evidence.
pub const LOG_ODDS_MIN: f64 = -5.0;
pub const LOG_ODDS_MAX: f64 = 5.0;

/// A grid of log-odds occupancy values.
///
/// `origin` is the world pose of the lower-left corner of cell (0,0);
/// cell (ix,iy) spans `[origin + ix*res, origin + (ix+1)*res)` on each
/// axis. `origin.theta` is always zero in this codebase (axis-aligned
/// grids).
#[derive(Debug, Clone)]
pub struct OccupancyGridMap {
    resolution: f64,
    origin: Pose2,
    width: usize,
    height: usize,
    cells: Vec<f64>,
    touched: Vec<bool>,
}

impl OccupancyGridMap {
    pub fn new(resolution: f64, origin: Pose2, width: usize, height: usize) -> Self {
        assert!(resolution > 0.0);
        Self {
            resolution,
            origin,
            width,
            height,
            cells: vec![0.0; width * height],
            touched: vec![false; width * height],
        }
    }

    /// Build a grid covering the axis-aligned box `[min, max]` plus
    /// `margin` meters on every side.
    pub fn covering(resolution: f64, min: Point2, max: Point2, margin: f64) -> Self {
        let origin = Pose2::new(min.x - margin, min.y - margin, 0.0);
        let width = ((max.x - min.x + 2.0 * margin) / resolution).ceil() as usize + 1;
        let height = ((max.y - min.y + 2.0 * margin) / resolution).ceil() as usize + 1;
        Self::new(resolution, origin, width, height)
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn origin(&self) -> Pose2 {
        self.origin
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn index(&self, ix: usize, iy: usize) -> usize {
        iy * self.width + ix
    }

    /// Grid cell containing the world point, or None when outside.
    pub fn world_to_cell(&self, p: Point2) -> Option<(usize, usize)> {
        let fx = (p.x - self.origin.x) / self.resolution;
        let fy = (p.y - self.origin.y) / self.resolution;
        if fx < 0.0 || fy < 0.0 {
            return None;
        }
        let ix = fx.floor() as usize;
        let iy = fy.floor() as usize;
        if ix >= self.width || iy >= self.height {
            return None;
        }
        Some((ix, iy))
    }

    /// World coordinates of the cell center.
    pub fn cell_center(&self, ix: usize, iy: usize) -> Point2 {
        Point2::new(
            self.origin.x + (ix as f64 + 0.5) * self.resolution,
            self.origin.y + (iy as f64 + 0.5) * self.resolution,
        )
    }

    pub fn log_odds(&self, ix: usize, iy: usize) -> f64 {
        self.cells[self.index(ix, iy)]
    }

    pub fn cells(&self) -> &[f64] {
        &self.cells
    }

    /// Add `delta` to the cell's log-odds, clamped to the saturation
    /// bounds. Returns the new value.
    pub fn add_log_odds(&mut self, ix: usize, iy: usize, delta: f64) -> f64 {
        let idx = self.index(ix, iy);
        let v = (self.cells[idx] + delta).clamp(LOG_ODDS_MIN, LOG_ODDS_MAX);
        self.cells[idx] = v;
        self.touched[idx] = true;
        v
    }

    pub fn set_log_odds(&mut self, ix: usize, iy: usize, value: f64) {
        let idx = self.index(ix, iy);
        self.cells[idx] = value.clamp(LOG_ODDS_MIN, LOG_ODDS_MAX);
        self.touched[idx] = true;
    }

    pub fn is_occupied(&self, ix: usize, iy: usize) -> bool {
        self.log_odds(ix, iy) > 0.0
    }

    pub fn is_free(&self, ix: usize, iy: usize) -> bool {
        self.log_odds(ix, iy) < 0.0
    }

    /// A cell is unknown when it has never received an update.
    pub fn is_unknown(&self, ix: usize, iy: usize) -> bool {
        !self.touched[self.index(ix, iy)]
    }

    /// Count of cells with log-odds above `threshold`.
    pub fn count_above(&self, threshold: f64) -> usize {
        self.cells.iter().filter(|&&v| v > threshold).count()
    }

    /// Shift the grid origin by whole cells, moving cell contents so
    /// that world positions keep their values; cells shifted in from
    /// outside become unknown.
    pub fn shift_cells(&mut self, dx: isize, dy: isize) {
        if dx == 0 && dy == 0 {
            return;
        }
        let mut cells = vec![0.0; self.width * self.height];
        let mut touched = vec![false; self.width * self.height];
        for iy in 0..self.height {
            let src_y = iy as isize + dy;
            if src_y < 0 || src_y >= self.height as isize {
                continue;
            }
            for ix in 0..self.width {
                let src_x = ix as isize + dx;
                if src_x < 0 || src_x >= self.width as isize {
                    continue;
                }
                let src = src_y as usize * self.width + src_x as usize;
                let dst = iy * self.width + ix;
                cells[dst] = self.cells[src];
                touched[dst] = self.touched[src];
            }
        }
        self.cells = cells;
        self.touched = touched;
        self.origin = Pose2::new(
            self.origin.x + dx as f64 * self.resolution,
            self.origin.y + dy as f64 * self.resolution,
            0.0,
        );
    }
}
