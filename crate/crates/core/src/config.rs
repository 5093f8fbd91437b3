//! Tracker threshold set.

use serde::{Deserialize, Serialize};

/// Scalar thresholds driving clustering, track lifecycle and the people
/// filter. Field names follow the symbols conventionally used for them.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrackerConfig {
    /// Cluster break distance (m): consecutive scan points further apart
    /// than this start a new cluster.
    pub alpha: f64,
    /// Minimum number of points for a cluster to survive.
    pub beta: usize,
    /// Detection confidence floor; lower-scoring clusters are pruned.
    pub gamma: f64,
    /// Accumulated travel (m) both legs need before a person track may
    /// be initiated.
    pub delta: f64,
    /// Position-variance bound (m^2); a track whose covariance first
    /// element exceeds this is deleted.
    pub epsilon: f64,
    /// People-filter radius (m) around each tracked leg.
    pub zeta: f64,
    /// Track confidence floor for initiation and deletion.
    pub c_min: f64,
    /// Process noise factor: Q = q * I.
    pub q: f64,
    /// Observation noise factor: R = r * I.
    pub r: f64,
    /// Association gate (m): track/detection pairs further apart stay
    /// unmatched.
    pub gate: f64,
}

impl Default for TrackerConfig {
    fn default() -> Self {
        Self {
            alpha: 0.13,
            beta: 3,
            gamma: 0.3,
            delta: 0.5,
            epsilon: 0.9,
            zeta: 0.35,
            c_min: 0.1,
            q: 0.05,
            r: 0.1,
            gate: 0.75,
        }
    }
}

impl TrackerConfig {
    pub fn validate(&self) -> Result<(), String> {
        let positive = [
            ("alpha", self.alpha),
            ("delta", self.delta),
            ("epsilon", self.epsilon),
            ("zeta", self.zeta),
            ("q", self.q),
            ("r", self.r),
            ("gate", self.gate),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(format!("{name} must be positive, got {v}"));
            }
        }
        if self.beta == 0 {
            return Err("beta must be at least 1".into());
        }
        for (name, v) in [("gamma", self.gamma), ("c_min", self.c_min)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(format!("{name} must lie in [0,1], got {v}"));
            }
        }
        Ok(())
    }
}
