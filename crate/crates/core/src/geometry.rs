//! Planar poses, points and rigid-body transforms shared by every stage.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Normalize an angle to the half-open interval (-pi, pi].
pub fn normalize_angle(angle: f64) -> f64 {
    let mut a = angle.rem_euclid(2.0 * PI);
    if a > PI {
        a -= 2.0 * PI;
    }
    a
}

/// A point in the plane, meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point2) -> f64 {
        self.distance_sq(other).sqrt()
    }

    pub fn distance_sq(&self, other: &Point2) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// A planar rigid-body pose. `theta` is kept normalized to (-pi, pi]
/// by every constructor and composition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose2 {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl Pose2 {
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        Self {
            x,
            y,
            theta: normalize_angle(theta),
        }
    }

    pub fn identity() -> Self {
        Self {
            x: 0.0,
            y: 0.0,
            theta: 0.0,
        }
    }

    pub fn position(&self) -> Point2 {
        Point2::new(self.x, self.y)
    }

    /// Compose two poses: the result maps a point through `other` first,
    /// then through `self`.
    pub fn compose(&self, other: &Pose2) -> Pose2 {
        let (s, c) = self.theta.sin_cos();
        Pose2::new(
            self.x + c * other.x - s * other.y,
            self.y + s * other.x + c * other.y,
            self.theta + other.theta,
        )
    }

    pub fn inverse(&self) -> Pose2 {
        let (s, c) = self.theta.sin_cos();
        Pose2::new(
            -(c * self.x + s * self.y),
            -(-s * self.x + c * self.y),
            -self.theta,
        )
    }

    /// The relative pose taking `self` to `other`: `self.compose(delta) == other`.
    pub fn delta_to(&self, other: &Pose2) -> Pose2 {
        self.inverse().compose(other)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.theta.is_finite()
    }
}

/// Rigid-body transform of a point into the world frame of `frame`:
/// rotate by `frame.theta`, then translate by `(frame.x, frame.y)`.
pub fn transform_point(p: Point2, frame: &Pose2) -> Point2 {
    let (s, c) = frame.theta.sin_cos();
    Point2::new(
        frame.x + c * p.x - s * p.y,
        frame.y + s * p.x + c * p.y,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn identity_transform() {
        let p = transform_point(Point2::new(1.0, 0.0), &Pose2::identity());
        assert_relative_eq!(p.x, 1.0);
        assert_relative_eq!(p.y, 0.0);
    }

    #[test]
    fn quarter_turn() {
        let p = transform_point(Point2::new(1.0, 0.0), &Pose2::new(0.0, 0.0, PI / 2.0));
        assert_relative_eq!(p.x, 0.0, epsilon = 1e-12);
        assert_relative_eq!(p.y, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn rotation_with_translation() {
        // (1,1) rotated by pi is (-1,-1); translated by (2,3) gives (1,2).
        let p = transform_point(Point2::new(1.0, 1.0), &Pose2::new(2.0, 3.0, PI));
        assert_relative_eq!(p.x, 1.0, epsilon = 1e-12);
        assert_relative_eq!(p.y, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn theta_normalized_on_construction() {
        assert_relative_eq!(Pose2::new(0.0, 0.0, 3.0 * PI).theta, PI);
        assert_relative_eq!(Pose2::new(0.0, 0.0, -PI).theta, PI);
        assert!(Pose2::new(0.0, 0.0, 2.0 * PI).theta.abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn transform_round_trip(
            px in -50.0_f64..50.0, py in -50.0_f64..50.0,
            tx in -50.0_f64..50.0, ty in -50.0_f64..50.0,
            th in -10.0_f64..10.0,
        ) {
            let p = Point2::new(px, py);
            let t = Pose2::new(tx, ty, th);
            let back = transform_point(transform_point(p, &t), &t.inverse());
            prop_assert!((back.x - p.x).abs() < 1e-9);
            prop_assert!((back.y - p.y).abs() < 1e-9);
        }

        #[test]
        fn compose_matches_sequential_transform(
            px in -10.0_f64..10.0, py in -10.0_f64..10.0,
            ax in -10.0_f64..10.0, ay in -10.0_f64..10.0, ath in -7.0_f64..7.0,
            bx in -10.0_f64..10.0, by in -10.0_f64..10.0, bth in -7.0_f64..7.0,
        ) {
            let p = Point2::new(px, py);
            let a = Pose2::new(ax, ay, ath);
            let b = Pose2::new(bx, by, bth);
            let one = transform_point(transform_point(p, &b), &a);
            let two = transform_point(p, &a.compose(&b));
            prop_assert!((one.x - two.x).abs() < 1e-9);
            prop_assert!((one.y - two.y).abs() < 1e-9);
        }
    }
}
