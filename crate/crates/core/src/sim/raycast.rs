//! Ray/segment and ray/circle intersection for the LiDAR model.

use super::Segment;
use crate::geometry::Point2;

/// Distance along the ray `origin + t*dir` to the segment, if it hits.
/// `dir` must be a unit vector.
pub fn ray_segment(origin: Point2, dir: (f64, f64), seg: &Segment) -> Option<f64> {
    let rx = seg.b.x - seg.a.x;
    let ry = seg.b.y - seg.a.y;
    let denom = dir.0 * ry - dir.1 * rx;
    if denom.abs() < 1e-12 {
        return None; // parallel (collinear overlap ignored)
    }
    let ax = seg.a.x - origin.x;
    let ay = seg.a.y - origin.y;
    let t = (ax * ry - ay * rx) / denom;
    let s = (ax * dir.1 - ay * dir.0) / -denom;
    if t >= 0.0 && (0.0..=1.0).contains(&s) {
        Some(t)
    } else {
        None
    }
}

/// Distance along the ray to the first boundary crossing of the circle.
pub fn ray_circle(origin: Point2, dir: (f64, f64), center: Point2, radius: f64) -> Option<f64> {
    let mx = center.x - origin.x;
    let my = center.y - origin.y;
    let proj = dir.0 * mx + dir.1 * my;
    let disc = proj * proj - (mx * mx + my * my - radius * radius);
    if disc < 0.0 {
        return None;
    }
    let sqrt_disc = disc.sqrt();
    let near = proj - sqrt_disc;
    if near >= 0.0 {
        return Some(near);
    }
    let far = proj + sqrt_disc;
    if far >= 0.0 {
        return Some(far); // ray starts inside the circle
    }
    None
}
