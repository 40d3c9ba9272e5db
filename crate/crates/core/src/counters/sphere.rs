//! Pinned-center counting through the unit sphere about the pinned point.
//!
//! Every other point `P` is replaced by `P' = (P − A) / |P − A|`. The angle
//! `∠PAQ` is the central angle between `P'` and `Q'`, so distinct angles at `A`
//! are distinct great-circle distances among the projected points.

use alloc::vec::Vec;

use super::{AngleCoord, Rational};
use crate::error::GeomError;
use crate::geom::{PointConfig, Points, Vec3};
use crate::kernel::{cluster_angles, exact_from_vectors, ExactAngle};

/// Unit vectors from `a` towards every other point.
fn project_float(pts: &[Vec3<f64>], a: usize) -> Vec<Vec3<f64>> {
    let center = &pts[a];
    pts.iter()
        .enumerate()
        .filter(|&(i, _)| i != a)
        .map(|(_, p)| {
            let d = p.sub(center);
            let inv = 1.0 / d.norm();
            d.scale(&inv)
        })
        .collect()
}

fn float_count(pts: &[Vec3<f64>], a: usize, eps: f64) -> usize {
    let proj = project_float(pts, a);
    let mut central = Vec::new();
    for i in 0..proj.len() {
        for j in i + 1..proj.len() {
            central.push(proj[i].dot(&proj[j]).clamp(-1.0, 1.0));
        }
    }
    cluster_angles(&central, eps).stats.num_classes
}

/// Exact route. The projection `d / |d|` leaves the rationals, but the cosine
/// of the central angle between `d / |d|` and `e / |e|` is `d·e / (|d||e|)`,
/// which is pinned down by its sign and its rational square.
fn exact_count(pts: &[Vec3<Rational>], a: usize) -> usize {
    let center = &pts[a];
    let dirs: Vec<Vec3<Rational>> = pts
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != a)
        .map(|(_, p)| p.sub(center))
        .collect();
    let mut central: Vec<ExactAngle> = Vec::new();
    for i in 0..dirs.len() {
        for j in i + 1..dirs.len() {
            central.push(exact_from_vectors(&dirs[i], &dirs[j]));
        }
    }
    <Rational as AngleCoord>::classify(central, 0.0).keys.len()
}

/// Distinct central angles seen from point `a_index`.
///
/// Equals `count_pinned(config, PinSpec::Center(a_index), eps)`.
pub fn pinned_center_via_sphere(config: &PointConfig, a_index: usize, eps: f64) -> Result<usize, GeomError> {
    let len = config.len();
    if a_index >= len {
        return Err(GeomError::IndexOutOfRange { index: a_index, len });
    }
    Ok(match config.points() {
        Points::Exact(p) => exact_count(p, a_index),
        Points::Float(p) => float_count(p, a_index, eps),
    })
}
