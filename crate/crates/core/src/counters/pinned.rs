use alloc::vec::Vec;

use super::{distinct_among, AngleCoord};
use crate::error::GeomError;
use crate::geom::{PointConfig, Points, Vec3};
use crate::kernel::ClusterStats;

/// Which triples a pinned count ranges over. Windows are written `(a, b, c)`
/// for the angle `∠abc` with center `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PinSpec {
    /// `(A, X, Y)`.
    Endpoint(usize),
    /// `(X, A, Y)`.
    Center(usize),
    /// `(A, B, Y)`.
    EndpointCenter(usize, usize),
    /// `(A, X, B)`.
    Endpoints(usize, usize),
    /// Union of `(A, B, Y)`, `(B, A, Y)` and `(A, Y, B)`.
    PairAllRoles(usize, usize),
}

impl PinSpec {
    fn check(&self, n: usize) -> Result<(), GeomError> {
        let (a, b) = match *self {
            PinSpec::Endpoint(a) | PinSpec::Center(a) => (a, None),
            PinSpec::EndpointCenter(a, b) | PinSpec::Endpoints(a, b) | PinSpec::PairAllRoles(a, b) => {
                (a, Some(b))
            }
        };
        for i in core::iter::once(a).chain(b) {
            if i >= n {
                return Err(GeomError::IndexOutOfRange { index: i, len: n });
            }
        }
        if b == Some(a) {
            return Err(GeomError::RepeatedPin(a));
        }
        Ok(())
    }

    /// The windows matching this pin in a configuration of `n` points.
    pub fn windows(&self, n: usize) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        match *self {
            PinSpec::Endpoint(a) => {
                for x in (0..n).filter(|&x| x != a) {
                    for y in (0..n).filter(|&y| y != a && y != x) {
                        out.push([a, x, y]);
                    }
                }
            }
            PinSpec::Center(a) => {
                for x in (0..n).filter(|&x| x != a) {
                    for y in (0..n).filter(|&y| y != a && y != x) {
                        out.push([x, a, y]);
                    }
                }
            }
            PinSpec::EndpointCenter(a, b) => {
                out.extend((0..n).filter(|&y| y != a && y != b).map(|y| [a, b, y]));
            }
            PinSpec::Endpoints(a, b) => {
                out.extend((0..n).filter(|&x| x != a && x != b).map(|x| [a, x, b]));
            }
            PinSpec::PairAllRoles(a, b) => {
                for y in (0..n).filter(|&y| y != a && y != b) {
                    out.push([a, b, y]);
                    out.push([b, a, y]);
                    out.push([a, y, b]);
                }
            }
        }
        out
    }
}

fn pinned<T: AngleCoord>(pts: &[Vec3<T>], pin: PinSpec, eps: f64) -> (usize, Option<ClusterStats>) {
    distinct_among(pts, &pin.windows(pts.len()), eps)
}

/// Number of distinct angles among the triples selected by `pin`.
///
/// Float configurations cluster only the selected cosines.
pub fn count_pinned(config: &PointConfig, pin: PinSpec, eps: f64) -> Result<usize, GeomError> {
    count_pinned_with_stats(config, pin, eps).map(|r| r.0)
}

/// [`count_pinned`] plus clustering diagnostics (float mode only).
pub fn count_pinned_with_stats(
    config: &PointConfig,
    pin: PinSpec,
    eps: f64,
) -> Result<(usize, Option<ClusterStats>), GeomError> {
    pin.check(config.len())?;
    Ok(match config.points() {
        Points::Exact(p) => match super::to_grid(p) {
            Some(g) => pinned(&g, pin, eps),
            None => pinned(p, pin, eps),
        },
        Points::Float(p) => pinned(p, pin, eps),
    })
}
