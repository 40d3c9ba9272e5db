//! Point configurations, general-position predicates and exhaustive angle
//! counting.
//!
//! Everything here is pure computation over in-memory point sets and builds
//! without `std` (an allocator is required). File formats, sweeps and the
//! command line live in the `angles-bench` crate.
//!
//! Two coordinate modes are supported throughout:
//!
//! * **exact**: arbitrary-precision rationals. Angles are identified by the
//!   pair `(sign cos, cos²)`, which is injective on `(0, π)`, so equal keys mean
//!   equal angles with no tolerance involved.
//! * **float**: binary64 coordinates, needed for the transcendental
//!   constructions (spirals, helices). Angles are identified by single-linkage
//!   clustering of their cosines with a threshold `eps`.
//!
//! With the `parallel` feature the triple and quadruple scans run on rayon.
//! Results do not depend on the number of worker threads.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod constructions;
pub mod counters;
pub mod error;
pub mod geom;
pub mod kernel;
pub mod predicates;

mod par;

pub use error::GeomError;
pub use geom::{Coord, Dim, Mode, Point, PointConfig, Points, Rational, Scalar, Vec3};
pub use kernel::{AngleKey, ClusterStats, ExactAngle};

/// Default clustering threshold on cosines, and default relative tolerance for
/// the float-mode predicates.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Float-mode point distinctness threshold (per coordinate).
pub const DISTINCT_EPS: f64 = 1e-12;
