//! Deterministic generators for the explicit point configurations.
//!
//! Generators that place points on a surface (cones, spindle tori, cone
//! intersections) draw seeded azimuths and reject any point that would create
//! a collinear triple or concyclic quadruple with the points placed so far.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GeomError;
use crate::geom::{Dim, PointConfig, Rational, Vec3};
use crate::predicates::{first_violation_with, verify_general_position, Tolerance};

/// Placement retries allowed per generator run.
pub const RETRY_BUDGET: usize = 1000;

/// Default spiral growth rate.
pub const DEFAULT_BETA: f64 = 0.1;

/// Parameters shared by all generators; each uses the fields it needs.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionParams {
    pub n: usize,
    /// Spiral growth rate.
    pub beta: f64,
    /// Cone or spindle-torus angle, radians.
    pub alpha: f64,
    /// Number of sunshine rays (and points per ray).
    pub m: usize,
    /// Sunshine radius base.
    pub exponent_base: f64,
    /// Dimension for random configurations.
    pub dim: Dim,
    pub seed: u64,
}

impl Default for ConstructionParams {
    fn default() -> Self {
        ConstructionParams {
            n: 10,
            beta: DEFAULT_BETA,
            alpha: PI / 4.0,
            m: 5,
            exponent_base: 2.0,
            dim: Dim::Two,
            seed: 1,
        }
    }
}

/// A generated configuration with its designated points, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct Built {
    pub config: PointConfig,
    pub a: Option<usize>,
    pub b: Option<usize>,
}

impl Built {
    fn plain(config: PointConfig) -> Self {
        Built { config, a: None, b: None }
    }
}

/// Named generators, as used on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstructionKind {
    LogSpiral,
    Helix,
    Conchospiral,
    Cone,
    SpindleTorus,
    Cones,
    Sunshine,
    Random,
}

impl ConstructionKind {
    pub const ALL: [ConstructionKind; 8] = [
        ConstructionKind::LogSpiral,
        ConstructionKind::Helix,
        ConstructionKind::Conchospiral,
        ConstructionKind::Cone,
        ConstructionKind::SpindleTorus,
        ConstructionKind::Cones,
        ConstructionKind::Sunshine,
        ConstructionKind::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::LogSpiral => "log_spiral",
            ConstructionKind::Helix => "helix",
            ConstructionKind::Conchospiral => "conchospiral",
            ConstructionKind::Cone => "cone",
            ConstructionKind::SpindleTorus => "spindle_torus",
            ConstructionKind::Cones => "cones",
            ConstructionKind::Sunshine => "sunshine",
            ConstructionKind::Random => "random",
        }
    }

    /// Whether a total point count `n` is producible. Sunshine needs
    /// `n = m² + 1` and the cone intersection needs `n = 3s² + 2`, `s` odd.
    pub fn accepts_n(self, n: usize) -> bool {
        match self {
            ConstructionKind::Cones => cones_side(n).is_some(),
            ConstructionKind::Sunshine => {
                n >= 10 && {
                    let m = isqrt(n - 1);
                    m * m == n - 1
                }
            }
            ConstructionKind::Cone | ConstructionKind::SpindleTorus => n >= 4,
            _ => n >= 3,
        }
    }

    /// Generate with `params`, where `params.n` is the total point count.
    pub fn build(self, params: &ConstructionParams) -> Result<Built, GeomError> {
        let p = params;
        match self {
            ConstructionKind::LogSpiral => log_spiral(p.n, p.beta).map(Built::plain),
            ConstructionKind::Helix => cyl_helix(p.n).map(Built::plain),
            ConstructionKind::Conchospiral => conchospiral(p.n, p.beta).map(Built::plain),
            ConstructionKind::Cone => cone_config(p.n, p.alpha, p.seed),
            ConstructionKind::SpindleTorus => spindle_torus_config(p.n, p.alpha, p.seed),
            ConstructionKind::Cones => cones_construction(p.n, p.seed),
            ConstructionKind::Sunshine => {
                if !self.accepts_n(p.n) {
                    return Err(GeomError::InvalidParameter(alloc::format!(
                        "sunshine needs n = m² + 1 with m ≥ 3, got {}",
                        p.n
                    )));
                }
                sunshine(isqrt(p.n - 1), p.exponent_base)
            }
            ConstructionKind::Random => random_general_position(p.n, p.dim, p.seed).map(Built::plain),
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionKind {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConstructionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| GeomError::InvalidParameter(alloc::format!("unknown construction `{s}`")))
    }
}

fn isqrt(n: usize) -> usize {
    let mut r = Float::sqrt(n as f64) as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn need_n(n: usize, min: usize) -> Result<(), GeomError> {
    if n < min {
        return Err(GeomError::InvalidParameter(alloc::format!("need n ≥ {min}, got {n}")));
    }
    Ok(())
}

fn need_beta(beta: f64) -> Result<(), GeomError> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(GeomError::InvalidParameter(alloc::format!("beta must be positive, got {beta}")));
    }
    Ok(())
}

fn need_alpha(alpha: f64) -> Result<(), GeomError> {
    if !(alpha > 0.0 && alpha < PI) {
        return Err(GeomError::InvalidParameter(alloc::format!(
            "alpha must lie in (0, π), got {alpha}"
        )));
    }
    Ok(())
}

fn require_general_position(config: PointConfig, hint: &str) -> Result<PointConfig, GeomError> {
    let report = verify_general_position(&config, Tolerance::default());
    if report.is_general_position {
        Ok(config)
    } else {
        Err(GeomError::NotGeneralPosition {
            collinear: report.collinear_triples.len(),
            concyclic: report.concyclic_quadruples.len(),
            hint: String::from(hint),
        })
    }
}

/// Points `(e^{βj} cos βj, e^{βj} sin βj)` for `j = 1..=n`.
pub fn log_spiral(n: usize, beta: f64) -> Result<PointConfig, GeomError> {
    need_n(n, 3)?;
    need_beta(beta)?;
    let pts = (1..=n)
        .map(|j| {
            let t = beta * j as f64;
            let r = Float::exp(t);
            Vec3::new(r * Float::cos(t), r * Float::sin(t), 0.0)
        })
        .collect();
    let cfg = PointConfig::float(alloc::format!("log_spiral(n={n}, beta={beta})"), Dim::Two, pts)?;
    require_general_position(cfg, "try a smaller beta")
}

/// Points `(cos 2πj/n, sin 2πj/n, j/n)` for `j = 1..=n`.
pub fn cyl_helix(n: usize) -> Result<PointConfig, GeomError> {
    need_n(n, 3)?;
    let pts = (1..=n)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / n as f64;
            Vec3::new(Float::cos(t), Float::sin(t), j as f64 / n as f64)
        })
        .collect();
    PointConfig::float(alloc::format!("helix(n={n})"), Dim::Three, pts)
}

/// Points `(e^{βj} cos βj, e^{βj} sin βj, e^{βj})` for `j = 1..=n`.
pub fn conchospiral(n: usize, beta: f64) -> Result<PointConfig, GeomError> {
    need_n(n, 3)?;
    need_beta(beta)?;
    let pts = (1..=n)
        .map(|j| {
            let t = beta * j as f64;
            let r = Float::exp(t);
            Vec3::new(r * Float::cos(t), r * Float::sin(t), r)
        })
        .collect();
    let cfg = PointConfig::float(alloc::format!("conchospiral(n={n}, beta={beta})"), Dim::Three, pts)?;
    require_general_position(cfg, "try a smaller beta")
}

/// Adds `count` points drawn by `sample`, rejecting any that break general
/// position with the points already in `placed`.
struct Placer {
    rng: ChaCha8Rng,
    placed: Vec<Vec3<f64>>,
    retries: usize,
    tol: Tolerance,
}

impl Placer {
    fn new(seed: u64, fixed: Vec<Vec3<f64>>) -> Self {
        Placer {
            rng: ChaCha8Rng::seed_from_u64(seed),
            placed: fixed,
            retries: 0,
            tol: Tolerance::default(),
        }
    }

    fn place(&mut self, mut sample: impl FnMut(&mut ChaCha8Rng) -> Vec3<f64>) -> Result<(), GeomError> {
        loop {
            let cand = sample(&mut self.rng);
            match first_violation_with(&self.placed, &cand, self.tol) {
                None => {
                    self.placed.push(cand);
                    return Ok(());
                }
                Some(tuple) => {
                    self.retries += 1;
                    if self.retries > RETRY_BUDGET {
                        return Err(GeomError::RetriesExhausted {
                            retries: RETRY_BUDGET,
                            tuple,
                        });
                    }
                }
            }
        }
    }

    fn azimuth(rng: &mut ChaCha8Rng) -> f64 {
        rng.gen_range(0.0..2.0 * PI)
    }
}

/// `A = (0,0,1)`, `B = 0`, and `n − 2` points on the cone with vertex `B`, axis
/// `BA` and half-angle `alpha`, at radii `1, 3/2, (3/2)², …` from `B`.
///
/// Every angle `∠ABP` equals `alpha`.
pub fn cone_config(n: usize, alpha: f64, seed: u64) -> Result<Built, GeomError> {
    need_n(n, 4)?;
    need_alpha(alpha)?;
    let a = Vec3::new(0.0, 0.0, 1.0);
    let b = Vec3::new(0.0, 0.0, 0.0);
    let (sin_a, cos_a) = (Float::sin(alpha), Float::cos(alpha));
    let mut placer = Placer::new(seed, alloc::vec![a, b]);
    for k in 0..n - 2 {
        let rho = Float::powi(1.5, k as i32);
        placer.place(|rng| {
            let phi = Placer::azimuth(rng);
            Vec3::new(
                rho * sin_a * Float::cos(phi),
                rho * sin_a * Float::sin(phi),
                rho * cos_a,
            )
        })?;
    }
    let config = PointConfig::float(alloc::format!("cone(n={n}, alpha={alpha})"), Dim::Three, placer.placed)?;
    Ok(Built {
        config,
        a: Some(0),
        b: Some(1),
    })
}

/// `A = 0`, `B = (0,0,1)`, and `n − 2` points `P` with `∠APB = alpha`: the arc
/// through `A` and `B` subtending `alpha`, swept around the axis `AB`.
pub fn spindle_torus_config(n: usize, alpha: f64, seed: u64) -> Result<Built, GeomError> {
    need_n(n, 4)?;
    need_alpha(alpha)?;
    let a = Vec3::new(0.0, 0.0, 0.0);
    let b = Vec3::new(0.0, 0.0, 1.0);
    // Circle through A and B in the (ρ, z) half-plane: radius R, center
    // (R cos α, 1/2). The arc with ρ > 0 is t ∈ (−(π − α), π − α).
    let radius = 0.5 / Float::sin(alpha);
    let offset = radius * Float::cos(alpha);
    let half_arc = PI - alpha;
    let mut placer = Placer::new(seed, alloc::vec![a, b]);
    for _ in 0..n - 2 {
        placer.place(|rng| {
            let t = half_arc * rng.gen_range(-0.95..0.95);
            let phi = Placer::azimuth(rng);
            let rho = offset + radius * Float::cos(t);
            Vec3::new(rho * Float::cos(phi), rho * Float::sin(phi), 0.5 + radius * Float::sin(t))
        })?;
    }
    let config = PointConfig::float(
        alloc::format!("spindle_torus(n={n}, alpha={alpha})"),
        Dim::Three,
        placer.placed,
    )?;
    Ok(Built {
        config,
        a: Some(0),
        b: Some(1),
    })
}

/// `s` with `n = 3s² + 2` and `s` odd.
fn cones_side(n: usize) -> Option<usize> {
    if n < 5 || !(n - 2).is_multiple_of(3) {
        return None;
    }
    let sq = (n - 2) / 3;
    let s = isqrt(sq);
    (s * s == sq && s % 2 == 1).then_some(s)
}

fn nearest_cones_n(n: usize) -> usize {
    let mut best: usize = 5;
    let mut s: usize = 1;
    loop {
        let cand = 3 * s * s + 2;
        if cand.abs_diff(n) < best.abs_diff(n) {
            best = cand;
        }
        if cand > n {
            return best;
        }
        s += 2;
    }
}

/// The `s` cone half-angles, in arithmetic progression over `[5π/18, 7π/18]`.
pub fn cones_apertures(s: usize) -> Vec<f64> {
    let (lo, hi) = (5.0 * PI / 18.0, 7.0 * PI / 18.0);
    if s == 1 {
        return alloc::vec![PI / 3.0];
    }
    (0..s).map(|i| lo + (hi - lo) * i as f64 / (s - 1) as f64).collect()
}

/// `A = 0`, `B = (0,0,1)`, and three points on each circle where a cone from
/// `A` meets a cone from `B` (both with axis `AB`), for every pair of the
/// `s = √((n−2)/3)` apertures.
///
/// The angles with `A` and `B` in all roles take exactly `2s − 1` values.
pub fn cones_construction(n: usize, seed: u64) -> Result<Built, GeomError> {
    let s = cones_side(n).ok_or_else(|| {
        GeomError::InvalidParameter(alloc::format!(
            "(n − 2)/3 must be an odd perfect square; nearest valid n is {}",
            nearest_cones_n(n)
        ))
    })?;
    let apertures = cones_apertures(s);
    let a = Vec3::new(0.0, 0.0, 0.0);
    let b = Vec3::new(0.0, 0.0, 1.0);
    let mut placer = Placer::new(seed, alloc::vec![a, b]);
    for &from_a in &apertures {
        for &from_b in &apertures {
            let (ta, tb) = (Float::tan(from_a), Float::tan(from_b));
            let z = tb / (ta + tb);
            let r = z * ta;
            for _ in 0..3 {
                placer.place(|rng| {
                    let phi = Placer::azimuth(rng);
                    Vec3::new(r * Float::cos(phi), r * Float::sin(phi), z)
                })?;
            }
        }
    }
    let config = PointConfig::float(alloc::format!("cones(n={n})"), Dim::Three, placer.placed)?;
    Ok(Built {
        config,
        a: Some(0),
        b: Some(1),
    })
}

/// The origin (index 0) plus `m²` points `(base^a, 2πc/m)` in polar
/// coordinates, `a, c ∈ 0..m`, ordered by ray then radius.
///
/// Not in general position: each ray carries `m` points plus the origin.
pub fn sunshine(m: usize, exponent_base: f64) -> Result<Built, GeomError> {
    if m < 3 {
        return Err(GeomError::InvalidParameter(alloc::format!("sunshine needs m ≥ 3, got {m}")));
    }
    if !(exponent_base > 1.0 && exponent_base.is_finite()) {
        return Err(GeomError::InvalidParameter(alloc::format!(
            "exponent base must exceed 1, got {exponent_base}"
        )));
    }
    let mut pts = alloc::vec![Vec3::new(0.0, 0.0, 0.0)];
    for c in 0..m {
        let theta = 2.0 * PI * c as f64 / m as f64;
        let (sin_t, cos_t) = (Float::sin(theta), Float::cos(theta));
        for a in 0..m {
            let r = Float::powi(exponent_base, a as i32);
            pts.push(Vec3::new(r * cos_t, r * sin_t, 0.0));
        }
    }
    let config = PointConfig::float(
        alloc::format!("sunshine(m={m}, base={exponent_base})"),
        Dim::Two,
        pts,
    )?;
    Ok(Built {
        config,
        a: Some(0),
        b: None,
    })
}

const RANDOM_DENOM_BITS: u32 = 8;
const RANDOM_NUMER_MAX: i64 = 1 << 12;

/// `n` random rational points (integers over `2^8`) in general position,
/// built by rejection against the exact predicates.
pub fn random_general_position(n: usize, dim: Dim, seed: u64) -> Result<PointConfig, GeomError> {
    need_n(n, 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // placed on the integer grid, then scaled; both predicates are scale invariant
    let mut placed: Vec<[i128; 3]> = Vec::with_capacity(n);
    while placed.len() < n {
        let mut coord = || i128::from(rng.gen_range(-RANDOM_NUMER_MAX..=RANDOM_NUMER_MAX));
        let x = coord();
        let y = coord();
        let z = match dim {
            Dim::Two => 0,
            Dim::Three => coord(),
        };
        if grid::fits(&placed, [x, y, z]) {
            placed.push([x, y, z]);
        }
    }
    let denom = BigInt::from(1i64 << RANDOM_DENOM_BITS);
    let q = |v: i128| Rational::new(BigInt::from(v), denom.clone());
    let placed = placed.iter().map(|&[x, y, z]| Vec3::new(q(x), q(y), q(z))).collect();
    PointConfig::exact(
        alloc::format!("random(n={n}, dim={}, seed={seed})", dim.get()),
        dim,
        placed,
    )
}

/// Exact general-position checks on small integer points. Coordinates up to
/// `2^12` in magnitude keep every intermediate below `2^86`.
mod grid {
    type P = [i128; 3];

    fn sub(a: P, b: P) -> P {
        [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
    }

    fn dot(a: P, b: P) -> i128 {
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    fn cross(a: P, b: P) -> P {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    }

    fn scale(a: P, k: i128) -> P {
        [a[0] * k, a[1] * k, a[2] * k]
    }

    fn collinear(p: P, q: P, r: P) -> bool {
        cross(sub(q, p), sub(r, p)) == [0; 3]
    }

    fn concyclic(p: P, q: P, r: P, s: P) -> bool {
        let (a, b, c) = (sub(q, p), sub(r, p), sub(s, p));
        let axb = cross(a, b);
        if dot(axb, c) != 0 {
            return false;
        }
        let num = cross(sub(scale(b, dot(a, a)), scale(a, dot(b, b))), axb);
        dot(c, c) * dot(axb, axb) == dot(c, num)
    }

    /// Whether `cand` keeps `placed` free of repeated, collinear and
    /// concyclic tuples, given that `placed` already is.
    pub(super) fn fits(placed: &[P], cand: P) -> bool {
        let m = placed.len();
        if placed.contains(&cand) {
            return false;
        }
        for i in 0..m {
            for j in i + 1..m {
                if collinear(placed[i], placed[j], cand) {
                    return false;
                }
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    if concyclic(placed[i], placed[j], placed[k], cand) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
