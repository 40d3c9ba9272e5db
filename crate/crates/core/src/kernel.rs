//! Angle identity.
//!
//! An angle `∠abc` is determined by `cos ∠abc = (a−b)·(c−b) / (|a−b| |c−b|)`.
//! For rational points the cosine itself may be irrational, but the pair
//! `(sign of (a−b)·(c−b), cos²)` is rational and determines the angle in
//! `[0, π]` uniquely. For float points cosines are grouped by single-linkage
//! clustering.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{Float, Zero};

use crate::error::GeomError;
use crate::geom::{Coord, Rational, Vec3};

/// Exact angle identity: sign of the cosine and the reduced rational `cos²`.
///
/// Ordered by increasing cosine (decreasing angle).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactAngle {
    pub cos_sign: i8,
    pub cos_sq: Rational,
}

impl Ord for ExactAngle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cos_sign.cmp(&other.cos_sign).then_with(|| {
            if self.cos_sign < 0 {
                other.cos_sq.cmp(&self.cos_sq)
            } else {
                self.cos_sq.cmp(&other.cos_sq)
            }
        })
    }
}

impl PartialOrd for ExactAngle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl ExactAngle {
    /// Float approximation of the cosine.
    pub fn cosine(&self) -> f64 {
        use num_traits::ToPrimitive;
        let c = Float::sqrt(self.cos_sq.to_f64().unwrap_or(f64::NAN));
        f64::from(self.cos_sign) * c
    }
}

/// Identity of an angle class.
#[derive(Debug, Clone)]
pub enum AngleKey {
    Exact(ExactAngle),
    /// Class produced by clustering float cosines; `representative` is the
    /// smallest cosine in the class.
    Float { class_id: u32, representative: f64 },
}

impl AngleKey {
    pub fn cosine(&self) -> f64 {
        match self {
            AngleKey::Exact(e) => e.cosine(),
            AngleKey::Float { representative, .. } => *representative,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            AngleKey::Exact(_) => 0,
            AngleKey::Float { .. } => 1,
        }
    }
}

impl PartialEq for AngleKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for AngleKey {}

impl Ord for AngleKey {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (AngleKey::Exact(a), AngleKey::Exact(b)) => a.cmp(b),
            (
                AngleKey::Float {
                    class_id: a,
                    representative: ra,
                },
                AngleKey::Float {
                    class_id: b,
                    representative: rb,
                },
            ) => a.cmp(b).then_with(|| ra.total_cmp(rb)),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for AngleKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Diagnostics for one clustering run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterStats {
    pub eps: f64,
    pub num_classes: usize,
    /// Smallest gap between consecutive classes (`+∞` with fewer than two).
    pub min_gap_between_classes: f64,
    /// Largest `max − min` within one class.
    pub max_spread_within_class: f64,
}

impl ClusterStats {
    /// `min_gap / eps`; large values mean the threshold sits comfortably
    /// between roundoff and genuine differences.
    pub fn gap_ratio(&self) -> f64 {
        self.min_gap_between_classes / self.eps
    }
}

impl fmt::Display for ClusterStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "eps={:e} classes={} min_gap={:e} max_spread={:e} gap_ratio={:.3e}",
            self.eps,
            self.num_classes,
            self.min_gap_between_classes,
            self.max_spread_within_class,
            self.gap_ratio()
        )
    }
}

/// Cosine of `∠abc` for float points, clamped to `[−1, 1]`.
pub fn angle_cosine(a: &Vec3<f64>, b: &Vec3<f64>, c: &Vec3<f64>) -> Result<f64, GeomError> {
    let u = a.sub(b);
    let v = c.sub(b);
    let den = u.norm_sq() * v.norm_sq();
    if den == 0.0 {
        return Err(GeomError::DegenerateWindow);
    }
    Ok(cosine_of(&u, &v, den))
}

#[inline]
fn cosine_of(u: &Vec3<f64>, v: &Vec3<f64>, den: f64) -> f64 {
    (u.dot(v) / Float::sqrt(den)).clamp(-1.0, 1.0)
}

/// Cosine of `∠abc` for points already known to be window-distinct.
#[inline]
pub(crate) fn cosine_unchecked(a: &Vec3<f64>, b: &Vec3<f64>, c: &Vec3<f64>) -> f64 {
    let u = a.sub(b);
    let v = c.sub(b);
    cosine_of(&u, &v, u.norm_sq() * v.norm_sq())
}

/// Exact key of `∠abc`.
pub fn angle_key_exact(
    a: &Vec3<Rational>,
    b: &Vec3<Rational>,
    c: &Vec3<Rational>,
) -> Result<ExactAngle, GeomError> {
    let u = a.sub(b);
    let v = c.sub(b);
    if u.is_zero() || v.is_zero() {
        return Err(GeomError::DegenerateWindow);
    }
    Ok(exact_from_vectors(&u, &v))
}

pub(crate) fn exact_from_vectors(u: &Vec3<Rational>, v: &Vec3<Rational>) -> ExactAngle {
    let d = u.dot(v);
    let cos_sign = d.signum();
    let cos_sq = if d.is_zero() {
        <Rational as Zero>::zero()
    } else {
        &d * &d / (u.norm_sq() * v.norm_sq())
    };
    ExactAngle { cos_sign, cos_sq }
}

#[inline]
pub(crate) fn exact_unchecked(a: &Vec3<Rational>, b: &Vec3<Rational>, c: &Vec3<Rational>) -> ExactAngle {
    exact_from_vectors(&a.sub(b), &c.sub(b))
}

/// Result of [`cluster_angles`].
#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    /// Class id per input value, aligned with the input. Ids increase with
    /// the cosine.
    pub assignment: Vec<u32>,
    /// Smallest cosine of each class, indexed by class id.
    pub representatives: Vec<f64>,
    pub stats: ClusterStats,
}

/// Single-linkage clustering of sorted values: a new class starts wherever the
/// gap between consecutive sorted values exceeds `eps`.
///
/// Chaining is intentional; `stats.max_spread_within_class` shows when it
/// made a class wider than `eps`.
pub fn cluster_angles(cosines: &[f64], eps: f64) -> Clustering {
    let mut order: Vec<u32> = (0..cosines.len() as u32).collect();
    order.sort_unstable_by(|&a, &b| cosines[a as usize].total_cmp(&cosines[b as usize]));

    let mut assignment = alloc::vec![0u32; cosines.len()];
    let mut representatives = Vec::new();
    let mut min_gap = f64::INFINITY;
    let mut max_spread: f64 = 0.0;
    let mut class_start = f64::NAN;
    let mut prev = f64::NAN;
    for (rank, &idx) in order.iter().enumerate() {
        let value = cosines[idx as usize];
        if rank == 0 {
            representatives.push(value);
            class_start = value;
        } else {
            let gap = value - prev;
            if gap > eps {
                min_gap = min_gap.min(gap);
                max_spread = max_spread.max(prev - class_start);
                representatives.push(value);
                class_start = value;
            }
        }
        assignment[idx as usize] = (representatives.len() - 1) as u32;
        prev = value;
    }
    if !cosines.is_empty() {
        max_spread = max_spread.max(prev - class_start);
    }
    Clustering {
        assignment,
        stats: ClusterStats {
            eps,
            num_classes: representatives.len(),
            min_gap_between_classes: min_gap,
            max_spread_within_class: max_spread,
        },
        representatives,
    }
}

/// `((a−b)·(c−b))² |d−e|² |f−e|² − ((d−e)·(f−e))² |a−b|² |c−b|²`.
///
/// Zero iff `cos²∠abc = cos²∠def`. Equal angles also need equal cosine signs.
pub fn angle_equal_poly<T: Coord>(
    a: &Vec3<T>,
    b: &Vec3<T>,
    c: &Vec3<T>,
    d: &Vec3<T>,
    e: &Vec3<T>,
    f: &Vec3<T>,
) -> Result<T, GeomError> {
    let u1 = a.sub(b);
    let v1 = c.sub(b);
    let u2 = d.sub(e);
    let v2 = f.sub(e);
    if u1.is_zero() || v1.is_zero() || u2.is_zero() || v2.is_zero() {
        return Err(GeomError::DegenerateWindow);
    }
    let d1 = u1.dot(&v1);
    let d2 = u2.dot(&v2);
    let left = d1.mul(&d1).mul(&u2.norm_sq()).mul(&v2.norm_sq());
    let right = d2.mul(&d2).mul(&u1.norm_sq()).mul(&v1.norm_sq());
    Ok(left.sub(&right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn v(x: i64, y: i64, z: i64) -> Vec3<Rational> {
        Vec3::from_ints(x, y, z)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn cosine_examples() {
        let o = Vec3::new(0.0, 0.0, 0.0);
        let x = Vec3::new(1.0, 0.0, 0.0);
        assert_eq!(angle_cosine(&x, &o, &Vec3::new(0.0, 1.0, 0.0)).unwrap(), 0.0);
        let c45 = angle_cosine(&x, &o, &Vec3::new(1.0, 1.0, 0.0)).unwrap();
        assert!((c45 - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        let c135 = angle_cosine(&x, &o, &Vec3::new(-1.0, 1.0, 0.0)).unwrap();
        assert!((c135 + core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(angle_cosine(&x, &x, &o), Err(GeomError::DegenerateWindow));
    }

    #[test]
    fn exact_key_examples() {
        let k = angle_key_exact(&v(0, 0, 0), &v(1, 0, 0), &v(0, 1, 0)).unwrap();
        assert_eq!(k, ExactAngle { cos_sign: 1, cos_sq: q(1, 2) });
        let k = angle_key_exact(&v(1, 0, 0), &v(0, 0, 0), &v(0, 1, 0)).unwrap();
        assert_eq!(k, ExactAngle { cos_sign: 0, cos_sq: q(0, 1) });
        let scaled = angle_key_exact(&v(0, 0, 0), &v(7, 0, 0), &v(0, 7, 0)).unwrap();
        assert_eq!(scaled, ExactAngle { cos_sign: 1, cos_sq: q(1, 2) });
        assert_eq!(
            angle_key_exact(&v(0, 0, 0), &v(0, 0, 0), &v(1, 0, 0)),
            Err(GeomError::DegenerateWindow)
        );
    }

    #[test]
    fn exact_keys_order_by_cosine() {
        let obtuse = ExactAngle { cos_sign: -1, cos_sq: q(1, 2) };
        let very_obtuse = ExactAngle { cos_sign: -1, cos_sq: q(9, 10) };
        let right = ExactAngle { cos_sign: 0, cos_sq: q(0, 1) };
        let acute = ExactAngle { cos_sign: 1, cos_sq: q(1, 4) };
        let mut keys = vec![acute.clone(), right.clone(), obtuse.clone(), very_obtuse.clone()];
        keys.sort();
        assert_eq!(keys, vec![very_obtuse, obtuse, right, acute]);
    }

    #[test]
    fn clustering_examples() {
        let c = cluster_angles(&[0.1, 0.1 + 1e-12, 0.5], 1e-9);
        assert_eq!(c.stats.num_classes, 2);
        assert_eq!(c.assignment, vec![0, 0, 1]);
        let c = cluster_angles(&[0.0], 1e-9);
        assert_eq!(c.stats.num_classes, 1);
        assert_eq!(c.stats.min_gap_between_classes, f64::INFINITY);
        let eps = 1e-9;
        let c = cluster_angles(&[0.0, eps * 0.9, eps * 1.8], eps);
        assert_eq!(c.stats.num_classes, 1);
        assert!(c.stats.max_spread_within_class > eps);
        let c = cluster_angles(&[], eps);
        assert!(c.assignment.is_empty());
        assert_eq!(c.stats.num_classes, 0);
    }

    #[test]
    fn poly_examples() {
        let (a, b, c) = (v(0, 0, 0), v(1, 0, 0), v(1, 1, 0));
        assert_eq!(angle_equal_poly(&a, &b, &c, &a, &b, &c).unwrap(), q(0, 1));
        // 90° rotation about z: (x, y, z) -> (-y, x, z)
        let rot = |p: &Vec3<Rational>| Vec3::new(-p.y.clone(), p.x.clone(), p.z.clone());
        let (a2, b2, c2) = (v(2, 1, 3), v(5, -1, 0), v(0, 4, 1));
        assert_eq!(
            angle_equal_poly(&a2, &b2, &c2, &rot(&a2), &rot(&b2), &rot(&c2)).unwrap(),
            q(0, 1)
        );
    }

    #[test]
    fn poly_separates_45_from_90() {
        // Oracle: the exact keys disagree.
        let k45 = angle_key_exact(&v(0, 0, 0), &v(1, 0, 0), &v(0, 1, 0)).unwrap();
        let k90 = angle_key_exact(&v(1, 0, 0), &v(0, 0, 0), &v(0, 1, 0)).unwrap();
        assert_ne!(k45, k90);
        // Hand value: d1 = 1, |u1|²|v1|² = 1·2; d2 = 0, so poly = 1 · 1 · 1 − 0 = 1.
        let p = angle_equal_poly(&v(0, 0, 0), &v(1, 0, 0), &v(0, 1, 0), &v(1, 0, 0), &v(0, 0, 0), &v(0, 1, 0))
            .unwrap();
        assert_eq!(p, q(1, 1));
    }

    fn small() -> impl Strategy<Value = i64> {
        -20i64..20
    }

    fn pt() -> impl Strategy<Value = Vec3<Rational>> {
        (small(), small(), small(), 1i64..5).prop_map(|(x, y, z, d)| {
            Vec3::new(q(x, d), q(y, d), q(z, d))
        })
    }

    /// Rational rotations: permutations with sign flips, and the 3-4-5 rotation
    /// about the z axis.
    fn rotate(p: &Vec3<Rational>, which: u8) -> Vec3<Rational> {
        match which % 3 {
            0 => Vec3::new(p.y.clone(), -p.z.clone(), p.x.clone()),
            1 => Vec3::new(
                q(3, 5) * &p.x - q(4, 5) * &p.y,
                q(4, 5) * &p.x + q(3, 5) * &p.y,
                p.z.clone(),
            ),
            _ => Vec3::new(-p.x.clone(), p.z.clone(), p.y.clone()),
        }
    }

    proptest! {
        #[test]
        fn exact_key_invariances(a in pt(), b in pt(), c in pt(), t in pt(), s in 1i64..9, w in 0u8..3) {
            prop_assume!(a != b && c != b);
            let k = angle_key_exact(&a, &b, &c).unwrap();
            prop_assert_eq!(&k, &angle_key_exact(&c, &b, &a).unwrap());
            let tr = |p: &Vec3<Rational>| p.add(&t);
            prop_assert_eq!(&k, &angle_key_exact(&tr(&a), &tr(&b), &tr(&c)).unwrap());
            let sc = |p: &Vec3<Rational>| p.sub(&t).scale(&q(s, 3)).add(&t);
            prop_assert_eq!(&k, &angle_key_exact(&sc(&a), &sc(&b), &sc(&c)).unwrap());
            prop_assert_eq!(&k, &angle_key_exact(&rotate(&a, w), &rotate(&b, w), &rotate(&c, w)).unwrap());
            prop_assert!(k.cos_sq >= q(0, 1) && k.cos_sq <= q(1, 1));
            prop_assert_eq!(k.cos_sign == 0, k.cos_sq == q(0, 1));
        }

        #[test]
        fn float_cosine_matches_exact_key(a in pt(), b in pt(), c in pt()) {
            prop_assume!(a != b && c != b);
            let k = angle_key_exact(&a, &b, &c).unwrap();
            let cos = angle_cosine(&a.to_f64(), &b.to_f64(), &c.to_f64()).unwrap();
            prop_assert!((-1.0..=1.0).contains(&cos));
            use num_traits::ToPrimitive;
            prop_assert!((cos * cos - k.cos_sq.to_f64().unwrap()).abs() <= 1e-12);
        }

        #[test]
        fn clustering_gaps_and_order_independence(
            mut values in proptest::collection::vec(-1.0f64..1.0, 0..60),
            eps in 1e-4f64..5e-2,
            seed in any::<u64>(),
        ) {
            let c = cluster_angles(&values, eps);
            let mut pairs: Vec<(f64, u32)> = values.iter().copied().zip(c.assignment.iter().copied()).collect();
            pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
            for w in pairs.windows(2) {
                let gap = w[1].0 - w[0].0;
                if w[0].1 == w[1].1 { prop_assert!(gap <= eps); } else { prop_assert!(gap > eps); }
            }
            if c.stats.num_classes > 1 {
                prop_assert!(c.stats.min_gap_between_classes > eps);
            }
            // deterministic shuffle
            let mut state = seed | 1;
            for i in (1..values.len()).rev() {
                state ^= state << 13; state ^= state >> 7; state ^= state << 17;
                values.swap(i, (state % (i as u64 + 1)) as usize);
            }
            prop_assert_eq!(cluster_angles(&values, eps).stats.num_classes, c.stats.num_classes);
        }
    }
}
