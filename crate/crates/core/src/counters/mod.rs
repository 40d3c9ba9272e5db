//! Exhaustive counting over ordered triples and chains.
//!
//! A full scan visits every ordered triple `(a, b, c)` of distinct indices and
//! classifies `∠abc`. Exact configurations are keyed exactly. Float
//! configurations gather every cosine first and cluster once, so class ids do
//! not depend on how the scan was split across workers.

mod chains;
mod energy;
mod pinned;
mod selfsim;
mod sphere;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::geom::{PointConfig, Points, Rational, Vec3};
use crate::kernel::{self, AngleKey, ClusterStats, ExactAngle};
use crate::par::map_range;

pub use chains::{chain_keys, count_chains, ChainKey, ChainPolicy};
pub use energy::{cauchy_schwarz_check, energy};
pub use pinned::{count_pinned, count_pinned_with_stats, PinSpec};
pub use selfsim::{find_self_similar_points, self_similar_points};
pub use sphere::pinned_center_via_sphere;

/// Coordinate types that can key angles.
pub(crate) trait AngleCoord: Clone + Send + Sync {
    type Raw: Send + Sync + Clone;
    /// Angle datum of a window already known to be non-degenerate.
    fn raw(a: &Vec3<Self>, b: &Vec3<Self>, c: &Vec3<Self>) -> Self::Raw;
    fn classify(raws: Vec<Self::Raw>, eps: f64) -> Classes;
}

/// Class assignment for a list of angle data.
pub(crate) struct Classes {
    pub ids: Vec<u32>,
    pub keys: Vec<AngleKey>,
    pub stats: Option<ClusterStats>,
}

impl AngleCoord for Rational {
    type Raw = ExactAngle;

    fn raw(a: &Vec3<Self>, b: &Vec3<Self>, c: &Vec3<Self>) -> ExactAngle {
        kernel::exact_unchecked(a, b, c)
    }

    fn classify(raws: Vec<ExactAngle>, _eps: f64) -> Classes {
        let mut uniq = raws.clone();
        uniq.sort_unstable();
        uniq.dedup();
        let ids = raws
            .iter()
            .map(|r| uniq.binary_search(r).expect("key present") as u32)
            .collect();
        Classes {
            ids,
            keys: uniq.into_iter().map(AngleKey::Exact).collect(),
            stats: None,
        }
    }
}

impl AngleCoord for f64 {
    type Raw = f64;

    fn raw(a: &Vec3<f64>, b: &Vec3<f64>, c: &Vec3<f64>) -> f64 {
        kernel::cosine_unchecked(a, b, c)
    }

    fn classify(raws: Vec<f64>, eps: f64) -> Classes {
        let c = kernel::cluster_angles(&raws, eps);
        let keys = c
            .representatives
            .iter()
            .enumerate()
            .map(|(i, &r)| AngleKey::Float {
                class_id: i as u32,
                representative: r,
            })
            .collect();
        Classes {
            ids: c.assignment,
            keys,
            stats: Some(c.stats),
        }
    }
}

/// Largest grid coordinate for the integer fast path. Squared dot products and
/// norm products then stay below `2^88`.
const GRID_MAX: i64 = 1 << 20;

/// Exact configuration rescaled to integer coordinates by the common
/// denominator, when they stay within `GRID_MAX`. Angles are unchanged.
pub(crate) fn to_grid(pts: &[Vec3<Rational>]) -> Option<Vec<Vec3<i64>>> {
    let mut lcm = BigInt::from(1);
    for p in pts {
        for c in [&p.x, &p.y, &p.z] {
            lcm = lcm.lcm(c.denom());
        }
    }
    let conv = |c: &Rational| -> Option<i64> {
        let v = (c.numer() * (&lcm / c.denom())).to_i64()?;
        (v.abs() <= GRID_MAX).then_some(v)
    };
    pts.iter()
        .map(|p| {
            Some(Vec3 {
                x: conv(&p.x)?,
                y: conv(&p.y)?,
                z: conv(&p.z)?,
            })
        })
        .collect()
}

/// Sign of the cosine and `cos²` as a reduced fraction.
type GridAngle = (i8, u128, u128);

impl AngleCoord for i64 {
    type Raw = GridAngle;

    fn raw(a: &Vec3<i64>, b: &Vec3<i64>, c: &Vec3<i64>) -> GridAngle {
        let u = [(a.x - b.x) as i128, (a.y - b.y) as i128, (a.z - b.z) as i128];
        let v = [(c.x - b.x) as i128, (c.y - b.y) as i128, (c.z - b.z) as i128];
        let d = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
        if d == 0 {
            return (0, 0, 1);
        }
        let nu = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]) as u128;
        let nv = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]) as u128;
        let num = d.unsigned_abs() * d.unsigned_abs();
        let den = nu * nv;
        let g = num.gcd(&den);
        (d.signum() as i8, num / g, den / g)
    }

    fn classify(raws: Vec<GridAngle>, _eps: f64) -> Classes {
        let mut uniq = raws.clone();
        uniq.sort_unstable();
        uniq.dedup();
        // class ids follow the angle order, as in the rational path
        let mut order: Vec<(ExactAngle, usize)> = uniq
            .iter()
            .enumerate()
            .map(|(i, &(sign, num, den))| {
                let cos_sq = Rational::new_raw(BigInt::from(num), BigInt::from(den));
                (ExactAngle { cos_sign: sign, cos_sq }, i)
            })
            .collect();
        order.sort_unstable_by(|x, y| x.0.cmp(&y.0));
        let mut id_of = alloc::vec![0u32; uniq.len()];
        for (id, (_, i)) in order.iter().enumerate() {
            id_of[*i] = id as u32;
        }
        let ids = raws
            .iter()
            .map(|r| id_of[uniq.binary_search(r).expect("key present")])
            .collect();
        Classes {
            ids,
            keys: order.into_iter().map(|(k, _)| AngleKey::Exact(k)).collect(),
            stats: None,
        }
    }
}

/// Count of distinct classes among the angles of the given windows.
pub(crate) fn distinct_among<T: AngleCoord>(
    pts: &[Vec3<T>],
    windows: &[[usize; 3]],
    eps: f64,
) -> (usize, Option<ClusterStats>) {
    let raws = windows
        .iter()
        .map(|&[a, b, c]| T::raw(&pts[a], &pts[b], &pts[c]))
        .collect();
    let classes = T::classify(raws, eps);
    (classes.keys.len(), classes.stats)
}

const NO_CLASS: u32 = u32::MAX;

/// Class of every ordered window-distinct triple of a configuration.
#[derive(Debug, Clone)]
pub struct TripleClasses {
    n: usize,
    /// Dense `n³` table indexed `(a·n + b)·n + c`; `u32::MAX` off the valid set.
    ids: Vec<u32>,
    keys: Vec<AngleKey>,
    stats: Option<ClusterStats>,
}

fn scan<T: AngleCoord>(pts: &[Vec3<T>], eps: f64) -> TripleClasses {
    let n = pts.len();
    let per_a: Vec<Vec<T::Raw>> = map_range(n, |a| {
        let mut out = Vec::with_capacity(n.saturating_sub(1) * n.saturating_sub(2));
        for b in 0..n {
            if b == a {
                continue;
            }
            for c in 0..n {
                if c != a && c != b {
                    out.push(T::raw(&pts[a], &pts[b], &pts[c]));
                }
            }
        }
        out
    });
    let raws: Vec<T::Raw> = per_a.into_iter().flatten().collect();
    let classes = T::classify(raws, eps);

    let mut ids = alloc::vec![NO_CLASS; n * n * n];
    let mut next = classes.ids.iter();
    for a in 0..n {
        for b in 0..n {
            if b == a {
                continue;
            }
            for c in 0..n {
                if c != a && c != b {
                    ids[(a * n + b) * n + c] = *next.next().expect("one id per triple");
                }
            }
        }
    }
    TripleClasses {
        n,
        ids,
        keys: classes.keys,
        stats: classes.stats,
    }
}

impl TripleClasses {
    /// Classify every ordered triple of `config`. `eps` is ignored in exact mode.
    pub fn scan(config: &PointConfig, eps: f64) -> TripleClasses {
        match config.points() {
            Points::Exact(p) => match to_grid(p) {
                Some(g) => scan(&g, eps),
                None => scan(p, eps),
            },
            Points::Float(p) => scan(p, eps),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Class of `∠abc`, or `None` unless `a, b, c` are distinct and in range.
    pub fn class_of(&self, a: usize, b: usize, c: usize) -> Option<u32> {
        let n = self.n;
        if a >= n || b >= n || c >= n {
            return None;
        }
        match self.ids[(a * n + b) * n + c] {
            NO_CLASS => None,
            id => Some(id),
        }
    }

    pub fn keys(&self) -> &[AngleKey] {
        &self.keys
    }

    pub fn num_classes(&self) -> usize {
        self.keys.len()
    }

    /// Clustering diagnostics (float mode only).
    pub fn stats(&self) -> Option<ClusterStats> {
        self.stats
    }

    pub fn histogram(&self) -> AngleHistogram {
        let mut counts = alloc::vec![0u64; self.keys.len()];
        for &id in &self.ids {
            if id != NO_CLASS {
                counts[id as usize] += 1;
            }
        }
        let total_triples = counts.iter().sum();
        let entries = self.keys.iter().cloned().zip(counts).collect();
        AngleHistogram {
            entries,
            total_triples,
            stats: self.stats,
        }
    }
}

/// Number of ordered triples realizing each angle class.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleHistogram {
    pub entries: BTreeMap<AngleKey, u64>,
    pub total_triples: u64,
    pub stats: Option<ClusterStats>,
}

impl AngleHistogram {
    pub fn num_classes(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, key: &AngleKey) -> Option<u64> {
        self.entries.get(key).copied()
    }

    pub fn counts(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.values().copied()
    }
}

/// Histogram over all `n(n−1)(n−2)` ordered triples. Empty for `n < 3`.
pub fn angle_histogram(config: &PointConfig, eps: f64) -> AngleHistogram {
    TripleClasses::scan(config, eps).histogram()
}

/// Number of distinct angles in the configuration.
pub fn count_distinct_angles(config: &PointConfig, eps: f64) -> usize {
    TripleClasses::scan(config, eps).num_classes()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Dim;
    use crate::DEFAULT_EPS;
    use alloc::vec;

    pub(crate) fn exact_config(dim: Dim, pts: &[(i64, i64, i64)]) -> PointConfig {
        PointConfig::exact(
            "test",
            dim,
            pts.iter().map(|&(x, y, z)| Vec3::from_ints(x, y, z)).collect(),
        )
        .unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn right_isosceles_triangle_histogram() {
        let tri = exact_config(Dim::Two, &[(0, 0, 0), (1, 0, 0), (0, 1, 0)]);
        let h = angle_histogram(&tri, DEFAULT_EPS);
        assert_eq!(h.num_classes(), 2);
        assert_eq!(h.total_triples, 6);
        let right = AngleKey::Exact(ExactAngle { cos_sign: 0, cos_sq: q(0, 1) });
        let half = AngleKey::Exact(ExactAngle { cos_sign: 1, cos_sq: q(1, 2) });
        assert_eq!(h.get(&right), Some(2));
        assert_eq!(h.get(&half), Some(4));
        // float mode agrees
        let hf = angle_histogram(&tri.to_float(), DEFAULT_EPS);
        let mut counts: Vec<u64> = hf.counts().collect();
        counts.sort();
        assert_eq!(counts, vec![2, 4]);
    }

    #[test]
    fn square_has_two_classes() {
        let sq = exact_config(Dim::Two, &[(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)]);
        assert_eq!(count_distinct_angles(&sq, DEFAULT_EPS), 2);
        assert_eq!(count_distinct_angles(&sq.to_float(), DEFAULT_EPS), 2);
    }

    #[test]
    fn tiny_configs_have_no_angles() {
        let two = exact_config(Dim::Two, &[(0, 0, 0), (1, 0, 0)]);
        assert_eq!(count_distinct_angles(&two, DEFAULT_EPS), 0);
        let h = angle_histogram(&two, DEFAULT_EPS);
        assert_eq!(h.total_triples, 0);
        let empty = PointConfig::float("e", Dim::Three, vec![]).unwrap();
        assert_eq!(count_distinct_angles(&empty, DEFAULT_EPS), 0);
    }

    #[test]
    fn grid_path_matches_rational_path() {
        for (dim, seed) in [(Dim::Two, 1), (Dim::Three, 2)] {
            let c = crate::constructions::random_general_position(9, dim, seed).unwrap();
            let p = c.as_exact().unwrap();
            let g = to_grid(p).expect("small coordinates");
            let (fast, slow) = (scan(&g, DEFAULT_EPS), scan(p, DEFAULT_EPS));
            assert_eq!(fast.ids, slow.ids);
            assert_eq!(fast.keys, slow.keys);
        }
        // mixed denominators
        let mixed = PointConfig::exact(
            "mixed",
            Dim::Two,
            vec![
                Vec3::new(q(1, 3), q(0, 1), q(0, 1)),
                Vec3::new(q(5, 7), q(-2, 9), q(0, 1)),
                Vec3::new(q(-1, 2), q(3, 4), q(0, 1)),
                Vec3::new(q(2, 1), q(2, 5), q(0, 1)),
            ],
        )
        .unwrap();
        let p = mixed.as_exact().unwrap();
        let g = to_grid(p).unwrap();
        assert_eq!(scan(&g, DEFAULT_EPS).keys, scan(p, DEFAULT_EPS).keys);
    }

    #[test]
    fn large_coordinates_skip_the_grid() {
        let big = exact_config(Dim::Two, &[(0, 0, 0), (1 << 40, 0, 0), (0, 1, 0), (3, 7, 0)]);
        assert!(to_grid(big.as_exact().unwrap()).is_none());
        assert_eq!(
            count_distinct_angles(&big, DEFAULT_EPS),
            scan(big.as_exact().unwrap(), DEFAULT_EPS).num_classes()
        );
    }

    #[test]
    fn class_lookup() {
        let tri = exact_config(Dim::Two, &[(0, 0, 0), (1, 0, 0), (0, 1, 0)]);
        let t = TripleClasses::scan(&tri, DEFAULT_EPS);
        assert_eq!(t.class_of(1, 0, 2), t.class_of(2, 0, 1));
        assert_ne!(t.class_of(1, 0, 2), t.class_of(0, 1, 2));
        assert_eq!(t.class_of(0, 0, 1), None);
        assert_eq!(t.class_of(0, 1, 7), None);
    }
}
