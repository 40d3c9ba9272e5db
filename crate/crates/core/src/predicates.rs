//! Collinearity, concyclicity and general-position scans.
//!
//! Exact configurations are tested exactly. Float configurations use relative
//! tolerances: a quantity is treated as zero when it is within `eps` times the
//! natural scale of the vectors that produced it.

use alloc::vec::Vec;

use crate::error::GeomError;
use crate::geom::{Coord, Mode, PointConfig, Points, Vec3};
use crate::par::map_range;
use crate::DEFAULT_EPS;

/// Float tolerances for the predicates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Relative threshold for collinearity (cross product vs operand norms).
    pub lin: f64,
    /// Relative threshold for coplanarity and the circumcircle distance test.
    pub circ: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            lin: DEFAULT_EPS,
            circ: DEFAULT_EPS,
        }
    }
}

impl Tolerance {
    pub fn uniform(eps: f64) -> Self {
        Tolerance { lin: eps, circ: eps }
    }
}

/// Every general-position violation found in a configuration.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ViolationReport {
    /// Ascending index triples lying on a line.
    pub collinear_triples: Vec<[usize; 3]>,
    /// Ascending index quadruples lying on a circle.
    pub concyclic_quadruples: Vec<[usize; 4]>,
    pub is_general_position: bool,
}

impl ViolationReport {
    fn new(collinear_triples: Vec<[usize; 3]>, concyclic_quadruples: Vec<[usize; 4]>) -> Self {
        let is_general_position = collinear_triples.is_empty() && concyclic_quadruples.is_empty();
        ViolationReport {
            collinear_triples,
            concyclic_quadruples,
            is_general_position,
        }
    }
}

fn check_distinct<T: Coord>(pts: &[&Vec3<T>]) -> Result<(), GeomError> {
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[i].coincides(pts[j]) {
                return Err(GeomError::Coincident(i, j));
            }
        }
    }
    Ok(())
}

pub(crate) fn collinear_unchecked<T: Coord>(p: &Vec3<T>, q: &Vec3<T>, r: &Vec3<T>, eps: f64) -> bool {
    let u = q.sub(p);
    let v = r.sub(p);
    let c = u.cross(&v);
    let scale = u.norm_sq().mul(&v.norm_sq());
    T::negligible(&c.x, &scale, eps) && T::negligible(&c.y, &scale, eps) && T::negligible(&c.z, &scale, eps)
}

/// Circumcenter of a non-degenerate triangle, in its own plane.
pub fn circumcenter<T: Coord>(p: &Vec3<T>, q: &Vec3<T>, r: &Vec3<T>) -> Option<Vec3<T>> {
    let a = q.sub(p);
    let b = r.sub(p);
    let axb = a.cross(&b);
    let den = axb.norm_sq();
    if den == T::zero() {
        return None;
    }
    // p + ((|a|² b − |b|² a) × (a × b)) / (2 |a × b|²)
    let num = b.scale(&a.norm_sq()).sub(&a.scale(&b.norm_sq())).cross(&axb);
    let two_den = den.add(&den);
    Some(Vec3::new(
        p.x.add(&num.x.div(&two_den)),
        p.y.add(&num.y.div(&two_den)),
        p.z.add(&num.z.div(&two_den)),
    ))
}

pub(crate) fn concyclic_unchecked<T: Coord>(
    p: &Vec3<T>,
    q: &Vec3<T>,
    r: &Vec3<T>,
    s: &Vec3<T>,
    eps: f64,
) -> Result<bool, GeomError> {
    let a = q.sub(p);
    let b = r.sub(p);
    let c = s.sub(p);
    if T::mode() == Mode::Exact {
        // |c − (O − p)|² = |O − p|² with the circumcenter offset expanded
        let axb = a.cross(&b);
        let den = axb.norm_sq();
        if den == T::zero() {
            return Err(GeomError::CollinearBase);
        }
        if a.triple(&b, &c) != T::zero() {
            return Ok(false);
        }
        let num = b.scale(&a.norm_sq()).sub(&a.scale(&b.norm_sq())).cross(&axb);
        return Ok(c.norm_sq().mul(&den) == c.dot(&num));
    }
    let det = a.triple(&b, &c);
    let scale = a.norm_sq().mul(&b.norm_sq()).mul(&c.norm_sq());
    let center = circumcenter(p, q, r).ok_or(GeomError::CollinearBase)?;
    if !T::negligible(&det, &scale, eps) {
        return Ok(false);
    }
    let r_sq = p.sub(&center).norm_sq();
    let s_sq = s.sub(&center).norm_sq();
    let diff = s_sq.sub(&r_sq);
    Ok(T::negligible(&diff, &r_sq.mul(&r_sq), eps))
}

/// Whether three distinct points lie on one line.
pub fn collinear<T: Coord>(p: &Vec3<T>, q: &Vec3<T>, r: &Vec3<T>, eps: f64) -> Result<bool, GeomError> {
    check_distinct(&[p, q, r])?;
    Ok(collinear_unchecked(p, q, r, eps))
}

/// Whether four distinct points lie on one circle: coplanar, and `s` on the
/// circumcircle of `p, q, r`. Errors when `p, q, r` are collinear.
pub fn concyclic<T: Coord>(
    p: &Vec3<T>,
    q: &Vec3<T>,
    r: &Vec3<T>,
    s: &Vec3<T>,
    tol: Tolerance,
) -> Result<bool, GeomError> {
    check_distinct(&[p, q, r, s])?;
    if collinear_unchecked(p, q, r, tol.lin) {
        return Err(GeomError::CollinearBase);
    }
    concyclic_unchecked(p, q, r, s, tol.circ)
}

/// Dense `n³` table of collinear triples (all orderings set).
struct CollinearTable {
    n: usize,
    bits: Vec<bool>,
}

impl CollinearTable {
    fn get(&self, i: usize, j: usize, k: usize) -> bool {
        self.bits[(i * self.n + j) * self.n + k]
    }
}

fn scan<T: Coord>(pts: &[Vec3<T>], tol: Tolerance) -> ViolationReport {
    let n = pts.len();
    let per_i: Vec<Vec<[usize; 3]>> = map_range(n, |i| {
        let mut out = Vec::new();
        for j in i + 1..n {
            for k in j + 1..n {
                if collinear_unchecked(&pts[i], &pts[j], &pts[k], tol.lin) {
                    out.push([i, j, k]);
                }
            }
        }
        out
    });
    let collinear: Vec<[usize; 3]> = per_i.into_iter().flatten().collect();

    let mut table = CollinearTable {
        n,
        bits: alloc::vec![false; n * n * n],
    };
    for &[i, j, k] in &collinear {
        for (a, b, c) in [(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
            table.bits[(a * n + b) * n + c] = true;
        }
    }

    // A circle meets a line in at most two points, so quadruples containing a
    // collinear triple are never concyclic and are reported only as lines.
    let per_i: Vec<Vec<[usize; 4]>> = map_range(n, |i| {
        let mut out = Vec::new();
        for j in i + 1..n {
            for k in j + 1..n {
                if table.get(i, j, k) {
                    continue;
                }
                for l in k + 1..n {
                    if table.get(i, j, l) || table.get(i, k, l) || table.get(j, k, l) {
                        continue;
                    }
                    if concyclic_unchecked(&pts[i], &pts[j], &pts[k], &pts[l], tol.circ).unwrap_or(false) {
                        out.push([i, j, k, l]);
                    }
                }
            }
        }
        out
    });
    let concyclic = per_i.into_iter().flatten().collect();
    ViolationReport::new(collinear, concyclic)
}

/// Exhaustive collinearity (`O(n³)`) and concyclicity (`O(n⁴)`) scan.
///
/// Every violating tuple is listed, in ascending lexicographic order.
pub fn verify_general_position(config: &PointConfig, tol: Tolerance) -> ViolationReport {
    match config.points() {
        Points::Exact(p) => scan(p, tol),
        Points::Float(p) => scan(p, tol),
    }
}

/// First violation created by adding `cand` to a set already in general
/// position, as indices into `existing` (the candidate itself is `existing.len()`).
pub(crate) fn first_violation_with<T: Coord>(
    existing: &[Vec3<T>],
    cand: &Vec3<T>,
    tol: Tolerance,
) -> Option<Vec<usize>> {
    let m = existing.len();
    for (i, p) in existing.iter().enumerate() {
        if p.coincides(cand) {
            return Some(alloc::vec![i, m]);
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            if collinear_unchecked(&existing[i], &existing[j], cand, tol.lin) {
                return Some(alloc::vec![i, j, m]);
            }
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let (p, q, r) = (&existing[i], &existing[j], &existing[k]);
                if collinear_unchecked(p, q, r, tol.lin) {
                    continue;
                }
                if concyclic_unchecked(p, q, r, cand, tol.circ).unwrap_or(false) {
                    return Some(alloc::vec![i, j, k, m]);
                }
            }
        }
    }
    None
}
