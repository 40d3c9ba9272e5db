use alloc::vec::Vec;

use super::TripleClasses;
use crate::geom::PointConfig;

/// Indices `A` such that every angle class has a realizing triple containing
/// `A` in some position.
pub fn find_self_similar_points(config: &PointConfig, eps: f64) -> Vec<usize> {
    let classes = TripleClasses::scan(config, eps);
    self_similar_points(&classes)
}

/// Self-similar points from an existing scan.
pub fn self_similar_points(classes: &TripleClasses) -> Vec<usize> {
    let n = classes.len();
    let m = classes.num_classes();
    if m == 0 {
        return Vec::new();
    }
    // touched[p * m + c]: point p appears in some triple of class c
    let mut touched = alloc::vec![false; n * m];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if let Some(id) = classes.class_of(a, b, c) {
                    let id = id as usize;
                    touched[a * m + id] = true;
                    touched[b * m + id] = true;
                    touched[c * m + id] = true;
                }
            }
        }
    }
    (0..n)
        .filter(|&p| touched[p * m..(p + 1) * m].iter().all(|&t| t))
        .collect()
}
