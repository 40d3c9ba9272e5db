use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::TripleClasses;
use crate::error::GeomError;
use crate::geom::PointConfig;
use crate::kernel::AngleKey;

/// Which point tuples count as chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChainPolicy {
    /// Every consecutive window `(x_i, x_{i+1}, x_{i+2})` is three distinct
    /// points; repeats further apart are allowed.
    #[default]
    WindowDistinct,
    /// All `k + 2` points distinct.
    AllDistinct,
}

/// The angle type `(α_1, …, α_k)` of a chain.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ChainKey {
    pub angles: Vec<AngleKey>,
}

/// Distinct class-id sequences realized by `k`-chains.
fn chain_ids(classes: &TripleClasses, k: usize, policy: ChainPolicy) -> BTreeSet<Vec<u32>> {
    let n = classes.len();
    match policy {
        ChainPolicy::WindowDistinct => {
            // State: (angles so far, last two points). Chains that agree on the
            // state extend identically, so states are deduplicated per step.
            let mut states: BTreeSet<(Vec<u32>, u32, u32)> = BTreeSet::new();
            for a in 0..n {
                for b in (0..n).filter(|&b| b != a) {
                    states.insert((Vec::new(), a as u32, b as u32));
                }
            }
            for _ in 0..k {
                let mut next = BTreeSet::new();
                for (prefix, a, b) in &states {
                    let (a, b) = (*a as usize, *b as usize);
                    for c in (0..n).filter(|&c| c != a && c != b) {
                        let mut p = prefix.clone();
                        p.push(classes.class_of(a, b, c).expect("distinct window"));
                        next.insert((p, b as u32, c as u32));
                    }
                }
                states = next;
            }
            states.into_iter().map(|(p, _, _)| p).collect()
        }
        ChainPolicy::AllDistinct => {
            let mut out = BTreeSet::new();
            if k + 2 > n {
                return out;
            }
            let mut path = Vec::with_capacity(k + 2);
            let mut used = alloc::vec![false; n];
            let mut angles = Vec::with_capacity(k);
            extend_distinct(classes, k + 2, &mut path, &mut used, &mut angles, &mut out);
            out
        }
    }
}

fn extend_distinct(
    classes: &TripleClasses,
    len: usize,
    path: &mut Vec<usize>,
    used: &mut [bool],
    angles: &mut Vec<u32>,
    out: &mut BTreeSet<Vec<u32>>,
) {
    if path.len() == len {
        out.insert(angles.clone());
        return;
    }
    for x in 0..used.len() {
        if used[x] {
            continue;
        }
        let pushed = if path.len() >= 2 {
            let (a, b) = (path[path.len() - 2], path[path.len() - 1]);
            angles.push(classes.class_of(a, b, x).expect("distinct window"));
            true
        } else {
            false
        };
        used[x] = true;
        path.push(x);
        extend_distinct(classes, len, path, used, angles, out);
        path.pop();
        used[x] = false;
        if pushed {
            angles.pop();
        }
    }
}

/// Distinct chain types over precomputed triple classes.
pub fn chain_keys(classes: &TripleClasses, k: usize, policy: ChainPolicy) -> Result<Vec<ChainKey>, GeomError> {
    if k < 1 {
        return Err(GeomError::InvalidParameter("chain length k must be at least 1".into()));
    }
    let keys = classes.keys();
    Ok(chain_ids(classes, k, policy)
        .into_iter()
        .map(|ids| ChainKey {
            angles: ids.into_iter().map(|id| keys[id as usize].clone()).collect(),
        })
        .collect())
}

/// Number of distinct `k`-chain types.
///
/// Float configurations use one global clustering of all window cosines, so
/// `k = 1` always agrees with the distinct-angle count.
pub fn count_chains(config: &PointConfig, k: usize, eps: f64, policy: ChainPolicy) -> Result<usize, GeomError> {
    if k < 1 {
        return Err(GeomError::InvalidParameter("chain length k must be at least 1".into()));
    }
    let classes = TripleClasses::scan(config, eps);
    Ok(chain_ids(&classes, k, policy).len())
}
