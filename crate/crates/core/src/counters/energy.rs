use num_bigint::BigUint;

use super::AngleHistogram;
use crate::error::GeomError;
use crate::geom::Rational;

/// Angle energy `Σ_α N_α²`: the number of pairs of ordered triples with equal
/// angles.
pub fn energy(hist: &AngleHistogram) -> BigUint {
    hist.counts()
        .map(|c| {
            let c = BigUint::from(c);
            &c * &c
        })
        .sum()
}

/// Cauchy–Schwarz lower bound on the number of classes,
/// `(Σ N_α)² / Σ N_α²`, and whether the histogram meets it.
pub fn cauchy_schwarz_check(hist: &AngleHistogram) -> Result<(Rational, bool), GeomError> {
    if hist.num_classes() == 0 {
        return Err(GeomError::EmptyHistogram);
    }
    let total = BigUint::from(hist.total_triples);
    let numer = &total * &total;
    let bound = Rational::new(numer.into(), energy(hist).into());
    let classes = Rational::from_integer(hist.num_classes().into());
    let holds = classes >= bound;
    Ok((bound, holds))
}
