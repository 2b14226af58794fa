//! Seeded random rationals, parameter points and small polytopes.

use rand::Rng;

use crate::ratgeom::{QVec, Rat};
use crate::threefold::{FamilyKind, ModelFamily};

/// `k / den` for a uniform integer `k` with `lo ≤ k/den ≤ hi`.
pub fn rat_in<R: Rng>(rng: &mut R, lo: i64, hi: i64, den: i64) -> Rat {
    Rat::new(rng.random_range(lo * den..=hi * den), den)
}

/// A uniform point of `[lo, hi]` on the grid of step `(hi − lo) / steps`.
pub fn rat_between<R: Rng>(rng: &mut R, lo: &Rat, hi: &Rat, steps: i64) -> Rat {
    let k = rng.random_range(0..=steps);
    lo + (hi - lo) * Rat::new(k, steps)
}

/// Strictly inside `(lo, hi)`.
pub fn rat_inside<R: Rng>(rng: &mut R, lo: &Rat, hi: &Rat, steps: i64) -> Rat {
    let k = rng.random_range(1..steps);
    lo + (hi - lo) * Rat::new(k, steps)
}

fn positive<R: Rng>(rng: &mut R, max: i64, den: i64) -> Rat {
    Rat::new(rng.random_range(1..=max * den), den)
}

/// A random valid member of the family.
pub fn family<R: Rng>(rng: &mut R, kind: FamilyKind) -> ModelFamily {
    let made = match kind {
        FamilyKind::CxP2 => ModelFamily::cxp2(positive(rng, 4, 6), positive(rng, 4, 6)),
        FamilyKind::Ccc => {
            let mut d = [positive(rng, 4, 4), positive(rng, 4, 4), positive(rng, 4, 4)];
            d.sort_by(|a, b| b.cmp(a));
            let [d1, d2, d3] = d;
            ModelFamily::ccc(d1, d2, d3)
        }
        FamilyKind::CxJac => ModelFamily::cxjac(Rat::new(rng.random_range(1..30), 30)),
    };
    made.expect("sampled parameters satisfy the family invariants")
}

/// Random points with small integer coordinates in dimension `dim`.
pub fn int_points<R: Rng>(rng: &mut R, dim: usize, count: usize, range: i64) -> Vec<QVec> {
    (0..count)
        .map(|_| QVec::new((0..dim).map(|_| Rat::int(rng.random_range(-range..=range))).collect()))
        .collect()
}
