//! Volume and decomposition properties across random members of each family.

use fzkit::acceptance::sample::{family, rat_between};
use fzkit::ratgeom::{q, qi, Rat};
use fzkit::threefold::{FamilyKind, ModelFamily, ThreefoldError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn members(seed: u64, per_family: usize) -> Vec<ModelFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    FamilyKind::ALL.iter().flat_map(|&k| (0..per_family).map(|_| family(&mut rng, k)).collect::<Vec<_>>()).collect()
}

#[test]
fn volume_vanishes_exactly_at_mu() {
    for f in members(1, 6) {
        let mu = f.mu().unwrap();
        assert_eq!(f.vol_ray(&mu).unwrap(), Rat::zero(), "{:?}", f.params);
        assert!(f.vol_ray(&(&mu * q(99, 100))).unwrap().is_positive(), "{:?}", f.params);
    }
}

#[test]
fn volume_at_zero_is_the_cube_of_the_polarization() {
    for f in members(2, 6) {
        let l = f.polarization().unwrap();
        let cube = f.tower().stages[0].triple(&l, &l, &l).unwrap();
        assert_eq!(f.vol_ray(&Rat::zero()).unwrap(), cube);
    }
}

#[test]
fn cubic_pieces_join_continuously_and_decrease() {
    for f in members(3, 4) {
        let pieces = f.volume_pieces().unwrap();
        for w in pieces.windows(2) {
            assert_eq!(w[0].t1, w[1].t0);
            assert_eq!(w[0].eval(&w[0].t1), w[1].eval(&w[1].t0), "{:?}", f.params);
        }
        for p in &pieces {
            assert!(p.eval(&p.t0) >= p.eval(&p.t1));
        }
    }
}

#[test]
fn negative_part_vanishes_at_zero_and_stays_effective() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for f in members(4, 5) {
        assert!(f.psigma(&Rat::zero()).unwrap().negative_coeffs.is_empty(), "{:?}", f.params);
        let mu = f.mu().unwrap();
        for _ in 0..8 {
            let t = rat_between(&mut rng, &Rat::zero(), &mu, 50);
            let d = f.psigma(&t).unwrap();
            assert!(d.negative_coeffs.values().all(Rat::is_positive));
        }
    }
}

#[test]
fn cxjac_fibre_coefficient_bound() {
    // Past t = 3s/2 the strict transform of the fibre is forced into the
    // negative part with coefficient at least t − 3s/2.
    for s in [q(1, 5), q(1, 2), q(4, 5)] {
        let f = ModelFamily::cxjac(s.clone()).unwrap();
        let lo = &s * q(3, 2);
        let mu = f.mu().unwrap();
        for k in 1..=4 {
            let t = &lo + (&mu - &lo) * q(k, 5);
            let d = f.psigma(&t).unwrap();
            let top = &f.tower().stages[d.positive.stage];
            let name = &top.basis[0];
            let c = d.negative_coeffs.get(name).cloned().unwrap_or_default();
            assert!(c >= &t - &lo, "s = {s}, t = {t}: σ({name}) = {c}");
        }
    }
}

#[test]
fn out_of_range_and_bad_params() {
    let f = ModelFamily::cxp2(qi(2), qi(1)).unwrap();
    assert!(matches!(f.vol_ray(&qi(4)), Err(ThreefoldError::OutOfRange { .. })));
    assert!(matches!(f.vol_ray(&qi(-1)), Err(ThreefoldError::OutOfRange { .. })));
    assert!(matches!(ModelFamily::cxjac(qi(1)), Err(ThreefoldError::BadParams(_))));
    assert!(matches!(ModelFamily::ccc(qi(1), qi(2), qi(3)), Err(ThreefoldError::BadParams(_))));
}
