//! Property tests for the polyhedral kernel.

use fzkit::ratgeom::{dual_cone, equal_sets, project, slice, volume, Polytope, QCone, QVec, Rat, VPoly};
use proptest::prelude::*;

fn points(dim: usize) -> impl Strategy<Value = Vec<QVec>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, dim), dim + 1..dim + 5)
        .prop_map(|rows| rows.iter().map(|r| QVec::from_ints(r)).collect())
}

fn hull(dim: usize, pts: Vec<QVec>) -> VPoly {
    VPoly::hull(dim, pts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hull_round_trip(pts in points(3)) {
        let v = hull(3, pts);
        prop_assert_eq!(v.to_h().unwrap().to_v().unwrap(), v);
    }

    #[test]
    fn hull_keeps_every_input_point(pts in points(3)) {
        let h = hull(3, pts.clone()).to_h().unwrap();
        for p in &pts {
            prop_assert!(h.contains(p));
        }
    }

    #[test]
    fn double_dual(rays in points(3)) {
        let rays: Vec<QVec> = rays.into_iter().filter(|r| !r.is_zero()).collect();
        prop_assume!(!rays.is_empty());
        let c = QCone::from_rays(3, rays).unwrap();
        let cc = dual_cone(&dual_cone(&c, None).unwrap(), None).unwrap();
        prop_assert!(cc.equal_sets(&c));
    }

    #[test]
    fn volume_scales_and_translates(pts in points(3), k in 1i64..4, shift in prop::collection::vec(-3i64..=3, 3)) {
        let v = hull(3, pts.clone());
        let base = volume(&v).unwrap();
        let kr = Rat::int(k);
        let s = QVec::from_ints(&shift);
        let moved = hull(3, pts.iter().map(|p| p.scale(&kr).add(&s)).collect());
        prop_assert_eq!(volume(&moved).unwrap(), base * kr.pow(3));
    }

    #[test]
    fn projection_contains_slices(pts in points(3), num in -8i64..=8) {
        let p = Polytope::V(hull(3, pts));
        let shadow = project(&p, &[1, 2]).unwrap().to_h().unwrap();
        if let Some(cut) = slice(&p, 0, &Rat::new(num, 2)).unwrap() {
            for v in cut.to_v().unwrap().vertices() {
                prop_assert!(shadow.contains(v));
            }
        }
    }

    #[test]
    fn h_and_v_forms_describe_one_set(pts in points(2)) {
        let v = hull(2, pts);
        let h = v.to_h().unwrap();
        prop_assert!(equal_sets(&Polytope::V(v), &Polytope::H(h)).unwrap());
    }
}
