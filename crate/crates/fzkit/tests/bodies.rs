//! Bodies against the published vertex lists.

use fzkit::okounkov::{body, glue4d, projection_area_check, slice_at, AreaVerdict};
use fzkit::qv;
use fzkit::ratgeom::{q, qi, volume, QVec, Rat, VPoly};
use fzkit::threefold::{FamilyKind, ModelFamily};

fn hull(pts: Vec<QVec>) -> VPoly {
    VPoly::hull(pts[0].dim(), pts).unwrap()
}

fn cxp2_list(a: Rat, b: Rat) -> Vec<QVec> {
    let z = Rat::zero();
    let p = |x: &Rat, y: &Rat, w: &Rat| QVec::new(vec![x.clone(), y.clone(), w.clone()]);
    let ab = &a + &b;
    if a > b {
        vec![p(&z, &z, &z), p(&ab, &z, &z), p(&a, &b, &z), p(&b, &b, &z), p(&b, &z, &b), p(&ab, &z, &b)]
    } else if a == b {
        let a2 = &a + &a;
        vec![p(&z, &z, &z), p(&a2, &z, &z), p(&a, &a, &z), p(&a, &z, &a), p(&a2, &z, &a)]
    } else {
        vec![p(&z, &z, &z), p(&ab, &z, &z), p(&b, &a, &z), p(&a, &a, &z), p(&b, &z, &b), p(&ab, &z, &b), p(&b, &a, &(&b - &a))]
    }
}

#[test]
fn cxp2_three_cases() {
    for (a, b) in [(3, 2), (1, 1), (2, 3)] {
        let f = ModelFamily::cxp2(qi(a), qi(b)).unwrap();
        let got = body(&f).unwrap();
        assert_eq!(got.vrep, hull(cxp2_list(qi(a), qi(b))), "(a, b) = ({a}, {b})");
        assert_eq!(got.volume().unwrap() * qi(6), qi(3 * a * b * b));
    }
}

#[test]
fn cxp2_equal_degrees_match_both_lists() {
    let f = ModelFamily::cxp2(qi(2), qi(2)).unwrap();
    let got = body(&f).unwrap();
    let a = qi(2);
    let z = Rat::zero();
    let p = |x: &Rat, y: &Rat, w: &Rat| QVec::new(vec![x.clone(), y.clone(), w.clone()]);
    let ab = &a + &a;
    // a ≥ b list and a ≤ b list with b = a substituted.
    let from_ge = vec![p(&z, &z, &z), p(&ab, &z, &z), p(&a, &a, &z), p(&a, &a, &z), p(&a, &z, &a), p(&ab, &z, &a)];
    let from_le = vec![p(&z, &z, &z), p(&ab, &z, &z), p(&a, &a, &z), p(&a, &a, &z), p(&a, &z, &a), p(&ab, &z, &a), p(&a, &a, &z)];
    assert_eq!(got.vrep, hull(from_ge));
    assert_eq!(got.vrep, hull(from_le));
    assert_eq!(got.vrep, hull(cxp2_list(a.clone(), a)));
}

#[test]
fn ccc_nine_points() {
    let (d1, d2, d3) = (qi(4), qi(3), qi(2));
    let f = ModelFamily::ccc(d1.clone(), d2.clone(), d3.clone()).unwrap();
    let z = Rat::zero();
    let p = |x: Rat, y: Rat, w: Rat| QVec::new(vec![x, y, w]);
    let want = vec![
        p(z.clone(), z.clone(), z.clone()),
        p(d3.clone(), d3.clone(), z.clone()),
        p(&d2 + &d3, z.clone(), &d2 + &d3),
        p(&d1 + &d2 + &d3, z.clone(), z.clone()),
        p(&d1 + &d3, z.clone(), &d2 + &d3),
        p(&d1 + &d2, z.clone(), &d3 + &d3),
        p(d2.clone(), d3.clone(), &d2 - &d3),
        p(d1.clone(), d3.clone(), &d2 - &d3),
        p(&d1 + &d2 - &d3, d3.clone(), z.clone()),
    ];
    let got = body(&f).unwrap();
    assert_eq!(got.vrep, hull(want));
    assert_eq!(got.volume().unwrap(), qi(24));
}

#[test]
fn cxjac_seven_vertices() {
    let f = ModelFamily::cxjac(q(1, 2)).unwrap();
    let got = body(&f).unwrap();
    let want = hull(vec![
        qv![0, 0, 0],
        qv![q(1, 2), q(1, 2), 0],
        qv![q(3, 4), 0, q(3, 4)],
        qv![q(5, 4), 0, 0],
        qv![q(29, 42), q(10, 21), q(3, 14)],
        qv![q(7, 6), 0, q(3, 4)],
        qv![q(2, 3), q(1, 2), q(1, 6)],
    ]);
    // The listed seven are all vertices, but the inequality description has
    // one more on the face x = 1 − s; without it the volume falls short.
    for v in want.vertices() {
        assert!(got.vrep.vertices().contains(v), "{v}");
    }
    let extra: Vec<&QVec> = got.vrep.vertices().iter().filter(|v| !want.vertices().contains(v)).collect();
    assert_eq!(extra, vec![&qv![q(11, 16), q(1, 2), 0]]);
    assert!(volume(&want).unwrap() < q(1, 8));
    assert_eq!(got.volume().unwrap() * qi(6), q(3, 4));
}

#[test]
fn glues() {
    let g = glue4d(FamilyKind::CxP2).unwrap();
    let want = hull(vec![qv![0, 0, 0, 0], qv![1, 0, 0, 0], qv![0, 1, 0, 0], qv![1, 1, 0, 0], qv![1, 1, 0, 1], qv![q(1, 2), q(1, 2), q(1, 2), 0]]);
    assert_eq!(g.vrep, want);
    let g = glue4d(FamilyKind::CxJac).unwrap();
    let want = hull(vec![
        qv![0, 0, 0, 0],
        qv![1, 0, 0, 0],
        qv![0, 1, 0, 0],
        qv![1, q(3, 2), 0, 0],
        qv![1, q(4, 3), 0, q(4, 3)],
        qv![q(3, 7), q(4, 7), q(4, 7), 0],
        qv![q(6, 7), q(9, 7), 0, q(9, 7)],
    ]);
    assert_eq!(g.vrep, want);
    assert_eq!(g.volume().unwrap(), q(1, 12));
    for s in [q(1, 2), q(2, 7)] {
        let fam = ModelFamily::cxjac(s.clone()).unwrap();
        assert!(body(&fam).unwrap().same_set(&fzkit::ratgeom::Polytope::V(g.slice_first(&s).unwrap().unwrap())).unwrap());
    }
}

#[test]
fn cxjac_slices_match_body() {
    let f = ModelFamily::cxjac(q(1, 2)).unwrap();
    let b = body(&f).unwrap();
    for t in [q(1, 4), q(2, 3), q(3, 4), qi(1), q(6, 5)] {
        let s = slice_at(&f, &t).unwrap();
        assert_eq!(s.polygon, b.slice_first(&t).unwrap().unwrap(), "t = {t}");
    }
}

#[test]
fn area_verdicts() {
    let c = |f: ModelFamily| projection_area_check(&f).unwrap();
    let r = c(ModelFamily::cxp2(qi(3), qi(2)).unwrap());
    assert_eq!((r.verdict, r.rhs), (AreaVerdict::Equality, qi(4)));
    for s in [q(3, 7), q(1, 4)] {
        let r = c(ModelFamily::cxjac(s.clone()).unwrap());
        assert_eq!(r.verdict, AreaVerdict::Equality, "s = {s}");
        assert_eq!(r.lhs, qi(2) * s.pow(2));
    }
    let r = c(ModelFamily::ccc(qi(3), qi(2), qi(1)).unwrap());
    assert_eq!((r.verdict, r.lhs), (AreaVerdict::Equality, qi(4)));
}
