//! Surface polygons against the closed forms for whole parameter ranges.

use fzkit::qv;
use fzkit::ratgeom::{q, qi, volume, QVec, Rat, VPoly};
use fzkit::surface::{builtin_model, nobody_surface, nobody_sweep, zariski};

fn hull(pts: Vec<QVec>) -> VPoly {
    VPoly::hull(2, pts).unwrap()
}

fn pt(a: &Rat, b: &Rat) -> QVec {
    QVec::new(vec![a.clone(), b.clone()])
}

#[test]
fn trapezoids_for_a_grid_of_degrees() {
    let m = builtin_model("two_curves").unwrap();
    let e = m.curve("E").unwrap().class.clone();
    for (n1, n2) in [(1, 1), (2, 1), (5, 2), (7, 3), (9, 9)] {
        let (d1, d2) = (q(n1, 2), q(n2, 2));
        let got = nobody_surface(&m, &QVec::new(vec![d1.clone(), d2.clone(), Rat::zero()]), &e, true, None).unwrap();
        let z = Rat::zero();
        let want = hull(vec![pt(&z, &z), pt(&d2, &d2), pt(&d1, &d2), pt(&(&d1 + &d2), &z)]);
        assert_eq!(got, want, "(d1, d2) = ({d1}, {d2})");
        // Twice the area is the volume of the polarization.
        assert_eq!(volume(&got).unwrap() * qi(2), qi(2) * &d1 * &d2);
    }
}

#[test]
fn diagonal_pentagons() {
    let m = builtin_model("two_curves_diagonal").unwrap();
    let e = m.curve("E").unwrap().class.clone();
    for (d1, d2) in [(2, 2), (3, 2), (5, 3), (4, 4)] {
        let got = nobody_surface(&m, &QVec::from_ints(&[d1, d2, 1, 0]), &e, true, None).unwrap();
        let want = hull(vec![qv![0, 0], qv![d2 + 1, d2 + 1], qv![d1 + 1, d2 + 1], qv![d1 + d2, 2], qv![d1 + d2, 0]]);
        assert_eq!(got, want, "(d1, d2) = ({d1}, {d2})");
    }
}

#[test]
fn jacobian_sweep_pieces() {
    let m = builtin_model("genus2_jacobian").unwrap();
    let e = m.curve("E").unwrap().class.clone();
    let segs = nobody_sweep(&m, &qv![1, 0], &e, true, None).unwrap();
    let ends: Vec<(Rat, Rat)> = segs.iter().map(|s| (s.t1.clone(), s.beta1.clone())).collect();
    assert_eq!(ends, vec![(q(4, 3), q(4, 3)), (q(3, 2), qi(0))]);
}

#[test]
fn negative_parts_are_supported_on_listed_curves() {
    let m = builtin_model("two_curves_diagonal").unwrap();
    for k in 0..=20 {
        let t = q(k, 4);
        let d = QVec::new(vec![qi(3), qi(2), qi(1), -t.clone()]);
        let z = zariski(&m, &d).unwrap();
        z.verify(&m, &d).unwrap();
        for name in z.negative_coeffs.keys() {
            assert!(["f1bar", "f2bar"].contains(&name.as_str()), "t = {t}: {name}");
        }
    }
}
