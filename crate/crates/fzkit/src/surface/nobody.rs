//! Surface Newton–Okounkov polygons by an exact sweep in `t`.

use serde::{Deserialize, Serialize};

use super::{zariski, zariski_lex, Result, SurfaceError, SurfaceModel};
use crate::ratgeom::{QVec, Rat, VPoly};

/// `β` is affine on `[t0, t1]`; `support` names the negative part just right of `t0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaSegment {
    pub t0: Rat,
    pub t1: Rat,
    pub beta0: Rat,
    pub beta1: Rat,
    pub support: Vec<String>,
}

impl BetaSegment {
    pub fn beta_at(&self, t: &Rat) -> Rat {
        let w = &self.t1 - &self.t0;
        if w.is_zero() {
            return self.beta0.clone();
        }
        &self.beta0 + (&self.beta1 - &self.beta0) * ((t - &self.t0) / w)
    }
}

fn check_flag(model: &SurfaceModel, flag: &QVec, infinitesimal: bool) -> Result<()> {
    model.check_len(flag)?;
    if infinitesimal {
        if model.curve_name(flag).is_none() {
            return Err(SurfaceError::BadFlag("infinitesimal flag must be a listed curve".into()));
        }
        return Ok(());
    }
    if model.dot(flag, flag).is_negative() {
        return Err(SurfaceError::BadFlag("flag curve has negative self-intersection".into()));
    }
    if model.mori_generators.is_some() && !model.is_nef(flag)? {
        return Err(SurfaceError::BadFlag("flag curve is not nef".into()));
    }
    Ok(())
}

/// Breakpoints and affine pieces of `β(t) = P_σ(d − t·C)·C` on `[0, μ]`.
pub fn nobody_sweep(
    model: &SurfaceModel,
    d: &QVec,
    flag: &QVec,
    infinitesimal: bool,
    t_max: Option<&Rat>,
) -> Result<Vec<BetaSegment>> {
    model.check_len(d)?;
    check_flag(model, flag, infinitesimal)?;
    if !model.is_big(d)? {
        return Err(SurfaceError::NotBig);
    }
    let mu = match t_max {
        Some(m) => m.clone(),
        None => model.mu_along(d, flag)?,
    };
    if !mu.is_positive() {
        return Err(SurfaceError::NotBig);
    }
    let slope = flag.neg();
    let mut segs = Vec::new();
    let mut t = Rat::zero();
    while t < mu {
        let z = zariski_lex(model, &d.axpy(&-t.clone(), flag), &slope)?;
        let mut next = mu.clone();
        let mut consider = |cand: Rat| {
            if cand < next {
                next = cand;
            }
        };
        for (pos, _) in z.support.iter().enumerate() {
            if z.x1[pos].is_negative() {
                consider(&t + &z.x0[pos] / &-z.x1[pos].clone());
            }
        }
        for (k, c) in model.negative_curves.iter().enumerate() {
            if z.support.contains(&k) {
                continue;
            }
            let a1 = model.dot(&z.p1, &c.class);
            if a1.is_negative() {
                consider(&t + model.dot(&z.p0, &c.class) / -a1);
            }
        }
        if next <= t {
            return Err(SurfaceError::Certificate(t));
        }
        let b0 = model.dot(&z.p0, flag);
        let b1 = &b0 + (&next - &t) * model.dot(&z.p1, flag);
        let support = z.support.iter().map(|&i| model.negative_curves[i].name.clone()).collect();
        let seg = BetaSegment { t0: t.clone(), t1: next.clone(), beta0: b0, beta1: b1, support };
        certify(model, d, flag, &seg)?;
        segs.push(seg);
        t = next;
    }
    Ok(segs)
}

/// Three independent decompositions must lie on the predicted segment.
fn certify(model: &SurfaceModel, d: &QVec, flag: &QVec, seg: &BetaSegment) -> Result<()> {
    let mid = (&seg.t0 + &seg.t1) * Rat::new(1, 2);
    for s in [&seg.t0, &mid, &seg.t1] {
        let ds = d.axpy(&-s.clone(), flag);
        let z = zariski(model, &ds)?;
        z.verify(model, &ds)?;
        if model.dot(&z.positive, flag) != seg.beta_at(s) {
            return Err(SurfaceError::Certificate(s.clone()));
        }
    }
    Ok(())
}

/// The polygon `{(t, x) : 0 ≤ t ≤ μ, 0 ≤ x ≤ β(t)}`.
pub fn nobody_surface(
    model: &SurfaceModel,
    d: &QVec,
    flag: &QVec,
    infinitesimal: bool,
    t_max: Option<&Rat>,
) -> Result<VPoly> {
    let segs = nobody_sweep(model, d, flag, infinitesimal, t_max)?;
    let mut pts = Vec::new();
    for s in &segs {
        for (t, b) in [(&s.t0, &s.beta0), (&s.t1, &s.beta1)] {
            pts.push(QVec::new(vec![t.clone(), Rat::zero()]));
            pts.push(QVec::new(vec![t.clone(), b.clone()]));
        }
    }
    Ok(VPoly::hull(2, pts)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qv;
    use crate::ratgeom::{q, volume};
    use crate::surface::builtin_model;

    fn poly(pts: Vec<QVec>) -> VPoly {
        VPoly::hull(2, pts).unwrap()
    }

    #[test]
    fn jacobian_triangle() {
        let m = builtin_model("genus2_jacobian").unwrap();
        let e = m.curve("E").unwrap().class.clone();
        let p = nobody_surface(&m, &qv![1, 0], &e, true, None).unwrap();
        assert_eq!(p, poly(vec![qv![0, 0], qv![q(3, 2), 0], qv![q(4, 3), q(4, 3)]]));
        assert_eq!(volume(&p).unwrap() * Rat::int(2), Rat::int(2));
    }

    #[test]
    fn two_curves_isosceles() {
        let m = builtin_model("two_curves").unwrap();
        let e = m.curve("E").unwrap().class.clone();
        let p = nobody_surface(&m, &qv![1, 1, 0], &e, true, None).unwrap();
        assert_eq!(p, poly(vec![qv![0, 0], qv![2, 0], qv![1, 1]]));
    }

    #[test]
    fn diagonal_polygon() {
        let m = builtin_model("two_curves_diagonal").unwrap();
        let e = m.curve("E").unwrap().class.clone();
        let p = nobody_surface(&m, &qv![2, 2, 1, 0], &e, true, None).unwrap();
        assert_eq!(p, poly(vec![qv![0, 0], qv![3, 3], qv![4, 2], qv![4, 0]]));
    }

    #[test]
    fn segments_report_support() {
        let m = builtin_model("genus2_jacobian").unwrap();
        let e = m.curve("E").unwrap().class.clone();
        let segs = nobody_sweep(&m, &qv![1, 0], &e, true, None).unwrap();
        assert_eq!(segs.len(), 2);
        assert_eq!(segs[0].t1, q(4, 3));
        assert!(segs[0].support.is_empty());
        assert_eq!(segs[1].support, vec!["Rbar".to_string()]);
    }

    #[test]
    fn rejects_non_big_and_bad_flag() {
        let m = builtin_model("genus2_jacobian").unwrap();
        let e = m.curve("E").unwrap().class.clone();
        assert_eq!(nobody_surface(&m, &qv![4, -6], &e, true, None), Err(SurfaceError::NotBig));
        assert!(matches!(nobody_surface(&m, &qv![1, 0], &e, false, None), Err(SurfaceError::BadFlag(_))));
    }
}
