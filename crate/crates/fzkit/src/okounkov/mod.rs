//! Generic infinitesimal Newton–Okounkov bodies of the three families.
//!
//! Bodies are assembled from their slice bounds `t ≤ t_max`, `x ≤ x_max`,
//! `y ≤ y_max` by splitting parameter space into cells where each bound is
//! affine; the cells' polytopes must tile their convex hull exactly. Slices
//! at fixed `t` are recomputed independently by surface Zariski sweeps on
//! the carrier component of the tower.

mod seshadri;

pub use seshadri::{projection_area_check, seshadri_curve, AreaCheck, AreaVerdict};

use serde::{Deserialize, Serialize};

use crate::pwl::{common_branches, cst, var, AffineForm, PwlExpr, PwlError};
use crate::ratgeom::io::{to_off, PolytopeJson};
use crate::ratgeom::{equal_sets, slice, volume, GeomError, HPoly, Halfspace, Polytope, QVec, Rat, VPoly};
use crate::surface::{nobody_surface, p2blow7_model, SurfaceError, SurfaceModel};
use crate::threefold::{FamilyKind, ModelFamily, ThreefoldError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OkounkovError {
    #[error("t = {t} must lie strictly between 0 and {mu}")]
    OutOfRange { t: Box<Rat>, mu: Box<Rat> },
    #[error("{what} is not available for family {family}")]
    Unsupported { what: &'static str, family: FamilyKind },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error(transparent)]
    Threefold(#[from] ThreefoldError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Pwl(#[from] PwlError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

pub type Result<T> = std::result::Result<T, OkounkovError>;

fn inconsistent<T>(msg: String) -> Result<T> {
    Err(OkounkovError::Consistency(msg))
}

/// A bounded body in the nonnegative orthant, with both representations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NOBody {
    pub dim: usize,
    pub vrep: VPoly,
    pub hrep: HPoly,
}

impl NOBody {
    pub fn from_vrep(vrep: VPoly) -> Result<NOBody> {
        let dim = vrep.dim();
        if !vrep.is_bounded() {
            return Err(GeomError::Unbounded.into());
        }
        if vrep.vertices().iter().any(|v| v.iter().any(Rat::is_negative)) {
            return inconsistent("body leaves the nonnegative orthant".into());
        }
        let hrep = vrep.to_h()?;
        if !hrep.contains(&QVec::zeros(dim)) {
            return inconsistent("body misses the origin".into());
        }
        Ok(NOBody { dim, vrep, hrep })
    }

    pub fn polytope(&self) -> Polytope {
        Polytope::V(self.vrep.clone())
    }

    pub fn vertices(&self) -> &[QVec] {
        self.vrep.vertices()
    }

    pub fn volume(&self) -> Result<Rat> {
        Ok(volume(&self.vrep)?)
    }

    /// Volume of the part with first coordinate at least `t`.
    pub fn volume_above(&self, t: &Rat) -> Result<Rat> {
        let cut = self.hrep.with_rows(vec![Halfspace::new(QVec::unit(self.dim, 0), t.clone())], vec![])?;
        match cut.to_v() {
            Ok(v) => Ok(volume(&v)?),
            Err(GeomError::Infeasible) => Ok(Rat::zero()),
            Err(e) => Err(e.into()),
        }
    }

    /// The cross-section at first coordinate `t`, in the other coordinates.
    pub fn slice_first(&self, t: &Rat) -> Result<Option<VPoly>> {
        match slice(&self.polytope(), 0, t)? {
            Some(p) => Ok(Some(p.to_v()?)),
            None => Ok(None),
        }
    }

    pub fn same_set(&self, other: &Polytope) -> Result<bool> {
        Ok(equal_sets(&self.polytope(), other)?)
    }

    pub fn to_json(&self) -> PolytopeJson {
        PolytopeJson::from_reps(Some(&self.vrep), Some(&self.hrep))
    }

    pub fn to_off(&self) -> Result<String> {
        Ok(to_off(&self.vrep)?)
    }
}

/// The slice `{(x, y)}` of the body at height `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlicePolygon {
    pub t: Rat,
    pub polygon: VPoly,
}

impl SlicePolygon {
    pub fn area(&self) -> Result<Rat> {
        Ok(volume(&self.polygon)?)
    }
}

/// Glues the cells `{lead, t, x, y : guard, t ≤ t_max, 0 ≤ x ≤ x_max, 0 ≤ y ≤ y_max}`
/// over a box of `(lead, t, x)` and returns their hull, after checking that
/// the cell volumes add up to the hull volume.
fn assemble(lead: &[(&str, Rat, Rat)], bounds: &[PwlExpr; 3], reach: &Rat) -> Result<NOBody> {
    let mut params: Vec<&str> = lead.iter().map(|(n, _, _)| *n).collect();
    params.extend(["t", "x"]);
    let mut lo: Vec<Rat> = lead.iter().map(|(_, l, _)| l.clone()).collect();
    let mut hi: Vec<Rat> = lead.iter().map(|(_, _, h)| h.clone()).collect();
    lo.extend([Rat::zero(), Rat::zero()]);
    hi.extend([reach.clone(), reach.clone()]);
    let domain = HPoly::cube(&lo, &hi);
    let mut vars = params.clone();
    vars.push("y");
    let dim = vars.len();

    let mut points = Vec::new();
    let mut total = Rat::zero();
    for cell in common_branches(bounds, &params, &domain)? {
        let mut rows: Vec<Halfspace> = cell
            .guard
            .inequalities()
            .iter()
            .map(|h| {
                let mut n = h.normal.clone();
                n.push(Rat::zero());
                Halfspace::new(n, h.offset.clone())
            })
            .collect();
        let [ft, fx, fy] = [&cell.forms[0], &cell.forms[1], &cell.forms[2]];
        for f in [ft.sub(&AffineForm::var("t")), fx.sub(&AffineForm::var("x")), fy.sub(&AffineForm::var("y")), AffineForm::var("y")] {
            rows.push(f.nonneg(&vars)?);
        }
        let poly = match HPoly::new(dim, rows, vec![]) {
            Ok(p) => p,
            Err(GeomError::InfeasibleRow) => continue,
            Err(e) => return Err(e.into()),
        };
        let v = match poly.to_v() {
            Ok(v) => v,
            Err(GeomError::Infeasible | GeomError::Empty) => continue,
            Err(e) => return Err(e.into()),
        };
        total += volume(&v)?;
        points.extend(v.vertices().iter().cloned());
    }
    let hull = VPoly::hull(dim, points)?;
    let hv = volume(&hull)?;
    if hv != total {
        return inconsistent(format!("cells have total volume {total} but their hull has volume {hv}"));
    }
    NOBody::from_vrep(hull)
}

fn factorial(n: usize) -> Rat {
    (2..=n as i64).fold(Rat::one(), |acc, k| acc * Rat::int(k))
}

/// The three-dimensional body in coordinates `(t, x, y)`.
pub fn body(family: &ModelFamily) -> Result<NOBody> {
    let tw = family.tower();
    let mu = family.mu()?;
    let build = |spec| -> Result<NOBody> {
        let b = tw.resolve_body(spec)?.map(|e| family.fix_params(e, &[]));
        assemble(&[], &b, &mu)
    };
    let out = build(&tw.body)?;
    if let Some(closed) = &tw.body_closed {
        let other = build(closed)?;
        if !out.same_set(&other.polytope())? {
            return inconsistent(format!("{}: body from slice bounds differs from the closed description", family.kind));
        }
    }
    let v = out.volume()? * factorial(3);
    let want = family.vol_ray(&Rat::zero())?;
    if v != want {
        return inconsistent(format!("{}: 6·volume(body) = {v} but vol(L) = {want}", family.kind));
    }
    Ok(out)
}

/// The four-dimensional body in `(s, t, x, y)` whose slice at `s` is the
/// body of the family member at `s` (`a = 1 − s`, `b = s` for `CxP2`).
pub fn glue4d(kind: FamilyKind) -> Result<NOBody> {
    let tw = kind.tower();
    let b = tw.resolve_body(&tw.body)?;
    let b = match kind {
        FamilyKind::CxP2 => {
            let a = cst(Rat::one()) - var("s");
            b.map(|e| e.substitute("a", &a).substitute("b", &var("s")))
        }
        FamilyKind::CxJac => b,
        FamilyKind::Ccc => return Err(OkounkovError::Unsupported { what: "a four-dimensional glue", family: kind }),
    };
    assemble(&[("s", Rat::zero(), Rat::one())], &b, &Rat::new(3, 2))
}

/// Basis of the symmetric carrier model as sums of classes on the full
/// twenty-dimensional model.
const SYMMETRIC_LIFT: [(&str, &[&str]); 5] = [
    ("h", &["h"]),
    ("se", &["e1", "e2", "e3", "e4", "e5", "e6"]),
    ("e7", &["e7"]),
    ("sg", &["g1", "g2", "g3", "g4", "g5", "g6"]),
    ("sn", &["n1", "n2", "n3", "n4", "n5", "n6"]),
];

fn lift_symmetric(small: &SurfaceModel, big: &SurfaceModel, v: &QVec) -> Result<QVec> {
    let mut out = QVec::zeros(big.dim());
    for (name, x) in small.basis_names.iter().zip(v.iter()) {
        let (_, parts) = SYMMETRIC_LIFT
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| OkounkovError::Consistency(format!("no lift for basis element {name}")))?;
        let terms: Vec<(&str, Rat)> = parts.iter().map(|p| (*p, x.clone())).collect();
        out = out.add(&big.class(&terms)?);
    }
    Ok(out)
}

/// The slice polygon at `t ∈ (0, μ)`, from the surface Zariski sweep of
/// `(P_σ + x·E)|_S` on the carrier component `S` in the direction `x`.
pub fn slice_at(family: &ModelFamily, t: &Rat) -> Result<SlicePolygon> {
    let mu = family.mu()?;
    if !t.is_positive() || t >= &mu {
        return Err(OkounkovError::OutOfRange { t: Box::new(t.clone()), mu: Box::new(mu) });
    }
    let tw = family.tower();
    let top = tw.top();
    let st = tw.stage(top)?;
    let ci = st.index(&tw.carrier.component)?;
    let model = &st.components[ci].model;
    let p = family.psigma(t)?.positive;
    let d = st.restrict(ci, &p.class)?;
    let e = st.restrict(ci, &tw.lift(0, top, &family.exceptional()?)?)?;
    let flag = &tw.carrier.flag;
    if e != flag.neg() {
        return inconsistent("the exceptional divisor does not restrict to minus the flag".into());
    }
    let polygon = nobody_surface(model, &d, flag, false, None)?;
    if family.kind == FamilyKind::CxJac {
        let big = p2blow7_model()?;
        let lifted = nobody_surface(&big, &lift_symmetric(model, &big, &d)?, &lift_symmetric(model, &big, flag)?, false, None)?;
        if lifted != polygon {
            return inconsistent(format!("symmetric and full carrier models disagree at t = {t}"));
        }
    }
    Ok(SlicePolygon { t: t.clone(), polygon })
}

/// `t,area` rows of the slice areas at the given step over `[0, μ]`.
pub fn slice_area_csv(family: &ModelFamily, step: &Rat) -> Result<String> {
    if !step.is_positive() {
        return Err(ThreefoldError::BadParams("step must be positive".into()).into());
    }
    let mu = family.mu()?;
    let mut out = String::from("t,area\n");
    let mut t = Rat::zero();
    while t < mu {
        let area = if t.is_zero() { Rat::zero() } else { slice_at(family, &t)?.area()? };
        out.push_str(&format!("{t},{area}\n"));
        t = &t + step;
    }
    out.push_str(&format!("{mu},0\n"));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qv;
    use crate::ratgeom::{q, qi};

    fn hull(pts: Vec<QVec>) -> VPoly {
        VPoly::hull(pts[0].dim(), pts).unwrap()
    }

    #[test]
    fn cxp2_body_a_ge_b() {
        let f = ModelFamily::cxp2(qi(3), qi(2)).unwrap();
        let b = body(&f).unwrap();
        let want = hull(vec![qv![0, 0, 0], qv![5, 0, 0], qv![3, 2, 0], qv![2, 2, 0], qv![2, 0, 2], qv![5, 0, 2]]);
        assert_eq!(b.vrep, want);
        assert_eq!(b.volume().unwrap(), qi(6));
    }

    #[test]
    fn ccc_tetrahedron() {
        let f = ModelFamily::ccc(qi(1), qi(1), qi(1)).unwrap();
        let b = body(&f).unwrap();
        assert_eq!(b.vrep, hull(vec![qv![0, 0, 0], qv![3, 0, 0], qv![1, 1, 0], qv![2, 0, 2]]));
    }

    #[test]
    fn slices_cxp2_and_ccc() {
        let f = ModelFamily::cxp2(qi(3), qi(2)).unwrap();
        let s = slice_at(&f, &q(5, 2)).unwrap();
        assert_eq!(s.polygon, hull(vec![qv![0, 0], qv![2, 0], qv![0, 2]]));
        let c = ModelFamily::ccc(qi(1), qi(1), qi(1)).unwrap();
        let s = slice_at(&c, &q(3, 2)).unwrap();
        assert_eq!(s.polygon, hull(vec![qv![0, 0], qv![0, q(3, 2)], qv![q(1, 2), 1], qv![q(3, 4), 0]]));
        assert!(matches!(slice_at(&c, &qi(3)), Err(OkounkovError::OutOfRange { .. })));
    }

    #[test]
    fn ccc_has_no_glue() {
        assert!(matches!(glue4d(FamilyKind::Ccc), Err(OkounkovError::Unsupported { .. })));
    }
}
