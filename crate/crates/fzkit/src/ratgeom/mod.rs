//! Exact-rational polyhedral kernel.
//!
//! Polyhedra come in two shapes: [`HPoly`] (inequalities `normal·x ≥ offset`
//! plus equalities) and [`VPoly`] (vertices plus rays). [`QCone`] is a
//! finitely generated cone with an explicit lineality basis. Conversions use
//! the double description method on the homogenized cone; projection uses
//! Fourier–Motzkin elimination; volume uses a centroid fan triangulation.

mod dd;
mod fm;
pub mod io;
pub mod linalg;
mod rat;
mod volume;

use serde::{Deserialize, Serialize};

pub use linalg::QMat;
pub use rat::{q, qi, ParseRatError, QVec, Rat};
pub use volume::volume;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("row with zero normal and positive offset makes the system infeasible")]
    InfeasibleRow,
    #[error("inequality system is infeasible")]
    Infeasible,
    #[error("polyhedron has no vertices and no rays")]
    Empty,
    #[error("volume of an unbounded polyhedron")]
    Unbounded,
    #[error("pairing is degenerate")]
    DegeneratePairing,
    #[error("coordinate index {0} out of range")]
    BadIndex(usize),
    #[error("malformed polytope data: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;

/// `normal·x ≥ offset` (or `=` when used as an equality).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: QVec,
    pub offset: Rat,
}

impl Halfspace {
    pub fn new(normal: QVec, offset: Rat) -> Halfspace {
        Halfspace { normal, offset }
    }

    /// `normal·x ≥ offset` with integer ints, handy in tests and builders.
    pub fn ints(normal: &[i64], offset: i64) -> Halfspace {
        Halfspace::new(QVec::from_ints(normal), Rat::int(offset))
    }

    pub fn slack(&self, x: &QVec) -> Rat {
        self.normal.dot(x) - &self.offset
    }

    /// Positive rescaling with primitive integer normal, so equal halfspaces
    /// compare equal.
    fn canonical(&self) -> Halfspace {
        let mut v = self.normal.clone();
        v.push(self.offset.clone());
        let mut p = v.primitive().into_vec();
        let offset = p.pop().unwrap_or_else(Rat::zero);
        Halfspace { normal: QVec::new(p), offset }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPoly {
    dim: usize,
    inequalities: Vec<Halfspace>,
    equalities: Vec<Halfspace>,
}

impl HPoly {
    /// Validates row lengths, drops trivially true zero rows and rejects
    /// trivially false ones.
    pub fn new(dim: usize, inequalities: Vec<Halfspace>, equalities: Vec<Halfspace>) -> Result<HPoly> {
        let mut ineqs = Vec::new();
        for h in inequalities {
            check_dim(dim, h.normal.dim())?;
            if h.normal.is_zero() {
                if h.offset.is_positive() {
                    return Err(GeomError::InfeasibleRow);
                }
                continue;
            }
            ineqs.push(h);
        }
        let mut eqs = Vec::new();
        for h in equalities {
            check_dim(dim, h.normal.dim())?;
            if h.normal.is_zero() {
                if !h.offset.is_zero() {
                    return Err(GeomError::InfeasibleRow);
                }
                continue;
            }
            eqs.push(h);
        }
        Ok(HPoly { dim, inequalities: ineqs, equalities: eqs })
    }

    /// The box `lo ≤ x ≤ hi`.
    pub fn cube(lo: &[Rat], hi: &[Rat]) -> HPoly {
        let d = lo.len();
        let mut rows = Vec::new();
        for i in 0..d {
            rows.push(Halfspace::new(QVec::unit(d, i), lo[i].clone()));
            rows.push(Halfspace::new(QVec::unit(d, i).neg(), -&hi[i]));
        }
        HPoly { dim: d, inequalities: rows, equalities: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Halfspace] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[Halfspace] {
        &self.equalities
    }

    pub fn contains(&self, x: &QVec) -> bool {
        self.inequalities.iter().all(|h| !h.slack(x).is_negative())
            && self.equalities.iter().all(|h| h.slack(x).is_zero())
    }

    /// True iff `r` is a recession direction.
    pub fn contains_ray(&self, r: &QVec) -> bool {
        self.inequalities.iter().all(|h| !h.normal.dot(r).is_negative())
            && self.equalities.iter().all(|h| h.normal.dot(r).is_zero())
    }

    /// Adds rows (same dimension), keeping the zero-row checks.
    pub fn with_rows(&self, ineqs: Vec<Halfspace>, eqs: Vec<Halfspace>) -> Result<HPoly> {
        let mut i = self.inequalities.clone();
        i.extend(ineqs);
        let mut e = self.equalities.clone();
        e.extend(eqs);
        HPoly::new(self.dim, i, e)
    }

    /// Intersection with another H-polyhedron of the same dimension.
    pub fn intersect(&self, o: &HPoly) -> Result<HPoly> {
        check_dim(self.dim, o.dim)?;
        self.with_rows(o.inequalities.clone(), o.equalities.clone())
    }

    pub fn to_v(&self) -> Result<VPoly> {
        hrep_to_vrep(self)
    }

    /// Duplicate rows removed after canonical scaling; order is canonical.
    pub fn dedup(&self) -> HPoly {
        let mut i: Vec<Halfspace> = self.inequalities.iter().map(Halfspace::canonical).collect();
        i.sort();
        i.dedup();
        let mut e: Vec<Halfspace> = self
            .equalities
            .iter()
            .map(|h| {
                let c = h.canonical();
                match c.normal.iter().find(|a| !a.is_zero()) {
                    Some(a) if a.is_negative() => Halfspace::new(c.normal.neg(), -c.offset),
                    _ => c,
                }
            })
            .collect();
        e.sort();
        e.dedup();
        HPoly { dim: self.dim, inequalities: i, equalities: e }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VPoly {
    dim: usize,
    vertices: Vec<QVec>,
    rays: Vec<QVec>,
}

impl VPoly {
    /// Sorts and dedups; rejects empty input, zero rays and wrong lengths.
    pub fn new(dim: usize, vertices: Vec<QVec>, rays: Vec<QVec>) -> Result<VPoly> {
        for v in vertices.iter().chain(&rays) {
            check_dim(dim, v.dim())?;
        }
        if rays.iter().any(QVec::is_zero) {
            return Err(GeomError::Malformed("zero ray".into()));
        }
        let mut vertices = vertices;
        vertices.sort();
        vertices.dedup();
        let mut rays: Vec<QVec> = rays.iter().map(QVec::primitive).collect();
        rays.sort();
        rays.dedup();
        if vertices.is_empty() && rays.is_empty() {
            return Err(GeomError::Empty);
        }
        if vertices.is_empty() {
            vertices.push(QVec::zeros(dim));
        }
        Ok(VPoly { dim, vertices, rays })
    }

    /// Convex hull of points, reduced to its vertices.
    pub fn hull(dim: usize, points: Vec<QVec>) -> Result<VPoly> {
        VPoly::new(dim, points, vec![])?.to_h()?.to_v()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[QVec] {
        &self.vertices
    }

    pub fn rays(&self) -> &[QVec] {
        &self.rays
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn to_h(&self) -> Result<HPoly> {
        Ok(vrep_to_hrep(self))
    }

    /// Removes non-extreme generators.
    pub fn reduced(&self) -> Result<VPoly> {
        self.to_h()?.to_v()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QCone {
    dim: usize,
    rays: Vec<QVec>,
    lineality: Vec<QVec>,
}

impl QCone {
    pub fn new(dim: usize, rays: Vec<QVec>, lineality: Vec<QVec>) -> Result<QCone> {
        for v in rays.iter().chain(&lineality) {
            check_dim(dim, v.dim())?;
        }
        if rays.iter().any(QVec::is_zero) {
            return Err(GeomError::Malformed("zero ray".into()));
        }
        if linalg::rank(&lineality) != lineality.len() {
            return Err(GeomError::Malformed("lineality vectors are dependent".into()));
        }
        let mut rays: Vec<QVec> = rays.iter().map(QVec::primitive).collect();
        rays.sort();
        rays.dedup();
        Ok(QCone { dim, rays, lineality })
    }

    pub fn from_rays(dim: usize, rays: Vec<QVec>) -> Result<QCone> {
        QCone::new(dim, rays, vec![])
    }

    /// The cone `{y : a·y ≥ 0}` for the given normals, in reduced form.
    pub fn from_inequalities(dim: usize, normals: &[QVec]) -> Result<QCone> {
        for n in normals {
            check_dim(dim, n.dim())?;
        }
        let rep = dd::cone_from_constraints(dim, normals, &[]);
        Ok(QCone { dim, rays: rep.rays, lineality: rep.lineality })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[QVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[QVec] {
        &self.lineality
    }

    /// Facet normals (`a·y ≥ 0`) and equality normals (`b·y = 0`).
    pub fn facets(&self) -> (Vec<QVec>, Vec<QVec>) {
        let mut gens = self.rays.clone();
        for l in &self.lineality {
            gens.push(l.clone());
            gens.push(l.neg());
        }
        let rep = dd::cone_from_constraints(self.dim, &gens, &[]);
        (rep.rays, rep.lineality)
    }

    pub fn contains(&self, y: &QVec) -> bool {
        let (ineqs, eqs) = self.facets();
        ineqs.iter().all(|a| !a.dot(y).is_negative()) && eqs.iter().all(|b| b.dot(y).is_zero())
    }

    /// Extreme rays after removing redundant generators.
    pub fn reduced(&self) -> QCone {
        let (ineqs, eqs) = self.facets();
        let rep = dd::cone_from_constraints(self.dim, &ineqs, &eqs);
        QCone { dim: self.dim, rays: rep.rays, lineality: rep.lineality }
    }

    pub fn equal_sets(&self, o: &QCone) -> bool {
        self.dim == o.dim && self.contains_cone(o) && o.contains_cone(self)
    }

    pub fn contains_cone(&self, o: &QCone) -> bool {
        let (ineqs, eqs) = self.facets();
        let inside = |y: &QVec| {
            ineqs.iter().all(|a| !a.dot(y).is_negative()) && eqs.iter().all(|b| b.dot(y).is_zero())
        };
        o.rays.iter().all(inside) && o.lineality.iter().all(|l| inside(l) && inside(&l.neg()))
    }
}

/// Either representation; operations accept both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Polytope {
    H(HPoly),
    V(VPoly),
}

impl Polytope {
    pub fn dim(&self) -> usize {
        match self {
            Polytope::H(h) => h.dim,
            Polytope::V(v) => v.dim,
        }
    }

    pub fn to_h(&self) -> Result<HPoly> {
        match self {
            Polytope::H(h) => Ok(h.clone()),
            Polytope::V(v) => v.to_h(),
        }
    }

    pub fn to_v(&self) -> Result<VPoly> {
        match self {
            Polytope::H(h) => h.to_v(),
            Polytope::V(v) => Ok(v.clone()),
        }
    }
}

impl From<HPoly> for Polytope {
    fn from(h: HPoly) -> Polytope {
        Polytope::H(h)
    }
}

impl From<VPoly> for Polytope {
    fn from(v: VPoly) -> Polytope {
        Polytope::V(v)
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(GeomError::DimensionMismatch { expected, got })
    }
}

/// Generators of `{y : ⟨y, r⟩ ≥ 0 ∀ rays r, ⟨y, l⟩ = 0 ∀ lineality l}` where
/// `⟨y, r⟩ = yᵀ M r`. `None` means the standard dot product.
pub fn dual_cone(c: &QCone, pairing: Option<&[QVec]>) -> Result<QCone> {
    let apply = |v: &QVec| -> QVec {
        match pairing {
            Some(m) => linalg::mat_vec(m, v),
            None => v.clone(),
        }
    };
    if let Some(m) = pairing {
        if m.len() != c.dim || m.iter().any(|r| r.dim() != c.dim) {
            return Err(GeomError::DimensionMismatch { expected: c.dim, got: m.len() });
        }
        if linalg::det(m).is_zero() {
            return Err(GeomError::DegeneratePairing);
        }
    }
    let ineqs: Vec<QVec> = c.rays.iter().map(apply).collect();
    let eqs: Vec<QVec> = c.lineality.iter().map(apply).collect();
    let rep = dd::cone_from_constraints(c.dim, &ineqs, &eqs);
    Ok(QCone { dim: c.dim, rays: rep.rays, lineality: rep.lineality })
}

pub fn hrep_to_vrep(h: &HPoly) -> Result<VPoly> {
    let d = h.dim;
    let homog = |hs: &Halfspace| -> QVec {
        let mut row = QVec::new(vec![-hs.offset.clone()]);
        for a in hs.normal.iter() {
            row.push(a.clone());
        }
        row
    };
    let mut ineqs: Vec<QVec> = h.inequalities.iter().map(homog).collect();
    ineqs.push(QVec::unit(d + 1, 0));
    let eqs: Vec<QVec> = h.equalities.iter().map(homog).collect();
    let rep = dd::cone_from_constraints(d + 1, &ineqs, &eqs);

    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for r in rep.rays {
        let tail: QVec = r.iter().skip(1).cloned().collect();
        if r[0].is_positive() {
            vertices.push(tail.scale(&r[0].recip()));
        } else {
            rays.push(tail);
        }
    }
    if vertices.is_empty() {
        return Err(GeomError::Infeasible);
    }
    for l in rep.lineality {
        let tail: QVec = l.iter().skip(1).cloned().collect();
        rays.push(tail.neg());
        rays.push(tail);
    }
    VPoly::new(d, vertices, rays)
}

pub fn vrep_to_hrep(v: &VPoly) -> HPoly {
    let d = v.dim;
    let mut gens: Vec<QVec> = Vec::new();
    for p in &v.vertices {
        let mut g = QVec::new(vec![Rat::one()]);
        for a in p.iter() {
            g.push(a.clone());
        }
        gens.push(g);
    }
    for r in &v.rays {
        let mut g = QVec::new(vec![Rat::zero()]);
        for a in r.iter() {
            g.push(a.clone());
        }
        gens.push(g);
    }
    let rep = dd::cone_from_constraints(d + 1, &gens, &[]);
    let split = |y: &QVec| Halfspace::new(y.iter().skip(1).cloned().collect(), -y[0].clone());
    let ineqs = rep.rays.iter().map(split).filter(|h| !h.normal.is_zero()).collect();
    let eqs = rep.lineality.iter().map(split).collect();
    HPoly { dim: d, inequalities: ineqs, equalities: eqs }.dedup()
}

/// Image under the coordinate projection onto `kept` (in that order).
pub fn project(p: &Polytope, kept: &[usize]) -> Result<Polytope> {
    let d = p.dim();
    if let Some(&bad) = kept.iter().find(|&&i| i >= d) {
        return Err(GeomError::BadIndex(bad));
    }
    match p {
        Polytope::V(v) => {
            let verts = v.vertices.iter().map(|x| x.pick(kept)).collect();
            let rays: Vec<QVec> = v.rays.iter().map(|x| x.pick(kept)).filter(|r| !r.is_zero()).collect();
            Ok(Polytope::V(VPoly::new(kept.len(), verts, rays)?.reduced()?))
        }
        Polytope::H(h) => Ok(Polytope::H(fm::project(h, kept)?)),
    }
}

/// Cross-section `x[axis] = value`, in the remaining coordinates. `None` when
/// the hyperplane misses the polyhedron.
pub fn slice(p: &Polytope, axis: usize, value: &Rat) -> Result<Option<Polytope>> {
    let d = p.dim();
    if axis >= d {
        return Err(GeomError::BadIndex(axis));
    }
    let h = p.to_h()?;
    let sub = |hs: &Halfspace| Halfspace::new(hs.normal.remove(axis), &hs.offset - &hs.normal[axis] * value);
    let ineqs: Vec<Halfspace> = h.inequalities.iter().map(sub).collect();
    let eqs: Vec<Halfspace> = h.equalities.iter().map(sub).collect();
    let cut = match HPoly::new(d - 1, ineqs, eqs) {
        Ok(c) => c,
        Err(GeomError::InfeasibleRow) => return Ok(None),
        Err(e) => return Err(e),
    };
    match cut.to_v() {
        Ok(v) => Ok(Some(match p {
            Polytope::H(_) => Polytope::H(cut),
            Polytope::V(_) => Polytope::V(v),
        })),
        Err(GeomError::Infeasible) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Mutual containment of the two convex sets.
pub fn equal_sets(p: &Polytope, q: &Polytope) -> Result<bool> {
    if p.dim() != q.dim() {
        return Ok(false);
    }
    let (pv, qv) = match (p.to_v(), q.to_v()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(GeomError::Infeasible), Err(GeomError::Infeasible)) => return Ok(true),
        (Err(GeomError::Infeasible), Ok(_)) | (Ok(_), Err(GeomError::Infeasible)) => return Ok(false),
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    let ph = p.to_h()?;
    let qh = q.to_h()?;
    let inside = |v: &VPoly, h: &HPoly| {
        v.vertices.iter().all(|x| h.contains(x)) && v.rays.iter().all(|r| h.contains_ray(r))
    };
    Ok(inside(&pv, &qh) && inside(&qv, &ph))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qv;

    fn square() -> HPoly {
        HPoly::cube(&[qi(0), qi(0)], &[qi(1), qi(1)])
    }

    #[test]
    fn square_vertices() {
        let v = square().to_v().unwrap();
        assert_eq!(v.vertices(), &[qv![0, 0], qv![0, 1], qv![1, 0], qv![1, 1]]);
        assert!(v.rays().is_empty());
    }

    #[test]
    fn infeasible_detected() {
        let h = HPoly::new(1, vec![Halfspace::ints(&[1], 1), Halfspace::ints(&[-1], 0)], vec![]).unwrap();
        assert_eq!(h.to_v(), Err(GeomError::Infeasible));
        assert_eq!(
            HPoly::new(1, vec![Halfspace::ints(&[0], 1)], vec![]),
            Err(GeomError::InfeasibleRow)
        );
    }

    #[test]
    fn single_point_gives_equalities() {
        let v = VPoly::new(2, vec![qv![q(1, 2), 3]], vec![]).unwrap();
        let h = v.to_h().unwrap();
        assert!(h.inequalities().is_empty());
        assert_eq!(h.equalities().len(), 2);
        assert!(h.contains(&qv![q(1, 2), 3]));
        assert!(!h.contains(&qv![q(1, 2), 2]));
    }

    #[test]
    fn unbounded_roundtrip() {
        let h = HPoly::new(2, vec![Halfspace::ints(&[1, 0], 0), Halfspace::ints(&[0, 1], 1)], vec![]).unwrap();
        let v = h.to_v().unwrap();
        assert_eq!(v.vertices(), &[qv![0, 1]]);
        assert_eq!(v.rays().len(), 2);
        assert!(equal_sets(&h.into(), &v.into()).unwrap());
    }

    #[test]
    fn self_dual_quadrant() {
        let c = QCone::from_rays(2, vec![qv![1, 0], qv![0, 1]]).unwrap();
        let d = dual_cone(&c, None).unwrap();
        assert!(d.equal_sets(&c));
    }

    #[test]
    fn dual_rotates_normals() {
        let c = QCone::from_rays(2, vec![qv![1, 0], qv![1, 1]]).unwrap();
        let d = dual_cone(&c, None).unwrap();
        assert_eq!(d.rays(), &[qv![0, 1], qv![1, -1]]);
    }

    #[test]
    fn degenerate_pairing_rejected() {
        let c = QCone::from_rays(2, vec![qv![1, 0]]).unwrap();
        let m = vec![qv![1, 1], qv![1, 1]];
        assert_eq!(dual_cone(&c, Some(&m)), Err(GeomError::DegeneratePairing));
    }

    #[test]
    fn slice_and_project_square() {
        let sq: Polytope = square().into();
        let seg = project(&sq, &[0]).unwrap().to_v().unwrap();
        assert_eq!(seg.vertices(), &[qv![0], qv![1]]);
        let cube: Polytope = HPoly::cube(&[qi(0), qi(0), qi(0)], &[qi(1), qi(1), qi(1)]).into();
        let s = slice(&cube, 0, &q(1, 2)).unwrap().unwrap();
        assert!(equal_sets(&s, &sq).unwrap());
        assert!(slice(&cube, 0, &qi(2)).unwrap().is_none());
    }

    #[test]
    fn square_reps_agree() {
        let v = VPoly::new(2, vec![qv![0, 0], qv![1, 0], qv![0, 1], qv![1, 1]], vec![]).unwrap();
        assert!(equal_sets(&square().into(), &v.into()).unwrap());
    }
}
