//! Polytope JSON (both representations in one object) and OFF export.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{GeomError, HPoly, Halfspace, QVec, Rat, Result, VPoly};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<QVec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<QVec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inequalities: Option<Vec<Halfspace>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equalities: Option<Vec<Halfspace>>,
}

impl PolytopeJson {
    pub fn from_reps(v: Option<&VPoly>, h: Option<&HPoly>) -> PolytopeJson {
        let dim = v.map(VPoly::dim).or(h.map(HPoly::dim)).unwrap_or(0);
        PolytopeJson {
            dim,
            vertices: v.map(|v| v.vertices().to_vec()),
            rays: v.map(|v| v.rays().to_vec()),
            inequalities: h.map(|h| h.inequalities().to_vec()),
            equalities: h.map(|h| h.equalities().to_vec()),
        }
    }

    pub fn vpoly(&self) -> Result<Option<VPoly>> {
        if self.vertices.is_none() && self.rays.is_none() {
            return Ok(None);
        }
        let v = self.vertices.clone().unwrap_or_default();
        let r = self.rays.clone().unwrap_or_default();
        VPoly::new(self.dim, v, r).map(Some)
    }

    pub fn hpoly(&self) -> Result<Option<HPoly>> {
        if self.inequalities.is_none() && self.equalities.is_none() {
            return Ok(None);
        }
        let i = self.inequalities.clone().unwrap_or_default();
        let e = self.equalities.clone().unwrap_or_default();
        HPoly::new(self.dim, i, e).map(Some)
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("polytope JSON serializes")
    }

    pub fn parse(s: &str) -> Result<PolytopeJson> {
        serde_json::from_str(s).map_err(|e| GeomError::Malformed(e.to_string()))
    }
}

/// OFF text for a bounded full-dimensional 3D polytope: vertices in their
/// canonical order, facets fan-triangulated and oriented outward.
pub fn to_off(p: &VPoly) -> Result<String> {
    if p.dim() != 3 {
        return Err(GeomError::DimensionMismatch { expected: 3, got: p.dim() });
    }
    if !p.is_bounded() {
        return Err(GeomError::Unbounded);
    }
    let verts = p.vertices();
    let h = p.to_h()?;
    let mut tris: Vec<[usize; 3]> = Vec::new();
    for f in h.inequalities() {
        let on: Vec<usize> = (0..verts.len()).filter(|&i| f.slack(&verts[i]).is_zero()).collect();
        if on.len() < 3 {
            continue;
        }
        let ring = cyclic_order(verts, &on, &f.normal.neg());
        for k in 1..ring.len() - 1 {
            tris.push([ring[0], ring[k], ring[k + 1]]);
        }
    }
    let mut out = String::new();
    writeln!(out, "OFF").ok();
    writeln!(out, "{} {} 0", verts.len(), tris.len()).ok();
    for v in verts {
        writeln!(out, "{} {} {}", v[0].to_f64(), v[1].to_f64(), v[2].to_f64()).ok();
    }
    for t in &tris {
        writeln!(out, "3 {} {} {}", t[0], t[1], t[2]).ok();
    }
    Ok(out)
}

fn cross(a: &QVec, b: &QVec) -> QVec {
    QVec::new(vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ])
}

/// Counter-clockwise order of coplanar points seen from the tip of `outward`.
fn cyclic_order(verts: &[QVec], idx: &[usize], outward: &QVec) -> Vec<usize> {
    let n = Rat::new(1, idx.len() as i64);
    let c = idx.iter().fold(QVec::zeros(3), |acc, &i| acc.add(&verts[i])).scale(&n);
    let u = verts[idx[0]].sub(&c);
    let w = cross(outward, &u);
    let coords = |i: usize| {
        let d = verts[i].sub(&c);
        (d.dot(&u), d.dot(&w))
    };
    // Half-plane first, then cross-product sign within a half-plane.
    let half = |x: &Rat, y: &Rat| if y.is_positive() || (y.is_zero() && !x.is_negative()) { 0 } else { 1 };
    let mut order = idx.to_vec();
    order.sort_by(|&a, &b| {
        let (ax, ay) = coords(a);
        let (bx, by) = coords(b);
        half(&ax, &ay).cmp(&half(&bx, &by)).then_with(|| {
            let cr = &ax * &by - &ay * &bx;
            0.cmp(&cr.signum())
        })
    });
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qv;
    use crate::ratgeom::qi;

    #[test]
    fn json_roundtrip_both_reps() {
        let h = HPoly::cube(&[qi(0), qi(0)], &[qi(1), qi(1)]);
        let v = h.to_v().unwrap();
        let j = PolytopeJson::from_reps(Some(&v), Some(&h));
        let text = j.to_string_pretty();
        assert!(text.contains(r#""dim": 2"#));
        let back = PolytopeJson::parse(&text).unwrap();
        assert_eq!(back.vpoly().unwrap().unwrap(), v);
        assert_eq!(back.hpoly().unwrap().unwrap(), h);
    }

    #[test]
    fn off_tetrahedron() {
        let t = VPoly::new(3, vec![qv![0, 0, 0], qv![1, 0, 0], qv![0, 1, 0], qv![0, 0, 1]], vec![]).unwrap();
        let off = to_off(&t).unwrap();
        let lines: Vec<&str> = off.lines().collect();
        assert_eq!(lines[0], "OFF");
        assert_eq!(lines[1], "4 4 0");
        assert_eq!(lines.len(), 2 + 4 + 4);
    }
}
