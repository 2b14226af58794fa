//! Exact volume by a pulling triangulation: each face is coned from its
//! lowest-index vertex over the subfaces that avoid it, recursively.

use std::collections::BTreeSet;

use super::linalg::{affine_rank, det};
use super::{GeomError, QVec, Rat, Result, VPoly};

pub fn volume(p: &VPoly) -> Result<Rat> {
    if !p.is_bounded() {
        return Err(GeomError::Unbounded);
    }
    let d = p.dim();
    let verts = p.vertices();
    let refs: Vec<&QVec> = verts.iter().collect();
    if affine_rank(&refs) != Some(d) {
        return Ok(Rat::zero());
    }
    if d == 0 {
        return Ok(Rat::one());
    }
    let h = p.to_h()?;
    let facets: Vec<BTreeSet<usize>> = h
        .inequalities()
        .iter()
        .map(|f| (0..verts.len()).filter(|&i| f.slack(&verts[i]).is_zero()).collect())
        .collect();

    let mut fan = Fan { verts, facets: &facets, chain: Vec::with_capacity(d + 1), total: Rat::zero() };
    let all: BTreeSet<usize> = (0..verts.len()).collect();
    fan.walk(&all, d);
    let mut fact = Rat::one();
    for k in 2..=d as i64 {
        fact *= Rat::int(k);
    }
    Ok(fan.total / fact)
}

struct Fan<'a> {
    verts: &'a [QVec],
    facets: &'a [BTreeSet<usize>],
    chain: Vec<QVec>,
    total: Rat,
}

impl Fan<'_> {
    fn walk(&mut self, face: &BTreeSet<usize>, k: usize) {
        let apex = *face.iter().next().expect("faces are nonempty");
        self.chain.push(self.verts[apex].clone());
        if k == 0 {
            let base = &self.chain[0];
            let m: Vec<QVec> = self.chain[1..].iter().map(|v| v.sub(base)).collect();
            self.total += det(&m).abs();
        } else {
            let mut subfaces: Vec<BTreeSet<usize>> = Vec::new();
            for f in self.facets {
                if f.contains(&apex) {
                    continue;
                }
                let s: BTreeSet<usize> = face.intersection(f).copied().collect();
                if s.is_empty() || subfaces.contains(&s) {
                    continue;
                }
                let pts: Vec<&QVec> = s.iter().map(|&i| &self.verts[i]).collect();
                if affine_rank(&pts) == Some(k - 1) {
                    subfaces.push(s);
                }
            }
            for s in &subfaces {
                self.walk(s, k - 1);
            }
        }
        self.chain.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qv;
    use crate::ratgeom::{q, qi, HPoly};

    #[test]
    fn unit_cube() {
        let c = HPoly::cube(&[qi(0), qi(0), qi(0)], &[qi(1), qi(1), qi(1)]).to_v().unwrap();
        assert_eq!(volume(&c).unwrap(), qi(1));
    }

    #[test]
    fn triangle_and_flat() {
        let t = VPoly::new(2, vec![qv![0, 0], qv![3, 0], qv![0, 2]], vec![]).unwrap();
        assert_eq!(volume(&t).unwrap(), qi(3));
        let flat = VPoly::new(3, vec![qv![0, 0, 0], qv![1, 0, 0], qv![0, 1, 0]], vec![]).unwrap();
        assert_eq!(volume(&flat).unwrap(), qi(0));
    }

    #[test]
    fn standard_simplex_4d() {
        let mut pts = vec![QVec::zeros(4)];
        for i in 0..4 {
            pts.push(QVec::unit(4, i));
        }
        let s = VPoly::new(4, pts, vec![]).unwrap();
        assert_eq!(volume(&s).unwrap(), q(1, 24));
    }

    #[test]
    fn unbounded_rejected() {
        let v = VPoly::new(1, vec![qv![0]], vec![qv![1]]).unwrap();
        assert_eq!(volume(&v), Err(GeomError::Unbounded));
    }
}
