//! Fourier–Motzkin projection with Chernikov's history filter.

use std::collections::BTreeSet;

use super::{GeomError, HPoly, Halfspace, Result};

struct Row {
    h: Halfspace,
    hist: BTreeSet<usize>,
}

pub(crate) fn project(p: &HPoly, kept: &[usize]) -> Result<HPoly> {
    let d = p.dim();
    let mut rows: Vec<Row> = p
        .inequalities()
        .iter()
        .enumerate()
        .map(|(i, h)| Row { h: h.clone(), hist: BTreeSet::from([i]) })
        .collect();
    let mut eqs: Vec<Halfspace> = p.equalities().to_vec();
    let mut eliminated = 0usize;

    for j in (0..d).filter(|j| !kept.contains(j)) {
        // An equality mentioning x_j lets us substitute instead of combining.
        if let Some(ei) = eqs.iter().position(|e| !e.normal[j].is_zero()) {
            let e = eqs.remove(ei);
            let sub = |h: &Halfspace| -> Halfspace {
                if h.normal[j].is_zero() {
                    return h.clone();
                }
                let k = -(&h.normal[j] / &e.normal[j]);
                Halfspace::new(h.normal.axpy(&k, &e.normal), &h.offset + &k * &e.offset)
            };
            for r in rows.iter_mut() {
                r.h = sub(&r.h);
            }
            for other in eqs.iter_mut() {
                *other = sub(other);
            }
            continue;
        }

        eliminated += 1;
        let (zero, rest): (Vec<Row>, Vec<Row>) = rows.into_iter().partition(|r| r.h.normal[j].is_zero());
        let (pos, neg): (Vec<Row>, Vec<Row>) = rest.into_iter().partition(|r| r.h.normal[j].is_positive());
        let mut next = zero;
        for a in &pos {
            for b in &neg {
                let hist: BTreeSet<usize> = a.hist.union(&b.hist).copied().collect();
                if hist.len() > eliminated + 1 {
                    continue;
                }
                let la = -b.h.normal[j].clone();
                let lb = a.h.normal[j].clone();
                let normal = a.h.normal.scale(&la).add(&b.h.normal.scale(&lb));
                let offset = &a.h.offset * &la + &b.h.offset * &lb;
                next.push(Row { h: Halfspace::new(normal, offset), hist });
            }
        }
        rows = next;
    }

    let pick = |h: &Halfspace| Halfspace::new(h.normal.pick(kept), h.offset.clone());
    let ineqs: Vec<Halfspace> = rows.iter().map(|r| pick(&r.h)).collect();
    let eqs: Vec<Halfspace> = eqs.iter().map(pick).collect();
    match HPoly::new(kept.len(), ineqs, eqs) {
        Ok(h) => Ok(h.dedup()),
        Err(GeomError::InfeasibleRow) => Err(GeomError::Infeasible),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qv;
    use crate::ratgeom::{equal_sets, q, Polytope, VPoly};

    #[test]
    fn triangle_shadow() {
        // Triangle (0,0),(2,0),(1,1) projected to y gives [0,1].
        let v = VPoly::new(2, vec![qv![0, 0], qv![2, 0], qv![1, 1]], vec![]).unwrap();
        let h = v.to_h().unwrap();
        let p = project(&h, &[1]).unwrap();
        let seg = VPoly::new(1, vec![qv![0], qv![1]], vec![]).unwrap();
        assert!(equal_sets(&Polytope::H(p), &Polytope::V(seg)).unwrap());
    }

    #[test]
    fn equality_substitution() {
        // Segment x + y = 1, 0 ≤ x ≤ 1/2 projected to y gives [1/2, 1].
        let h = HPoly::new(
            2,
            vec![Halfspace::ints(&[1, 0], 0), Halfspace::new(qv![-1, 0], q(-1, 2))],
            vec![Halfspace::ints(&[1, 1], 1)],
        )
        .unwrap();
        let p = project(&h, &[1]).unwrap();
        assert!(p.contains(&qv![q(3, 4)]));
        assert!(!p.contains(&qv![q(1, 4)]));
    }
}
