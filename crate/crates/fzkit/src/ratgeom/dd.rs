//! Double description: extreme rays and lineality of `{y : a·y ≥ 0, b·y = 0}`.
//!
//! Constraints are inserted in the given order (equalities first). Lineality
//! directions are consumed as soon as a constraint breaks them; after that the
//! classical step applies, with new rays formed only from combinatorially
//! adjacent pairs.

use super::rat::{QVec, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn contains(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == *b)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct ConeRep {
    pub rays: Vec<QVec>,
    pub lineality: Vec<QVec>,
}

/// Computes a minimal generating system of the cone cut out by the rows.
pub(crate) fn cone_from_constraints(dim: usize, ineqs: &[QVec], eqs: &[QVec]) -> ConeRep {
    let rows: Vec<QVec> = eqs
        .iter()
        .flat_map(|e| [e.clone(), e.neg()])
        .chain(ineqs.iter().cloned())
        .filter(|r| !r.is_zero())
        .collect();
    let total = rows.len();

    let mut lin: Vec<QVec> = (0..dim).map(|i| QVec::unit(dim, i)).collect();
    let mut rays: Vec<(QVec, Bits)> = Vec::new();
    // All constraints processed so far vanish on the lineality space.
    let mut processed = Bits::empty(total);

    for (k, a) in rows.iter().enumerate() {
        if let Some(li) = lin.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l = lin.remove(li);
            if a.dot(&l).is_negative() {
                l = l.neg();
            }
            let al = a.dot(&l);
            for other in lin.iter_mut() {
                let k2 = -(a.dot(other) / &al);
                *other = other.axpy(&k2, &l).primitive();
            }
            for (r, z) in rays.iter_mut() {
                let k2 = -(a.dot(r) / &al);
                *r = r.axpy(&k2, &l).primitive();
                z.set(k);
            }
            rays.push((l.primitive(), processed.clone()));
            processed.set(k);
            continue;
        }

        let vals: Vec<Rat> = rays.iter().map(|(r, _)| a.dot(r)).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if minus.is_empty() {
            for (i, (_, z)) in rays.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    z.set(k);
                }
            }
            processed.set(k);
            continue;
        }

        let mut next: Vec<(QVec, Bits)> = Vec::new();
        for &p in &plus {
            for &n in &minus {
                let common = rays[p].1.and(&rays[n].1);
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, (_, z))| i == p || i == n || !z.contains(&common));
                if !adjacent {
                    continue;
                }
                let ap = &vals[p];
                let an = -&vals[n];
                let r = rays[n].0.scale(ap).add(&rays[p].0.scale(&an)).primitive();
                let mut z = common;
                z.set(k);
                next.push((r, z));
            }
        }
        for (i, (r, z)) in rays.into_iter().enumerate() {
            if vals[i].is_positive() {
                next.push((r, z));
            } else if vals[i].is_zero() {
                let mut z = z;
                z.set(k);
                next.push((r, z));
            }
        }
        rays = next;
        processed.set(k);
    }

    let mut out: Vec<QVec> = rays.into_iter().map(|(r, _)| r).collect();
    out.sort();
    out.dedup();
    ConeRep { rays: out, lineality: lin }
}
