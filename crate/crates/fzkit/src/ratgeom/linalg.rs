//! Small exact linear algebra over `Rat`: row reduction, rank, determinants,
//! linear solves. Matrices are row lists.

use super::rat::{QVec, Rat};

pub type QMat = Vec<QVec>;

pub fn identity(n: usize) -> QMat {
    (0..n).map(|i| QVec::unit(n, i)).collect()
}

pub fn transpose(m: &[QVec], cols: usize) -> QMat {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_vec(m: &[QVec], v: &QVec) -> QVec {
    m.iter().map(|r| r.dot(v)).collect()
}

/// `uᵀ M v` for a square matrix `M`.
pub fn bilinear(m: &[QVec], u: &QVec, v: &QVec) -> Rat {
    u.dot(&mat_vec(m, v))
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(rows: &mut QMat) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.dim());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        rows[r] = rows[r].scale(&inv);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let k = -rows[i][c].clone();
                rows[i] = rows[i].axpy(&k, &rows[r]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[QVec]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Dimension of the affine hull of a point set (−1 encoded as `None` for empty).
pub fn affine_rank(points: &[&QVec]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: QMat = rest.iter().map(|p| p.sub(first)).collect();
    Some(rank(&diffs))
}

pub fn det(m: &[QVec]) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d = &d * &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let k = -(&a[i][c] * &inv);
                a[i] = a[i].axpy(&k, &a[c]);
            }
        }
    }
    d
}

/// Solves `M x = b` for square nonsingular `M`.
pub fn solve(m: &[QVec], b: &QVec) -> Option<QVec> {
    let n = m.len();
    let mut aug: QMat = m
        .iter()
        .zip(b.iter())
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() != n || piv.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(aug.iter().map(|r| r[n].clone()).collect())
}

/// Basis of `{x : M x = 0}`.
pub fn nullspace(m: &[QVec], ncols: usize) -> QMat {
    let mut a = m.to_vec();
    let piv = rref(&mut a);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = QVec::zeros(ncols);
            v[f] = Rat::one();
            for (i, &p) in piv.iter().enumerate() {
                v[p] = -a[i][f].clone();
            }
            v
        })
        .collect()
}

/// Coordinates of `v` in the span of `basis`, if it lies there.
pub fn coords_in(basis: &[QVec], v: &QVec) -> Option<QVec> {
    let k = basis.len();
    let n = v.dim();
    // Columns are basis vectors; solve the overdetermined system exactly.
    let mut aug: QMat = (0..n)
        .map(|i| {
            let mut row: QVec = basis.iter().map(|b| b[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.contains(&k) {
        return None;
    }
    let mut x = QVec::zeros(k);
    for (i, &p) in piv.iter().enumerate() {
        x[p] = aug[i][k].clone();
    }
    Some(x)
}

/// True iff the symmetric matrix is negative definite (Sylvester's criterion
/// on `−M`).
pub fn is_negative_definite(m: &[QVec]) -> bool {
    let n = m.len();
    (1..=n).all(|k| {
        let minor: QMat = m[..k].iter().map(|r| r.pick(&(0..k).collect::<Vec<_>>()).neg()).collect();
        det(&minor).is_positive()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratgeom::rat::{q, qi};

    #[test]
    fn det_and_solve() {
        let m = vec![QVec::from_ints(&[2, 1]), QVec::from_ints(&[1, 3])];
        assert_eq!(det(&m), qi(5));
        let x = solve(&m, &QVec::from_ints(&[1, 2])).unwrap();
        assert_eq!(x, QVec::new(vec![q(1, 5), q(3, 5)]));
        let sing = vec![QVec::from_ints(&[1, 2]), QVec::from_ints(&[2, 4])];
        assert!(solve(&sing, &QVec::from_ints(&[1, 1])).is_none());
    }

    #[test]
    fn nullspace_and_rank() {
        let m = vec![QVec::from_ints(&[1, 1, 0])];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m[0].dot(v).is_zero());
        }
        assert_eq!(rank(&ns), 2);
    }

    #[test]
    fn negative_definite() {
        assert!(is_negative_definite(&[QVec::from_ints(&[-2, 1]), QVec::from_ints(&[1, -2])]));
        assert!(!is_negative_definite(&[QVec::from_ints(&[-1, 2]), QVec::from_ints(&[2, -1])]));
    }

    #[test]
    fn coordinates_in_span() {
        let b = vec![QVec::from_ints(&[1, 0, 1]), QVec::from_ints(&[0, 1, 1])];
        assert_eq!(coords_in(&b, &QVec::from_ints(&[2, 3, 5])), Some(QVec::from_ints(&[2, 3])));
        assert_eq!(coords_in(&b, &QVec::from_ints(&[2, 3, 4])), None);
    }
}
