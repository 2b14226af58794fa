use serde::{Deserialize, Serialize};

use super::{body, OkounkovError, Result};
use crate::ratgeom::{project, volume, Rat};
use crate::threefold::ModelFamily;

/// Largest `t` with `π*(L²) − t·ℓ` nonnegative on every stage-one component,
/// `ℓ` a line in `E`.
///
/// On a point blow-up `ℓ = −E²` as a curve class, so `ℓ·D = −(E·E·D)` and
/// `π*(L²)·D = (π*L·π*L·D)`.
pub fn seshadri_curve(family: &ModelFamily) -> Result<Rat> {
    let st = &family.tower().stages[0];
    let l = family.polarization()?;
    let e = family.exceptional()?;
    let mut best: Option<Rat> = None;
    for i in 0..st.dim() {
        let d = crate::ratgeom::QVec::unit(st.dim(), i);
        let mult = -st.triple(&e, &e, &d)?;
        if mult.is_positive() {
            let t = st.triple(&l, &l, &d)? / mult;
            best = Some(match best {
                Some(b) if b <= t => b,
                _ => t,
            });
        }
    }
    best.ok_or_else(|| OkounkovError::Consistency("no component bounds the curve class".into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AreaVerdict {
    Equality,
    Strict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AreaCheck {
    pub verdict: AreaVerdict,
    pub lhs: Rat,
    pub rhs: Rat,
}

/// Compares the curve Seshadri constant with twice the area of the body's
/// shadow after forgetting the first coordinate.
pub fn projection_area_check(family: &ModelFamily) -> Result<AreaCheck> {
    let lhs = seshadri_curve(family)?;
    let shadow = project(&body(family)?.polytope(), &[1, 2])?.to_v()?;
    let rhs = volume(&shadow)? * Rat::int(2);
    let verdict = match lhs.cmp(&rhs) {
        std::cmp::Ordering::Equal => AreaVerdict::Equality,
        std::cmp::Ordering::Greater => AreaVerdict::Strict,
        std::cmp::Ordering::Less => {
            return Err(OkounkovError::Consistency(format!("Seshadri constant {lhs} below twice the shadow area {rhs}")))
        }
    };
    Ok(AreaCheck { verdict, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratgeom::{q, qi};

    #[test]
    fn closed_forms() {
        let f = ModelFamily::cxp2(qi(3), qi(2)).unwrap();
        assert_eq!(seshadri_curve(&f).unwrap(), qi(4));
        let f = ModelFamily::cxp2(qi(1), qi(3)).unwrap();
        assert_eq!(seshadri_curve(&f).unwrap(), qi(6));
        let f = ModelFamily::ccc(qi(4), qi(3), qi(2)).unwrap();
        assert_eq!(seshadri_curve(&f).unwrap(), qi(12));
        let f = ModelFamily::cxjac(q(1, 2)).unwrap();
        assert_eq!(seshadri_curve(&f).unwrap(), q(1, 2));
    }

    #[test]
    fn strict_at_one_half() {
        let c = projection_area_check(&ModelFamily::cxjac(q(1, 2)).unwrap()).unwrap();
        assert_eq!((c.verdict, c.lhs, c.rhs), (AreaVerdict::Strict, q(1, 2), q(59, 126)));
    }
}
