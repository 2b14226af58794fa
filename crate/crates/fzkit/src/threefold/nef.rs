use serde::{Deserialize, Serialize};

use super::tower::Tower;
use super::Result;
use crate::ratgeom::{QCone, QVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NefVerdict {
    Nef,
    NotNef,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionRecord {
    pub component: String,
    pub class: QVec,
    pub nef: bool,
    /// Name of a listed curve meeting the restriction negatively.
    pub failing_curve: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NefCertificate {
    pub verdict: NefVerdict,
    pub restrictions: Vec<RestrictionRecord>,
    /// Whether `d` is a nonnegative combination of the known nef classes and
    /// the components.
    pub decomposable: bool,
}

impl NefCertificate {
    pub fn is_nef(&self) -> Option<bool> {
        match self.verdict {
            NefVerdict::Nef => Some(true),
            NefVerdict::NotNef => Some(false),
            NefVerdict::Inconclusive => None,
        }
    }
}

/// Nefness of `d` on tower stage `stage` by restriction.
///
/// Write `d = N + Σ aᵢ Sᵢ` with `N` a pullback of a nef class and `aᵢ ≥ 0`.
/// A curve meeting `d` negatively lies in some `Sᵢ`, so `d` is nef once every
/// `d|_{Sᵢ}` is. A failing restriction exhibits a curve with `d·C < 0`
/// whatever the decomposition; without a decomposition and without a
/// failure the answer is inconclusive.
pub fn verify_nef3(tower: &Tower, stage: usize, d: &QVec) -> Result<NefCertificate> {
    let st = tower.stage(stage)?;
    let mut restrictions = Vec::with_capacity(st.components.len());
    for (i, c) in st.components.iter().enumerate() {
        let class = st.restrict(i, d)?;
        let bad = c.model.failing_curve(&class)?;
        let failing_curve = bad.as_ref().map(|k| c.model.curve_name(k).unwrap_or("unnamed generator").to_string());
        restrictions.push(RestrictionRecord { component: c.name.clone(), class, nef: bad.is_none(), failing_curve });
    }
    let mut gens: Vec<QVec> = (0..st.dim()).map(|i| QVec::unit(st.dim(), i)).collect();
    for n in &tower.nef_named {
        gens.push(tower.lift(0, stage, &tower.stages[0].named_class(n)?)?);
    }
    let decomposable = QCone::from_rays(st.dim(), gens)?.contains(d);
    let verdict = if restrictions.iter().any(|r| !r.nef) {
        NefVerdict::NotNef
    } else if decomposable {
        NefVerdict::Nef
    } else {
        NefVerdict::Inconclusive
    };
    Ok(NefCertificate { verdict, restrictions, decomposable })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratgeom::{q, qi, Rat};
    use crate::threefold::ModelFamily;

    #[test]
    fn cxjac_positive_part_is_nef() {
        let f = ModelFamily::cxjac(q(1, 2)).unwrap();
        let p = f.psigma(&q(5, 4)).unwrap().positive;
        let c = verify_nef3(f.tower(), p.stage, &p.class).unwrap();
        assert_eq!(c.verdict, NefVerdict::Nef);
        assert_eq!(c.restrictions.len(), 7);
    }

    fn failing(a: i64, b: i64, t: Rat) -> Vec<String> {
        let f = ModelFamily::cxp2(qi(a), qi(b)).unwrap();
        let c = verify_nef3(f.tower(), 0, &f.lt(0, &t).unwrap()).unwrap();
        assert_eq!(c.verdict, NefVerdict::NotNef);
        let mut bad: Vec<String> = c.restrictions.into_iter().filter_map(|r| r.failing_curve).collect();
        bad.dedup();
        bad
    }

    #[test]
    fn cxp2_past_seshadri_names_the_short_curve() {
        // L·C̄x = a − t and L·P̄¹x = b − t: the smaller of a, b decides.
        assert_eq!(failing(2, 3, q(5, 2)), vec!["Cx_bar"]);
        assert_eq!(failing(3, 2, q(5, 2)), vec!["P1x_bar"]);
    }

    #[test]
    fn ample_pullback_is_nef() {
        for f in [
            ModelFamily::cxp2(qi(1), qi(1)).unwrap(),
            ModelFamily::ccc(qi(2), qi(1), qi(1)).unwrap(),
            ModelFamily::cxjac(q(1, 3)).unwrap(),
        ] {
            let top = f.tower().top();
            let d = f.lt(top, &Rat::zero()).unwrap();
            assert_eq!(verify_nef3(f.tower(), top, &d).unwrap().verdict, NefVerdict::Nef);
        }
    }

    #[test]
    fn minus_e_is_not_certified() {
        // −E is not a nonnegative combination, so it is never certified nef.
        let f = ModelFamily::cxp2(qi(1), qi(1)).unwrap();
        let e = f.exceptional().unwrap().neg();
        let c = verify_nef3(f.tower(), 0, &e).unwrap();
        assert_ne!(c.verdict, NefVerdict::Nef);
    }
}
