//! Néron–Severi models of surfaces and the decompositions computed on them.
//!
//! A [`SurfaceModel`] is a lattice basis with its intersection form, the
//! candidate curves that may carry negative parts, and optional generators of
//! the Mori and effective cones. Zariski decomposition is the classical
//! fixpoint on the listed curves; it runs over "value plus infinitesimal
//! slope" pairs so the polygon sweep can ask for the support just to the
//! right of a parameter value.

mod builders;
mod nobody;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::ratgeom::{linalg, GeomError, QCone, QVec, Rat};

pub use builders::{
    blowup_point, builtin_model, p2blow7_model, p2blow7_symmetric_cones, ruled_surface, SymmetricCones,
    BUILTIN_MODELS,
};
pub use nobody::{nobody_surface, nobody_sweep, BetaSegment};

pub const INCOMPLETE_CURVES: &str = "model's negative-curve list is incomplete or class not pseudoeffective";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("{INCOMPLETE_CURVES} ({detail})")]
    Incomplete { detail: String },
    #[error("model has no Mori generators")]
    NoMoriGenerators,
    #[error("model has no effective generators")]
    NoEffectiveGenerators,
    #[error("class is not big")]
    NotBig,
    #[error("unsuitable flag curve: {0}")]
    BadFlag(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("ruled surface needs d1 >= d2, got ({0}, {1})")]
    RuledDegrees(i64, i64),
    #[error("class has length {got}, model basis has {expected}")]
    Length { expected: usize, got: usize },
    #[error("sweep certificate failed at t = {0}")]
    Certificate(Rat),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

pub type Result<T> = std::result::Result<T, SurfaceError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Curve {
    pub name: String,
    pub class: QVec,
    /// Curves with nonnegative self-intersection kept only as test curves.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub auxiliary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceModel {
    pub name: String,
    pub basis_names: Vec<String>,
    pub pairing: Vec<QVec>,
    pub negative_curves: Vec<Curve>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mori_generators: Option<Vec<QVec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effective_generators: Option<Vec<QVec>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZariskiDecomp {
    pub positive: QVec,
    /// Strictly positive coefficients only, keyed by curve name.
    pub negative_coeffs: BTreeMap<String, Rat>,
}

impl SurfaceModel {
    pub fn validate(&self) -> Result<()> {
        let n = self.basis_names.len();
        let bad = |m: String| Err(SurfaceError::InvalidModel(m));
        if self.pairing.len() != n || self.pairing.iter().any(|r| r.dim() != n) {
            return bad("pairing is not square of basis size".into());
        }
        for i in 0..n {
            for j in 0..i {
                if self.pairing[i][j] != self.pairing[j][i] {
                    return bad(format!("pairing not symmetric at ({i}, {j})"));
                }
            }
        }
        for c in &self.negative_curves {
            self.check_len(&c.class)?;
            if !c.auxiliary && !self.dot(&c.class, &c.class).is_negative() {
                return bad(format!("curve {} has C² ≥ 0 but is not auxiliary", c.name));
            }
        }
        for g in self.mori_generators.iter().chain(&self.effective_generators).flatten() {
            self.check_len(g)?;
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn check_len(&self, v: &QVec) -> Result<()> {
        if v.dim() == self.dim() {
            Ok(())
        } else {
            Err(SurfaceError::Length { expected: self.dim(), got: v.dim() })
        }
    }

    pub fn dot(&self, a: &QVec, b: &QVec) -> Rat {
        linalg::bilinear(&self.pairing, a, b)
    }

    pub fn curve(&self, name: &str) -> Result<&Curve> {
        self.negative_curves
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| SurfaceError::UnknownCurve(name.to_string()))
    }

    /// Class from `(basis name, coefficient)` pairs.
    pub fn class(&self, terms: &[(&str, Rat)]) -> Result<QVec> {
        let mut v = QVec::zeros(self.dim());
        for (n, c) in terms {
            let i = self
                .basis_names
                .iter()
                .position(|b| b == n)
                .ok_or_else(|| SurfaceError::UnknownCurve(n.to_string()))?;
            v[i] += c;
        }
        Ok(v)
    }

    pub fn is_nef(&self, d: &QVec) -> Result<bool> {
        Ok(self.failing_curve(d)?.is_none())
    }

    /// First Mori generator meeting `d` negatively, if any.
    pub fn failing_curve(&self, d: &QVec) -> Result<Option<QVec>> {
        self.check_len(d)?;
        let gens = self.mori_generators.as_ref().ok_or(SurfaceError::NoMoriGenerators)?;
        Ok(gens.iter().find(|g| self.dot(d, g).is_negative()).cloned())
    }

    /// Name of a listed curve with this class, for diagnostics.
    pub fn curve_name(&self, class: &QVec) -> Option<&str> {
        self.negative_curves.iter().find(|c| &c.class == class).map(|c| c.name.as_str())
    }

    fn effective_cone(&self) -> Result<QCone> {
        let gens = self.effective_generators.as_ref().ok_or(SurfaceError::NoEffectiveGenerators)?;
        Ok(QCone::from_rays(self.dim(), gens.clone())?)
    }

    pub fn is_pseudoeffective(&self, d: &QVec) -> Result<bool> {
        self.check_len(d)?;
        Ok(self.effective_cone()?.contains(d))
    }

    /// Relative interior of the effective cone (the cone may span a proper
    /// subspace, as for symmetric slices).
    pub fn is_big(&self, d: &QVec) -> Result<bool> {
        self.check_len(d)?;
        if self.effective_generators.is_none() {
            let z = zariski(self, d)?;
            return Ok(self.dot(&z.positive, &z.positive).is_positive());
        }
        let (ineqs, eqs) = self.effective_cone()?.facets();
        Ok(ineqs.iter().all(|a| a.dot(d).is_positive()) && eqs.iter().all(|b| b.dot(d).is_zero()))
    }

    /// `sup { t ≥ 0 : d − t·c pseudoeffective }`.
    pub fn mu_along(&self, d: &QVec, c: &QVec) -> Result<Rat> {
        let (ineqs, eqs) = self.effective_cone()?.facets();
        if eqs.iter().any(|b| !b.dot(d).is_zero() || !b.dot(c).is_zero()) {
            return Err(SurfaceError::NotBig);
        }
        let mut best: Option<Rat> = None;
        for a in &ineqs {
            let ac = a.dot(c);
            if ac.is_positive() {
                let t = a.dot(d) / ac;
                best = Some(match best {
                    Some(b) if b <= t => b,
                    _ => t,
                });
            }
        }
        best.ok_or(SurfaceError::NotBig)
    }
}

fn lex_sign(v0: &Rat, v1: &Rat) -> i32 {
    match v0.signum() {
        0 => v1.signum(),
        s => s,
    }
}

/// Zariski data for `d0 + ε·d1` with `ε` a positive infinitesimal: the
/// support, and the negative coefficients as value and slope.
pub(crate) struct LexZariski {
    pub support: Vec<usize>,
    pub x0: QVec,
    pub x1: QVec,
    pub p0: QVec,
    pub p1: QVec,
}

pub(crate) fn zariski_lex(model: &SurfaceModel, d0: &QVec, d1: &QVec) -> Result<LexZariski> {
    model.check_len(d0)?;
    model.check_len(d1)?;
    let curves: Vec<&Curve> = model.negative_curves.iter().filter(|c| !c.auxiliary).collect();
    let incomplete = |detail: String| SurfaceError::Incomplete { detail };
    let mut support: Vec<usize> = Vec::new();
    loop {
        let k = support.len();
        let (x0, x1) = if k == 0 {
            (QVec::zeros(0), QVec::zeros(0))
        } else {
            let gram: Vec<QVec> = support
                .iter()
                .map(|&i| support.iter().map(|&j| model.dot(&curves[i].class, &curves[j].class)).collect())
                .collect();
            if !linalg::is_negative_definite(&gram) {
                let names: Vec<&str> = support.iter().map(|&i| curves[i].name.as_str()).collect();
                return Err(incomplete(format!("support {names:?} is not negative definite")));
            }
            let b0: QVec = support.iter().map(|&i| model.dot(d0, &curves[i].class)).collect();
            let b1: QVec = support.iter().map(|&i| model.dot(d1, &curves[i].class)).collect();
            let solve = |b: &QVec| linalg::solve(&gram, b).ok_or_else(|| incomplete("singular support".into()));
            (solve(&b0)?, solve(&b1)?)
        };
        for (pos, &i) in support.iter().enumerate() {
            if lex_sign(&x0[pos], &x1[pos]) < 0 {
                return Err(incomplete(format!("negative coefficient on {}", curves[i].name)));
            }
        }
        let mut p0 = d0.clone();
        let mut p1 = d1.clone();
        for (pos, &i) in support.iter().enumerate() {
            p0 = p0.axpy(&-x0[pos].clone(), &curves[i].class);
            p1 = p1.axpy(&-x1[pos].clone(), &curves[i].class);
        }
        let grow: Vec<usize> = (0..curves.len())
            .filter(|i| !support.contains(i))
            .filter(|&i| lex_sign(&model.dot(&p0, &curves[i].class), &model.dot(&p1, &curves[i].class)) < 0)
            .collect();
        if grow.is_empty() {
            for c in model.negative_curves.iter().filter(|c| c.auxiliary) {
                if lex_sign(&model.dot(&p0, &c.class), &model.dot(&p1, &c.class)) < 0 {
                    return Err(incomplete(format!("positive part meets {} negatively", c.name)));
                }
            }
            let to_model_index = |s: &[usize]| -> Vec<usize> {
                s.iter()
                    .map(|&i| {
                        model.negative_curves.iter().position(|c| std::ptr::eq(c, curves[i])).unwrap_or(i)
                    })
                    .collect()
            };
            return Ok(LexZariski { support: to_model_index(&support), x0, x1, p0, p1 });
        }
        support.extend(grow);
    }
}

/// Zariski decomposition of `d` relative to the model's listed curves.
pub fn zariski(model: &SurfaceModel, d: &QVec) -> Result<ZariskiDecomp> {
    let z = zariski_lex(model, d, &QVec::zeros(d.dim()))?;
    let mut negative_coeffs = BTreeMap::new();
    for (pos, &i) in z.support.iter().enumerate() {
        if z.x0[pos].is_positive() {
            negative_coeffs.insert(model.negative_curves[i].name.clone(), z.x0[pos].clone());
        }
    }
    Ok(ZariskiDecomp { positive: z.p0, negative_coeffs })
}

impl ZariskiDecomp {
    /// `P + Σ cᵢ Cᵢ`.
    pub fn total(&self, model: &SurfaceModel) -> Result<QVec> {
        let mut d = self.positive.clone();
        for (n, c) in &self.negative_coeffs {
            d = d.axpy(c, &model.curve(n)?.class);
        }
        Ok(d)
    }

    pub fn negative_class(&self, model: &SurfaceModel) -> Result<QVec> {
        Ok(self.total(model)?.sub(&self.positive))
    }

    /// Checks every defining property against the model.
    pub fn verify(&self, model: &SurfaceModel, d: &QVec) -> Result<()> {
        let fail = |m: String| Err(SurfaceError::Incomplete { detail: m });
        if &self.total(model)? != d {
            return fail("P + N differs from d".into());
        }
        let mut gram = Vec::new();
        for (n, c) in &self.negative_coeffs {
            let cc = &model.curve(n)?.class;
            if !c.is_positive() {
                return fail(format!("coefficient of {n} is not positive"));
            }
            if !model.dot(&self.positive, cc).is_zero() {
                return fail(format!("P·{n} ≠ 0"));
            }
            gram.push(
                self.negative_coeffs
                    .keys()
                    .map(|m| Ok(model.dot(cc, &model.curve(m)?.class)))
                    .collect::<Result<QVec>>()?,
            );
        }
        if !gram.is_empty() && !linalg::is_negative_definite(&gram) {
            return fail("support Gram matrix not negative definite".into());
        }
        for c in &model.negative_curves {
            if model.dot(&self.positive, &c.class).is_negative() {
                return fail(format!("P·{} < 0", c.name));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qv;
    use crate::ratgeom::{q, qi};

    #[test]
    fn two_curves_decomposition() {
        let m = builtin_model("two_curves").unwrap();
        // d1 = 2, d2 = 1, t = 3/2.
        let d = qv![2, 1, q(-3, 2)];
        let z = zariski(&m, &d).unwrap();
        z.verify(&m, &d).unwrap();
        assert_eq!(z.negative_coeffs, BTreeMap::from([("f1bar".to_string(), q(1, 2))]));
        let expect = m.curve("f1bar").unwrap().class.scale(&q(3, 2))
            .add(&m.curve("f2bar").unwrap().class)
            .add(&m.curve("E").unwrap().class.scale(&q(3, 2)));
        assert_eq!(z.positive, expect);
    }

    #[test]
    fn jacobian_decomposition_and_nefness() {
        let m = builtin_model("genus2_jacobian").unwrap();
        let z = zariski(&m, &qv![1, q(-7, 5)]).unwrap();
        assert_eq!(z.positive, qv![q(3, 5), q(-4, 5)]);
        assert_eq!(z.negative_coeffs.keys().collect::<Vec<_>>(), vec!["Rbar"]);
        assert!(m.is_nef(&qv![1, q(-4, 3)]).unwrap());
        assert!(!m.is_nef(&qv![1, q(-7, 5)]).unwrap());
        assert!(m.is_nef(&qv![0, 0]).unwrap());
    }

    #[test]
    fn nef_input_is_its_own_positive_part() {
        let m = builtin_model("genus2_jacobian").unwrap();
        let d = qv![1, q(-1, 2)];
        let z = zariski(&m, &d).unwrap();
        assert_eq!(z.positive, d);
        assert!(z.negative_coeffs.is_empty());
    }

    #[test]
    fn non_pseudoeffective_class_is_reported() {
        let m = builtin_model("genus2_jacobian").unwrap();
        let err = zariski(&m, &qv![-1, 0]).unwrap_err();
        assert!(err.to_string().contains(INCOMPLETE_CURVES));
    }

    #[test]
    fn missing_mori_generators() {
        let mut m = builtin_model("genus2_jacobian").unwrap();
        m.mori_generators = None;
        assert_eq!(m.is_nef(&qv![1, 0]), Err(SurfaceError::NoMoriGenerators));
    }

    #[test]
    fn mu_along_exceptional() {
        let m = builtin_model("genus2_jacobian").unwrap();
        assert_eq!(m.mu_along(&qv![1, 0], &qv![0, 1]).unwrap(), q(3, 2));
        assert!(m.is_big(&qv![1, 0]).unwrap());
        assert!(!m.is_big(&qv![4, -6]).unwrap());
        let _ = qi(0);
    }
}
