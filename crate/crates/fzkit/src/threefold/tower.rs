use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Result, ThreefoldError};
use crate::pwl::PwlExpr;
use crate::ratgeom::{QVec, Rat};
use crate::surface::SurfaceModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CenterKind {
    Point,
    Curve,
}

/// A blow-up center. For a curve with normal bundle of degrees `(−δ₁, −δ₂)`,
/// `degrees` holds `[δ₁, δ₂]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Center {
    pub divisor: String,
    pub kind: CenterKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<[i64; 2]>,
}

impl Center {
    /// Self-intersection cube of the exceptional divisor at creation.
    pub fn expected_cube(&self) -> Rat {
        match (self.kind, self.degrees) {
            (CenterKind::Point, _) => Rat::one(),
            (CenterKind::Curve, Some([d1, d2])) => Rat::int(d1 + d2),
            (CenterKind::Curve, None) => Rat::zero(),
        }
    }
}

/// A prime component surface with its restriction columns: each stage basis
/// divisor (and each named class) maps to a class on `model`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub name: String,
    pub parent: Option<String>,
    pub model: SurfaceModel,
    pub restrict: BTreeMap<String, QVec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub name: String,
    pub basis: Vec<String>,
    pub named: BTreeMap<String, BTreeMap<String, Rat>>,
    pub centers: Vec<Center>,
    pub components: Vec<Component>,
    /// Pullback of each previous-stage basis divisor; absent on the first stage.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pullback: Option<BTreeMap<String, BTreeMap<String, Rat>>>,
}

/// A divisor class on one tower stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divisor3 {
    pub stage: usize,
    pub class: QVec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Carrier {
    pub component: String,
    pub flag: QVec,
}

/// Slice bounds of the body: `t ≤ t_max`, `x ≤ x_max`, `y ≤ y_max`, with
/// `ledger` entries that may mention `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BodySpec {
    pub t_max: String,
    pub x_max: String,
    pub y_max: String,
    #[serde(default)]
    pub ledger: Vec<(String, String)>,
}

pub type Labeled = Vec<(String, BTreeMap<String, Rat>)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeSpec {
    pub effective: Labeled,
    pub movable: Labeled,
    pub movable_inequalities: Vec<QVec>,
    /// `(component, curve)` pairs whose classes bound the nef cone.
    pub nef_test_curves: Vec<(String, String)>,
    pub nef_expected: Labeled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tower {
    pub family: String,
    pub params: Vec<String>,
    pub polarization: BTreeMap<String, String>,
    pub exceptional: String,
    pub stages: Vec<Stage>,
    pub nef_named: Vec<String>,
    #[serde(default)]
    pub ledger: Vec<(String, String)>,
    #[serde(default)]
    pub identities: Vec<(String, String)>,
    pub positive: Vec<BTreeMap<String, String>>,
    pub carrier: Carrier,
    pub body: BodySpec,
    #[serde(default)]
    pub body_closed: Option<BodySpec>,
    #[serde(default)]
    pub cones: Option<ConeSpec>,
}

fn data_err<T>(msg: String) -> Result<T> {
    Err(ThreefoldError::Data(msg))
}

impl Stage {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| ThreefoldError::Data(format!("`{name}` is not a basis divisor of stage {}", self.name)))
    }

    pub fn component(&self, name: &str) -> Result<&Component> {
        self.components
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| ThreefoldError::Data(format!("no component `{name}` on stage {}", self.name)))
    }

    /// Class from `(basis divisor, coefficient)` entries.
    pub fn class(&self, terms: &BTreeMap<String, Rat>) -> Result<QVec> {
        let mut v = QVec::zeros(self.dim());
        for (n, c) in terms {
            v[self.index(n)?] += c;
        }
        Ok(v)
    }

    pub fn named_class(&self, name: &str) -> Result<QVec> {
        match self.named.get(name) {
            Some(t) => self.class(t),
            None => Ok(QVec::unit(self.dim(), self.index(name)?)),
        }
    }

    fn check_len(&self, d: &QVec) -> Result<()> {
        if d.dim() == self.dim() {
            Ok(())
        } else {
            data_err(format!("class of length {} on stage {} of dimension {}", d.dim(), self.name, self.dim()))
        }
    }

    /// `d|_S` for the component with index `comp`.
    pub fn restrict(&self, comp: usize, d: &QVec) -> Result<QVec> {
        self.check_len(d)?;
        let c = &self.components[comp];
        let mut out = QVec::zeros(c.model.dim());
        for (b, x) in self.basis.iter().zip(d.iter()) {
            if !x.is_zero() {
                out = out.axpy(x, &c.restrict[b]);
            }
        }
        Ok(out)
    }

    /// `d1·d2·d3`, expanding `d1` over the components.
    pub fn triple(&self, d1: &QVec, d2: &QVec, d3: &QVec) -> Result<Rat> {
        self.check_len(d1)?;
        let mut sum = Rat::zero();
        for (i, a) in d1.iter().enumerate() {
            if !a.is_zero() {
                sum += a * &self.triple_on(i, d2, d3)?;
            }
        }
        Ok(sum)
    }

    /// `S_i·d2·d3` computed on the surface `S_i`.
    pub fn triple_on(&self, comp: usize, d2: &QVec, d3: &QVec) -> Result<Rat> {
        let m = &self.components[comp].model;
        Ok(m.dot(&self.restrict(comp, d2)?, &self.restrict(comp, d3)?))
    }

    fn validate(&self) -> Result<()> {
        let names: Vec<&str> = self.components.iter().map(|c| c.name.as_str()).collect();
        if names != self.basis.iter().map(String::as_str).collect::<Vec<_>>() {
            return data_err(format!("stage {}: components do not match the basis", self.name));
        }
        for c in &self.components {
            c.model.validate()?;
            for key in &self.basis {
                match c.restrict.get(key) {
                    Some(col) if col.dim() == c.model.dim() => {}
                    _ => return data_err(format!("stage {}: bad restriction column {key} on {}", self.name, c.name)),
                }
            }
            // Optional named columns must be the combination of basis columns.
            for (n, terms) in &self.named {
                let mut col = QVec::zeros(c.model.dim());
                for (b, x) in terms {
                    self.index(b)?;
                    col = col.axpy(x, &c.restrict[b]);
                }
                if c.restrict.get(n).is_some_and(|have| have != &col) {
                    return data_err(format!("stage {}: column {n} on {} is not the combination", self.name, c.name));
                }
            }
        }
        let n = self.dim();
        let e = |i| QVec::unit(n, i);
        for i in 0..n {
            for j in 0..n {
                for k in j..n {
                    let a = self.triple_on(i, &e(j), &e(k))?;
                    let b = self.triple_on(j, &e(i), &e(k))?;
                    let c = self.triple_on(k, &e(i), &e(j))?;
                    if a != b || a != c {
                        return data_err(format!(
                            "stage {}: triple ({}, {}, {}) differs by route: {a}, {b}, {c}",
                            self.name, self.basis[i], self.basis[j], self.basis[k]
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

impl Tower {
    pub fn parse(json: &str) -> Result<Tower> {
        let t: Tower = serde_json::from_str(json).map_err(|e| ThreefoldError::Data(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }

    pub fn top(&self) -> usize {
        self.stages.len() - 1
    }

    pub fn stage(&self, k: usize) -> Result<&Stage> {
        self.stages.get(k).ok_or_else(|| ThreefoldError::Data(format!("no stage {k}")))
    }

    /// Pullback of a class on stage `k − 1` to stage `k`.
    pub fn pullback(&self, k: usize, d: &QVec) -> Result<QVec> {
        let (prev, cur) = (self.stage(k.wrapping_sub(1))?, self.stage(k)?);
        prev.check_len(d)?;
        let map = cur.pullback.as_ref().ok_or_else(|| ThreefoldError::Data(format!("stage {k} has no pullback")))?;
        let mut out = QVec::zeros(cur.dim());
        for (b, x) in prev.basis.iter().zip(d.iter()) {
            let terms = map.get(b).ok_or_else(|| ThreefoldError::Data(format!("no pullback of {b}")))?;
            out = out.axpy(x, &cur.class(terms)?);
        }
        Ok(out)
    }

    /// Cycle pushforward of a stage-`k` class to stage `k − 1`: strict
    /// transforms go to their parents, new exceptional divisors to zero.
    pub fn pushforward(&self, k: usize, d: &QVec) -> Result<QVec> {
        let (prev, cur) = (self.stage(k.wrapping_sub(1))?, self.stage(k)?);
        cur.check_len(d)?;
        let mut out = QVec::zeros(prev.dim());
        for (c, x) in cur.components.iter().zip(d.iter()) {
            if let Some(p) = &c.parent {
                out[prev.index(p)?] += x;
            }
        }
        Ok(out)
    }

    /// Pulls a stage-`from` class up to stage `to ≥ from`.
    pub fn lift(&self, from: usize, to: usize, d: &QVec) -> Result<QVec> {
        (from + 1..=to).try_fold(d.clone(), |v, k| self.pullback(k, &v))
    }

    /// `text` over parameters and `t` (and `x` for body bounds), with the
    /// ledger and then `extra` entries substituted away.
    pub fn resolve(&self, text: &str, extra: &[(String, String)]) -> Result<PwlExpr> {
        let mut resolved: Vec<(&str, PwlExpr)> = Vec::new();
        for (name, entry) in self.ledger.iter().chain(extra) {
            let e = entry.parse::<PwlExpr>()?.substitute_all(resolved.iter().map(|(n, e)| (*n, e)));
            resolved.push((name, e));
        }
        Ok(text.parse::<PwlExpr>()?.substitute_all(resolved.iter().rev().map(|(n, e)| (*n, e))))
    }

    /// `[t_max, x_max, y_max]` of a body description, resolved.
    pub fn resolve_body(&self, spec: &BodySpec) -> Result<[PwlExpr; 3]> {
        Ok([
            self.resolve(&spec.t_max, &spec.ledger)?,
            self.resolve(&spec.x_max, &spec.ledger)?,
            self.resolve(&spec.y_max, &spec.ledger)?,
        ])
    }

    pub fn validate(&self) -> Result<()> {
        if self.stages.is_empty() {
            return data_err("tower has no stages".into());
        }
        if self.positive.len() != self.stages.len() {
            return data_err("one positive-part table per stage is required".into());
        }
        for (k, st) in self.stages.iter().enumerate() {
            st.validate()?;
            for key in self.positive[k].keys() {
                st.index(key)?;
            }
            for expr in self.positive[k].values() {
                expr.parse::<PwlExpr>()?;
            }
            for c in &st.centers {
                let d = st.named_class(&c.divisor)?;
                let cube = st.triple(&d, &d, &d)?;
                if cube != c.expected_cube() {
                    return data_err(format!("stage {}: ({})³ = {cube}, center predicts {}", st.name, c.divisor, c.expected_cube()));
                }
            }
            if k == 0 {
                if st.pullback.is_some() || st.components.iter().any(|c| c.parent.is_some()) {
                    return data_err("first stage cannot have a pullback or parents".into());
                }
                continue;
            }
            let prev = &self.stages[k - 1];
            let n = prev.dim();
            let ups: Vec<QVec> = (0..n).map(|i| self.pullback(k, &QVec::unit(n, i))).collect::<Result<_>>()?;
            for i in 0..n {
                if self.pushforward(k, &ups[i])? != QVec::unit(n, i) {
                    return data_err(format!("stage {}: pushforward of the pullback of {} is wrong", st.name, prev.basis[i]));
                }
                for j in i..n {
                    for l in j..n {
                        let lo = prev.triple(&QVec::unit(n, i), &QVec::unit(n, j), &QVec::unit(n, l))?;
                        let hi = st.triple(&ups[i], &ups[j], &ups[l])?;
                        if lo != hi {
                            return data_err(format!("stage {}: pullback changes a triple product", st.name));
                        }
                    }
                }
            }
            for name in prev.named.keys().filter(|n| st.named.contains_key(*n)) {
                if self.pullback(k, &prev.named_class(name)?)? != st.named_class(name)? {
                    return data_err(format!("stage {}: named class {name} is not a pullback", st.name));
                }
            }
            for c in &st.components {
                if let Some(p) = &c.parent {
                    prev.index(p)?;
                }
            }
        }
        let top = self.stage(self.top())?;
        top.component(&self.carrier.component)?;
        for n in self.nef_named.iter().chain(self.polarization.keys()).chain([&self.exceptional]) {
            self.stages[0].named_class(n)?;
        }
        for (_, e) in self.ledger.iter().chain(&self.body.ledger) {
            e.parse::<PwlExpr>()?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratgeom::qi;
    use crate::threefold::FamilyKind;

    fn cube(kind: FamilyKind, stage: usize, name: &str) -> Rat {
        let t = kind.tower();
        let s = &t.stages[stage];
        let d = s.named_class(name).unwrap();
        s.triple(&d, &d, &d).unwrap()
    }

    #[test]
    fn exceptional_cubes() {
        assert_eq!(cube(FamilyKind::CxP2, 0, "E"), qi(1));
        assert_eq!(cube(FamilyKind::Ccc, 0, "E"), qi(1));
        assert_eq!(cube(FamilyKind::CxJac, 0, "E"), qi(1));
        assert_eq!(cube(FamilyKind::CxP2, 1, "G"), qi(2));
        assert_eq!(cube(FamilyKind::CxJac, 1, "FR"), qi(10));
        assert_eq!(cube(FamilyKind::CxJac, 2, "G"), qi(6));
        assert_eq!(cube(FamilyKind::CxJac, 3, "N"), qi(4));
    }

    #[test]
    fn pushforward_undoes_pullback() {
        for kind in FamilyKind::ALL {
            let t = kind.tower();
            for k in 1..t.stages.len() {
                let n = t.stages[k - 1].dim();
                let v = QVec::new((0..n).map(|i| Rat::new(i as i64 + 1, 3)).collect());
                assert_eq!(t.pushforward(k, &t.pullback(k, &v).unwrap()).unwrap(), v);
            }
        }
    }

    #[test]
    fn corrupted_column_is_rejected() {
        let mut t = FamilyKind::CxP2.tower().clone();
        let col = t.stages[0].components[1].restrict.get_mut("E").unwrap();
        col[2] = qi(2);
        assert!(matches!(t.validate(), Err(ThreefoldError::Data(_))));
    }
}
