use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::tower::{Divisor3, Tower};
use super::{Result, ThreefoldError};
use crate::pwl::{common_branches, cst, Env, PwlExpr};
use crate::ratgeom::{linalg, HPoly, QCone, QVec, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    CxP2,
    Ccc,
    CxJac,
}

static TOWERS: [OnceLock<Tower>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];

impl FamilyKind {
    pub const ALL: [FamilyKind; 3] = [FamilyKind::CxP2, FamilyKind::Ccc, FamilyKind::CxJac];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::CxP2 => "cxp2",
            FamilyKind::Ccc => "ccc",
            FamilyKind::CxJac => "cxjac",
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            FamilyKind::CxP2 => &["a", "b"],
            FamilyKind::Ccc => &["d1", "d2", "d3"],
            FamilyKind::CxJac => &["s"],
        }
    }

    /// The shipped tower, parsed and validated on first use.
    pub fn tower(self) -> &'static Tower {
        let (slot, json) = match self {
            FamilyKind::CxP2 => (&TOWERS[0], include_str!("../../data/cxp2_tower.json")),
            FamilyKind::Ccc => (&TOWERS[1], include_str!("../../data/ccc_tower.json")),
            FamilyKind::CxJac => (&TOWERS[2], include_str!("../../data/cxjac_tower.json")),
        };
        slot.get_or_init(|| match Tower::parse(json) {
            Ok(t) => t,
            Err(e) => panic!("shipped {} tower is invalid: {e}", self.name()),
        })
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = ThreefoldError;
    fn from_str(s: &str) -> Result<FamilyKind> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s.to_ascii_lowercase())
            .ok_or_else(|| ThreefoldError::BadParams(format!("unknown family `{s}` (expected cxp2, ccc or cxjac)")))
    }
}

/// A family member: the kind plus validated parameter values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFamily {
    pub kind: FamilyKind,
    pub params: BTreeMap<String, Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaDecomp3 {
    pub positive: Divisor3,
    /// Nonzero coefficients of the negative part, keyed by prime divisor.
    pub negative_coeffs: BTreeMap<String, Rat>,
}

/// `vol(L_t) = c0 + c1·t + c2·t² + c3·t³` on `[t0, t1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicPiece {
    pub t0: Rat,
    pub t1: Rat,
    pub coeffs: [Rat; 4],
}

impl CubicPiece {
    pub fn eval(&self, t: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * t + c)
    }
}

impl fmt::Display for CubicPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]: ", self.t0, self.t1)?;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ if mag == Rat::one() => write!(f, "t{}", pow_suffix(k))?,
                _ => write!(f, "{mag}*t{}", pow_suffix(k))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn pow_suffix(k: usize) -> String {
    if k == 1 {
        String::new()
    } else {
        format!("^{k}")
    }
}

/// Stage-one cones: generators as given, the nef cone derived from test curves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeData {
    pub basis: Vec<String>,
    pub effective: Vec<(String, QVec)>,
    pub movable: Vec<(String, QVec)>,
    pub movable_inequalities: Vec<QVec>,
    pub nef_inequalities: Vec<QVec>,
    pub nef_rays: Vec<QVec>,
    pub nef_expected: Vec<(String, QVec)>,
}

fn cone_of(dim: usize, gens: &[(String, QVec)]) -> Result<QCone> {
    Ok(QCone::from_rays(dim, gens.iter().map(|(_, v)| v.clone()).collect())?)
}

impl ConeData {
    pub fn effective_cone(&self) -> Result<QCone> {
        cone_of(self.basis.len(), &self.effective)
    }

    pub fn movable_cone(&self) -> Result<QCone> {
        cone_of(self.basis.len(), &self.movable)
    }

    pub fn nef_cone(&self) -> Result<QCone> {
        Ok(QCone::from_inequalities(self.basis.len(), &self.nef_inequalities)?)
    }
}

/// Extreme values of `t` for which `L − tE` stays in each cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub mu: Rat,
    pub epsilon: Rat,
    pub nu: Rat,
}

/// `sup { t ≥ 0 : l − t·e ∈ cone }`.
fn shoot(cone: &QCone, l: &QVec, e: &QVec) -> Result<Rat> {
    let (ineqs, eqs) = cone.facets();
    if eqs.iter().any(|b| !b.dot(l).is_zero() || !b.dot(e).is_zero()) {
        return Err(ThreefoldError::Consistency("ray leaves the span of the cone".into()));
    }
    ineqs
        .iter()
        .filter(|a| a.dot(e).is_positive())
        .map(|a| a.dot(l) / a.dot(e))
        .min()
        .ok_or_else(|| ThreefoldError::Consistency("ray never leaves the cone".into()))
}

impl ModelFamily {
    pub fn new(kind: FamilyKind, params: BTreeMap<String, Rat>) -> Result<ModelFamily> {
        let names = kind.param_names();
        if params.len() != names.len() || names.iter().any(|n| !params.contains_key(*n)) {
            return Err(ThreefoldError::BadParams(format!("{kind} expects parameters {}", names.join(", "))));
        }
        let p = |n: &str| &params[n];
        let ok = match kind {
            FamilyKind::CxP2 => p("a").is_positive() && p("b").is_positive(),
            FamilyKind::Ccc => p("d1") >= p("d2") && p("d2") >= p("d3") && p("d3").is_positive(),
            FamilyKind::CxJac => p("s").is_positive() && p("s") < &Rat::one(),
        };
        if !ok {
            let why = match kind {
                FamilyKind::CxP2 => "need a, b > 0",
                FamilyKind::Ccc => "need d1 >= d2 >= d3 > 0",
                FamilyKind::CxJac => "need 0 < s < 1",
            };
            return Err(ThreefoldError::BadParams(why.into()));
        }
        Ok(ModelFamily { kind, params })
    }

    /// Parameters in the order of [`FamilyKind::param_names`].
    pub fn from_values(kind: FamilyKind, values: &[Rat]) -> Result<ModelFamily> {
        let names = kind.param_names();
        if values.len() != names.len() {
            return Err(ThreefoldError::BadParams(format!("{kind} expects {} values", names.len())));
        }
        ModelFamily::new(kind, names.iter().map(|n| n.to_string()).zip(values.iter().cloned()).collect())
    }

    pub fn cxp2(a: Rat, b: Rat) -> Result<ModelFamily> {
        ModelFamily::from_values(FamilyKind::CxP2, &[a, b])
    }

    pub fn ccc(d1: Rat, d2: Rat, d3: Rat) -> Result<ModelFamily> {
        ModelFamily::from_values(FamilyKind::Ccc, &[d1, d2, d3])
    }

    pub fn cxjac(s: Rat) -> Result<ModelFamily> {
        ModelFamily::from_values(FamilyKind::CxJac, &[s])
    }

    pub fn tower(&self) -> &'static Tower {
        self.kind.tower()
    }

    pub fn param(&self, name: &str) -> &Rat {
        &self.params[name]
    }

    /// Parameters, `t`, and every ledger value at `t`.
    pub fn ledger_env(&self, t: &Rat) -> Result<Env> {
        let mut env: Env = self.params.clone();
        env.insert("t".into(), t.clone());
        for (name, text) in &self.tower().ledger {
            let v = text.parse::<PwlExpr>()?.eval(&env)?;
            env.insert(name.clone(), v);
        }
        Ok(env)
    }

    pub fn ledger_values(&self, t: &Rat) -> Result<BTreeMap<String, Rat>> {
        let mut env = self.ledger_env(t)?;
        env.retain(|k, _| self.tower().ledger.iter().any(|(n, _)| n == k));
        Ok(env)
    }

    /// Evaluates an expression over parameters, `t` and the ledger.
    pub fn eval(&self, expr: &str, t: &Rat) -> Result<Rat> {
        Ok(expr.parse::<PwlExpr>()?.eval(&self.ledger_env(t)?)?)
    }

    /// `expr` with ledger names resolved and every parameter not in `keep`
    /// replaced by its value.
    pub fn symbolic(&self, expr: &str, keep: &[&str]) -> Result<PwlExpr> {
        Ok(self.fix_params(self.tower().resolve(expr, &[])?, keep))
    }

    /// Replaces every parameter not in `keep` by its value.
    pub fn fix_params(&self, mut e: PwlExpr, keep: &[&str]) -> PwlExpr {
        for (n, v) in &self.params {
            if !keep.contains(&n.as_str()) {
                e = e.substitute(n, &cst(v.clone()));
            }
        }
        e
    }

    /// `μ(L; x)`, the largest `t` with `L_t` pseudoeffective.
    pub fn mu(&self) -> Result<Rat> {
        self.eval(&self.tower().body.t_max, &Rat::zero())
    }

    pub fn check_t(&self, t: &Rat) -> Result<()> {
        let mu = self.mu()?;
        if t.is_negative() || t > &mu {
            return Err(ThreefoldError::OutOfRange { t: Box::new(t.clone()), mu: Box::new(mu) });
        }
        Ok(())
    }

    /// Asserts every pair of alternative ledger forms agrees at `t`.
    pub fn check_identities(&self, t: &Rat) -> Result<()> {
        for (lhs, rhs) in &self.tower().identities {
            let (a, b) = (self.eval(lhs, t)?, self.eval(rhs, t)?);
            if a != b {
                return Err(ThreefoldError::Consistency(format!("{lhs} = {a} but {rhs} = {b} at t = {t}")));
            }
        }
        Ok(())
    }

    /// `π*L` on stage one.
    pub fn polarization(&self) -> Result<QVec> {
        let tw = self.tower();
        let st = &tw.stages[0];
        let mut v = QVec::zeros(st.dim());
        for (name, coef) in &tw.polarization {
            v = v.axpy(&self.eval(coef, &Rat::zero())?, &st.named_class(name)?);
        }
        Ok(v)
    }

    pub fn exceptional(&self) -> Result<QVec> {
        let tw = self.tower();
        tw.stages[0].named_class(&tw.exceptional)
    }

    /// `L_t = π*L − tE`, pulled back to `stage`.
    pub fn lt(&self, stage: usize, t: &Rat) -> Result<QVec> {
        let v = self.polarization()?.axpy(&-t.clone(), &self.exceptional()?);
        self.tower().lift(0, stage, &v)
    }

    /// Closed-form positive part on `stage`.
    pub fn positive(&self, stage: usize, t: &Rat) -> Result<QVec> {
        self.check_t(t)?;
        let tw = self.tower();
        let st = tw.stage(stage)?;
        let env = self.ledger_env(t)?;
        let mut v = QVec::zeros(st.dim());
        for (comp, text) in &tw.positive[stage] {
            v[st.index(comp)?] = text.parse::<PwlExpr>()?.eval(&env)?;
        }
        Ok(v)
    }

    /// `P_σ` and `N_σ` of `L_t` on the top stage.
    pub fn psigma(&self, t: &Rat) -> Result<SigmaDecomp3> {
        let tw = self.tower();
        let top = tw.top();
        let p = self.positive(top, t)?;
        let n = self.lt(top, t)?.sub(&p);
        let st = &tw.stages[top];
        let mut negative_coeffs = BTreeMap::new();
        for (name, c) in st.basis.iter().zip(n.iter()) {
            if c.is_negative() {
                return Err(ThreefoldError::Consistency(format!("negative part has coefficient {c} on {name}")));
            }
            if c.is_positive() {
                negative_coeffs.insert(name.clone(), c.clone());
            }
        }
        Ok(SigmaDecomp3 { positive: Divisor3 { stage: top, class: p }, negative_coeffs })
    }

    /// The family's closed-form volume of `L_t`.
    pub fn vol_closed(&self, t: &Rat) -> Result<Rat> {
        self.check_t(t)?;
        let env = self.ledger_env(t)?;
        let g = |n: &str| env[n].clone();
        let i = |k: i64| Rat::int(k);
        Ok(match self.kind {
            FamilyKind::CxP2 => {
                let (a, b) = (g("a"), g("b"));
                i(3) * Rat::min(&a, &(&a + &b - t)) * b.pow(2) - Rat::min(t, &b).pow(3) + (t - &a).pos().pow(3)
            }
            FamilyKind::Ccc => {
                let n = [g("n1"), g("n2"), g("n3")];
                let m = [g("m1"), g("m2"), g("m3")];
                let tau = g("tau");
                let sn = &n[0] + &n[1] + &n[2] - &tau;
                let w: Vec<Rat> = (0..3).map(|k| &n[(k + 1) % 3] + &n[(k + 2) % 3] - &m[k]).collect();
                let mut v = i(6) * &n[0] * &n[1] * &n[2] - sn.pow(3);
                for k in 0..3 {
                    v = v - i(3) * &n[k] * w[k].pow(2) + i(3) * &sn * w[k].pow(2) - i(2) * w[k].pow(3);
                }
                v
            }
            FamilyKind::CxJac => {
                let (e, j, y, r, c) = (g("e"), g("j"), g("y"), g("r"), g("c"));
                let u = &j + &y - &r;
                let v = i(6) * &y - &c;
                i(96) * &j * y.pow(2) - (&j + i(6) * &y - &e).pow(3)
                    + i(9) * u.pow(2) * (&j + i(2) * &r - i(3) * &e)
                    - v.pow(2) * (i(3) * &e - i(6) * &y - i(2) * &c)
            }
        })
    }

    /// `vol(L_t)`, from the closed form and as `(P_σ)³`; the two must agree.
    pub fn vol_ray(&self, t: &Rat) -> Result<Rat> {
        let closed = self.vol_closed(t)?;
        let p = self.psigma(t)?.positive;
        let st = self.tower().stage(p.stage)?;
        let cube = st.triple(&p.class, &p.class, &p.class)?;
        if cube != closed {
            return Err(ThreefoldError::Consistency(format!(
                "{}: closed-form volume {closed} but (P_σ)³ = {cube} at t = {t}",
                self.kind
            )));
        }
        Ok(closed)
    }

    /// Breakpoints in `t` of every ledger and positive-part expression.
    pub fn breakpoints(&self) -> Result<Vec<Rat>> {
        let tw = self.tower();
        let mu = self.mu()?;
        let exprs: Vec<PwlExpr> = tw
            .ledger
            .iter()
            .map(|(n, _)| n.as_str())
            .chain(tw.positive[tw.top()].values().map(String::as_str))
            .map(|e| self.symbolic(e, &[]))
            .collect::<Result<_>>()?;
        let domain = HPoly::cube(&[Rat::zero()], std::slice::from_ref(&mu));
        let mut pts = vec![Rat::zero(), mu];
        for cell in common_branches(&exprs, &["t"], &domain)? {
            for v in cell.guard.to_v()?.vertices() {
                pts.push(v[0].clone());
            }
        }
        pts.sort();
        pts.dedup();
        Ok(pts)
    }

    /// `vol(L_t)` as cubic pieces between consecutive breakpoints, fitted
    /// through four points and checked at two more. Adjacent pieces with the
    /// same polynomial are merged.
    pub fn volume_pieces(&self) -> Result<Vec<CubicPiece>> {
        let bps = self.breakpoints()?;
        let mut out: Vec<CubicPiece> = Vec::new();
        for w in bps.windows(2) {
            let (t0, t1) = (&w[0], &w[1]);
            let at = |k: i64, d: i64| t0 + (t1 - t0) * Rat::new(k, d);
            let ts = [t0.clone(), at(1, 3), at(2, 3), t1.clone()];
            let rows: Vec<QVec> = ts.iter().map(|t| QVec::new((0..4).map(|k| t.pow(k)).collect())).collect();
            let vals = QVec::new(ts.iter().map(|t| self.vol_ray(t)).collect::<Result<_>>()?);
            let c = linalg::solve(&rows, &vals)
                .ok_or_else(|| ThreefoldError::Consistency("singular cubic fit".into()))?;
            let piece = CubicPiece { t0: t0.clone(), t1: t1.clone(), coeffs: [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()] };
            for probe in [at(1, 2), at(1, 5)] {
                if piece.eval(&probe) != self.vol_ray(&probe)? {
                    return Err(ThreefoldError::Consistency(format!("volume is not cubic on [{t0}, {t1}]")));
                }
            }
            match out.last_mut() {
                Some(prev) if prev.coeffs == piece.coeffs => prev.t1 = piece.t1,
                _ => out.push(piece),
            }
        }
        Ok(out)
    }

    /// `t,vol` rows from 0 to μ at the given step (μ always included).
    pub fn volume_csv(&self, step: &Rat) -> Result<String> {
        if !step.is_positive() {
            return Err(ThreefoldError::BadParams("step must be positive".into()));
        }
        let mu = self.mu()?;
        let mut s = String::from("t,vol\n");
        let mut t = Rat::zero();
        while t < mu {
            s.push_str(&format!("{t},{}\n", self.vol_ray(&t)?));
            t = &t + step;
        }
        s.push_str(&format!("{mu},{}\n", self.vol_ray(&mu)?));
        Ok(s)
    }

    /// Stage-one cones, with the nef cone derived from the test curves and
    /// checked against the expected generators.
    pub fn cones(&self) -> Result<ConeData> {
        let tw = self.tower();
        let spec = tw.cones.as_ref().ok_or(ThreefoldError::Unsupported { what: "stage-one cones", family: self.kind })?;
        let st = &tw.stages[0];
        let n = st.dim();
        let lab = |l: &Vec<(String, BTreeMap<String, Rat>)>| -> Result<Vec<(String, QVec)>> {
            l.iter().map(|(name, terms)| Ok((name.clone(), st.class(terms)?))).collect()
        };
        let mut nef_inequalities = Vec::new();
        for (comp, curve) in &spec.nef_test_curves {
            let ci = st.index(comp)?;
            let model = &st.components[ci].model;
            let c = &model.curve(curve)?.class;
            let row: Vec<Rat> = (0..n).map(|k| Ok(model.dot(&st.restrict(ci, &QVec::unit(n, k))?, c))).collect::<Result<_>>()?;
            nef_inequalities.push(QVec::new(row));
        }
        let nef_cone = QCone::from_inequalities(n, &nef_inequalities)?;
        let data = ConeData {
            basis: st.basis.clone(),
            effective: lab(&spec.effective)?,
            movable: lab(&spec.movable)?,
            movable_inequalities: spec.movable_inequalities.clone(),
            nef_rays: nef_cone.reduced().rays().to_vec(),
            nef_inequalities,
            nef_expected: lab(&spec.nef_expected)?,
        };
        if !nef_cone.equal_sets(&cone_of(n, &data.nef_expected)?) {
            return Err(ThreefoldError::Consistency("derived nef cone differs from the expected generators".into()));
        }
        let mov = data.movable_cone()?;
        if !mov.equal_sets(&QCone::from_inequalities(n, &data.movable_inequalities)?) {
            return Err(ThreefoldError::Consistency("movable generators and inequalities disagree".into()));
        }
        let eff = data.effective_cone()?;
        if !mov.contains_cone(&nef_cone) || !eff.contains_cone(&mov) {
            return Err(ThreefoldError::Consistency("cones are not nested nef ⊆ mov ⊆ eff".into()));
        }
        Ok(data)
    }

    /// `μ`, `ε` and `ν` as exit times of `π*L − tE` from the three cones.
    pub fn invariants(&self) -> Result<Invariants> {
        let c = self.cones()?;
        let (l, e) = (self.polarization()?, self.exceptional()?);
        let inv = Invariants {
            mu: shoot(&c.effective_cone()?, &l, &e)?,
            epsilon: shoot(&c.nef_cone()?, &l, &e)?,
            nu: shoot(&c.movable_cone()?, &l, &e)?,
        };
        if inv.mu != self.mu()? {
            return Err(ThreefoldError::Consistency(format!("effective cone gives μ = {}", inv.mu)));
        }
        Ok(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratgeom::{q, qi};

    fn named(f: &ModelFamily, p: &QVec) -> BTreeMap<String, Rat> {
        let st = &f.tower().stages[f.tower().top()];
        st.basis.iter().cloned().zip(p.iter().cloned()).collect()
    }

    #[test]
    fn psigma_cxp2() {
        let f = ModelFamily::cxp2(qi(3), qi(2)).unwrap();
        let d = f.psigma(&qi(4)).unwrap();
        let p = named(&f, &d.positive.class);
        assert_eq!((&p["ftil"], &p["Htil"], &p["Etil"], &p["G"]), (&qi(1), &qi(2), &qi(1), &qi(1)));
        assert_eq!(d.negative_coeffs, [("G".to_string(), qi(1)), ("ftil".to_string(), qi(2))].into());
    }

    #[test]
    fn psigma_ccc_middle_range() {
        let f = ModelFamily::ccc(qi(1), qi(1), qi(1)).unwrap();
        let p = named(&f, &f.psigma(&q(3, 2)).unwrap().positive.class);
        for k in ["f1til", "f2til", "f3til"] {
            assert_eq!(p[k], qi(1));
        }
        for k in ["E1", "E2", "E3", "Etil"] {
            assert_eq!(p[k], q(3, 2));
        }
    }

    #[test]
    fn cxjac_ledger_at_zero() {
        let f = ModelFamily::cxjac(q(1, 2)).unwrap();
        let v = f.ledger_values(&qi(0)).unwrap();
        let got: Vec<Rat> = ["e", "j", "y", "r", "c", "g", "n"].iter().map(|k| v[*k].clone()).collect();
        assert_eq!(got, vec![q(5, 4), q(1, 2), q(1, 8), q(5, 8), q(3, 4), q(9, 8), q(7, 4)]);
        f.check_identities(&qi(0)).unwrap();
    }

    #[test]
    fn out_of_range() {
        let f = ModelFamily::cxp2(qi(3), qi(2)).unwrap();
        assert!(matches!(f.psigma(&qi(6)), Err(ThreefoldError::OutOfRange { .. })));
        assert!(matches!(f.psigma(&qi(-1)), Err(ThreefoldError::OutOfRange { .. })));
    }

    #[test]
    fn bad_params() {
        assert!(ModelFamily::cxp2(qi(0), qi(1)).is_err());
        assert!(ModelFamily::ccc(qi(1), qi(2), qi(1)).is_err());
        assert!(ModelFamily::cxjac(qi(1)).is_err());
    }

    #[test]
    fn volumes() {
        assert_eq!(ModelFamily::cxp2(qi(3), qi(2)).unwrap().vol_ray(&qi(4)).unwrap(), qi(5));
        let c = ModelFamily::ccc(qi(1), qi(1), qi(1)).unwrap();
        let v: Vec<Rat> = (0..4).map(|t| c.vol_ray(&qi(t)).unwrap()).collect();
        assert_eq!(v, vec![qi(6), qi(5), qi(1), qi(0)]);
        for s in [q(1, 2), q(1, 3), q(5, 7)] {
            let f = ModelFamily::cxjac(s.clone()).unwrap();
            assert_eq!(f.vol_ray(&qi(0)).unwrap(), qi(6) * s.pow(2) * (qi(1) - &s));
        }
    }

    #[test]
    fn ccc_cubic_pieces() {
        let c = ModelFamily::ccc(qi(1), qi(1), qi(1)).unwrap();
        let pieces = c.volume_pieces().unwrap();
        let coeffs: Vec<[Rat; 4]> = pieces.iter().map(|p| p.coeffs.clone()).collect();
        assert_eq!(
            coeffs,
            vec![
                [qi(6), qi(0), qi(0), qi(-1)],
                [qi(3), qi(9), qi(-9), qi(2)],
                [qi(27), qi(-27), qi(9), qi(-1)],
            ]
        );
        assert_eq!(pieces[1].to_string(), "[1, 2]: 2*t^3 - 9*t^2 + 9*t + 3");
    }

    #[test]
    fn csv_rows() {
        let c = ModelFamily::ccc(qi(1), qi(1), qi(1)).unwrap();
        assert_eq!(c.volume_csv(&qi(1)).unwrap(), "t,vol\n0,6\n1,5\n2,1\n3,0\n");
    }

    #[test]
    fn cones_and_invariants() {
        let f = ModelFamily::cxp2(qi(3), qi(2)).unwrap();
        let inv = f.invariants().unwrap();
        assert_eq!((inv.mu, inv.epsilon, inv.nu), (qi(5), qi(2), qi(2)));
        let s = q(1, 2);
        let j = ModelFamily::cxjac(s.clone()).unwrap();
        let inv = j.invariants().unwrap();
        assert_eq!(inv.mu, q(5, 4));
        assert_eq!(inv.epsilon, q(1, 2));
        assert_eq!(inv.nu, q(3, 4));
        assert!(matches!(
            ModelFamily::ccc(qi(1), qi(1), qi(1)).unwrap().cones(),
            Err(ThreefoldError::Unsupported { .. })
        ));
    }

    #[test]
    fn pushforward_matches_lower_stage() {
        let f = ModelFamily::cxjac(q(2, 5)).unwrap();
        let tw = f.tower();
        let t = q(3, 5);
        for k in (1..=tw.top()).rev() {
            assert_eq!(tw.pushforward(k, &f.positive(k, &t).unwrap()).unwrap(), f.positive(k - 1, &t).unwrap());
        }
    }
}
