//! Shipped models, point blow-ups, ruled surfaces and the symmetric slice of
//! the seven-point tower over the plane.

use std::collections::BTreeMap;

use serde::Deserialize;

use super::{Curve, Result, SurfaceError, SurfaceModel};
use crate::ratgeom::{dual_cone, linalg, HPoly, Halfspace, QCone, QVec, Rat};

pub const BUILTIN_MODELS: &[&str] =
    &["two_curves", "two_curves_diagonal", "genus2_jacobian", "p2_blow_1", "p2_blow_3_cremona", "p2blow7"];

fn model_json(name: &str) -> Option<&'static str> {
    Some(match name {
        "two_curves" => include_str!("../../data/two_curves.json"),
        "two_curves_diagonal" => include_str!("../../data/two_curves_diagonal.json"),
        "genus2_jacobian" => include_str!("../../data/genus2_jacobian.json"),
        "p2_blow_1" => include_str!("../../data/p2_blow_1.json"),
        "p2_blow_3_cremona" => include_str!("../../data/p2_blow_3_cremona.json"),
        _ => return None,
    })
}

pub fn builtin_model(name: &str) -> Result<SurfaceModel> {
    if name == "p2blow7" {
        return p2blow7_model();
    }
    let text = model_json(name).ok_or_else(|| SurfaceError::InvalidModel(format!("no shipped model `{name}`")))?;
    let m: SurfaceModel = serde_json::from_str(text).map_err(|e| SurfaceError::InvalidModel(e.to_string()))?;
    m.validate()?;
    Ok(m)
}

/// Blow up a point lying on the named curves with the given multiplicities.
/// Cone generators are dropped since they no longer describe the new surface.
pub fn blowup_point(model: &SurfaceModel, multiplicities: &BTreeMap<String, u32>, new_name: &str) -> Result<SurfaceModel> {
    for n in multiplicities.keys() {
        model.curve(n)?;
    }
    let n = model.dim();
    let mut pairing: Vec<QVec> = model
        .pairing
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.push(Rat::zero());
            r
        })
        .collect();
    let mut last = QVec::zeros(n);
    last.push(Rat::int(-1));
    pairing.push(last);
    let e = QVec::unit(n + 1, n);
    let mut curves: Vec<Curve> = model
        .negative_curves
        .iter()
        .map(|c| {
            let mut class = c.class.clone();
            class.push(Rat::zero());
            let m = multiplicities.get(&c.name).copied().unwrap_or(0);
            Curve { name: c.name.clone(), class: class.axpy(&-Rat::int(m as i64), &e), auxiliary: c.auxiliary }
        })
        .collect();
    curves.push(Curve { name: new_name.to_string(), class: e, auxiliary: false });
    let mut basis_names = model.basis_names.clone();
    basis_names.push(new_name.to_string());
    let mut out = SurfaceModel {
        name: format!("{}+{}", model.name, new_name),
        basis_names,
        pairing,
        negative_curves: curves,
        mori_generators: None,
        effective_generators: None,
    };
    for c in out.negative_curves.iter_mut() {
        let sq = linalg::bilinear(&out.pairing, &c.class, &c.class);
        c.auxiliary = !sq.is_negative();
    }
    Ok(out)
}

/// Ruled surface whose extremal sections have normal degrees `−(d1 − d2)` and
/// `d1 − d2`, in the basis `(ξ, f)` with `ξ² = d1 + d2`.
pub fn ruled_surface(label: &str, d1: i64, d2: i64) -> Result<SurfaceModel> {
    if d1 < d2 {
        return Err(SurfaceError::RuledDegrees(d1, d2));
    }
    let sigma = QVec::from_ints(&[1, -d1]);
    let fiber = QVec::from_ints(&[0, 1]);
    Ok(SurfaceModel {
        name: format!("ruled_{label}_{d1}_{d2}"),
        basis_names: vec!["xi".into(), "f".into()],
        pairing: vec![QVec::from_ints(&[d1 + d2, 1]), QVec::from_ints(&[1, 0])],
        negative_curves: vec![
            Curve { name: "sigma".into(), class: sigma.clone(), auxiliary: d1 == d2 },
            Curve { name: "f".into(), class: fiber.clone(), auxiliary: true },
        ],
        mori_generators: Some(vec![sigma.clone(), fiber.clone()]),
        effective_generators: Some(vec![sigma, fiber.clone()]),
    })
}

impl SurfaceModel {
    /// Generators of the nef cone: the dual of the Mori generators.
    pub fn nef_generators(&self) -> Result<Vec<QVec>> {
        let gens = self.mori_generators.as_ref().ok_or(SurfaceError::NoMoriGenerators)?;
        let c = QCone::from_rays(self.dim(), gens.clone())?;
        Ok(dual_cone(&c, Some(&self.pairing))?.rays().to_vec())
    }
}

#[derive(Deserialize)]
struct BlowupStep {
    new: String,
    #[serde(default)]
    through: BTreeMap<String, u32>,
}

#[derive(Deserialize)]
struct TowerRecipe {
    base: SurfaceModel,
    steps: Vec<BlowupStep>,
    symmetric_basis: Vec<(String, Vec<String>)>,
    effective_generators: Vec<Vec<String>>,
    test_curves: Vec<String>,
}

fn recipe() -> Result<TowerRecipe> {
    serde_json::from_str(include_str!("../../data/p2blow7_tower.json"))
        .map_err(|e| SurfaceError::InvalidModel(e.to_string()))
}

fn curve_sum(m: &SurfaceModel, names: &[String]) -> Result<QVec> {
    let mut v = QVec::zeros(m.dim());
    for n in names {
        v = v.add(&m.curve(n)?.class);
    }
    Ok(v)
}

/// The 20-dimensional model: the plane blown up in seven points, then six
/// points on the `E_i ∩ L`, then six on `G_i ∩ E_i`. Every listed curve is a
/// nef test curve; the effective generators span only the symmetric slice.
pub fn p2blow7_model() -> Result<SurfaceModel> {
    let r = recipe()?;
    r.base.validate()?;
    let mut m = r.base.clone();
    for s in &r.steps {
        m = blowup_point(&m, &s.through, &s.new)?;
    }
    m.name = "p2blow7".into();
    m.mori_generators = Some(m.negative_curves.iter().map(|c| c.class.clone()).collect());
    m.effective_generators = Some(r.effective_generators.iter().map(|g| curve_sum(&m, g)).collect::<Result<_>>()?);
    m.validate()?;
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricCones {
    pub basis_names: Vec<String>,
    /// The symmetric basis as classes on the 20-dimensional model.
    pub basis_classes: Vec<QVec>,
    pub pairing: Vec<QVec>,
    pub nef_ineqs: HPoly,
    pub nef_gens: Vec<QVec>,
    pub eff_gens: Vec<QVec>,
    pub row_labels: Vec<String>,
    pub row_classes: Vec<QVec>,
    pub col_labels: Vec<String>,
    pub col_classes: Vec<QVec>,
    pub intersection_table: Vec<Vec<Rat>>,
}

impl SymmetricCones {
    pub fn dot(&self, a: &QVec, b: &QVec) -> Rat {
        linalg::bilinear(&self.pairing, a, b)
    }

    /// The pulled-back line class `H` in symmetric coordinates.
    pub fn h_class(&self) -> QVec {
        QVec::from_ints(&[1, 1, 0, 2, 3])
    }

    /// `Ľ₇ = Σ Ľᵢ` in symmetric coordinates.
    pub fn l7_class(&self) -> QVec {
        self.col_classes[1].clone()
    }
}

pub fn p2blow7_symmetric_cones() -> Result<SymmetricCones> {
    let r = recipe()?;
    let m = p2blow7_model()?;
    let basis_names: Vec<String> = r.symmetric_basis.iter().map(|(n, _)| n.clone()).collect();
    let basis_classes: Vec<QVec> = r.symmetric_basis.iter().map(|(_, g)| curve_sum(&m, g)).collect::<Result<_>>()?;
    let k = basis_classes.len();
    let pairing: Vec<QVec> =
        basis_classes.iter().map(|a| basis_classes.iter().map(|b| m.dot(a, b)).collect()).collect();
    let coords = |v: &QVec| {
        linalg::coords_in(&basis_classes, v)
            .ok_or_else(|| SurfaceError::InvalidModel("class outside the symmetric subspace".into()))
    };

    let normals: Vec<QVec> = r
        .test_curves
        .iter()
        .map(|n| {
            let c = &m.curve(n)?.class;
            Ok(basis_classes.iter().map(|b| m.dot(b, c)).collect())
        })
        .collect::<Result<_>>()?;
    let nef_ineqs = HPoly::new(k, normals.iter().map(|n| Halfspace::new(n.clone(), Rat::zero())).collect(), vec![])?;
    let nef_cone = QCone::from_inequalities(k, &normals)?;
    let nef_gens = nef_cone.rays().to_vec();
    let eff_gens = dual_cone(&nef_cone, Some(&pairing))?.rays().to_vec();

    let named_eff: Vec<QVec> = r.effective_generators.iter().map(|g| coords(&curve_sum(&m, g)?)).collect::<Result<_>>()?;
    let h = QVec::from_ints(&[1, 1, 0, 2, 3]);
    let e7 = QVec::unit(k, 2);
    let mut col_classes = named_eff.clone();
    col_classes.push(h.clone());
    let col_labels: Vec<String> = ["Lc", "L7c", "Ec", "E7c", "Gc", "N", "H"].iter().map(|s| s.to_string()).collect();

    let lc = QVec::unit(k, 0);
    let gc = QVec::unit(k, 3);
    let nc = QVec::unit(k, 4);
    let mut rows: Vec<(String, QVec)> = Vec::new();
    for eps in [0i64, 1] {
        let he = h.axpy(&Rat::int(-eps), &e7);
        let tag = if eps == 0 { "H".to_string() } else { "(H-E7c)".to_string() };
        rows.push((tag.clone(), he.clone()));
        rows.push((format!("Lc+11{tag}"), lc.axpy(&Rat::int(11), &he)));
        rows.push((format!("Lc+5{tag}+Gc+N"), lc.axpy(&Rat::int(5), &he).add(&gc).add(&nc)));
        rows.push((format!("2Lc+16{tag}+Gc"), lc.scale(&Rat::int(2)).axpy(&Rat::int(16), &he).add(&gc)));
    }
    // Same order as the printed table: each ε = 0 row followed by its ε = 1 row.
    let order = [0, 4, 1, 5, 2, 6, 3, 7];
    let rows: Vec<(String, QVec)> = order.iter().map(|&i| rows[i].clone()).collect();
    let dot = |a: &QVec, b: &QVec| linalg::bilinear(&pairing, a, b);
    let intersection_table = rows.iter().map(|(_, rv)| col_classes.iter().map(|c| dot(rv, c)).collect()).collect();

    Ok(SymmetricCones {
        basis_names,
        basis_classes,
        pairing,
        nef_ineqs,
        nef_gens,
        eff_gens,
        row_labels: rows.iter().map(|(n, _)| n.clone()).collect(),
        row_classes: rows.iter().map(|(_, v)| v.clone()).collect(),
        col_labels,
        intersection_table,
        col_classes,
    })
}
