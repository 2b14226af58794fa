use std::fs;
use std::path::Path;

use fzkit::acceptance::{criteria, run_criterion, Report, Tier};
use fzkit::okounkov::{body, glue4d, projection_area_check, seshadri_curve, slice_at};
use fzkit::ratgeom::{QVec, Rat};
use fzkit::surface::{builtin_model, zariski, SurfaceModel};
use fzkit::threefold::{FamilyKind, ModelFamily};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::error::CliError;

type Out = Result<String, CliError>;

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn family(cfg: &RunConfig) -> &ModelFamily {
    cfg.family.as_ref().expect("family resolved before dispatch")
}

fn unsupported(cfg: &RunConfig, what: &str) -> CliError {
    CliError::Usage(format!("{what} cannot be written as {:?}", cfg.format).to_lowercase())
}

fn load_model(spec: &str) -> Result<SurfaceModel, CliError> {
    if Path::new(spec).is_file() {
        let text = fs::read_to_string(spec)?;
        let m: SurfaceModel = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{spec}: {e}")))?;
        m.validate()?;
        return Ok(m);
    }
    Ok(builtin_model(spec)?)
}

/// `samples + 1` evenly spaced points of `[0, μ]`.
fn grid(mu: &Rat, samples: usize) -> Result<Vec<Rat>, CliError> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let n = samples as i64;
    Ok((0..=n).map(|k| mu * Rat::new(k, n)).collect())
}

pub fn zariski_family(cfg: &RunConfig, t: &Rat) -> Out {
    let f = family(cfg);
    let d = f.psigma(t)?;
    let st = f.tower().stage(d.positive.stage)?;
    let positive: serde_json::Map<String, Value> =
        st.basis.iter().zip(d.positive.class.iter()).map(|(n, c)| (n.clone(), to_value(c))).collect();
    let v = json!({
        "family": f.kind,
        "params": f.params,
        "t": t,
        "stage": st.name,
        "positive": positive,
        "negative": d.negative_coeffs,
    });
    match cfg.format {
        Format::Json => Ok(pretty(&v)),
        _ => Err(unsupported(cfg, "a decomposition")),
    }
}

pub fn zariski_surface(cfg: &RunConfig, model: &str, class: &[Rat]) -> Out {
    let m = load_model(model)?;
    let d = QVec::new(class.to_vec());
    m.check_len(&d)?;
    let z = zariski(&m, &d)?;
    z.verify(&m, &d)?;
    let v = json!({
        "model": m.name,
        "basis": m.basis_names,
        "class": d,
        "positive": z.positive,
        "negative": z.negative_coeffs,
    });
    match cfg.format {
        Format::Json => Ok(pretty(&v)),
        _ => Err(unsupported(cfg, "a decomposition")),
    }
}

pub fn volume(cfg: &RunConfig, t: Option<&Rat>) -> Out {
    let f = family(cfg);
    if let Some(t) = t {
        let v = f.vol_ray(t)?;
        return match cfg.format {
            Format::Text => Ok(format!("{v}\n")),
            Format::Json => Ok(pretty(&json!({ "t": t, "vol": v }))),
            _ => Err(unsupported(cfg, "a single volume")),
        };
    }
    if let Some(n) = cfg.samples {
        let ts = grid(&f.mu()?, n)?;
        let vols: Vec<Rat> = ts.par_iter().map(|t| f.vol_ray(t)).collect::<Result<_, _>>()?;
        return match cfg.format {
            Format::Csv | Format::Text => {
                let mut s = String::from("t,vol\n");
                for (t, v) in ts.iter().zip(&vols) {
                    s.push_str(&format!("{t},{v}\n"));
                }
                Ok(s)
            }
            Format::Json => Ok(pretty(&json!(ts.iter().zip(&vols).map(|(t, v)| json!({"t": t, "vol": v})).collect::<Vec<_>>()))),
            Format::Off => Err(unsupported(cfg, "a volume sweep")),
        };
    }
    let pieces = f.volume_pieces()?;
    match cfg.format {
        Format::Text => Ok(pieces.iter().map(|p| format!("{p}\n")).collect()),
        Format::Json => Ok(pretty(&to_value(&pieces))),
        _ => Err(unsupported(cfg, "cubic pieces")),
    }
}

pub fn body_cmd(cfg: &RunConfig) -> Out {
    let b = body(family(cfg))?;
    match cfg.format {
        Format::Json => Ok(format!("{}\n", b.to_json().to_string_pretty())),
        Format::Off => Ok(b.to_off().map_err(|e| CliError::Failed(e.to_string()))?),
        _ => Err(unsupported(cfg, "a body")),
    }
}

pub fn slice(cfg: &RunConfig, t: Option<&Rat>) -> Out {
    let f = family(cfg);
    if let Some(t) = t {
        let s = slice_at(f, t)?;
        let area = s.area().map_err(|e| CliError::Failed(e.to_string()))?;
        return match cfg.format {
            Format::Json => Ok(pretty(&json!({ "t": t, "vertices": s.polygon.vertices(), "area": area }))),
            Format::Text => Ok(format!("{area}\n")),
            _ => Err(unsupported(cfg, "a slice")),
        };
    }
    let n = cfg.samples.ok_or_else(|| CliError::Usage("slice needs --t or --samples".into()))?;
    let mu = f.mu()?;
    let ts = grid(&mu, n)?;
    // The body meets ν₁ = 0 and ν₁ = μ in lower-dimensional faces.
    let areas: Vec<Rat> = ts
        .par_iter()
        .map(|t| -> Result<Rat, CliError> {
            if t.is_zero() || t == &mu {
                return Ok(Rat::zero());
            }
            slice_at(f, t)?.area().map_err(|e| CliError::Failed(e.to_string()))
        })
        .collect::<Result<_, _>>()?;
    match cfg.format {
        Format::Csv | Format::Text => {
            let mut s = String::from("t,area\n");
            for (t, a) in ts.iter().zip(&areas) {
                s.push_str(&format!("{t},{a}\n"));
            }
            Ok(s)
        }
        Format::Json => Ok(pretty(&json!(ts.iter().zip(&areas).map(|(t, a)| json!({"t": t, "area": a})).collect::<Vec<_>>()))),
        Format::Off => Err(unsupported(cfg, "an area sweep")),
    }
}

pub fn glue(cfg: &RunConfig, kind: FamilyKind) -> Out {
    let g = glue4d(kind)?;
    match cfg.format {
        Format::Json => Ok(format!("{}\n", g.to_json().to_string_pretty())),
        _ => Err(unsupported(cfg, "a 4D glue")),
    }
}

pub fn cone(cfg: &RunConfig) -> Out {
    let f = family(cfg);
    let v = json!({ "cones": to_value(&f.cones()?), "invariants": to_value(&f.invariants()?) });
    match cfg.format {
        Format::Json => Ok(pretty(&v)),
        _ => Err(unsupported(cfg, "cone data")),
    }
}

pub fn seshadri(cfg: &RunConfig) -> Out {
    let f = family(cfg);
    let eps = seshadri_curve(f)?;
    let area = projection_area_check(f)?;
    match cfg.format {
        Format::Text => Ok(format!("{eps}\n{:?} {} {}\n", area.verdict, area.lhs, area.rhs).to_lowercase()),
        Format::Json => Ok(pretty(&json!({ "seshadri_curve": eps, "area_check": area }))),
        _ => Err(unsupported(cfg, "Seshadri data")),
    }
}

/// Criteria run in parallel; output stays in criterion order. Returns the
/// report text and whether everything passed.
pub fn check(cfg: &RunConfig, tier: Option<Tier>, seed: u64) -> Result<(String, bool), CliError> {
    let all = criteria();
    let chosen: Vec<_> = all.iter().filter(|c| tier.is_none_or(|t| t == c.tier)).collect();
    let reports: Vec<Report> = chosen.par_iter().map(|c| run_criterion(c, seed)).collect();
    let ok = reports.iter().all(|r| r.passed);
    for r in &reports {
        eprintln!("criterion {:>2}: {} ms (budget {} ms)", r.id, r.elapsed_ms, r.budget_ms);
    }
    let text = match cfg.format {
        Format::Text => {
            let mut s: String = reports.iter().map(|r| format!("{r}\n")).collect();
            let failed: Vec<String> = reports.iter().filter(|r| !r.passed).map(|r| r.id.to_string()).collect();
            if failed.is_empty() {
                s.push_str(&format!("{} of {} criteria passed\n", reports.len(), reports.len()));
            } else {
                s.push_str(&format!("FAILED criteria: {}\n", failed.join(", ")));
            }
            s
        }
        Format::Json => pretty(&json!(reports
            .iter()
            .map(|r| json!({"id": r.id, "title": r.title, "tier": r.tier, "passed": r.passed, "detail": r.detail}))
            .collect::<Vec<_>>())),
        _ => return Err(unsupported(cfg, "a check report")),
    };
    Ok((text, ok))
}
