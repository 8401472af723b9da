use std::path::Path;
use std::sync::Arc;

use clap::ValueEnum;
use serde_json::json;

use amitsur::amitsur::{self as am, EquivariantPresentation, PresentationFile, UnitModel};
use amitsur::cohom::CohGroup;
use amitsur::fingroup::maximal_abelian_subgroups;
use amitsur::formats::{bundled_m16_file, GroupRef, ModuleFile, ResolutionFile};
use amitsur::resolve::auto_resolution;
use amitsur::{Error, FinGroup, GModule, Result};

use crate::report::{Report, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Zero,
    Nonzero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Coeff {
    /// The trivial module Z.
    #[value(name = "trivialZ", alias = "trivial-z")]
    TrivialZ,
    /// The Néron–Severi torus of the del Pezzo dataset, via `H^n(T) = H^{n+1}(Pic^∨)`.
    Tns,
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {}", path, e)))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T> {
    serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(format!("{}: {}", path, e)))
}

fn group_arg(s: &str) -> Result<(GroupRef, Arc<FinGroup>)> {
    let r = if Path::new(s).is_file() { parse_json::<GroupRef>(s)? } else { GroupRef::parse_short(s)? };
    let g = r.resolve()?;
    Ok((r, g))
}

/// Accepts `a..b` (inclusive), `a,b,c` or a single degree.
pub fn parse_degrees(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::Parse(format!("bad degree range {:?}", s));
    let out: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b = b.trim().strip_prefix('=').unwrap_or(b.trim());
        let b: usize = b.parse().map_err(|_| bad())?;
        (a..=b).collect()
    } else {
        s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
    };
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn module_arg(s: &str, group: &Arc<FinGroup>) -> Result<Arc<GModule>> {
    match s {
        "trivialZ" | "Z" => Ok(Arc::new(GModule::trivial_z(group))),
        _ => {
            if let Some(n) = s.strip_prefix("trivial:") {
                let n: i64 = n.parse().map_err(|_| Error::Parse(format!("bad modulus {:?}", n)))?;
                return Ok(Arc::new(GModule::trivial_cyclic(group, n)));
            }
            parse_json::<ModuleFile>(s)?.build_over(group)
        }
    }
}

fn presentation_arg(s: &str) -> Result<(EquivariantPresentation, Option<UnitModel>)> {
    if Path::new(s).is_file() {
        return parse_json::<PresentationFile>(s)?.build();
    }
    let (p, m) = am::builtin_presentation(s.strip_prefix("example:").unwrap_or(s))?;
    Ok((p, Some(m)))
}

fn model_arg(s: &str, own: Option<UnitModel>) -> Result<UnitModel> {
    match s {
        "default" => Ok(own.unwrap_or(UnitModel::Divisible)),
        "divisible" => Ok(UnitModel::Divisible),
        "fg" => match own {
            Some(m @ UnitModel::Fg { .. }) => Ok(m),
            _ => Err(Error::Parse("presentation has no finitely generated unit model; use fg:<file>".into())),
        },
        _ => match s.strip_prefix("fg:") {
            Some(path) => {
                let m: UnitModel = parse_json(path)?;
                if m.is_divisible() {
                    return Err(Error::Parse(format!("{} describes the divisible model", path)));
                }
                Ok(m)
            }
            None => Err(Error::Parse(format!("unknown model {:?}", s))),
        },
    }
}

pub fn cohomology(group: &str, module: &str, n: usize, resolution: &str) -> Result<Report> {
    let (_, g) = group_arg(group)?;
    let m = module_arg(module, &g)?;
    let res = if resolution == "auto" {
        auto_resolution(&g, n + 1)?
    } else {
        let r = parse_json::<ResolutionFile>(resolution)?.build()?;
        if r.group().order() != g.order() {
            return Err(Error::SubgroupMismatch("resolution is over a different group".into()));
        }
        r.validate()?;
        r
    };
    let res = Arc::new(res);
    let h = CohGroup::new(&res, &m, n)?;
    let mut r = Report::new(format!("cohomology --group {} --module {} --degree {}", group, module, n));
    let inv: Vec<String> = h.invariants().iter().map(|x| x.to_string()).collect();
    r.line(h.describe());
    r.results = json!({ "degree": n, "group": h.describe(), "invariants": inv });
    r.note(format!("resolution: {} (ranks {:?})", res.label(), res.ranks()));
    Ok(r)
}

pub fn amitsur(presentation: &str, torus: &str, model: &str, degrees: &str) -> Result<Report> {
    let (p, own) = presentation_arg(presentation)?;
    let model = model_arg(model, own)?;
    let degrees = parse_degrees(degrees)?;
    if degrees.iter().any(|&n| n < 2) {
        return Err(Error::Degree("Amitsur groups start in degree 2".into()));
    }
    let t = if torus == "Gm" { am::gm(&p.group) } else { module_arg(torus, &p.group)? };
    let groups = am::amitsur_groups(&p, &t, &model, &degrees)?;
    let mut r = Report::new(format!("amitsur --presentation {} --torus {} --degrees {}", presentation, torus, degrees_label(&degrees)));
    let lines: Vec<am::AmitsurLine> = groups.iter().map(am::AmitsurLine::from).collect();
    for l in &lines {
        r.line(format!("Am^{} = {}    (inside {})", l.degree, l.group, l.ambient));
    }
    r.results = json!({ "presentation": p.name, "degrees": lines });
    r.note(format!("model: {}", model.describe()));
    if groups.iter().any(|g| g.shifted) {
        r.note("values reported in H^{n+1}(G, X) after the Bockstein shift");
    }
    r.note("resolution: auto");
    Ok(r)
}

fn degrees_label(d: &[usize]) -> String {
    d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn beta(presentation: &str, model: &str, expect: Option<Expect>) -> Result<Report> {
    let (p, own) = presentation_arg(presentation)?;
    let model = model_arg(model, own)?;
    let b = am::beta(&p, &model)?;
    let mut r = Report::new(format!("beta --presentation {}", presentation));
    r.line(format!("beta {}", if b.nonzero { "nonzero" } else { "zero" }));
    r.line(format!("class {:?} in {}", b.coords, b.group));
    r.line(format!("extension class in {} is {}", b.ext_group, if b.ext_nonzero { "nonzero" } else { "zero" }));
    r.line(format!("representative cocycle [{}]", b.cocycle.join(", ")));
    r.note(format!("model: {}", model.describe()));
    if let Some(e) = expect {
        if (e == Expect::Nonzero) != b.nonzero {
            r.status = Status::Fail;
        }
    }
    r.results = serde_json::to_value(&b).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(r)
}

pub fn verify_resolution(file: Option<&str>) -> Result<Report> {
    let f = match file {
        Some(path) => parse_json::<ResolutionFile>(path)?,
        None => bundled_m16_file()?,
    };
    let res = f.build()?;
    let v = res.validate()?;
    let mut r = Report::new(format!("verify-resolution --file {}", file.unwrap_or("bundled:m16")));
    r.line(format!("pass: exact complex through degree {} with ranks {:?}", v.top_degree, res.ranks()));
    r.line(format!("homology {}", v.homology.join(", ")));
    r.results = json!({ "passed": true, "ranks": res.ranks(), "top_degree": v.top_degree, "homology": v.homology });
    Ok(r)
}

pub fn dp2_verify(dataset: Option<&str>) -> Result<Report> {
    let d = match dataset {
        Some(path) => parse_json::<am::Dp2Dataset>(path)?,
        None => am::bundled_dp2()?,
    };
    let rep = am::dp2_verify(&d)?;
    let mut r = Report::new(format!("dp2-verify --dataset {}", dataset.unwrap_or("bundled")));
    for c in &rep.checks {
        r.line(format!("{} {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail));
    }
    for a in &rep.assumptions {
        r.note(format!("assumed: {}", a));
    }
    if !rep.passed() {
        r.status = Status::Rejected;
    }
    r.results = serde_json::to_value(&rep).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(r)
}

pub fn bogomolov(group: &str, coeff: Coeff, degrees: &str) -> Result<Report> {
    let (_, g) = group_arg(group)?;
    let degrees = parse_degrees(degrees)?;
    let (g, module, shift) = match coeff {
        Coeff::TrivialZ => (g.clone(), Arc::new(GModule::trivial_z(&g)), 0),
        Coeff::Tns => {
            let data = am::bundled_dp2()?.validate()?;
            if data.group.order() != g.order() || data.group.name() != g.name() {
                return Err(Error::SubgroupMismatch("the Néron–Severi torus is only bundled for m16".into()));
            }
            (data.group.clone(), data.pic_dual.clone(), 1)
        }
    };
    let subs = maximal_abelian_subgroups(&g)?;
    let top = degrees.iter().max().copied().unwrap_or(2) + shift + 1;
    let res = Arc::new(auto_resolution(&g, top)?);
    let mut r = Report::new(format!("bogomolov-kernel --group {} --degrees {}", group, degrees_label(&degrees)));
    let mut rows = Vec::new();
    for &n in &degrees {
        let k = am::bogomolov_kernel(&res, &module, n + shift, &subs)?;
        r.line(format!("degree {}: kernel {}    (inside {})", n, k.describe(), k.cohomology.describe()));
        rows.push(json!({
            "degree": n,
            "kernel": k.describe(),
            "kernel_invariants": k.group().invariants().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "cohomology": k.cohomology.describe(),
        }));
    }
    let orders: Vec<usize> = subs.iter().map(|s| s.order()).collect();
    r.note(format!("{} maximal abelian subgroups of orders {:?}", subs.len(), orders));
    if shift == 1 {
        r.note("coefficients T_NS(k̄) computed as H^{n+1}(G, Pic^∨)");
    }
    r.results = json!({ "coefficients": format!("{:?}", coeff), "degrees": rows });
    Ok(r)
}
