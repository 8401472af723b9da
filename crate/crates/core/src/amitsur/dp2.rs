use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::bogomolov::bogomolov_kernel;
use super::presentation::{ConstantModule, ConstantSupport};
use super::units::{UnitModel, UnitValue};
use crate::cohom::{bockstein_shift, restrict_cochain, CohGroup, Cochain, RationalCochain};
use crate::cyclofield::{verify_unit_decomposition, CycloElement};
use crate::error::{Error, Result};
use crate::fingroup::{all_subgroups, subgroup_from_generators, FinGroup, Subgroup};
use crate::formats::{matrix_from_i64, GroupRef};
use crate::gmod::GModule;
use crate::intlat::{FgAbGroup, Int, IntMatrix};
use crate::resolve::{auto_resolution, FreeResolution};

pub const DP2_DATASET_JSON: &str = include_str!("../../data/dp2_m16.json");

/// `(c_0 + c_1 ζ + …)/den` in the power basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloValue {
    pub coeffs: Vec<i64>,
    #[serde(default = "one_i64")]
    pub den: i64,
}

fn one_i64() -> i64 {
    1
}

impl CycloValue {
    pub fn element(&self, n: u32) -> Result<CycloElement> {
        CycloElement::from_ints(n, &self.coeffs, self.den)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledValue {
    pub label: String,
    pub value: CycloValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dp2UnitModel {
    pub cyclotomic_order: u32,
    pub torsion: u64,
    pub free_generators: Vec<LabelledValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dp2Value {
    pub cyclotomic: CycloValue,
    pub unit: UnitValue,
}

/// Curves, Picard lattice and the published 2-cocycle of the degree-2 del Pezzo example.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dp2Dataset {
    pub schema: String,
    pub name: String,
    pub group: GroupRef,
    pub labels: Vec<String>,
    /// Generator name → permutation of curve indices.
    pub action: BTreeMap<String, Vec<usize>>,
    /// Curves whose classes form the chosen basis of Pic.
    pub eta: Vec<String>,
    /// `rank Pic × #curves`: column c holds the class of curve c.
    pub coords: Vec<Vec<i64>>,
    pub pic_action: BTreeMap<String, Vec<Vec<i64>>>,
    pub unit_model: Dp2UnitModel,
    pub values: BTreeMap<String, Dp2Value>,
    /// Per basis vector of `P_2`: terms `value ⊗ e_k^*`.
    pub cocycle: Vec<Vec<(String, usize)>>,
    pub subgroups: BTreeMap<String, Vec<String>>,
}

pub fn bundled_dp2() -> Result<Dp2Dataset> {
    serde_json::from_str(DP2_DATASET_JSON).map_err(|e| Error::Parse(format!("bundled dp2 dataset: {}", e)))
}

/// Validated dataset contents.
#[derive(Clone, Debug)]
pub struct Dp2Data {
    pub group: Arc<FinGroup>,
    pub curves: Arc<GModule>,
    pub pic: Arc<GModule>,
    pub pic_dual: Arc<GModule>,
    pub coords: IntMatrix,
    pub model: UnitModel,
    /// `(μ_N ⊕ Z^r) ⊗ Pic^∨`.
    pub coefficients: Arc<GModule>,
    /// The cocycle with FG-model coefficients.
    pub cocycle: Cochain,
    /// Its torsion part as a `Q/Z ⊗ Pic^∨` cochain.
    pub torsion_cocycle: RationalCochain,
    pub subgroups: Vec<(String, Subgroup)>,
}

fn dataset_err<E: std::fmt::Display>(what: &str) -> impl FnOnce(E) -> Error + '_ {
    move |e| Error::Dataset(format!("{}: {}", what, e))
}

fn generator_order<T: Clone>(group: &FinGroup, map: &BTreeMap<String, T>, what: &str) -> Result<Vec<T>> {
    if map.len() != group.generators().len() {
        return Err(Error::Dataset(format!("{} must list exactly the group generators", what)));
    }
    group
        .generators()
        .iter()
        .map(|(name, _)| {
            map.get(name)
                .cloned()
                .ok_or_else(|| Error::Dataset(format!("{} is missing generator `{}`", what, name)))
        })
        .collect()
}

impl Dp2Dataset {
    pub fn validate(&self) -> Result<Dp2Data> {
        if self.schema != "dp2-dataset" {
            return Err(Error::Dataset(format!("unexpected schema {:?}", self.schema)));
        }
        let group = self.group.resolve()?;
        let n_curves = self.labels.len();
        let perms = generator_order(&group, &self.action, "curve action")?;
        let curves = Arc::new(
            GModule::permutation_from_generators(&group, n_curves, &perms).map_err(dataset_err("curve permutations"))?,
        );
        let rank = self.coords.len();
        let pic_rows = generator_order(&group, &self.pic_action, "Pic action")?;
        let mats = pic_rows.iter().map(|rows| matrix_from_i64(rows, rank)).collect::<Result<Vec<_>>>()?;
        if mats.iter().any(|m| m.rows() != rank) {
            return Err(Error::Dataset("Pic action matrices must be square".into()));
        }
        let pic = Arc::new(
            GModule::new(&group, rank, IntMatrix::zeros(rank, 0), &mats).map_err(dataset_err("Pic action"))?,
        );
        let coords = matrix_from_i64(&self.coords, n_curves)?;
        for (s, (name, g)) in group.generators().iter().enumerate() {
            for c in 0..n_curves {
                if coords.column(perms[s][c]) != pic.act(*g, &coords.column(c)) {
                    return Err(Error::Dataset(format!(
                        "{} moves curve {} to {} but its Pic matrix disagrees",
                        name, self.labels[c], self.labels[perms[s][c]]
                    )));
                }
            }
        }
        if self.eta.len() != rank {
            return Err(Error::Dataset(format!("basis lift needs {} curves", rank)));
        }
        for (k, label) in self.eta.iter().enumerate() {
            let c = self
                .labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| Error::Dataset(format!("unknown basis curve {}", label)))?;
            let col = coords.column(c);
            if col.iter().enumerate().any(|(i, x)| *x != Int::from(i64::from(i == k))) {
                return Err(Error::Dataset(format!("basis curve {} does not have coordinates e_{}", label, k + 1)));
            }
        }
        if !FgAbGroup::new(rank, coords.clone())?.is_trivial() {
            return Err(Error::Dataset("curve classes do not generate Pic".into()));
        }

        // unit values re-verified in exact arithmetic
        let um = &self.unit_model;
        let level = Int::from(um.torsion);
        if u64::from(um.cyclotomic_order) != um.torsion {
            return Err(Error::Dataset("torsion must be the roots of unity of the cyclotomic field".into()));
        }
        let gens = um
            .free_generators
            .iter()
            .map(|g| g.value.element(um.cyclotomic_order))
            .collect::<Result<Vec<_>>>()?;
        let labels: Vec<String> = um.free_generators.iter().map(|g| g.label.clone()).collect();
        for (name, v) in &self.values {
            let value = v.cyclotomic.element(um.cyclotomic_order)?;
            let t = v
                .unit
                .torsion_at(&level)
                .ok_or_else(|| Error::Dataset(format!("{}: root of unity outside μ{}", name, um.torsion)))?;
            let t = i64::try_from(&t).map_err(|_| Error::Dataset("torsion exponent".into()))?;
            for l in v.unit.free_part().keys() {
                if !labels.contains(l) {
                    return Err(Error::Dataset(format!("{}: unknown free generator {}", name, l)));
                }
            }
            let exps: Vec<i64> = labels.iter().map(|l| v.unit.free_part().get(l).copied().unwrap_or(0)).collect();
            if !verify_unit_decomposition(&value, t, &exps, &gens)? {
                return Err(Error::Dataset(format!("{}: claimed decomposition {} does not hold", name, v.unit)));
            }
        }

        let model = UnitModel::Fg { torsion: um.torsion, free: labels };
        let support = ConstantSupport { level: level.clone(), free: vec![] };
        let consts = ConstantModule::new(&group, &model, &support)?;
        let pic_dual = Arc::new(pic.dual()?);
        let coefficients = Arc::new(consts.module.tensor(&pic_dual)?);
        let k = consts.module.rank();
        let mut cocycle = Vec::new();
        let mut torsion = Vec::new();
        for block in &self.cocycle {
            let mut val = vec![Int::zero(); k * rank];
            let mut tors = vec![Int::zero(); rank];
            for (name, col) in block {
                let v = self
                    .values
                    .get(name)
                    .ok_or_else(|| Error::Dataset(format!("cocycle uses unknown value {}", name)))?;
                if *col >= rank {
                    return Err(Error::Dataset(format!("cocycle index {} out of range", col)));
                }
                let c = consts.coords(&v.unit)?;
                for (i, x) in c.iter().enumerate() {
                    val[i * rank + col] += x;
                }
                tors[*col] += &c[0];
            }
            cocycle.extend(val);
            torsion.extend(tors);
        }
        let torsion_cocycle = RationalCochain { nums: torsion, den: level };
        let mut subgroups = Vec::new();
        for (name, words) in &self.subgroups {
            let elems = words.iter().map(|w| group.parse_element(w)).collect::<Result<Vec<_>>>()?;
            subgroups.push((name.clone(), subgroup_from_generators(&group, &elems)?));
        }
        Ok(Dp2Data { group, curves, pic, pic_dual, coords, model, coefficients, cocycle, torsion_cocycle, subgroups })
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Dp2Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Dp2Report {
    pub checks: Vec<Dp2Check>,
    /// `H²(G, (μ_N ⊕ Z^r) ⊗ Pic^∨)`.
    pub fg_group: String,
    /// `H³(G, Pic^∨)`, the divisible-mode avatar of `H²(G, k^× ⊗ Pic^∨)`.
    pub divisible_group: String,
    pub fg_kernel: String,
    pub divisible_kernel: String,
    pub assumptions: Vec<String>,
}

impl Dp2Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(name: &str, passed: bool, detail: String) -> Dp2Check {
    Dp2Check { name: name.into(), passed, detail }
}

fn witness(f: &[Int]) -> String {
    let v: Vec<String> = f.iter().map(|x| x.to_string()).collect();
    format!("[{}]", v.join(", "))
}

/// Restriction of a cocycle is a coboundary on each subgroup.
fn restriction_vanishes(
    res: &Arc<FreeResolution>,
    m: &Arc<GModule>,
    n: usize,
    f: &[Int],
    sub: &Subgroup,
) -> Result<bool> {
    let rr = res.restrict(sub)?;
    let ms = Arc::new(m.restrict(sub)?);
    CohGroup::new(&rr.res, &ms, n)?.is_coboundary(&restrict_cochain(&rr, m, f))
}

pub fn dp2_verify(dataset: &Dp2Dataset) -> Result<Dp2Report> {
    let data = dataset.validate()?;
    let res = Arc::new(auto_resolution(&data.group, 4)?);
    let mut checks = Vec::new();

    let h2 = CohGroup::new(&res, &data.coefficients, 2)?;
    let is_cocycle = data.cocycle.len() == h2.cochain_len() && h2.is_cocycle(&data.cocycle);
    checks.push(check(
        "cocycle",
        is_cocycle,
        if is_cocycle {
            format!("2-cocycle with values in {} generators", data.coefficients.rank())
        } else {
            format!("δ(c) = {}", witness(&h2.coboundary_out().mul_vec(&data.cocycle)))
        },
    ));
    if !is_cocycle {
        return Ok(Dp2Report {
            checks,
            fg_group: h2.describe(),
            divisible_group: String::new(),
            fg_kernel: String::new(),
            divisible_kernel: String::new(),
            assumptions: vec![],
        });
    }
    let fg_coords = h2.classify(&data.cocycle)?;
    let fg_order = h2.class_order(&fg_coords);
    let shifted = bockstein_shift(&res, &data.pic_dual, 2, &data.torsion_cocycle)?;
    let h3 = CohGroup::new(&res, &data.pic_dual, 3)?;
    let div_coords = h3.classify(&shifted)?;
    let div_order = h3.class_order(&div_coords);
    let two = Some(Int::from(2));
    checks.push(check(
        "order-two",
        fg_order == two && div_order == two,
        format!(
            "order {} in {} (fg); order {} in {} (divisible)",
            fg_order.as_ref().map_or("∞".into(), |o| o.to_string()),
            h2.describe(),
            div_order.as_ref().map_or("∞".into(), |o| o.to_string()),
            h3.describe()
        ),
    ));

    let mut failures = Vec::new();
    for (name, sub) in &data.subgroups {
        if !restriction_vanishes(&res, &data.coefficients, 2, &data.cocycle, sub)? {
            failures.push(format!("{} (fg)", name));
        }
        if !restriction_vanishes(&res, &data.pic_dual, 3, &shifted, sub)? {
            failures.push(format!("{} (divisible)", name));
        }
    }
    let names: Vec<&str> = data.subgroups.iter().map(|(n, _)| n.as_str()).collect();
    checks.push(check(
        "restrictions",
        failures.is_empty(),
        if failures.is_empty() {
            format!("restrictions to {} are coboundaries", names.join(", "))
        } else {
            format!("nonzero restriction to {}", failures.join(", "))
        },
    ));

    let subs: Vec<Subgroup> = data.subgroups.iter().map(|(_, s)| s.clone()).collect();
    let div_kernel = bogomolov_kernel(&res, &data.pic_dual, 3, &subs)?;
    let fg_kernel = bogomolov_kernel(&res, &data.coefficients, 2, &subs)?;
    let div_ok = div_kernel.group().order() == two && div_kernel.contains_coords(&div_coords)?;
    let fg_contains = fg_kernel.contains_coords(&fg_coords)?;
    checks.push(check(
        "bogomolov-kernel",
        div_ok && fg_contains,
        format!(
            "kernel {} in the divisible model, generated by the class: {}; kernel {} in the fg model, containing the class: {}",
            div_kernel.describe(),
            div_ok,
            fg_kernel.describe(),
            fg_contains
        ),
    ));

    let abelian: Vec<Subgroup> = all_subgroups(&data.group)?.into_iter().filter(|h| h.is_abelian()).collect();
    let mut bad = Vec::new();
    for sub in &abelian {
        if !restriction_vanishes(&res, &data.pic_dual, 3, &shifted, sub)?
            || !restriction_vanishes(&res, &data.coefficients, 2, &data.cocycle, sub)?
        {
            bad.push(format!("order {} subgroup", sub.order()));
        }
    }
    checks.push(check(
        "abelian-subgroups",
        bad.is_empty(),
        if bad.is_empty() {
            format!("class restricts to zero on all {} abelian subgroups", abelian.len())
        } else {
            format!("nonzero restriction to {}", bad.join(", "))
        },
    ));
    Ok(Dp2Report {
        checks,
        fg_group: h2.describe(),
        divisible_group: h3.describe(),
        fg_kernel: fg_kernel.describe(),
        divisible_kernel: div_kernel.describe(),
        assumptions: vec![
            "the free generators of the unit model are multiplicatively independent".into(),
            "Pic action matrices and curve coordinates are taken from the dataset".into(),
        ],
    })
}
