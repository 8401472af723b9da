use std::collections::BTreeSet;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::units::{UnitModel, UnitValue};
use crate::error::{Error, Result};
use crate::fingroup::{FinGroup, Subgroup};
use crate::gmod::{GMap, GModule};
use crate::intlat::{FgAbGroup, Int, IntMatrix};

/// `g·u = constant · monomial` for a group generator g and a unit generator u.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct Twist {
    #[serde(default)]
    pub constant: UnitValue,
    /// Exponents over the unit generators.
    pub monomial: Vec<i64>,
}

impl Twist {
    pub fn new(constant: UnitValue, monomial: Vec<i64>) -> Self {
        Twist { constant, monomial }
    }

    pub fn monomial(monomial: Vec<i64>) -> Self {
        Twist { constant: UnitValue::one(), monomial }
    }
}

/// Units of an open `U ⊂ X` modulo constants, the boundary divisors, and how
/// the group moves both.
#[derive(Clone, Debug)]
pub struct EquivariantPresentation {
    pub name: String,
    pub group: Arc<FinGroup>,
    pub divisor_labels: Vec<String>,
    /// `divisor_perms[s][i]`: index of the image of divisor i under generator s.
    pub divisor_perms: Vec<Vec<usize>>,
    pub unit_labels: Vec<String>,
    /// `|Σ| × r`; column k is the divisor of unit k.
    pub div_map: IntMatrix,
    /// `twists[s][k]`: generator s applied to unit k.
    pub twists: Vec<Vec<Twist>>,
}

/// Validated module data of a presentation.
#[derive(Clone, Debug)]
pub struct PresentationModules {
    pub divisors: Arc<GModule>,
    /// Units modulo constants with the monomial action.
    pub units: Arc<GModule>,
    pub div: GMap,
    /// Pic, relation-free whenever it is torsion-free.
    pub pic: Arc<GModule>,
    /// `Z[Σ] → Pic`.
    pub projection: GMap,
    pub pic_torsion_free: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PresentationReport {
    pub name: String,
    pub group: String,
    pub divisors: usize,
    pub units: usize,
    pub pic: String,
    pub pic_torsion_free: bool,
    /// Action of each group generator on the lattice Pic (empty if Pic has torsion).
    pub pic_action: Vec<Vec<Vec<i64>>>,
    pub twist_level: String,
}

/// Root-of-unity level and free labels needed by all twist constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantSupport {
    pub level: Int,
    pub free: Vec<String>,
}

impl ConstantSupport {
    pub fn model(&self) -> UnitModel {
        let torsion = u64::try_from(&self.level).unwrap_or(u64::MAX);
        UnitModel::Fg { torsion, free: self.free.clone() }
    }
}

/// The model's constant group as a trivial module, with a coordinate map.
pub(crate) struct ConstantModule {
    pub module: Arc<GModule>,
    /// `Some(N)` when the model is divisible and classes are shifted.
    pub shift_level: Option<Int>,
    level: Int,
    free: Vec<String>,
    divisible: bool,
}

impl ConstantModule {
    pub(crate) fn new(group: &Arc<FinGroup>, model: &UnitModel, support: &ConstantSupport) -> Result<Self> {
        let (level, free, divisible) = match model {
            UnitModel::Fg { torsion, free } => {
                if *torsion == 0 {
                    return Err(Error::InvalidPresentation("model torsion order must be positive".into()));
                }
                (Int::from(*torsion), free.clone(), false)
            }
            UnitModel::Divisible => (support.level.clone(), vec![], true),
        };
        let k = 1 + free.len();
        let mut rel = IntMatrix::zeros(k, 1);
        rel[(0, 0)] = level.clone();
        let module = Arc::new(GModule::trivial(group, FgAbGroup::new(k, rel)?));
        let shift_level = divisible.then(|| level.clone());
        Ok(ConstantModule { module, shift_level, level, free, divisible })
    }

    /// Coordinates `[torsion exponent, free exponents…]`; free parts are
    /// dropped in divisible mode.
    pub(crate) fn coords(&self, v: &UnitValue) -> Result<Vec<Int>> {
        let t = v.torsion_at(&self.level).ok_or_else(|| {
            Error::ConstantOutsideModel(format!("{} is not in μ{}", v, self.level))
        })?;
        let mut out = vec![t];
        if self.divisible {
            return Ok(out);
        }
        out.extend(std::iter::repeat_n(Int::zero(), self.free.len()));
        for (label, e) in v.free_part() {
            let pos = self.free.iter().position(|f| f == label).ok_or_else(|| {
                Error::ConstantOutsideModel(format!("free generator `{}` is not in the model", label))
            })?;
            out[1 + pos] = Int::from(*e);
        }
        Ok(out)
    }
}

fn perm_of_matrix(m: &IntMatrix) -> Vec<usize> {
    (0..m.cols())
        .map(|i| (0..m.rows()).find(|&j| m[(j, i)].is_one()).expect("permutation matrix"))
        .collect()
}

impl EquivariantPresentation {
    pub fn rank_units(&self) -> usize {
        self.unit_labels.len()
    }

    pub(crate) fn check_shapes(&self) -> Result<()> {
        let gens = self.group.generators().len();
        let (s, r) = (self.divisor_labels.len(), self.unit_labels.len());
        if self.divisor_perms.len() != gens || self.twists.len() != gens {
            return Err(Error::InvalidPresentation(format!(
                "need divisor permutations and twists for each of the {} group generators",
                gens
            )));
        }
        for (k, p) in self.divisor_perms.iter().enumerate() {
            let set: BTreeSet<usize> = p.iter().copied().collect();
            if p.len() != s || set.len() != s || set.iter().any(|&x| x >= s) {
                return Err(Error::InvalidPresentation(format!(
                    "divisor action of generator {} is not a permutation of {} divisors",
                    self.group.generators()[k].0,
                    s
                )));
            }
        }
        if self.div_map.shape() != (s, r) {
            return Err(Error::InvalidPresentation(format!("div map must be {}×{}", s, r)));
        }
        for (k, row) in self.twists.iter().enumerate() {
            if row.len() != r || row.iter().any(|t| t.monomial.len() != r) {
                return Err(Error::InvalidPresentation(format!(
                    "twists of generator {} need one monomial of length {} per unit",
                    self.group.generators()[k].0,
                    r
                )));
            }
        }
        Ok(())
    }

    fn monomial_matrix(&self, s: usize) -> IntMatrix {
        let r = self.rank_units();
        let cols: Vec<Vec<Int>> =
            self.twists[s].iter().map(|t| t.monomial.iter().map(|&x| Int::from(x)).collect()).collect();
        IntMatrix::from_columns(r, &cols)
    }

    /// Smallest level and free labels containing every twist constant.
    pub fn constant_support(&self) -> ConstantSupport {
        let mut level = Int::one();
        let mut free = BTreeSet::new();
        for row in &self.twists {
            for t in row {
                level = level.lcm(&Int::from(t.constant.root().1));
                free.extend(t.constant.free_part().keys().cloned());
            }
        }
        ConstantSupport { level, free: free.into_iter().collect() }
    }

    /// Builds and validates the module data (everything except constants).
    pub fn modules(&self) -> Result<PresentationModules> {
        self.check_shapes()?;
        let (s, r) = (self.divisor_labels.len(), self.rank_units());
        let divisors = Arc::new(
            GModule::permutation_from_generators(&self.group, s, &self.divisor_perms)
                .map_err(|e| Error::InvalidPresentation(format!("divisor action: {}", e)))?,
        );
        let mono: Vec<IntMatrix> = (0..self.group.generators().len()).map(|k| self.monomial_matrix(k)).collect();
        let units = Arc::new(
            GModule::new(&self.group, r, IntMatrix::zeros(r, 0), &mono)
                .map_err(|e| Error::InvalidPresentation(format!("monomial action on units: {}", e)))?,
        );
        let div = GMap::new(&units, &divisors, self.div_map.clone())
            .map_err(|e| Error::NotEquivariant(format!("div map: {}", e)))?;
        let (kernel, incl) = div.kernel()?;
        if kernel.rank() > 0 {
            let w: Vec<String> = incl.matrix.column(0).iter().map(|x| x.to_string()).collect();
            return Err(Error::InvalidPresentation(format!(
                "div is not injective: unit exponents ({}) have trivial divisor",
                w.join(", ")
            )));
        }
        let (pic_raw, proj_raw) = div.cokernel()?;
        let pic_torsion_free = pic_raw.underlying().is_lattice();
        let (pic, projection) = if pic_torsion_free {
            let (lat, to, _) = pic_raw.as_lattice()?;
            let lat = Arc::new(lat);
            let proj = GMap::new(&divisors, &lat, to)?;
            (lat, proj)
        } else {
            (pic_raw, proj_raw)
        };
        Ok(PresentationModules { divisors, units, div, pic, projection, pic_torsion_free })
    }

    /// `0 → K → U → M_U → 0` where K is the model's constant group and U has
    /// generator actions `[[1, C(g)], [0, A(g)]]`.
    pub(crate) fn twisted_units(&self, mods: &PresentationModules, consts: &ConstantModule) -> Result<(Arc<GModule>, GMap, GMap)> {
        let k = consts.module.rank();
        let r = self.rank_units();
        let mut rel = IntMatrix::zeros(k + r, consts.module.relations().cols());
        rel.set_block(0, 0, consts.module.relations());
        let mut actions = Vec::new();
        for (s, row) in self.twists.iter().enumerate() {
            let mut m = IntMatrix::identity(k + r);
            m.set_block(k, k, &self.monomial_matrix(s));
            for (u, t) in row.iter().enumerate() {
                let c = consts.coords(&t.constant).map_err(|e| {
                    Error::ConstantOutsideModel(format!(
                        "{} applied to {}: {}",
                        self.group.generators()[s].0,
                        self.unit_labels[u],
                        e
                    ))
                })?;
                for (i, x) in c.into_iter().enumerate() {
                    m[(i, k + u)] = x;
                }
            }
            actions.push(m);
        }
        let module = Arc::new(GModule::new(&self.group, k + r, rel, &actions).map_err(|e| {
            Error::RelatorViolated(format!("twist constants do not define an action: {}", e))
        })?);
        let incl = GMap::new(&consts.module, &module, IntMatrix::identity(k).vstack(&IntMatrix::zeros(r, k)))?;
        let to_div = GMap::new(&module, &mods.divisors, IntMatrix::zeros(mods.divisors.rank(), k).hstack(&self.div_map))?;
        Ok((module, incl, to_div))
    }

    /// Checks every invariant, including that the constants give an action.
    pub fn validate(&self) -> Result<PresentationReport> {
        let mods = self.modules()?;
        let support = self.constant_support();
        let consts = ConstantModule::new(&self.group, &support.model(), &support)?;
        self.twisted_units(&mods, &consts)?;
        let pic_action = if mods.pic_torsion_free {
            self.group
                .generator_elements()
                .iter()
                .map(|&g| crate::formats::matrix_to_i64(mods.pic.action(g)))
                .collect()
        } else {
            vec![]
        };
        Ok(PresentationReport {
            name: self.name.clone(),
            group: self.group.name().to_string(),
            divisors: self.divisor_labels.len(),
            units: self.rank_units(),
            pic: mods.pic.underlying().describe(),
            pic_torsion_free: mods.pic_torsion_free,
            pic_action,
            twist_level: support.level.to_string(),
        })
    }

    /// Adds a G-orbit of divisors disjoint from the units' support, given by
    /// generator permutations of the new labels; the orbit must be free.
    pub fn adjoin_orbit(&self, labels: &[String], gen_perms: &[Vec<usize>]) -> Result<Self> {
        if labels.is_empty() {
            return Ok(self.clone());
        }
        let n = labels.len();
        if gen_perms.len() != self.group.generators().len() {
            return Err(Error::InvalidPresentation("one permutation per group generator".into()));
        }
        let orbit = GModule::permutation_from_generators(&self.group, n, gen_perms)?;
        for g in 0..self.group.order() {
            if g != self.group.identity() && (0..n).any(|i| orbit.action(g)[(i, i)].is_one()) {
                return Err(Error::InvalidPresentation(format!(
                    "orbit is not free: {} fixes a divisor",
                    self.group.element_name(g)
                )));
            }
        }
        let base = self.divisor_labels.len();
        let mut out = self.clone();
        out.divisor_labels.extend(labels.iter().cloned());
        for (s, p) in out.divisor_perms.iter_mut().enumerate() {
            p.extend(gen_perms[s].iter().map(|&j| base + j));
        }
        out.div_map = self.div_map.vstack(&IntMatrix::zeros(n, self.rank_units()));
        out.name = format!("{}+orbit", self.name);
        Ok(out)
    }

    /// Adjoins the regular orbit `{g·E}`, labelled `prefix[g]`.
    pub fn adjoin_free_orbit(&self, prefix: &str) -> Result<Self> {
        let g = &self.group;
        let labels: Vec<String> = (0..g.order()).map(|h| format!("{}[{}]", prefix, g.element_name(h))).collect();
        let perms: Vec<Vec<usize>> =
            g.generator_elements().iter().map(|&s| (0..g.order()).map(|h| g.mul(s, h)).collect()).collect();
        self.adjoin_orbit(&labels, &perms)
    }

    /// The same data viewed over a subgroup; constants of the subgroup's
    /// generators are materialized from the full action.
    pub fn restrict(&self, sub: &Subgroup) -> Result<Self> {
        if sub.parent().order() != self.group.order() {
            return Err(Error::SubgroupMismatch("subgroup of a different group".into()));
        }
        let mods = self.modules()?;
        let support = self.constant_support();
        let consts = ConstantModule::new(&self.group, &support.model(), &support)?;
        let (twisted, _, _) = self.twisted_units(&mods, &consts)?;
        let k = consts.module.rank();
        let r = self.rank_units();
        let h = sub.group();
        let mut divisor_perms = Vec::new();
        let mut twists = Vec::new();
        for &(_, idx) in h.generators() {
            let g = sub.embedding()[idx];
            divisor_perms.push(perm_of_matrix(mods.divisors.action(g)));
            let a = twisted.action(g);
            let mut row = Vec::with_capacity(r);
            for u in 0..r {
                let t = i64::try_from(&a[(0, k + u)].mod_floor(&support.level))
                    .map_err(|_| Error::SizeGuard("twist exponent".into()))?;
                let level = i64::try_from(&support.level).map_err(|_| Error::SizeGuard("twist level".into()))?;
                let mut c = UnitValue::root_of_unity(t, level)?;
                for (i, label) in support.free.iter().enumerate() {
                    let e = i64::try_from(&a[(1 + i, k + u)]).map_err(|_| Error::SizeGuard("twist exponent".into()))?;
                    c = c.mul(&UnitValue::generator(label, e));
                }
                let mono = (0..r)
                    .map(|v| i64::try_from(&a[(k + v, k + u)]).map_err(|_| Error::SizeGuard("monomial".into())))
                    .collect::<Result<Vec<_>>>()?;
                row.push(Twist::new(c, mono));
            }
            twists.push(row);
        }
        Ok(EquivariantPresentation {
            name: format!("{}|{}", self.name, h.name()),
            group: h.clone(),
            divisor_labels: self.divisor_labels.clone(),
            divisor_perms,
            unit_labels: self.unit_labels.clone(),
            div_map: self.div_map.clone(),
            twists,
        })
    }
}
