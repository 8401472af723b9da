use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use super::presentation::{ConstantModule, EquivariantPresentation};
use super::units::UnitModel;
use crate::cohom::{bockstein_shift, CohGroup, Cochain, RationalCochain};
use crate::error::{Error, Result};
use crate::extcalc::{ext2_class_on, resolve_module, FourTermExt};
use crate::fingroup::FinGroup;
use crate::gmod::{GMap, GModule};
use crate::intlat::{AbHom, AbSubgroup, FgAbGroup, Int, IntMatrix};
use crate::resolve::{auto_resolution, FreeResolution};

/// Cocharacter lattice of the split torus `G_m`.
pub fn gm(group: &Arc<FinGroup>) -> Arc<GModule> {
    Arc::new(GModule::trivial_z(group))
}

/// Presents a cohomology group on its canonical generators.
pub fn canonical_group(h: &CohGroup) -> Result<FgAbGroup> {
    let inv = h.invariants();
    FgAbGroup::new(inv.len(), IntMatrix::diagonal(&inv))
}

/// `0 → K⊗𝔛 → U⊗𝔛 → Z[Σ]⊗𝔛 → Pic⊗𝔛 → 0` for a chosen unit model.
#[derive(Clone, Debug)]
pub struct Alpha {
    pub ext: FourTermExt,
    pub torus: Arc<GModule>,
    /// `Some(N)` in divisible mode: K = Z/N and classes are shifted by one degree.
    pub shift_level: Option<Int>,
}

pub fn alpha_class(p: &EquivariantPresentation, torus: &Arc<GModule>, model: &UnitModel) -> Result<Alpha> {
    if torus.has_relations() {
        return Err(Error::Torsion("cocharacter lattice must be free".into()));
    }
    let mods = p.modules()?;
    let consts = ConstantModule::new(&p.group, model, &p.constant_support())?;
    let (twisted, incl, to_div) = p.twisted_units(&mods, &consts)?;
    let tensor = |m: &GModule| -> Result<Arc<GModule>> { Ok(Arc::new(m.tensor(torus)?)) };
    let id_x = IntMatrix::identity(torus.rank());
    let a = tensor(&consts.module)?;
    let b = tensor(&twisted)?;
    let c = tensor(&mods.divisors)?;
    let d = tensor(&mods.pic)?;
    let ext = FourTermExt::new(
        GMap::new(&a, &b, incl.matrix.kronecker(&id_x))?,
        GMap::new(&b, &c, to_div.matrix.kronecker(&id_x))?,
        GMap::new(&c, &d, mods.projection.matrix.kronecker(&id_x))?,
    )?;
    Ok(Alpha { ext, torus: torus.clone(), shift_level: consts.shift_level })
}

/// The image of `∂ⁿ` with the map it came from.
#[derive(Clone, Debug)]
pub struct AmitsurImage {
    pub degree: usize,
    /// Whether classes live in `H^{n+1}(G, 𝔛)` (divisible mode).
    pub shifted: bool,
    pub source: String,
    pub ambient: String,
    pub image: AbSubgroup,
    pub map: AbHom,
}

impl AmitsurImage {
    pub fn invariants(&self) -> Vec<Int> {
        self.image.invariants()
    }

    pub fn order(&self) -> Option<Int> {
        self.image.order()
    }

    pub fn is_zero(&self) -> bool {
        self.image.group().is_trivial()
    }

    pub fn describe(&self) -> String {
        self.image.group().describe()
    }

    /// Kernel of `∂ⁿ` inside the canonical source group.
    pub fn kernel(&self) -> Result<AbSubgroup> {
        self.map.kernel()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AmitsurLine {
    pub degree: usize,
    pub invariants: Vec<String>,
    pub order: Option<String>,
    pub group: String,
    pub ambient: String,
    pub shifted: bool,
}

impl From<&AmitsurImage> for AmitsurLine {
    fn from(a: &AmitsurImage) -> Self {
        AmitsurLine {
            degree: a.degree,
            invariants: a.invariants().iter().map(|x| x.to_string()).collect(),
            order: a.order().map(|x| x.to_string()),
            group: a.describe(),
            ambient: a.ambient.clone(),
            shifted: a.shifted,
        }
    }
}

impl Alpha {
    /// Degree in which `∂ⁿ` values are reported.
    pub fn target_degree(&self, n: usize) -> usize {
        n + usize::from(self.shift_level.is_some())
    }

    pub fn target_module(&self) -> &Arc<GModule> {
        if self.shift_level.is_some() {
            &self.torus
        } else {
            self.ext.a()
        }
    }

    /// Resolution length needed to classify `∂ⁿ` values.
    pub fn needed_degree(&self, n: usize) -> usize {
        self.target_degree(n) + 1
    }

    /// `∂ⁿ(c)` for a cocycle `c` of degree `n−2` with values in `Pic⊗𝔛`.
    pub fn partial(&self, res: &FreeResolution, n: usize, c: &[Int]) -> Result<Cochain> {
        let y = self.ext.double_connecting(res, n, c)?;
        match &self.shift_level {
            None => Ok(y),
            Some(level) => bockstein_shift(res, &self.torus, n, &RationalCochain { nums: y, den: level.clone() }),
        }
    }

    /// `∂ⁿ` on all of `H^{n−2}(G, Pic⊗𝔛)` and its image.
    pub fn image(&self, res: &Arc<FreeResolution>, n: usize) -> Result<AmitsurImage> {
        if n < 2 {
            return Err(Error::Degree(format!("Amitsur groups start in degree 2, got {}", n)));
        }
        let src = CohGroup::new(res, self.ext.d(), n - 2)?;
        let tgt = CohGroup::new(res, self.target_module(), self.target_degree(n))?;
        let ambient = canonical_group(&tgt)?;
        let source = canonical_group(&src)?;
        let mut cols = Vec::new();
        for g in src.generators() {
            cols.push(tgt.classify(&self.partial(res, n, &g.cocycle)?)?);
        }
        let matrix = IntMatrix::from_columns(ambient.generator_count(), &cols);
        let map = AbHom::new(source, ambient.clone(), matrix)?;
        let image = AbSubgroup::new(&ambient, &cols)?;
        Ok(AmitsurImage {
            degree: n,
            shifted: self.shift_level.is_some(),
            source: src.describe(),
            ambient: tgt.describe(),
            image,
            map,
        })
    }
}

/// `Amⁿ` for each requested degree, sharing one resolution.
pub fn amitsur_groups(
    p: &EquivariantPresentation,
    torus: &Arc<GModule>,
    model: &UnitModel,
    degrees: &[usize],
) -> Result<Vec<AmitsurImage>> {
    let alpha = alpha_class(p, torus, model)?;
    let top = degrees.iter().map(|&n| alpha.needed_degree(n)).max().unwrap_or(2);
    let res = Arc::new(auto_resolution(&p.group, top)?);
    degrees.iter().map(|&n| alpha.image(&res, n)).collect()
}

pub fn amitsur_group(p: &EquivariantPresentation, torus: &Arc<GModule>, model: &UnitModel, n: usize) -> Result<AmitsurImage> {
    Ok(amitsur_groups(p, torus, model, &[n])?.remove(0))
}

/// The universal torsor obstruction, computed two ways.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BetaReport {
    pub nonzero: bool,
    pub shifted: bool,
    /// The group containing `∂²(Id)` (or its shift).
    pub group: String,
    pub coords: Vec<String>,
    pub cocycle: Vec<String>,
    /// The Ext group containing the class of the four-term sequence.
    pub ext_group: String,
    pub ext_nonzero: bool,
}

pub fn beta(p: &EquivariantPresentation, model: &UnitModel) -> Result<BetaReport> {
    let mods = p.modules()?;
    if !mods.pic_torsion_free {
        return Err(Error::Torsion(format!(
            "Pic has torsion ({}); beta undefined",
            mods.pic.underlying().describe()
        )));
    }
    let group = &p.group;
    let r = mods.pic.rank();
    // ∂²(Id) with coefficients in the dual of Pic
    let dual = Arc::new(mods.pic.dual()?);
    let alpha = alpha_class(p, &dual, model)?;
    let res = Arc::new(auto_resolution(group, alpha.needed_degree(2))?);
    let mut id = vec![Int::zero(); r * r];
    for i in 0..r {
        id[i * r + i] = Int::one();
    }
    if res.rank(0) != 1 {
        return Err(Error::Internal("resolution of Z must start with one generator".into()));
    }
    let value = alpha.partial(&res, 2, &id)?;
    let tgt = CohGroup::new(&res, alpha.target_module(), alpha.target_degree(2))?;
    let coords = tgt.classify(&value)?;
    let nonzero = coords.iter().any(|c| !c.is_zero());

    // the class of the four-term sequence itself
    let ext_alpha = alpha_class(p, &gm(group), model)?;
    let f = resolve_module(ext_alpha.ext.d(), if ext_alpha.shift_level.is_some() { 4 } else { 3 })?;
    let cls = ext2_class_on(&ext_alpha.ext, &f)?;
    let (ext_nonzero, ext_group) = match &ext_alpha.shift_level {
        None => (!cls.is_trivial(), cls.describe_group()),
        Some(level) => {
            let z = gm(group);
            let shifted = bockstein_shift(&f, &z, 2, &RationalCochain { nums: cls.cocycle.clone(), den: level.clone() })?;
            let ext3 = CohGroup::new(&f, &z, 3)?;
            (!ext3.is_coboundary(&shifted)?, ext3.describe())
        }
    };
    if nonzero != ext_nonzero {
        return Err(Error::Internal(format!(
            "beta routes disagree: ∂²(Id) {} but the extension class {}",
            if nonzero { "is nonzero" } else { "vanishes" },
            if ext_nonzero { "is nonzero" } else { "vanishes" }
        )));
    }
    Ok(BetaReport {
        nonzero,
        shifted: alpha.shift_level.is_some(),
        group: tgt.describe(),
        coords: coords.iter().map(|c| c.to_string()).collect(),
        cocycle: value.iter().map(|c| c.to_string()).collect(),
        ext_group,
        ext_nonzero,
    })
}
