use std::sync::Arc;

use super::invariants::canonical_group;
use crate::cohom::{restrict_cochain, CohGroup};
use crate::error::Result;
use crate::fingroup::Subgroup;
use crate::gmod::GModule;
use crate::intlat::{AbHom, AbSubgroup, FgAbGroup, Int, IntMatrix};
use crate::resolve::FreeResolution;

/// `⋂ ker(Res: Hⁿ(G, M) → Hⁿ(H, M))` over the given subgroups.
#[derive(Clone, Debug)]
pub struct RestrictionKernel {
    pub cohomology: CohGroup,
    pub kernel: AbSubgroup,
    /// Each subgroup's restriction map on canonical coordinates.
    pub restrictions: Vec<AbHom>,
}

impl RestrictionKernel {
    pub fn group(&self) -> &FgAbGroup {
        self.kernel.group()
    }

    pub fn describe(&self) -> String {
        self.kernel.group().describe()
    }

    pub fn contains_coords(&self, coords: &[Int]) -> Result<bool> {
        self.kernel.contains(coords)
    }

    pub fn contains_cocycle(&self, f: &[Int]) -> Result<bool> {
        let c = self.cohomology.classify(f)?;
        self.kernel.contains(&c)
    }
}

pub fn bogomolov_kernel(
    res: &Arc<FreeResolution>,
    coeff: &Arc<GModule>,
    n: usize,
    subgroups: &[Subgroup],
) -> Result<RestrictionKernel> {
    let h = CohGroup::new(res, coeff, n)?;
    let source = canonical_group(&h)?;
    let gens = h.generators();
    let mut restrictions = Vec::with_capacity(subgroups.len());
    let mut stacked_rel = IntMatrix::zeros(0, 0);
    let mut stacked = IntMatrix::zeros(0, gens.len());
    for sub in subgroups {
        let rr = res.restrict(sub)?;
        let m = Arc::new(coeff.restrict(sub)?);
        let hs = CohGroup::new(&rr.res, &m, n)?;
        let target = canonical_group(&hs)?;
        let cols = gens
            .iter()
            .map(|g| hs.classify(&restrict_cochain(&rr, coeff, &g.cocycle)))
            .collect::<Result<Vec<_>>>()?;
        let mat = IntMatrix::from_columns(target.generator_count(), &cols);
        stacked = stacked.vstack(&mat);
        stacked_rel = stacked_rel.block_diag(target.relations());
        restrictions.push(AbHom::new(source.clone(), target, mat)?);
    }
    let all = AbHom::new(source.clone(), FgAbGroup::new(stacked.rows(), stacked_rel)?, stacked)?;
    let kernel = all.kernel()?;
    Ok(RestrictionKernel { cohomology: h, kernel, restrictions })
}
