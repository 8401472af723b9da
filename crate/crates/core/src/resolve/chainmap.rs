use num_traits::Zero;

use super::{FreeResolution, GroupRingMatrix};
use crate::error::{Error, Result};
use crate::gmod::PresentedSolver;
use crate::intlat::{ColumnEchelon, Int, IntMatrix};

/// Z[G]-linear maps `F_n → Q_n` commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub components: Vec<GroupRingMatrix>,
}

impl ChainMap {
    pub fn top_degree(&self) -> usize {
        self.components.len().saturating_sub(1)
    }

    pub fn component(&self, n: usize) -> &GroupRingMatrix {
        &self.components[n]
    }

    /// Checks `d^Q_n φ_n = φ_{n-1} d^F_n` for every degree.
    pub fn commutes(&self, source: &FreeResolution, target: &FreeResolution) -> bool {
        let g = source.group();
        (1..self.components.len()).all(|n| {
            let left = target.expanded(n).mul(&self.components[n].expand(g));
            let right = self.components[n - 1].expand(g).mul(source.expanded(n));
            left == right
        })
    }
}

/// Lifts a module map `phi: D_F → D_Q` (matrix on generators) to a chain map
/// `F → Q` through `degree`. Both resolutions must be over the same group.
pub fn chain_map_lift(
    source: &FreeResolution,
    target: &FreeResolution,
    phi: &IntMatrix,
    degree: usize,
) -> Result<ChainMap> {
    let group = source.group();
    if group.order() != target.group().order() {
        return Err(Error::SubgroupMismatch("chain map between resolutions over different groups".into()));
    }
    source.require(degree)?;
    target.require(degree)?;
    if phi.shape() != (target.target().rank(), source.target().rank()) {
        return Err(Error::Dimension("module map shape".into()));
    }
    let n = group.order();
    let eps_q = target.expanded_augmentation();
    let solver = PresentedSolver::new(&eps_q, target.target().relations());
    let mut cols = Vec::new();
    for a in 0..source.rank(0) {
        let t = phi.mul_vec(&source.augmentation().column(a));
        let x = solver
            .solve(&t)
            .ok_or_else(|| Error::Internal("augmentation of the target is not surjective".into()))?;
        cols.push(x);
    }
    let mut components = vec![GroupRingMatrix::from_expanded_columns(n, target.rank(0), &cols)];
    for k in 1..=degree {
        let prev = components[k - 1].expand(group);
        let ech = ColumnEchelon::new(target.expanded(k));
        let d = source.differential(k);
        let mut cols = Vec::with_capacity(source.rank(k));
        for j in 0..source.rank(k) {
            let y = prev.mul_vec(&d.expanded_column(j));
            let x = if y.iter().all(|c| c.is_zero()) {
                vec![Int::zero(); target.rank(k) * n]
            } else {
                ech.solve(&y).ok_or_else(|| {
                    Error::Internal(format!("no chain map lift in degree {}: target not exact", k))
                })?
            };
            cols.push(x);
        }
        components.push(GroupRingMatrix::from_expanded_columns(n, target.rank(k), &cols));
    }
    Ok(ChainMap { components })
}
