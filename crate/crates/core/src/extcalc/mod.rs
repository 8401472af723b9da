//! Four-term extensions, double connecting maps and Ext classes.

mod fan;
mod separating;

use std::sync::Arc;

use num_traits::Zero;

pub use fan::{fan_realization, FanRealization};
pub use separating::{separating_lattice, SeparatingOptions, SeparatingLattice, SeparatingReport};

use crate::cohom::{connecting, CohGroup, Cochain};
use crate::error::{Error, Result};
use crate::gmod::{GMap, GModule, PresentedSolver, ShortExactSequence};
use crate::intlat::{ColumnEchelon, Int, IntMatrix};
use crate::resolve::{act_expanded, resolution_from_scratch, FreeResolution};

/// An exact sequence `0 → A → B → C → D → 0`.
#[derive(Clone, Debug)]
pub struct FourTermExt {
    pub ab: GMap,
    pub bc: GMap,
    pub cd: GMap,
}

impl FourTermExt {
    pub fn new(ab: GMap, bc: GMap, cd: GMap) -> Result<Self> {
        if ab.target.rank() != bc.source.rank() || bc.target.rank() != cd.source.rank() {
            return Err(Error::Dimension("maps do not compose".into()));
        }
        if !bc.compose(&ab).is_zero() || !cd.compose(&bc).is_zero() {
            return Err(Error::NotExact { degree: 1, detail: "consecutive maps do not compose to zero".into() });
        }
        if !ab.is_injective()? {
            return Err(Error::NotExact { degree: 0, detail: "A → B is not injective".into() });
        }
        if !cd.is_surjective()? {
            return Err(Error::NotExact { degree: 3, detail: "C → D is not surjective".into() });
        }
        for (deg, first, second) in [(1usize, &ab, &bc), (2, &bc, &cd)] {
            let (_, kinc) = second.kernel()?;
            let solver = first.preimage_solver();
            for col in kinc.matrix.columns() {
                if solver.solve(&col).is_none() {
                    return Err(Error::NotExact {
                        degree: deg,
                        detail: format!("kernel element {:?} is not in the image", col),
                    });
                }
            }
        }
        Ok(FourTermExt { ab, bc, cd })
    }

    pub fn a(&self) -> &Arc<GModule> {
        &self.ab.source
    }

    pub fn b(&self) -> &Arc<GModule> {
        &self.ab.target
    }

    pub fn c(&self) -> &Arc<GModule> {
        &self.bc.target
    }

    pub fn d(&self) -> &Arc<GModule> {
        &self.cd.target
    }

    /// The two short exact sequences through `I = im(B → C)`.
    pub fn halves(&self) -> Result<(ShortExactSequence, ShortExactSequence)> {
        let (_, onto, into) = self.bc.image()?;
        let i_mod = onto.target.clone();
        let first = ShortExactSequence {
            i: GMap::unchecked(self.a(), self.b(), self.ab.matrix.clone()),
            p: GMap::unchecked(self.b(), &i_mod, onto.matrix.clone()),
        };
        let second = ShortExactSequence {
            i: GMap::unchecked(&i_mod, self.c(), into.matrix.clone()),
            p: self.cd.clone(),
        };
        Ok((first, second))
    }

    /// `∂ⁿ: H^{n-2}(G, D) → H^n(G, A)` on cochains, as two connecting maps.
    pub fn double_connecting(&self, res: &FreeResolution, n: usize, c: &[Int]) -> Result<Cochain> {
        if n < 2 {
            return Err(Error::Degree(format!("double connecting map needs n ≥ 2, got {}", n)));
        }
        let (first, second) = self.halves()?;
        let mid = connecting(res, &second, n - 2, c)?;
        connecting(res, &first, n - 1, &mid)
    }
}

/// Joins `0→A→B→I→0` and `0→I→C→D→0`.
pub fn splice(s1: &ShortExactSequence, s2: &ShortExactSequence) -> Result<FourTermExt> {
    let (i1, i2) = (s1.c(), s2.a());
    if i1.rank() != i2.rank() || !i1.underlying().same_invariants(i2.underlying()) {
        return Err(Error::Dimension("spliced sequences have different interface modules".into()));
    }
    let bc = GMap::new(s1.b(), s2.b(), s2.i.matrix.mul(&s1.p.matrix))?;
    FourTermExt::new(s1.i.clone(), bc, s2.p.clone())
}

/// Pushout along `f: A → A'`: `B' = (A' ⊕ B) / {(f a, −a)}`.
pub fn pushout(e: &FourTermExt, f: &GMap) -> Result<FourTermExt> {
    let (a, b) = (e.a(), e.b());
    if f.source.rank() != a.rank() {
        return Err(Error::Dimension("pushout map has the wrong source".into()));
    }
    let a2 = f.target.clone();
    let (ka2, kb) = (a2.rank(), b.rank());
    let mut rel = a2.relations().block_diag(b.relations());
    let glue = f.matrix.vstack(&e.ab.matrix.neg());
    rel = rel.hstack(&glue);
    let group = a.group();
    let actions: Vec<IntMatrix> = (0..group.order()).map(|g| a2.action(g).block_diag(b.action(g))).collect();
    let b2 = Arc::new(GModule::from_element_actions(group, ka2 + kb, rel, actions)?);
    let inc = GMap::new(&a2, &b2, IntMatrix::identity(ka2).vstack(&IntMatrix::zeros(kb, ka2)))?;
    let to_c = GMap::new(&b2, e.c(), IntMatrix::zeros(e.c().rank(), ka2).hstack(&e.bc.matrix))?;
    FourTermExt::new(inc, to_c, e.cd.clone())
}

/// Pullback along `g: D' → D`: `C' = C ×_D D'`.
pub fn pullback(e: &FourTermExt, g: &GMap) -> Result<FourTermExt> {
    let (c, d) = (e.c(), e.d());
    if g.target.rank() != d.rank() {
        return Err(Error::Dimension("pullback map has the wrong target".into()));
    }
    let d2 = g.source.clone();
    let cd2 = Arc::new(c.direct_sum(&d2)?);
    let diff = GMap::new(&cd2, d, e.cd.matrix.hstack(&g.matrix.neg()))?;
    let (c2, incl) = diff.kernel()?;
    let solver = PresentedSolver::new(&incl.matrix, cd2.relations());
    let mut cols = Vec::new();
    for col in e.bc.matrix.columns() {
        let mut v = col.clone();
        v.extend(std::iter::repeat_n(Int::zero(), d2.rank()));
        cols.push(solver.solve(&v).ok_or_else(|| Error::Internal("image of B is not in the fibre product".into()))?);
    }
    let b_to = GMap::new(e.b(), &c2, IntMatrix::from_columns(c2.rank(), &cols))?;
    let proj = IntMatrix::zeros(d2.rank(), c.rank()).hstack(&IntMatrix::identity(d2.rank()));
    let to_d2 = GMap::new(&c2, &d2, proj.mul(&incl.matrix))?;
    FourTermExt::new(e.ab.clone(), b_to, to_d2)
}

/// An element of `Ext^k_G(D, A)` as a cocycle on a free resolution of D.
#[derive(Clone, Debug)]
pub struct ExtClass {
    pub degree: usize,
    pub resolution: Arc<FreeResolution>,
    pub group: Arc<CohGroup>,
    pub cocycle: Cochain,
    pub coords: Vec<Int>,
}

impl ExtClass {
    pub fn is_trivial(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn describe_group(&self) -> String {
        self.group.describe()
    }
}

/// Resolution of `D` long enough for Ext classes of degree `k`.
pub fn resolve_module(d: &Arc<GModule>, degree: usize) -> Result<Arc<FreeResolution>> {
    Ok(Arc::new(resolution_from_scratch(d, degree)?))
}

/// One step of lifting through an extension: for each basis vector of `F_k`,
/// solves `map(x) ≡ Σ_i ρ(D_ij) prev(e_i)`.
fn lift_step(
    f: &FreeResolution,
    k: usize,
    prev_module: &GModule,
    prev: &[Vec<Int>],
    map: &GMap,
) -> Result<Vec<Vec<Int>>> {
    let solver = PresentedSolver::new(&map.matrix, prev_module.relations());
    let d = f.differential(k);
    let mut out = Vec::with_capacity(f.rank(k));
    for j in 0..f.rank(k) {
        let mut y = vec![Int::zero(); prev_module.rank()];
        for (i, p) in prev.iter().enumerate() {
            let e = d.get(i, j);
            if e.iter().all(|c| c.is_zero()) {
                continue;
            }
            for (acc, v) in y.iter_mut().zip(prev_module.rho_apply(e, p)) {
                *acc += v;
            }
        }
        out.push(
            solver
                .solve(&y)
                .ok_or_else(|| Error::NotExact { degree: k, detail: "lift through the extension failed".into() })?,
        );
    }
    Ok(out)
}

fn lift_augmentation(f: &FreeResolution, map: &GMap) -> Result<Vec<Vec<Int>>> {
    let solver = PresentedSolver::new(&map.matrix, map.target.relations());
    (0..f.rank(0))
        .map(|a| {
            solver
                .solve(&f.augmentation().column(a))
                .ok_or_else(|| Error::NotExact { degree: 0, detail: "final map is not surjective".into() })
        })
        .collect()
}

/// The class of a short exact sequence `0→A→B→C→0` in `Ext¹(C, A)`.
pub fn ext1_class(ses: &ShortExactSequence, f: &Arc<FreeResolution>) -> Result<ExtClass> {
    f.require(2)?;
    let phi0 = lift_augmentation(f, &ses.p)?;
    let phi1 = lift_step(f, 1, ses.b(), &phi0, &ses.i)?;
    let cocycle: Cochain = phi1.into_iter().flatten().collect();
    let group = Arc::new(CohGroup::new(f, ses.a(), 1)?);
    let coords = group.classify(&cocycle)?;
    Ok(ExtClass { degree: 1, resolution: f.clone(), group, cocycle, coords })
}

/// The class of a four-term extension in `Ext²(D, A)`: lift `id_D` through it.
pub fn ext2_class_on(e: &FourTermExt, f: &Arc<FreeResolution>) -> Result<ExtClass> {
    f.require(3)?;
    let phi0 = lift_augmentation(f, &e.cd)?;
    let phi1 = lift_step(f, 1, e.c(), &phi0, &e.bc)?;
    let phi2 = lift_step(f, 2, e.b(), &phi1, &e.ab)?;
    let cocycle: Cochain = phi2.into_iter().flatten().collect();
    let group = Arc::new(CohGroup::new(f, e.a(), 2)?);
    let coords = group.classify(&cocycle)?;
    Ok(ExtClass { degree: 2, resolution: f.clone(), group, cocycle, coords })
}

pub fn ext2_class(e: &FourTermExt) -> Result<ExtClass> {
    let f = resolve_module(e.d(), 3)?;
    ext2_class_on(e, &f)
}

/// `Ω^k Z ⊂ P_{k-1}` as a lattice, with the map `P_k → Ω^k` induced by `d_k`.
#[derive(Clone, Debug)]
pub struct Syzygy {
    pub degree: usize,
    pub module: Arc<GModule>,
    /// Columns: the lattice basis in expanded coordinates of `P_{k-1}`.
    pub basis: IntMatrix,
    /// Column j: `d_k(e_j)` in lattice coordinates.
    pub w: IntMatrix,
}

pub fn syzygy(p: &FreeResolution, k: usize) -> Result<Syzygy> {
    if k < 1 {
        return Err(Error::Degree("syzygy needs k ≥ 1".into()));
    }
    p.require(k)?;
    let group = p.group();
    let n = group.order();
    let dim = p.rank(k - 1) * n;
    let kernel = if k == 1 {
        let stacked = p.expanded_augmentation().hstack(p.target().relations());
        let raw = ColumnEchelon::new(&stacked).kernel_basis().into_iter().map(|v| v[..dim].to_vec()).collect();
        crate::intlat::lattice_basis(dim, raw)
    } else {
        ColumnEchelon::new(p.expanded(k - 1)).kernel_basis()
    };
    let m = kernel.len();
    let solver = ColumnEchelon::from_columns(dim, kernel.clone());
    let express = |v: &[Int]| solver.solve(v).ok_or_else(|| Error::Internal("syzygy lattice is not stable".into()));
    let mut actions = Vec::with_capacity(n);
    for g in 0..n {
        let cols = kernel.iter().map(|v| express(&act_expanded(group, g, v))).collect::<Result<Vec<_>>>()?;
        actions.push(IntMatrix::from_columns(m, &cols));
    }
    let module = Arc::new(GModule::from_element_actions(group, m, IntMatrix::zeros(m, 0), actions)?);
    let d = p.differential(k);
    let w_cols = (0..p.rank(k)).map(|j| express(&d.expanded_column(j))).collect::<Result<Vec<_>>>()?;
    Ok(Syzygy {
        degree: k,
        module,
        basis: IntMatrix::from_columns(dim, &kernel),
        w: IntMatrix::from_columns(m, &w_cols),
    })
}

/// `0 → Ω²Z → P_1 → P_0 → Z → 0` for a resolution of Z.
pub fn syzygy_extension(p: &FreeResolution, s: &Syzygy) -> Result<FourTermExt> {
    if s.degree != 2 {
        return Err(Error::Degree("the four-term sequence uses the second syzygy".into()));
    }
    let group = p.group();
    let p1 = Arc::new(GModule::free(group, p.rank(1)));
    let p0 = Arc::new(GModule::free(group, p.rank(0)));
    let ab = GMap::new(&s.module, &p1, s.basis.clone())?;
    let bc = GMap::new(&p1, &p0, p.expanded(1).clone())?;
    let cd = GMap::new(&p0, p.target(), p.expanded_augmentation())?;
    FourTermExt::new(ab, bc, cd)
}

/// Invariant functionals `a` with `a∘A(g) = a` for all g, as rows.
pub fn invariant_functionals(m: &GModule) -> Vec<Vec<Int>> {
    let k = m.rank();
    let mut stacked = IntMatrix::zeros(0, k);
    for g in 0..m.group().order() {
        let diff = m.action(g).transpose().sub(&IntMatrix::identity(k));
        stacked = stacked.vstack(&diff);
    }
    ColumnEchelon::new(&stacked).kernel_basis()
}

#[cfg(test)]
mod tests;
