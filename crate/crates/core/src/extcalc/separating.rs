//! A faithful Klein-group lattice M with a non-split extension of M by the
//! units of an algebraically closed field whose connecting maps all vanish.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{ext1_class, invariant_functionals, resolve_module, syzygy, ExtClass};
use crate::cohom::{bockstein_shift, connecting, cup, inverse_shift, pull_back, CohGroup, RationalCochain};
use crate::error::{Error, Result};
use crate::fingroup::FinGroup;
use crate::gmod::{GMap, GModule, ShortExactSequence};
use crate::intlat::{ColumnEchelon, Int, IntMatrix};
use crate::resolve::{
    auto_resolution, chain_map_lift, diagonal_approximation, FreeResolution, GroupRingMatrix,
};

#[derive(Clone, Debug)]
pub struct SeparatingOptions {
    /// Vanishing of `H^n(G,M) → H^{n+1}(G,k^×)` is checked for `1 ≤ n ≤ check_through`.
    pub check_through: usize,
    /// Largest L1 norm tried when searching for the functional `a`.
    pub search_norm: usize,
}

impl Default for SeparatingOptions {
    fn default() -> Self {
        SeparatingOptions { check_through: 6, search_norm: 6 }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SeparatingReport {
    pub c_nonzero: bool,
    pub vanishing_checked_through: usize,
    pub failures: Vec<String>,
    pub m_rank: usize,
    pub m_faithful: bool,
    pub stabilized: bool,
    pub torsion_level: String,
    pub extension_matches_twists: bool,
}

#[derive(Clone, Debug)]
pub struct SeparatingLattice {
    pub lattice: Arc<GModule>,
    pub resolution: Arc<FreeResolution>,
    /// `c_Z ∈ Ext²(M, Z)`.
    pub c_z: ExtClass,
    /// The Q/Z-valued 1-cocycle `c` on the resolution of M (denominator N).
    pub c: RationalCochain,
    /// `0 → Z/N → T → M → 0` built from the twist constants.
    pub extension: ShortExactSequence,
    /// `twists[s][k]`: constant in Z/N of `g_s · u_k` for the s-th group generator.
    pub twists: Vec<Vec<Int>>,
    pub report: SeparatingReport,
}

fn vectors_of_norm(dim: usize, norm: usize) -> Vec<Vec<i64>> {
    if dim == 0 {
        return if norm == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=norm {
        for rest in vectors_of_norm(dim - 1, norm - first) {
            let signs: &[i64] = if first == 0 { &[1] } else { &[1, -1] };
            for &s in signs {
                let mut v = vec![s * first as i64];
                v.extend(&rest);
                out.push(v);
            }
        }
    }
    out
}

fn functional_on(a: &[Int], w: &IntMatrix) -> Vec<Int> {
    w.columns().iter().map(|col| a.iter().zip(col).map(|(x, y)| x * y).sum()).collect()
}

fn gcd_is_one(a: &[Int]) -> bool {
    use num_integer::Integer;
    a.iter().fold(Int::zero(), |acc, x| acc.gcd(x)).is_one()
}

fn reduce_mod(x: &Int, n: &Int) -> Int {
    use num_integer::Integer;
    x.mod_floor(n)
}

pub fn separating_lattice(group: &Arc<FinGroup>, opts: &SeparatingOptions) -> Result<SeparatingLattice> {
    if group.order() != 4 || group.exponent() != 2 {
        return Err(Error::InvalidGroup("the construction needs the Klein four-group".into()));
    }
    let n_grp = group.order();
    let top = (opts.check_through + 3).max(5);
    let p = Arc::new(auto_resolution(group, top)?);
    if p.rank(1) != 2 || p.rank(0) != 1 {
        return Err(Error::Internal("expected the tensor resolution of the Klein group".into()));
    }
    let z = Arc::new(GModule::trivial_z(group));
    let bock = ShortExactSequence::multiplication(&z, 2)?;
    let h1 = CohGroup::new(&p, bock.c(), 1)?;
    let x = vec![Int::one(), Int::zero()];
    let y = vec![Int::zero(), Int::one()];
    if !h1.is_cocycle(&x) || !h1.is_cocycle(&y) {
        return Err(Error::Internal("degree-one mod 2 classes".into()));
    }
    let class_a = connecting(&p, &bock, 1, &x)?;
    let class_b = connecting(&p, &bock, 1, &y)?;
    let h2 = CohGroup::new(&p, &z, 2)?;
    let target_a = h2.classify(&class_a)?;
    let diag = diagonal_approximation(&p, 4)?;
    let one = IntMatrix::identity(1);
    let b_sq = cup(&p, &diag, &z, (2, &class_b), &z, (2, &class_b), &one)?;

    // a ∈ Hom_G(Ω², Z) with [a∘w] = A
    let syz = syzygy(&p, 2)?;
    let funcs = invariant_functionals(&syz.module);
    let mut found = None;
    'search: for norm in 1..=opts.search_norm {
        for coeffs in vectors_of_norm(funcs.len(), norm) {
            let mut a = vec![Int::zero(); syz.module.rank()];
            for (c, f) in coeffs.iter().zip(&funcs) {
                for (ai, fi) in a.iter_mut().zip(f) {
                    *ai += Int::from(*c) * fi;
                }
            }
            if h2.classify(&functional_on(&a, &syz.w))? == target_a {
                found = Some(a);
                break 'search;
            }
        }
    }
    let a = found.ok_or_else(|| Error::SearchFailed("no invariant functional realizes A".into()))?;

    let kernel_of = |omega: &Arc<GModule>, a: &[Int]| -> Result<(Arc<GModule>, GMap)> {
        let amap = GMap::new(omega, &z, IntMatrix::from_rows(vec![a.to_vec()])?)?;
        amap.kernel()
    };
    let mut omega = syz.module.clone();
    let mut a_full = a.clone();
    let mut stabilized = false;
    let mut ker = None;
    if gcd_is_one(&a) {
        let (m, i) = kernel_of(&omega, &a)?;
        if m.is_faithful() {
            ker = Some((m, i));
        }
    }
    if ker.is_none() {
        stabilized = true;
        omega = Arc::new(syz.module.direct_sum(&GModule::regular(group))?);
        a_full.extend(std::iter::repeat_n(Int::one(), n_grp));
        let (m, i) = kernel_of(&omega, &a_full)?;
        if !m.is_faithful() {
            return Err(Error::SearchFailed("kernel of a is not faithful after stabilization".into()));
        }
        ker = Some((m, i));
    }
    let (lattice, incl) = ker.unwrap();
    let m_rank = lattice.rank();

    // shifted resolution Q_k = P_{k+2} of Ω (with a free summand in degree 0 if stabilized)
    let extra = usize::from(stabilized);
    let mut ranks = vec![p.rank(2) + extra];
    let mut diffs = Vec::new();
    for k in 1..=3 {
        ranks.push(p.rank(k + 2));
        let d = p.differential(k + 2);
        if k == 1 && stabilized {
            let mut padded = GroupRingMatrix::zeros(d.rows() + 1, d.cols(), n_grp);
            for i in 0..d.rows() {
                for j in 0..d.cols() {
                    *padded.get_mut(i, j) = d.get(i, j).to_vec();
                }
            }
            diffs.push(padded);
        } else {
            diffs.push(d.clone());
        }
    }
    let om_rank = omega.rank();
    let mut aug = IntMatrix::zeros(om_rank, ranks[0]);
    for j in 0..p.rank(2) {
        for i in 0..syz.module.rank() {
            aug[(i, j)] = syz.w[(i, j)].clone();
        }
    }
    if stabilized {
        aug[(syz.module.rank() + group.identity(), p.rank(2))] = Int::one();
    }
    let q = FreeResolution::checked(group, ranks, diffs, aug, &omega, "shifted")?;

    // c_Z = b ∘ i on a resolution of M
    let f = resolve_module(&lattice, 3)?;
    let lift = chain_map_lift(&f, &q, &incl.matrix, 2)?;
    let c_z_cochain = pull_back(&lift, &z, 2, &b_sq);
    let ext2 = Arc::new(CohGroup::new(&f, &z, 2)?);
    let c_z_coords = ext2.classify(&c_z_cochain)?;
    let c_nonzero = c_z_coords.iter().any(|c| !c.is_zero());
    let c_z = ExtClass { degree: 2, resolution: f.clone(), group: ext2, cocycle: c_z_cochain.clone(), coords: c_z_coords };
    let c = inverse_shift(&f, &z, 1, &c_z_cochain)?;
    let level = c.den.clone();
    let c_n: Vec<Int> = c.nums.iter().map(|v| reduce_mod(v, &level)).collect();

    // twist constants through the section u_k ↦ e_k
    let d1 = ColumnEchelon::new(f.expanded(1));
    let mut twists = Vec::new();
    for (_, g) in group.generators() {
        let mut row = Vec::with_capacity(m_rank);
        for k in 0..m_rank {
            let mut yv = vec![Int::zero(); f.rank(0) * n_grp];
            yv[k * n_grp + g] += Int::one();
            let gu = lattice.act(*g, &f.augmentation().column(k));
            for (l, coef) in gu.iter().enumerate() {
                yv[l * n_grp + group.identity()] -= coef;
            }
            let xs = d1.solve(&yv).ok_or_else(|| Error::Internal("section defect is not a boundary".into()))?;
            let mut val = Int::zero();
            for (idx, coef) in xs.iter().enumerate() {
                val += coef * &c_n[idx / n_grp];
            }
            row.push(reduce_mod(&val, &level));
        }
        twists.push(row);
    }
    if f.augmentation() != &IntMatrix::identity(m_rank) {
        return Err(Error::Internal("resolution of M must start on its generators".into()));
    }

    // T: generators ζ (order N) and u_k
    let zn = Arc::new(GModule::trivial_cyclic(group, i64::try_from(&level).map_err(|_| Error::SizeGuard("torsion level".into()))?));
    let mut rel = IntMatrix::zeros(1 + m_rank, 1);
    rel[(0, 0)] = level.clone();
    let gen_actions: Vec<IntMatrix> = group
        .generators()
        .iter()
        .zip(&twists)
        .map(|((_, g), consts)| {
            let mut mat = IntMatrix::zeros(1 + m_rank, 1 + m_rank);
            mat[(0, 0)] = Int::one();
            mat.set_block(1, 1, lattice.action(*g));
            for (k, cst) in consts.iter().enumerate() {
                mat[(0, 1 + k)] = cst.clone();
            }
            mat
        })
        .collect();
    let t_mod = Arc::new(GModule::new(group, 1 + m_rank, rel, &gen_actions)?);
    let mut incl_z = IntMatrix::zeros(1 + m_rank, 1);
    incl_z[(0, 0)] = Int::one();
    let proj = IntMatrix::zeros(m_rank, 1).hstack(&IntMatrix::identity(m_rank));
    let extension = ShortExactSequence::new(GMap::new(&zn, &t_mod, incl_z)?, GMap::new(&t_mod, &lattice, proj)?)?;

    // the twist module realizes ±c
    let t_class = ext1_class(&extension, &f)?;
    let c_class = t_class.group.classify(&c_n)?;
    let ext1 = t_class.group.group();
    let neg = ext1.canonical(&ext1.neg(&ext1.from_canonical(&c_class)));
    let extension_matches_twists = t_class.coords == c_class || t_class.coords == neg;

    let mut failures = Vec::new();
    for n in 1..=opts.check_through {
        let hn = CohGroup::new(&p, &lattice, n)?;
        let target = CohGroup::new(&p, &z, n + 2)?;
        for (gi, gen) in hn.generators().iter().enumerate() {
            let img = connecting(&p, &extension, n, &gen.cocycle)?;
            let shifted = bockstein_shift(&p, &z, n + 1, &RationalCochain { nums: img, den: level.clone() })?;
            if !target.is_coboundary(&shifted)? {
                failures.push(format!("degree {} generator {} has nonzero image", n, gi));
            }
        }
    }
    let report = SeparatingReport {
        c_nonzero,
        vanishing_checked_through: opts.check_through,
        failures,
        m_rank,
        m_faithful: lattice.is_faithful(),
        stabilized,
        torsion_level: level.to_string(),
        extension_matches_twists,
    };
    Ok(SeparatingLattice { lattice, resolution: f, c_z, c, extension, twists, report })
}
