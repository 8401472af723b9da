//! Free resolutions over integral group rings.

mod chainmap;
mod diagonal;
mod groupring;

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

pub use chainmap::{chain_map_lift, ChainMap};
pub use diagonal::{diagonal_approximation, DiagonalApprox};
pub use groupring::{act_expanded, GroupRingMatrix};

use crate::error::{Error, Result};
use crate::fingroup::{FinGroup, GroupStructure, Subgroup};
use crate::gmod::{GModule, PresentedSolver};
use crate::intlat::{lattice_basis, ColumnEchelon, Homology, Int, IntMatrix, LatticeBuilder};
use crate::limits;

/// A free resolution `… → P_1 → P_0 → D → 0` of a G-module D (usually trivial Z).
#[derive(Clone, Debug)]
pub struct FreeResolution {
    group: Arc<FinGroup>,
    ranks: Vec<usize>,
    diffs: Vec<GroupRingMatrix>,
    expanded: Vec<IntMatrix>,
    augmentation: IntMatrix,
    target: Arc<GModule>,
    label: String,
}

/// Outcome of validating a resolution.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub top_degree: usize,
    /// Homology of the unaugmented expanded complex in degrees 0..top.
    pub homology: Vec<String>,
}

impl FreeResolution {
    /// Assembles a resolution from its differentials without checking exactness.
    pub fn assemble(
        group: &Arc<FinGroup>,
        ranks: Vec<usize>,
        diffs: Vec<GroupRingMatrix>,
        augmentation: IntMatrix,
        target: &Arc<GModule>,
        label: &str,
    ) -> Result<Self> {
        if ranks.is_empty() || diffs.len() + 1 != ranks.len() {
            return Err(Error::Dimension("need one differential per positive degree".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[k] || d.cols() != ranks[k + 1] || d.order() != group.order() {
                return Err(Error::Dimension(format!("differential d_{} has the wrong shape", k + 1)));
            }
        }
        if augmentation.shape() != (target.rank(), ranks[0]) {
            return Err(Error::Dimension("augmentation shape".into()));
        }
        for r in &ranks {
            limits::check("resolution term", r * group.order())?;
        }
        let expanded = diffs.iter().map(|d| d.expand(group)).collect();
        Ok(FreeResolution {
            group: group.clone(),
            ranks,
            diffs,
            expanded,
            augmentation,
            target: target.clone(),
            label: label.to_string(),
        })
    }

    /// Assembles and validates.
    pub fn checked(
        group: &Arc<FinGroup>,
        ranks: Vec<usize>,
        diffs: Vec<GroupRingMatrix>,
        augmentation: IntMatrix,
        target: &Arc<GModule>,
        label: &str,
    ) -> Result<Self> {
        let r = Self::assemble(group, ranks, diffs, augmentation, target, label)?;
        r.validate()?;
        Ok(r)
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn target(&self) -> &Arc<GModule> {
        &self.target
    }

    /// `d_n: P_n → P_{n-1}` for `n ≥ 1`.
    pub fn differential(&self, n: usize) -> &GroupRingMatrix {
        &self.diffs[n - 1]
    }

    pub fn expanded(&self, n: usize) -> &IntMatrix {
        &self.expanded[n - 1]
    }

    pub fn augmentation(&self) -> &IntMatrix {
        &self.augmentation
    }

    /// Augmentation on the Z-basis `g·e_a` of `P_0`.
    pub fn expanded_augmentation(&self) -> IntMatrix {
        let n = self.group.order();
        let mut cols = Vec::with_capacity(self.ranks[0] * n);
        for a in 0..self.ranks[0] {
            let e = self.augmentation.column(a);
            for g in 0..n {
                cols.push(self.target.act(g, &e));
            }
        }
        IntMatrix::from_columns(self.target.rank(), &cols)
    }

    pub fn require(&self, degree: usize) -> Result<()> {
        if self.top_degree() < degree {
            return Err(Error::ResolutionTooShort { needed: degree, available: self.top_degree() });
        }
        Ok(())
    }

    pub fn truncate(&self, degree: usize) -> Self {
        let mut r = self.clone();
        let top = degree.min(self.top_degree());
        r.ranks.truncate(top + 1);
        r.diffs.truncate(top);
        r.expanded.truncate(top);
        r
    }

    /// Checks `d∘d = 0`, compatibility and surjectivity of the augmentation, and
    /// exactness of the expanded complex below the top degree.
    pub fn validate(&self) -> Result<ValidationReport> {
        let top = self.top_degree();
        for n in 2..=top {
            if !self.expanded(n - 1).mul(self.expanded(n)).is_zero() {
                return Err(Error::NotAComplex(format!("d_{}∘d_{} ≠ 0", n - 1, n)));
            }
        }
        let eps = self.expanded_augmentation();
        if top >= 1 {
            for col in eps.mul(self.expanded(1)).columns() {
                if !self.target.is_zero(&col) {
                    return Err(Error::NotAComplex("augmentation∘d_1 ≠ 0".into()));
                }
            }
        }
        let solver = PresentedSolver::new(&eps, self.target.relations());
        for i in 0..self.target.rank() {
            let mut e = vec![Int::zero(); self.target.rank()];
            e[i] = Int::one();
            if solver.solve(&e).is_none() {
                return Err(Error::NotExact { degree: 0, detail: "augmentation is not surjective".into() });
            }
        }
        let mut homology = Vec::new();
        if top >= 1 {
            let dim0 = self.ranks[0] * self.group.order();
            let stacked = eps.hstack(self.target.relations());
            let ker: Vec<Vec<Int>> = ColumnEchelon::new(&stacked)
                .kernel_basis()
                .into_iter()
                .map(|v| v[..dim0].to_vec())
                .collect();
            let im = ColumnEchelon::span(dim0, self.expanded(1).columns());
            if let Some(w) = ker.iter().find(|v| !im.contains(v)) {
                return Err(Error::NotExact { degree: 0, detail: format!("witness {:?}", nonzero_support(w)) });
            }
            let h0 = crate::intlat::FgAbGroup::new(dim0, self.expanded(1).clone())?;
            homology.push(h0.describe());
        }
        for n in 1..top {
            let zr = IntMatrix::zeros(self.ranks[n] * self.group.order(), 0);
            let zl = IntMatrix::zeros(self.ranks[n - 1] * self.group.order(), 0);
            let h = Homology::compute(self.expanded(n + 1), self.expanded(n), &zr, &zl)?;
            if !h.group().is_trivial() {
                let w = h.generator_representatives().into_iter().next().unwrap_or_default();
                return Err(Error::NotExact {
                    degree: n,
                    detail: format!("homology {} with witness cycle {:?}", h.group().describe(), nonzero_support(&w)),
                });
            }
            homology.push("0".into());
        }
        Ok(ValidationReport { top_degree: top, homology })
    }

    /// Extends by free covers of integer kernels until `to_degree`.
    pub fn extend(&self, to_degree: usize) -> Result<Self> {
        let mut r = self.clone();
        while r.top_degree() < to_degree {
            r = r.extend_once()?;
        }
        Ok(r)
    }

    fn extend_once(&self) -> Result<Self> {
        let n = self.group.order();
        let top = self.top_degree();
        let dim = self.ranks[top] * n;
        let kernel: Vec<Vec<Int>> = if top == 0 {
            let stacked = self.expanded_augmentation().hstack(self.target.relations());
            let k = ColumnEchelon::new(&stacked).kernel_basis().into_iter().map(|v| v[..dim].to_vec()).collect();
            lattice_basis(dim, k)
        } else {
            ColumnEchelon::new(self.expanded(top)).kernel_basis()
        };
        let chosen = greedy_generators(&self.group, dim, kernel);
        limits::check("resolution term", chosen.len() * n)?;
        let d = GroupRingMatrix::from_expanded_columns(n, self.ranks[top], &chosen);
        let mut ranks = self.ranks.clone();
        ranks.push(chosen.len());
        let mut diffs = self.diffs.clone();
        diffs.push(d);
        Self::assemble(&self.group, ranks, diffs, self.augmentation.clone(), &self.target, &self.label)
    }

    /// The same complex viewed as a resolution over a subgroup.
    pub fn restrict(self: &Arc<Self>, sub: &Subgroup) -> Result<RestrictedResolution> {
        if sub.parent().order() != self.group.order() {
            return Err(Error::SubgroupMismatch("subgroup of a different group".into()));
        }
        let reps = sub.right_coset_reps();
        let t = reps.len();
        let h = sub.group().clone();
        let hn = h.order();
        let g = &self.group;
        let ranks: Vec<usize> = self.ranks.iter().map(|r| r * t).collect();
        let mut diffs = Vec::new();
        for (k, d) in self.diffs.iter().enumerate() {
            let mut m = GroupRingMatrix::zeros(ranks[k], ranks[k + 1], hn);
            for i in 0..d.rows() {
                for a in 0..d.cols() {
                    let e = d.get(i, a);
                    for (ti, &tr) in reps.iter().enumerate() {
                        for (x, c) in e.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let (hh, tj) = sub.decompose(g.mul(tr, x), &reps);
                            m.add_term(i * t + tj, a * t + ti, hh, c);
                        }
                    }
                }
            }
            diffs.push(m);
        }
        let target = Arc::new(self.target.restrict(sub)?);
        let mut aug_cols = Vec::new();
        for a in 0..self.ranks[0] {
            let e = self.augmentation.column(a);
            for &tr in &reps {
                aug_cols.push(self.target.act(tr, &e));
            }
        }
        let augmentation = IntMatrix::from_columns(self.target.rank(), &aug_cols);
        let res = FreeResolution::assemble(
            &h,
            ranks,
            diffs,
            augmentation,
            &target,
            &format!("{} restricted to {}", self.label, h.name()),
        )?;
        Ok(RestrictedResolution { sub: sub.clone(), coset_reps: reps, res: Arc::new(res), parent: self.clone() })
    }
}

fn nonzero_support(v: &[Int]) -> Vec<(usize, String)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.to_string())).collect()
}

/// Greedy Z[G]-generators of a G-stable lattice given by a Z-basis,
/// preferring vectors of small support.
pub(crate) fn greedy_generators(group: &FinGroup, dim: usize, basis: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    let mut cands: Vec<(usize, Int, usize, Vec<Int>)> = basis
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let supp = v.iter().filter(|c| !c.is_zero()).count();
            let mx = v.iter().map(|c| c.abs()).max().unwrap_or_else(Int::zero);
            (supp, mx, i, v)
        })
        .collect();
    cands.sort_by(|a, b| (a.0, &a.1, a.2).cmp(&(b.0, &b.1, b.2)));
    let mut span = LatticeBuilder::new(dim);
    let mut chosen = Vec::new();
    for (_, _, _, v) in cands {
        if span.contains(&v) {
            continue;
        }
        for k in 0..group.order() {
            span.insert(&act_expanded(group, k, &v));
        }
        chosen.push(v);
    }
    chosen
}

/// A resolution over G viewed over a subgroup H, with the coset data needed
/// to move cochains between the two.
#[derive(Clone, Debug)]
pub struct RestrictedResolution {
    pub sub: Subgroup,
    /// Right coset representatives t with G = ⊔ H t; basis `t·e_a` sits at `a·|T| + index(t)`.
    pub coset_reps: Vec<usize>,
    pub res: Arc<FreeResolution>,
    pub parent: Arc<FreeResolution>,
}

fn augmentation_z(group: &Arc<FinGroup>) -> (Arc<GModule>, IntMatrix) {
    (Arc::new(GModule::trivial_z(group)), IntMatrix::from_i64(&[vec![1]]))
}

/// Normalized bar resolution of Z.
pub fn bar_resolution(group: &Arc<FinGroup>, n_max: usize) -> Result<FreeResolution> {
    let n = group.order();
    let nonid: Vec<usize> = (0..n).filter(|&g| g != group.identity()).collect();
    let m = nonid.len();
    let mut total = 0usize;
    for k in 0..=n_max {
        let r = m.checked_pow(k as u32).ok_or_else(|| Error::SizeGuard("bar resolution".into()))?;
        total = total.saturating_add(r.saturating_mul(n));
        limits::check("bar resolution", r.saturating_mul(n))?;
    }
    limits::check("bar resolution (total)", total / 2)?;
    let pos = |g: usize| nonid.iter().position(|&x| x == g);
    let index = |t: &[usize]| t.iter().fold(0usize, |acc, &g| acc * m + pos(g).unwrap());
    let mut ranks = vec![1usize];
    let mut diffs = Vec::new();
    for k in 1..=n_max {
        let rk = m.pow(k as u32);
        let rprev = m.pow(k as u32 - 1);
        let mut d = GroupRingMatrix::zeros(rprev, rk, n);
        for code in 0..rk {
            let mut t = vec![0usize; k];
            let mut c = code;
            for i in (0..k).rev() {
                t[i] = nonid[c % m];
                c /= m;
            }
            // g1 [g2|…|gk]
            d.add_term(index(&t[1..]), code, t[0], &Int::one());
            for i in 0..k - 1 {
                let prod = group.mul(t[i], t[i + 1]);
                if prod == group.identity() {
                    continue;
                }
                let mut s = t[..i].to_vec();
                s.push(prod);
                s.extend_from_slice(&t[i + 2..]);
                let sign = if (i + 1) % 2 == 0 { Int::one() } else { -Int::one() };
                d.add_term(index(&s), code, group.identity(), &sign);
            }
            let sign = if k % 2 == 0 { Int::one() } else { -Int::one() };
            d.add_term(index(&t[..k - 1]), code, group.identity(), &sign);
        }
        ranks.push(rk);
        diffs.push(d);
    }
    let (z, aug) = augmentation_z(group);
    FreeResolution::checked(group, ranks, diffs, aug, &z, "bar")
}

/// The 2-periodic resolution of a cyclic group (σ−1, then the norm).
pub fn periodic_resolution(group: &Arc<FinGroup>, n_max: usize) -> Result<FreeResolution> {
    let GroupStructure::Cyclic(m) = *group.structure() else {
        return Err(Error::InvalidGroup("periodic resolution needs a cyclic group".into()));
    };
    let sigma = 1 % m;
    let mut diffs = Vec::new();
    for k in 1..=n_max {
        let mut d = GroupRingMatrix::zeros(1, 1, m);
        if k % 2 == 1 {
            d.add_term(0, 0, sigma, &Int::one());
            d.add_term(0, 0, 0, &-Int::one());
        } else {
            for g in 0..m {
                d.add_term(0, 0, g, &Int::one());
            }
        }
        diffs.push(d);
    }
    let (z, aug) = augmentation_z(group);
    FreeResolution::checked(group, vec![1; n_max + 1], diffs, aug, &z, "periodic")
}

/// Tensor product of resolutions of the factors of a direct product.
pub fn tensor_resolution(
    group: &Arc<FinGroup>,
    p: &FreeResolution,
    q: &FreeResolution,
    n_max: usize,
) -> Result<FreeResolution> {
    let GroupStructure::Product(a, b) = group.structure() else {
        return Err(Error::InvalidGroup("tensor resolution needs a direct product".into()));
    };
    if a.order() != p.group().order() || b.order() != q.group().order() {
        return Err(Error::SubgroupMismatch("factor resolutions do not match the product".into()));
    }
    p.require(n_max)?;
    q.require(n_max)?;
    let na = a.order();
    let ea = |x: usize| x + na * b.identity();
    let eb = |y: usize| a.identity() + na * y;
    // basis layout: degree n is ordered by i, then basis of P_i, then basis of Q_{n-i}
    let offsets = |n: usize| -> Vec<usize> {
        let mut off = Vec::with_capacity(n + 1);
        let mut acc = 0;
        for i in 0..=n {
            off.push(acc);
            acc += p.rank(i) * q.rank(n - i);
        }
        off
    };
    let rank = |n: usize| (0..=n).map(|i| p.rank(i) * q.rank(n - i)).sum::<usize>();
    let mut ranks = vec![rank(0)];
    let mut diffs = Vec::new();
    for n in 1..=n_max {
        let (on, om) = (offsets(n), offsets(n - 1));
        let mut d = GroupRingMatrix::zeros(rank(n - 1), rank(n), group.order());
        for i in 0..=n {
            let j = n - i;
            for ai in 0..p.rank(i) {
                for bj in 0..q.rank(j) {
                    let col = on[i] + ai * q.rank(j) + bj;
                    if i >= 1 {
                        let dp = p.differential(i);
                        for a2 in 0..p.rank(i - 1) {
                            let row = om[i - 1] + a2 * q.rank(j) + bj;
                            for (x, c) in dp.get(a2, ai).iter().enumerate() {
                                if !c.is_zero() {
                                    d.add_term(row, col, ea(x), c);
                                }
                            }
                        }
                    }
                    if j >= 1 {
                        let dq = q.differential(j);
                        let sign = if i % 2 == 0 { Int::one() } else { -Int::one() };
                        for b2 in 0..q.rank(j - 1) {
                            let row = om[i] + ai * q.rank(j - 1) + b2;
                            for (y, c) in dq.get(b2, bj).iter().enumerate() {
                                if !c.is_zero() {
                                    d.add_term(row, col, eb(y), &(c * &sign));
                                }
                            }
                        }
                    }
                }
            }
        }
        ranks.push(rank(n));
        diffs.push(d);
    }
    let (z, aug) = augmentation_z(group);
    FreeResolution::checked(group, ranks, diffs, aug, &z, "tensor")
}

/// Starts from `Z[G]^k → D` on the generators of D and extends by integer kernels.
pub fn resolution_from_scratch(module: &Arc<GModule>, n_max: usize) -> Result<FreeResolution> {
    let group = module.group();
    let k = module.rank();
    let aug = IntMatrix::identity(k);
    let base = FreeResolution::assemble(group, vec![k], vec![], aug, module, "greedy")?;
    let r = base.extend(n_max)?;
    r.validate()?;
    Ok(r)
}

/// Resolution data given as group-ring terms per matrix entry.
///
/// With `right_convention` the entries are read as right multiplications
/// (cochains `f ↦ f·d`), and are converted by inverting group elements.
pub fn resolution_from_terms(
    group: &Arc<FinGroup>,
    ranks: &[usize],
    differentials: &[Vec<Vec<Vec<(Int, String)>>>],
    right_convention: bool,
    label: &str,
) -> Result<FreeResolution> {
    let n = group.order();
    let mut diffs = Vec::new();
    for (k, rows) in differentials.iter().enumerate() {
        let (r, c) = (*ranks.get(k).ok_or_else(|| Error::Dimension("ranks".into()))?, ranks.get(k + 1).copied().unwrap_or(0));
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension(format!("differential {} should be {}x{}", k + 1, r, c)));
        }
        let mut d = GroupRingMatrix::zeros(r, c, n);
        for (i, row) in rows.iter().enumerate() {
            for (j, terms) in row.iter().enumerate() {
                for (coef, word) in terms {
                    let mut g = group.parse_element(word)?;
                    if right_convention {
                        g = group.inv(g);
                    }
                    d.add_term(i, j, g, coef);
                }
            }
        }
        diffs.push(d);
    }
    let (z, aug) = augmentation_z(group);
    FreeResolution::checked(group, ranks.to_vec(), diffs, aug, &z, label)
}

/// A resolution of trivial Z chosen from the group's structure.
pub fn auto_resolution(group: &Arc<FinGroup>, n_max: usize) -> Result<FreeResolution> {
    match group.structure() {
        GroupStructure::Cyclic(_) => periodic_resolution(group, n_max),
        GroupStructure::Product(a, b) => {
            let p = auto_resolution(a, n_max)?;
            let q = auto_resolution(b, n_max)?;
            tensor_resolution(group, &p, &q, n_max)
        }
        GroupStructure::Modular16 => {
            let base = crate::formats::bundled_m16_resolution()?;
            if base.top_degree() >= n_max {
                Ok(base.truncate(n_max))
            } else {
                base.extend(n_max)
            }
        }
        GroupStructure::Generic => {
            let z = Arc::new(GModule::trivial_z(group));
            resolution_from_scratch(&z, n_max)
        }
    }
}

#[cfg(test)]
mod tests;
