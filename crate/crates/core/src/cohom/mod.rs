//! Cohomology of finite groups via free resolutions.
//!
//! An n-cochain with values in M is the list of its values on the Z[G]-basis
//! of `P_n`: block `j` (length `rank M`) holds `f(e_j)`.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gmod::{GMap, GModule, PresentedSolver, ShortExactSequence};
use crate::intlat::{ColumnEchelon, FgAbGroup, Homology, Int, IntMatrix};
use crate::resolve::{auto_resolution, ChainMap, DiagonalApprox, FreeResolution, RestrictedResolution};

/// A cochain: values on basis vectors, concatenated.
pub type Cochain = Vec<Int>;

fn repeat_block_diag(r: &IntMatrix, count: usize) -> IntMatrix {
    let mut out = IntMatrix::zeros(r.rows() * count, r.cols() * count);
    for c in 0..count {
        out.set_block(c * r.rows(), c * r.cols(), r);
    }
    out
}

fn block(f: &[Int], j: usize, k: usize) -> &[Int] {
    &f[j * k..(j + 1) * k]
}

fn same_order(res: &FreeResolution, m: &GModule) -> Result<()> {
    if res.group().order() != m.group().order() {
        return Err(Error::SubgroupMismatch("module and resolution are over different groups".into()));
    }
    Ok(())
}

/// Matrix of `δ: C^n(M) → C^{n+1}(M)`, `(δf)_j = Σ_i ρ(D_ij) f_i` with `D = d_{n+1}`.
pub fn coboundary_matrix(res: &FreeResolution, module: &GModule, n: usize) -> Result<IntMatrix> {
    same_order(res, module)?;
    res.require(n + 1)?;
    let k = module.rank();
    let d = res.differential(n + 1);
    let mut m = IntMatrix::zeros(d.cols() * k, d.rows() * k);
    for j in 0..d.cols() {
        for i in 0..d.rows() {
            let e = d.get(i, j);
            if e.iter().all(|c| c.is_zero()) {
                continue;
            }
            m.set_block(j * k, i * k, &module.rho(e));
        }
    }
    Ok(m)
}

pub fn coboundary(res: &FreeResolution, module: &GModule, n: usize, f: &[Int]) -> Result<Cochain> {
    Ok(coboundary_matrix(res, module, n)?.mul_vec(f))
}

/// `H^n(G, M)` with coordinates and representatives.
#[derive(Clone, Debug)]
pub struct CohGroup {
    res: Arc<FreeResolution>,
    module: Arc<GModule>,
    degree: usize,
    delta_in: IntMatrix,
    delta_out: IntMatrix,
    homology: Homology,
}

/// A cohomology class: a cocycle and its coordinates in its group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohClass {
    pub degree: usize,
    pub cocycle: Cochain,
    pub coords: Vec<Int>,
}

impl CohGroup {
    pub fn new(res: &Arc<FreeResolution>, module: &Arc<GModule>, n: usize) -> Result<Self> {
        same_order(res, module)?;
        res.require(n + 1)?;
        let k = module.rank();
        let delta_in = if n == 0 {
            IntMatrix::zeros(res.rank(0) * k, 0)
        } else {
            coboundary_matrix(res, module, n - 1)?
        };
        let delta_out = coboundary_matrix(res, module, n)?;
        let rel_y = repeat_block_diag(module.relations(), res.rank(n));
        let rel_z = repeat_block_diag(module.relations(), res.rank(n + 1));
        let homology = Homology::compute(&delta_in, &delta_out, &rel_y, &rel_z)?;
        Ok(CohGroup { res: res.clone(), module: module.clone(), degree: n, delta_in, delta_out, homology })
    }

    /// Uses an automatically chosen resolution.
    pub fn auto(module: &Arc<GModule>, n: usize) -> Result<Self> {
        let res = Arc::new(auto_resolution(module.group(), n + 1)?);
        Self::new(&res, module, n)
    }

    pub fn resolution(&self) -> &Arc<FreeResolution> {
        &self.res
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &FgAbGroup {
        self.homology.group()
    }

    pub fn invariants(&self) -> Vec<Int> {
        self.group().invariants()
    }

    pub fn describe(&self) -> String {
        self.group().describe()
    }

    pub fn order(&self) -> Option<Int> {
        self.group().order()
    }

    pub fn is_trivial_group(&self) -> bool {
        self.group().is_trivial()
    }

    pub fn cochain_len(&self) -> usize {
        self.res.rank(self.degree) * self.module.rank()
    }

    pub fn coboundary_in(&self) -> &IntMatrix {
        &self.delta_in
    }

    pub fn coboundary_out(&self) -> &IntMatrix {
        &self.delta_out
    }

    pub fn is_cocycle(&self, f: &[Int]) -> bool {
        f.len() == self.cochain_len() && self.homology.is_cycle(f)
    }

    /// Class coordinates of a cocycle.
    pub fn classify(&self, f: &[Int]) -> Result<Vec<Int>> {
        if f.len() != self.cochain_len() {
            return Err(Error::Dimension(format!("cochain of length {} expected", self.cochain_len())));
        }
        self.homology
            .classify(f)
            .ok_or_else(|| Error::NotACocycle(format!("degree {} cochain is not a cocycle", self.degree)))
    }

    pub fn class_of(&self, f: &[Int]) -> Result<CohClass> {
        let coords = self.classify(f)?;
        Ok(CohClass { degree: self.degree, cocycle: f.to_vec(), coords })
    }

    pub fn is_coboundary(&self, f: &[Int]) -> Result<bool> {
        Ok(self.classify(f)?.iter().all(|c| c.is_zero()))
    }

    pub fn representative(&self, coords: &[Int]) -> CohClass {
        let f = self.homology.representative(coords);
        CohClass { degree: self.degree, coords: self.group().canonical(&self.homology.cycle_coordinates(&f).unwrap()), cocycle: f }
    }

    pub fn generators(&self) -> Vec<CohClass> {
        let n = self.invariants().len();
        (0..n)
            .map(|i| {
                let mut c = vec![Int::zero(); n];
                c[i] = Int::one();
                self.representative(&c)
            })
            .collect()
    }

    pub fn zero(&self) -> CohClass {
        CohClass {
            degree: self.degree,
            cocycle: vec![Int::zero(); self.cochain_len()],
            coords: vec![Int::zero(); self.invariants().len()],
        }
    }

    /// Order of a class given by coordinates (`None` for infinite order).
    pub fn class_order(&self, coords: &[Int]) -> Option<Int> {
        self.group().element_order(&self.group().from_canonical(coords))
    }

    /// `δh` for an (n-1)-cochain h.
    pub fn coboundary_of(&self, h: &[Int]) -> Cochain {
        self.delta_in.mul_vec(h)
    }
}

/// Applies a module map value-wise.
pub fn induced(phi: &GMap, f: &[Int]) -> Cochain {
    let k = phi.source.rank();
    if k == 0 {
        return vec![];
    }
    f.chunks(k).flat_map(|x| phi.apply(x)).collect()
}

/// Pulls a cochain on the target of a chain map back to its source:
/// `(φ^*f)(e_b) = Σ_a ρ(Φ_ab) f(e_a)`.
pub fn pull_back(cm: &ChainMap, module: &GModule, n: usize, f: &[Int]) -> Cochain {
    let k = module.rank();
    let c = cm.component(n);
    let mut out = vec![Int::zero(); c.cols() * k];
    for b in 0..c.cols() {
        for a in 0..c.rows() {
            let e = c.get(a, b);
            if e.iter().all(|x| x.is_zero()) {
                continue;
            }
            let v = module.rho_apply(e, block(f, a, k));
            for (o, x) in out[b * k..(b + 1) * k].iter_mut().zip(v) {
                *o += x;
            }
        }
    }
    out
}

/// Restriction to a subgroup, on the restricted resolution: `f'(t e_a) = t·f(e_a)`.
pub fn restrict_cochain(rr: &RestrictedResolution, module: &GModule, f: &[Int]) -> Cochain {
    let k = module.rank();
    let t = rr.coset_reps.len();
    let r = f.len() / k.max(1);
    let mut out = Vec::with_capacity(r * t * k);
    for a in 0..r {
        for &tr in &rr.coset_reps {
            out.extend(module.act(tr, block(f, a, k)));
        }
    }
    out
}

/// Transfer: `(cores f')(e_a) = Σ_t t^{-1}·f'(t e_a)`.
pub fn corestrict_cochain(rr: &RestrictedResolution, module: &GModule, f: &[Int]) -> Cochain {
    let k = module.rank();
    let t = rr.coset_reps.len();
    let g = rr.parent.group();
    let r = f.len() / (k * t).max(1);
    let mut out = vec![Int::zero(); r * k];
    for a in 0..r {
        for (ti, &tr) in rr.coset_reps.iter().enumerate() {
            let v = module.act(g.inv(tr), block(f, a * t + ti, k));
            for (o, x) in out[a * k..(a + 1) * k].iter_mut().zip(v) {
                *o += x;
            }
        }
    }
    out
}

/// Connecting map `H^n(G, C) → H^{n+1}(G, A)` on cochains.
pub fn connecting(res: &FreeResolution, ses: &ShortExactSequence, n: usize, c: &[Int]) -> Result<Cochain> {
    res.require(n + 1)?;
    let (a, b, cm) = (ses.a(), ses.b(), ses.c());
    let kc = cm.rank();
    if c.len() != res.rank(n) * kc {
        return Err(Error::Dimension("cochain length".into()));
    }
    let lift = PresentedSolver::new(&ses.p.matrix, cm.relations());
    let mut bf = Vec::with_capacity(res.rank(n) * b.rank());
    for j in 0..res.rank(n) {
        let x = lift
            .solve(block(c, j, kc))
            .ok_or_else(|| Error::NotExact { degree: 2, detail: "value does not lift".into() })?;
        bf.extend(x);
    }
    let db = coboundary(res, b, n, &bf)?;
    let pre = PresentedSolver::new(&ses.i.matrix, b.relations());
    let kb = b.rank();
    let mut out = Vec::with_capacity(res.rank(n + 1) * a.rank());
    for j in 0..res.rank(n + 1) {
        let x = pre.solve(block(&db, j, kb)).ok_or_else(|| {
            Error::NotACocycle(format!("connecting map: degree {} input is not a cocycle", n))
        })?;
        out.extend(x);
    }
    Ok(out)
}

/// A rational cochain `nums / den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCochain {
    pub nums: Vec<Int>,
    pub den: Int,
}

/// `H^n(G, L⊗Q/Z) → H^{n+1}(G, L)`: coboundary of a rational lift, divided out.
pub fn bockstein_shift(res: &FreeResolution, lattice: &GModule, n: usize, c: &RationalCochain) -> Result<Cochain> {
    if lattice.has_relations() {
        return Err(Error::Torsion("Bockstein shift needs a lattice".into()));
    }
    if c.den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let d = coboundary(res, lattice, n, &c.nums)?;
    d.iter()
        .map(|x| {
            if (x % &c.den).is_zero() {
                Ok(x / &c.den)
            } else {
                Err(Error::NotQzCocycle)
            }
        })
        .collect()
}

/// Inverse of the shift: a rational `h` with `δh = c`, for an integral (n+1)-cocycle `c`.
pub fn inverse_shift(res: &FreeResolution, lattice: &GModule, n: usize, c: &[Int]) -> Result<RationalCochain> {
    if lattice.has_relations() {
        return Err(Error::Torsion("Bockstein shift needs a lattice".into()));
    }
    let m = coboundary_matrix(res, lattice, n)?;
    let (nums, den) = ColumnEchelon::new(&m)
        .solve_rational(c)
        .ok_or_else(|| Error::NotACocycle("not rationally a coboundary".into()))?;
    Ok(RationalCochain { nums, den })
}

/// Cup product through a diagonal approximation, with pairing `μ: M⊗N → L`
/// given on generators (`rank L × (rank M · rank N)`, source-major).
pub fn cup(
    res: &FreeResolution,
    diag: &DiagonalApprox,
    m: &GModule,
    u: (usize, &[Int]),
    nmod: &GModule,
    v: (usize, &[Int]),
    mu: &IntMatrix,
) -> Result<Cochain> {
    let (p, uf) = u;
    let (q, vf) = v;
    let deg = p + q;
    if diag.top_degree() < deg {
        return Err(Error::ResolutionTooShort { needed: deg, available: diag.top_degree() });
    }
    let (km, kn) = (m.rank(), nmod.rank());
    if mu.cols() != km * kn {
        return Err(Error::Dimension("pairing shape".into()));
    }
    let kl = mu.rows();
    let mut out = vec![Int::zero(); res.rank(deg) * kl];
    for j in 0..res.rank(deg) {
        let mut acc = vec![Int::zero(); km * kn];
        for (a, g, b, h, c) in diag.block_terms(deg, j, p) {
            let x = m.act(g, block(uf, a, km));
            let y = nmod.act(h, block(vf, b, kn));
            for (s, xs) in x.iter().enumerate() {
                if xs.is_zero() {
                    continue;
                }
                for (t, yt) in y.iter().enumerate() {
                    acc[s * kn + t] += &c * xs * yt;
                }
            }
        }
        let val = mu.mul_vec(&acc);
        out[j * kl..(j + 1) * kl].clone_from_slice(&val);
    }
    Ok(out)
}
