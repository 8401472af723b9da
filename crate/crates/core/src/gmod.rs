//! G-modules and equivariant maps.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fingroup::{FinGroup, Subgroup};
use crate::intlat::{lattice_basis, ColumnEchelon, FgAbGroup, Int, IntMatrix};

/// A finitely generated abelian group with a validated action of every element.
#[derive(Clone)]
pub struct GModule {
    group: Arc<FinGroup>,
    underlying: FgAbGroup,
    action: Vec<IntMatrix>,
    relation_span: Arc<ColumnEchelon>,
}

impl std::fmt::Debug for GModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GModule(group {}, {} generators, {})",
            self.group.name(),
            self.rank(),
            self.underlying.describe()
        )
    }
}

impl GModule {
    /// Builds a module from generator actions; every element's action is
    /// materialized through its word and validated.
    pub fn new(
        group: &Arc<FinGroup>,
        gens: usize,
        relations: IntMatrix,
        generator_actions: &[IntMatrix],
    ) -> Result<Self> {
        if generator_actions.len() != group.generators().len() {
            return Err(Error::Dimension(format!(
                "{} generator actions for {} group generators",
                generator_actions.len(),
                group.generators().len()
            )));
        }
        for a in generator_actions {
            if a.shape() != (gens, gens) {
                return Err(Error::Dimension("action matrix shape".into()));
            }
        }
        let underlying = FgAbGroup::new(gens, relations)?;
        let action: Vec<IntMatrix> = (0..group.order())
            .map(|g| {
                group
                    .word(g)
                    .iter()
                    .fold(IntMatrix::identity(gens), |acc, &k| acc.mul(&generator_actions[k]))
            })
            .collect();
        let m = Self::assemble(group.clone(), underlying, action);
        m.check_relations()?;
        // A(g)A(s) = A(gs) for every element g and generator s implies a homomorphism.
        for (k, (name, s)) in group.generators().iter().enumerate() {
            for g in 0..group.order() {
                let lhs = m.action[g].mul(&generator_actions[k]);
                if !m.matrices_agree(&lhs, &m.action[group.mul(g, *s)]) {
                    return Err(Error::RelatorViolated(format!(
                        "action of {}·{} differs from the action of the product",
                        group.element_name(g),
                        name
                    )));
                }
            }
        }
        Ok(m)
    }

    /// Builds a module from an action matrix per element, validated exhaustively.
    pub fn from_element_actions(
        group: &Arc<FinGroup>,
        gens: usize,
        relations: IntMatrix,
        action: Vec<IntMatrix>,
    ) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::Dimension("one action matrix per element required".into()));
        }
        let underlying = FgAbGroup::new(gens, relations)?;
        let m = Self::assemble(group.clone(), underlying, action);
        m.validate()?;
        Ok(m)
    }

    /// For constructions whose validity follows from validated inputs.
    pub(crate) fn assemble(group: Arc<FinGroup>, underlying: FgAbGroup, action: Vec<IntMatrix>) -> Self {
        let relation_span = Arc::new(ColumnEchelon::span(underlying.generator_count(), underlying.relations().columns()));
        GModule { group, underlying, action, relation_span }
    }

    fn check_relations(&self) -> Result<()> {
        for (g, a) in self.action.iter().enumerate() {
            if a.shape() != (self.rank(), self.rank()) {
                return Err(Error::Dimension("action matrix shape".into()));
            }
            for r in self.underlying.relations().columns() {
                if !self.is_zero(&a.mul_vec(&r)) {
                    return Err(Error::RelationsNotPreserved(format!(
                        "{} moves a relator outside the relation lattice",
                        self.group.element_name(g)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Full exhaustive validation of the action.
    pub fn validate(&self) -> Result<()> {
        self.check_relations()?;
        let g = &self.group;
        if !self.matrices_agree(&self.action[g.identity()], &IntMatrix::identity(self.rank())) {
            return Err(Error::RelatorViolated("identity does not act trivially".into()));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let lhs = self.action[a].mul(&self.action[b]);
                if !self.matrices_agree(&lhs, &self.action[g.mul(a, b)]) {
                    return Err(Error::RelatorViolated(format!(
                        "action({})·action({}) ≠ action of the product",
                        g.element_name(a),
                        g.element_name(b)
                    )));
                }
            }
        }
        Ok(())
    }

    fn matrices_agree(&self, a: &IntMatrix, b: &IntMatrix) -> bool {
        if self.underlying.relations().cols() == 0 {
            return a == b;
        }
        a.sub(b).columns().iter().all(|c| self.is_zero(c))
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    pub fn underlying(&self) -> &FgAbGroup {
        &self.underlying
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.underlying.generator_count()
    }

    pub fn relations(&self) -> &IntMatrix {
        self.underlying.relations()
    }

    pub fn is_lattice(&self) -> bool {
        self.underlying.relations().cols() == 0 || self.underlying.is_lattice() && self.relation_span.rank() == 0
    }

    pub fn has_relations(&self) -> bool {
        self.relation_span.rank() > 0
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[IntMatrix] {
        &self.action
    }

    pub fn act(&self, g: usize, x: &[Int]) -> Vec<Int> {
        self.action[g].mul_vec(x)
    }

    /// Matrix of a group-ring element `Σ c_g g` acting on generators.
    pub fn rho(&self, coeffs: &[Int]) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rank(), self.rank());
        for (g, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.action[g].scale(c));
            }
        }
        out
    }

    /// `Σ c_g g·x` for a group-ring element.
    pub fn rho_apply(&self, coeffs: &[Int], x: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::zero(); self.rank()];
        for (g, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let y = self.act(g, x);
                crate::intlat::axpy(&mut out, c, &y);
            }
        }
        out
    }

    pub fn is_zero(&self, x: &[Int]) -> bool {
        if x.iter().all(|c| c.is_zero()) {
            return true;
        }
        self.relation_span.rank() > 0 && self.relation_span.contains(x)
    }

    pub fn equal(&self, x: &[Int], y: &[Int]) -> bool {
        let d: Vec<Int> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero(&d)
    }

    /// Only the identity acts trivially.
    pub fn is_faithful(&self) -> bool {
        let id = IntMatrix::identity(self.rank());
        (0..self.group.order())
            .filter(|&g| g != self.group.identity())
            .all(|g| !self.matrices_agree(&self.action[g], &id))
    }

    pub fn trivial(group: &Arc<FinGroup>, underlying: FgAbGroup) -> Self {
        let k = underlying.generator_count();
        let action = vec![IntMatrix::identity(k); group.order()];
        Self::assemble(group.clone(), underlying, action)
    }

    pub fn trivial_z(group: &Arc<FinGroup>) -> Self {
        Self::trivial(group, FgAbGroup::free(1))
    }

    /// Trivial module `Z/n` (or `Z` for n = 0).
    pub fn trivial_cyclic(group: &Arc<FinGroup>, n: i64) -> Self {
        if n == 0 {
            return Self::trivial_z(group);
        }
        Self::trivial(group, FgAbGroup::cyclic(n))
    }

    /// Permutation module on points `0..n`; `perms[g][i]` is the image of point i.
    pub fn permutation(group: &Arc<FinGroup>, perms: &[Vec<usize>]) -> Result<Self> {
        let n = perms.first().map_or(0, |p| p.len());
        let action = perms
            .iter()
            .map(|p| {
                let mut m = IntMatrix::zeros(n, n);
                for (i, &j) in p.iter().enumerate() {
                    m[(j, i)] = Int::one();
                }
                m
            })
            .collect();
        Self::from_element_actions(group, n, IntMatrix::zeros(n, 0), action)
    }

    /// Permutation module from the permutations of the group generators.
    pub fn permutation_from_generators(group: &Arc<FinGroup>, n: usize, gen_perms: &[Vec<usize>]) -> Result<Self> {
        let mats: Vec<IntMatrix> = gen_perms
            .iter()
            .map(|p| {
                let mut m = IntMatrix::zeros(n, n);
                for (i, &j) in p.iter().enumerate() {
                    m[(j, i)] = Int::one();
                }
                m
            })
            .collect();
        Self::new(group, n, IntMatrix::zeros(n, 0), &mats)
    }

    /// Free module `Z[G]^r`; coordinate `a·|G| + g` is the basis vector `g·e_a`.
    pub fn free(group: &Arc<FinGroup>, r: usize) -> Self {
        let n = group.order();
        let action = (0..n)
            .map(|h| {
                let mut m = IntMatrix::zeros(r * n, r * n);
                for a in 0..r {
                    for g in 0..n {
                        m[(a * n + group.mul(h, g), a * n + g)] = Int::one();
                    }
                }
                m
            })
            .collect();
        Self::assemble(group.clone(), FgAbGroup::free(r * n), action)
    }

    pub fn regular(group: &Arc<FinGroup>) -> Self {
        Self::free(group, 1)
    }

    pub fn tensor(&self, other: &GModule) -> Result<Self> {
        same_group(&self.group, &other.group)?;
        let (a, b) = (self.rank(), other.rank());
        let rel = self
            .relations()
            .kronecker(&IntMatrix::identity(b))
            .hstack(&IntMatrix::identity(a).kronecker(other.relations()));
        let underlying = FgAbGroup::new(a * b, rel)?;
        let action = (0..self.group.order()).map(|g| self.action[g].kronecker(&other.action[g])).collect();
        Ok(Self::assemble(self.group.clone(), underlying, action))
    }

    /// Dual lattice with the contragredient action `(A(g)^{-1})^T`.
    pub fn dual(&self) -> Result<Self> {
        if !self.is_lattice() || self.relations().cols() > 0 {
            return Err(Error::Torsion("dual is only defined for lattices without relations".into()));
        }
        let action = (0..self.group.order()).map(|g| self.action[self.group.inv(g)].transpose()).collect();
        Ok(Self::assemble(self.group.clone(), FgAbGroup::free(self.rank()), action))
    }

    pub fn restrict(&self, h: &Subgroup) -> Result<Self> {
        same_group(&self.group, h.parent())?;
        let action = h.embedding().iter().map(|&g| self.action[g].clone()).collect();
        Ok(Self::assemble(h.group().clone(), self.underlying.clone(), action))
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<Self> {
        same_group(&self.group, &other.group)?;
        let rel = self.relations().block_diag(other.relations());
        let underlying = FgAbGroup::new(self.rank() + other.rank(), rel)?;
        let action = (0..self.group.order()).map(|g| self.action[g].block_diag(&other.action[g])).collect();
        Ok(Self::assemble(self.group.clone(), underlying, action))
    }

    /// An isomorphic relation-free presentation of a torsion-free module,
    /// with the isomorphisms `to` (self → lattice) and `from` (lattice → self).
    pub fn as_lattice(&self) -> Result<(GModule, IntMatrix, IntMatrix)> {
        if !self.underlying.is_lattice() {
            return Err(Error::Torsion(format!("module has torsion {}", self.underlying.describe())));
        }
        if self.relations().cols() == 0 {
            let id = IntMatrix::identity(self.rank());
            return Ok((self.clone(), id.clone(), id));
        }
        let to = self.underlying.canonical_matrix();
        let from = self.underlying.canonical_section_matrix();
        let f = to.rows();
        let action = self.action.iter().map(|a| to.mul(a).mul(&from)).collect();
        Ok((Self::assemble(self.group.clone(), FgAbGroup::free(f), action), to, from))
    }

    /// `G`-fixed elements of a lattice, as a basis of the fixed sublattice.
    pub fn invariants_basis(&self) -> Vec<Vec<Int>> {
        let k = self.rank();
        let mut stacked = IntMatrix::zeros(0, k);
        for g in self.group.generator_elements() {
            stacked = stacked.vstack(&self.action[g].sub(&IntMatrix::identity(k)));
        }
        let rel = IntMatrix::zeros(stacked.rows(), 0);
        let full = stacked.hstack(&rel);
        let e = ColumnEchelon::new(&full);
        lattice_basis(k, e.kernel_basis())
    }
}

fn same_group(a: &Arc<FinGroup>, b: &Arc<FinGroup>) -> Result<()> {
    if Arc::ptr_eq(a, b) || (a.order() == b.order() && a.name() == b.name()) {
        Ok(())
    } else {
        Err(Error::SubgroupMismatch(format!("modules over {} and {}", a.name(), b.name())))
    }
}

/// Solver for `F x ≡ y` modulo the target relations.
#[derive(Clone, Debug)]
pub struct PresentedSolver {
    cols: usize,
    echelon: ColumnEchelon,
}

impl PresentedSolver {
    pub fn new(f: &IntMatrix, target_relations: &IntMatrix) -> Self {
        let stacked = f.hstack(target_relations);
        PresentedSolver { cols: f.cols(), echelon: ColumnEchelon::new(&stacked) }
    }

    pub fn solve(&self, y: &[Int]) -> Option<Vec<Int>> {
        self.echelon.solve(y).map(|x| x[..self.cols].to_vec())
    }
}

/// An equivariant homomorphism given on generators.
#[derive(Clone, Debug)]
pub struct GMap {
    pub source: Arc<GModule>,
    pub target: Arc<GModule>,
    pub matrix: IntMatrix,
}

impl GMap {
    pub fn new(source: &Arc<GModule>, target: &Arc<GModule>, matrix: IntMatrix) -> Result<Self> {
        same_group(&source.group, &target.group)?;
        if matrix.shape() != (target.rank(), source.rank()) {
            return Err(Error::Dimension(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.rank(),
                source.rank()
            )));
        }
        for r in source.relations().columns() {
            if !target.is_zero(&matrix.mul_vec(&r)) {
                return Err(Error::RelationsNotPreserved("map sends a relator to a nonzero element".into()));
            }
        }
        for g in 0..source.group.order() {
            let lhs = matrix.mul(&source.action[g]);
            let rhs = target.action[g].mul(&matrix);
            if !target.matrices_agree(&lhs, &rhs) {
                return Err(Error::NotEquivariant(format!(
                    "map does not commute with {}",
                    source.group.element_name(g)
                )));
            }
        }
        Ok(GMap { source: source.clone(), target: target.clone(), matrix })
    }

    pub(crate) fn unchecked(source: &Arc<GModule>, target: &Arc<GModule>, matrix: IntMatrix) -> Self {
        GMap { source: source.clone(), target: target.clone(), matrix }
    }

    pub fn identity(m: &Arc<GModule>) -> Self {
        Self::unchecked(m, m, IntMatrix::identity(m.rank()))
    }

    pub fn zero(source: &Arc<GModule>, target: &Arc<GModule>) -> Self {
        Self::unchecked(source, target, IntMatrix::zeros(target.rank(), source.rank()))
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.matrix.mul_vec(x)
    }

    pub fn compose(&self, first: &GMap) -> GMap {
        GMap::unchecked(&first.source, &self.target, self.matrix.mul(&first.matrix))
    }

    pub fn tensor(&self, other: &GMap) -> Result<GMap> {
        let s = Arc::new(self.source.tensor(&other.source)?);
        let t = Arc::new(self.target.tensor(&other.target)?);
        Ok(GMap::unchecked(&s, &t, self.matrix.kronecker(&other.matrix)))
    }

    /// `f ⊗ id_X` with the given tensor modules already built.
    pub fn tensor_with(&self, x: &GModule, source: &Arc<GModule>, target: &Arc<GModule>) -> GMap {
        GMap::unchecked(source, target, self.matrix.kronecker(&IntMatrix::identity(x.rank())))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.columns().iter().all(|c| self.target.is_zero(c))
    }

    /// Solver for preimages modulo the target relations.
    pub fn preimage_solver(&self) -> PresentedSolver {
        PresentedSolver::new(&self.matrix, self.target.relations())
    }

    fn kernel_lattice(&self) -> Vec<Vec<Int>> {
        let a = self.source.rank();
        let stacked = self.matrix.hstack(self.target.relations());
        let e = ColumnEchelon::new(&stacked);
        let proj = e.kernel_basis().into_iter().map(|v| v[..a].to_vec()).collect();
        lattice_basis(a, proj)
    }

    /// Kernel as a module on a basis of the preimage lattice, with its inclusion.
    pub fn kernel(&self) -> Result<(Arc<GModule>, GMap)> {
        let a = self.source.rank();
        let k = self.kernel_lattice();
        let z = k.len();
        let solver = ColumnEchelon::from_columns(a, k.clone());
        let express = |v: &[Int]| -> Result<Vec<Int>> {
            solver.solve(v).ok_or_else(|| Error::Internal("kernel lattice is not stable".into()))
        };
        let mut rels = Vec::new();
        for r in self.source.relations().columns() {
            rels.push(express(&r)?);
        }
        let mut action = Vec::with_capacity(self.source.group.order());
        for g in 0..self.source.group.order() {
            let cols: Result<Vec<Vec<Int>>> = k.iter().map(|c| express(&self.source.act(g, c))).collect();
            action.push(IntMatrix::from_columns(z, &cols?));
        }
        let underlying = FgAbGroup::new(z, IntMatrix::from_columns(z, &rels))?;
        let module = Arc::new(GModule::assemble(self.source.group.clone(), underlying, action));
        let incl = GMap::unchecked(&module, &self.source, IntMatrix::from_columns(a, &k));
        Ok((module, incl))
    }

    /// Image presented on the source generators, with `source → image → target`.
    pub fn image(&self) -> Result<(Arc<GModule>, GMap, GMap)> {
        let a = self.source.rank();
        let k = self.kernel_lattice();
        let underlying = FgAbGroup::new(a, IntMatrix::from_columns(a, &k))?;
        let module = Arc::new(GModule::assemble(
            self.source.group.clone(),
            underlying,
            self.source.action.clone(),
        ));
        let onto = GMap::unchecked(&self.source, &module, IntMatrix::identity(a));
        let into = GMap::unchecked(&module, &self.target, self.matrix.clone());
        Ok((module, onto, into))
    }

    pub fn cokernel(&self) -> Result<(Arc<GModule>, GMap)> {
        let b = self.target.rank();
        let rel = self.target.relations().hstack(&self.matrix);
        let underlying = FgAbGroup::new(b, rel)?;
        let module = Arc::new(GModule::assemble(
            self.target.group.clone(),
            underlying,
            self.target.action.clone(),
        ));
        let proj = GMap::unchecked(&self.target, &module, IntMatrix::identity(b));
        Ok((module, proj))
    }

    pub fn is_injective(&self) -> Result<bool> {
        let (k, _) = self.kernel()?;
        Ok(k.underlying().is_trivial())
    }

    pub fn is_surjective(&self) -> Result<bool> {
        let (c, _) = self.cokernel()?;
        Ok(c.underlying().is_trivial())
    }
}

/// `0 → A → B → C → 0`, validated exact.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub i: GMap,
    pub p: GMap,
}

impl ShortExactSequence {
    pub fn new(i: GMap, p: GMap) -> Result<Self> {
        if !Arc::ptr_eq(&i.target, &p.source) && i.target.rank() != p.source.rank() {
            return Err(Error::Dimension("maps do not compose".into()));
        }
        if !p.compose(&i).is_zero() {
            return Err(Error::NotExact { degree: 1, detail: "composite is nonzero".into() });
        }
        if !i.is_injective()? {
            return Err(Error::NotExact { degree: 0, detail: "first map is not injective".into() });
        }
        if !p.is_surjective()? {
            return Err(Error::NotExact { degree: 2, detail: "second map is not surjective".into() });
        }
        let (_, kinc) = p.kernel()?;
        let solver = i.preimage_solver();
        for col in kinc.matrix.columns() {
            if solver.solve(&col).is_none() {
                return Err(Error::NotExact { degree: 1, detail: "kernel is larger than the image".into() });
            }
        }
        Ok(ShortExactSequence { i, p })
    }

    pub fn a(&self) -> &Arc<GModule> {
        &self.i.source
    }

    pub fn b(&self) -> &Arc<GModule> {
        &self.i.target
    }

    pub fn c(&self) -> &Arc<GModule> {
        &self.p.target
    }

    /// `0 → Z --×n--> Z → Z/n → 0` with trivial action, or the analogous
    /// sequence `0 → L → L → L/nL → 0` for a lattice.
    pub fn multiplication(l: &Arc<GModule>, n: i64) -> Result<Self> {
        if l.has_relations() {
            return Err(Error::Torsion("multiplication sequence needs a lattice".into()));
        }
        let k = l.rank();
        let quotient = Arc::new(GModule::assemble(
            l.group().clone(),
            FgAbGroup::new(k, IntMatrix::identity(k).scale(&Int::from(n)))?,
            l.actions().to_vec(),
        ));
        let i = GMap::unchecked(l, l, IntMatrix::identity(k).scale(&Int::from(n)));
        let p = GMap::unchecked(l, &quotient, IntMatrix::identity(k));
        ShortExactSequence::new(i, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::{cyclic, klein};

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn construction_examples() {
        let k = Arc::new(klein().unwrap());
        let sign = GModule::new(&k, 1, IntMatrix::zeros(1, 0), &[m(&[vec![-1]]), m(&[vec![1]])]).unwrap();
        let c4 = Arc::new(cyclic(4).unwrap());
        let bad = GModule::new(&c4, 1, IntMatrix::zeros(1, 0), &[m(&[vec![2]])]);
        assert!(matches!(bad, Err(Error::RelatorViolated(_))));
        let t = sign.tensor(&sign).unwrap();
        for g in 0..4 {
            assert!(t.action(g).is_identity());
        }
        assert!(GModule::trivial_z(&k).validate().is_ok());
    }

    #[test]
    fn degree_kernel_is_sign() {
        let k = Arc::new(klein().unwrap());
        let div = Arc::new(GModule::permutation_from_generators(&k, 2, &[vec![1, 0], vec![0, 1]]).unwrap());
        let z = Arc::new(GModule::trivial_z(&k));
        let deg = GMap::new(&div, &z, m(&[vec![1, 1]])).unwrap();
        let (ker, inc) = deg.kernel().unwrap();
        assert_eq!(ker.rank(), 1);
        let r = inc.matrix.column(0);
        assert!(r == vec![Int::from(1), Int::from(-1)] || r == vec![Int::from(-1), Int::from(1)]);
        let s = k.generators()[0].1;
        assert_eq!(ker.action(s), &m(&[vec![-1]]));
        let id = GMap::identity(&div);
        assert!(id.kernel().unwrap().0.underlying().is_trivial());
        assert!(id.cokernel().unwrap().0.underlying().is_trivial());
        let two = GMap::new(&z, &z, m(&[vec![2]])).unwrap();
        assert_eq!(two.cokernel().unwrap().0.underlying().describe(), "Z/2");
    }

    #[test]
    fn dual_involution() {
        let k = Arc::new(klein().unwrap());
        let l = GModule::new(&k, 2, IntMatrix::zeros(2, 0), &[m(&[vec![0, 1], vec![1, 0]]), m(&[vec![-1, 0], vec![0, -1]])]).unwrap();
        let dd = l.dual().unwrap().dual().unwrap();
        assert_eq!(dd.actions(), l.actions());
        assert!(GModule::trivial_cyclic(&k, 2).dual().is_err());
    }

    #[test]
    fn non_equivariant_map_rejected() {
        let k = Arc::new(klein().unwrap());
        let div = Arc::new(GModule::permutation_from_generators(&k, 2, &[vec![1, 0], vec![0, 1]]).unwrap());
        let z = Arc::new(GModule::trivial_z(&k));
        assert!(GMap::new(&div, &z, m(&[vec![1, 0]])).is_err());
    }
}
