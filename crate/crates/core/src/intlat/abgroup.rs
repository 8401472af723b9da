use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::echelon::{lattice_basis, ColumnEchelon};
use super::snf::snf_core;
use super::{Int, IntMatrix};
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^n / (column span of relations)`.
///
/// Elements are coordinate vectors over the given generators. The Smith data
/// is an internal cache used for canonical forms.
#[derive(Clone)]
pub struct FgAbGroup {
    gens: usize,
    relations: IntMatrix,
    diag: Vec<Int>,
    u: IntMatrix,
    uinv: IntMatrix,
    keep: Vec<usize>,
}

impl FgAbGroup {
    pub fn new(gens: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != gens {
            return Err(Error::Dimension(format!(
                "relation matrix has {} rows for {} generators",
                relations.rows(),
                gens
            )));
        }
        let basis = lattice_basis(gens, relations.columns());
        let reduced = IntMatrix::from_columns(gens, &basis);
        let parts = snf_core(&reduced, true, true, false);
        let diag = parts.diag;
        let keep = (0..gens).filter(|&i| !diag[i].is_one()).collect();
        Ok(FgAbGroup {
            gens,
            relations,
            diag,
            u: parts.u.unwrap(),
            uinv: parts.uinv.unwrap(),
            keep,
        })
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zeros(rank, 0)).expect("free group")
    }

    pub fn cyclic(n: i64) -> Self {
        Self::new(1, IntMatrix::from_i64(&[vec![n]])).expect("cyclic group")
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn generator_count(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Nonunit invariant factors, torsion first (divisibility chain), then 0 per free rank.
    pub fn invariants(&self) -> Vec<Int> {
        self.keep.iter().map(|&i| self.diag[i].clone()).collect()
    }

    pub fn torsion_invariants(&self) -> Vec<Int> {
        self.invariants().into_iter().filter(|d| !d.is_zero()).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.keep.iter().filter(|&&i| self.diag[i].is_zero()).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.keep.is_empty()
    }

    pub fn is_lattice(&self) -> bool {
        self.torsion_invariants().is_empty()
    }

    /// Group order, or `None` if infinite.
    pub fn order(&self) -> Option<Int> {
        let mut o = Int::one();
        for d in self.invariants() {
            if d.is_zero() {
                return None;
            }
            o *= d;
        }
        Some(o)
    }

    pub fn same_invariants(&self, other: &FgAbGroup) -> bool {
        self.invariants() == other.invariants()
    }

    fn check(&self, x: &[Int]) -> Result<()> {
        if x.len() != self.gens {
            return Err(Error::Dimension(format!(
                "element has {} coordinates, group has {} generators",
                x.len(),
                self.gens
            )));
        }
        Ok(())
    }

    /// Coordinates of `x` in the invariant-factor decomposition.
    pub fn canonical(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.gens, "element length");
        let y = self.u.mul_vec(x);
        self.keep
            .iter()
            .map(|&i| {
                let d = &self.diag[i];
                if d.is_zero() {
                    y[i].clone()
                } else {
                    y[i].mod_floor(d)
                }
            })
            .collect()
    }

    pub fn try_canonical(&self, x: &[Int]) -> Result<Vec<Int>> {
        self.check(x)?;
        Ok(self.canonical(x))
    }

    /// An element with the given canonical coordinates.
    pub fn from_canonical(&self, c: &[Int]) -> Vec<Int> {
        assert_eq!(c.len(), self.keep.len(), "canonical coordinate length");
        let mut y = vec![Int::zero(); self.gens];
        for (k, &i) in self.keep.iter().enumerate() {
            y[i] = c[k].clone();
        }
        self.uinv.mul_vec(&y)
    }

    /// Elements mapping to the canonical unit vectors.
    pub fn canonical_generators(&self) -> Vec<Vec<Int>> {
        (0..self.keep.len())
            .map(|k| {
                let mut c = vec![Int::zero(); self.keep.len()];
                c[k] = Int::one();
                self.from_canonical(&c)
            })
            .collect()
    }

    /// The rows of the canonical coordinate map (before reduction).
    pub fn canonical_matrix(&self) -> IntMatrix {
        self.u.select_rows(&self.keep)
    }

    /// Columns sending canonical coordinates back to generator coordinates.
    pub fn canonical_section_matrix(&self) -> IntMatrix {
        self.uinv.select_columns(&self.keep)
    }

    pub fn is_zero(&self, x: &[Int]) -> bool {
        self.canonical(x).iter().all(|c| c.is_zero())
    }

    pub fn equal(&self, x: &[Int], y: &[Int]) -> bool {
        self.canonical(x) == self.canonical(y)
    }

    pub fn add(&self, x: &[Int], y: &[Int]) -> Vec<Int> {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    pub fn neg(&self, x: &[Int]) -> Vec<Int> {
        x.iter().map(|a| -a).collect()
    }

    pub fn scale(&self, x: &[Int], s: &Int) -> Vec<Int> {
        x.iter().map(|a| a * s).collect()
    }

    /// Order of an element, `None` if infinite.
    pub fn element_order(&self, x: &[Int]) -> Option<Int> {
        let c = self.canonical(x);
        let mut o = Int::one();
        for (k, &i) in self.keep.iter().enumerate() {
            let d = &self.diag[i];
            if c[k].is_zero() {
                continue;
            }
            if d.is_zero() {
                return None;
            }
            o = o.lcm(&(d / d.gcd(&c[k])));
        }
        Some(o)
    }

    pub fn describe(&self) -> String {
        describe_invariants(&self.invariants())
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({})", self.describe())
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl PartialEq for FgAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_invariants(other)
    }
}

pub fn describe_invariants(inv: &[Int]) -> String {
    if inv.is_empty() {
        return "0".to_string();
    }
    inv.iter()
        .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{}", d) })
        .collect::<Vec<_>>()
        .join(" ⊕ ")
}

pub fn group_from_relations(gen_count: usize, relations: IntMatrix) -> Result<FgAbGroup> {
    FgAbGroup::new(gen_count, relations)
}

/// Lattice of `x ∈ Z^s` with `C x ≡ 0` in the group with canonical moduli `moduli`.
fn canonical_kernel(c: &IntMatrix, moduli: &[Int]) -> Vec<Vec<Int>> {
    let s = c.cols();
    let t = c.rows();
    let mut cols = c.columns();
    for (k, d) in moduli.iter().enumerate() {
        if !d.is_zero() {
            let mut e = vec![Int::zero(); t];
            e[k] = d.clone();
            cols.push(e);
        }
    }
    let e = ColumnEchelon::from_columns(t, cols);
    let proj: Vec<Vec<Int>> = e.kernel_basis().into_iter().map(|v| v[..s].to_vec()).collect();
    lattice_basis(s, proj)
}

/// The subgroup generated by a list of elements, with a membership test.
#[derive(Clone, Debug)]
pub struct AbSubgroup {
    ambient: FgAbGroup,
    generators: Vec<Vec<Int>>,
    group: FgAbGroup,
    solver: ColumnEchelon,
}

impl AbSubgroup {
    pub fn new(ambient: &FgAbGroup, elements: &[Vec<Int>]) -> Result<Self> {
        for e in elements {
            ambient.check(e)?;
        }
        let s = elements.len();
        let inv = ambient.invariants();
        let t = inv.len();
        let cols: Vec<Vec<Int>> = elements.iter().map(|e| ambient.canonical(e)).collect();
        let c = IntMatrix::from_columns(t, &cols);
        let kernel = canonical_kernel(&c, &inv);
        let group = FgAbGroup::new(s, IntMatrix::from_columns(s, &kernel))?;
        let mut all = cols.clone();
        for (k, d) in inv.iter().enumerate() {
            if !d.is_zero() {
                let mut e = vec![Int::zero(); t];
                e[k] = d.clone();
                all.push(e);
            }
        }
        let solver = ColumnEchelon::from_columns(t, all);
        Ok(AbSubgroup { ambient: ambient.clone(), generators: elements.to_vec(), group, solver })
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn ambient(&self) -> &FgAbGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    pub fn invariants(&self) -> Vec<Int> {
        self.group.invariants()
    }

    pub fn order(&self) -> Option<Int> {
        self.group.order()
    }

    /// Coefficients expressing `x` in the generators, if `x` is a member.
    pub fn coefficients(&self, x: &[Int]) -> Result<Option<Vec<Int>>> {
        self.ambient.check(x)?;
        let c = self.ambient.canonical(x);
        Ok(self.solver.solve(&c).map(|v| v[..self.generators.len()].to_vec()))
    }

    pub fn contains(&self, x: &[Int]) -> Result<bool> {
        Ok(self.coefficients(x)?.is_some())
    }
}

pub fn subgroup_generated(elements: &[Vec<Int>], ambient: &FgAbGroup) -> Result<AbSubgroup> {
    AbSubgroup::new(ambient, elements)
}

/// A homomorphism of presented groups given on generators.
#[derive(Clone, Debug)]
pub struct AbHom {
    pub source: FgAbGroup,
    pub target: FgAbGroup,
    pub matrix: IntMatrix,
}

impl AbHom {
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.generator_count() || matrix.cols() != source.generator_count() {
            return Err(Error::Dimension("homomorphism matrix shape".into()));
        }
        for r in source.relations().columns() {
            if !target.is_zero(&matrix.mul_vec(&r)) {
                return Err(Error::RelationsNotPreserved("relation maps to a nonzero element".into()));
            }
        }
        Ok(AbHom { source, target, matrix })
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.matrix.mul_vec(x)
    }

    pub fn kernel(&self) -> Result<AbSubgroup> {
        let c = self.target.canonical_matrix().mul(&self.matrix);
        let gens = canonical_kernel(&c, &self.target.invariants());
        AbSubgroup::new(&self.source, &gens)
    }

    pub fn image(&self) -> Result<AbSubgroup> {
        AbSubgroup::new(&self.target, &self.matrix.columns())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.columns().iter().all(|c| self.target.is_zero(c))
    }
}
