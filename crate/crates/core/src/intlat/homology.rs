use num_traits::Zero;

use super::echelon::{lattice_basis, ColumnEchelon};
use super::{AbHom, FgAbGroup, Int, IntMatrix};
use crate::error::{Error, Result};

/// `ker(g) / im(f)` for `X --f--> Y --g--> Z` with presented `Y`, `Z`.
#[derive(Clone, Debug)]
pub struct Homology {
    ambient_dim: usize,
    cycles: Vec<Vec<Int>>,
    cycle_solver: ColumnEchelon,
    group: FgAbGroup,
}

impl Homology {
    /// `f`: b×a, `g`: c×b, `rel_y`: b×s, `rel_z`: c×t (columns are relators).
    pub fn compute(f: &IntMatrix, g: &IntMatrix, rel_y: &IntMatrix, rel_z: &IntMatrix) -> Result<Self> {
        let b = g.cols();
        if f.rows() != b || rel_y.rows() != b || rel_z.rows() != g.rows() {
            return Err(Error::Dimension("homology: inconsistent shapes".into()));
        }
        let c = g.rows();
        let z_solver = ColumnEchelon::span(c, rel_z.columns());
        let gf = g.mul(f);
        for (j, col) in gf.columns().iter().enumerate() {
            if !z_solver.contains(col) {
                return Err(Error::NotAComplex(format!("g∘f is nonzero on generator {}", j)));
            }
        }
        let cycles = if c == 0 {
            (0..b)
                .map(|i| {
                    let mut e = vec![Int::zero(); b];
                    e[i] = 1.into();
                    e
                })
                .collect::<Vec<_>>()
        } else {
            let stacked = g.hstack(rel_z);
            let e = ColumnEchelon::new(&stacked);
            let proj: Vec<Vec<Int>> = e.kernel_basis().into_iter().map(|v| v[..b].to_vec()).collect();
            proj
        };
        let cycles = lattice_basis(b, cycles);
        let cycle_solver = ColumnEchelon::from_columns(b, cycles.clone());
        let z = cycles.len();
        let mut rels = Vec::new();
        for col in f.columns().into_iter().chain(rel_y.columns()) {
            let u = cycle_solver
                .solve(&col)
                .ok_or_else(|| Error::NotAComplex("boundary is not a cycle".into()))?;
            rels.push(u);
        }
        let group = FgAbGroup::new(z, IntMatrix::from_columns(z, &rels))?;
        Ok(Homology { ambient_dim: b, cycles, cycle_solver, group })
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn cycle_basis(&self) -> &[Vec<Int>] {
        &self.cycles
    }

    pub fn is_cycle(&self, y: &[Int]) -> bool {
        y.len() == self.ambient_dim && self.cycle_solver.contains(y)
    }

    /// Coordinates of `y` over the cycle basis.
    pub fn cycle_coordinates(&self, y: &[Int]) -> Option<Vec<Int>> {
        if y.len() != self.ambient_dim {
            return None;
        }
        self.cycle_solver.solve(y)
    }

    /// Class coordinates of a cycle (`None` if `y` is not a cycle).
    pub fn classify(&self, y: &[Int]) -> Option<Vec<Int>> {
        let u = self.cycle_coordinates(y)?;
        Some(self.group.canonical(&u))
    }

    /// A representative cycle for canonical class coordinates.
    pub fn representative(&self, coords: &[Int]) -> Vec<Int> {
        let u = self.group.from_canonical(coords);
        let mut y = vec![Int::zero(); self.ambient_dim];
        for (k, c) in u.iter().enumerate() {
            super::matrix::axpy(&mut y, c, &self.cycles[k]);
        }
        y
    }

    /// Representatives of the canonical generators.
    pub fn generator_representatives(&self) -> Vec<Vec<Int>> {
        let n = self.group.invariants().len();
        (0..n)
            .map(|k| {
                let mut c = vec![Int::zero(); n];
                c[k] = 1.into();
                self.representative(&c)
            })
            .collect()
    }
}

/// Homology of `X --f--> Y --g--> Z` for maps of presented groups.
pub fn complex_homology_at(f: &AbHom, g: &AbHom) -> Result<Homology> {
    if f.target.generator_count() != g.source.generator_count() {
        return Err(Error::Dimension("maps do not compose".into()));
    }
    Homology::compute(&f.matrix, &g.matrix, f.target.relations(), g.target.relations())
}
