//! Exact integer linear algebra and finitely generated abelian groups.

mod abgroup;
mod echelon;
mod homology;
pub(crate) mod matrix;
mod snf;

pub use abgroup::{describe_invariants, group_from_relations, subgroup_generated, AbHom, AbSubgroup, FgAbGroup};
pub use echelon::{lattice_basis, solve_integer, ColumnEchelon, LatticeBuilder};
pub use homology::{complex_homology_at, Homology};
pub use matrix::{axpy, is_zero_vec, vec_add, vec_from_i64, vec_scale, vec_sub, IntMatrix};
pub use snf::{smith_normal_form, SmithDecomposition};

pub type Int = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;

pub fn int(x: i64) -> Int {
    Int::from(x)
}

#[cfg(test)]
mod tests;
