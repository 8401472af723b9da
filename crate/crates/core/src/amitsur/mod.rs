//! Equivariant presentations, the four-term unit/divisor extension, Amitsur
//! groups, the universal torsor obstruction and restriction kernels.

mod bogomolov;
mod builtins;
mod dp2;
mod file;
mod invariants;
mod presentation;
mod units;

pub use bogomolov::{bogomolov_kernel, RestrictionKernel};
pub use builtins::{
    builtin_presentation, cyclic_projective, integer_unit, klein_p1, klein_p1_enlarged, rational_model, toric_klein,
    toric_klein_with, ToricKlein,
};
pub use dp2::{bundled_dp2, dp2_verify, CycloValue, Dp2Check, Dp2Data, Dp2Dataset, Dp2Report, Dp2Value, DP2_DATASET_JSON};
pub use file::PresentationFile;
pub use invariants::{
    alpha_class, amitsur_group, amitsur_groups, beta, canonical_group, gm, Alpha, AmitsurImage, AmitsurLine, BetaReport,
};
pub use presentation::{ConstantSupport, EquivariantPresentation, PresentationModules, PresentationReport, Twist};
pub use units::{UnitModel, UnitValue};

#[cfg(test)]
mod tests;
