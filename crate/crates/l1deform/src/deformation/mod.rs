//! Formal deformations of `L1`: the deformation equation, gauge action,
//! order-by-order integration, singularity and the quadratic branches.

mod classify;
mod formal;
mod gauge;
mod graded;
mod integrate;
mod singularity;

pub use formal::{apply_parameter_change, defect_vanishes, deformation_family, distinguish_families, jacobi_defect, verify_embedding, FamilyInvariants, FormalDeformation, ParameterChange};
pub use graded::{Graded, PolyCochain};
pub use gauge::{apply_gauge, gamma_deformation, gauge_primitive, GaugeTransform};
pub use integrate::{integrate, integrate_from, right_hand_side, CoefficientPolicy, Constraint, Integration, IntegrationOptions, ObstructionReport, PrimitiveSource, Step};
pub use classify::{branch_a, branch_b, classify, final_determinant, BranchA, BranchB, Classification, DeterminantCheck, RootExtension};
pub use singularity::{singularity_test, ClassEvidence, Killed, SingularityVerdict};
