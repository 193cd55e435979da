//! Relations of the elliptic Hall algebra checked on graded pieces of the
//! symmetric functions.

mod algebra;
mod checks;
mod lattice;
mod matrix;

pub use algebra::{c_k, qt_diff, relation_sign, u_operator, v_from_u, GeneratorSigns, Hall};
pub use checks::{
    adjoint, all_pass, check_actions_agree, check_adjoint, check_rel1, check_rel2, check_well_defined,
    determine_orientation, rel1_scalar, rel2_rhs, AdjointReport, AdjointVerdict, CheckReport, Status, TriangleRules,
};
pub use lattice::{Handedness, LatticeCondition, LatticePoint, TriangleSpec};
pub use matrix::OpMatrix;
