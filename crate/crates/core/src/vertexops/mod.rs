//! Vertex-operator integrals acting on symmetric functions.

mod engine;
mod kernel;
mod ops;
mod zlaurent;

pub use engine::Evaluator;
pub use kernel::{ContourOrder, HalfPlane, KernelReading, KernelSpec};
pub use ops::{
    apply_u_pm1, apply_word, deps_kernel, dn_kernel, generator, negative_power_correction, umn_kernel, word_kernel,
    Operator, OperatorContext,
};
pub use zlaurent::ZLaurent;
