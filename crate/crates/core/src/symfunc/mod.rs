//! The ring of symmetric functions over [`Coeff`](crate::Coeff), stored in
//! the power-sum basis.

mod bases;
mod inner;
mod macdonald;
mod partition;
mod ribbon;
mod spectral;
#[allow(clippy::module_inception)]
mod symfunc;

pub use bases::{basis_element, convert, from_basis, Basis};
pub use inner::{adjoint_p, inner, p_norm};
pub use macdonald::{macdonald_basis, operator_matrix, MacdonaldCache};
pub use partition::{partitions, Partition};
pub use ribbon::{ribbon_schur, ribbon_shape, skew_schur, RibbonWord, SkewShape};
pub use spectral::{power_sum_value, spectral_eigenvalue, Orientation};
pub use symfunc::SymFunc;
