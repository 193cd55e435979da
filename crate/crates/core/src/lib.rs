pub mod coeffs;
pub mod error;
pub mod hallalg;
pub mod linalg;
pub mod shuffle;
pub mod symfunc;
pub mod vertexops;

pub use coeffs::{Coeff, HalfLaurent, Ring};
pub use error::{Error, Result};
pub use symfunc::{Orientation, Partition, RibbonWord, SymFunc};
