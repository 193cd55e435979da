//! Rational functions in `z_1..z_n` under the symmetrized shuffle product.

mod build;
mod elem;
mod membership;
mod relations;

pub use build::{p_mn, shuffle_mul, upsilon_ribbon, word_elem, words_in_window, RibbonReading};
pub use elem::{canonical_denominator, rat_eq, Denominator, ShuffleElem, ZPoly};
pub use membership::{divide_linear, is_in_s, Membership};
pub use relations::{find_linear_relations, relations_in_window, WindowRelations};
