//! Exact arithmetic in `Q(q^{1/2}, t^{1/2})`.
//!
//! Half-integer powers of `q` and `t` are carried by the variables
//! `Q = q^{1/2}` and `T = t^{1/2}`, so every exponent is an integer.

mod coeff;
mod laurent;
mod text;
pub mod zpoly;

use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub use coeff::Coeff;
pub(crate) use coeff::{common_integer_form, from_bipoly};
pub use laurent::{Exp2, HalfLaurent};
pub use text::{format_coeff, format_laurent, parse_coeff, parse_laurent};

/// Commutative ring operations shared by [`HalfLaurent`] and [`Coeff`].
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Ring for HalfLaurent {
    fn zero() -> Self {
        HalfLaurent::zero()
    }
    fn one() -> Self {
        HalfLaurent::one()
    }
    fn is_zero(&self) -> bool {
        HalfLaurent::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Ring for Coeff {
    fn zero() -> Self {
        Coeff::zero()
    }
    fn one() -> Self {
        Coeff::one()
    }
    fn is_zero(&self) -> bool {
        Coeff::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Ring for zpoly::BiPoly {
    fn zero() -> Self {
        zpoly::BiPoly::default()
    }
    fn one() -> Self {
        zpoly::BiPoly::new(vec![zpoly::UPoly::constant(One::one())])
    }
    fn is_zero(&self) -> bool {
        zpoly::BiPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        zpoly::BiPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        zpoly::BiPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        zpoly::BiPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        zpoly::BiPoly::neg(self)
    }
}

/// A [`Ring`] in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    /// Rough size, used to prefer small pivots in elimination.
    fn weight(&self) -> usize {
        0
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Field for Coeff {
    fn inv(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn weight(&self) -> usize {
        self.num().len() + self.den().len()
    }
}
