use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exponent pair `(a, b)` of the monomial `Q^a T^b`.
pub type Exp2 = (i32, i32);

/// Laurent polynomial in `Q = q^{1/2}` and `T = t^{1/2}` with rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HalfLaurent {
    terms: BTreeMap<Exp2, BigRational>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(c: BigRational, a: i32, b: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        HalfLaurent { terms }
    }

    /// `Q^a T^b` with coefficient 1.
    pub fn qt_pow(a: i32, b: i32) -> Self {
        Self::monomial(BigRational::one(), a, b)
    }

    /// `q^k = Q^{2k}`.
    pub fn q_pow(k: i32) -> Self {
        Self::qt_pow(2 * k, 0)
    }

    /// `t^k = T^{2k}`.
    pub fn t_pow(k: i32) -> Self {
        Self::qt_pow(0, 2 * k)
    }

    /// `(qt)^{k/2} = Q^k T^k`.
    pub fn sqrt_qt_pow(k: i32) -> Self {
        Self::qt_pow(k, k)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp2, BigRational)>>(it: I) -> Self {
        let mut out = HalfLaurent::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, e: Exp2, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exp2, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    /// Returns the coefficient if this is a constant (possibly zero).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// A single term `c Q^a T^b`; such elements are units of the ring.
    pub fn as_monomial(&self) -> Option<(Exp2, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn coeff(&self, e: Exp2) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Largest term under lexicographic order with `Q > T`.
    pub fn leading(&self) -> Option<(&Exp2, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Componentwise minimum exponents `(min_a, min_b)`.
    pub fn min_exponents(&self) -> Option<Exp2> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(first, |(a, b), &(x, y)| (a.min(x), b.min(y))))
    }

    pub fn max_exponents(&self) -> Option<Exp2> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(first, |(a, b), &(x, y)| (a.max(x), b.max(y))))
    }

    /// Multiplies by `Q^da T^db`.
    pub fn shift(&self, da: i32, db: i32) -> Self {
        HalfLaurent {
            terms: self.terms.iter().map(|(&(a, b), c)| ((a + da, b + db), c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        HalfLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// Substitutes `Q -> Q^k`, `T -> T^k`.
    pub fn power_shift(&self, k: i32) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(a, b), c)| ((a * k, b * k), c.clone())))
    }

    /// Inverse of a unit (single term); `None` otherwise.
    pub fn unit_inverse(&self) -> Option<Self> {
        let ((a, b), c) = self.as_monomial()?;
        Some(Self::monomial(c.recip(), -a, -b))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluation at rational values of `Q` and `T`.
    pub fn eval(&self, qv: &BigRational, tv: &BigRational) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (&(a, b), c) in &self.terms {
            acc += c * rat_pow(qv, a)? * rat_pow(tv, b)?;
        }
        Some(acc)
    }

    /// Least common multiple of coefficient denominators.
    pub(crate) fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

fn rat_pow(x: &BigRational, e: i32) -> Option<BigRational> {
    if e < 0 && x.is_zero() {
        return None;
    }
    let base = if e < 0 { x.recip() } else { x.clone() };
    Some(num_traits::pow(base, e.unsigned_abs() as usize))
}

impl fmt::Debug for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::format_laurent(self))
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::format_laurent(self))
    }
}

impl AddAssign<&HalfLaurent> for HalfLaurent {
    fn add_assign(&mut self, rhs: &HalfLaurent) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&HalfLaurent> for HalfLaurent {
    fn sub_assign(&mut self, rhs: &HalfLaurent) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Add for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        HalfLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: &HalfLaurent) -> HalfLaurent {
        if self.is_zero() || rhs.is_zero() {
            return HalfLaurent::zero();
        }
        let mut out = HalfLaurent::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for HalfLaurent {
            type Output = HalfLaurent;
            fn $m(self, rhs: HalfLaurent) -> HalfLaurent {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        -&self
    }
}
