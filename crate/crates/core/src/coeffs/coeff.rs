use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::HalfLaurent;
use super::zpoly::{BiPoly, UPoly};
use crate::error::{Error, Result};

/// Element of `Q(q^{1/2}, t^{1/2})`, kept in a canonical form so that
/// structural equality is mathematical equality.
///
/// Canonical form: `den` is a polynomial in `Q, T` not divisible by `Q` or
/// `T`, with coprime integer coefficients and positive leading coefficient
/// (lexicographic, `Q > T`); `num` is a Laurent polynomial with rational
/// coefficients, coprime to `den`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coeff {
    num: HalfLaurent,
    den: HalfLaurent,
}

impl Default for Coeff {
    fn default() -> Self {
        Coeff::zero()
    }
}

impl From<HalfLaurent> for Coeff {
    fn from(num: HalfLaurent) -> Self {
        Coeff { num, den: HalfLaurent::one() }
    }
}

impl From<i64> for Coeff {
    fn from(c: i64) -> Self {
        HalfLaurent::from_int(c).into()
    }
}

impl From<BigRational> for Coeff {
    fn from(c: BigRational) -> Self {
        HalfLaurent::constant(c).into()
    }
}

fn to_bipoly(p: &HalfLaurent) -> BiPoly {
    // Caller guarantees non-negative exponents and integer coefficients.
    let (ma, mb) = p.max_exponents().unwrap_or((0, 0));
    let mut rows = vec![vec![BigInt::zero(); mb as usize + 1]; ma as usize + 1];
    for (&(a, b), c) in p.terms() {
        debug_assert!(c.is_integer());
        rows[a as usize][b as usize] = c.to_integer();
    }
    BiPoly::new(rows.into_iter().map(UPoly::new).collect())
}

pub(crate) fn from_bipoly(p: &BiPoly) -> HalfLaurent {
    let mut out = HalfLaurent::zero();
    for (a, row) in p.0.iter().enumerate() {
        for (b, c) in row.0.iter().enumerate() {
            out.add_term((a as i32, b as i32), BigRational::from_integer(c.clone()));
        }
    }
    out
}

/// Rescales a family of Laurent polynomials by one common monomial and
/// integer so that all become integer polynomials.
pub(crate) fn common_integer_form(items: &[&HalfLaurent]) -> Vec<BiPoly> {
    let nonzero = || items.iter().filter(|p| !p.is_zero());
    let a = nonzero().map(|p| p.min_exponents().expect("nonzero").0).min().unwrap_or(0);
    let b = nonzero().map(|p| p.min_exponents().expect("nonzero").1).min().unwrap_or(0);
    let l = nonzero().fold(BigInt::one(), |acc, p| num_integer::Integer::lcm(&acc, &p.denominator_lcm()));
    let l = BigRational::from_integer(l);
    items.iter().map(|p| if p.is_zero() { BiPoly::default() } else { to_bipoly(&p.shift(-a, -b).scale(&l)) }).collect()
}

/// Splits `p` as `r * Q^a T^b * P` with `P` an integer polynomial not
/// divisible by `Q` or `T` and `r` rational.
fn integer_part(p: &HalfLaurent) -> (BigRational, (i32, i32), BiPoly) {
    let (a, b) = p.min_exponents().expect("nonzero");
    let l = p.denominator_lcm();
    let scaled = p.shift(-a, -b).scale(&BigRational::from_integer(l.clone()));
    (BigRational::new(BigInt::one(), l), (a, b), to_bipoly(&scaled))
}

impl Coeff {
    pub fn zero() -> Self {
        HalfLaurent::zero().into()
    }

    pub fn one() -> Self {
        HalfLaurent::one().into()
    }

    /// `q = Q^2`.
    pub fn q() -> Self {
        HalfLaurent::q_pow(1).into()
    }

    /// `t = T^2`.
    pub fn t() -> Self {
        HalfLaurent::t_pow(1).into()
    }

    /// `Q^a T^b`.
    pub fn qt_pow(a: i32, b: i32) -> Self {
        HalfLaurent::qt_pow(a, b).into()
    }

    /// `(qt)^{k/2}`.
    pub fn sqrt_qt_pow(k: i32) -> Self {
        HalfLaurent::sqrt_qt_pow(k).into()
    }

    pub fn num(&self) -> &HalfLaurent {
        &self.num
    }

    pub fn den(&self) -> &HalfLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1, i.e. the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&HalfLaurent> {
        self.is_laurent().then_some(&self.num)
    }

    /// Builds `num / den` in canonical form.
    pub fn from_fraction(num: HalfLaurent, den: HalfLaurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: HalfLaurent, den: HalfLaurent) -> Self {
        if num.is_zero() {
            return Coeff::zero();
        }
        if let Some(((a, b), c)) = den.as_monomial() {
            let inv = c.recip();
            return Coeff { num: num.shift(-a, -b).scale(&inv), den: HalfLaurent::one() };
        }
        let (rn, (na, nb), pn) = integer_part(&num);
        let (rd, (da, db), pd) = integer_part(&den);
        let g = pn.gcd(&pd);
        let (pn, pd) = if g.is_constant() {
            (pn, pd)
        } else {
            (pn.exact_div(&g).expect("gcd divides"), pd.exact_div(&g).expect("gcd divides"))
        };
        let mut scale = rn / rd;
        let mut pd = pd;
        if pd.is_constant() {
            let c = pd.0[0].0[0].clone();
            scale /= BigRational::from_integer(c);
            pd = BiPoly::new(vec![UPoly::constant(BigInt::one())]);
        } else {
            let mut c = pd.int_content();
            if pd.lead().lead().is_negative() {
                c = -c;
            }
            if !c.is_one() {
                pd = BiPoly(pd.0.iter().map(|u| u.div_int(&c)).collect());
                scale /= BigRational::from_integer(c);
            }
        }
        let num = from_bipoly(&pn).shift(na - da, nb - db).scale(&scale);
        Coeff { num, den: from_bipoly(&pd) }
    }

    /// `(q^{k/2} - q^{-k/2})(t^{k/2} - t^{-k/2})`.
    pub fn beta(k: i64) -> Result<Self> {
        if k < 1 {
            return Err(Error::Argument(format!("beta(k) requires k >= 1, got {k}")));
        }
        Ok(Self::beta_laurent(k as i32).into())
    }

    pub(crate) fn beta_laurent(k: i32) -> HalfLaurent {
        let a = &HalfLaurent::qt_pow(k, 0) - &HalfLaurent::qt_pow(-k, 0);
        let b = &HalfLaurent::qt_pow(0, k) - &HalfLaurent::qt_pow(0, -k);
        &a * &b
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Coeff) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &o.inverse()?)
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Coeff::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Applies `Q -> Q^k`, `T -> T^k`; `k = -1` is the inversion
    /// `q, t -> q^{-1}, t^{-1}`.
    pub fn power_shift(&self, k: i32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Argument("power_shift requires k != 0".into()));
        }
        Ok(Self::normalize(self.num.power_shift(k), self.den.power_shift(k)))
    }

    /// Exact evaluation at `Q = qv`, `T = tv`.
    pub fn substitute(&self, qv: &BigRational, tv: &BigRational) -> Result<BigRational> {
        let at = || format!("Q={qv}, T={tv}");
        let d = self.den.eval(qv, tv).ok_or_else(|| Error::Pole(at()))?;
        if d.is_zero() {
            return Err(Error::Pole(at()));
        }
        let n = self.num.eval(qv, tv).ok_or_else(|| Error::Pole(at()))?;
        Ok(n / d)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Coeff::zero();
        }
        Coeff { num: self.num.scale(s), den: self.den.clone() }
    }

    pub fn mul_laurent(&self, p: &HalfLaurent) -> Self {
        if self.den.is_one() {
            return (&self.num * p).into();
        }
        if let Some(((a, b), c)) = p.as_monomial() {
            return Coeff { num: self.num.shift(a, b).scale(c), den: self.den.clone() };
        }
        Self::normalize(&self.num * p, self.den.clone())
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::format_coeff(self))
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return (&self.num + &o.num).into();
        }
        // a + b/d with gcd(b, d) = 1 stays reduced.
        if self.den.is_one() || o.den.is_one() {
            let (l, r) = if self.den.is_one() { (self, o) } else { (o, self) };
            let num = &(&l.num * &r.den) + &r.num;
            if num.is_zero() {
                return Coeff::zero();
            }
            return Coeff { num, den: r.den.clone() };
        }
        if self.den == o.den {
            return Coeff::normalize(&self.num + &o.num, self.den.clone());
        }
        Coeff::normalize(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, o: &Coeff) -> Coeff {
        self + &(-o)
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        if self.is_zero() || o.is_zero() {
            return Coeff::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return (&self.num * &o.num).into();
        }
        if self.den.is_one() {
            return o.mul_laurent(&self.num);
        }
        if o.den.is_one() {
            return self.mul_laurent(&o.num);
        }
        Coeff::normalize(&self.num * &o.num, &self.den * &o.den)
    }
}

/// Panics on division by zero; use [`Coeff::checked_div`] otherwise.
impl Div for &Coeff {
    type Output = Coeff;
    fn div(self, o: &Coeff) -> Coeff {
        self.checked_div(o).expect("division by zero Coeff")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Coeff {
            type Output = Coeff;
            fn $m(self, rhs: Coeff) -> Coeff {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

impl std::iter::Sum for Coeff {
    fn sum<I: Iterator<Item = Coeff>>(iter: I) -> Coeff {
        iter.fold(Coeff::zero(), |a, b| &a + &b)
    }
}
