//! Dense integer polynomials in one and two variables, used only to cancel
//! common factors when canonicalizing [`Coeff`](super::Coeff).
//!
//! A [`UPoly`] is a polynomial in `T` over `Z`; a [`BiPoly`] is a polynomial
//! in `Q` whose coefficients are [`UPoly`]s. GCDs first try the heuristic
//! evaluation method (gcd of integer images, xi-adic reconstruction, trial
//! division) and fall back to the primitive polynomial remainder sequence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficient of `T^i` at index `i`; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly(pub Vec<BigInt>);

/// Coefficient (in `Z[T]`) of `Q^i` at index `i`; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly(pub Vec<UPoly>);

impl UPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn constant(c: BigInt) -> Self {
        UPoly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> &BigInt {
        self.0.last().expect("lead of zero polynomial")
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn div_int(&self, d: &BigInt) -> Self {
        UPoly(self.0.iter().map(|c| c / d).collect())
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return UPoly::default();
        }
        UPoly(self.0.iter().map(|c| c * s).collect())
    }

    pub fn neg(&self) -> Self {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in o.0.iter().enumerate() {
            out[i] += c;
        }
        UPoly::new(out)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    fn shifted(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.0.iter().cloned());
        UPoly(c)
    }

    /// Remainder of `lc(b)^k * self` modulo `b`, for some `k >= 0`.
    fn lazy_prem(&self, b: &Self) -> Self {
        let db = b.degree().expect("division by zero polynomial");
        let lb = b.lead().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead().clone();
            let g = lr.gcd(&lb);
            let (ml, mr) = (&lb / &g, &lr / &g);
            r = r.scale(&ml).sub(&b.shifted(dr - db).scale(&mr));
        }
        r
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(UPoly::default());
        }
        let mut r = self.clone();
        let ds = r.degree()?;
        if ds < dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); ds - dd + 1];
        let ld = d.lead();
        while let Some(dr) = r.degree() {
            if dr < dd {
                return None;
            }
            let (quo, rem) = r.lead().div_rem(ld);
            if !rem.is_zero() {
                return None;
            }
            r = r.sub(&d.shifted(dr - dd).scale(&quo));
            q[dr - dd] = quo;
        }
        Some(UPoly::new(q))
    }

    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        self.div_int(&c)
    }

    /// GCD with positive leading coefficient.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.primitive().scale(&o.content());
        }
        if o.is_zero() {
            return self.primitive().scale(&self.content());
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.degree() == Some(0) || b.degree() == Some(0) {
            return UPoly::constant(c);
        }
        if let Some(g) = a.heu_gcd(&b) {
            return g.scale(&c);
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.degree() == Some(0) {
                return UPoly::constant(c);
            }
            let r = a.lazy_prem(&b);
            if r.is_zero() {
                return b.scale(&c);
            }
            a = b;
            b = r.primitive();
        }
    }
}

impl BiPoly {
    pub fn new(mut c: Vec<UPoly>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        BiPoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> &UPoly {
        self.0.last().expect("lead of zero polynomial")
    }

    /// True if constant in both variables.
    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1 && self.0.first().is_none_or(|u| u.0.len() <= 1)
    }

    pub fn int_content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |acc, u| acc.gcd(&u.content()))
    }

    /// Content with respect to `Q`, an element of `Z[T]`.
    pub fn content(&self) -> UPoly {
        let mut acc = UPoly::default();
        for u in &self.0 {
            acc = acc.gcd(u);
            if acc.degree() == Some(0) {
                // Only the integer content can still shrink.
                return UPoly::constant(self.int_content());
            }
        }
        acc
    }

    pub fn scale_u(&self, s: &UPoly) -> Self {
        BiPoly::new(self.0.iter().map(|u| u.mul(s)).collect())
    }

    pub fn div_u(&self, s: &UPoly) -> Option<Self> {
        let v: Option<Vec<UPoly>> = self.0.iter().map(|u| u.exact_div(s)).collect();
        Some(BiPoly::new(v?))
    }

    pub fn neg(&self) -> Self {
        BiPoly(self.0.iter().map(|u| u.neg()).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let mut out = vec![UPoly::default(); n];
        for (i, c) in self.0.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        for (i, c) in o.0.iter().enumerate() {
            out[i] = out[i].add(c);
        }
        BiPoly::new(out)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return BiPoly::default();
        }
        let mut out = vec![UPoly::default(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        BiPoly::new(out)
    }

    fn shifted(&self, k: usize) -> Self {
        let mut c = vec![UPoly::default(); k];
        c.extend(self.0.iter().cloned());
        BiPoly(c)
    }

    fn lazy_prem(&self, b: &Self) -> Self {
        let db = b.degree().expect("division by zero polynomial");
        let lb = b.lead().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead().clone();
            let g = lr.gcd(&lb);
            let ml = lb.exact_div(&g).expect("gcd divides");
            let mr = lr.exact_div(&g).expect("gcd divides");
            r = r.scale_u(&ml).sub(&b.shifted(dr - db).scale_u(&mr));
        }
        r
    }

    /// Primitive part with respect to `Q`, leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lead().lead().is_negative() {
            c = c.neg();
        }
        self.div_u(&c).expect("content divides")
    }

    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(BiPoly::default());
        }
        let ds = self.degree()?;
        if ds < dd {
            return None;
        }
        let mut q = vec![UPoly::default(); ds - dd + 1];
        let mut r = self.clone();
        let ld = d.lead();
        while let Some(dr) = r.degree() {
            if dr < dd {
                return None;
            }
            let quo = r.lead().exact_div(ld)?;
            r = r.sub(&d.shifted(dr - dd).scale_u(&quo));
            q[dr - dd] = quo;
        }
        Some(BiPoly::new(q))
    }

    /// GCD, normalized to be primitive over `Z` with positive leading
    /// coefficient.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.normalized();
        }
        if o.is_zero() {
            return self.normalized();
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if let Some(g) = a.heu_gcd(&b) {
            return g.scale_u(&c).normalized();
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        let g = loop {
            if b.degree() == Some(0) {
                break BiPoly::new(vec![UPoly::constant(BigInt::one())]);
            }
            let r = a.lazy_prem(&b);
            if r.is_zero() {
                break b;
            }
            a = b;
            b = r.primitive();
        };
        g.scale_u(&c).normalized()
    }

    fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.int_content();
        if self.lead().lead().is_negative() {
            c = -c;
        }
        BiPoly(self.0.iter().map(|u| u.div_int(&c)).collect())
    }
}

/// Number of evaluation points tried by the heuristic gcd.
const HEU_TRIES: usize = 6;

fn next_xi(xi: &BigInt) -> BigInt {
    xi * BigInt::from(73794) / BigInt::from(27011)
}

/// Symmetric remainder of `v` modulo `xi`.
fn sym_mod(v: &BigInt, xi: &BigInt) -> BigInt {
    let r = v.mod_floor(xi);
    if &r * 2 > *xi {
        r - xi
    } else {
        r
    }
}

/// Digits of `v` in base `xi` with symmetric digits, lowest first.
fn adic_digits(v: &BigInt, xi: &BigInt) -> Vec<BigInt> {
    let mut v = v.clone();
    let mut out = Vec::new();
    while !v.is_zero() {
        let c = sym_mod(&v, xi);
        v = (&v - &c) / xi;
        out.push(c);
    }
    out
}

impl UPoly {
    fn norm(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    fn eval(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Primitive gcd of two primitive polynomials, if the heuristic succeeds.
    fn heu_gcd(&self, o: &Self) -> Option<Self> {
        let mut xi = self.norm().min(o.norm()) * 2 + 29;
        for _ in 0..HEU_TRIES {
            let g = self.eval(&xi).gcd(&o.eval(&xi));
            if !g.is_zero() {
                let cand = UPoly::new(adic_digits(&g, &xi)).primitive();
                if !cand.is_zero() && self.exact_div(&cand).is_some() && o.exact_div(&cand).is_some() {
                    return Some(cand);
                }
            }
            xi = next_xi(&xi);
        }
        None
    }
}

impl BiPoly {
    fn norm(&self) -> BigInt {
        self.0.iter().map(|u| u.norm()).max().unwrap_or_default()
    }

    /// Substitutes `T = x`, giving a polynomial in `Q` stored as a [`UPoly`].
    fn eval_t(&self, x: &BigInt) -> UPoly {
        UPoly::new(self.0.iter().map(|u| u.eval(x)).collect())
    }

    fn from_adic(g: &UPoly, xi: &BigInt) -> Self {
        BiPoly::new(g.0.iter().map(|c| UPoly::new(adic_digits(c, xi))).collect())
    }

    /// Gcd of two polynomials primitive in `Q`, if the heuristic succeeds.
    fn heu_gcd(&self, o: &Self) -> Option<Self> {
        let mut xi = self.norm().min(o.norm()) * 2 + 29;
        for _ in 0..HEU_TRIES {
            let g = self.eval_t(&xi).gcd(&o.eval_t(&xi));
            if !g.is_zero() {
                let cand = BiPoly::from_adic(&g, &xi).normalized();
                if !cand.is_zero() && self.exact_div(&cand).is_some() && o.exact_div(&cand).is_some() {
                    return Some(cand);
                }
            }
            xi = next_xi(&xi);
        }
        None
    }
}
