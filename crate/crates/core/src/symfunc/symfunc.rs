use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::partition::Partition;
use crate::coeffs::{parse_coeff, Coeff, HalfLaurent, Ring};
use crate::error::{Error, Result};

/// Element of the ring of symmetric functions, in the power-sum basis:
/// a finite sum of `c_lambda * p_lambda`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SymFunc<R: Ring = Coeff> {
    terms: BTreeMap<Partition, R>,
}

impl<R: Ring> Default for SymFunc<R> {
    fn default() -> Self {
        SymFunc { terms: BTreeMap::new() }
    }
}

impl<R: Ring> SymFunc<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Partition::empty(), R::one())
    }

    /// `c * p_lambda`.
    pub fn monomial(lambda: Partition, c: R) -> Self {
        let mut f = Self::zero();
        f.add_term(lambda, c);
        f
    }

    pub fn p_lambda(lambda: Partition) -> Self {
        Self::monomial(lambda, R::one())
    }

    /// The power sum `p_k`.
    pub fn p(k: usize) -> Self {
        Self::p_lambda(Partition::row(k))
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, R)>>(it: I) -> Self {
        let mut f = Self::zero();
        for (l, c) in it {
            f.add_term(l, c);
        }
        f
    }

    pub fn add_term(&mut self, lambda: Partition, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &R)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Partition, R)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, lambda: &Partition) -> R {
        self.terms.get(lambda).cloned().unwrap_or_else(R::zero)
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

    /// Largest size of a partition with nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::size).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut sizes = self.terms.keys().map(Partition::size);
        match sizes.next() {
            None => true,
            Some(d) => sizes.all(|s| s == d),
        }
    }

    /// Degree-`d` component.
    pub fn homogeneous(&self, d: usize) -> Self {
        SymFunc {
            terms: self.terms.iter().filter(|(l, _)| l.size() == d).map(|(l, c)| (l.clone(), c.clone())).collect(),
        }
    }

    /// Sizes with a nonzero component, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(Partition::size).collect();
        d.dedup();
        d
    }

    pub fn scale(&self, s: &R) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(l, c)| (l.clone(), c.mul(s))))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> SymFunc<S> {
        SymFunc::from_terms(self.terms.iter().map(|(l, c)| (l.clone(), f(c))))
    }

    /// Multiplication by `p_mu`.
    pub fn mul_p(&self, mu: &Partition) -> Self {
        SymFunc { terms: self.terms.iter().map(|(l, c)| (l.union(mu), c.clone())).collect() }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, other: &SymFunc<R>, s: &R) {
        if s.is_zero() {
            return;
        }
        for (l, c) in &other.terms {
            self.add_term(l.clone(), c.mul(s));
        }
    }
}

impl<R: Ring> Ring for SymFunc<R> {
    fn zero() -> Self {
        SymFunc::zero()
    }
    fn one() -> Self {
        SymFunc::one()
    }
    fn is_zero(&self) -> bool {
        SymFunc::is_zero(self)
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

impl SymFunc<HalfLaurent> {
    pub fn to_coeff(&self) -> SymFunc<Coeff> {
        self.map(|c| Coeff::from(c.clone()))
    }
}

impl SymFunc<BigRational> {
    pub fn to_coeff(&self) -> SymFunc<Coeff> {
        self.map(|c| Coeff::from(c.clone()))
    }
}

impl<R: Ring> Add for &SymFunc<R> {
    type Output = SymFunc<R>;
    fn add(self, o: &SymFunc<R>) -> SymFunc<R> {
        let mut out = self.clone();
        for (l, c) in &o.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }
}

impl<R: Ring> Sub for &SymFunc<R> {
    type Output = SymFunc<R>;
    fn sub(self, o: &SymFunc<R>) -> SymFunc<R> {
        let mut out = self.clone();
        for (l, c) in &o.terms {
            out.add_term(l.clone(), c.neg());
        }
        out
    }
}

impl<R: Ring> Neg for &SymFunc<R> {
    type Output = SymFunc<R>;
    fn neg(self) -> SymFunc<R> {
        SymFunc { terms: self.terms.iter().map(|(l, c)| (l.clone(), c.neg())).collect() }
    }
}

impl<R: Ring> Mul for &SymFunc<R> {
    type Output = SymFunc<R>;
    fn mul(self, o: &SymFunc<R>) -> SymFunc<R> {
        let mut out = SymFunc::zero();
        for (l1, c1) in &self.terms {
            for (l2, c2) in &o.terms {
                out.add_term(l1.union(l2), c1.mul(c2));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<R: Ring> $tr for SymFunc<R> {
            type Output = SymFunc<R>;
            fn $m(self, rhs: SymFunc<R>) -> SymFunc<R> {
                $tr::$m(&self, &rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn format_p(l: &Partition) -> String {
    if l.is_empty() {
        "1".into()
    } else {
        format!("p_{{{l}}}")
    }
}

impl<R: Ring> fmt::Debug for SymFunc<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})*{}", format_p(l))?;
        }
        Ok(())
    }
}

/// Text form: `0`, or terms `(coeff)*p_{(parts)}` joined by ` + `; a unit
/// coefficient is omitted and `p_{()}` is written `1`.
impl fmt::Display for SymFunc<Coeff> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{}", format_p(l))?;
            } else if l.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{}", format_p(l))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    partition: Partition,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct JsonSymFunc {
    basis: String,
    terms: Vec<JsonTerm>,
}

impl SymFunc<Coeff> {
    pub fn to_json_value(&self) -> serde_json::Value {
        let j = JsonSymFunc {
            basis: "p".into(),
            terms: self.terms.iter().map(|(l, c)| JsonTerm { partition: l.clone(), coeff: c.to_string() }).collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let j: JsonSymFunc = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if j.basis != "p" {
            return Err(Error::Parse(format!("unsupported basis {:?}; only \"p\" is accepted", j.basis)));
        }
        let mut out = SymFunc::zero();
        for t in j.terms {
            out.add_term(t.partition, parse_coeff(&t.coeff)?);
        }
        Ok(out)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_value(&v)
    }

    /// Parses the [`Display`](fmt::Display) form; also accepts `p_k` for
    /// `p_{(k)}` and JSON input.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return Self::from_json(s);
        }
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = SymFunc::zero();
        for term in split_top_level(s) {
            let term = term.trim();
            let (c, p) = match term.rfind("*p_") {
                Some(i) if term.starts_with('(') => (parse_coeff(&term[..i])?, &term[i + 1..]),
                _ if term.starts_with('(') => (parse_coeff(term)?, "1"),
                _ => (Coeff::one(), term),
            };
            out.add_term(parse_p(p)?, c);
        }
        Ok(out)
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        match b[i] {
            b'(' | b'{' => depth += 1,
            b')' | b'}' => depth -= 1,
            b'+' if depth == 0 && i > 0 && b[i - 1] == b' ' => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    out.push(&s[start..]);
    out
}

fn parse_p(s: &str) -> Result<Partition> {
    let s = s.trim();
    if s == "1" {
        return Ok(Partition::empty());
    }
    let body = s.strip_prefix("p_").ok_or_else(|| Error::Parse(format!("expected p_..., got {s:?}")))?;
    let inner = match body.strip_prefix("{(").and_then(|b| b.strip_suffix(")}")) {
        Some("") => return Ok(Partition::empty()),
        Some(b) => b,
        None if body.is_empty() => return Err(Error::Parse(format!("missing partition in {s:?}"))),
        None => body,
    };
    let parts: std::result::Result<Vec<usize>, _> = inner.split(',').map(|x| x.trim().parse::<usize>()).collect();
    Partition::new(parts.map_err(|e| Error::Parse(format!("bad partition {s:?}: {e}")))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn product_merges_parts() {
        let f = &SymFunc::<Coeff>::p(1) * &SymFunc::p(1);
        assert_eq!(f, SymFunc::p_lambda(part(&[1, 1])));
        assert_eq!(f.to_string(), "p_{(1,1)}");
    }

    #[test]
    fn text_and_json_roundtrip() {
        let f = &(&SymFunc::<Coeff>::one() + &SymFunc::monomial(part(&[2, 1]), Coeff::beta(1).unwrap()))
            - &SymFunc::p(3);
        assert_eq!(SymFunc::parse(&f.to_string()).unwrap(), f);
        assert_eq!(SymFunc::from_json(&f.to_json()).unwrap(), f);
        assert_eq!(SymFunc::parse("p_1").unwrap(), SymFunc::p(1));
        assert_eq!(SymFunc::parse("1").unwrap(), SymFunc::one());
        assert!(SymFunc::parse("p_{(1,2)}").is_err());
        let j = f.to_json_value();
        assert_eq!(j["basis"], "p");
        assert_eq!(j["terms"][1]["partition"], serde_json::json!([3]));
    }

    #[test]
    fn homogeneous_parts() {
        let f = &SymFunc::<Coeff>::p(2) + &SymFunc::p(1);
        assert_eq!(f.degree(), Some(2));
        assert!(!f.is_homogeneous());
        assert_eq!(f.homogeneous(1), SymFunc::p(1));
        assert_eq!(f.degrees(), vec![1, 2]);
    }
}
