use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coeffs::{format_coeff, format_laurent, parse_coeff, parse_laurent, Coeff, HalfLaurent};
use crate::error::{Error, Result};
use crate::vertexops::ZLaurent;

/// Laurent polynomial in `z_1..z_n` with coefficients in `Q[Q^{±1}, T^{±1}]`.
pub type ZPoly = ZLaurent<HalfLaurent>;

#[derive(Clone, Debug, PartialEq)]
pub enum Denominator {
    /// `prod_{i != j} (z_i - q z_j)(z_i - t z_j)`.
    Canonical,
    /// An explicit nonzero polynomial.
    General(ZPoly),
}

/// `scalar * num / den` in `n` variables.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "ShuffleJson", try_from = "ShuffleJson")]
pub struct ShuffleElem {
    n: usize,
    scalar: Coeff,
    num: ZPoly,
    den: Denominator,
}

/// `z_i - c z_j` in `n` variables.
pub(crate) fn linear(n: usize, i: usize, j: usize, c: HalfLaurent) -> ZPoly {
    let mut a = vec![0; n];
    a[i] = 1;
    let mut b = vec![0; n];
    b[j] = 1;
    let mut p = ZPoly::monomial(a, HalfLaurent::one());
    p.add_term(b, -&c);
    p
}

pub fn canonical_denominator(n: usize) -> ZPoly {
    let mut out = ZPoly::one(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out = &out * &linear(n, i, j, HalfLaurent::q_pow(1));
                out = &out * &linear(n, i, j, HalfLaurent::t_pow(1));
            }
        }
    }
    out
}

impl ShuffleElem {
    /// The unit, with no variables.
    pub fn unit() -> Self {
        ShuffleElem { n: 0, scalar: Coeff::one(), num: ZPoly::one(0), den: Denominator::Canonical }
    }

    pub fn new(n: usize, scalar: Coeff, num: ZPoly, den: Denominator) -> Result<Self> {
        if num.n() != n {
            return Err(Error::Argument(format!("numerator has {} variables, expected {n}", num.n())));
        }
        if let Denominator::General(d) = &den {
            if d.n() != n || d.is_zero() {
                return Err(Error::Argument("denominator must be a nonzero polynomial in the same variables".into()));
            }
        }
        Ok(ShuffleElem { n, scalar, num, den })
    }

    /// `num` over the canonical denominator.
    pub fn canonical(n: usize, scalar: Coeff, num: ZPoly) -> Result<Self> {
        Self::new(n, scalar, num, Denominator::Canonical)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn scalar(&self) -> &Coeff {
        &self.scalar
    }

    pub fn num(&self) -> &ZPoly {
        &self.num
    }

    pub fn den(&self) -> &Denominator {
        &self.den
    }

    pub fn is_canonical(&self) -> bool {
        self.den == Denominator::Canonical
    }

    pub fn den_poly(&self) -> ZPoly {
        match &self.den {
            Denominator::Canonical => canonical_denominator(self.n),
            Denominator::General(d) => d.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero() || self.scalar.is_zero()
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        ShuffleElem { scalar: &self.scalar * c, ..self.clone() }
    }

    /// Numerator with the scalar's numerator folded in, and the scalar's
    /// denominator.
    fn split_scalar(&self) -> (ZPoly, HalfLaurent) {
        (self.num.scale(self.scalar.num()), self.scalar.den().clone())
    }

    /// Invariance of numerator and denominator under adjacent transpositions.
    pub fn is_symmetric(&self) -> bool {
        let sym = |p: &ZPoly| {
            (0..self.n.saturating_sub(1)).all(|i| {
                let mut sigma: Vec<usize> = (0..self.n).collect();
                sigma.swap(i, i + 1);
                &p.permuted(&sigma) == p
            })
        };
        sym(&self.num)
            && match &self.den {
                Denominator::Canonical => true,
                Denominator::General(d) => sym(d),
            }
    }

    /// Sum of two elements in the same number of variables.
    pub fn try_add(&self, o: &Self) -> Result<Self> {
        if self.n != o.n {
            return Err(Error::Argument(format!("cannot add elements in {} and {} variables", self.n, o.n)));
        }
        if self.scalar == o.scalar && self.den == o.den {
            return Ok(ShuffleElem { num: &self.num + &o.num, ..self.clone() });
        }
        let (na, da) = self.split_scalar();
        let (nb, db) = o.split_scalar();
        let scalar = Coeff::from_fraction(HalfLaurent::one(), &da * &db)?;
        if self.den == o.den {
            let num = &na.scale(&db) + &nb.scale(&da);
            return Ok(ShuffleElem { n: self.n, scalar, num, den: self.den.clone() });
        }
        let (pa, pb) = (self.den_poly(), o.den_poly());
        let num = &(&na * &pb).scale(&db) + &(&nb * &pa).scale(&da);
        Ok(ShuffleElem { n: self.n, scalar, num, den: Denominator::General(&pa * &pb) })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.scale(&-&Coeff::one()))
    }
}

/// Exact equality of rational functions by cross-multiplication.
pub fn rat_eq(a: &ShuffleElem, b: &ShuffleElem) -> bool {
    if a.n != b.n {
        return false;
    }
    let (na, da) = a.split_scalar();
    let (nb, db) = b.split_scalar();
    if a.den == b.den {
        return na.scale(&db) == nb.scale(&da);
    }
    (&na * &b.den_poly()).scale(&db) == (&nb * &a.den_poly()).scale(&da)
}

fn format_poly(p: &ZPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = p
        .terms()
        .map(|(e, c)| {
            let e: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            format!("[{}]:{}", e.join(","), format_laurent(c))
        })
        .collect();
    terms.join(" | ")
}

fn parse_poly(n: usize, s: &str) -> Result<ZPoly> {
    let s = s.trim();
    let mut out = ZPoly::zero(n);
    if s == "0" {
        return Ok(out);
    }
    for term in s.split('|') {
        let term = term.trim();
        let (exps, coeff) = term
            .strip_prefix('[')
            .and_then(|r| r.split_once("]:"))
            .ok_or_else(|| Error::Parse(format!("malformed term {term:?}")))?;
        let exps: Vec<i32> = if exps.trim().is_empty() {
            Vec::new()
        } else {
            exps.split(',')
                .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad exponent {x:?}"))))
                .collect::<Result<_>>()?
        };
        if exps.len() != n {
            return Err(Error::Parse(format!("term {term:?} has {} exponents, expected {n}", exps.len())));
        }
        out.add_term(exps, parse_laurent(coeff)?);
    }
    Ok(out)
}

/// `n=2; scalar=(1)/(1); num=[1,0]:1 | [0,1]:-1*Q^2*T^0; den=canonical`
impl fmt::Display for ShuffleElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = match &self.den {
            Denominator::Canonical => "canonical".to_string(),
            Denominator::General(d) => format_poly(d),
        };
        write!(f, "n={}; scalar={}; num={}; den={}", self.n, format_coeff(&self.scalar), format_poly(&self.num), den)
    }
}

impl FromStr for ShuffleElem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut fields = s.split(';').map(str::trim);
        let mut field = |key: &str| {
            fields
                .next()
                .and_then(|x| x.strip_prefix(key))
                .and_then(|x| x.strip_prefix('='))
                .ok_or_else(|| Error::Parse(format!("expected field {key:?}")))
        };
        let n: usize = field("n")?.trim().parse().map_err(|_| Error::Parse("bad variable count".into()))?;
        let scalar = parse_coeff(field("scalar")?)?;
        let num = parse_poly(n, field("num")?)?;
        let den = match field("den")?.trim() {
            "canonical" => Denominator::Canonical,
            d => Denominator::General(parse_poly(n, d)?),
        };
        ShuffleElem::new(n, scalar, num, den)
    }
}

#[derive(Serialize, Deserialize)]
struct ShuffleJson {
    n: usize,
    scalar: String,
    num: String,
    den: String,
}

impl From<ShuffleElem> for ShuffleJson {
    fn from(e: ShuffleElem) -> Self {
        let den = match &e.den {
            Denominator::Canonical => "canonical".into(),
            Denominator::General(d) => format_poly(d),
        };
        ShuffleJson { n: e.n, scalar: format_coeff(&e.scalar), num: format_poly(&e.num), den }
    }
}

impl TryFrom<ShuffleJson> for ShuffleElem {
    type Error = Error;
    fn try_from(j: ShuffleJson) -> Result<Self> {
        let den = match j.den.trim() {
            "canonical" => Denominator::Canonical,
            d => Denominator::General(parse_poly(j.n, d)?),
        };
        ShuffleElem::new(j.n, parse_coeff(&j.scalar)?, parse_poly(j.n, &j.num)?, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ShuffleElem {
        let mut num = ZPoly::monomial(vec![1, 0], HalfLaurent::q_pow(1));
        num.add_term(vec![0, 1], HalfLaurent::q_pow(1));
        ShuffleElem::canonical(2, Coeff::beta(1).unwrap(), num).unwrap()
    }

    #[test]
    fn text_and_json_round_trip() {
        let e = sample();
        let txt = e.to_string();
        assert_eq!(txt.parse::<ShuffleElem>().unwrap(), e);
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(serde_json::from_str::<ShuffleElem>(&json).unwrap(), e);
        assert_eq!(ShuffleElem::unit().to_string().parse::<ShuffleElem>().unwrap(), ShuffleElem::unit());
    }

    #[test]
    fn rat_eq_sees_through_representation() {
        let e = sample();
        // Same function with the canonical denominator written out and the
        // numerator doubled against a doubled denominator.
        let two = HalfLaurent::from_int(2);
        let general = ShuffleElem::new(
            2,
            e.scalar().clone(),
            e.num().scale(&two),
            Denominator::General(canonical_denominator(2).scale(&two)),
        )
        .unwrap();
        assert!(rat_eq(&e, &general));
        assert!(!rat_eq(&e, &e.scale(&Coeff::q())));
        let sum = e.try_add(&general).unwrap();
        assert!(rat_eq(&sum, &e.scale(&Coeff::from(2))));
        assert!(e.try_sub(&e).unwrap().is_zero());
    }

    #[test]
    fn symmetry_is_detected() {
        assert!(sample().is_symmetric());
        let lopsided = ShuffleElem::canonical(2, Coeff::one(), ZPoly::monomial(vec![1, 0], HalfLaurent::one())).unwrap();
        assert!(!lopsided.is_symmetric());
    }
}
