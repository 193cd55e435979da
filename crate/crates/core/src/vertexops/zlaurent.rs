use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeffs::Ring;
use crate::error::{Error, Result};

/// Laurent polynomial in contour variables `z_1..z_n` with coefficients in `V`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZLaurent<V: Ring> {
    n: usize,
    terms: BTreeMap<Vec<i32>, V>,
}

impl<V: Ring> ZLaurent<V> {
    pub fn zero(n: usize) -> Self {
        ZLaurent { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n], V::one())
    }

    pub fn monomial(exps: Vec<i32>, c: V) -> Self {
        let mut z = Self::zero(exps.len());
        z.add_term(exps, c);
        z
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, exps: Vec<i32>, c: V) {
        assert_eq!(exps.len(), self.n, "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &V)> {
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

    pub fn coeff(&self, exps: &[i32]) -> V {
        self.terms.get(exps).cloned().unwrap_or_else(V::zero)
    }

    /// Total degree, if every term has the same one.
    pub fn total_degree(&self) -> Result<Option<i32>> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<i32>());
        let Some(d) = degs.next() else {
            return Ok(None);
        };
        if degs.any(|x| x != d) {
            return Err(Error::Argument("Laurent polynomial in z is not homogeneous".into()));
        }
        Ok(Some(d))
    }

    pub fn scale(&self, c: &V) -> Self {
        let mut out = Self::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.mul(c));
        }
        out
    }

    /// Substitutes `z_i -> z_{sigma(i)}`.
    pub fn permuted(&self, sigma: &[usize]) -> Self {
        assert_eq!(sigma.len(), self.n, "permutation length");
        let mut out = Self::zero(self.n);
        for (e, v) in &self.terms {
            let mut f = vec![0; self.n];
            for (i, &x) in e.iter().enumerate() {
                f[sigma[i]] = x;
            }
            out.terms.insert(f, v.clone());
        }
        out
    }

    /// Multiplies by `z^shift`.
    pub fn shifted(&self, shift: &[i32]) -> Self {
        let terms = self.terms.iter().map(|(e, v)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), v.clone())).collect();
        ZLaurent { n: self.n, terms }
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs<W: Ring>(&self, f: impl Fn(&V) -> W) -> ZLaurent<W> {
        let mut out = ZLaurent::zero(self.n);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), f(v));
        }
        out
    }

    /// Coefficient of `z_1^0 ... z_n^0`.
    pub fn constant_term(&self) -> V {
        self.coeff(&vec![0; self.n])
    }
}

impl<V: Ring> Mul for &ZLaurent<V> {
    type Output = ZLaurent<V>;
    fn mul(self, o: &ZLaurent<V>) -> ZLaurent<V> {
        assert_eq!(self.n, o.n, "variable counts differ");
        let mut out = ZLaurent::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.mul(c2));
            }
        }
        out
    }
}

impl<V: Ring> Add for &ZLaurent<V> {
    type Output = ZLaurent<V>;
    fn add(self, o: &ZLaurent<V>) -> ZLaurent<V> {
        assert_eq!(self.n, o.n, "variable counts differ");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<V: Ring> Neg for &ZLaurent<V> {
    type Output = ZLaurent<V>;
    fn neg(self) -> ZLaurent<V> {
        ZLaurent { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect() }
    }
}

impl<V: Ring> Sub for &ZLaurent<V> {
    type Output = ZLaurent<V>;
    fn sub(self, o: &ZLaurent<V>) -> ZLaurent<V> {
        self + &(-o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::HalfLaurent;

    #[test]
    fn product_and_constant_term() {
        let x = ZLaurent::monomial(vec![1, -1], HalfLaurent::q_pow(1));
        let y = ZLaurent::monomial(vec![-1, 1], HalfLaurent::t_pow(1));
        let p = &x * &y;
        assert_eq!(p.constant_term(), HalfLaurent::qt_pow(2, 2));
        assert_eq!(p.total_degree().unwrap(), Some(0));
        let mut s = x.clone();
        s.add_term(vec![1, 0], HalfLaurent::one());
        assert!(s.total_degree().is_err());
    }
}
