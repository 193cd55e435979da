//! Constant-term extraction for kernels times normally ordered exponentials.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::kernel::{ContourOrder, HalfPlane, KernelSpec, Normalized, Series, SeriesFactor};
use crate::coeffs::{Coeff, HalfLaurent};
use crate::error::{Error, Result};
use crate::symfunc::{partitions, Partition, SymFunc};

type LSym = SymFunc<HalfLaurent>;

/// Coefficient `b_k` of `p_k z^{-+k}` in the creation exponent.
fn creation_weight(sign: HalfPlane, k: usize) -> HalfLaurent {
    let k = k as i32;
    let beta = Coeff::beta_laurent(k);
    let r = BigRational::new(BigInt::one(), BigInt::from(k));
    match sign {
        HalfPlane::Plus => (&beta * &HalfLaurent::sqrt_qt_pow(-k)).scale(&-r),
        HalfPlane::Minus => beta.scale(&r),
    }
}

/// Degree-`r` part of `exp(sum_k b_k p_k x^k)`.
fn creation_part(sign: HalfPlane, r: usize) -> LSym {
    let mut out = LSym::zero();
    for mu in partitions(r) {
        let mut c = HalfLaurent::one();
        let mut denom = BigInt::one();
        for k in 1..=r {
            let m = mu.multiplicity(k);
            if m == 0 {
                continue;
            }
            c = &c * &creation_weight(sign, k).pow(m as u32);
            denom *= (1..=m).map(BigInt::from).product::<BigInt>();
        }
        out.add_term(mu, c.scale(&BigRational::new(BigInt::one(), denom)));
    }
    out
}

/// All `r` in `N^n` with `sum r = total`.
fn compositions(total: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if n == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, n - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

type SeriesKey = (usize, Vec<SeriesFactor>, usize);
type CreationKey = (HalfPlane, Vec<usize>);

/// Evaluates contour integrals of kernels against the exponentials of either
/// half plane. Intermediate series and creation parts are memoized.
pub struct Evaluator {
    margin: usize,
    series: Mutex<HashMap<SeriesKey, Arc<Series>>>,
    creation: Mutex<HashMap<CreationKey, Arc<LSym>>>,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator::new(2)
    }
}

impl Evaluator {
    pub fn new(margin: usize) -> Self {
        Evaluator { margin, series: Mutex::new(HashMap::new()), creation: Mutex::new(HashMap::new()) }
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    fn series(&self, n: usize, factors: &[SeriesFactor], bound: usize) -> Arc<Series> {
        let key = (n, factors.to_vec(), bound);
        if let Some(s) = self.series.lock().expect("cache lock").get(&key) {
            return s.clone();
        }
        let s = Arc::new(Series::new(n, factors, bound));
        self.series.lock().expect("cache lock").insert(key, s.clone());
        s
    }

    /// `prod_i C_{r_i}` for the creation exponential.
    fn creation_product(&self, sign: HalfPlane, r: &[usize]) -> Arc<LSym> {
        let mut key: Vec<usize> = r.iter().copied().filter(|&x| x > 0).collect();
        key.sort_unstable();
        if let Some(s) = self.creation.lock().expect("cache lock").get(&(sign, key.clone())) {
            return s.clone();
        }
        let prod = key.iter().fold(LSym::one(), |acc, &x| &acc * &creation_part(sign, x));
        let prod = Arc::new(prod);
        self.creation.lock().expect("cache lock").insert((sign, key), prod.clone());
        prod
    }

    /// Applies the annihilation exponential to `p_lambda`: a translation of
    /// each `p_k` by `sum_i z_i^k` (plus) or `-(qt)^{k/2} sum_i z_i^{-k}` (minus).
    fn annihilate(lambda: &Partition, sign: HalfPlane, n: usize) -> BTreeMap<Vec<i32>, LSym> {
        let mut acc: BTreeMap<Vec<i32>, LSym> = BTreeMap::from([(vec![0; n], LSym::one())]);
        for &k in lambda.parts() {
            let (step, c) = match sign {
                HalfPlane::Plus => (k as i32, HalfLaurent::one()),
                HalfPlane::Minus => (-(k as i32), -&HalfLaurent::sqrt_qt_pow(k as i32)),
            };
            let mut next: BTreeMap<Vec<i32>, LSym> = BTreeMap::new();
            for (e, g) in acc {
                next.entry(e.clone()).or_default().add_scaled(&g.mul_p(&Partition::row(k)), &HalfLaurent::one());
                for i in 0..n {
                    let mut e2 = e.clone();
                    e2[i] += step;
                    next.entry(e2).or_default().add_scaled(&g, &c);
                }
            }
            acc = next;
        }
        acc
    }

    /// Constant term of `numerator * series * E(z) p_lambda`, without the
    /// kernel prefactor, at truncation bounds `N` and `N + 1`.
    fn eval_basis(&self, norm: &Normalized, sign: HalfPlane, degree: i32, lambda: &Partition) -> Result<LSym> {
        let n = norm.n;
        let d_in = lambda.size() as i64;
        let d_out = d_in + (sign.sign() * degree) as i64;
        if d_out < 0 {
            return Ok(LSym::zero());
        }
        let bound = (d_in + d_out) as usize + norm.span + self.margin;
        let series = self.series(n, &norm.factors, bound + 1);
        let mut var_at = vec![0usize; n];
        for (v, &p) in norm.positions.iter().enumerate() {
            var_at[p] = v;
        }
        let kappa = |a: &[i32]| -> (HalfLaurent, HalfLaurent) {
            let mut lo = HalfLaurent::zero();
            let mut hi = HalfLaurent::zero();
            for (u, cu) in norm.numerator.terms() {
                // the series must supply z^x with x = -(a + u)
                let x: Vec<i64> = (0..n).map(|v| -(a[v] as i64 + u[v] as i64)).collect();
                if x.iter().sum::<i64>() != 0 {
                    continue;
                }
                let mut f = Vec::with_capacity(n.saturating_sub(1));
                let mut partial = 0i64;
                for &v in var_at.iter().take(n - 1) {
                    partial += x[v];
                    f.push(-partial);
                }
                if f.iter().any(|&y| y < 0) {
                    continue;
                }
                let Some(s) = series.get(&f) else {
                    continue;
                };
                if s.is_zero() {
                    continue;
                }
                let term = cu * s;
                if f.iter().all(|&y| y as usize <= bound) {
                    lo += &term;
                }
                hi += &term;
            }
            (lo, hi)
        };
        let creation_step = -sign.sign();
        let mut acc_lo: BTreeMap<Vec<usize>, LSym> = BTreeMap::new();
        let mut acc_hi: BTreeMap<Vec<usize>, LSym> = BTreeMap::new();
        for (e, g) in Self::annihilate(lambda, sign, n) {
            let removed = sign.sign() as i64 * e.iter().map(|&x| x as i64).sum::<i64>();
            let rest = d_out - (d_in - removed);
            if rest < 0 {
                continue;
            }
            for r in compositions(rest as usize, n) {
                let a: Vec<i32> = e.iter().zip(&r).map(|(&ei, &ri)| ei + creation_step * ri as i32).collect();
                let (lo, hi) = kappa(&a);
                if !lo.is_zero() {
                    acc_lo.entry(r.clone()).or_default().add_scaled(&g, &lo);
                }
                if !hi.is_zero() {
                    acc_hi.entry(r).or_default().add_scaled(&g, &hi);
                }
            }
        }
        let finish = |acc: BTreeMap<Vec<usize>, LSym>| -> LSym {
            let mut out = LSym::zero();
            for (r, g) in acc {
                out = &out + &(&*self.creation_product(sign, &r) * &g);
            }
            out
        };
        let lo = finish(acc_lo);
        let hi = finish(acc_hi);
        if lo != hi {
            return Err(Error::Truncation(format!(
                "result for p_{lambda} changes between ratio orders {bound} and {}",
                bound + 1
            )));
        }
        Ok(lo)
    }

    /// `kernel` integrated against `p_lambda`, prefactor included.
    pub fn eval_contour_basis(
        &self,
        kernel: &KernelSpec,
        sign: HalfPlane,
        order: ContourOrder,
        lambda: &Partition,
    ) -> Result<SymFunc> {
        let norm = kernel.normalize(order)?;
        let degree = kernel.degree()?;
        let raw = self.eval_basis(&norm, sign, degree, lambda)?;
        Ok(raw.to_coeff().scale(&kernel.prefactor))
    }

    /// Multi-contour integral of `kernel` against `E_sign` applied to `f`,
    /// expanding every kernel factor in the ratios that are small under `order`.
    pub fn eval_contour(&self, kernel: &KernelSpec, sign: HalfPlane, order: ContourOrder, f: &SymFunc) -> Result<SymFunc> {
        let norm = kernel.normalize(order)?;
        let degree = kernel.degree()?;
        let mut out = SymFunc::zero();
        for (lambda, c) in f.terms() {
            let raw = self.eval_basis(&norm, sign, degree, lambda)?;
            out = &out + &raw.to_coeff().scale(c);
        }
        Ok(out.scale(&kernel.prefactor))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(3, 2).len(), 4);
        assert_eq!(compositions(0, 3), vec![vec![0, 0, 0]]);
        assert_eq!(compositions(2, 3).len(), 6);
    }

    #[test]
    fn vacuum_and_degree_one() {
        let ev = Evaluator::default();
        let k = KernelSpec::word(&[0]);
        let one = ev.eval_contour(&k, HalfPlane::Plus, ContourOrder::Decreasing, &SymFunc::one()).unwrap();
        assert_eq!(one, SymFunc::one());
        // constant term of (1 - beta_1 (qt)^{-1/2} p_1 / z + ...)(p_1 + z)
        let p1 = ev.eval_contour(&k, HalfPlane::Plus, ContourOrder::Decreasing, &SymFunc::p(1)).unwrap();
        let q = Coeff::q();
        let t = Coeff::t();
        let ev1 = &(&q.inverse().unwrap() + &t.inverse().unwrap()) - &(&q * &t).inverse().unwrap();
        assert_eq!(p1, SymFunc::p(1).scale(&ev1));
    }

    #[test]
    fn lowering_past_the_vacuum_vanishes() {
        let ev = Evaluator::default();
        let k = KernelSpec::word(&[-1]);
        assert!(ev.eval_contour(&k, HalfPlane::Plus, ContourOrder::Decreasing, &SymFunc::one()).unwrap().is_zero());
        let k = KernelSpec::word(&[1]);
        assert!(ev.eval_contour(&k, HalfPlane::Minus, ContourOrder::Decreasing, &SymFunc::one()).unwrap().is_zero());
    }
}
