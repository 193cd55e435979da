//! Integrand kernels and their expansion as power series in ratios of the
//! contour variables.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::zlaurent::ZLaurent;
use crate::coeffs::{Coeff, Exp2, HalfLaurent};
use crate::error::{Error, Result};

/// Which exponential pair is used: the upper (`Plus`) or lower (`Minus`) half.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HalfPlane {
    Plus,
    Minus,
}

impl HalfPlane {
    pub fn sign(self) -> i32 {
        match self {
            HalfPlane::Plus => 1,
            HalfPlane::Minus => -1,
        }
    }
}

impl FromStr for HalfPlane {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(HalfPlane::Plus),
            "-" | "minus" => Ok(HalfPlane::Minus),
            _ => Err(Error::Parse(format!("unknown half plane {s:?}"))),
        }
    }
}

impl fmt::Display for HalfPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HalfPlane::Plus => "plus",
            HalfPlane::Minus => "minus",
        })
    }
}

/// Relative sizes of the contour variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContourOrder {
    /// `|z_1| >> |z_2| >> ... >> |z_n|`
    Decreasing,
    /// `|z_1| << |z_2| << ... << |z_n|`
    Increasing,
}

impl ContourOrder {
    /// `pos[i]` is the rank of `z_i` in the order, largest first.
    pub fn positions(self, n: usize) -> Vec<usize> {
        match self {
            ContourOrder::Decreasing => (0..n).collect(),
            ContourOrder::Increasing => (0..n).rev().collect(),
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            ContourOrder::Decreasing => ContourOrder::Increasing,
            ContourOrder::Increasing => ContourOrder::Decreasing,
        }
    }
}

impl fmt::Display for ContourOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ContourOrder::Decreasing => "decreasing",
            ContourOrder::Increasing => "increasing",
        })
    }
}

/// How the closed-form kernels of `D_n`, `D_eps` and `U_{m,n}` are placed on
/// the contours. `Printed` uses them as written; `Mirrored` applies
/// [`KernelSpec::mirrored`] first, which is what makes them agree with
/// composition of the one-variable generators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelReading {
    Printed,
    #[default]
    Mirrored,
}

impl FromStr for KernelReading {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(KernelReading::Printed),
            "mirrored" => Ok(KernelReading::Mirrored),
            _ => Err(Error::Parse(format!("unknown kernel reading {s:?}"))),
        }
    }
}

impl fmt::Display for KernelReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelReading::Printed => "printed",
            KernelReading::Mirrored => "mirrored",
        })
    }
}

impl KernelReading {
    pub fn apply(self, k: KernelSpec) -> KernelSpec {
        match self {
            KernelReading::Printed => k,
            KernelReading::Mirrored => k.mirrored(),
        }
    }
}

/// Rational integrand in `z_1..z_n` (variables 0-based here):
///
/// `prefactor * z^m * extras(z) * prod 1/(1 - s z_j/z_i) * prod_{i<j} omega(z_i/z_j)`
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSpec {
    pub n: usize,
    pub monomial_exponents: Vec<i32>,
    /// `(i, j, s)`, each standing for `1 / (1 - s z_j / z_i)`.
    pub geometric_factors: Vec<(usize, usize, Coeff)>,
    pub omega_pairs: bool,
    pub prefactor: Coeff,
    pub numerator_extras: Option<ZLaurent<HalfLaurent>>,
}

impl KernelSpec {
    /// `z^m` times the full omega product, with unit prefactor.
    pub fn word(m: &[i32]) -> Self {
        KernelSpec {
            n: m.len(),
            monomial_exponents: m.to_vec(),
            geometric_factors: Vec::new(),
            omega_pairs: true,
            prefactor: Coeff::one(),
            numerator_extras: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Argument("kernel needs at least one variable".into()));
        }
        if self.monomial_exponents.len() != self.n {
            return Err(Error::Argument("monomial exponent count differs from n".into()));
        }
        for (i, j, s) in &self.geometric_factors {
            if i == j || *i >= self.n || *j >= self.n {
                return Err(Error::Argument(format!("geometric factor must couple distinct variables, got ({i}, {j})")));
            }
            unit_of(s)?;
        }
        if let Some(x) = &self.numerator_extras {
            if x.n() != self.n {
                return Err(Error::Argument("numerator extras have the wrong variable count".into()));
            }
            x.total_degree()?;
        }
        Ok(())
    }

    /// Total degree of the integrand in `z`, which is the degree shift it induces.
    pub fn degree(&self) -> Result<i32> {
        let extras = match &self.numerator_extras {
            Some(x) => x.total_degree()?.unwrap_or(0),
            None => 0,
        };
        Ok(self.monomial_exponents.iter().sum::<i32>() + extras)
    }

    /// Image under `z_i -> z_{n+1-i}` combined with `q, t -> 1/q, 1/t` on the
    /// kernel's own scalars. The omega product is invariant under this map.
    pub fn mirrored(&self) -> KernelSpec {
        let n = self.n;
        let inv = |c: &Coeff| c.power_shift(-1).expect("nonzero shift");
        let numerator_extras = self.numerator_extras.as_ref().map(|x| {
            let mut out = ZLaurent::zero(n);
            for (e, c) in x.terms() {
                out.add_term(e.iter().rev().copied().collect(), c.power_shift(-1));
            }
            out
        });
        KernelSpec {
            n,
            monomial_exponents: self.monomial_exponents.iter().rev().copied().collect(),
            geometric_factors: self.geometric_factors.iter().map(|(i, j, s)| (n - 1 - i, n - 1 - j, inv(s))).collect(),
            omega_pairs: self.omega_pairs,
            prefactor: inv(&self.prefactor),
            numerator_extras,
        }
    }

    /// Sum of absolute exponents in the Laurent part of the kernel.
    pub(crate) fn exponent_span(&self) -> usize {
        let mono: i32 = self.monomial_exponents.iter().map(|m| m.abs()).sum();
        let extra = self
            .numerator_extras
            .as_ref()
            .map(|x| x.terms().map(|(e, _)| e.iter().map(|v| v.abs()).sum::<i32>()).max().unwrap_or(0))
            .unwrap_or(0);
        (mono + extra) as usize
    }

    /// Splits the integrand into a Laurent polynomial and a product of
    /// factors `(1 - c r)^e`, where each `r` is a ratio small under `order`.
    pub(crate) fn normalize(&self, order: ContourOrder) -> Result<Normalized> {
        self.validate()?;
        let n = self.n;
        let pos = order.positions(n);
        let mut net: BTreeMap<(usize, usize, Exp2, BigRational), i32> = BTreeMap::new();
        let mut shift = vec![0i32; n];
        let mut unit = HalfLaurent::one();
        let mut push = |a: usize, b: usize, c: HalfLaurent, e: i32, shift: &mut Vec<i32>, unit: &mut HalfLaurent| {
            // factor (1 - c z_b / z_a)^e
            let (from, to, c) = if pos[a] < pos[b] {
                (pos[a], pos[b], c)
            } else {
                // (1 - c z_b/z_a) = (-c z_b/z_a) (1 - c^{-1} z_a/z_b)
                let mc = -&c;
                let f = if e > 0 { mc } else { mc.unit_inverse().expect("unit") };
                for _ in 0..e.abs() {
                    *unit = &*unit * &f;
                }
                shift[b] += e;
                shift[a] -= e;
                (pos[b], pos[a], c.unit_inverse().expect("unit"))
            };
            let ((ea, eb), r) = c.as_monomial().map(|(x, r)| (x, r.clone())).expect("monomial");
            *net.entry((from, to, (ea, eb), r)).or_insert(0) += e;
        };
        for (i, j, s) in &self.geometric_factors {
            push(*i, *j, unit_of(s)?, -1, &mut shift, &mut unit);
        }
        if self.omega_pairs {
            for i in 0..n {
                for j in i + 1..n {
                    push(i, j, HalfLaurent::one(), 1, &mut shift, &mut unit);
                    push(i, j, HalfLaurent::qt_pow(2, 2), 1, &mut shift, &mut unit);
                    push(i, j, HalfLaurent::q_pow(1), -1, &mut shift, &mut unit);
                    push(i, j, HalfLaurent::t_pow(1), -1, &mut shift, &mut unit);
                }
            }
        }
        let factors: Vec<SeriesFactor> = net
            .into_iter()
            .filter(|(_, e)| *e != 0)
            .map(|((from, to, x, r), e)| SeriesFactor { from, to, c: HalfLaurent::monomial(r, x.0, x.1), e })
            .collect();
        let base: Vec<i32> = self.monomial_exponents.iter().zip(&shift).map(|(m, s)| m + s).collect();
        let mut numerator = ZLaurent::monomial(base, unit);
        if let Some(x) = &self.numerator_extras {
            numerator = &numerator * x;
        }
        let shift_span: i32 = shift.iter().map(|s| s.abs()).sum();
        Ok(Normalized { n, positions: pos, numerator, factors, span: self.exponent_span() + shift_span as usize })
    }
}

fn unit_of(s: &Coeff) -> Result<HalfLaurent> {
    match s.as_laurent() {
        Some(l) if l.as_monomial().is_some() => Ok(l.clone()),
        _ => Err(Error::Argument(format!("geometric factor scalar must be a monomial in Q, T: {s}"))),
    }
}

/// `(1 - c * w_to / w_from)^e`, positions with `from < to`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct SeriesFactor {
    pub from: usize,
    pub to: usize,
    pub c: HalfLaurent,
    pub e: i32,
}

#[derive(Clone, Debug)]
pub(crate) struct Normalized {
    pub n: usize,
    /// Variable index to contour position.
    pub positions: Vec<usize>,
    pub numerator: ZLaurent<HalfLaurent>,
    pub factors: Vec<SeriesFactor>,
    /// Sum of absolute exponents of the Laurent part, including shifts.
    pub span: usize,
}

/// Product of the series factors in `y_k = w_{k+1} / w_k`, truncated to the
/// box `0 <= f_k <= bound`. Coefficients inside the box are exact.
#[derive(Clone, Debug)]
pub(crate) struct Series {
    dims: usize,
    bound: usize,
    data: Vec<HalfLaurent>,
}

impl Series {
    pub fn new(n: usize, factors: &[SeriesFactor], bound: usize) -> Series {
        let dims = n.saturating_sub(1);
        let side = bound + 1;
        let size = side.pow(dims as u32);
        let mut data = vec![HalfLaurent::zero(); size];
        data[0] = HalfLaurent::one();
        for f in factors {
            // the ratio w_to / w_from is y_from * ... * y_{to-1}
            let mut stride = 0usize;
            let mut w = 1usize;
            for k in 0..dims {
                if k >= f.from && k < f.to {
                    stride += w;
                }
                w *= side;
            }
            let fits = |idx: usize| -> bool {
                let mut x = idx;
                for k in 0..dims {
                    let d = x % side;
                    if k >= f.from && k < f.to && d == 0 {
                        return false;
                    }
                    x /= side;
                }
                true
            };
            for _ in 0..f.e.abs() {
                if f.e > 0 {
                    for idx in (0..size).rev() {
                        if fits(idx) {
                            let prev = &f.c * &data[idx - stride];
                            data[idx] -= &prev;
                        }
                    }
                } else {
                    for idx in 0..size {
                        if fits(idx) {
                            let prev = &f.c * &data[idx - stride];
                            data[idx] += &prev;
                        }
                    }
                }
            }
        }
        Series { dims, bound, data }
    }

    /// Coefficient of `y^f`; `None` outside the box.
    pub fn get(&self, f: &[i64]) -> Option<&HalfLaurent> {
        debug_assert_eq!(f.len(), self.dims);
        let side = self.bound + 1;
        let mut idx = 0usize;
        let mut w = 1usize;
        for &x in f {
            if x < 0 || x as usize > self.bound {
                return None;
            }
            idx += x as usize * w;
            w *= side;
        }
        Some(&self.data[idx])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omega_large(r_terms: usize) -> Vec<HalfLaurent> {
        // (1 - r)(1 - qt r) / ((1 - q r)(1 - t r)) by direct power series
        let q = HalfLaurent::q_pow(1);
        let t = HalfLaurent::t_pow(1);
        let qt = &q * &t;
        let mut out = Vec::new();
        for k in 0..r_terms {
            // coefficient of r^k in 1/((1-qr)(1-tr)) is h_k(q, t)
            let h = |k: i64| -> HalfLaurent {
                if k < 0 {
                    return HalfLaurent::zero();
                }
                let mut s = HalfLaurent::zero();
                for a in 0..=k {
                    s += &(&q.pow(a as u32) * &t.pow((k - a) as u32));
                }
                s
            };
            let k = k as i64;
            let c = &(&h(k) - &(&(&HalfLaurent::one() + &qt) * &h(k - 1))) + &(&qt * &h(k - 2));
            out.push(c);
        }
        out
    }

    #[test]
    fn omega_series_two_variables() {
        let k = KernelSpec::word(&[0, 0]);
        let norm = k.normalize(ContourOrder::Decreasing).unwrap();
        assert_eq!(norm.numerator.constant_term(), HalfLaurent::one());
        let s = Series::new(2, &norm.factors, 6);
        let expect = omega_large(7);
        for (j, e) in expect.iter().enumerate() {
            assert_eq!(s.get(&[j as i64]).unwrap(), e, "order {j}");
        }
        assert!(s.get(&[7]).is_none());
    }

    #[test]
    fn reversed_order_rewrites_factors() {
        // omega(z_1/z_2) with |z_1| << |z_2|: (1-x)(1-x/qt)/((1-x/q)(1-x/t)), x = z_1/z_2
        let k = KernelSpec::word(&[0, 0]);
        let norm = k.normalize(ContourOrder::Increasing).unwrap();
        assert_eq!(norm.numerator.constant_term(), HalfLaurent::one());
        let s = Series::new(2, &norm.factors, 3);
        let inv = |c: &HalfLaurent| c.power_shift(-1);
        for (j, e) in omega_large(4).iter().enumerate() {
            assert_eq!(s.get(&[j as i64]).unwrap(), &inv(e));
        }
    }

    #[test]
    fn geometric_factor_validation() {
        let mut k = KernelSpec::word(&[0, 0]);
        k.geometric_factors.push((1, 1, Coeff::one()));
        assert!(k.validate().is_err());
        k.geometric_factors = vec![(0, 1, &Coeff::one() + &Coeff::q())];
        assert!(k.validate().is_err());
    }
}
