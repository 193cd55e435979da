//! Named operators: one-variable generators, words, `D_n`, `U_{m,n}` and `D_eps`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_integer::Integer;
use rayon::prelude::*;

use super::engine::Evaluator;
use super::kernel::{ContourOrder, HalfPlane, KernelReading, KernelSpec};
use super::zlaurent::ZLaurent;
use crate::coeffs::{Coeff, HalfLaurent};
use crate::error::{Error, Result};
use crate::symfunc::{adjoint_p, partitions, Partition, RibbonWord, SymFunc};

fn beta1_inv() -> Coeff {
    Coeff::beta(1).expect("k = 1").inverse().expect("nonzero")
}

/// `(qt)^{m/2}` if `m < 0`, else 1.
pub fn negative_power_correction(m: i64) -> Coeff {
    if m < 0 {
        Coeff::sqrt_qt_pow(m as i32)
    } else {
        Coeff::one()
    }
}

/// Degree-`s` part of `exp(sum_k a_k x^k p_k^dagger)` applied to `f`.
fn annihilation_part(sign: HalfPlane, s: usize, f: &SymFunc) -> SymFunc {
    let mut out = SymFunc::zero();
    for mu in partitions(s) {
        let mut g = f.clone();
        let mut c = Coeff::one();
        let mut fact = 1i64;
        for (idx, &k) in mu.parts().iter().enumerate() {
            g = adjoint_p(k, &g);
            let beta = Coeff::beta(k as i64).expect("k >= 1");
            let a = match sign {
                HalfPlane::Plus => -&beta,
                HalfPlane::Minus => &beta * &Coeff::sqrt_qt_pow(k as i32),
            };
            c = &(&c * &a) / &Coeff::from(k as i64);
            if idx > 0 && mu.parts()[idx - 1] == k {
                fact *= (mu.parts()[..=idx].iter().filter(|&&x| x == k).count()) as i64;
            }
        }
        out.add_scaled(&g, &(&c / &Coeff::from(fact)));
    }
    out
}

/// Degree-`r` part of the creation exponential, as a symmetric function.
fn creation_part(sign: HalfPlane, r: usize) -> SymFunc {
    let mut out = SymFunc::zero();
    for mu in partitions(r) {
        let mut c = Coeff::one();
        let mut fact = 1i64;
        for (idx, &k) in mu.parts().iter().enumerate() {
            let beta = Coeff::beta(k as i64).expect("k >= 1");
            let b = match sign {
                HalfPlane::Plus => -&(&beta * &Coeff::sqrt_qt_pow(-(k as i32))),
                HalfPlane::Minus => beta,
            };
            c = &(&c * &b) / &Coeff::from(k as i64);
            if idx > 0 && mu.parts()[idx - 1] == k {
                fact *= (mu.parts()[..=idx].iter().filter(|&&x| x == k).count()) as i64;
            }
        }
        out.add_term(mu, &c / &Coeff::from(fact));
    }
    out
}

/// `(1/beta_1) CT_z[z^m E_sign(z)] f`: the action of the shuffle generator
/// `z_1^m`, computed from `p_k` and `p_k^dagger` one variable at a time.
pub fn generator(m: i32, sign: HalfPlane, f: &SymFunc) -> SymFunc {
    let mut out = SymFunc::zero();
    for d in f.degrees() {
        let fd = f.homogeneous(d);
        for s in 0..=d {
            // plus: z^{m + s - r}; minus: z^{m - s + r}
            let r = match sign {
                HalfPlane::Plus => m as i64 + s as i64,
                HalfPlane::Minus => s as i64 - m as i64,
            };
            if r < 0 {
                continue;
            }
            let a = annihilation_part(sign, s, &fd);
            if a.is_zero() {
                continue;
            }
            out = &out + &(&creation_part(sign, r as usize) * &a);
        }
    }
    out.scale(&beta1_inv())
}

/// `U_{m,1}` (plus) or `U_{-m,-1}` (minus) with its normalizing power of `qt`.
pub fn apply_u_pm1(m: i32, sign: HalfPlane, f: &SymFunc) -> SymFunc {
    let corr = negative_power_correction(m as i64);
    let corr = match sign {
        HalfPlane::Plus => corr,
        HalfPlane::Minus => corr.inverse().expect("unit"),
    };
    generator(m, sign, f).scale(&corr)
}

/// The shuffle word `z^{m_1} * ... * z^{m_n}` acting through successive
/// generators, the last letter applied first.
pub fn apply_word(word: &[i32], sign: HalfPlane, f: &SymFunc) -> Result<SymFunc> {
    if word.is_empty() {
        return Err(Error::Argument("word must be nonempty".into()));
    }
    Ok(word.iter().rev().fold(f.clone(), |g, &m| generator(m, sign, &g)))
}

/// Word kernel with prefactor `1 / beta_1^n`.
pub fn word_kernel(word: &[i32]) -> KernelSpec {
    let mut k = KernelSpec::word(word);
    k.prefactor = beta1_inv().pow(word.len() as i32).expect("nonzero");
    k
}

/// Kernel of `D_n`: `sum_i (qt)^{n-i} z_n / z_i` over `prod (1 - qt z_{i+1}/z_i)`,
/// with the omega product.
pub fn dn_kernel(n: usize) -> KernelSpec {
    let mut extras = ZLaurent::zero(n);
    for i in 0..n {
        let mut e = vec![0; n];
        e[n - 1] += 1;
        e[i] -= 1;
        extras.add_term(e, HalfLaurent::sqrt_qt_pow(2 * (n - 1 - i) as i32));
    }
    KernelSpec {
        n,
        monomial_exponents: vec![0; n],
        geometric_factors: (0..n - 1).map(|i| (i, i + 1, Coeff::qt_pow(2, 2))).collect(),
        omega_pairs: true,
        prefactor: Coeff::one(),
        numerator_extras: Some(extras),
    }
}

fn floor_div(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}

/// Kernel `p_{m,n} * prod omega` with prefactor `(qt)^{n/2} / ((q^g - 1)(t^g - 1))`.
pub fn umn_kernel(m: i64, n: usize) -> KernelSpec {
    let nn = n as i64;
    let g = m.gcd(&nn) as usize;
    let a = n / g;
    let mono: Vec<i32> = (1..=nn).map(|i| (floor_div(i * m, nn) - floor_div((i - 1) * m, nn)) as i32).collect();
    let mut extras = ZLaurent::zero(n);
    for x in 0..g {
        let mut e = vec![0; n];
        // z_{a(g-1)+1} ... z_{a(g-x)+1} over z_{a(g-1)} ... z_{a(g-x)}, 1-based
        for y in 1..=x {
            e[a * (g - y)] += 1;
            e[a * (g - y) - 1] -= 1;
        }
        extras.add_term(e, HalfLaurent::sqrt_qt_pow(2 * x as i32));
    }
    let g = g as i32;
    let den = &(&Coeff::qt_pow(2 * g, 0) - &Coeff::one()) * &(&Coeff::qt_pow(0, 2 * g) - &Coeff::one());
    KernelSpec {
        n,
        monomial_exponents: mono,
        geometric_factors: (0..n - 1).map(|i| (i, i + 1, Coeff::qt_pow(2, 2))).collect(),
        omega_pairs: true,
        prefactor: &Coeff::sqrt_qt_pow(n as i32) / &den,
        numerator_extras: Some(extras),
    }
}

/// Kernel of `D_eps`: `prod (-qt z_{i+1}/z_i)^{eps_i}` over `prod (1 - qt z_{i+1}/z_i)`.
pub fn deps_kernel(eps: &RibbonWord) -> KernelSpec {
    let n = eps.size();
    let mut mono = vec![0i32; n];
    let mut coeff = HalfLaurent::one();
    for (i, &b) in eps.bits().iter().enumerate() {
        if b == 1 {
            mono[i + 1] += 1;
            mono[i] -= 1;
            coeff = &coeff * &(-&HalfLaurent::sqrt_qt_pow(2));
        }
    }
    KernelSpec {
        n,
        monomial_exponents: vec![0; n],
        geometric_factors: (0..n - 1).map(|i| (i, i + 1, Coeff::qt_pow(2, 2))).collect(),
        omega_pairs: true,
        prefactor: Coeff::one(),
        numerator_extras: Some(ZLaurent::monomial(mono, coeff)),
    }
}

/// Operators with a known degree shift, applied through [`OperatorContext`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operator {
    /// Multiplication by `p_k`.
    PMul(usize),
    /// The adjoint `p_k^dagger`.
    PAdj(usize),
    /// `U_{m,1}` (plus) or `U_{-m,-1}` (minus) from the one-variable formulas.
    UOne { m: i32, sign: HalfPlane },
    /// Word acting by composition of generators.
    Word { word: Vec<i32>, sign: HalfPlane },
    /// Word acting through the multi-variable integral.
    WordContour { word: Vec<i32>, sign: HalfPlane },
    Dn(usize),
    /// Integral formula for `U_{m,n}` (plus) or `U_{-m,-n}` (minus).
    Umn { m: i64, n: usize, sign: HalfPlane },
    Deps(RibbonWord),
}

impl Operator {
    pub fn degree_shift(&self) -> i64 {
        match self {
            Operator::PMul(k) => *k as i64,
            Operator::PAdj(k) => -(*k as i64),
            Operator::UOne { m, sign } => sign.sign() as i64 * *m as i64,
            Operator::Word { word, sign } | Operator::WordContour { word, sign } => {
                sign.sign() as i64 * word.iter().map(|&m| m as i64).sum::<i64>()
            }
            Operator::Dn(_) | Operator::Deps(_) => 0,
            Operator::Umn { m, sign, .. } => sign.sign() as i64 * m,
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |sign: &HalfPlane| if *sign == HalfPlane::Plus { "+" } else { "-" };
        match self {
            Operator::PMul(k) => write!(f, "pmul({k})"),
            Operator::PAdj(k) => write!(f, "padj({k})"),
            Operator::UOne { m, sign } => write!(f, "U1{}({m})", s(sign)),
            Operator::Word { word, sign } => write!(f, "word{}({word:?})", s(sign)),
            Operator::WordContour { word, sign } => write!(f, "contour{}({word:?})", s(sign)),
            Operator::Dn(n) => write!(f, "D({n})"),
            Operator::Umn { m, n, sign } => write!(f, "Umn{}({m},{n})", s(sign)),
            Operator::Deps(e) => write!(f, "Deps({e})"),
        }
    }
}

/// Evaluation settings plus a memo of operator values on power sums.
pub struct OperatorContext {
    evaluator: Evaluator,
    plus_order: ContourOrder,
    minus_order: ContourOrder,
    reading: KernelReading,
    cache: Mutex<HashMap<(Operator, Partition), SymFunc>>,
}

impl Default for OperatorContext {
    fn default() -> Self {
        OperatorContext::new(2)
    }
}

impl OperatorContext {
    pub fn new(margin: usize) -> Self {
        OperatorContext::with_orders(margin, ContourOrder::Increasing, ContourOrder::Decreasing)
    }

    pub fn with_orders(margin: usize, plus_order: ContourOrder, minus_order: ContourOrder) -> Self {
        OperatorContext {
            evaluator: Evaluator::new(margin),
            plus_order,
            minus_order,
            reading: KernelReading::default(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_reading(mut self, reading: KernelReading) -> Self {
        self.reading = reading;
        self
    }

    pub fn reading(&self) -> KernelReading {
        self.reading
    }

    pub fn evaluator(&self) -> &Evaluator {
        &self.evaluator
    }

    pub fn margin(&self) -> usize {
        self.evaluator.margin()
    }

    /// Contour order used for the integral formulas of each half plane.
    pub fn order(&self, sign: HalfPlane) -> ContourOrder {
        match sign {
            HalfPlane::Plus => self.plus_order,
            HalfPlane::Minus => self.minus_order,
        }
    }

    fn compute_basis(&self, op: &Operator, lambda: &Partition) -> Result<SymFunc> {
        let p = SymFunc::p_lambda(lambda.clone());
        let ev = &self.evaluator;
        match op {
            Operator::PMul(k) => Ok(p.mul_p(&Partition::row(*k))),
            Operator::PAdj(k) => Ok(adjoint_p(*k, &p)),
            Operator::UOne { m, sign } => Ok(apply_u_pm1(*m, *sign, &p)),
            Operator::Word { word, sign } => apply_word(word, *sign, &p),
            Operator::WordContour { word, sign } => {
                ev.eval_contour_basis(&word_kernel(word), *sign, self.order(*sign), lambda)
            }
            Operator::Dn(n) => {
                ev.eval_contour_basis(&self.reading.apply(dn_kernel(*n)), HalfPlane::Plus, self.plus_order, lambda)
            }
            Operator::Umn { m, n, sign } => {
                ev.eval_contour_basis(&self.reading.apply(umn_kernel(*m, *n)), *sign, self.order(*sign), lambda)
            }
            Operator::Deps(eps) => {
                ev.eval_contour_basis(&self.reading.apply(deps_kernel(eps)), HalfPlane::Plus, self.plus_order, lambda)
            }
        }
    }

    /// Value of `op` on `p_lambda`.
    pub fn apply_basis(&self, op: &Operator, lambda: &Partition) -> Result<SymFunc> {
        let key = (op.clone(), lambda.clone());
        if let Some(v) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let v = self.compute_basis(op, lambda)?;
        self.cache.lock().expect("cache lock").insert(key, v.clone());
        Ok(v)
    }

    /// Applies `op` linearly to `f`.
    pub fn apply(&self, op: &Operator, f: &SymFunc) -> Result<SymFunc> {
        if let Operator::Dn(0) = op {
            return Err(Error::Argument("D_n needs n >= 1".into()));
        }
        if let Operator::Umn { n: 0, .. } = op {
            return Err(Error::Argument("U_{m,n} integral needs n >= 1".into()));
        }
        let terms: Vec<(&Partition, &Coeff)> = f.terms().collect();
        let parts: Vec<SymFunc> = terms
            .par_iter()
            .map(|(l, c)| self.apply_basis(op, l).map(|v| v.scale(c)))
            .collect::<Result<_>>()?;
        Ok(parts.iter().fold(SymFunc::zero(), |acc, x| &acc + x))
    }

    pub fn apply_dn(&self, n: usize, f: &SymFunc) -> Result<SymFunc> {
        self.apply(&Operator::Dn(n), f)
    }

    pub fn apply_umn(&self, m: i64, n: usize, sign: HalfPlane, f: &SymFunc) -> Result<SymFunc> {
        self.apply(&Operator::Umn { m, n, sign }, f)
    }

    pub fn apply_deps(&self, eps: &RibbonWord, f: &SymFunc) -> Result<SymFunc> {
        self.apply(&Operator::Deps(eps.clone()), f)
    }

    pub fn apply_word_contour(&self, word: &[i32], sign: HalfPlane, f: &SymFunc) -> Result<SymFunc> {
        if word.is_empty() {
            return Err(Error::Argument("word must be nonempty".into()));
        }
        self.apply(&Operator::WordContour { word: word.to_vec(), sign }, f)
    }
}
