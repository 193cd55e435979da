use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::elem::{linear, ShuffleElem, ZPoly};
use crate::coeffs::{Coeff, HalfLaurent};
use crate::error::{Error, Result};
use crate::symfunc::RibbonWord;
use crate::vertexops::umn_kernel;

/// All permutations of `0..n`, in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Size-`k` subsets of `0..n`, each sorted.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn symmetrize(base: &ZPoly) -> ZPoly {
    permutations(base.n()).iter().fold(ZPoly::zero(base.n()), |acc, sigma| &acc + &base.permuted(sigma))
}

/// `omega(z_i / z_j)` times the factors missing from its denominator relative
/// to the canonical one: `(z_i - z_j)(z_i - qt z_j)(z_j - q z_i)(z_j - t z_i)`.
/// With `cancel_chain`, the factor `z_i - qt z_j` is replaced by `z_i`, which
/// absorbs `1 / (1 - qt z_j / z_i)`.
fn omega_block(n: usize, i: usize, j: usize, cancel_chain: bool) -> ZPoly {
    let mut p = &linear(n, i, j, HalfLaurent::one()) * &linear(n, j, i, HalfLaurent::q_pow(1));
    p = &p * &linear(n, j, i, HalfLaurent::t_pow(1));
    if cancel_chain {
        let mut e = vec![0; n];
        e[i] = 1;
        p.shifted(&e)
    } else {
        &p * &linear(n, i, j, HalfLaurent::qt_pow(2, 2))
    }
}

/// `prod_{i<j} omega(z_i/z_j) * prod_{i} 1/(1 - qt z_{i+1}/z_i)^[chain]`
/// written over the canonical denominator.
fn ordered_numerator(n: usize, chain: bool) -> ZPoly {
    let mut out = ZPoly::one(n);
    for i in 0..n {
        for j in i + 1..n {
            out = &out * &omega_block(n, i, j, chain && j == i + 1);
        }
    }
    out
}

/// `Sym[z^m prod_{i<j} omega(z_i/z_j)]`.
pub fn word_elem(word: &[i32]) -> Result<ShuffleElem> {
    if word.is_empty() {
        return Err(Error::Argument("word must be nonempty".into()));
    }
    let n = word.len();
    let base = ordered_numerator(n, false).shifted(word);
    ShuffleElem::canonical(n, Coeff::one(), symmetrize(&base))
}

/// Places the variables of `p` at `positions` among `total` variables.
fn embed(p: &ZPoly, positions: &[usize], total: usize) -> ZPoly {
    let mut out = ZPoly::zero(total);
    for (e, c) in p.terms() {
        let mut f = vec![0; total];
        for (k, &pos) in positions.iter().enumerate() {
            f[pos] = e[k];
        }
        out.add_term(f, c.clone());
    }
    out
}

/// The shuffle product, summed over shuffles `A | B` of the variables.
/// Both factors must carry the canonical denominator.
pub fn shuffle_mul(a: &ShuffleElem, b: &ShuffleElem) -> Result<ShuffleElem> {
    if a.n() == 0 {
        return Ok(b.scale(&(a.scalar() * &Coeff::from(a.num().constant_term()))));
    }
    if b.n() == 0 {
        return Ok(a.scale(&(b.scalar() * &Coeff::from(b.num().constant_term()))));
    }
    if !a.is_canonical() || !b.is_canonical() {
        return Err(Error::Form("shuffle product needs the canonical denominator on both factors".into()));
    }
    let total = a.n() + b.n();
    let mut num = ZPoly::zero(total);
    for left in subsets(total, a.n()) {
        let right: Vec<usize> = (0..total).filter(|x| !left.contains(x)).collect();
        let mut term = &embed(a.num(), &left, total) * &embed(b.num(), &right, total);
        for &i in &left {
            for &j in &right {
                term = &term * &omega_block(total, i, j, false);
            }
        }
        num = &num + &term;
    }
    ShuffleElem::canonical(total, a.scalar() * b.scalar(), num)
}

fn floor_steps(m: i64, n: usize) -> Vec<i32> {
    let nn = n as i64;
    (1..=nn).map(|i| (Integer::div_floor(&(i * m), &nn) - Integer::div_floor(&((i - 1) * m), &nn)) as i32).collect()
}

/// `P_{m,n}`: the symmetrization of `p_{m,n} prod omega` with prefactor
/// `(q-1)^n (t-1)^n / ((q^g-1)(t^g-1))`.
pub fn p_mn(m: i64, n: usize) -> Result<ShuffleElem> {
    if n == 0 {
        return Err(Error::Argument("P_{m,n} needs n >= 1".into()));
    }
    let kernel = umn_kernel(m, n);
    let extras = kernel.numerator_extras.clone().unwrap_or_else(|| ZPoly::one(n));
    let base = (&ordered_numerator(n, true) * &extras).shifted(&kernel.monomial_exponents);
    let g = m.gcd(&(n as i64)) as i32;
    let qm1 = &Coeff::q() - &Coeff::one();
    let tm1 = &Coeff::t() - &Coeff::one();
    let top = (&qm1 * &tm1).pow(n as i32)?;
    let bottom = &(&Coeff::qt_pow(2 * g, 0) - &Coeff::one()) * &(&Coeff::qt_pow(0, 2 * g) - &Coeff::one());
    ShuffleElem::canonical(n, top.checked_div(&bottom)?, symmetrize(&base))
}

/// Which index of `eps` sits at position `i` of the ribbon formula.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RibbonReading {
    /// `eps_{i/n}`: reproduces the `D_eps` kernel at `(m, n) = (0, 1)`.
    #[default]
    ByN,
    /// `eps_{i/k}`, the subscript as printed.
    ByK,
}

impl FromStr for RibbonReading {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "by_n" | "n" => Ok(RibbonReading::ByN),
            "by_k" | "k" => Ok(RibbonReading::ByK),
            _ => Err(Error::Parse(format!("unknown ribbon reading {s:?}"))),
        }
    }
}

impl fmt::Display for RibbonReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RibbonReading::ByN => "by_n",
            RibbonReading::ByK => "by_k",
        })
    }
}

/// Image of the ribbon Schur function `s_eps` in `k n` variables.
pub fn upsilon_ribbon(m: i64, n: usize, eps: &RibbonWord, k: usize, reading: RibbonReading) -> Result<ShuffleElem> {
    if n == 0 || k == 0 {
        return Err(Error::Argument("need n >= 1 and k >= 1".into()));
    }
    if m.gcd(&(n as i64)) != 1 {
        return Err(Error::Argument(format!("gcd({m}, {n}) must be 1")));
    }
    if eps.len() + 1 != k {
        return Err(Error::Argument(format!("ribbon word {eps} has length {}, expected {}", eps.len(), k - 1)));
    }
    let total = k * n;
    let divisor = match reading {
        RibbonReading::ByN => n,
        RibbonReading::ByK => k,
    };
    // eps_x for x = i / divisor, zero unless integral and in 1..k-1
    let e = |i: usize| -> i32 {
        if !i.is_multiple_of(divisor) {
            return 0;
        }
        let x = i / divisor;
        if (1..k).contains(&x) {
            eps.bits()[x - 1] as i32
        } else {
            0
        }
    };
    let steps = floor_steps(m * k as i64, total);
    let exps: Vec<i32> = (1..=total).map(|i| steps[i - 1] - e(i) + e(i - 1)).collect();
    let base = ordered_numerator(total, true).shifted(&exps);
    let scalar = (-&Coeff::qt_pow(2, 2)).pow(eps.ones() as i32)?;
    ShuffleElem::canonical(total, scalar, symmetrize(&base))
}

/// All words of length `len` with entries in `lo..=hi` summing to `total`.
pub fn words_in_window(len: usize, lo: i32, hi: i32, total: i32) -> Vec<Vec<i32>> {
    if len == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        for mut rest in words_in_window(len - 1, lo, hi, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::elem::rat_eq;
    use super::*;
    use crate::shuffle::Denominator;

    fn z(m: i32) -> ShuffleElem {
        word_elem(&[m]).unwrap()
    }

    fn omega_sum() -> ShuffleElem {
        // omega(z1/z2) + omega(z2/z1) written with explicit denominators
        let d12 = &linear(2, 0, 1, HalfLaurent::q_pow(1)) * &linear(2, 0, 1, HalfLaurent::t_pow(1));
        let d21 = &linear(2, 1, 0, HalfLaurent::q_pow(1)) * &linear(2, 1, 0, HalfLaurent::t_pow(1));
        let n12 = &linear(2, 0, 1, HalfLaurent::one()) * &linear(2, 0, 1, HalfLaurent::qt_pow(2, 2));
        let n21 = &linear(2, 1, 0, HalfLaurent::one()) * &linear(2, 1, 0, HalfLaurent::qt_pow(2, 2));
        let num = &(&n12 * &d21) + &(&n21 * &d12);
        ShuffleElem::new(2, Coeff::one(), num, Denominator::General(&d12 * &d21)).unwrap()
    }

    #[test]
    fn product_of_constants_is_omega_sum() {
        let p = shuffle_mul(&z(0), &z(0)).unwrap();
        assert!(rat_eq(&p, &omega_sum()));
        assert!(rat_eq(&word_elem(&[0, 0]).unwrap(), &p));
    }

    #[test]
    fn unit_is_neutral() {
        let p = word_elem(&[1, -1]).unwrap();
        assert!(rat_eq(&shuffle_mul(&ShuffleElem::unit(), &p).unwrap(), &p));
        assert!(rat_eq(&shuffle_mul(&p, &ShuffleElem::unit()).unwrap(), &p));
    }

    #[test]
    fn words_are_iterated_products() {
        for w in [vec![1, 0], vec![0, 1], vec![-1, 2], vec![1, 0, -1], vec![0, 0, 1]] {
            let iter = w.iter().skip(1).fold(z(w[0]), |acc, &m| shuffle_mul(&acc, &z(m)).unwrap());
            assert!(rat_eq(&word_elem(&w).unwrap(), &iter), "{w:?}");
        }
        assert!(!rat_eq(&word_elem(&[1, 0]).unwrap(), &word_elem(&[0, 1]).unwrap()));
    }

    #[test]
    fn product_is_associative() {
        for a in -1..=1 {
            for b in -1..=1 {
                for c in -1..=1 {
                    let l = shuffle_mul(&shuffle_mul(&z(a), &z(b)).unwrap(), &z(c)).unwrap();
                    let r = shuffle_mul(&z(a), &shuffle_mul(&z(b), &z(c)).unwrap()).unwrap();
                    assert!(rat_eq(&l, &r), "({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn p_mn_with_one_variable_is_a_monomial() {
        for m in -3..=3 {
            assert!(rat_eq(&p_mn(m, 1).unwrap(), &z(m as i32)), "m = {m}");
        }
    }

    #[test]
    fn constructed_elements_are_symmetric() {
        assert!(word_elem(&[2, -1, 0]).unwrap().is_symmetric());
        assert!(p_mn(1, 3).unwrap().is_symmetric());
        assert!(upsilon_ribbon(1, 2, &"1".parse().unwrap(), 2, RibbonReading::ByN).unwrap().is_symmetric());
    }

    #[test]
    fn ribbon_image_at_vertical_ray() {
        assert!(rat_eq(&upsilon_ribbon(0, 1, &RibbonWord::default(), 1, RibbonReading::ByN).unwrap(), &z(0)));
        // eps = (1): (-qt) Sym[z_2/z_1 ...] matches the D_eps kernel pattern
        let one = upsilon_ribbon(0, 1, &"1".parse().unwrap(), 2, RibbonReading::ByN).unwrap();
        let base = ordered_numerator(2, true).shifted(&[-1, 1]);
        let expect = ShuffleElem::canonical(2, -&Coeff::qt_pow(2, 2), symmetrize(&base)).unwrap();
        assert!(rat_eq(&one, &expect));
        // all-zero words: the symmetrized kernel with no numerator monomial
        for k in 1..=3 {
            let eps = RibbonWord::new(vec![0; k - 1]).unwrap();
            let expect = ShuffleElem::canonical(k, Coeff::one(), symmetrize(&ordered_numerator(k, true))).unwrap();
            assert!(rat_eq(&upsilon_ribbon(0, 1, &eps, k, RibbonReading::ByN).unwrap(), &expect));
        }
    }

    #[test]
    fn window_enumeration() {
        assert_eq!(words_in_window(2, -1, 2, 1), vec![vec![-1, 2], vec![0, 1], vec![1, 0], vec![2, -1]]);
        assert_eq!(words_in_window(1, 0, 3, 2), vec![vec![2]]);
    }
}
