//! Classical bases of symmetric functions and change of basis to and from
//! power sums.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::partition::{partitions, Partition};
use super::symfunc::SymFunc;
use crate::coeffs::{Coeff, Ring};
use crate::error::{Error, Result};
use crate::linalg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Power sums.
    P,
    /// Monomial symmetric functions.
    M,
    /// Elementary.
    E,
    /// Complete homogeneous.
    H,
    /// Schur.
    S,
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" => Ok(Basis::P),
            "m" => Ok(Basis::M),
            "e" => Ok(Basis::E),
            "h" => Ok(Basis::H),
            "s" => Ok(Basis::S),
            _ => Err(Error::Parse(format!("unknown basis {s:?}"))),
        }
    }
}

type QSym = SymFunc<BigRational>;

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// `h_n` in the power-sum basis (`h_0 = 1`, `h_n = 0` for `n < 0`).
pub fn h(n: i64) -> QSym {
    if n < 0 {
        return QSym::zero();
    }
    QSym::from_terms(partitions(n as usize).into_iter().map(|mu| {
        let c = BigRational::new(BigInt::one(), mu.z());
        (mu, c)
    }))
}

/// `e_n` in the power-sum basis.
pub fn e(n: i64) -> QSym {
    if n < 0 {
        return QSym::zero();
    }
    QSym::from_terms(partitions(n as usize).into_iter().map(|mu| {
        let sign = if (n as usize - mu.len()).is_multiple_of(2) { 1 } else { -1 };
        let c = BigRational::new(BigInt::from(sign), mu.z());
        (mu, c)
    }))
}

fn product(parts: &[usize], f: impl Fn(i64) -> QSym) -> QSym {
    parts.iter().fold(QSym::one(), |acc, &k| &acc * &f(k as i64))
}

/// Determinant of a square matrix of symmetric functions.
pub(crate) fn det(m: &[Vec<QSym>]) -> QSym {
    let n = m.len();
    if n == 0 {
        return QSym::one();
    }
    // Laplace expansion along the first row.
    let mut acc = QSym::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<QSym>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * &det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Skew Schur function `s_{outer/inner}` by the Jacobi–Trudi identity.
pub(crate) fn skew_schur_q(outer: &Partition, inner: &Partition) -> QSym {
    let l = outer.len();
    let m: Vec<Vec<QSym>> = (0..l)
        .map(|i| (0..l).map(|j| h(outer.part(i) as i64 - inner.part(j) as i64 - i as i64 + j as i64)).collect())
        .collect();
    det(&m)
}

/// Number of ways to distribute the parts of `mu` into bins with sums `lambda`;
/// the coefficient of `m_lambda` in `p_mu`.
fn assignments(mu: &[usize], bins: &mut [usize]) -> BigInt {
    let Some((&first, rest)) = mu.split_first() else {
        return if bins.iter().all(|&b| b == 0) { BigInt::one() } else { BigInt::zero() };
    };
    let mut acc = BigInt::zero();
    for j in 0..bins.len() {
        if bins[j] >= first {
            bins[j] -= first;
            acc += assignments(rest, bins);
            bins[j] += first;
        }
    }
    acc
}

fn m_in_p(lambda: &Partition) -> QSym {
    let d = lambda.size();
    let labels = partitions(d);
    // rows mu, columns lambda: p_mu = sum_lambda L[mu][lambda] m_lambda
    let l: linalg::Matrix<BigRational> = labels
        .iter()
        .map(|mu| labels.iter().map(|la| rat(assignments(mu.parts(), &mut la.parts().to_vec()))).collect())
        .collect();
    let inv = linalg::inverse(&l).expect("p-to-m transition is invertible");
    let row = labels.iter().position(|x| x == lambda).expect("label present");
    QSym::from_terms(labels.iter().enumerate().map(|(j, mu)| (mu.clone(), inv[row][j].clone())))
}

/// Basis element `b_lambda` in the power-sum basis, with rational coefficients.
pub fn basis_element(basis: Basis, lambda: &Partition) -> QSym {
    match basis {
        Basis::P => QSym::p_lambda(lambda.clone()),
        Basis::H => product(lambda.parts(), h),
        Basis::E => product(lambda.parts(), e),
        Basis::S => skew_schur_q(lambda, &Partition::empty()),
        Basis::M => m_in_p(lambda),
    }
}

/// Expands `f` (power-sum basis) in `target`, listing nonzero coefficients in
/// partition order.
pub fn convert(f: &SymFunc<Coeff>, target: Basis) -> Vec<(Partition, Coeff)> {
    if target == Basis::P {
        return f.terms().map(|(l, c)| (l.clone(), c.clone())).collect();
    }
    let mut out = Vec::new();
    for d in f.degrees() {
        let labels = partitions(d);
        // rows: target labels, columns: p labels
        let b: linalg::Matrix<BigRational> = labels
            .iter()
            .map(|la| {
                let el = basis_element(target, la);
                labels.iter().map(|mu| el.coeff(mu)).collect()
            })
            .collect();
        let inv = linalg::inverse(&b).expect("basis transition is invertible");
        for (i, la) in labels.iter().enumerate() {
            let c: Coeff = labels
                .iter()
                .enumerate()
                .filter(|&(j, _)| !Zero::is_zero(&inv[j][i]))
                .map(|(j, mu)| f.coeff(mu).scale(&inv[j][i]))
                .sum();
            if !Ring::is_zero(&c) {
                out.push((la.clone(), c));
            }
        }
    }
    out
}

/// Inverse of [`convert`].
pub fn from_basis(terms: &[(Partition, Coeff)], basis: Basis) -> SymFunc<Coeff> {
    let mut out = SymFunc::zero();
    for (la, c) in terms {
        for (mu, r) in basis_element(basis, la).terms() {
            out.add_term(mu.clone(), c.scale(r));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn power_sum_is_a_monomial_function() {
        let conv = convert(&SymFunc::p(2), Basis::M);
        assert_eq!(conv, vec![(part(&[2]), Coeff::one())]);
    }

    #[test]
    fn newton_identity_for_h2() {
        let expect = QSym::from_terms([(part(&[2]), q(1, 2)), (part(&[1, 1]), q(1, 2))]);
        assert_eq!(basis_element(Basis::H, &part(&[2])), expect);
    }

    #[test]
    fn schur_21_in_power_sums() {
        // s_{21} = (p_{111} - p_3) / 3
        let expect = QSym::from_terms([(part(&[1, 1, 1]), q(1, 3)), (part(&[3]), q(-1, 3))]);
        assert_eq!(basis_element(Basis::S, &part(&[2, 1])), expect);
    }

    #[test]
    fn monomial_basis_small_cases() {
        // m_{11} = (p_{11} - p_2) / 2
        let expect = QSym::from_terms([(part(&[1, 1]), q(1, 2)), (part(&[2]), q(-1, 2))]);
        assert_eq!(basis_element(Basis::M, &part(&[1, 1])), expect);
        assert_eq!(basis_element(Basis::E, &part(&[2])), basis_element(Basis::M, &part(&[1, 1])));
    }
}
