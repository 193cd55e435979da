//! Closed-form eigenvalues of the operators `D_g` on Macdonald polynomials.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;

use super::partition::Partition;
use super::symfunc::SymFunc;
use crate::coeffs::{Coeff, HalfLaurent};
use crate::error::{Error, Result};

/// Whether eigenvalues are read as printed or after `q, t -> 1/q, 1/t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Direct,
    Inverted,
}

impl FromStr for Orientation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Orientation::Direct),
            "inverted" => Ok(Orientation::Inverted),
            _ => Err(Error::Parse(format!("unknown orientation {s:?}"))),
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Direct => "direct",
            Orientation::Inverted => "inverted",
        })
    }
}

/// `c_k(lambda) = 1 + (1 - q^k) sum_{i < l(lambda)} q^{ki} (t^{k lambda_i} - 1)`,
/// the value of `p_k` at `(1-q)(1-t)` times the weights outside `lambda`.
pub fn power_sum_value(k: usize, lambda: &Partition) -> HalfLaurent {
    let k = k as i32;
    let one = HalfLaurent::one();
    let mut sum = HalfLaurent::zero();
    for (i, &part) in lambda.parts().iter().enumerate() {
        let term = &HalfLaurent::q_pow(k * i as i32) * &(&HalfLaurent::t_pow(k * part as i32) - &one);
        sum += &term;
    }
    &one + &(&(&one - &HalfLaurent::q_pow(k)) * &sum)
}

pub fn spectral_eigenvalue(g: &SymFunc, lambda: &Partition, orientation: Orientation) -> Coeff {
    let max_part = g.terms().flat_map(|(mu, _)| mu.parts().first().copied()).max().unwrap_or(0);
    let values: Vec<HalfLaurent> = (0..=max_part).map(|k| if k == 0 { HalfLaurent::one() } else { power_sum_value(k, lambda) }).collect();
    let direct: Coeff = g
        .terms()
        .map(|(mu, c)| {
            let prod = mu.parts().iter().fold(HalfLaurent::constant(BigRational::one()), |acc, &k| &acc * &values[k]);
            c.mul_laurent(&prod)
        })
        .sum();
    match orientation {
        Orientation::Direct => direct,
        Orientation::Inverted => direct.power_shift(-1).expect("nonzero shift"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_values() {
        let p1 = SymFunc::p(1);
        assert_eq!(spectral_eigenvalue(&p1, &part(&[]), Orientation::Direct), Coeff::one());
        let q = Coeff::q();
        let t = Coeff::t();
        let expect = &(&q + &t) - &(&q * &t);
        assert_eq!(spectral_eigenvalue(&p1, &part(&[1]), Orientation::Direct), expect);
        let q2 = q.pow(2).unwrap();
        let t2 = t.pow(2).unwrap();
        let expect2 = &(&q2 + &t2) - &(&q2 * &t2);
        assert_eq!(spectral_eigenvalue(&SymFunc::p(2), &part(&[1]), Orientation::Direct), expect2);
        let inv = &(&q.inverse().unwrap() + &t.inverse().unwrap()) - &(&q * &t).inverse().unwrap();
        assert_eq!(spectral_eigenvalue(&p1, &part(&[1]), Orientation::Inverted), inv);
    }

    #[test]
    fn geometric_series_matches_closed_form() {
        // Truncate the sum over weights q^i t^j with i >= 0, j >= lambda_i at
        // i, j < 8 and compare coefficients of low-degree monomials.
        let la = part(&[2, 1]);
        let k = 1;
        let mut weights = HalfLaurent::zero();
        for i in 0..8 {
            for j in la.part(i)..8 {
                weights += &HalfLaurent::qt_pow(2 * i as i32, 2 * j as i32);
            }
        }
        let one = HalfLaurent::one();
        let series = &(&(&one - &HalfLaurent::q_pow(1)) * &(&one - &HalfLaurent::t_pow(1))) * &weights;
        let closed = power_sum_value(k, &la);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(series.coeff((2 * a, 2 * b)), closed.coeff((2 * a, 2 * b)), "q^{a} t^{b}");
            }
        }
    }
}
