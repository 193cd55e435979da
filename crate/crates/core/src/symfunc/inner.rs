//! The deformed Hall inner product, with `<p_k, p_k> = -k / beta_k`, and
//! adjoints of multiplication operators.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::partition::Partition;
use super::symfunc::SymFunc;
use crate::coeffs::Coeff;

/// `<p_lambda, p_lambda> = z_lambda * prod_i (-1 / beta_{lambda_i})`.
pub fn p_norm(lambda: &Partition) -> Coeff {
    let mut c = Coeff::from(BigRational::from_integer(lambda.z()));
    for &k in lambda.parts() {
        let b = Coeff::beta(k as i64).expect("parts are positive");
        c = &c * &(-&b.inverse().expect("beta is nonzero"));
    }
    c
}

pub fn inner(f: &SymFunc, g: &SymFunc) -> Coeff {
    let (small, large) = if f.len() <= g.len() { (f, g) } else { (g, f) };
    small
        .terms()
        .filter_map(|(la, a)| {
            let b = large.coeff(la);
            (!b.is_zero()).then(|| &(a * &b) * &p_norm(la))
        })
        .sum()
}

/// `p_k^dagger = -(k / beta_k) d/dp_k`.
pub fn adjoint_p(k: usize, f: &SymFunc) -> SymFunc {
    assert!(k >= 1, "adjoint_p needs k >= 1");
    let beta = Coeff::beta(k as i64).expect("k >= 1");
    let scale = -&(&Coeff::from(k as i64) / &beta);
    let mut out = SymFunc::zero();
    for (la, c) in f.terms() {
        let m = la.multiplicity(k);
        if let Some(rest) = la.remove_part(k) {
            let mult = Coeff::from(BigRational::from_integer(BigInt::from(m)));
            out.add_term(rest, &(c * &scale) * &mult);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b1() -> Coeff {
        Coeff::beta(1).unwrap()
    }

    #[test]
    fn norms() {
        let p1 = SymFunc::p(1);
        assert_eq!(inner(&p1, &p1), -&b1().inverse().unwrap());
        let p11 = SymFunc::p_lambda(Partition::new(vec![1, 1]).unwrap());
        assert_eq!(inner(&p11, &p11), &Coeff::from(2) / &(&b1() * &b1()));
        assert!(inner(&p1, &SymFunc::p(2)).is_zero());
    }

    #[test]
    fn adjoint_examples() {
        let binv = b1().inverse().unwrap();
        assert_eq!(adjoint_p(1, &SymFunc::p(1)), SymFunc::one().scale(&-&binv));
        assert!(adjoint_p(2, &SymFunc::p(1)).is_zero());
        let p11 = SymFunc::p_lambda(Partition::new(vec![1, 1]).unwrap());
        assert_eq!(adjoint_p(1, &p11), SymFunc::p(1).scale(&(&Coeff::from(-2) * &binv)));
    }

    #[test]
    fn adjointness_on_small_inputs() {
        let a = &SymFunc::p_lambda(Partition::new(vec![2, 1]).unwrap()) + &SymFunc::p_lambda(Partition::new(vec![1, 1, 1]).unwrap()).scale(&Coeff::q());
        let b = &SymFunc::p(1) + &SymFunc::p(2).scale(&Coeff::t());
        for k in 1..=2 {
            let lhs = inner(&adjoint_p(k, &a), &b);
            let rhs = inner(&a, &b.mul_p(&Partition::row(k)));
            assert_eq!(lhs, rhs);
        }
    }
}
