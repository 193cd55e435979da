use serde::Serialize;

use super::elem::{canonical_denominator, Denominator, ShuffleElem, ZPoly};
use crate::coeffs::{Coeff, HalfLaurent};
use crate::error::{Error, Result};

/// Exact quotient of `p` by `z_i - c z_j`, or `None` if it does not divide.
pub fn divide_linear(p: &ZPoly, i: usize, j: usize, c: &HalfLaurent) -> Option<ZPoly> {
    use std::collections::BTreeMap;
    let n = p.n();
    // Group by the exponents other than i, j and by e_i + e_j; within a group
    // the polynomial is univariate in z_i / z_j.
    let mut groups: BTreeMap<Vec<i32>, BTreeMap<i32, HalfLaurent>> = BTreeMap::new();
    for (e, v) in p.terms() {
        let mut key = e.clone();
        key[i] = 0;
        key[j] = e[i] + e[j];
        groups.entry(key).or_default().insert(e[i], v.clone());
    }
    let mut out = ZPoly::zero(n);
    for (key, poly) in groups {
        let (&lo, _) = poly.first_key_value().expect("nonempty group");
        let (&hi, _) = poly.last_key_value().expect("nonempty group");
        // Synthetic division from the top: b_{a-1} = c_a + c * b_a.
        let mut carry = HalfLaurent::zero();
        for a in (lo..=hi).rev() {
            let ca = poly.get(&a).cloned().unwrap_or_else(HalfLaurent::zero);
            let b = &ca + &(c * &carry);
            if a == lo {
                if !b.is_zero() {
                    return None;
                }
                break;
            }
            // b is the quotient coefficient of x^{a-1}
            let mut e = key.clone();
            e[i] = a - 1;
            e[j] = key[j] - a;
            out.add_term(e, b.clone());
            carry = b;
        }
    }
    Some(out)
}

/// Outcome of the membership test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Membership {
    /// Numerator divisible by `prod_{i<j} (z_i - z_j)^2`.
    pub form_ok: bool,
    /// The extracted `p` is symmetric.
    pub symmetric: bool,
    /// Wheel conditions hold (vacuous for fewer than three variables).
    pub wheel_ok: bool,
    pub diagnostics: Vec<String>,
}

impl Membership {
    pub fn passes(&self) -> bool {
        self.form_ok && self.symmetric && self.wheel_ok
    }
}

/// The six assignments of `{q, t, 1/(qt)}` to `(z1/z2, z2/z3, z3/z1)`, as the
/// substitution `z1 = alpha z3`, `z2 = beta z3`.
fn wheel_points() -> Vec<(HalfLaurent, HalfLaurent)> {
    let vals = [HalfLaurent::q_pow(1), HalfLaurent::t_pow(1), HalfLaurent::qt_pow(-2, -2)];
    let mut out: Vec<(HalfLaurent, HalfLaurent)> = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            if a == b {
                continue;
            }
            let (r12, r23) = (&vals[a], &vals[b]);
            let pt = (r12 * r23, r23.clone());
            if !out.contains(&pt) {
                out.push(pt);
            }
        }
    }
    out
}

/// `p(alpha z3, beta z3, z3, ...)`, with `z1`, `z2` eliminated.
fn substitute_wheel(p: &ZPoly, alpha: &HalfLaurent, beta: &HalfLaurent) -> ZPoly {
    let mut out = ZPoly::zero(p.n());
    for (e, c) in p.terms() {
        let mut f = e.clone();
        f[2] += e[0] + e[1];
        f[0] = 0;
        f[1] = 0;
        let w = &(c * &alpha.pow_i(e[0])) * &beta.pow_i(e[1]);
        out.add_term(f, w);
    }
    out
}

trait PowI {
    fn pow_i(&self, k: i32) -> HalfLaurent;
}

impl PowI for HalfLaurent {
    /// Integer power of a monomial.
    fn pow_i(&self, k: i32) -> HalfLaurent {
        if k >= 0 {
            self.pow(k as u32)
        } else {
            self.unit_inverse().expect("monomial").pow((-k) as u32)
        }
    }
}

/// Checks the shuffle-algebra form and the wheel conditions.
pub fn is_in_s(p: &ShuffleElem) -> Result<Membership> {
    let n = p.n();
    let mut diagnostics = Vec::new();
    let mut num = p.num().clone();
    let mut scalar = p.scalar().clone();
    if let Denominator::General(d) = p.den() {
        // Accept a constant multiple c / r of the canonical denominator.
        let canon = canonical_denominator(n);
        let (e, c) = d.terms().next().expect("nonzero denominator");
        let r = canon.coeff(e);
        if r.is_zero() || canon.scale(c) != d.scale(&r) {
            return Err(Error::Form(format!(
                "denominator is not a constant multiple of prod_(i != j) (z_i - q z_j)(z_i - t z_j) in {n} variables"
            )));
        }
        num = num.scale(&r);
        scalar = scalar.checked_div(&Coeff::from(c.clone()))?;
    }
    let mut form_ok = true;
    'pairs: for i in 0..n {
        for j in i + 1..n {
            for _ in 0..2 {
                match divide_linear(&num, i, j, &HalfLaurent::one()) {
                    Some(qt) => num = qt,
                    None => {
                        diagnostics.push(format!("numerator not divisible by (z_{} - z_{})^2", i + 1, j + 1));
                        form_ok = false;
                        break 'pairs;
                    }
                }
            }
        }
    }
    if !form_ok {
        return Ok(Membership { form_ok, symmetric: false, wheel_ok: false, diagnostics });
    }
    let sym = ShuffleElem::canonical(n, scalar, num.clone())?;
    let symmetric = sym.is_symmetric();
    if !symmetric {
        diagnostics.push("extracted p is not symmetric".into());
    }
    let mut wheel_ok = true;
    if n >= 3 {
        for (alpha, beta) in wheel_points() {
            if !substitute_wheel(&num, &alpha, &beta).is_zero() {
                diagnostics.push(format!("wheel condition fails at z1 = ({alpha}) z3, z2 = ({beta}) z3"));
                wheel_ok = false;
            }
        }
    }
    Ok(Membership { form_ok, symmetric, wheel_ok, diagnostics })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shuffle::{p_mn, word_elem};

    #[test]
    fn linear_division() {
        let n = 2;
        let f = &super::super::elem::linear(n, 0, 1, HalfLaurent::q_pow(1))
            * &ZPoly::monomial(vec![2, -1], HalfLaurent::t_pow(1));
        let g = divide_linear(&f, 0, 1, &HalfLaurent::q_pow(1)).unwrap();
        assert_eq!(g, ZPoly::monomial(vec![2, -1], HalfLaurent::t_pow(1)));
        assert!(divide_linear(&f, 0, 1, &HalfLaurent::one()).is_none());
    }

    #[test]
    fn basic_members() {
        assert!(is_in_s(&word_elem(&[0, 0]).unwrap()).unwrap().passes());
        assert!(is_in_s(&word_elem(&[0]).unwrap()).unwrap().passes());
        assert!(is_in_s(&p_mn(1, 2).unwrap()).unwrap().passes());
        assert!(is_in_s(&p_mn(0, 2).unwrap()).unwrap().passes());
    }

    #[test]
    fn non_members_are_diagnosed() {
        // 1 over the canonical denominator in two variables has no (z1 - z2)^2
        let e = ShuffleElem::canonical(2, Coeff::one(), ZPoly::one(2)).unwrap();
        let m = is_in_s(&e).unwrap();
        assert!(!m.form_ok && !m.diagnostics.is_empty());
        // prod (z_i - z_j)^2 with p = 1 in three variables violates the wheel
        let mut num = ZPoly::one(3);
        for i in 0..3 {
            for j in i + 1..3 {
                let l = super::super::elem::linear(3, i, j, HalfLaurent::one());
                num = &(&num * &l) * &l;
            }
        }
        let m = is_in_s(&ShuffleElem::canonical(3, Coeff::one(), num).unwrap()).unwrap();
        assert!(m.form_ok && m.symmetric && !m.wheel_ok);
        let bad = ShuffleElem::new(2, Coeff::one(), ZPoly::one(2), Denominator::General(ZPoly::one(2))).unwrap();
        assert!(matches!(is_in_s(&bad), Err(Error::Form(_))));
    }
}
