//! Modified Macdonald polynomials as eigenvectors of `D_1`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::partition::{partitions, Partition};
use super::spectral::{spectral_eigenvalue, Orientation};
use super::symfunc::SymFunc;
use crate::coeffs::zpoly::BiPoly;
use crate::coeffs::{common_integer_form, from_bipoly, Coeff, HalfLaurent, Ring};
use crate::error::{Error, Result};
use crate::linalg;
use crate::vertexops::{Operator, OperatorContext};

pub type Basis = Arc<Vec<(Partition, SymFunc)>>;

/// Matrix of `op` from `Lambda_d` to `Lambda_{d + shift}` in the power-sum
/// basis; column `j` holds the image of the `j`-th partition of `d`.
pub fn operator_matrix(ctx: &OperatorContext, op: &Operator, d: usize) -> Result<linalg::Matrix<Coeff>> {
    let target = d as i64 + op.degree_shift();
    let rows = if target < 0 { Vec::new() } else { partitions(target as usize) };
    let cols = partitions(d);
    let images: Vec<SymFunc> = cols.iter().map(|mu| ctx.apply_basis(op, mu)).collect::<Result<_>>()?;
    Ok(rows.iter().map(|la| images.iter().map(|img| img.coeff(la)).collect()).collect())
}

/// Scales `v` so that its first nonzero entry is 1.
fn normalize_first(v: &mut [Coeff]) {
    if let Some(lead) = v.iter().find(|c| !c.is_zero()).cloned() {
        let inv = lead.inverse().expect("nonzero");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
    }
}

/// `(M - shift) v`.
fn shifted_mat_vec<R: Ring>(m: &linalg::Matrix<R>, v: &[R], shift: &R) -> Vec<R> {
    m.iter()
        .zip(v)
        .map(|(row, vi)| {
            let mut acc = shift.mul(vi).neg();
            for (mij, vj) in row.iter().zip(v) {
                if !mij.is_zero() && !vj.is_zero() {
                    acc = acc.add(&mij.mul(vj));
                }
            }
            acc
        })
        .collect()
}

/// First nonzero column of `prod (M - s)` over `shifts`.
fn project<R: Ring>(m: &linalg::Matrix<R>, shifts: &[R]) -> Option<Vec<R>> {
    let n = m.len();
    (0..n).find_map(|start| {
        let mut v = vec![R::zero(); n];
        v[start] = R::one();
        for s in shifts {
            v = shifted_mat_vec(m, &v, s);
        }
        v.iter().any(|c| !c.is_zero()).then_some(v)
    })
}

/// All `P_lambda` with `|lambda| = d`, in reverse-lexicographic order.
pub fn macdonald_basis(ctx: &OperatorContext, d: usize, orientation: Orientation) -> Result<Vec<(Partition, SymFunc)>> {
    let labels = partitions(d);
    let m = operator_matrix(ctx, &Operator::Dn(1), d)?;
    let p1 = SymFunc::p(1);
    let values: Vec<Coeff> = labels.iter().map(|la| spectral_eigenvalue(&p1, la, orientation)).collect();
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] == values[j] {
                return Err(Error::Degeneracy(format!(
                    "P_{} and P_{} share the D_1 eigenvalue {}",
                    labels[i], labels[j], values[i]
                )));
            }
        }
    }
    // With distinct eigenvalues, prod_{j != i} (M - e_j) maps onto the e_i
    // eigenline, so only matrix-vector products are needed. The entries are
    // Laurent polynomials in practice, which keeps this division-free.
    let laurent = m.iter().flatten().chain(&values).all(Coeff::is_laurent);
    let n = labels.len();
    let mut out = Vec::with_capacity(n);
    for (i, (la, e)) in labels.iter().zip(&values).enumerate() {
        let others: Vec<&Coeff> = values.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, c)| c).collect();
        let not_eigen = || {
            Error::Convention(format!("{e} is not an eigenvalue of D_1 on degree {d} (orientation {orientation})"))
        };
        let mut v: Vec<Coeff> = if laurent {
            // Integer images of M and the eigenvalues under one common scaling.
            let flat: Vec<&HalfLaurent> =
                m.iter().flatten().chain(&values).map(|c| c.as_laurent().expect("laurent")).collect();
            let mut ints = common_integer_form(&flat).into_iter();
            let mi: linalg::Matrix<BiPoly> = (0..n).map(|_| ints.by_ref().take(n).collect()).collect();
            let ei: Vec<BiPoly> = ints.collect();
            let shifts: Vec<BiPoly> = ei.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, c)| c.clone()).collect();
            let v = project(&mi, &shifts).ok_or_else(not_eigen)?;
            if shifted_mat_vec(&mi, &v, &ei[i]).iter().any(|c| !Ring::is_zero(c)) {
                return Err(not_eigen());
            }
            v.iter().map(|p| Coeff::from(from_bipoly(p))).collect()
        } else {
            let shifts: Vec<Coeff> = others.into_iter().cloned().collect();
            let v = project(&m, &shifts).ok_or_else(not_eigen)?;
            if shifted_mat_vec(&m, &v, e).iter().any(|c| !c.is_zero()) {
                return Err(not_eigen());
            }
            v
        };
        normalize_first(&mut v);
        let f = SymFunc::from_terms(labels.iter().cloned().zip(v));
        out.push((la.clone(), f));
    }
    Ok(out)
}

/// Memo of Macdonald bases keyed by degree and orientation.
#[derive(Default)]
pub struct MacdonaldCache {
    bases: Mutex<HashMap<(usize, Orientation), Basis>>,
}

impl MacdonaldCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&self, d: usize, orientation: Orientation, basis: Vec<(Partition, SymFunc)>) {
        self.bases.lock().expect("cache lock").insert((d, orientation), Arc::new(basis));
    }

    pub fn get(&self, d: usize, orientation: Orientation) -> Option<Basis> {
        self.bases.lock().expect("cache lock").get(&(d, orientation)).cloned()
    }

    pub fn entries(&self) -> Vec<((usize, Orientation), Basis)> {
        let mut v: Vec<_> = self.bases.lock().expect("cache lock").iter().map(|(k, b)| (*k, b.clone())).collect();
        v.sort_by_key(|(k, _)| (k.0, k.1 == Orientation::Inverted));
        v
    }

    pub fn basis(&self, ctx: &OperatorContext, d: usize, orientation: Orientation) -> Result<Basis> {
        if let Some(b) = self.get(d, orientation) {
            return Ok(b);
        }
        let b = Arc::new(macdonald_basis(ctx, d, orientation)?);
        self.bases.lock().expect("cache lock").insert((d, orientation), b.clone());
        Ok(b)
    }

    /// `P_lambda`; `max_cache_degree` bounds which degrees may be computed.
    pub fn macdonald(
        &self,
        ctx: &OperatorContext,
        lambda: &Partition,
        max_cache_degree: usize,
        orientation: Orientation,
    ) -> Result<SymFunc> {
        let d = lambda.size();
        if d > max_cache_degree {
            return Err(Error::Capacity(format!("|{lambda}| = {d} exceeds the maximum degree {max_cache_degree}")));
        }
        let b = self.basis(ctx, d, orientation)?;
        Ok(b.iter().find(|(la, _)| la == lambda).map(|(_, f)| f.clone()).expect("every partition has an entry"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::inner;

    #[test]
    fn low_degrees() {
        let ctx = OperatorContext::default();
        let cache = MacdonaldCache::new();
        let o = Orientation::Inverted;
        assert_eq!(cache.macdonald(&ctx, &Partition::empty(), 3, o).unwrap(), SymFunc::one());
        assert_eq!(cache.macdonald(&ctx, &Partition::row(1), 3, o).unwrap(), SymFunc::p(1));
        let b = cache.basis(&ctx, 2, o).unwrap();
        assert_eq!(b.len(), 2);
        assert!(inner(&b[0].1, &b[1].1).is_zero());
        assert!(cache.macdonald(&ctx, &Partition::row(4), 3, o).is_err());
    }

    #[test]
    fn wrong_orientation_is_reported() {
        let ctx = OperatorContext::default();
        let err = macdonald_basis(&ctx, 1, Orientation::Direct).unwrap_err();
        assert!(matches!(err, Error::Convention(_)));
    }
}
