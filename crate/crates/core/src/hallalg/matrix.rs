use serde::Serialize;

use crate::coeffs::Coeff;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::symfunc::{partitions, Partition, SymFunc};

/// Matrix of a map `Lambda_source -> Lambda_target` in the power-sum basis,
/// rows and columns indexed by `partitions(target)` and `partitions(source)`.
/// A negative target degree means the zero map to the zero space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OpMatrix {
    pub source: usize,
    pub target: i64,
    #[serde(serialize_with = "ser_entries")]
    pub entries: Matrix<Coeff>,
}

fn ser_entries<S: serde::Serializer>(m: &Matrix<Coeff>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for row in m {
        seq.serialize_element(&row.iter().map(|c| c.to_string()).collect::<Vec<_>>())?;
    }
    seq.end()
}

fn dim(d: i64) -> usize {
    if d < 0 {
        0
    } else {
        partitions(d as usize).len()
    }
}

impl OpMatrix {
    pub fn new(source: usize, target: i64, entries: Matrix<Coeff>) -> Result<Self> {
        let (r, c) = (dim(target), dim(source as i64));
        if entries.len() != r || entries.iter().any(|row| row.len() != c) {
            return Err(Error::Argument(format!("matrix shape does not match degrees {source} -> {target}")));
        }
        Ok(OpMatrix { source, target, entries })
    }

    /// Columns are the images of `p_mu`, `|mu| = source`.
    pub fn from_images(source: usize, target: i64, images: &[SymFunc]) -> Self {
        let rows = if target < 0 { Vec::new() } else { partitions(target as usize) };
        let entries = rows.iter().map(|la| images.iter().map(|img| img.coeff(la)).collect()).collect();
        OpMatrix { source, target, entries }
    }

    pub fn zero(source: usize, target: i64) -> Self {
        OpMatrix { source, target, entries: vec![vec![Coeff::zero(); dim(source as i64)]; dim(target)] }
    }

    pub fn identity(d: usize) -> Self {
        OpMatrix { source: d, target: d as i64, entries: linalg::identity(dim(d as i64)) }
    }

    pub fn shift(&self) -> i64 {
        self.target - self.source as i64
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Coeff::is_zero)
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        dim(self.source as i64)
    }

    fn same_shape(&self, o: &OpMatrix) -> Result<()> {
        if self.source != o.source || self.target != o.target {
            return Err(Error::Argument(format!(
                "shape mismatch: {} -> {} vs {} -> {}",
                self.source, self.target, o.source, o.target
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &OpMatrix) -> Result<OpMatrix> {
        self.same_shape(o)?;
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
        Ok(OpMatrix { entries, ..*self })
    }

    pub fn sub(&self, o: &OpMatrix) -> Result<OpMatrix> {
        self.add(&o.scale(&-&Coeff::one()))
    }

    pub fn scale(&self, c: &Coeff) -> OpMatrix {
        let entries = self.entries.iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
        OpMatrix { entries, ..*self }
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &OpMatrix) -> Result<OpMatrix> {
        if first.target != self.source as i64 {
            if first.target < 0 {
                return Ok(OpMatrix::zero(first.source, first.target + self.shift()));
            }
            return Err(Error::Argument(format!("cannot compose {} -> {} after {} -> {}", self.source, self.target, first.source, first.target)));
        }
        let entries = if self.rows() == 0 {
            Vec::new()
        } else {
            linalg::mat_mul(&self.entries, &first.entries, first.cols())
        };
        Ok(OpMatrix { source: first.source, target: self.target, entries })
    }

    /// Image of a homogeneous element of degree `source`.
    pub fn apply(&self, f: &SymFunc) -> SymFunc {
        let cols = partitions(self.source);
        let rows: Vec<Partition> = if self.target < 0 { Vec::new() } else { partitions(self.target as usize) };
        let v: Vec<Coeff> = cols.iter().map(|mu| f.coeff(mu)).collect();
        SymFunc::from_terms(rows.into_iter().zip(&self.entries).map(|(la, row)| {
            let c: Coeff = row.iter().zip(&v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum();
            (la, c)
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_and_composition() {
        let p = Partition::row;
        // multiplication by p_1 from degree 1 to 2, then from 2 to 3
        let m1 = OpMatrix::from_images(1, 2, &[SymFunc::p_lambda(Partition::new(vec![1, 1]).unwrap())]);
        assert_eq!((m1.rows(), m1.cols()), (2, 1));
        let imgs: Vec<SymFunc> = partitions(2).into_iter().map(|mu| SymFunc::p_lambda(mu).mul_p(&p(1))).collect();
        let m2 = OpMatrix::from_images(2, 3, &imgs);
        let c = m2.compose(&m1).unwrap();
        assert_eq!((c.source, c.target), (1, 3));
        assert_eq!(c.apply(&SymFunc::p(1)), SymFunc::p_lambda(Partition::new(vec![1, 1, 1]).unwrap()));
        assert!(m1.compose(&m1).is_err());
        assert!(m1.sub(&m1).unwrap().is_zero());
        assert!(OpMatrix::zero(0, -1).compose(&OpMatrix::identity(0)).unwrap().is_zero());
        assert_eq!(OpMatrix::identity(2).apply(&SymFunc::p(2)), SymFunc::p(2));
    }
}
