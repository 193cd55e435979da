use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer partition: weakly decreasing positive parts.
///
/// Ordered by size, then reverse-lexicographically within a size, so that
/// `(3) < (2,1) < (1,1,1)`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Argument(format!("partition parts must be positive: {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Argument(format!("partition parts must be weakly decreasing: {parts:?}")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn row(k: usize) -> Self {
        Partition::from_unsorted(vec![k])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Multiset union of parts; `p_self * p_other = p_union`.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Partition::from_unsorted(v)
    }

    /// Removes one copy of part `k`, if present.
    pub fn remove_part(&self, k: usize) -> Option<Partition> {
        let i = self.0.iter().position(|&p| p == k)?;
        let mut v = self.0.clone();
        v.remove(i);
        Some(Partition(v))
    }

    pub fn multiplicity(&self, k: usize) -> usize {
        self.0.iter().filter(|&&p| p == k).count()
    }

    /// `z_lambda = prod_k k^{m_k} m_k!`.
    pub fn z(&self) -> BigInt {
        let mut acc = BigInt::one();
        let mut i = 0;
        while i < self.0.len() {
            let k = self.0[i];
            let m = self.multiplicity(k);
            for j in 1..=m {
                acc *= BigInt::from(k) * BigInt::from(j);
            }
            i += m;
        }
        acc
    }

    pub fn contains(&self, inner: &Partition) -> bool {
        inner.len() <= self.len() && inner.0.iter().enumerate().all(|(i, &p)| p <= self.0[i])
    }

    pub fn conjugate(&self) -> Partition {
        let m = self.part(0);
        Partition((1..=m).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        let counts: Vec<usize> = (0..8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        let p3 = partitions(3);
        assert_eq!(p3.iter().map(|p| p.parts().to_vec()).collect::<Vec<_>>(), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert!(p3.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn z_values() {
        let z = |v: Vec<usize>| Partition::new(v).unwrap().z();
        assert_eq!(z(vec![]), BigInt::from(1));
        assert_eq!(z(vec![1, 1]), BigInt::from(2));
        assert_eq!(z(vec![2, 1]), BigInt::from(2));
        assert_eq!(z(vec![2, 2, 1]), BigInt::from(8));
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![]).is_ok());
        let p: Partition = serde_json::from_str("[2,1]").unwrap();
        assert_eq!(p.parts(), &[2, 1]);
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }
}
