//! Skew shapes and ribbon (rim-hook) Schur functions.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::bases::skew_schur_q;
use super::partition::Partition;
use super::symfunc::SymFunc;
use crate::coeffs::Coeff;
use crate::error::{Error, Result};

/// Word over `{0, 1}` describing a ribbon of `len + 1` cells: starting from a
/// cell on the bottom row, `0` steps one cell left and `1` steps one cell up.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RibbonWord(Vec<u8>);

impl RibbonWord {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Argument(format!("ribbon word entries must be 0 or 1: {bits:?}")));
        }
        Ok(RibbonWord(bits))
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of cells of the ribbon.
    pub fn size(&self) -> usize {
        self.0.len() + 1
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    /// `self`, then `junction`, then `other`.
    pub fn join(&self, junction: u8, other: &RibbonWord) -> RibbonWord {
        let mut v = self.0.clone();
        v.push(junction);
        v.extend_from_slice(&other.0);
        RibbonWord(v)
    }

    /// All words of length `n`.
    pub fn all(n: usize) -> Vec<RibbonWord> {
        (0..1u32 << n).map(|m| RibbonWord((0..n).map(|i| ((m >> (n - 1 - i)) & 1) as u8).collect())).collect()
    }
}

impl FromStr for RibbonWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bits: Option<Vec<u8>> = s
            .chars()
            .map(|c| match c {
                '0' => Some(0),
                '1' => Some(1),
                _ => None,
            })
            .collect();
        RibbonWord::new(bits.ok_or_else(|| Error::Parse(format!("ribbon word must be a 0/1 string: {s:?}")))?)
    }
}

impl fmt::Display for RibbonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Skew diagram `outer / inner`, rows numbered from the bottom.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::Argument(format!("{inner} does not fit inside {outer}")));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    /// Cells as `(row, column)`, both 0-based.
    pub fn cells(&self) -> BTreeSet<(usize, usize)> {
        (0..self.outer.len()).flat_map(|r| (self.inner.part(r)..self.outer.part(r)).map(move |c| (r, c))).collect()
    }

    pub fn has_2x2_block(&self) -> bool {
        let cells = self.cells();
        cells.iter().any(|&(r, c)| {
            cells.contains(&(r + 1, c)) && cells.contains(&(r, c + 1)) && cells.contains(&(r + 1, c + 1))
        })
    }

    pub fn is_connected(&self) -> bool {
        let cells = self.cells();
        let Some(&start) = cells.iter().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some((r, c)) = stack.pop() {
            let nbrs = [(r + 1, c), (r, c + 1), (r.wrapping_sub(1), c), (r, c.wrapping_sub(1))];
            for n in nbrs {
                if cells.contains(&n) && seen.insert(n) {
                    stack.push(n);
                }
            }
        }
        seen.len() == cells.len()
    }

    pub fn is_ribbon(&self) -> bool {
        self.size() > 0 && self.is_connected() && !self.has_2x2_block()
    }
}

pub fn ribbon_shape(eps: &RibbonWord) -> SkewShape {
    let (mut row, mut col) = (0i64, 0i64);
    let mut cells = vec![(row, col)];
    for &b in eps.bits() {
        if b == 0 {
            col -= 1;
        } else {
            row += 1;
        }
        cells.push((row, col));
    }
    let min_col = cells.iter().map(|c| c.1).min().unwrap_or(0);
    let rows = row as usize + 1;
    let mut outer = vec![0usize; rows];
    let mut inner = vec![usize::MAX; rows];
    for (r, c) in cells {
        let (r, c) = (r as usize, (c - min_col) as usize);
        outer[r] = outer[r].max(c + 1);
        inner[r] = inner[r].min(c);
    }
    SkewShape {
        outer: Partition::from_unsorted(outer),
        inner: Partition::from_unsorted(inner),
    }
}

pub fn skew_schur(shape: &SkewShape) -> SymFunc<Coeff> {
    skew_schur_q(&shape.outer, &shape.inner).to_coeff()
}

pub fn ribbon_schur(eps: &RibbonWord) -> SymFunc<Coeff> {
    skew_schur(&ribbon_shape(eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::bases::{basis_element, Basis};

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn word(s: &str) -> RibbonWord {
        s.parse().unwrap()
    }

    #[test]
    fn shapes_of_small_words() {
        let s = ribbon_shape(&word(""));
        assert_eq!((s.outer(), s.inner()), (&part(&[1]), &part(&[])));
        let s = ribbon_shape(&word("00"));
        assert_eq!((s.outer(), s.inner()), (&part(&[3]), &part(&[])));
        let s = ribbon_shape(&word("01"));
        assert_eq!((s.outer(), s.inner()), (&part(&[2, 1]), &part(&[])));
        let s = ribbon_shape(&word("10"));
        assert_eq!((s.outer(), s.inner()), (&part(&[2, 2]), &part(&[1])));
    }

    #[test]
    fn skew_schur_examples() {
        let sh = |o: &[usize], i: &[usize]| skew_schur(&SkewShape::new(part(o), part(i)).unwrap());
        assert_eq!(sh(&[2], &[]), basis_element(Basis::H, &part(&[2])).to_coeff());
        assert_eq!(sh(&[1, 1], &[]), basis_element(Basis::E, &part(&[2])).to_coeff());
        assert_eq!(sh(&[2, 2], &[1]), basis_element(Basis::S, &part(&[2, 1])).to_coeff());
        assert!(SkewShape::new(part(&[1]), part(&[2])).is_err());
    }

    #[test]
    fn ribbon_schur_examples() {
        assert_eq!(ribbon_schur(&word("11")), basis_element(Basis::E, &part(&[3])).to_coeff());
        let h1h2_minus_h3 = &basis_element(Basis::H, &part(&[2, 1])) - &basis_element(Basis::H, &part(&[3]));
        assert_eq!(ribbon_schur(&word("01")), h1h2_minus_h3.to_coeff());
        let alt = &(&ribbon_schur(&word("00")) - &ribbon_schur(&word("01"))) + &ribbon_schur(&word("11"));
        assert_eq!(alt, SymFunc::p(3));
    }

    #[test]
    fn ribbons_have_no_2x2_block() {
        for n in 0..=6 {
            for w in RibbonWord::all(n) {
                let s = ribbon_shape(&w);
                assert!(s.is_ribbon(), "{w}");
                assert_eq!(s.size(), n + 1);
            }
        }
        assert!(SkewShape::new(part(&[2, 2]), part(&[])).unwrap().has_2x2_block());
        assert!(!SkewShape::new(part(&[2, 1]), part(&[1])).unwrap().is_connected());
    }

    #[test]
    fn rejects_bad_words() {
        assert!(RibbonWord::new(vec![2]).is_err());
        assert!("012".parse::<RibbonWord>().is_err());
    }
}
