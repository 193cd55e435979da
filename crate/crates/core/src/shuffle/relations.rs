use std::collections::BTreeMap;

use super::build::{word_elem, words_in_window};
use crate::coeffs::Coeff;
use crate::error::{Error, Result};
use crate::linalg::nullspace;

/// Kernel of `word -> word_elem(word)` on the listed words, one coefficient
/// vector (indexed like `words`) per basis element.
pub fn find_linear_relations(words: &[Vec<i32>]) -> Result<Vec<Vec<Coeff>>> {
    let Some(first) = words.first() else {
        return Ok(Vec::new());
    };
    let (len, total): (usize, i32) = (first.len(), first.iter().sum());
    if words.iter().any(|w| w.len() != len || w.iter().sum::<i32>() != total) {
        return Err(Error::Argument("words must share length and total degree".into()));
    }
    // All word elements share the canonical denominator and unit scalar, so
    // relations among them are relations among numerators.
    let nums = words.iter().map(|w| word_elem(w).map(|e| e.num().clone())).collect::<Result<Vec<_>>>()?;
    let mut rows: BTreeMap<Vec<i32>, Vec<Coeff>> = BTreeMap::new();
    for (col, p) in nums.iter().enumerate() {
        for (e, c) in p.terms() {
            rows.entry(e.clone()).or_insert_with(|| vec![Coeff::zero(); words.len()])[col] = Coeff::from(c.clone());
        }
    }
    let m: Vec<Vec<Coeff>> = rows.into_values().collect();
    Ok(nullspace(&m, words.len()))
}

/// Words of a window with the kernel vectors of their relations.
pub type WindowRelations = (Vec<Vec<i32>>, Vec<Vec<Coeff>>);

/// Relations among all words of length `len`, entries in `lo..=hi`, summing
/// to `total`. Returns the words alongside the kernel vectors.
pub fn relations_in_window(len: usize, lo: i32, hi: i32, total: i32) -> Result<WindowRelations> {
    let words = words_in_window(len, lo, hi, total);
    let rels = find_linear_relations(&words)?;
    Ok((words, rels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shuffle::ShuffleElem;

    fn combine(words: &[Vec<i32>], rel: &[Coeff]) -> ShuffleElem {
        let n = words[0].len();
        let mut acc = ShuffleElem::canonical(n, Coeff::one(), crate::shuffle::ZPoly::zero(n)).unwrap();
        for (w, c) in words.iter().zip(rel) {
            acc = acc.try_add(&word_elem(w).unwrap().scale(c)).unwrap();
        }
        acc
    }

    #[test]
    fn monomials_are_independent() {
        let words: Vec<Vec<i32>> = vec![vec![2]];
        assert!(find_linear_relations(&words).unwrap().is_empty());
        assert!(find_linear_relations(&[vec![1], vec![1]]).unwrap().len() == 1);
    }

    #[test]
    fn duplicate_word_gives_difference() {
        let rels = find_linear_relations(&[vec![1, 0], vec![1, 0]]).unwrap();
        assert_eq!(rels, vec![vec![-Coeff::one(), Coeff::one()]]);
    }

    #[test]
    fn window_relations_are_exact() {
        for total in [0, 1] {
            let (words, rels) = relations_in_window(2, -1, 2, total).unwrap();
            for r in &rels {
                assert!(combine(&words, r).is_zero());
            }
        }
    }

    #[test]
    fn mixed_shapes_are_rejected() {
        assert!(find_linear_relations(&[vec![1, 0], vec![1]]).is_err());
    }
}
