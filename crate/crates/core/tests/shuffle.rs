use symop::shuffle::{
    find_linear_relations, is_in_s, p_mn, rat_eq, relations_in_window, shuffle_mul, upsilon_ribbon, word_elem,
    RibbonReading, ShuffleElem,
};
use symop::{Coeff, RibbonWord};

fn hook_sum(m: i64, n: usize, k: usize, reading: RibbonReading) -> ShuffleElem {
    let mut acc: Option<ShuffleElem> = None;
    for j in 0..k {
        let mut bits = vec![0u8; k - 1 - j];
        bits.extend(std::iter::repeat_n(1, j));
        let term = upsilon_ribbon(m, n, &RibbonWord::new(bits).unwrap(), k, reading).unwrap();
        let term = if j % 2 == 0 { term } else { term.scale(&-&Coeff::one()) };
        acc = Some(match acc {
            None => term,
            Some(a) => a.try_add(&term).unwrap(),
        });
    }
    acc.unwrap()
}

/// `(q^k - 1)(t^k - 1) / ((q - 1)(t - 1))^{kn}`
fn hook_ratio(k: usize, n: usize) -> Coeff {
    let one = Coeff::one();
    let qk = &Coeff::qt_pow(2 * k as i32, 0) - &one;
    let tk = &Coeff::qt_pow(0, 2 * k as i32) - &one;
    let base = &(&Coeff::q() - &one) * &(&Coeff::t() - &one);
    (&qk * &tk).checked_div(&base.pow((k * n) as i32).unwrap()).unwrap()
}

#[test]
fn alternating_hook_sum_gives_p_mn() {
    for (m, n, k) in [(0, 1, 2), (1, 1, 2), (0, 1, 3), (1, 1, 3), (1, 2, 2)] {
        let lhs = hook_sum(m, n, k, RibbonReading::ByN);
        let rhs = p_mn(k as i64 * m, k * n).unwrap().scale(&hook_ratio(k, n));
        assert!(rat_eq(&lhs, &rhs), "(m, n, k) = ({m}, {n}, {k})");
    }
}

#[test]
fn other_ribbon_reading_breaks_the_hook_sum() {
    for (m, k) in [(0, 2), (1, 2)] {
        let lhs = hook_sum(m, 1, k, RibbonReading::ByK);
        let rhs = p_mn(k as i64 * m, k).unwrap().scale(&hook_ratio(k, 1));
        assert!(!rat_eq(&lhs, &rhs), "(m, k) = ({m}, {k})");
    }
}

#[test]
fn products_stay_in_the_algebra() {
    let a = word_elem(&[1]).unwrap();
    let b = p_mn(1, 2).unwrap();
    let ab = shuffle_mul(&a, &b).unwrap();
    assert_eq!(ab.n(), 3);
    assert!(is_in_s(&ab).unwrap().passes());
    let ba = shuffle_mul(&b, &a).unwrap();
    assert!(is_in_s(&ba).unwrap().passes());
    assert!(!rat_eq(&ab, &ba));
}

#[test]
fn relation_counts() {
    let (words, rels) = relations_in_window(2, -1, 2, 0).unwrap();
    assert_eq!((words.len(), rels.len()), (3, 0));
    let (words, rels) = relations_in_window(2, -1, 2, 1).unwrap();
    assert_eq!((words.len(), rels.len()), (4, 1));
    // the relation really annihilates the combination of word elements
    let combo = words
        .iter()
        .zip(&rels[0])
        .map(|(w, c)| word_elem(w).unwrap().scale(c))
        .reduce(|a, b| a.try_add(&b).unwrap())
        .unwrap();
    assert!(rat_eq(&combo, &combo.scale(&Coeff::zero())));
    assert!(find_linear_relations(&[vec![0, 1], vec![1]]).is_err());
}

#[test]
fn text_round_trip_of_constructed_elements() {
    for e in [p_mn(2, 3).unwrap(), word_elem(&[1, -1]).unwrap(), ShuffleElem::unit()] {
        let back: ShuffleElem = e.to_string().parse().unwrap();
        assert!(rat_eq(&e, &back));
    }
}
