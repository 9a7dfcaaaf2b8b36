//! The symbolic collector against concrete unitriangular groups.
//!
//! `UT_{gamma+1}(Z/M)` has class `gamma`, so every identity of the free
//! nilpotent group of class `gamma` must hold for arbitrary `a`, `b` there.

use num_bigint::BigUint;
use ordcalc_core::hall::{
    check_hall_formula, class_constants, divisibility_check, evaluate_basis, evaluate_word, hall_formula_check,
    hall_polynomials, FreeNilpotent, Letter,
};
use ordcalc_core::{Ambient, GroupArith, GroupElement, Unitriangular};
use proptest::prelude::*;

fn matrix(dim: usize, modulus: u64, upper: &[u64]) -> GroupElement {
    let mut entries = vec![0u64; dim * dim];
    let mut it = upper.iter().cycle();
    for i in 0..dim {
        entries[i * dim + i] = 1;
        for j in i + 1..dim {
            entries[i * dim + j] = *it.next().unwrap();
        }
    }
    Unitriangular::from_entries(dim, modulus, entries).unwrap().into()
}

fn setup(gamma: usize) -> (FreeNilpotent, Vec<ordcalc_core::hall::HallPolynomial>) {
    let f = FreeNilpotent::new(gamma).unwrap();
    let p = hall_polynomials(&f).unwrap();
    (f, p)
}

#[test]
fn symbolic_formula_up_to_thirty() {
    for gamma in 1..=5 {
        let (f, p) = setup(gamma);
        check_hall_formula(&f, &p, 30).unwrap();
        for poly in &p {
            assert!(poly.poly.coefficients().len() == poly.weight);
            assert_eq!(poly.poly.eval(0).unwrap(), 0);
            assert_eq!(poly.poly.eval(1).unwrap(), 0);
        }
    }
}

#[test]
fn divisibility_sweep() {
    for gamma in 2..=6 {
        let (_, p) = setup(gamma);
        let fact: u64 = (1..=gamma as u64).product();
        for m in 1..=60u64 {
            assert!(divisibility_check(&p, gamma, &BigUint::from(fact * m)).unwrap());
        }
        let huge = BigUint::from(fact) * BigUint::from(u64::MAX) * BigUint::from(977u32);
        assert!(divisibility_check(&p, gamma, &huge).unwrap());
    }
}

#[test]
fn constants_grow_with_small_primes_only() {
    for gamma in 1..=6 {
        let k = class_constants(gamma).unwrap();
        ordcalc_core::hall::verify_constants(&k).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hall_formula_in_unitriangular_matrices(
        gamma in 2usize..=6,
        modulus in 2u64..(1 << 31),
        ua in prop::collection::vec(any::<u64>(), 21),
        ub in prop::collection::vec(any::<u64>(), 21),
    ) {
        let (f, p) = setup(gamma);
        let a = matrix(gamma + 1, modulus, &ua);
        let b = matrix(gamma + 1, modulus, &ub);
        let g = Ambient::like(&a);
        hall_formula_check(&g, &a, &b, f.basis(), &p, 30).unwrap();
    }

    #[test]
    fn collected_words_evaluate_like_the_letters(
        gamma in 2usize..=5,
        modulus in 2u64..(1 << 20),
        ua in prop::collection::vec(any::<u64>(), 15),
        ub in prop::collection::vec(any::<u64>(), 15),
        word in prop::collection::vec((0usize..64, -4i128..=4), 0..=12),
    ) {
        let f = FreeNilpotent::new(gamma).unwrap();
        let r = f.basis().len();
        let letters: Vec<Letter> = word.iter().map(|&(i, e)| Letter::new(i % r, e)).collect();
        let a = matrix(gamma + 1, modulus, &ua);
        let b = matrix(gamma + 1, modulus, &ub);
        let g = Ambient::like(&a);
        let vals = evaluate_basis(&g, &a, &b, f.basis());
        let direct = letters.iter().fold(g.identity(), |acc, l| g.mul(&acc, &g.pow_wide(&vals[l.index], l.exponent)));
        let collected = f.collect(&letters).unwrap();
        prop_assert_eq!(evaluate_word(&g, &vals, &collected), direct);
    }
}
