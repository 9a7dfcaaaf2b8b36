//! The class constants `A(gamma)`, `B(gamma)`, `C(gamma)`.
//!
//! `A = (gamma!)^(r - 2)` with `r` the formal commutator index,
//! `B = gamma! * A(2) ... A(gamma)` and
//! `C = gamma! * prod_{i=2..gamma} A(i) (i - 1)!`.
//! They are computed twice: as big integers and as prime-exponent maps.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::basis::{check_gamma, formal_commutator_count, MAX_GAMMA};
use crate::arith::factorize;
use crate::error::HallError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassConstants {
    pub gamma: usize,
    pub r_formal: u64,
    pub a: BigUint,
    pub b: BigUint,
    pub c: BigUint,
    /// `B / gamma!`.
    pub b_prime: BigUint,
    /// `C / gamma!`.
    pub c_prime: BigUint,
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

fn a_big(i: usize) -> BigUint {
    let r = formal_commutator_count(i).1;
    num_traits::pow::pow(factorial(i), r.saturating_sub(2) as usize)
}

pub fn class_constants(gamma: usize) -> Result<ClassConstants, HallError> {
    check_gamma(gamma, MAX_GAMMA)?;
    let fact = factorial(gamma);
    let mut b_prime = BigUint::one();
    let mut c_prime = BigUint::one();
    for i in 2..=gamma {
        let a = a_big(i);
        c_prime *= &a * factorial(i - 1);
        b_prime *= a;
    }
    Ok(ClassConstants {
        gamma,
        r_formal: formal_commutator_count(gamma).1,
        a: a_big(gamma),
        b: &fact * &b_prime,
        c: &fact * &c_prime,
        b_prime,
        c_prime,
    })
}

/// Prime-exponent form of a positive integer.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Factored(pub BTreeMap<u64, u64>);

impl Factored {
    fn factorial(n: usize) -> Self {
        let mut f = Factored::default();
        for k in 2..=n as u64 {
            for (p, e) in factorize(k) {
                *f.0.entry(p).or_insert(0) += e as u64;
            }
        }
        f
    }

    fn scaled(&self, k: u64) -> Self {
        Factored(self.0.iter().map(|(&p, &e)| (p, e * k)).filter(|&(_, e)| e > 0).collect())
    }

    fn times(&mut self, other: &Factored) {
        for (&p, &e) in &other.0 {
            *self.0.entry(p).or_insert(0) += e;
        }
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.0.keys().next_back().copied()
    }

    pub fn to_biguint(&self) -> BigUint {
        self.0.iter().fold(BigUint::one(), |acc, (&p, &e)| acc * num_traits::pow::pow(BigUint::from(p), e as usize))
    }

    /// Value modulo `m`, without forming the big integer.
    pub fn rem(&self, m: u64) -> u64 {
        self.0.iter().fold(1 % m, |acc, (&p, &e)| {
            let mut r = crate::arith::mod_pow(p, e, m);
            r = ((r as u128 * acc as u128) % m as u128) as u64;
            r
        })
    }
}

/// `(A, B, C)` as prime-exponent maps.
pub fn factored_constants(gamma: usize) -> Result<(Factored, Factored, Factored), HallError> {
    check_gamma(gamma, MAX_GAMMA)?;
    let a = |i: usize| Factored::factorial(i).scaled(formal_commutator_count(i).1.saturating_sub(2));
    let mut b = Factored::factorial(gamma);
    let mut c = Factored::factorial(gamma);
    for i in 2..=gamma {
        b.times(&a(i));
        c.times(&a(i));
        c.times(&Factored::factorial(i - 1));
    }
    Ok((a(gamma), b, c))
}

/// Strips every prime up to `bound` from `x` and reports whether 1 remains.
///
/// Division is by `p^64` first so huge constants shrink quickly.
pub fn primes_bounded(x: &BigUint, bound: u64) -> bool {
    if x.is_zero() {
        return false;
    }
    let mut rest = x.clone();
    for p in (2..=bound).filter(|&p| factorize(p).len() == 1 && factorize(p)[0].1 == 1) {
        let p_big = BigUint::from(p);
        let chunk = num_traits::pow::pow(p_big.clone(), 64);
        loop {
            let (q, r) = rest.div_rem(&chunk);
            if !r.is_zero() {
                break;
            }
            rest = q;
        }
        loop {
            let (q, r) = rest.div_rem(&p_big);
            if !r.is_zero() {
                break;
            }
            rest = q;
        }
    }
    rest.is_one()
}

/// Cross-checks the two routes and the prime bound.
pub fn verify_constants(k: &ClassConstants) -> Result<(), HallError> {
    let (a, b, c) = factored_constants(k.gamma)?;
    let fact = factorial(k.gamma);
    let pairs: Vec<(&str, &BigUint, &Factored)> = alloc::vec![("A", &k.a, &a), ("B", &k.b, &b), ("C", &k.c, &c)];
    for (name, big, fac) in pairs {
        if &fac.to_biguint() != big {
            return Err(HallError::Violation { law: "class-constants", detail: format!("{name}({}) routes disagree", k.gamma) });
        }
        if fac.largest_prime().is_some_and(|p| p > k.gamma as u64) || !primes_bounded(big, k.gamma as u64) {
            return Err(HallError::Violation {
                law: "class-constants",
                detail: format!("{name}({}) has a prime factor above {}", k.gamma, k.gamma),
            });
        }
    }
    if &fact * &k.b_prime != k.b || &fact * &k.c_prime != k.c {
        return Err(HallError::Violation { law: "class-constants", detail: "primed constants inconsistent".into() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_two() {
        let k = class_constants(2).unwrap();
        assert_eq!(k.r_formal, 5);
        assert_eq!(k.a, BigUint::from(8u32));
        assert_eq!(k.b, BigUint::from(16u32));
        assert_eq!(k.c, BigUint::from(16u32));
        verify_constants(&k).unwrap();
    }

    #[test]
    fn class_one() {
        let k = class_constants(1).unwrap();
        assert_eq!((k.b.clone(), k.c.clone()), (BigUint::one(), BigUint::one()));
        assert_eq!((k.b_prime.clone(), k.c_prime.clone()), (BigUint::one(), BigUint::one()));
        verify_constants(&k).unwrap();
    }

    #[test]
    fn class_three() {
        let k = class_constants(3).unwrap();
        let six19 = num_traits::pow::pow(BigUint::from(6u32), 19);
        assert_eq!(k.a, six19);
        assert_eq!(k.b, BigUint::from(48u32) * &six19);
        assert_eq!(k.c, BigUint::from(96u32) * &six19);
        verify_constants(&k).unwrap();
    }

    #[test]
    fn all_classes_have_small_primes() {
        for g in 1..=MAX_GAMMA {
            let k = class_constants(g).unwrap();
            verify_constants(&k).unwrap();
            let (_, b, _) = factored_constants(g).unwrap();
            assert_eq!(b.rem(1_000_003), (&k.b % 1_000_003u64).try_into().unwrap_or(0u64));
        }
        assert!(!primes_bounded(&BigUint::from(14u32), 5));
    }
}
