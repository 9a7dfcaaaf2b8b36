//! Small-integer number theory used throughout: divisors, valuations,
//! prime stripping and exact ratios.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use num_integer::Integer;

/// Exact positive rational, always kept in lowest terms.
pub type Ratio = num_rational::Ratio<u64>;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// All positive divisors of `n` in increasing order. `n` must be nonzero.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0, "divisors of zero");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorization by trial division, primes increasing.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n > 0 && p > 1);
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

pub fn largest_prime_factor(n: u64) -> Option<u64> {
    factorize(n).last().map(|&(p, _)| p)
}

pub fn smallest_prime_factor(n: u64) -> Option<u64> {
    factorize(n).first().map(|&(p, _)| p)
}

/// True when every prime factor of `n` is at most `bound`.
pub fn primes_at_most(n: u64, bound: u64) -> bool {
    largest_prime_factor(n).is_none_or(|p| p <= bound)
}

/// Largest divisor of `e` coprime to both `x` and `y`.
pub fn coprime_part(mut e: u64, x: u64, y: u64) -> u64 {
    for (p, _) in factorize(x).into_iter().chain(factorize(y)) {
        while e.is_multiple_of(p) {
            e /= p;
        }
    }
    e
}

/// `base^exp mod modulus`, with `modulus >= 1`.
pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc = 1u128;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

pub fn binomial2(r: u64) -> u64 {
    r * r.saturating_sub(1) / 2
}

pub fn ratio(num: u64, den: u64) -> Ratio {
    Ratio::new(num, den)
}

/// `p/q` form, denominators shown even when 1.
pub fn format_ratio(r: &Ratio) -> String {
    let mut s = String::new();
    let _ = write!(s, "{}/{}", r.numer(), r.denom());
    s
}

/// Numerator and denominator both have all prime factors at most `bound`.
pub fn ratio_primes_at_most(r: &Ratio, bound: u64) -> bool {
    primes_at_most(*r.numer(), bound) && primes_at_most(*r.denom(), bound)
}
