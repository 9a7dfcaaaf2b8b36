//! Hall's power polynomials `f_k` with `(ab)^n = a^n b^n c_2^{f_2(n)} ... c_r^{f_r(n)}`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use super::collector::FreeNilpotent;
use crate::error::{CheckError, HallError};

/// `f(x) = sum_{l >= 1} lambda_l * C(x, l)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinomialPolynomial {
    coeffs: Vec<i128>,
}

fn binomial_i128(x: i128, l: usize) -> Result<i128, HallError> {
    // falling factorial divided step by step stays integral
    let mut acc = 1i128;
    for i in 0..l as i128 {
        acc = acc.checked_mul(x - i).ok_or(HallError::Overflow)? / (i + 1);
    }
    Ok(acc)
}

fn binomial_big(x: &BigInt, l: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..l {
        acc = acc * (x - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

impl BinomialPolynomial {
    /// Coefficients `lambda_1, ..., lambda_w`.
    pub fn new(coeffs: Vec<i128>) -> Self {
        BinomialPolynomial { coeffs }
    }

    pub fn coefficients(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn eval(&self, x: i128) -> Result<i128, HallError> {
        let mut s = 0i128;
        for (l, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let t = c.checked_mul(binomial_i128(x, l + 1)?).ok_or(HallError::Overflow)?;
                s = s.checked_add(t).ok_or(HallError::Overflow)?;
            }
        }
        Ok(s)
    }

    pub fn eval_big(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().enumerate().map(|(l, &c)| BigInt::from(c) * binomial_big(x, l + 1)).sum()
    }

    /// Coefficients of `x^0, x^1, ...` in the monomial basis.
    pub fn monomial_coefficients(&self) -> Vec<Ratio<BigInt>> {
        let deg = self.coeffs.len();
        let mut out = alloc::vec![Ratio::<BigInt>::zero(); deg + 1];
        for (idx, &c) in self.coeffs.iter().enumerate() {
            let l = idx + 1;
            // x (x-1) ... (x-l+1) expanded, then divided by l!
            let mut falling = alloc::vec![BigInt::zero(); l + 1];
            falling[0] = BigInt::one();
            for i in 0..l {
                for d in (0..=i + 1).rev() {
                    let lower = if d > 0 { falling[d - 1].clone() } else { BigInt::zero() };
                    falling[d] = lower - &falling[d] * BigInt::from(i);
                }
            }
            let fact: BigInt = (1..=l).map(BigInt::from).product();
            for d in 0..=l {
                out[d] = &out[d] + Ratio::new(BigInt::from(c) * &falling[d], fact.clone());
            }
        }
        out
    }

    /// Least common denominator of the monomial coefficients.
    pub fn monomial_denominator(&self) -> BigInt {
        self.monomial_coefficients().iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
    }
}

/// `f_k` for one basis index `k >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallPolynomial {
    pub index: usize,
    pub weight: usize,
    pub poly: BinomialPolynomial,
}

/// Recovers every `f_k` from `(ab)^n`, `n = 0..=w_k + 1`, via forward
/// differences; the extra point checks that the degree does not exceed `w_k`.
pub fn hall_polynomials(group: &FreeNilpotent) -> Result<Vec<HallPolynomial>, HallError> {
    let top = group.gamma() + 1;
    let mut values = Vec::with_capacity(top + 1);
    for n in 0..=top as i128 {
        values.push(group.power_of_product(n)?);
    }
    for (n, v) in values.iter().enumerate() {
        if v.exponents()[0] != n as i128 || v.exponents()[1] != n as i128 {
            return Err(HallError::Violation { law: "hall-formula", detail: format!("(ab)^{n} does not start with a^{n} b^{n}") });
        }
    }
    let mut out = Vec::new();
    for c in group.basis().iter().filter(|c| c.index >= 2) {
        let w = c.weight;
        let mut diffs: Vec<i128> = values[..=w + 1].iter().map(|v| v.exponents()[c.index]).collect();
        let mut lambda = Vec::with_capacity(w + 2);
        for _ in 0..=w + 1 {
            lambda.push(diffs[0]);
            diffs = diffs.windows(2).map(|p| p[1] - p[0]).collect();
        }
        if lambda[0] != 0 {
            return Err(HallError::Violation { law: "hall-polynomial", detail: format!("f_{}(0) = {}", c.index, lambda[0]) });
        }
        if lambda[w + 1] != 0 {
            return Err(HallError::Violation { law: "hall-polynomial", detail: format!("f_{} exceeds degree {w}", c.index) });
        }
        let poly = BinomialPolynomial::new(lambda[1..=w].to_vec());
        if poly.eval(1)? != 0 {
            return Err(HallError::Violation { law: "hall-polynomial", detail: format!("f_{}(1) != 0", c.index) });
        }
        out.push(HallPolynomial { index: c.index, weight: w, poly });
    }
    Ok(out)
}

/// Checks `(ab)^n = (n, n, f_2(n), ..., f_r(n))` for `0 <= n <= n_max`, and the
/// monomial denominators against `gamma!`.
pub fn check_hall_formula(group: &FreeNilpotent, polys: &[HallPolynomial], n_max: i128) -> Result<(), HallError> {
    let ab = group.collect(&[super::Letter::new(0, 1), super::Letter::new(1, 1)])?;
    let mut acc = group.identity();
    for n in 0..=n_max {
        let e = acc.exponents();
        if e[0] != n || e[1] != n {
            return Err(HallError::Violation { law: "hall-formula", detail: format!("(ab)^{n} leading exponents {} {}", e[0], e[1]) });
        }
        for p in polys {
            let f = p.poly.eval(n)?;
            if e[p.index] != f {
                return Err(HallError::Violation {
                    law: "hall-formula",
                    detail: format!("(ab)^{n}: exponent of c_{} is {}, f_{}({n}) = {f}", p.index, e[p.index], p.index),
                });
            }
        }
        acc = group.multiply(&acc, &ab)?;
    }
    let fact: BigInt = (1..=group.gamma() as u64).map(BigInt::from).product();
    for p in polys {
        if !fact.is_multiple_of(&p.poly.monomial_denominator()) {
            return Err(HallError::Violation {
                law: "hall-denominator",
                detail: format!("denominator of f_{} does not divide {}!", p.index, group.gamma()),
            });
        }
    }
    Ok(())
}

/// `X / gamma!` divides `f_k(X)` for every `k`; requires `gamma! | X`.
pub fn divisibility_check(polys: &[HallPolynomial], gamma: usize, x: &BigUint) -> Result<bool, CheckError> {
    let fact: BigUint = (1..=gamma as u64).map(BigUint::from).product();
    if x.is_zero() || !x.is_multiple_of(&fact) {
        return Err(CheckError::Domain(format!("{gamma}! does not divide {x}")));
    }
    let q = BigInt::from(x / &fact);
    let xb = BigInt::from(x.clone());
    Ok(polys.iter().all(|p| p.poly.eval_big(&xb).is_multiple_of(&q)))
}
