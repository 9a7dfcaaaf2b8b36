//! Collection in the free nilpotent group of class `gamma` on `a`, `b`.
//!
//! Elements are normal words `c_0^{e_0} c_1^{e_1} ... c_r^{e_r}` over the Hall
//! basis. Multiplying by a syllable `c_j^f` moves `c_j^f` past the tail of
//! higher-index syllables, replacing that tail by its conjugate under
//! `c_j^f`. The conjugation tables `c_j^{-1} c_i c_j` and `c_j c_i c_j^{-1}`
//! (for `i > j`) are read off the Magnus embedding once per class.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use super::basis::{basis_unchecked, check_gamma, render, BasicCommutator, MAX_GAMMA};
use super::magnus::Magnus;
use crate::error::HallError;

/// `c_0^{e_0} c_1^{e_1} ...` in Hall-basis order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalWord {
    gamma: usize,
    exponents: Vec<i128>,
}

impl NormalWord {
    pub fn class_gamma(&self) -> usize {
        self.gamma
    }

    pub fn exponents(&self) -> &[i128] {
        &self.exponents
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, e) in self.exponents.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// Signed power of a basis element, used as a letter of an input word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub index: usize,
    pub exponent: i128,
}

impl Letter {
    pub fn new(index: usize, exponent: i128) -> Self {
        Letter { index, exponent }
    }
}

fn add(x: i128, y: i128) -> Result<i128, HallError> {
    x.checked_add(y).ok_or(HallError::Overflow)
}

/// Images of `c_i`, `i > j`, under some automorphism fixing `<c_k : k > j>`.
type Images = Vec<Vec<i128>>;

#[derive(Debug, Clone)]
pub struct FreeNilpotent {
    gamma: usize,
    basis: Vec<BasicCommutator>,
    magnus: Magnus,
    /// `conj[j][i - j - 1] = c_j^{-1} c_i c_j`.
    conj: Vec<Images>,
    /// `conj_inv[j][i - j - 1] = c_j c_i c_j^{-1}`.
    conj_inv: Vec<Images>,
    /// `central[j]`: every `c_i`, `i > j`, commutes with `c_j`.
    central: Vec<bool>,
}

impl FreeNilpotent {
    pub fn new(gamma: usize) -> Result<Self, HallError> {
        Self::with_max(gamma, MAX_GAMMA)
    }

    pub fn with_max(gamma: usize, max_gamma: usize) -> Result<Self, HallError> {
        check_gamma(gamma, max_gamma)?;
        let basis = basis_unchecked(gamma);
        let magnus = Magnus::new(&basis, gamma)?;
        let r = basis.len();
        let mut conj = Vec::with_capacity(r);
        let mut conj_inv = Vec::with_capacity(r);
        let mut central = Vec::with_capacity(r);
        for j in 0..r {
            let cj = magnus.generator(j);
            let cj_inv = magnus.inverse(cj)?;
            let mut fwd = Vec::new();
            let mut bwd = Vec::new();
            let mut all_commute = true;
            for i in j + 1..r {
                let ci = magnus.generator(i);
                let f = magnus.decompose(&magnus.mul(&magnus.mul(&cj_inv, ci)?, cj)?)?;
                let b = magnus.decompose(&magnus.mul(&magnus.mul(cj, ci)?, &cj_inv)?)?;
                for word in [&f, &b] {
                    // c_i times terms strictly after c_i
                    let shape_ok = word[..i].iter().all(|&e| e == 0) && word[i] == 1;
                    if !shape_ok {
                        return Err(HallError::Violation {
                            law: "conjugation-shape",
                            detail: format!("conjugate of c_{i} by c_{j} is not c_{i} times later terms"),
                        });
                    }
                }
                all_commute &= f[i + 1..].iter().all(|&e| e == 0);
                fwd.push(f);
                bwd.push(b);
            }
            conj.push(fwd);
            conj_inv.push(bwd);
            central.push(all_commute);
        }
        Ok(FreeNilpotent { gamma, basis, magnus, conj, conj_inv, central })
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn basis(&self) -> &[BasicCommutator] {
        &self.basis
    }

    pub fn magnus(&self) -> &Magnus {
        &self.magnus
    }

    pub fn render(&self, index: usize) -> alloc::string::String {
        render(&self.basis, index)
    }

    pub fn identity(&self) -> NormalWord {
        NormalWord { gamma: self.gamma, exponents: alloc::vec![0; self.basis.len()] }
    }

    pub fn word(&self, exponents: Vec<i128>) -> Result<NormalWord, HallError> {
        if exponents.len() != self.basis.len() {
            return Err(HallError::BadIndex(exponents.len()));
        }
        Ok(NormalWord { gamma: self.gamma, exponents })
    }

    /// Basis element `c_k` as a normal word.
    pub fn generator(&self, k: usize) -> Result<NormalWord, HallError> {
        let mut w = self.identity();
        *w.exponents.get_mut(k).ok_or(HallError::BadIndex(k))? = 1;
        Ok(w)
    }

    /// Normal form of the product of `letters`, left to right.
    pub fn collect(&self, letters: &[Letter]) -> Result<NormalWord, HallError> {
        let mut u = self.identity().exponents;
        for l in letters {
            if l.index >= self.basis.len() {
                return Err(HallError::BadIndex(l.index));
            }
            self.push_syllable(&mut u, l.index, l.exponent)?;
        }
        Ok(NormalWord { gamma: self.gamma, exponents: u })
    }

    pub fn multiply(&self, x: &NormalWord, y: &NormalWord) -> Result<NormalWord, HallError> {
        let mut u = x.exponents.clone();
        self.push_word(&mut u, &y.exponents)?;
        Ok(NormalWord { gamma: self.gamma, exponents: u })
    }

    pub fn inverse(&self, x: &NormalWord) -> Result<NormalWord, HallError> {
        Ok(NormalWord { gamma: self.gamma, exponents: self.inverse_raw(&x.exponents)? })
    }

    pub fn pow(&self, x: &NormalWord, k: i128) -> Result<NormalWord, HallError> {
        Ok(NormalWord { gamma: self.gamma, exponents: self.pow_raw(&x.exponents, k)? })
    }

    fn push_word(&self, u: &mut [i128], y: &[i128]) -> Result<(), HallError> {
        for (k, &e) in y.iter().enumerate() {
            if e != 0 {
                self.push_syllable(u, k, e)?;
            }
        }
        Ok(())
    }

    fn inverse_raw(&self, x: &[i128]) -> Result<Vec<i128>, HallError> {
        let mut u = alloc::vec![0; x.len()];
        for (k, &e) in x.iter().enumerate().rev() {
            if e != 0 {
                self.push_syllable(&mut u, k, -e)?;
            }
        }
        Ok(u)
    }

    fn pow_raw(&self, x: &[i128], k: i128) -> Result<Vec<i128>, HallError> {
        let support: Vec<usize> = (0..x.len()).filter(|&i| x[i] != 0).collect();
        if support.len() <= 1 {
            let mut out = alloc::vec![0; x.len()];
            for i in support {
                out[i] = x[i].checked_mul(k).ok_or(HallError::Overflow)?;
            }
            return Ok(out);
        }
        let base = if k < 0 { self.inverse_raw(x)? } else { x.to_vec() };
        let mut k = k.unsigned_abs();
        let mut acc = alloc::vec![0; x.len()];
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                self.push_word(&mut acc, &sq)?;
            }
            k >>= 1;
            if k > 0 {
                let copy = sq.clone();
                self.push_word(&mut sq, &copy)?;
            }
        }
        Ok(acc)
    }

    /// `u <- u * c_j^f`.
    fn push_syllable(&self, u: &mut [i128], j: usize, f: i128) -> Result<(), HallError> {
        if f == 0 {
            return Ok(());
        }
        let tail_empty = u[j + 1..].iter().all(|&e| e == 0);
        if tail_empty || self.central[j] {
            u[j] = add(u[j], f)?;
            return Ok(());
        }
        let tail: Vec<i128> = u[j + 1..].to_vec();
        for e in u[j + 1..].iter_mut() {
            *e = 0;
        }
        u[j] = add(u[j], f)?;
        let images = self.conjugation_power(j, f)?;
        for (off, &e) in tail.iter().enumerate() {
            if e != 0 {
                let img = &images[off];
                let p = self.pow_raw(img, e)?;
                self.push_word(u, &p)?;
            }
        }
        Ok(())
    }

    /// Images of `c_i`, `i > j`, under conjugation by `c_j^f`.
    fn conjugation_power(&self, j: usize, f: i128) -> Result<Images, HallError> {
        let table = if f > 0 { &self.conj[j] } else { &self.conj_inv[j] };
        let mut k = f.unsigned_abs();
        if k == 1 {
            return Ok(table.clone());
        }
        let r = self.basis.len();
        let mut acc: Images = (j + 1..r)
            .map(|i| {
                let mut w = alloc::vec![0; r];
                w[i] = 1;
                w
            })
            .collect();
        let mut sq = table.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.compose(j, &sq, &acc)?;
            }
            k >>= 1;
            if k > 0 {
                sq = self.compose(j, &sq, &sq)?;
            }
        }
        Ok(acc)
    }

    /// `(outer . inner)(c_i) = outer(inner(c_i))`.
    fn compose(&self, j: usize, outer: &Images, inner: &Images) -> Result<Images, HallError> {
        inner.iter().map(|w| self.apply(j, outer, w)).collect()
    }

    fn apply(&self, j: usize, map: &Images, w: &[i128]) -> Result<Vec<i128>, HallError> {
        let mut out = alloc::vec![0; w.len()];
        for (i, &e) in w.iter().enumerate() {
            if e != 0 {
                debug_assert!(i > j);
                let p = self.pow_raw(&map[i - j - 1], e)?;
                self.push_word(&mut out, &p)?;
            }
        }
        Ok(out)
    }

    /// `(ab)^n` as a normal word.
    pub fn power_of_product(&self, n: i128) -> Result<NormalWord, HallError> {
        let ab = self.collect(&[Letter::new(0, 1), Letter::new(1, 1)])?;
        self.pow(&ab, n)
    }
}
