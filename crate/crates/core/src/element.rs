//! Concrete group elements: permutations and unitriangular residue matrices.
//!
//! Permutations compose left to right: `(x * y)(i) = y(x(i))`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{factorize, lcm};
use crate::error::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from its 0-based image list.
    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(GroupError::InvalidPermutation(format!(
                    "image list {images:?} is not a bijection of 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images: images.into_boxed_slice() })
    }

    /// Builds a permutation of `degree` points from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = alloc::vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {} exceeds degree {degree}",
                        p + 1
                    )));
                }
                if touched[p] {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {} appears twice in cycle notation",
                        p + 1
                    )));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images: images.into_boxed_slice() })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    fn compose(&self, other: &Self) -> Self {
        let images = self.images.iter().map(|&i| other.images[i as usize]).collect();
        Permutation { images }
    }

    fn inverse(&self) -> Self {
        let mut images = alloc::vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images: images.into_boxed_slice() }
    }

    /// Nontrivial cycles, 0-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1, |acc, c| lcm(acc, c.len() as u64))
    }
}

impl fmt::Display for Permutation {
    /// 1-based cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Upper unitriangular `dim x dim` matrix over `Z/modulus`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Unitriangular {
    dim: usize,
    modulus: u64,
    entries: Box<[u64]>,
}

impl Unitriangular {
    /// Keeps `entry * entry + residue` inside `u64`.
    pub const MAX_MODULUS: u64 = 1 << 31;

    pub fn identity(dim: usize, modulus: u64) -> Self {
        let mut entries = alloc::vec![0u64; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1 % modulus;
        }
        Unitriangular { dim, modulus, entries: entries.into_boxed_slice() }
    }

    /// Validates a row-major entry list. Entries are reduced modulo `modulus`.
    pub fn from_entries(dim: usize, modulus: u64, entries: Vec<u64>) -> Result<Self, GroupError> {
        if !(2..=Self::MAX_MODULUS).contains(&modulus) {
            return Err(GroupError::InvalidMatrix(format!(
                "modulus {modulus} outside 2..={}",
                Self::MAX_MODULUS
            )));
        }
        if dim == 0 || entries.len() != dim * dim {
            return Err(GroupError::InvalidMatrix(format!(
                "expected {} entries for dimension {dim}, got {}",
                dim * dim,
                entries.len()
            )));
        }
        let mut entries = entries;
        for v in entries.iter_mut() {
            *v %= modulus;
        }
        for i in 0..dim {
            for j in 0..dim {
                let v = entries[i * dim + j];
                let ok = match i.cmp(&j) {
                    core::cmp::Ordering::Equal => v == 1,
                    core::cmp::Ordering::Greater => v == 0,
                    core::cmp::Ordering::Less => true,
                };
                if !ok {
                    return Err(GroupError::InvalidMatrix(format!(
                        "entry ({}, {}) = {v} violates unitriangular shape",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Unitriangular { dim, modulus, entries: entries.into_boxed_slice() })
    }

    /// Identity plus `value` at position (row, col), 0-based, row < col.
    pub fn elementary(dim: usize, modulus: u64, row: usize, col: usize, value: u64) -> Result<Self, GroupError> {
        let mut m = Self::identity(dim, modulus);
        if row >= col || col >= dim {
            return Err(GroupError::InvalidMatrix(format!(
                "elementary position ({}, {}) is not strictly upper triangular",
                row + 1,
                col + 1
            )));
        }
        m.entries[row * dim + col] = value % modulus;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.dim + col]
    }

    fn compose(&self, other: &Self) -> Self {
        let d = self.dim;
        let m = self.modulus;
        let mut out = alloc::vec![0u64; d * d];
        for i in 0..d {
            out[i * d + i] = 1;
            for j in i + 1..d {
                let mut acc = 0u64;
                for k in i..=j {
                    acc = (acc + self.entries[i * d + k] * other.entries[k * d + j]) % m;
                }
                out[i * d + j] = acc;
            }
        }
        Unitriangular { dim: d, modulus: m, entries: out.into_boxed_slice() }
    }

    fn inverse(&self) -> Self {
        // (I + N)^{-1} solved column by column by back substitution.
        let d = self.dim;
        let m = self.modulus;
        let mut inv = Self::identity(d, m);
        for j in 0..d {
            for i in (0..j).rev() {
                let mut acc = 0u64;
                for k in i + 1..=j {
                    acc = (acc + self.entries[i * d + k] * inv.entries[k * d + j]) % m;
                }
                inv.entries[i * d + j] = (m - acc) % m;
            }
        }
        inv
    }

    fn is_identity(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| (i + 1..d).all(|j| self.entries[i * d + j] == 0))
    }

    fn pow_u64(&self, mut k: u64) -> Self {
        let mut acc = Self::identity(self.dim, self.modulus);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        acc
    }

    /// Order via the prime decomposition of the modulus: the order divides
    /// `modulus^(dim-1)`, so each p-part is found by repeated p-th powers.
    pub fn order(&self) -> u64 {
        let mut order = 1u64;
        for (p, k) in factorize(self.modulus) {
            let cofactor = self.modulus / p.pow(k);
            let mut y = self.clone();
            for _ in 0..self.dim.saturating_sub(1) {
                y = y.pow_u64(cofactor);
            }
            while !y.is_identity() {
                y = y.pow_u64(p);
                order = order.checked_mul(p).expect("element order exceeds u64");
            }
        }
        order
    }
}

impl fmt::Display for Unitriangular {
    /// Row-major residue list, e.g. `[1,1,0,0,1,0,0,0,1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, v) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Perm(Permutation),
    Matrix(Unitriangular),
}

impl GroupElement {
    /// Short description of the representation parameters, used in errors.
    pub fn kind(&self) -> String {
        match self {
            GroupElement::Perm(p) => format!("permutation of degree {}", p.degree()),
            GroupElement::Matrix(m) => {
                format!("unitriangular {}x{} mod {}", m.dim(), m.dim(), m.modulus())
            }
        }
    }

    pub fn compatible(&self, other: &Self) -> bool {
        match (self, other) {
            (GroupElement::Perm(x), GroupElement::Perm(y)) => x.degree() == y.degree(),
            (GroupElement::Matrix(x), GroupElement::Matrix(y)) => {
                x.dim() == y.dim() && x.modulus() == y.modulus()
            }
            _ => false,
        }
    }

    fn check(&self, other: &Self) -> Result<(), GroupError> {
        if self.compatible(other) {
            Ok(())
        } else {
            Err(GroupError::RepresentationMismatch { left: self.kind(), right: other.kind() })
        }
    }

    pub fn identity_like(&self) -> Self {
        match self {
            GroupElement::Perm(p) => GroupElement::Perm(Permutation::identity(p.degree())),
            GroupElement::Matrix(m) => GroupElement::Matrix(Unitriangular::identity(m.dim(), m.modulus())),
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, GroupError> {
        self.check(other)?;
        Ok(match (self, other) {
            (GroupElement::Perm(x), GroupElement::Perm(y)) => GroupElement::Perm(x.compose(y)),
            (GroupElement::Matrix(x), GroupElement::Matrix(y)) => GroupElement::Matrix(x.compose(y)),
            _ => unreachable!(),
        })
    }

    pub fn inverse(&self) -> Self {
        match self {
            GroupElement::Perm(x) => GroupElement::Perm(x.inverse()),
            GroupElement::Matrix(x) => GroupElement::Matrix(x.inverse()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Perm(x) => x.images.iter().enumerate().all(|(i, &j)| i as u32 == j),
            GroupElement::Matrix(x) => x.is_identity(),
        }
    }

    /// Square-and-multiply power; negative exponents invert first.
    pub fn power(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = self.identity_like();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.multiply(&sq).expect("same representation");
            }
            k >>= 1;
            if k > 0 {
                sq = sq.multiply(&sq).expect("same representation");
            }
        }
        acc
    }

    pub fn order(&self) -> u64 {
        match self {
            GroupElement::Perm(x) => x.order(),
            GroupElement::Matrix(x) => x.order(),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Perm(p) => p.fmt(f),
            GroupElement::Matrix(m) => m.fmt(f),
        }
    }
}

impl From<Permutation> for GroupElement {
    fn from(p: Permutation) -> Self {
        GroupElement::Perm(p)
    }
}

impl From<Unitriangular> for GroupElement {
    fn from(m: Unitriangular) -> Self {
        GroupElement::Matrix(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> GroupElement {
        let cs: Vec<Vec<usize>> = cycles.iter().map(|c| c.iter().map(|p| p - 1).collect()).collect();
        Permutation::from_cycles(n, &cs).unwrap().into()
    }

    #[test]
    fn d4_generators() {
        let r = cyc(4, &[&[1, 2, 3, 4]]);
        let s = cyc(4, &[&[1, 3]]);
        assert!(r.power(4).is_identity());
        assert_eq!(r.order(), 4);
        assert_eq!(s.order(), 2);
        let rs = r.multiply(&s).unwrap();
        assert!(rs.multiply(&rs).unwrap().is_identity());
        assert_eq!(r.power(0), r.identity_like());
        assert_eq!(r.power(-1), r.inverse());
        assert_eq!(r.to_string(), "(1 2 3 4)");
        assert_eq!(r.identity_like().to_string(), "()");
    }

    #[test]
    fn composition_is_left_to_right() {
        let x = cyc(3, &[&[1, 2]]);
        let y = cyc(3, &[&[2, 3]]);
        // 1 -> 2 under x, then 2 -> 3 under y
        let xy = x.multiply(&y).unwrap();
        match xy {
            GroupElement::Perm(p) => assert_eq!(p.apply(0), 2),
            _ => unreachable!(),
        }
    }

    #[test]
    fn mismatch_is_reported() {
        let x = cyc(3, &[&[1, 2]]);
        let y = cyc(4, &[&[1, 2]]);
        assert!(matches!(x.multiply(&y), Err(GroupError::RepresentationMismatch { .. })));
        let m: GroupElement = Unitriangular::identity(3, 3).into();
        assert!(x.multiply(&m).is_err());
        let m5: GroupElement = Unitriangular::identity(3, 5).into();
        assert!(m.multiply(&m5).is_err());
    }

    #[test]
    fn invalid_inputs() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![0, 5]]).is_err());
        assert!(Unitriangular::from_entries(2, 3, vec![1, 1, 1, 1]).is_err());
        assert!(Unitriangular::from_entries(2, 3, vec![2, 1, 0, 1]).is_err());
        assert!(Unitriangular::from_entries(2, 1, vec![1, 0, 0, 1]).is_err());
        assert!(Unitriangular::from_entries(2, 3, vec![4, 5, 3, 7]).is_ok());
    }

    #[test]
    fn heisenberg_mod3_exponent_is_3() {
        // brute force over all 27 matrices
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    let g: GroupElement =
                        Unitriangular::from_entries(3, 3, vec![1, x, z, 0, 1, y, 0, 0, 1]).unwrap().into();
                    assert!(g.power(3).is_identity());
                    let expected = if x == 0 && y == 0 && z == 0 { 1 } else { 3 };
                    assert_eq!(g.order(), expected);
                }
            }
        }
    }

    #[test]
    fn orders_beyond_the_modulus() {
        // (I + N)^n = I + nN + C(n,2) E13 with N = E12 + E23, and C(4,2) = 6 is not 0 mod 4
        let g: GroupElement = Unitriangular::from_entries(3, 4, vec![1, 1, 0, 0, 1, 1, 0, 0, 1]).unwrap().into();
        assert_eq!(g.order(), 8);
        // UT_4 mod 2 contains elements of order 4 (I + E12 + E23 + E34)
        let h: GroupElement =
            Unitriangular::from_entries(4, 2, vec![1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1]).unwrap().into();
        assert_eq!(h.order(), 4);
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = GroupElement> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap().into())
    }

    fn matrix_strategy(d: usize, m: u64) -> impl Strategy<Value = GroupElement> {
        proptest::collection::vec(0..m, d * (d - 1) / 2).prop_map(move |upper| {
            let mut e = vec![0; d * d];
            let mut it = upper.into_iter();
            for i in 0..d {
                e[i * d + i] = 1;
                for j in i + 1..d {
                    e[i * d + j] = it.next().unwrap();
                }
            }
            Unitriangular::from_entries(d, m, e).unwrap().into()
        })
    }

    fn power_law(x: &GroupElement, k: i64) {
        let o = x.order();
        let xk = x.power(k);
        let g = crate::arith::gcd(o, k.unsigned_abs());
        assert_eq!(xk.order() * g, o);
        assert!(x.power(o as i64).is_identity());
        assert_eq!(x.power(-k), xk.inverse());
    }

    proptest! {
        #[test]
        fn permutation_power_order_law(x in perm_strategy(7), k in -40i64..40) {
            power_law(&x, k);
        }

        #[test]
        fn matrix_power_order_law(x in matrix_strategy(4, 12), k in -40i64..40) {
            power_law(&x, k);
        }

        #[test]
        fn matrix_associativity_and_inverse(
            x in matrix_strategy(4, 9), y in matrix_strategy(4, 9), z in matrix_strategy(4, 9)
        ) {
            let l = x.multiply(&y).unwrap().multiply(&z).unwrap();
            let r = x.multiply(&y.multiply(&z).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            prop_assert!(x.multiply(&x.inverse()).unwrap().is_identity());
            prop_assert!(x.inverse().multiply(&x).unwrap().is_identity());
        }
    }
}
