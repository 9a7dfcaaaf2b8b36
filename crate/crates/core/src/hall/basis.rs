//! Basic commutators on two generators and the formal complex commutators
//! they are drawn from.

use alloc::vec::Vec;
use core::fmt;

use crate::error::HallError;

/// Largest class the symbolic engine accepts by default.
pub const MAX_GAMMA: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Structure {
    A,
    B,
    /// `[left, right]` by basis index.
    Bracket(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasicCommutator {
    pub index: usize,
    pub weight: usize,
    pub structure: Structure,
}

pub(crate) fn check_gamma(gamma: usize, max: usize) -> Result<(), HallError> {
    if gamma == 0 || gamma > max {
        return Err(HallError::ClassOutOfRange { gamma, max });
    }
    Ok(())
}

/// Hall basis of the free nilpotent group of class `gamma` on `a`, `b`.
///
/// `c_0 = a`, `c_1 = b`; `[c_i, c_j]` is basic when `i > j`, both are basic,
/// and `j >= t` whenever `c_i = [c_s, c_t]`. Within a weight, commutators are
/// listed by `(i, j)` in lexicographic order, so `c_2 = [b, a]`.
pub fn hall_basis(gamma: usize) -> Result<Vec<BasicCommutator>, HallError> {
    check_gamma(gamma, MAX_GAMMA)?;
    Ok(basis_unchecked(gamma))
}

pub(crate) fn basis_unchecked(gamma: usize) -> Vec<BasicCommutator> {
    let mut basis = alloc::vec![
        BasicCommutator { index: 0, weight: 1, structure: Structure::A },
        BasicCommutator { index: 1, weight: 1, structure: Structure::B },
    ];
    for w in 2..=gamma {
        let known = basis.len();
        for i in 0..known {
            for j in 0..i {
                if basis[i].weight + basis[j].weight != w {
                    continue;
                }
                if let Structure::Bracket(_, t) = basis[i].structure {
                    if j < t {
                        continue;
                    }
                }
                basis.push(BasicCommutator { index: basis.len(), weight: w, structure: Structure::Bracket(i, j) });
            }
        }
    }
    basis
}

/// Formal complex commutator: every bracket of two lower-weight commutators,
/// degenerate ones such as `[a, a]` included.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormalCommutator {
    pub weight: usize,
    pub structure: Structure,
}

/// Number of formal commutators per weight `1..=gamma`, and the largest
/// zero-based index `r` among those of weight at most `gamma`.
pub fn formal_commutator_count(gamma: usize) -> (Vec<u64>, u64) {
    let mut counts: Vec<u64> = Vec::with_capacity(gamma);
    for w in 1..=gamma {
        let n = if w == 1 { 2 } else { (1..w).map(|i| counts[i - 1] * counts[w - i - 1]).sum() };
        counts.push(n);
    }
    let total: u64 = counts.iter().sum();
    (counts, total.saturating_sub(1))
}

/// All formal commutators of weight at most `gamma`, ordered by weight and
/// then by `(left, right)` index.
pub fn formal_commutators(gamma: usize) -> Vec<FormalCommutator> {
    let mut list = alloc::vec![
        FormalCommutator { weight: 1, structure: Structure::A },
        FormalCommutator { weight: 1, structure: Structure::B },
    ];
    for w in 2..=gamma {
        let known = list.len();
        for i in 0..known {
            for j in 0..known {
                if list[i].weight + list[j].weight == w {
                    list.push(FormalCommutator { weight: w, structure: Structure::Bracket(i, j) });
                }
            }
        }
    }
    list
}

/// Writes a commutator recursively, e.g. `[[b,a],a]`.
pub fn render(basis: &[BasicCommutator], index: usize) -> alloc::string::String {
    struct R<'a>(&'a [BasicCommutator], usize);
    impl fmt::Display for R<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match self.0[self.1].structure {
                Structure::A => f.write_str("a"),
                Structure::B => f.write_str("b"),
                Structure::Bracket(l, r) => write!(f, "[{},{}]", R(self.0, l), R(self.0, r)),
            }
        }
    }
    alloc::format!("{}", R(basis, index))
}
