//! Magnus embedding of the free nilpotent group into the truncated free
//! associative algebra `Z<X, Y>` modulo words longer than `gamma`.
//!
//! `a -> 1 + X`, `b -> 1 + Y`. The embedding is faithful on the free nilpotent
//! group of class `gamma`, so normal forms can be read off by peeling leading
//! Lie terms weight by weight.

use alloc::format;
use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::basis::{BasicCommutator, Structure};
use crate::error::HallError;

type Q = Ratio<i128>;

/// Word of length `len` with letter bits `bits` (X = 0, Y = 1, first letter
/// most significant) sits at `2^len - 1 + bits`.
fn offset(len: usize) -> usize {
    (1 << len) - 1
}

fn add(x: i128, y: i128) -> Result<i128, HallError> {
    x.checked_add(y).ok_or(HallError::Overflow)
}

fn mul(x: i128, y: i128) -> Result<i128, HallError> {
    x.checked_mul(y).ok_or(HallError::Overflow)
}

/// Element of the truncated algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<i128>,
}

impl Series {
    pub fn coeff(&self, len: usize, bits: usize) -> i128 {
        self.coeffs[offset(len) + bits]
    }

    fn homogeneous(&self, len: usize) -> &[i128] {
        &self.coeffs[offset(len)..offset(len + 1)]
    }
}

#[derive(Debug, Clone)]
struct WeightSolver {
    /// Basis indices of this weight.
    members: Vec<usize>,
    /// Rows used for the square subsystem.
    rows: Vec<usize>,
    inverse: Vec<Vec<Q>>,
}

/// Arithmetic in the truncated algebra plus the images of the Hall basis.
#[derive(Debug, Clone)]
pub struct Magnus {
    gamma: usize,
    basis: Vec<BasicCommutator>,
    images: Vec<Series>,
    inverse_images: Vec<Series>,
    solvers: Vec<WeightSolver>,
}

impl Magnus {
    pub fn new(basis: &[BasicCommutator], gamma: usize) -> Result<Self, HallError> {
        let mut m = Magnus { gamma, basis: basis.to_vec(), images: Vec::new(), inverse_images: Vec::new(), solvers: Vec::new() };
        for c in basis {
            let img = match c.structure {
                Structure::A => m.letter(0),
                Structure::B => m.letter(1),
                Structure::Bracket(l, r) => {
                    let (x, y) = (&m.images[l], &m.images[r]);
                    let (xi, yi) = (&m.inverse_images[l], &m.inverse_images[r]);
                    m.mul(&m.mul(xi, yi)?, &m.mul(x, y)?)?
                }
            };
            let inv = m.inverse(&img)?;
            m.images.push(img);
            m.inverse_images.push(inv);
        }
        for w in 1..=gamma {
            m.solvers.push(m.solver(w)?);
        }
        Ok(m)
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn one(&self) -> Series {
        let mut coeffs = alloc::vec![0; offset(self.gamma + 1)];
        coeffs[0] = 1;
        Series { coeffs }
    }

    fn letter(&self, bit: usize) -> Series {
        let mut s = self.one();
        if self.gamma >= 1 {
            s.coeffs[offset(1) + bit] = 1;
        }
        s
    }

    pub fn generator(&self, index: usize) -> &Series {
        &self.images[index]
    }

    pub fn mul(&self, x: &Series, y: &Series) -> Result<Series, HallError> {
        let mut out = alloc::vec![0i128; x.coeffs.len()];
        for l1 in 0..=self.gamma {
            for (b1, &cx) in x.homogeneous(l1).iter().enumerate() {
                if cx == 0 {
                    continue;
                }
                for l2 in 0..=self.gamma - l1 {
                    let base = offset(l1 + l2) + (b1 << l2);
                    for (b2, &cy) in y.homogeneous(l2).iter().enumerate() {
                        if cy != 0 {
                            out[base + b2] = add(out[base + b2], mul(cx, cy)?)?;
                        }
                    }
                }
            }
        }
        Ok(Series { coeffs: out })
    }

    /// Inverse of a unit `1 + N`: `sum (-N)^k`.
    pub fn inverse(&self, x: &Series) -> Result<Series, HallError> {
        debug_assert_eq!(x.coeffs[0], 1);
        let mut neg = x.clone();
        neg.coeffs[0] = 0;
        for c in neg.coeffs.iter_mut() {
            *c = -*c;
        }
        let mut acc = self.one();
        let mut term = self.one();
        for _ in 0..self.gamma {
            term = self.mul(&term, &neg)?;
            for (a, t) in acc.coeffs.iter_mut().zip(&term.coeffs) {
                *a = add(*a, *t)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, x: &Series, k: i128) -> Result<Series, HallError> {
        let base = if k < 0 { self.inverse(x)? } else { x.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = self.mul(&sq, &sq)?;
            }
        }
        Ok(acc)
    }

    /// Image of the normal word `prod c_k^{e_k}`.
    pub fn evaluate(&self, exponents: &[i128]) -> Result<Series, HallError> {
        let mut acc = self.one();
        for (k, &e) in exponents.iter().enumerate() {
            if e != 0 {
                acc = self.mul(&acc, &self.pow(&self.images[k], e)?)?;
            }
        }
        Ok(acc)
    }

    /// Picks independent rows of the weight-`w` leading terms and inverts the
    /// resulting square system over the rationals.
    fn solver(&self, w: usize) -> Result<WeightSolver, HallError> {
        let members: Vec<usize> = self.basis.iter().filter(|c| c.weight == w).map(|c| c.index).collect();
        let cols = members.len();
        let column = |row: usize, col: usize| Q::from_integer(self.images[members[col]].homogeneous(w)[row]);
        let mut rows = Vec::new();
        // greedy row selection by incremental elimination
        let mut reduced: Vec<Vec<Q>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for row in 0..(1 << w) {
            if rows.len() == cols {
                break;
            }
            let mut v: Vec<Q> = (0..cols).map(|c| column(row, c)).collect();
            for (r, &p) in reduced.iter().zip(&pivots) {
                if !v[p].is_zero() {
                    let f = v[p] / r[p];
                    for c in 0..cols {
                        v[c] -= f * r[c];
                    }
                }
            }
            if let Some(p) = v.iter().position(|x| !x.is_zero()) {
                reduced.push(v);
                pivots.push(p);
                rows.push(row);
            }
        }
        if rows.len() != cols {
            return Err(HallError::Violation {
                law: "lie-independence",
                detail: format!("leading terms of weight {w} have rank {} < {cols}", rows.len()),
            });
        }
        let square: Vec<Vec<Q>> = rows.iter().map(|&r| (0..cols).map(|c| column(r, c)).collect()).collect();
        let inverse = invert(square).ok_or_else(|| HallError::Violation {
            law: "lie-independence",
            detail: format!("singular weight-{w} system"),
        })?;
        Ok(WeightSolver { members, rows, inverse })
    }

    /// Normal-form exponents of a group element given by its image.
    pub fn decompose(&self, x: &Series) -> Result<Vec<i128>, HallError> {
        let mut exps = alloc::vec![0i128; self.basis.len()];
        let mut rest = x.clone();
        for w in 1..=self.gamma {
            for l in 1..w {
                if rest.homogeneous(l).iter().any(|&c| c != 0) {
                    return Err(HallError::Violation { law: "magnus-decompose", detail: format!("residual term of length {l}") });
                }
            }
            let solver = &self.solvers[w - 1];
            let h = rest.homogeneous(w);
            let mut sol = Vec::with_capacity(solver.members.len());
            for row in &solver.inverse {
                let v = row.iter().zip(&solver.rows).fold(Q::zero(), |acc, (q, &r)| acc + *q * Q::from_integer(h[r]));
                if !v.denom().is_one() {
                    return Err(HallError::Violation { law: "magnus-decompose", detail: format!("non-integral exponent {v}") });
                }
                sol.push(*v.numer());
            }
            // the square subsystem must explain every coordinate
            for (row, &target) in h.iter().enumerate() {
                let mut s = 0i128;
                for (col, &k) in solver.members.iter().enumerate() {
                    s = add(s, mul(sol[col], self.images[k].homogeneous(w)[row])?)?;
                }
                if s != target {
                    return Err(HallError::Violation { law: "magnus-decompose", detail: format!("inconsistent weight-{w} system") });
                }
            }
            let mut peel = self.one();
            for (col, &k) in solver.members.iter().enumerate() {
                exps[k] = sol[col];
                if sol[col] != 0 {
                    peel = self.mul(&peel, &self.pow(&self.images[k], sol[col])?)?;
                }
            }
            rest = self.mul(&self.inverse(&peel)?, &rest)?;
        }
        if rest != self.one() {
            return Err(HallError::Violation { law: "magnus-decompose", detail: "nontrivial residue after peeling".into() });
        }
        Ok(exps)
    }
}

fn invert(mut m: Vec<Vec<Q>>) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut inv: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        inv.swap(col, p);
        let d = m[col][col];
        for j in 0..n {
            m[col][j] /= d;
            inv[col][j] /= d;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for j in 0..n {
                    m[r][j] = m[r][j] - f * m[col][j];
                    inv[r][j] = inv[r][j] - f * inv[col][j];
                }
            }
        }
    }
    Some(inv)
}
