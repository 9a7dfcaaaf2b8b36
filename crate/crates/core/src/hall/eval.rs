//! Evaluating basis and formal commutators in concrete groups: the Hall
//! formula checked on actual elements, and the center-power bound.

use alloc::format;
use alloc::vec::Vec;

use super::basis::{formal_commutators, BasicCommutator, Structure};
use super::collector::NormalWord;
use super::constants::ClassConstants;
use super::polynomial::HallPolynomial;
use crate::arith::{factorial, lcm, mod_pow};
use crate::error::CheckError;
use crate::group::{FiniteGroup, GroupArith};

fn evaluate_structures<G: GroupArith>(g: &G, a: &G::Elem, b: &G::Elem, list: impl Iterator<Item = Structure>) -> Vec<G::Elem> {
    let mut vals: Vec<G::Elem> = Vec::new();
    for s in list {
        let v = match s {
            Structure::A => a.clone(),
            Structure::B => b.clone(),
            Structure::Bracket(l, r) => g.commutator(&vals[l], &vals[r]),
        };
        vals.push(v);
    }
    vals
}

/// Values of `c_0, ..., c_r` at concrete `a`, `b`.
pub fn evaluate_basis<G: GroupArith>(g: &G, a: &G::Elem, b: &G::Elem, basis: &[BasicCommutator]) -> Vec<G::Elem> {
    evaluate_structures(g, a, b, basis.iter().map(|c| c.structure))
}

/// Value of a normal word given the basis values.
pub fn evaluate_word<G: GroupArith>(g: &G, values: &[G::Elem], word: &NormalWord) -> G::Elem {
    word.exponents()
        .iter()
        .zip(values)
        .fold(g.identity(), |acc, (&e, v)| if e == 0 { acc } else { g.mul(&acc, &g.pow_wide(v, e)) })
}

/// `(ab)^n = a^n b^n prod c_k^{f_k(n)}` for `0 <= n <= n_max`, in a group of
/// class at most the class of `polys`.
pub fn hall_formula_check<G: GroupArith>(
    g: &G,
    a: &G::Elem,
    b: &G::Elem,
    basis: &[BasicCommutator],
    polys: &[HallPolynomial],
    n_max: i64,
) -> Result<(), CheckError> {
    let vals = evaluate_basis(g, a, b, basis);
    let ab = g.mul(a, b);
    let mut lhs = g.identity();
    for n in 0..=n_max {
        let mut rhs = g.mul(&g.pow(a, n), &g.pow(b, n));
        for p in polys {
            rhs = g.mul(&rhs, &g.pow_wide(&vals[p.index], p.poly.eval(n as i128)?));
        }
        if lhs != rhs {
            return Err(CheckError::violation("hall-formula", format!("(ab)^{n} differs from a^{n} b^{n} c_2^f_2({n}) ...")));
        }
        lhs = g.mul(&lhs, &ab);
    }
    Ok(())
}

/// Outcome of the center-power check on one pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CenterPower {
    /// Least `n` with every formal `c_i^n` central.
    pub n: u64,
    /// Formal commutators of weight 2..=gamma examined.
    pub examined: usize,
    /// Of those, how many also satisfy `c_k^{n (gamma!)^{r-k}} = 1`.
    pub finer_holds: usize,
}

/// With `n` least such that every formal `c_0^n, ..., c_r^n` is central,
/// checks `c_k^{n A} = 1` for `2 <= k <= r`, `A = (gamma!)^{r-2}`, where the
/// list is every formal complex commutator of weight at most `gamma`.
///
/// The per-index bound `c_k^{n (gamma!)^{r-k}} = 1` depends on the order
/// chosen within each weight and is only counted.
pub fn center_power_check(g: &FiniteGroup, a: crate::group::ElemId, b: crate::group::ElemId, constants: &ClassConstants) -> Result<CenterPower, CheckError> {
    let gamma = constants.gamma;
    let formal = formal_commutators(gamma);
    let vals = evaluate_structures(g, &a, &b, formal.iter().map(|c| c.structure));
    let center = g.center();
    let mut n = 1u64;
    for v in &vals {
        // powers run x^0, ..., x^(o-1); x^o = 1 is always central
        let powers: Vec<_> = g.cyclic_subgroup(*v).collect();
        let least = (1..powers.len()).find(|&k| center.contains(powers[k])).unwrap_or(powers.len()) as u64;
        n = lcm(n, least);
    }
    let r = constants.r_formal;
    let fact = factorial(gamma as u64);
    let mut out = CenterPower { n, examined: 0, finer_holds: 0 };
    for (k, v) in vals.iter().enumerate().skip(2) {
        let o = g.order(v);
        out.examined += 1;
        let na = (n % o) as u128 * mod_pow(fact, r.saturating_sub(2), o) as u128 % o as u128;
        if na != 0 {
            return Err(CheckError::violation(
                "center-power",
                format!("formal c_{k} has order {o}, which does not divide n*A with n = {n}, A = ({gamma}!)^{}", r - 2),
            ));
        }
        let exp = r.saturating_sub(k as u64);
        if ((n % o) as u128 * mod_pow(fact, exp, o) as u128).is_multiple_of(o as u128) {
            out.finer_holds += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Unitriangular;
    use crate::group::{generate, ElemId};
    use crate::hall::{class_constants, hall_polynomials, FreeNilpotent};

    #[test]
    fn hall_formula_in_ut4() {
        for m in [2u64, 3, 4] {
            let g = generate(&[
                Unitriangular::elementary(4, m, 0, 1, 1).unwrap().into(),
                Unitriangular::elementary(4, m, 1, 2, 1).unwrap().into(),
                Unitriangular::elementary(4, m, 2, 3, 1).unwrap().into(),
            ])
            .unwrap();
            let f = FreeNilpotent::new(3).unwrap();
            let polys = hall_polynomials(&f).unwrap();
            let k = class_constants(3).unwrap();
            let ids: Vec<_> = g.ids().step_by(g.size() / 40).collect();
            for &a in &ids {
                for &b in &ids {
                    hall_formula_check(&g, &a, &b, f.basis(), &polys, 2 * m as i64 + 3).unwrap();
                    center_power_check(&g, a, b, &k).unwrap();
                }
            }
        }
    }

    #[test]
    fn central_power_index_in_heisenberg() {
        let g = generate(&[
            Unitriangular::elementary(3, 3, 0, 1, 1).unwrap().into(),
            Unitriangular::elementary(3, 3, 1, 2, 1).unwrap().into(),
        ])
        .unwrap();
        let k = class_constants(2).unwrap();
        let (x, y) = (g.generator_ids()[0], g.generator_ids()[1]);
        // x and y are not central, x^3 = y^3 = 1, commutators are central
        assert_eq!(center_power_check(&g, x, y, &k).unwrap().n, 3);
        assert_eq!(center_power_check(&g, x, x, &k).unwrap().n, 3);
        assert_eq!(center_power_check(&g, ElemId(0), ElemId(0), &k).unwrap().n, 1);
    }

    #[test]
    fn collected_words_evaluate_consistently() {
        let g = generate(&[
            Unitriangular::elementary(4, 5, 0, 1, 1).unwrap().into(),
            Unitriangular::elementary(4, 5, 1, 2, 1).unwrap().into(),
            Unitriangular::elementary(4, 5, 2, 3, 1).unwrap().into(),
        ])
        .unwrap();
        let f = FreeNilpotent::new(3).unwrap();
        let ids: Vec<_> = g.ids().step_by(97).collect();
        for &a in &ids {
            for &b in &ids {
                let vals = evaluate_basis(&g, &a, &b, f.basis());
                let x = f.power_of_product(11).unwrap();
                let y = f.inverse(&x).unwrap();
                assert_eq!(evaluate_word(&g, &vals, &x), g.pow(&g.mul(&a, &b), 11));
                assert_eq!(evaluate_word(&g, &vals, &y), g.pow(&g.mul(&a, &b), -11));
            }
        }
    }
}
