//! Mutual order `o(a, b)` and its companions: reduction under powers, the
//! cyclic-intersection bounds with `D` and `epsilon`, the closed form through
//! intersection data, the deviation elements `d_n` and the commutator exponent.

use alloc::format;
use alloc::vec::Vec;

use crate::arith::{coprime_part, divisors, gcd, lcm, ratio, valuation, Ratio};
use crate::error::CheckError;
use crate::group::GroupArith;

/// Least `N >= 1` with `a^N b^N = 1`.
///
/// The solutions form a subgroup of the integers containing `lcm(m, n)`, so
/// only divisors of `lcm(m, n)` need testing.
pub fn mutual_order<G: GroupArith>(g: &G, a: &G::Elem, b: &G::Elem) -> u64 {
    let l = lcm(g.order(a), g.order(b));
    for d in divisors(l) {
        if g.is_identity(&g.mul(&g.pow(a, d as i64), &g.pow(b, d as i64))) {
            return d;
        }
    }
    unreachable!("lcm of the orders always qualifies")
}

/// `o(a^k, b^k)` predicted as `o(a,b) / gcd(o(a,b), k)` and checked directly.
pub fn mutual_order_of_powers<G: GroupArith>(g: &G, a: &G::Elem, b: &G::Elem, k: i64) -> Result<u64, CheckError> {
    let o = mutual_order(g, a, b);
    let predicted = o / gcd(o, k.unsigned_abs());
    let direct = mutual_order(g, &g.pow(a, k), &g.pow(b, k));
    if predicted != direct {
        return Err(CheckError::Inconsistency(format!(
            "o(a^{k}, b^{k}) = {direct}, expected {o}/gcd({o},{k}) = {predicted}"
        )));
    }
    Ok(predicted)
}

/// `<a> ∩ <b>` as a cyclic group `<g>` of order `e`, with `a^(m/e) = g^u` and
/// `b^(n/e) = g^v`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionData<E> {
    pub e: u64,
    pub g: E,
    pub u: u64,
    pub v: u64,
    pub m: u64,
    pub n: u64,
}

/// The generator is normalized to `g = a^(m/e)`, so `u = 1`.
pub fn cyclic_intersection<G: GroupArith>(g: &G, a: &G::Elem, b: &G::Elem) -> IntersectionData<G::Elem> {
    let m = g.order(a);
    let n = g.order(b);
    // <a> ∩ <b> = <a^(m/e)>, and a^(m/d) lies in <b> exactly when d | e
    let e = divisors(m)
        .into_iter()
        .rev()
        .find(|&d| g.discrete_log(b, &g.pow(a, (m / d) as i64)).is_some())
        .expect("d = 1 always qualifies");
    let gen = g.pow(a, (m / e) as i64);
    let bn = g.pow(b, (n / e) as i64);
    let v = g.discrete_log(&gen, &bn).expect("b^(n/e) generates the intersection");
    // normalize into [1, e]
    let v = if v == 0 { e } else { v };
    IntersectionData { e, g: gen, u: 1, v, m, n }
}

/// `lcm(m,n) / gcd(e, v m' + u n')`.
pub fn mutual_order_closed_form<E>(data: &IntersectionData<E>) -> u64 {
    closed_form_with(data.m, data.n, data.e, data.u, data.v)
}

fn closed_form_with(m: u64, n: u64, e: u64, u: u64, v: u64) -> u64 {
    let h = gcd(m, n);
    let (mp, np) = (m / h, n / h);
    lcm(m, n) / gcd(e, v * mp + u * np)
}

/// Compares the closed form against the direct search, and checks that every
/// rescaling `(uk, vk)` by a unit `k` mod `e` gives the same value.
pub fn verify_closed_form<G: GroupArith>(g: &G, a: &G::Elem, b: &G::Elem) -> Result<u64, CheckError> {
    let data = cyclic_intersection(g, a, b);
    let direct = mutual_order(g, a, b);
    let closed = mutual_order_closed_form(&data);
    if closed != direct {
        return Err(CheckError::violation(
            "closed-form",
            format!("closed form gives {closed}, direct search gives {direct} (e={}, u={}, v={})", data.e, data.u, data.v),
        ));
    }
    for k in (1..=data.e).filter(|&k| gcd(k, data.e) == 1) {
        let (u, v) = (data.u * k % data.e, data.v * k % data.e);
        let rescaled = closed_form_with(data.m, data.n, data.e, u, v);
        if rescaled != direct {
            return Err(CheckError::violation(
                "closed-form",
                format!("unit rescaling by {k} mod {} changes the value to {rescaled}", data.e),
            ));
        }
    }
    Ok(direct)
}

/// Order data of a single pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairOrderReport {
    pub m: u64,
    pub n: u64,
    pub e: u64,
    pub d: u64,
    pub epsilon: u64,
    pub mutual_order: u64,
    pub product_order: u64,
    pub ratio: Ratio,
    /// Order of `[b, a]`.
    pub r_commutator: u64,
    pub m_prime: u64,
    pub n_prime: u64,
}

impl PairOrderReport {
    pub fn lcm(&self) -> u64 {
        lcm(self.m, self.n)
    }
}

/// Computes all order data of `(a, b)` and checks the divisibility sandwich
/// `lcm/D | o(a,b) | lcm/epsilon` together with the cases where it pins
/// `o(a,b)` down.
pub fn jungnickel_data<G: GroupArith>(g: &G, a: &G::Elem, b: &G::Elem) -> Result<PairOrderReport, CheckError> {
    let data = cyclic_intersection(g, a, b);
    let (m, n, e) = (data.m, data.n, data.e);
    let h = gcd(m, n);
    let (m_prime, n_prime) = (m / h, n / h);
    let d = coprime_part(e, m_prime, n_prime);
    let epsilon = if d.is_multiple_of(2) { 2 } else { 1 };
    let o = mutual_order(g, a, b);
    let po = g.order(&g.mul(a, b));
    let c = g.commutator(b, a);
    let report = PairOrderReport {
        m,
        n,
        e,
        d,
        epsilon,
        mutual_order: o,
        product_order: po,
        ratio: ratio(po, o),
        r_commutator: g.order(&c),
        m_prime,
        n_prime,
    };

    let l = lcm(m, n);
    if !h.is_multiple_of(e) {
        return Err(CheckError::Inconsistency(format!("e = {e} does not divide gcd({m},{n})")));
    }
    if o % (l / d) != 0 || !(l / epsilon).is_multiple_of(o) {
        return Err(CheckError::violation(
            "sandwich",
            format!("lcm/D = {} | o(a,b) = {o} | lcm/eps = {} fails (e={e}, D={d})", l / d, l / epsilon),
        ));
    }
    if d <= 2 && o != l / d {
        return Err(CheckError::violation("sandwich-determined", format!("D = {d} but o(a,b) = {o} != lcm/D = {}", l / d)));
    }
    let separated = crate::arith::factorize(h).iter().all(|&(p, _)| valuation(m, p) != valuation(n, p));
    if separated && o != l {
        return Err(CheckError::violation("sandwich-valuations", format!("valuations differ but o(a,b) = {o} != lcm = {l}")));
    }
    if let Some(p) = crate::arith::smallest_prime_factor(l) {
        let pure = |x: u64| x == p.pow(valuation(x, p));
        if pure(m) && pure(n) && m != n && o != m.max(n) {
            return Err(CheckError::violation("sandwich-prime-power", format!("orders {m}, {n} but o(a,b) = {o}")));
        }
    }
    Ok(report)
}

/// `d_1(a,b), ..., d_k(a,b)` with `(ab)^j = a^j b^j d_j(a,b)`.
///
/// `d_j(a,b) = ([b^(j-1), a^(j-1)] d_(j-1)(b,a))^b`, so the sequences for
/// `(a,b)` and `(b,a)` are advanced together.
pub fn deviation_sequence<G: GroupArith>(g: &G, a: &G::Elem, b: &G::Elem, k: usize) -> Vec<G::Elem> {
    let mut out = Vec::with_capacity(k);
    if k == 0 {
        return out;
    }
    let mut dab = g.identity();
    let mut dba = g.identity();
    out.push(dab.clone());
    for j in 2..=k {
        let ap = g.pow(a, j as i64 - 1);
        let bp = g.pow(b, j as i64 - 1);
        let next_ab = g.conjugate(&g.mul(&g.commutator(&bp, &ap), &dba), b);
        let next_ba = g.conjugate(&g.mul(&g.commutator(&ap, &bp), &dab), a);
        dab = next_ab;
        dba = next_ba;
        out.push(dab.clone());
    }
    out
}

/// `d_k(a, b)` for `k >= 1`.
pub fn deviation<G: GroupArith>(g: &G, a: &G::Elem, b: &G::Elem, k: usize) -> G::Elem {
    assert!(k >= 1, "deviation index starts at 1");
    deviation_sequence(g, a, b, k).pop().expect("k >= 1")
}

/// Checks `(ab)^j = a^j b^j d_j(a,b)` for `1 <= j <= k`; `in_derived` tests
/// membership of `d_j` in the commutator subgroup.
pub fn check_deviation<G: GroupArith>(
    g: &G,
    a: &G::Elem,
    b: &G::Elem,
    k: usize,
    in_derived: impl Fn(&G::Elem) -> bool,
) -> Result<(), CheckError> {
    let ab = g.mul(a, b);
    for (j, d) in deviation_sequence(g, a, b, k).iter().enumerate() {
        let j = j as i64 + 1;
        let rhs = g.mul(&g.mul(&g.pow(a, j), &g.pow(b, j)), d);
        if g.pow(&ab, j) != rhs {
            return Err(CheckError::violation("deviation", format!("(ab)^{j} != a^{j} b^{j} d_{j}")));
        }
        if !in_derived(d) {
            return Err(CheckError::violation("deviation", format!("d_{j} outside the commutator subgroup")));
        }
    }
    Ok(())
}

/// Least `k >= 1` with `a^k` commuting with `b`, as `o(a^-1, b^-1 a b)`.
pub fn commutator_exponent<G: GroupArith>(g: &G, a: &G::Elem, b: &G::Elem) -> u64 {
    mutual_order(g, &g.inv(a), &g.conjugate(a, b))
}

/// Same quantity by scanning powers of `a`; used as a cross-check.
pub fn commutator_exponent_by_scan<G: GroupArith>(g: &G, a: &G::Elem, b: &G::Elem) -> u64 {
    let mut k = 1;
    let mut x = a.clone();
    while !g.commute(&x, b) {
        x = g.mul(&x, a);
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::{GroupElement, Permutation};
    use crate::group::{generate, ElemId, FiniteGroup};

    fn cyc(n: usize, cycles: &[&[usize]]) -> GroupElement {
        let cs: Vec<Vec<usize>> = cycles.iter().map(|c| c.iter().map(|p| p - 1).collect()).collect();
        Permutation::from_cycles(n, &cs).unwrap().into()
    }

    fn d4() -> (FiniteGroup, ElemId, ElemId) {
        let r = cyc(4, &[&[1, 2, 3, 4]]);
        let s = cyc(4, &[&[1, 3]]);
        let g = generate(&[r.clone(), s.clone()]).unwrap();
        let (r, s) = (g.id_of(&r).unwrap(), g.id_of(&s).unwrap());
        (g, r, s)
    }

    /// Least N by plain linear search.
    fn brute_mutual(g: &FiniteGroup, a: ElemId, b: ElemId) -> u64 {
        (1..).find(|&n| g.is_identity(&g.mul(&g.pow(&a, n), &g.pow(&b, n)))).unwrap() as u64
    }

    #[test]
    fn d4_values() {
        let (g, r, s) = d4();
        let rs = g.mul(&r, &s);
        assert_eq!(mutual_order(&g, &rs, &s), 2);
        assert_eq!(g.order(&g.mul(&rs, &s)), 4);
        assert_eq!(mutual_order(&g, &r, &s), 4);
        assert_eq!(g.order(&rs), 2);
        assert_eq!(mutual_order(&g, &r, &ElemId(0)), 4);
        assert_eq!(mutual_order_of_powers(&g, &r, &s, 2).unwrap(), 2);
        assert_eq!(mutual_order_of_powers(&g, &r, &s, 4).unwrap(), 1);
        assert_eq!(commutator_exponent(&g, &r, &s), 2);
        assert_eq!(cyclic_intersection(&g, &r, &s).e, 1);
        let d2 = deviation(&g, &r, &s, 2);
        assert_eq!(d2, g.pow(&r, 2));
        assert!(g.is_identity(&deviation(&g, &r, &s, 1)));
    }

    #[test]
    fn intersection_with_own_square() {
        let (g, r, _) = d4();
        let r2 = g.pow(&r, 2);
        let data = cyclic_intersection(&g, &r, &r2);
        assert_eq!((data.e, data.u, data.v, data.g), (2, 1, 1, r2));
        assert_eq!(mutual_order_closed_form(&data), 4);
        assert_eq!(mutual_order(&g, &r, &r2), 4);
        let same = cyclic_intersection(&g, &r, &r);
        assert_eq!((same.e, same.u, same.v, same.g), (4, 1, 1, r));
    }

    #[test]
    fn s4_exhaustive_against_brute_force() {
        let g = generate(&[cyc(4, &[&[1, 2, 3, 4]]), cyc(4, &[&[1, 2]])]).unwrap();
        for a in g.ids() {
            for b in g.ids() {
                let o = mutual_order(&g, &a, &b);
                assert_eq!(o, brute_mutual(&g, a, b));
                assert_eq!(o, mutual_order(&g, &b, &a));
                assert_eq!(verify_closed_form(&g, &a, &b).unwrap(), o);
                let rep = jungnickel_data(&g, &a, &b).unwrap();
                assert_eq!(rep.mutual_order, o);
                assert_eq!(commutator_exponent(&g, &a, &b), commutator_exponent_by_scan(&g, &a, &b));
                check_deviation(&g, &a, &b, 8, |d| g.derived_subgroup().contains(*d)).unwrap();
            }
        }
    }

    #[test]
    fn cyclic_group_closed_form() {
        // a generator x of Z/12 against all its powers; e = |<x^k>| by hand
        let g = generate(&[cyc(12, &[&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12]])]).unwrap();
        let x = g.generator_ids()[0];
        for k in 0..12i64 {
            let y = g.pow(&x, k);
            let data = cyclic_intersection(&g, &x, &y);
            assert_eq!(data.e, 12 / gcd(12, k as u64));
            // x^N x^(kN) = x^((1+k)N)
            assert_eq!(mutual_order(&g, &x, &y), 12 / gcd(12, (1 + k) as u64));
            assert_eq!(mutual_order_closed_form(&data), 12 / gcd(12, (1 + k) as u64));
        }
    }
}
