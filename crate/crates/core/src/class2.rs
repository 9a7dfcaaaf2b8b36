//! Pairs in groups of nilpotency class at most 2: the power and commutator
//! identities, the order of `[a, b]`, and the exact ratio `o(ab) / o(a, b)`.

use alloc::format;
use core::fmt;

use crate::arith::{binomial2, gcd, ratio, Ratio};
use crate::error::CheckError;
use crate::group::{ElemId, FiniteGroup, GroupArith};
use crate::order::{commutator_exponent, commutator_exponent_by_scan, cyclic_intersection, mutual_order};

/// Which branch of the class-2 ratio ladder a pair falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    /// `r` odd: ratio 1.
    ROdd,
    /// `r` even, `o(a,b)/r` odd: ratio 2.
    REvenQOdd,
    /// `r` even, `o(a,b)/r` even, witness holds and `o(a,b)/2r` odd: ratio 1/2.
    REvenQEvenHalf,
    /// `r` even, `o(a,b)/r` even otherwise: ratio 1.
    REvenQEvenOne,
}

impl CaseTag {
    pub fn name(self) -> &'static str {
        match self {
            CaseTag::ROdd => "R_ODD",
            CaseTag::REvenQOdd => "R_EVEN_Q_ODD",
            CaseTag::REvenQEvenHalf => "R_EVEN_Q_EVEN_HALF",
            CaseTag::REvenQEvenOne => "R_EVEN_Q_EVEN_ONE",
        }
    }

    pub fn ratio(self) -> Ratio {
        match self {
            CaseTag::ROdd | CaseTag::REvenQEvenOne => ratio(1, 1),
            CaseTag::REvenQOdd => ratio(2, 1),
            CaseTag::REvenQEvenHalf => ratio(1, 2),
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Evidence for the even/even split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfWitness {
    /// `a^(o/2) b^(o/2) = c^(r/2)` as an element equality.
    pub equality: bool,
    /// `o(a,b) / 2r` is odd.
    pub quotient_odd: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class2Verdict {
    /// Order of `c = [b, a]`.
    pub r: u64,
    /// `o(a,b) / r`.
    pub q: u64,
    pub case_tag: CaseTag,
    pub predicted_ratio: Ratio,
    pub witness: Option<HalfWitness>,
    pub mutual_order: u64,
    pub product_order: u64,
    /// `o(a^r b^r c^C(r,2)) / o(a^r b^r)`.
    pub correction: Ratio,
}

fn require_class2(g: &FiniteGroup) -> Result<(), CheckError> {
    match g.nilpotency_class() {
        Some(c) if c <= 2 => Ok(()),
        Some(c) => Err(CheckError::Precondition(format!("nilpotency class {c} exceeds 2"))),
        None => Err(CheckError::Precondition("group is not nilpotent".into())),
    }
}

/// `(ab)^n = a^n b^n [b,a]^C(n,2)` for `1 <= n <= n_max` and
/// `[a^i, b^j] = [a,b]^(ij)` for `|i|, |j| <= n_max`.
pub fn class2_identities_check(g: &FiniteGroup, a: ElemId, b: ElemId, n_max: i64) -> Result<bool, CheckError> {
    require_class2(g)?;
    let c = g.commutator(&b, &a);
    let ab = g.mul(&a, &b);
    for n in 1..=n_max {
        let rhs = g.mul(&g.mul(&g.pow(&a, n), &g.pow(&b, n)), &g.pow(&c, binomial2(n as u64) as i64));
        if g.pow(&ab, n) != rhs {
            return Ok(false);
        }
    }
    let cab = g.commutator(&a, &b);
    for i in -n_max..=n_max {
        let ai = g.pow(&a, i);
        for j in -n_max..=n_max {
            if g.commutator(&ai, &g.pow(&b, j)) != g.pow(&cab, i * j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `|<x> ∩ C_G(y)|`.
fn powers_centralizing(g: &FiniteGroup, x: ElemId, y: ElemId) -> u64 {
    g.cyclic_subgroup(x).filter(|p| g.commute(p, &y)).count() as u64
}

/// Order of `[a, b]`, checked against `m / |<a> ∩ C(b)|`, `n / |<b> ∩ C(a)|`
/// and the commutator exponent in both directions.
pub fn commutator_order_class2(g: &FiniteGroup, a: ElemId, b: ElemId) -> Result<u64, CheckError> {
    require_class2(g)?;
    let oc = g.order(&g.commutator(&a, &b));
    let (m, n) = (g.order(&a), g.order(&b));
    let via_a = m / powers_centralizing(g, a, b);
    let via_b = n / powers_centralizing(g, b, a);
    let ka = commutator_exponent(g, &a, &b);
    let kb = commutator_exponent(g, &b, &a);
    let scan = commutator_exponent_by_scan(g, &a, &b);
    if [via_a, via_b, ka, kb, scan].iter().any(|&x| x != oc) {
        return Err(CheckError::violation(
            "class2-commutator-order",
            format!("o(c) = {oc}, m/|<a>∩C(b)| = {via_a}, n/|<b>∩C(a)| = {via_b}, exponents {ka}, {kb}, scan {scan}"),
        ));
    }
    let f = cyclic_intersection(g, &a, &b).e;
    if !(gcd(m, n) / f).is_multiple_of(oc) {
        return Err(CheckError::violation("class2-commutator-order", format!("o(c) = {oc} does not divide gcd({m},{n})/{f}")));
    }
    let coprime_pair = gcd(m, n) == 1 || gcd(m, oc) == 1 || gcd(n, oc) == 1;
    if coprime_pair && oc != 1 {
        return Err(CheckError::violation("class2-commutator-order", format!("coprime orders among {m}, {n}, {oc} yet a, b do not commute")));
    }
    Ok(oc)
}

/// Predicts `o(ab) / o(a,b)` from `r = o([b,a])` and checks the prediction
/// against both the direct ratio and the correction factor
/// `o(a^r b^r c^C(r,2)) / o(a^r b^r)`.
pub fn classify_pair(g: &FiniteGroup, a: ElemId, b: ElemId) -> Result<Class2Verdict, CheckError> {
    require_class2(g)?;
    let c = g.commutator(&b, &a);
    let r = g.order(&c);
    let o = mutual_order(g, &a, &b);
    let po = g.order(&g.mul(&a, &b));
    if !o.is_multiple_of(r) || !po.is_multiple_of(r) {
        return Err(CheckError::violation("class2-classify", format!("r = {r} must divide o(a,b) = {o} and o(ab) = {po}")));
    }
    let q = o / r;
    let (case_tag, witness) = if r % 2 == 1 {
        (CaseTag::ROdd, None)
    } else if q % 2 == 1 {
        (CaseTag::REvenQOdd, None)
    } else {
        let half = (o / 2) as i64;
        let lhs = g.mul(&g.pow(&a, half), &g.pow(&b, half));
        let w = HalfWitness { equality: lhs == g.pow(&c, (r / 2) as i64), quotient_odd: (o / (2 * r)) % 2 == 1 };
        let tag = if w.equality && w.quotient_odd { CaseTag::REvenQEvenHalf } else { CaseTag::REvenQEvenOne };
        (tag, Some(w))
    };
    let predicted_ratio = case_tag.ratio();

    // x = a^r b^r, y = c^C(r,2), exponent formed exactly before reduction
    let ri = r as i64;
    let x = g.mul(&g.pow(&a, ri), &g.pow(&b, ri));
    let y = g.pow_wide(&c, binomial2(r) as i128);
    let correction = ratio(g.order(&g.mul(&x, &y)), g.order(&x));

    let observed = ratio(po, o);
    if observed != predicted_ratio || correction != predicted_ratio {
        return Err(CheckError::violation(
            "class2-classify",
            format!(
                "o(ab)/o(a,b) = {}/{}, correction factor {}/{}, {case_tag} predicts {}/{}",
                observed.numer(),
                observed.denom(),
                correction.numer(),
                correction.denom(),
                predicted_ratio.numer(),
                predicted_ratio.denom()
            ),
        ));
    }
    Ok(Class2Verdict { r, q, case_tag, predicted_ratio, witness, mutual_order: o, product_order: po, correction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::{GroupElement, Permutation, Unitriangular};
    use crate::group::generate;
    use alloc::vec::Vec;

    fn cyc(n: usize, cycles: &[&[usize]]) -> GroupElement {
        let cs: Vec<Vec<usize>> = cycles.iter().map(|c| c.iter().map(|p| p - 1).collect()).collect();
        Permutation::from_cycles(n, &cs).unwrap().into()
    }

    fn d4() -> (FiniteGroup, ElemId, ElemId) {
        let g = generate(&[cyc(4, &[&[1, 2, 3, 4]]), cyc(4, &[&[1, 3]])]).unwrap();
        let ids = g.generator_ids().to_vec();
        (g, ids[0], ids[1])
    }

    #[test]
    fn d4_classification() {
        let (g, r, s) = d4();
        let rs = g.mul(&r, &s);
        let v = classify_pair(&g, rs, s).unwrap();
        assert_eq!((v.r, v.mutual_order, v.q, v.case_tag), (2, 2, 1, CaseTag::REvenQOdd));
        assert_eq!(v.product_order, 4);
        let v = classify_pair(&g, r, s).unwrap();
        assert_eq!((v.r, v.mutual_order, v.q, v.case_tag), (2, 4, 2, CaseTag::REvenQEvenHalf));
        assert_eq!(v.witness, Some(HalfWitness { equality: true, quotient_odd: true }));
        assert_eq!(v.predicted_ratio, ratio(1, 2));
        let v = classify_pair(&g, r, r).unwrap();
        assert_eq!(v.case_tag, CaseTag::ROdd);
    }

    #[test]
    fn d4_commutator_order() {
        let (g, r, s) = d4();
        assert_eq!(commutator_order_class2(&g, r, s).unwrap(), 2);
        assert_eq!(commutator_order_class2(&g, r, ElemId(0)).unwrap(), 1);
        assert!(class2_identities_check(&g, r, s, 8).unwrap());
    }

    #[test]
    fn heis9_generators() {
        let g = generate(&[
            Unitriangular::elementary(3, 9, 0, 1, 1).unwrap().into(),
            Unitriangular::elementary(3, 9, 1, 2, 1).unwrap().into(),
        ])
        .unwrap();
        let (x, y) = (g.generator_ids()[0], g.generator_ids()[1]);
        assert_eq!(commutator_order_class2(&g, x, y).unwrap(), 9);
        assert!(class2_identities_check(&g, x, y, 9).unwrap());
    }

    #[test]
    fn class3_is_rejected() {
        let g = generate(&[cyc(8, &[&[1, 2, 3, 4, 5, 6, 7, 8]]), cyc(8, &[&[2, 8], &[3, 7], &[4, 6]])]).unwrap();
        let (x, y) = (g.generator_ids()[0], g.generator_ids()[1]);
        assert!(matches!(classify_pair(&g, x, y), Err(CheckError::Precondition(_))));
        assert!(matches!(class2_identities_check(&g, x, y, 3), Err(CheckError::Precondition(_))));
    }

    #[test]
    fn all_d4_pairs_realize_three_ratios() {
        let (g, _, _) = d4();
        let mut seen = Vec::new();
        for a in g.ids() {
            for b in g.ids() {
                let v = classify_pair(&g, a, b).unwrap();
                if !seen.contains(&v.predicted_ratio) {
                    seen.push(v.predicted_ratio);
                }
                commutator_order_class2(&g, a, b).unwrap();
            }
        }
        seen.sort();
        assert_eq!(seen, [ratio(1, 2), ratio(1, 1), ratio(2, 1)]);
    }
}
