//! The per-pair checks a sweep can run.

use std::collections::BTreeMap;
use std::fmt;

use ordcalc_core::arith::{factorize, gcd, ratio, ratio_primes_at_most, Ratio};
use ordcalc_core::class2::{class2_identities_check, classify_pair, commutator_order_class2, CaseTag};
use ordcalc_core::hall::{center_power_check, class_constants, factored_constants, ClassConstants, Factored, MAX_GAMMA};
use ordcalc_core::order::{
    check_deviation, commutator_exponent, commutator_exponent_by_scan, jungnickel_data, mutual_order, mutual_order_of_powers,
    verify_closed_form, PairOrderReport,
};
use ordcalc_core::{CheckError, ElemId, FiniteGroup, GroupArith};

use crate::error::AppError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    /// Divisibility sandwich for `o(a,b)`, the closed form and symmetry.
    Sandwich,
    /// `o(a^k, b^k)` reduction laws and the solution set of `a^N b^N = 1`.
    Powers,
    /// `(ab)^k = a^k b^k d_k` with `d_k` in the commutator subgroup.
    Deviation,
    /// `lcm/gcd | o(ab) | lcm` in abelian groups.
    WeakBound,
    /// `B`, `C` divisibilities, the ratio prime bound and the commutator exponent bound.
    HallBounds,
    /// `o(ab) = o(a,b)` when every prime dividing `|G|` exceeds the class.
    HallCorollary,
    /// Powers of formal commutators once their `n`-th powers are central.
    CenterPower,
    /// Class-2 identities, commutator order formulas and the ratio ladder.
    Class2,
}

pub const ALL_CHECKS: [Check; 8] = [
    Check::Sandwich,
    Check::Powers,
    Check::Deviation,
    Check::WeakBound,
    Check::HallBounds,
    Check::HallCorollary,
    Check::CenterPower,
    Check::Class2,
];

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Sandwich => "sandwich",
            Check::Powers => "powers",
            Check::Deviation => "deviation",
            Check::WeakBound => "weakbound",
            Check::HallBounds => "hall-bounds",
            Check::HallCorollary => "hall-corollary",
            Check::CenterPower => "center-power",
            Check::Class2 => "class2",
        }
    }

    pub fn parse(name: &str) -> Result<Self, AppError> {
        ALL_CHECKS
            .into_iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| AppError::Usage(format!("unknown check `{name}`")))
    }

    /// Parses a comma-separated list, keeping the canonical order.
    pub fn parse_list(list: &str) -> Result<Vec<Self>, AppError> {
        let mut out: Vec<Check> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).map(Check::parse).collect::<Result<_, _>>()?;
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(AppError::Usage("empty check list".into()));
        }
        Ok(out)
    }

    pub fn applies_to(self, class: Option<usize>) -> bool {
        match self {
            Check::Sandwich | Check::Powers | Check::Deviation => true,
            Check::WeakBound => class == Some(1),
            Check::HallBounds | Check::HallCorollary | Check::CenterPower => class.is_some_and(|c| c <= MAX_GAMMA),
            Check::Class2 => class.is_some_and(|c| c <= 2),
        }
    }

    pub fn applicable(class: Option<usize>) -> Vec<Self> {
        ALL_CHECKS.into_iter().filter(|c| c.applies_to(class)).collect()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failed check on one pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: Check,
    pub a: ElemId,
    pub b: ElemId,
    pub detail: String,
}

/// What a run over some pairs accumulates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub pairs: u64,
    pub violations: Vec<Violation>,
    pub ratios: BTreeMap<Ratio, u64>,
    pub cases: BTreeMap<CaseTag, u64>,
    pub center_examined: u64,
    pub center_finer: u64,
}

impl Tally {
    pub fn merge(&mut self, other: Tally) {
        self.pairs += other.pairs;
        self.violations.extend(other.violations);
        for (r, n) in other.ratios {
            *self.ratios.entry(r).or_insert(0) += n;
        }
        for (c, n) in other.cases {
            *self.cases.entry(c).or_insert(0) += n;
        }
        self.center_examined += other.center_examined;
        self.center_finer += other.center_finer;
    }
}

/// Shared read-only data for checking pairs of one group.
pub struct PairChecker<'g> {
    pub group: &'g FiniteGroup,
    pub checks: Vec<Check>,
    class: Option<usize>,
    constants: Option<ClassConstants>,
    b_const: Option<Factored>,
    c_const: Option<Factored>,
    /// Every prime dividing `|G|` exceeds the class.
    pub hall_regular: bool,
    identity_n_max: i64,
}

impl<'g> PairChecker<'g> {
    /// Fails with a usage error if a check does not apply to the group.
    pub fn new(group: &'g FiniteGroup, checks: &[Check]) -> Result<Self, AppError> {
        let class = group.nilpotency_class();
        if let Some(bad) = checks.iter().find(|c| !c.applies_to(class)) {
            let what = match class {
                None => "a non-nilpotent group".to_string(),
                Some(c) => format!("a group of class {c}"),
            };
            return Err(AppError::Usage(format!("check `{bad}` does not apply to {what}")));
        }
        let (constants, b_const, c_const) = match class {
            Some(gamma) if (1..=MAX_GAMMA).contains(&gamma) => {
                let (_, b, c) = factored_constants(gamma)?;
                (Some(class_constants(gamma)?), Some(b), Some(c))
            }
            _ => (None, None, None),
        };
        let hall_regular = class.is_some_and(|gamma| factorize(group.size() as u64).iter().all(|&(p, _)| p > gamma as u64));
        let identity_n_max = group.exponent_bound().min(9) as i64;
        Ok(PairChecker { group, checks: checks.to_vec(), class, constants, b_const, c_const, hall_regular, identity_n_max })
    }

    fn wants(&self, c: Check) -> bool {
        self.checks.contains(&c)
    }

    /// Runs every selected check on `(a, b)` and records the ratio `o(ab)/o(a,b)`.
    pub fn check(&self, a: ElemId, b: ElemId, tally: &mut Tally) {
        let g = self.group;
        tally.pairs += 1;
        let mut found = Vec::new();
        let mut fail = |check: Check, e: CheckError| tally_violation(&mut found, check, a, b, e);

        let report = jungnickel_data(g, &a, &b);
        let report = match report {
            Ok(r) => r,
            Err(e) => {
                fail(Check::Sandwich, e);
                let o = mutual_order(g, &a, &b);
                let po = g.order(&g.mul(&a, &b));
                *tally.ratios.entry(ratio(po, o)).or_insert(0) += 1;
                tally.violations.extend(found);
                return;
            }
        };
        *tally.ratios.entry(report.ratio).or_insert(0) += 1;

        if self.wants(Check::Sandwich) {
            if let Err(e) = self.sandwich(a, b, &report) {
                fail(Check::Sandwich, e);
            }
        }
        if self.wants(Check::Powers) {
            if let Err(e) = self.powers(a, b, report.mutual_order) {
                fail(Check::Powers, e);
            }
        }
        if self.wants(Check::Deviation) {
            let derived = g.derived_subgroup();
            if let Err(e) = check_deviation(g, &a, &b, 2 * report.lcm() as usize, |d| derived.contains(*d)) {
                fail(Check::Deviation, e);
            }
        }
        if self.wants(Check::WeakBound) {
            let l = report.lcm();
            let h = gcd(report.m, report.n);
            if report.product_order % (l / h) != 0 || l % report.product_order != 0 {
                fail(Check::WeakBound, CheckError::violation("weakbound", format!("o(ab) = {} outside lcm/gcd = {} .. lcm = {l}", report.product_order, l / h)));
            }
        }
        if self.wants(Check::HallBounds) {
            if let Err(e) = self.hall_bounds(a, b, &report) {
                fail(Check::HallBounds, e);
            }
        }
        if self.wants(Check::HallCorollary) && self.hall_regular && report.product_order != report.mutual_order {
            fail(
                Check::HallCorollary,
                CheckError::violation("hall-corollary", format!("o(ab) = {} but o(a,b) = {}", report.product_order, report.mutual_order)),
            );
        }
        if self.wants(Check::CenterPower) {
            match center_power_check(g, a, b, self.constants.as_ref().expect("nilpotent")) {
                Ok(cp) => {
                    tally.center_examined += cp.examined as u64;
                    tally.center_finer += cp.finer_holds as u64;
                }
                Err(e) => fail(Check::CenterPower, e),
            }
        }
        if self.wants(Check::Class2) {
            match self.class2(a, b) {
                Ok(tag) => *tally.cases.entry(tag).or_insert(0) += 1,
                Err(e) => fail(Check::Class2, e),
            }
        }
        tally.violations.extend(found);
    }

    fn sandwich(&self, a: ElemId, b: ElemId, report: &PairOrderReport) -> Result<(), CheckError> {
        let g = self.group;
        let closed = verify_closed_form(g, &a, &b)?;
        let swapped = mutual_order(g, &b, &a);
        if closed != report.mutual_order || swapped != report.mutual_order {
            return Err(CheckError::violation(
                "symmetry",
                format!("o(a,b) = {}, closed form {closed}, o(b,a) = {swapped}", report.mutual_order),
            ));
        }
        Ok(())
    }

    fn powers(&self, a: ElemId, b: ElemId, o: u64) -> Result<(), CheckError> {
        let g = self.group;
        for k in (-2..=(o as i64 + 1)).filter(|&k| k != 0) {
            mutual_order_of_powers(g, &a, &b, k)?;
        }
        for s in ordcalc_core::arith::divisors(o) {
            let reduced = mutual_order(g, &g.pow(&a, s as i64), &g.pow(&b, s as i64));
            if s * reduced != o {
                return Err(CheckError::violation("reduction", format!("{s} * o(a^{s}, b^{s}) = {} != o(a,b) = {o}", s * reduced)));
            }
        }
        for n in 1..=2 * o as i64 {
            let trivial = g.is_identity(&g.mul(&g.pow(&a, n), &g.pow(&b, n)));
            if trivial != (n as u64).is_multiple_of(o) {
                return Err(CheckError::violation("solution-set", format!("a^{n} b^{n} trivial = {trivial} with o(a,b) = {o}")));
            }
        }
        Ok(())
    }

    fn hall_bounds(&self, a: ElemId, b: ElemId, r: &PairOrderReport) -> Result<(), CheckError> {
        let g = self.group;
        let gamma = self.class.expect("nilpotent") as u64;
        let (bc, cc) = (self.b_const.as_ref().expect("nilpotent"), self.c_const.as_ref().expect("nilpotent"));
        // x | y * K  with K given as a prime-exponent map
        let divides = |x: u64, y: u64, k: &Factored| ((y % x) as u128 * k.rem(x) as u128).is_multiple_of(x as u128);
        let (o, po, l) = (r.mutual_order, r.product_order, r.lcm());
        if !divides(po, o, bc) {
            return Err(CheckError::violation("bound-B", format!("o(ab) = {po} does not divide o(a,b) * B = {o} * B({gamma})")));
        }
        if !divides(o, po, cc) {
            return Err(CheckError::violation("bound-C", format!("o(a,b) = {o} does not divide o(ab) * C = {po} * C({gamma})")));
        }
        if !divides(po, l / r.epsilon, bc) {
            return Err(CheckError::violation("bound-lcm-B", format!("o(ab) = {po} does not divide lcm/eps * B = {} * B({gamma})", l / r.epsilon)));
        }
        if !divides(l / r.d, po, cc) {
            return Err(CheckError::violation("bound-lcm-C", format!("lcm/D = {} does not divide o(ab) * C = {po} * C({gamma})", l / r.d)));
        }
        if !ratio_primes_at_most(&r.ratio, gamma) {
            return Err(CheckError::violation("ratio-primes", format!("o(ab)/o(a,b) = {}/{} has a prime above {gamma}", r.ratio.numer(), r.ratio.denom())));
        }
        let k = commutator_exponent(g, &a, &b);
        let scan = commutator_exponent_by_scan(g, &a, &b);
        if k != scan {
            return Err(CheckError::violation("commutator-exponent", format!("o(a^-1, b^-1 a b) = {k} but least commuting power is {scan}")));
        }
        let oc = g.order(&g.commutator(&a, &b));
        if !ratio_primes_at_most(&ratio(oc, k), gamma) {
            return Err(CheckError::violation("commutator-exponent", format!("o([a,b]) / {k} = {oc}/{k} has a prime above {gamma}")));
        }
        Ok(())
    }

    fn class2(&self, a: ElemId, b: ElemId) -> Result<CaseTag, CheckError> {
        if !class2_identities_check(self.group, a, b, self.identity_n_max)? {
            return Err(CheckError::violation("class2-identities", format!("power or commutator identity fails for n <= {}", self.identity_n_max)));
        }
        commutator_order_class2(self.group, a, b)?;
        Ok(classify_pair(self.group, a, b)?.case_tag)
    }
}

fn tally_violation(out: &mut Vec<Violation>, check: Check, a: ElemId, b: ElemId, e: CheckError) {
    out.push(Violation { check, a, b, detail: e.to_string() });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    #[test]
    fn list_parsing() {
        assert_eq!(Check::parse_list("class2,sandwich,class2").unwrap(), vec![Check::Sandwich, Check::Class2]);
        assert!(Check::parse_list("bogus").is_err());
        assert!(Check::parse_list("").is_err());
    }

    #[test]
    fn applicability() {
        assert_eq!(Check::applicable(None), vec![Check::Sandwich, Check::Powers, Check::Deviation]);
        assert!(Check::applicable(Some(1)).contains(&Check::WeakBound));
        assert!(!Check::applicable(Some(3)).contains(&Check::Class2));
        let s4 = lookup("S4").unwrap().spec.build(1000).unwrap();
        assert!(matches!(PairChecker::new(&s4, &[Check::Class2]), Err(AppError::Usage(_))));
    }

    #[test]
    fn d4_all_pairs() {
        let g = lookup("D4").unwrap().spec.build(1000).unwrap();
        let checker = PairChecker::new(&g, &Check::applicable(g.nilpotency_class())).unwrap();
        let mut t = Tally::default();
        for a in g.ids() {
            for b in g.ids() {
                checker.check(a, b, &mut t);
            }
        }
        assert!(t.violations.is_empty(), "{:?}", t.violations);
        assert_eq!(t.pairs, 64);
        let keys: Vec<Ratio> = t.ratios.keys().copied().collect();
        assert_eq!(keys, vec![ratio(1, 2), ratio(1, 1), ratio(2, 1)]);
    }
}
