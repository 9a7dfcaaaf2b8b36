//! Observed ratio sets `o(ab)/o(a,b)` grouped by nilpotency class.

use std::collections::BTreeMap;

use ordcalc_core::arith::{ratio, ratio_primes_at_most, Ratio};

use crate::sweep::SweepReport;

pub type Census = BTreeMap<usize, BTreeMap<Ratio, u64>>;

/// Unions the ratio multisets of the nilpotent reports by class.
pub fn ratio_census<'a>(reports: impl IntoIterator<Item = &'a SweepReport>) -> Census {
    let mut out = Census::new();
    for r in reports {
        if let Some(class) = r.class {
            let set = out.entry(class).or_default();
            for (q, n) in &r.tally.ratios {
                *set.entry(*q).or_insert(0) += n;
            }
        }
    }
    out
}

/// Problems with a census: a ratio with a prime above the class, or a class-2
/// ratio outside `{1/2, 1, 2}`.
pub fn census_problems(census: &Census) -> Vec<String> {
    let allowed2 = [ratio(1, 2), ratio(1, 1), ratio(2, 1)];
    let mut out = Vec::new();
    for (&class, set) in census {
        for q in set.keys() {
            if !ratio_primes_at_most(q, class as u64) {
                out.push(format!("class {class}: ratio {}/{} has a prime above {class}", q.numer(), q.denom()));
            }
            if class <= 2 && !allowed2.contains(q) {
                out.push(format!("class {class}: ratio {}/{} outside {{1/2, 1, 2}}", q.numer(), q.denom()));
            }
        }
    }
    out
}
