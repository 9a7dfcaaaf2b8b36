//! Running checks over all ordered pairs of a group, in parallel.
//!
//! The pair space is cut into a fixed number of chunks that does not depend
//! on the worker count; workers claim chunks from a shared counter and the
//! partial tallies are merged in chunk order, so reports are identical for any
//! number of workers.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use ordcalc_core::{ElemId, FiniteGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::checks::{Check, PairChecker, Tally};
use crate::error::AppError;

const CHUNKS: usize = 256;

/// Which ordered pairs a sweep visits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairSpace {
    All,
    /// Uniform random pairs drawn from a generator seeded by the group name.
    Sampled(usize),
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub group: String,
    pub order: usize,
    pub class: Option<usize>,
    pub checks: Vec<Check>,
    pub sampled: Option<usize>,
    pub hall_regular: bool,
    pub tally: Tally,
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.tally.violations.is_empty()
    }
}

/// FNV-1a, so the sample seed is fixed by the group name alone.
fn name_seed(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

pub fn sample_pairs(name: &str, order: usize, count: usize) -> Vec<(ElemId, ElemId)> {
    let mut rng = ChaCha8Rng::seed_from_u64(name_seed(name));
    (0..count)
        .map(|_| (ElemId(rng.gen_range(0..order) as u32), ElemId(rng.gen_range(0..order) as u32)))
        .collect()
}

pub fn sweep(name: &str, group: &FiniteGroup, checks: &[Check], space: &PairSpace, workers: usize) -> Result<SweepReport, AppError> {
    if workers == 0 {
        return Err(AppError::Usage("worker count must be at least 1".into()));
    }
    let checker = PairChecker::new(group, checks)?;
    let start = Instant::now();
    let n = group.size();
    let sample = match space {
        PairSpace::All => None,
        PairSpace::Sampled(k) => Some(sample_pairs(name, n, *k)),
    };
    let total = sample.as_ref().map_or(n * n, Vec::len);
    let chunk_len = total.div_ceil(CHUNKS).max(1);
    let chunks = total.div_ceil(chunk_len);

    let run_chunk = |c: usize| {
        let mut t = Tally::default();
        for k in c * chunk_len..((c + 1) * chunk_len).min(total) {
            let (a, b) = match &sample {
                Some(s) => s[k],
                None => (ElemId((k / n) as u32), ElemId((k % n) as u32)),
            };
            checker.check(a, b, &mut t);
        }
        t
    };

    let slots: Vec<Mutex<Option<Tally>>> = (0..chunks).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..workers.min(chunks.max(1)) {
            s.spawn(|| loop {
                let c = next.fetch_add(1, Ordering::Relaxed);
                if c >= chunks {
                    break;
                }
                let t = run_chunk(c);
                *slots[c].lock().expect("no poisoned slot") = Some(t);
            });
        }
    });
    let mut tally = Tally::default();
    for slot in slots {
        tally.merge(slot.into_inner().expect("no poisoned slot").expect("every chunk ran"));
    }

    Ok(SweepReport {
        group: name.to_string(),
        order: n,
        class: group.nilpotency_class(),
        checks: checker.checks.clone(),
        sampled: sample.map(|s| s.len()),
        hall_regular: checker.hall_regular,
        tally,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    #[test]
    fn worker_count_does_not_change_the_tally() {
        let g = lookup("mod16").unwrap().spec.build(1000).unwrap();
        let checks = Check::applicable(g.nilpotency_class());
        let one = sweep("mod16", &g, &checks, &PairSpace::All, 1).unwrap();
        let many = sweep("mod16", &g, &checks, &PairSpace::All, 7).unwrap();
        assert_eq!(one.tally, many.tally);
        assert_eq!(one.tally.pairs, 256);
        assert!(one.is_clean());
    }

    #[test]
    fn samples_are_reproducible() {
        assert_eq!(sample_pairs("x", 100, 50), sample_pairs("x", 100, 50));
        assert_ne!(sample_pairs("x", 100, 50), sample_pairs("y", 100, 50));
        let g = lookup("heis3").unwrap().spec.build(1000).unwrap();
        let r = sweep("heis3", &g, &[Check::Sandwich], &PairSpace::Sampled(100), 3).unwrap();
        assert_eq!((r.tally.pairs, r.sampled), (100, Some(100)));
    }

    #[test]
    fn zero_workers_is_a_usage_error() {
        let g = lookup("D4").unwrap().spec.build(1000).unwrap();
        assert!(matches!(sweep("D4", &g, &[Check::Sandwich], &PairSpace::All, 0), Err(AppError::Usage(_))));
    }
}
