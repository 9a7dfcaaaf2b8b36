//! Built-in groups.

use crate::spec::{GroupSpec, Kind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub spec: GroupSpec,
    /// For p-groups.
    pub prime: Option<u64>,
    /// Number of random ordered pairs to check instead of all of them.
    pub sample: Option<usize>,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        &self.spec.name
    }
}

fn perm(name: &str, degree: usize, gens: &[&str], order: usize, class: Option<usize>, prime: Option<u64>) -> CatalogEntry {
    CatalogEntry {
        spec: GroupSpec {
            name: name.into(),
            kind: Kind::Permutation,
            degree: Some(degree),
            dimension: None,
            modulus: None,
            generators: gens.iter().map(|s| s.to_string()).collect(),
            expected_order: Some(order),
            expected_class: class,
        },
        prime,
        sample: None,
    }
}

/// Row-major identity of size `dim` with the given `(row, col)` entries set to 1.
fn elementary(dim: usize, cells: &[(usize, usize)]) -> String {
    let mut e = vec![0u64; dim * dim];
    for i in 0..dim {
        e[i * dim + i] = 1;
    }
    for &(r, c) in cells {
        e[r * dim + c] = 1;
    }
    let parts: Vec<String> = e.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn matrix(name: &str, dim: usize, modulus: u64, cells: &[(usize, usize)], order: usize, class: usize, prime: u64) -> CatalogEntry {
    CatalogEntry {
        spec: GroupSpec {
            name: name.into(),
            kind: Kind::Unitriangular,
            degree: None,
            dimension: Some(dim),
            modulus: Some(modulus),
            generators: cells.iter().map(|&c| elementary(dim, &[c])).collect(),
            expected_order: Some(order),
            expected_class: Some(class),
        },
        prime: Some(prime),
        sample: None,
    }
}

const HEIS: &[(usize, usize)] = &[(0, 1), (1, 2)];
const UT4: &[(usize, usize)] = &[(0, 1), (1, 2), (2, 3)];

/// Pairs checked in groups too large for an exhaustive sweep.
pub const SAMPLE_PAIRS: usize = 4096;

pub fn catalog() -> Vec<CatalogEntry> {
    let mut heis27 = matrix("heis27", 3, 27, HEIS, 19683, 2, 3);
    heis27.sample = Some(SAMPLE_PAIRS);
    vec![
        perm("z4xz6", 10, &["(1 2 3 4)", "(5 6 7 8 9 10)"], 24, Some(1), None),
        perm("z8xz4", 12, &["(1 2 3 4 5 6 7 8)", "(9 10 11 12)"], 32, Some(1), Some(2)),
        perm("z9xz3", 12, &["(1 2 3 4 5 6 7 8 9)", "(10 11 12)"], 27, Some(1), Some(3)),
        perm(
            "z12xz18",
            30,
            &["(1 2 3 4 5 6 7 8 9 10 11 12)", "(13 14 15 16 17 18 19 20 21 22 23 24 25 26 27 28 29 30)"],
            216,
            Some(1),
            None,
        ),
        perm("D4", 4, &["(1 2 3 4)", "(1 3)"], 8, Some(2), Some(2)),
        perm("Q8", 8, &["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"], 8, Some(2), Some(2)),
        perm("dih16", 8, &["(1 2 3 4 5 6 7 8)", "(2 8)(3 7)(4 6)"], 16, Some(3), Some(2)),
        perm("mod16", 8, &["(1 2 3 4 5 6 7 8)", "(2 6)(4 8)"], 16, Some(2), Some(2)),
        matrix("heis3", 3, 3, HEIS, 27, 2, 3),
        matrix("heis4", 3, 4, HEIS, 64, 2, 2),
        matrix("heis5", 3, 5, HEIS, 125, 2, 5),
        matrix("heis9", 3, 9, HEIS, 729, 2, 3),
        heis27,
        matrix("ut4_2", 4, 2, UT4, 64, 3, 2),
        matrix("ut4_3", 4, 3, UT4, 729, 3, 3),
        perm("D4xZ3", 7, &["(1 2 3 4)", "(1 3)", "(5 6 7)"], 24, Some(2), None),
        perm("Q8xZ4", 12, &["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)", "(9 10 11 12)"], 32, Some(2), Some(2)),
        matrix("heis3xZ3", 5, 3, &[(0, 1), (1, 2), (3, 4)], 81, 2, 3),
        perm("dih16xZ3", 11, &["(1 2 3 4 5 6 7 8)", "(2 8)(3 7)(4 6)", "(9 10 11)"], 48, Some(3), None),
        perm("D4xD4", 8, &["(1 2 3 4)", "(1 3)", "(5 6 7 8)", "(5 7)"], 64, Some(2), Some(2)),
        perm("S4", 4, &["(1 2 3 4)", "(1 2)"], 24, None, None),
        perm("S3xZ4", 7, &["(1 2 3)", "(1 2)", "(4 5 6 7)"], 24, None, None),
    ]
}

pub fn lookup(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name() == name)
}
