//! Element syntax.
//!
//! * cycle products such as `(1 2 3 4)(1 3)`, 1-based and multiplied left to
//!   right, `()` for the identity;
//! * bracketed lists `[2, 3, 1]`: 1-based images for permutations, row-major
//!   residues for unitriangular matrices;
//! * `#17`: the element at that index of the group's enumeration.

use ordcalc_core::{FiniteGroup, GroupElement, Permutation, Unitriangular};

use crate::error::AppError;

/// The representation an element is parsed into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Carrier {
    Permutation { degree: usize },
    Unitriangular { dimension: usize, modulus: u64 },
}

impl Carrier {
    pub fn of(x: &GroupElement) -> Self {
        match x {
            GroupElement::Perm(p) => Carrier::Permutation { degree: p.degree() },
            GroupElement::Matrix(m) => Carrier::Unitriangular { dimension: m.dim(), modulus: m.modulus() },
        }
    }
}

fn malformed(text: &str, why: impl std::fmt::Display) -> AppError {
    AppError::Malformed(format!("element `{text}`: {why}"))
}

fn numbers(text: &str, body: &str) -> Result<Vec<u64>, AppError> {
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|_| malformed(text, format!("`{t}` is not a nonnegative integer"))))
        .collect()
}

fn parse_cycles(text: &str, degree: usize) -> Result<GroupElement, AppError> {
    let mut acc: GroupElement = Permutation::identity(degree).into();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body_end = rest.find(')').ok_or_else(|| malformed(text, "unclosed cycle"))?;
        if !rest.starts_with('(') {
            return Err(malformed(text, "expected `(`"));
        }
        let points = numbers(text, &rest[1..body_end])?;
        if points.contains(&0) {
            return Err(malformed(text, "cycle points are 1-based"));
        }
        let cycle: Vec<usize> = points.iter().map(|&p| p as usize - 1).collect();
        let p = Permutation::from_cycles(degree, &[cycle]).map_err(|e| malformed(text, e))?;
        acc = acc.multiply(&p.into()).expect("same degree");
        rest = rest[body_end + 1..].trim_start();
    }
    Ok(acc)
}

/// Parses an element without reference to a group.
pub fn parse_element(text: &str, carrier: Carrier) -> Result<GroupElement, AppError> {
    let t = text.trim();
    match carrier {
        Carrier::Permutation { degree } if t.starts_with('(') => parse_cycles(t, degree),
        Carrier::Permutation { degree } if t.starts_with('[') && t.ends_with(']') => {
            let images = numbers(text, &t[1..t.len() - 1])?;
            if images.len() != degree {
                return Err(malformed(text, format!("expected {degree} images, got {}", images.len())));
            }
            if images.contains(&0) {
                return Err(malformed(text, "images are 1-based"));
            }
            let p = Permutation::from_images(images.iter().map(|&i| i as u32 - 1).collect()).map_err(|e| malformed(text, e))?;
            Ok(p.into())
        }
        Carrier::Unitriangular { dimension, modulus } if t.starts_with('[') && t.ends_with(']') => {
            let entries = numbers(text, &t[1..t.len() - 1])?;
            if entries.len() != dimension * dimension {
                return Err(malformed(text, format!("expected {} entries, got {}", dimension * dimension, entries.len())));
            }
            Ok(Unitriangular::from_entries(dimension, modulus, entries).map_err(|e| malformed(text, e))?.into())
        }
        Carrier::Permutation { .. } => Err(malformed(text, "expected cycle notation or an image list")),
        Carrier::Unitriangular { .. } => Err(malformed(text, "expected a row-major residue list")),
    }
}

/// Parses an element of `group`; `#k` refers to the enumeration.
pub fn parse_member(text: &str, group: &FiniteGroup) -> Result<GroupElement, AppError> {
    let t = text.trim();
    if let Some(idx) = t.strip_prefix('#') {
        let k: usize = idx.parse().map_err(|_| malformed(text, "index must be a nonnegative integer"))?;
        let id = group.id_at(k).map_err(|_| malformed(text, format!("index beyond group order {}", group.size())))?;
        return Ok(group.element(id).clone());
    }
    let x = parse_element(t, Carrier::of(&group.elements()[0]))?;
    group.id_of(&x).map_err(|_| malformed(text, "not a member of the group"))?;
    Ok(x)
}
