//! Group specification files.
//!
//! A spec is a TOML document:
//!
//! ```toml
//! name = "D4"
//! kind = "permutation"        # or "unitriangular"
//! degree = 4                  # permutations only
//! # dimension = 3             # unitriangular only
//! # modulus = 3               # unitriangular only
//! generators = ["(1 2 3 4)", "(1 3)"]
//! expected_order = 8          # optional
//! expected_class = 2          # optional
//! ```
//!
//! Generators use the element syntax of [`crate::parse`]; `#k` is not allowed.

use std::path::Path;

use ordcalc_core::{FiniteGroup, GenerateOptions, GroupElement};
use serde::{Deserialize, Serialize};

use crate::error::AppError;
use crate::parse::{parse_element, Carrier};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Permutation,
    Unitriangular,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub name: String,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_class: Option<usize>,
}

impl GroupSpec {
    pub fn from_toml(text: &str) -> Result<Self, AppError> {
        toml::from_str(text).map_err(|e| AppError::Malformed(format!("group spec: {}", e.message())))
    }

    pub fn read(path: &Path) -> Result<Self, AppError> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec serializes")
    }

    pub fn carrier(&self) -> Result<Carrier, AppError> {
        let missing = |f: &str| AppError::Malformed(format!("group spec `{}`: missing field `{f}`", self.name));
        match self.kind {
            Kind::Permutation => {
                if self.dimension.is_some() || self.modulus.is_some() {
                    return Err(AppError::Malformed(format!("group spec `{}`: permutation groups take `degree` only", self.name)));
                }
                Ok(Carrier::Permutation { degree: self.degree.ok_or_else(|| missing("degree"))? })
            }
            Kind::Unitriangular => {
                if self.degree.is_some() {
                    return Err(AppError::Malformed(format!("group spec `{}`: matrix groups take `dimension` and `modulus`", self.name)));
                }
                Ok(Carrier::Unitriangular {
                    dimension: self.dimension.ok_or_else(|| missing("dimension"))?,
                    modulus: self.modulus.ok_or_else(|| missing("modulus"))?,
                })
            }
        }
    }

    pub fn generator_elements(&self) -> Result<Vec<GroupElement>, AppError> {
        let carrier = self.carrier()?;
        if self.generators.is_empty() {
            return Err(AppError::Malformed(format!("group spec `{}`: no generators", self.name)));
        }
        self.generators.iter().map(|g| parse_element(g, carrier)).collect()
    }

    /// Generates the group and checks the expected order and class if given.
    pub fn build(&self, cap: usize) -> Result<FiniteGroup, AppError> {
        let gens = self.generator_elements()?;
        let g = FiniteGroup::generate(&gens, GenerateOptions { cap, ..GenerateOptions::default() })?;
        if let Some(o) = self.expected_order {
            if g.size() != o {
                return Err(AppError::Malformed(format!("group `{}` has order {}, spec expects {o}", self.name, g.size())));
            }
        }
        if let Some(c) = self.expected_class {
            if g.nilpotency_class() != Some(c) {
                return Err(AppError::Malformed(format!(
                    "group `{}` has class {}, spec expects {c}",
                    self.name,
                    class_text(g.nilpotency_class())
                )));
            }
        }
        Ok(g)
    }
}

pub fn class_text(class: Option<usize>) -> String {
    class.map_or_else(|| "-".to_string(), |c| c.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"
name = "heis3"
kind = "unitriangular"
dimension = 3
modulus = 3
generators = ["[1,1,0,0,1,0,0,0,1]", "[1,0,0,0,1,1,0,0,1]"]
expected_order = 27
expected_class = 2
"#;
        let spec = GroupSpec::from_toml(text).unwrap();
        assert_eq!(GroupSpec::from_toml(&spec.to_toml()).unwrap(), spec);
        assert_eq!(spec.build(1000).unwrap().size(), 27);
        assert!(matches!(spec.build(10), Err(AppError::Cap(10))));
    }

    #[test]
    fn rejects_inconsistent_fields() {
        let bad = r#"
name = "x"
kind = "permutation"
dimension = 3
generators = ["(1 2)"]
"#;
        assert!(matches!(GroupSpec::from_toml(bad).unwrap().build(100), Err(AppError::Malformed(_))));
        assert!(matches!(GroupSpec::from_toml("name = 1"), Err(AppError::Malformed(_))));
        let wrong_order = "name = \"z\"\nkind = \"permutation\"\ndegree = 3\ngenerators = [\"(1 2 3)\"]\nexpected_order = 6\n";
        assert!(matches!(GroupSpec::from_toml(wrong_order).unwrap().build(100), Err(AppError::Malformed(_))));
    }
}
