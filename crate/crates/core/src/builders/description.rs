use super::{build_finrel, build_finset, build_mat, monoid_as_category, poset_as_category};
use super::{BuildError, FiniteMonoid, Limits, NamedFiniteSet};
use crate::category::FiniteCategory;
use crate::galois::FinitePoset;
use serde::{Deserialize, Serialize};

/// Builder input file, selected by its `"builder"` field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "builder", rename_all = "lowercase", deny_unknown_fields)]
pub enum BuilderDescription {
    Finset {
        sets: Vec<NamedFiniteSet>,
    },
    Finrel {
        sets: Vec<NamedFiniteSet>,
    },
    Poset {
        elements: Vec<String>,
        leq: Vec<(String, String)>,
    },
    Monoid {
        elements: Vec<String>,
        /// `mult[i][j] = elements[i] · elements[j]`
        mult: Vec<Vec<String>>,
        unit: String,
    },
    Mat {
        p: u32,
        max_dim: usize,
    },
}

impl BuilderDescription {
    pub fn build(&self, limits: &Limits) -> Result<FiniteCategory, BuildError> {
        Ok(match self {
            BuilderDescription::Finset { sets } => {
                build_finset(sets.clone(), limits)?.category().clone()
            }
            BuilderDescription::Finrel { sets } => {
                build_finrel(sets.clone(), limits)?.category().clone()
            }
            BuilderDescription::Poset { elements, leq } => {
                let p = FinitePoset::new(elements.clone(), leq)
                    .map_err(|e| BuildError::NotAPoset(e.to_string()))?;
                poset_as_category(&p)
            }
            BuilderDescription::Monoid {
                elements,
                mult,
                unit,
            } => monoid_as_category(&FiniteMonoid::from_labels(elements.clone(), mult, unit)?),
            BuilderDescription::Mat { p, max_dim } => {
                let view = build_mat(*p, *max_dim, limits.budget)?;
                FiniteCategory::materialize(&view, limits.budget)?
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_builder() {
        let cases = [
            (
                r#"{"builder":"finset","sets":[{"name":"1","elements":["*"]}]}"#,
                1,
            ),
            (
                r#"{"builder":"finrel","sets":[{"name":"1","elements":["*"]}]}"#,
                2,
            ),
            (
                r#"{"builder":"poset","elements":["a","b"],"leq":[["a","b"]]}"#,
                3,
            ),
            (
                r#"{"builder":"monoid","elements":["0","1"],"mult":[["0","1"],["1","0"]],"unit":"0"}"#,
                2,
            ),
            (r#"{"builder":"mat","p":2,"max_dim":1}"#, 5),
        ];
        for (text, arrows) in cases {
            let desc: BuilderDescription = serde_json::from_str(text).unwrap();
            let cat = desc.build(&Limits::default()).unwrap();
            assert_eq!(cat.arrow_count(), arrows, "{text}");
            assert!(cat.validate().ok);
        }
    }

    #[test]
    fn unknown_fields_and_builders_are_rejected() {
        assert!(serde_json::from_str::<BuilderDescription>(
            r#"{"builder":"mat","p":2,"max_dim":1,"x":0}"#
        )
        .is_err());
        assert!(serde_json::from_str::<BuilderDescription>(r#"{"builder":"top"}"#).is_err());
    }
}
