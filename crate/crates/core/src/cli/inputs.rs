//! File loading. Every parse failure keeps the path and serde's line and
//! column diagnostics.

use super::CliError;
use crate::builders::{BuilderDescription, Limits};
use crate::category::{CategoryFile, FiniteCategory};
use crate::galois::{FinitePoset, MonotoneMap, PosetFile};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn parse<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    parse(path, &read(path)?)
}

/// A category given either by explicit tables or by a builder.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum CategoryInput {
    Builder(BuilderDescription),
    File(CategoryFile),
}

impl CategoryInput {
    fn from_text(path: &Path, text: &str) -> Result<Self, CliError> {
        let value: Value = parse(path, text)?;
        if value.get("builder").is_some() {
            Ok(CategoryInput::Builder(parse(path, text)?))
        } else {
            Ok(CategoryInput::File(parse(path, text)?))
        }
    }

    fn from_value(path: &Path, field: &str, value: Value) -> Result<Self, CliError> {
        let wrap = |e: serde_json::Error| CliError::Parse {
            path: path.display().to_string(),
            message: format!("{field}: {e}"),
        };
        if value.get("builder").is_some() {
            serde_json::from_value(value)
                .map(CategoryInput::Builder)
                .map_err(wrap)
        } else {
            serde_json::from_value(value)
                .map(CategoryInput::File)
                .map_err(wrap)
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        CategoryInput::from_text(path, &read(path)?)
    }

    pub fn build(&self, limits: &Limits) -> Result<FiniteCategory, CliError> {
        Ok(match self {
            CategoryInput::Builder(desc) => desc.build(limits)?,
            CategoryInput::File(file) => file.to_category()?,
        })
    }
}

pub fn load_category(path: &Path, limits: &Limits) -> Result<FiniteCategory, CliError> {
    CategoryInput::load(path)?.build(limits)
}

/// Either a path (relative to the referring file) or an inline value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Reference {
    Path(String),
    Inline(Value),
}

impl Reference {
    fn resolve(&self, base: &Path) -> PathBuf {
        match self {
            Reference::Path(p) => base.parent().unwrap_or(Path::new(".")).join(p),
            Reference::Inline(_) => base.to_path_buf(),
        }
    }

    pub fn category(&self, base: &Path, field: &str) -> Result<CategoryInput, CliError> {
        match self {
            Reference::Path(_) => CategoryInput::load(&self.resolve(base)),
            Reference::Inline(v) => CategoryInput::from_value(base, field, v.clone()),
        }
    }

    pub fn poset(&self, base: &Path, field: &str) -> Result<PosetFile, CliError> {
        match self {
            Reference::Path(_) => load(&self.resolve(base)),
            Reference::Inline(v) => {
                serde_json::from_value(v.clone()).map_err(|e| CliError::Parse {
                    path: base.display().to_string(),
                    message: format!("{field}: {e}"),
                })
            }
        }
    }
}

/// `{"source": <path|inline>, "target": ..., "object_map": {...}, "arrow_map": {...}}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorFile {
    pub source: Reference,
    pub target: Reference,
    pub object_map: BTreeMap<String, String>,
    pub arrow_map: BTreeMap<String, String>,
}

/// `{"dom": <path|inline poset>, "cod": ..., "graph": {"x": "y", ...}}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonotoneMapFile {
    pub dom: Reference,
    pub cod: Reference,
    pub graph: BTreeMap<String, String>,
}

impl MonotoneMapFile {
    pub fn to_map(&self, base: &Path) -> Result<MonotoneMap, CliError> {
        let dom = Arc::new(FinitePoset::from_file(&self.dom.poset(base, "dom")?)?);
        let cod = Arc::new(FinitePoset::from_file(&self.cod.poset(base, "cod")?)?);
        let pairs: Vec<(&str, &str)> = self
            .graph
            .iter()
            .map(|(x, y)| (x.as_str(), y.as_str()))
            .collect();
        Ok(MonotoneMap::from_labels(dom, cod, &pairs)?)
    }
}
