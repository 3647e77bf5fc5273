//! Fixture corpus support: kind detection and the dump/parse round trip.
//!
//! A dump is the canonical JSON of the in-memory value. Referenced files are
//! inlined, so a dump is self-contained.

use super::inputs::{load, parse, read, CategoryInput, FunctorFile, MonotoneMapFile, Reference};
use super::verbs::functor_from_file;
use super::CliError;
use crate::builders::Limits;
use crate::category::CategoryFile;
use crate::galois::{FinitePoset, PosetFile};
use crate::logic::{FoStructure, FrameFile, KripkeFrame, StructureFile};
use crate::nno::{RecursionData, RecursionFile};
use serde::Serialize;
use serde_json::Value;
use std::path::Path;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixtureKind {
    Category,
    Poset,
    MonotoneMap,
    Functor,
    Frame,
    Structure,
    Recursion,
}

/// Detects the schema of a fixture from its top-level keys.
pub fn kind_of(value: &Value) -> Option<FixtureKind> {
    let has = |k: &str| value.get(k).is_some();
    Some(if has("builder") || has("objects") {
        FixtureKind::Category
    } else if has("source") {
        FixtureKind::Functor
    } else if has("graph") {
        FixtureKind::MonotoneMap
    } else if has("worlds") {
        FixtureKind::Frame
    } else if has("relations") {
        FixtureKind::Structure
    } else if has("c") && has("f") {
        FixtureKind::Recursion
    } else if has("elements") && has("leq") {
        FixtureKind::Poset
    } else {
        return None;
    })
}

/// Outcome of one round trip.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundTrip {
    pub kind: FixtureKind,
    /// Whether the in-memory value could be built at all. Malformed fixtures
    /// still round-trip at the file level.
    pub built: bool,
    pub equal: bool,
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes")
}

fn reparse<T: Serialize + serde::de::DeserializeOwned>(path: &Path, v: &T) -> Result<T, CliError> {
    parse(path, &to_json(v))
}

/// The canonical dump of a fixture's in-memory value.
pub fn dump(path: &Path, limits: &Limits) -> Result<Value, CliError> {
    let value: Value = parse(path, &read(path)?)?;
    let kind = kind_of(&value).ok_or_else(|| CliError::Parse {
        path: path.display().to_string(),
        message: "unrecognized fixture schema".into(),
    })?;
    let out = match kind {
        FixtureKind::Category => serde_json::to_value(CategoryFile::from_category(
            &CategoryInput::load(path)?.build(limits)?,
        )),
        FixtureKind::Poset => serde_json::to_value(FinitePoset::from_file(&load(path)?)?.to_file()),
        FixtureKind::MonotoneMap => {
            let desc: MonotoneMapFile = load(path)?;
            let m = desc.to_map(path)?;
            serde_json::to_value(inline_map(&m))
        }
        FixtureKind::Functor => {
            let f = functor_from_file(&load(path)?, path, limits)?;
            serde_json::to_value(FunctorFile {
                source: Reference::Inline(
                    serde_json::to_value(CategoryFile::from_category(f.source())).expect("data"),
                ),
                target: Reference::Inline(
                    serde_json::to_value(CategoryFile::from_category(f.target())).expect("data"),
                ),
                object_map: f.object_names(),
                arrow_map: f.arrow_names(),
            })
        }
        FixtureKind::Frame => serde_json::to_value(KripkeFrame::from_file(&load(path)?)?.to_file()),
        FixtureKind::Structure => {
            serde_json::to_value(FoStructure::from_file(&load(path)?)?.to_file())
        }
        FixtureKind::Recursion => {
            serde_json::to_value(RecursionData::from_file(&load(path)?)?.to_file())
        }
    };
    Ok(out.expect("plain data serializes"))
}

fn inline_map(m: &crate::galois::MonotoneMap) -> MonotoneMapFile {
    let (dom, cod) = (m.dom(), m.cod());
    MonotoneMapFile {
        dom: Reference::Inline(serde_json::to_value(dom.to_file()).expect("data")),
        cod: Reference::Inline(serde_json::to_value(cod.to_file()).expect("data")),
        graph: (0..dom.len())
            .map(|x| (dom.label(x).to_string(), cod.label(m.apply(x)).to_string()))
            .collect(),
    }
}

/// Dumps a fixture, re-parses the dump, rebuilds it, and compares with the
/// value built from the original file.
pub fn round_trip(path: &Path, limits: &Limits) -> Result<RoundTrip, CliError> {
    let value: Value = parse(path, &read(path)?)?;
    let kind = kind_of(&value).ok_or_else(|| CliError::Parse {
        path: path.display().to_string(),
        message: "unrecognized fixture schema".into(),
    })?;
    let result = |built: bool, equal: bool| Ok(RoundTrip { kind, built, equal });
    match kind {
        FixtureKind::Category => {
            let input = CategoryInput::load(path)?;
            match input.build(limits) {
                Ok(cat) => {
                    let file = CategoryFile::from_category(&cat);
                    let again = reparse(path, &file)?;
                    result(true, again == file && again.to_category()? == cat)
                }
                // Malformed tables still survive at the file level.
                Err(_) => result(
                    false,
                    reparse(path, &input_file(&input))? == input_file(&input),
                ),
            }
        }
        FixtureKind::Poset => {
            let file: PosetFile = load(path)?;
            let p = FinitePoset::from_file(&file)?;
            result(
                true,
                FinitePoset::from_file(&reparse(path, &p.to_file())?)? == p,
            )
        }
        FixtureKind::MonotoneMap => {
            let m = load::<MonotoneMapFile>(path)?.to_map(path)?;
            result(true, reparse(path, &inline_map(&m))?.to_map(path)? == m)
        }
        FixtureKind::Functor => {
            let f = functor_from_file(&load(path)?, path, limits)?;
            let dumped: FunctorFile =
                serde_json::from_value(dump(path, limits)?).map_err(|e| CliError::Parse {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
            result(
                true,
                functor_from_file(&reparse(path, &dumped)?, path, limits)? == f,
            )
        }
        FixtureKind::Frame => {
            let k = KripkeFrame::from_file(&load::<FrameFile>(path)?)?;
            result(
                true,
                KripkeFrame::from_file(&reparse(path, &k.to_file())?)? == k,
            )
        }
        FixtureKind::Structure => {
            let m = FoStructure::from_file(&load::<StructureFile>(path)?)?;
            result(
                true,
                FoStructure::from_file(&reparse(path, &m.to_file())?)? == m,
            )
        }
        FixtureKind::Recursion => {
            let d = RecursionData::from_file(&load::<RecursionFile>(path)?)?;
            result(
                true,
                RecursionData::from_file(&reparse(path, &d.to_file())?)? == d,
            )
        }
    }
}

fn input_file(input: &CategoryInput) -> Value {
    serde_json::to_value(input).expect("plain data serializes")
}
