//! Explicit finite categories.
//!
//! A [`FiniteCategory`] is a table: objects, typed arrows, an identity for
//! every object and a composite for every composable pair. Arrows are
//! globally named; two arrows are equal exactly when they are the same
//! table entry. Composition follows the usual `g ∘ f` convention:
//! `compose(after, then)` is "`then` first, `after` second".
//!
//! Everything downstream works on [`Obj`] / [`Arr`] handles, which are plain
//! indices into the tables of the category that produced them.

mod file;
mod predicates;
mod view;

pub use file::{ArrowDecl, CategoryFile, CompositeDecl};
pub use predicates::{
    epic_witness, find_inverse, inverses, is_epic, is_groupoid, is_monic, monic_witness, Witness,
};
pub use view::{CategoryView, DEFAULT_BUDGET};

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("enumeration budget exceeded: {needed} arrows requested, budget is {budget}")]
    EnumerationBudgetExceeded { needed: u128, budget: usize },
}

/// Name of an object.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectId(pub String);

/// Name of an arrow.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArrowId(pub String);

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for ArrowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Handle to an object of a particular [`FiniteCategory`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Obj(pub(crate) usize);

/// Handle to an arrow of a particular [`FiniteCategory`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arr(pub(crate) usize);

impl Obj {
    pub fn index(self) -> usize {
        self.0
    }
}

impl Arr {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowRecord {
    pub name: ArrowId,
    pub dom: Obj,
    pub cod: Obj,
}

const NO_ARROW: u32 = u32::MAX;
const DENSE_LIMIT: usize = 2048;

#[derive(Clone, Debug, PartialEq, Eq)]
enum ComposeTable {
    /// `table[after * n + then]`, `NO_ARROW` for non-composable pairs.
    Dense {
        n: usize,
        table: Vec<u32>,
    },
    Sparse(HashMap<(u32, u32), u32>),
}

impl ComposeTable {
    fn get(&self, after: Arr, then: Arr) -> Option<Arr> {
        match self {
            ComposeTable::Dense { n, table } => {
                let v = table[after.0 * n + then.0];
                (v != NO_ARROW).then_some(Arr(v as usize))
            }
            ComposeTable::Sparse(map) => map
                .get(&(after.0 as u32, then.0 as u32))
                .map(|&v| Arr(v as usize)),
        }
    }
}

/// A finite category given by explicit tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<ObjectId>,
    arrows: Vec<ArrowRecord>,
    identities: Vec<Arr>,
    compose: ComposeTable,
    hom: Vec<Vec<Arr>>,
    object_index: HashMap<String, Obj>,
    arrow_index: HashMap<String, Arr>,
}

/// One violated law instance, with the arrows that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    pub witnesses: Vec<String>,
}

impl Violation {
    pub fn new(law: impl Into<String>, witnesses: Vec<String>) -> Self {
        Violation {
            law: law.into(),
            witnesses,
        }
    }
}

/// Outcome of an exhaustive law check. `ok` holds exactly when there are no
/// violations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        AxiomReport {
            ok: violations.is_empty(),
            violations,
        }
    }
}

impl FiniteCategory {
    /// Builds a category from indexed data. `compose` is consulted for every
    /// pair `(after, then)` with `dom(after) = cod(then)`, according to the
    /// declared typing, and must return an arrow index.
    pub fn from_fn<F>(
        objects: Vec<ObjectId>,
        arrows: Vec<(ArrowId, usize, usize)>,
        identities: Vec<usize>,
        mut compose: F,
    ) -> Result<Self, CategoryError>
    where
        F: FnMut(usize, usize) -> Option<usize>,
    {
        let n_obj = objects.len();
        let n_arr = arrows.len();
        if identities.len() != n_obj {
            return Err(CategoryError::MalformedTable(format!(
                "{} identities for {} objects",
                identities.len(),
                n_obj
            )));
        }

        let mut object_index = HashMap::with_capacity(n_obj);
        for (i, o) in objects.iter().enumerate() {
            if o.0.is_empty() {
                return Err(CategoryError::MalformedTable("empty object name".into()));
            }
            if object_index.insert(o.0.clone(), Obj(i)).is_some() {
                return Err(CategoryError::MalformedTable(format!(
                    "duplicate object `{o}`"
                )));
            }
        }

        let mut records = Vec::with_capacity(n_arr);
        let mut arrow_index = HashMap::with_capacity(n_arr);
        let mut hom = vec![Vec::new(); n_obj * n_obj];
        for (i, (name, dom, cod)) in arrows.into_iter().enumerate() {
            if name.0.is_empty() {
                return Err(CategoryError::MalformedTable("empty arrow name".into()));
            }
            if dom >= n_obj || cod >= n_obj {
                return Err(CategoryError::MalformedTable(format!(
                    "arrow `{name}` has a dangling endpoint"
                )));
            }
            if arrow_index.insert(name.0.clone(), Arr(i)).is_some() {
                return Err(CategoryError::MalformedTable(format!(
                    "duplicate arrow `{name}`"
                )));
            }
            hom[dom * n_obj + cod].push(Arr(i));
            records.push(ArrowRecord {
                name,
                dom: Obj(dom),
                cod: Obj(cod),
            });
        }

        let identities = identities
            .into_iter()
            .enumerate()
            .map(|(o, a)| {
                if a < n_arr {
                    Ok(Arr(a))
                } else {
                    Err(CategoryError::MalformedTable(format!(
                        "identity of `{}` is dangling",
                        objects[o]
                    )))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;

        let mut fill = |insert: &mut dyn FnMut(usize, usize, u32)| -> Result<(), CategoryError> {
            for then in 0..n_arr {
                let mid = records[then].cod.0;
                for cod in 0..n_obj {
                    for &after in &hom[mid * n_obj + cod] {
                        match compose(after.0, then) {
                            Some(r) if r < n_arr => insert(after.0, then, r as u32),
                            Some(_) => {
                                return Err(CategoryError::MalformedTable(format!(
                                    "composite {} ∘ {} is dangling",
                                    records[after.0].name, records[then].name
                                )))
                            }
                            None => {
                                return Err(CategoryError::MalformedTable(format!(
                                    "composite {} ∘ {} is missing",
                                    records[after.0].name, records[then].name
                                )))
                            }
                        }
                    }
                }
            }
            Ok(())
        };

        let compose_table = if n_arr <= DENSE_LIMIT {
            let mut table = vec![NO_ARROW; n_arr * n_arr];
            fill(&mut |a, t, r| table[a * n_arr + t] = r)?;
            ComposeTable::Dense { n: n_arr, table }
        } else {
            let mut map = HashMap::new();
            fill(&mut |a, t, r| {
                map.insert((a as u32, t as u32), r);
            })?;
            ComposeTable::Sparse(map)
        };

        Ok(FiniteCategory {
            objects,
            arrows: records,
            identities,
            compose: compose_table,
            hom,
            object_index,
            arrow_index,
        })
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = Obj> + Clone {
        (0..self.objects.len()).map(Obj)
    }

    pub fn arrows(&self) -> impl ExactSizeIterator<Item = Arr> + Clone {
        (0..self.arrows.len()).map(Arr)
    }

    pub fn object(&self, name: &str) -> Result<Obj, CategoryError> {
        self.object_index
            .get(name)
            .copied()
            .ok_or_else(|| CategoryError::UnknownObject(name.to_string()))
    }

    pub fn arrow(&self, name: &str) -> Result<Arr, CategoryError> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| CategoryError::UnknownArrow(name.to_string()))
    }

    pub fn object_name(&self, o: Obj) -> &ObjectId {
        &self.objects[o.0]
    }

    pub fn arrow_name(&self, a: Arr) -> &ArrowId {
        &self.arrows[a.0].name
    }

    pub fn dom(&self, a: Arr) -> Obj {
        self.arrows[a.0].dom
    }

    pub fn cod(&self, a: Arr) -> Obj {
        self.arrows[a.0].cod
    }

    pub fn identity(&self, o: Obj) -> Arr {
        self.identities[o.0]
    }

    pub fn is_identity(&self, a: Arr) -> bool {
        let d = self.dom(a);
        d == self.cod(a) && self.identity(d) == a
    }

    /// `after ∘ then`, or `None` when `dom(after) ≠ cod(then)`.
    pub fn compose(&self, after: Arr, then: Arr) -> Option<Arr> {
        self.compose.get(after, then)
    }

    /// Arrows `a → b` in table order.
    pub fn hom(&self, a: Obj, b: Obj) -> &[Arr] {
        &self.hom[a.0 * self.objects.len() + b.0]
    }

    pub(crate) fn contains(&self, a: Arr) -> bool {
        a.0 < self.arrows.len()
    }

    /// Exhaustively checks the category laws and reports every violated
    /// instance.
    pub fn validate(&self) -> AxiomReport {
        let mut violations = Vec::new();
        let name = |a: Arr| self.arrow_name(a).0.clone();

        for o in self.objects() {
            let id = self.identity(o);
            if self.dom(id) != o || self.cod(id) != o {
                violations.push(Violation::new(
                    "identity-typing",
                    vec![self.object_name(o).0.clone(), name(id)],
                ));
            }
        }

        for then in self.arrows() {
            for after in self.arrows() {
                let Some(c) = self.compose(after, then) else {
                    continue;
                };
                if self.dom(c) != self.dom(then) || self.cod(c) != self.cod(after) {
                    violations.push(Violation::new(
                        "composition-typing",
                        vec![name(after), name(then), name(c)],
                    ));
                }
            }
        }

        for f in self.arrows() {
            let left = self.compose(self.identity(self.cod(f)), f);
            if left != Some(f) {
                violations.push(Violation::new(
                    "left-unit",
                    vec![name(f), name(self.identity(self.cod(f)))],
                ));
            }
            let right = self.compose(f, self.identity(self.dom(f)));
            if right != Some(f) {
                violations.push(Violation::new(
                    "right-unit",
                    vec![name(f), name(self.identity(self.dom(f)))],
                ));
            }
        }

        for f in self.arrows() {
            for g in self.arrows_from(self.cod(f)) {
                let Some(gf) = self.compose(g, f) else {
                    continue;
                };
                for h in self.arrows_from(self.cod(g)) {
                    let Some(hg) = self.compose(h, g) else {
                        continue;
                    };
                    // Mistyped intermediate composites are reported above.
                    let (Some(l), Some(r)) = (self.compose(h, gf), self.compose(hg, f)) else {
                        continue;
                    };
                    if l != r {
                        violations.push(Violation::new(
                            "associativity",
                            vec![name(h), name(g), name(f)],
                        ));
                    }
                }
            }
        }

        AxiomReport::from_violations(violations)
    }

    /// All arrows with the given domain, grouped by codomain in object order.
    pub fn arrows_from(&self, a: Obj) -> impl Iterator<Item = Arr> + '_ {
        self.objects()
            .flat_map(move |b| self.hom(a, b).iter().copied())
    }

    /// All arrows with the given codomain, grouped by domain in object order.
    pub fn arrows_into(&self, b: Obj) -> impl Iterator<Item = Arr> + '_ {
        self.objects()
            .flat_map(move |a| self.hom(a, b).iter().copied())
    }

    /// Same category with objects and arrows renamed. Used to check that
    /// searches do not depend on labels.
    pub fn relabeled(
        &self,
        object: impl Fn(&str) -> String,
        arrow: impl Fn(&str) -> String,
    ) -> Result<Self, CategoryError> {
        FiniteCategory::from_fn(
            self.objects
                .iter()
                .map(|o| ObjectId(object(&o.0)))
                .collect(),
            self.arrows
                .iter()
                .map(|r| (ArrowId(arrow(&r.name.0)), r.dom.0, r.cod.0))
                .collect(),
            self.identities.iter().map(|a| a.0).collect(),
            |a, t| self.compose(Arr(a), Arr(t)).map(|c| c.0),
        )
    }

    /// Materializes any view whose total arrow count is within `budget`.
    pub fn materialize<V: CategoryView>(view: &V, budget: usize) -> Result<Self, CategoryError>
    where
        V::Arrow: Ord,
    {
        let objects = view.objects();
        let mut arrows = Vec::new();
        let mut index = std::collections::BTreeMap::new();
        for (i, a) in objects.iter().enumerate() {
            for (j, b) in objects.iter().enumerate() {
                for f in view.hom(a, b)?.iter() {
                    if arrows.len() >= budget {
                        return Err(CategoryError::EnumerationBudgetExceeded {
                            needed: arrows.len() as u128 + 1,
                            budget,
                        });
                    }
                    index.insert(f.clone(), arrows.len());
                    arrows.push((f.clone(), i, j));
                }
            }
        }
        let identities = objects
            .iter()
            .map(|o| index[&view.identity(o)])
            .collect::<Vec<_>>();
        let names = arrows
            .iter()
            .map(|(f, d, c)| (ArrowId(view.arrow_label(f)), *d, *c))
            .collect::<Vec<_>>();
        FiniteCategory::from_fn(
            objects
                .iter()
                .map(|o| ObjectId(view.object_label(o)))
                .collect(),
            names,
            identities,
            |a, t| {
                index
                    .get(&view.compose(&arrows[a].0, &arrows[t].0))
                    .copied()
            },
        )
    }
}
