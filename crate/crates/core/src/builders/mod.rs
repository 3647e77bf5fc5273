//! Builders for the standard example categories: finite sets and functions,
//! finite sets and relations, posets, monoids, and matrices over `Z_p`.

mod description;
mod matrix;
mod monoid;
mod poset;

pub use description::BuilderDescription;
pub use matrix::{build_mat, MatView, MatrixOverZp};
pub use monoid::{monoid_as_category, FiniteMonoid, MonoidHom};
pub use poset::{category_to_poset, poset_arrow, poset_as_category};

use crate::category::{Arr, ArrowId, CategoryError, FiniteCategory, ObjectId, DEFAULT_BUDGET};
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error("set `{name}` has {size} elements, cap is {cap}")]
    CapExceeded {
        name: String,
        size: usize,
        cap: usize,
    },
    #[error("invalid set: {0}")]
    InvalidSet(String),
    #[error("invalid function: {0}")]
    InvalidFunction(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("invalid monoid: {law} fails at {witness}")]
    InvalidMonoid { law: String, witness: String },
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("not a poset: {0}")]
    NotAPoset(String),
}

/// Size limits for exhaustive constructions. `cap` bounds the size of each
/// input set (each builder has its own default); `budget` bounds the total
/// number of arrows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub cap: Option<usize>,
    pub budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            cap: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Limits {
    pub fn with_cap(cap: usize) -> Self {
        Limits {
            cap: Some(cap),
            ..Limits::default()
        }
    }

    fn cap_or(&self, default: usize) -> usize {
        self.cap.unwrap_or(default)
    }
}

pub const FINSET_CAP: usize = 4;
pub const FINREL_CAP: usize = 2;

/// A named finite set of element labels. Also used as the universe of
/// subsets in the logic module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedFiniteSet {
    pub name: String,
    pub elements: Vec<String>,
}

pub type Universe = NamedFiniteSet;

impl NamedFiniteSet {
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        elements: impl IntoIterator<Item = S>,
    ) -> Result<Self, BuildError> {
        let set = NamedFiniteSet {
            name: name.into(),
            elements: elements.into_iter().map(Into::into).collect(),
        };
        set.check()?;
        Ok(set)
    }

    pub(crate) fn check(&self) -> Result<(), BuildError> {
        if self.name.is_empty() {
            return Err(BuildError::InvalidSet("empty set name".into()));
        }
        for (i, e) in self.elements.iter().enumerate() {
            if self.elements[..i].contains(e) {
                return Err(BuildError::InvalidSet(format!(
                    "`{}` lists `{e}` twice",
                    self.name
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }
}

pub(crate) fn same_set(a: &Arc<NamedFiniteSet>, b: &Arc<NamedFiniteSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A total function between named finite sets, stored as the list of images
/// in domain order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFunction {
    dom: Arc<NamedFiniteSet>,
    cod: Arc<NamedFiniteSet>,
    graph: Vec<usize>,
}

impl FiniteFunction {
    pub fn new(
        dom: Arc<NamedFiniteSet>,
        cod: Arc<NamedFiniteSet>,
        graph: Vec<usize>,
    ) -> Result<Self, BuildError> {
        if graph.len() != dom.len() {
            return Err(BuildError::InvalidFunction(format!(
                "graph has {} entries, `{}` has {} elements",
                graph.len(),
                dom.name,
                dom.len()
            )));
        }
        if let Some(&bad) = graph.iter().find(|&&y| y >= cod.len()) {
            return Err(BuildError::InvalidFunction(format!(
                "value #{bad} is outside `{}`",
                cod.name
            )));
        }
        Ok(FiniteFunction { dom, cod, graph })
    }

    /// From `(x, f(x))` label pairs; every domain element must appear once.
    pub fn from_labels(
        dom: Arc<NamedFiniteSet>,
        cod: Arc<NamedFiniteSet>,
        pairs: &[(&str, &str)],
    ) -> Result<Self, BuildError> {
        let mut graph = vec![None; dom.len()];
        for (x, y) in pairs {
            let i = dom.index_of(x).ok_or_else(|| {
                BuildError::InvalidFunction(format!("`{x}` not in `{}`", dom.name))
            })?;
            let j = cod.index_of(y).ok_or_else(|| {
                BuildError::InvalidFunction(format!("`{y}` not in `{}`", cod.name))
            })?;
            if graph[i].replace(j).is_some() {
                return Err(BuildError::InvalidFunction(format!("`{x}` mapped twice")));
            }
        }
        let graph = graph
            .into_iter()
            .enumerate()
            .map(|(i, y)| {
                y.ok_or_else(|| {
                    BuildError::InvalidFunction(format!("`{}` has no image", dom.label(i)))
                })
            })
            .collect::<Result<_, _>>()?;
        FiniteFunction::new(dom, cod, graph)
    }

    pub fn identity(set: Arc<NamedFiniteSet>) -> Self {
        let graph = (0..set.len()).collect();
        FiniteFunction {
            dom: set.clone(),
            cod: set,
            graph,
        }
    }

    pub fn dom(&self) -> &Arc<NamedFiniteSet> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<NamedFiniteSet> {
        &self.cod
    }

    pub fn graph(&self) -> &[usize] {
        &self.graph
    }

    pub fn apply(&self, x: usize) -> usize {
        self.graph[x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FiniteFunction) -> Result<FiniteFunction, BuildError> {
        if !same_set(&self.cod, &next.dom) {
            return Err(BuildError::InvalidFunction(format!(
                "cannot compose through `{}` and `{}`",
                self.cod.name, next.dom.name
            )));
        }
        Ok(FiniteFunction {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            graph: self.graph.iter().map(|&y| next.graph[y]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        self.graph
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.len()];
        for &y in &self.graph {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Canonical arrow name, e.g. `X->Y:[0,1]`.
    pub fn canonical_name(&self) -> String {
        let values: Vec<&str> = self.graph.iter().map(|&y| self.cod.label(y)).collect();
        format!(
            "{}->{}:[{}]",
            self.dom.name,
            self.cod.name,
            values.join(",")
        )
    }
}

/// A relation `R ⊆ X × Y`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRelation {
    dom: Arc<NamedFiniteSet>,
    cod: Arc<NamedFiniteSet>,
    pairs: Vec<bool>,
}

impl FiniteRelation {
    pub fn from_fn(
        dom: Arc<NamedFiniteSet>,
        cod: Arc<NamedFiniteSet>,
        related: impl Fn(usize, usize) -> bool,
    ) -> Self {
        let mut pairs = Vec::with_capacity(dom.len() * cod.len());
        for x in 0..dom.len() {
            for y in 0..cod.len() {
                pairs.push(related(x, y));
            }
        }
        FiniteRelation { dom, cod, pairs }
    }

    pub fn from_labels(
        dom: Arc<NamedFiniteSet>,
        cod: Arc<NamedFiniteSet>,
        pairs: &[(&str, &str)],
    ) -> Result<Self, BuildError> {
        let mut rel = FiniteRelation::from_fn(dom, cod, |_, _| false);
        for (x, y) in pairs {
            let i = rel.dom.index_of(x).ok_or_else(|| {
                BuildError::InvalidRelation(format!("`{x}` not in `{}`", rel.dom.name))
            })?;
            let j = rel.cod.index_of(y).ok_or_else(|| {
                BuildError::InvalidRelation(format!("`{y}` not in `{}`", rel.cod.name))
            })?;
            let n = rel.cod.len();
            rel.pairs[i * n + j] = true;
        }
        Ok(rel)
    }

    pub fn diagonal(set: Arc<NamedFiniteSet>) -> Self {
        FiniteRelation::from_fn(set.clone(), set, |x, y| x == y)
    }

    pub fn dom(&self) -> &Arc<NamedFiniteSet> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<NamedFiniteSet> {
        &self.cod
    }

    pub fn relates(&self, x: usize, y: usize) -> bool {
        self.pairs[x * self.cod.len() + y]
    }

    /// All related pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.cod.len();
        self.pairs
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| (i / n, i % n))
    }

    /// Relational composition `R;S`: `x (R;S) z ⟺ ∃y. x R y ∧ y S z`.
    pub fn then(&self, next: &FiniteRelation) -> Result<FiniteRelation, BuildError> {
        if !same_set(&self.cod, &next.dom) {
            return Err(BuildError::InvalidRelation(format!(
                "cannot compose through `{}` and `{}`",
                self.cod.name, next.dom.name
            )));
        }
        Ok(FiniteRelation::from_fn(
            self.dom.clone(),
            next.cod.clone(),
            |x, z| (0..self.cod.len()).any(|y| self.relates(x, y) && next.relates(y, z)),
        ))
    }

    /// Canonical arrow name, e.g. `X->Y:{(a,0),(b,1)}`.
    pub fn canonical_name(&self) -> String {
        let pairs: Vec<String> = self
            .pairs()
            .map(|(x, y)| format!("({},{})", self.dom.label(x), self.cod.label(y)))
            .collect();
        format!(
            "{}->{}:{{{}}}",
            self.dom.name,
            self.cod.name,
            pairs.join(",")
        )
    }

    fn bits(&self) -> u64 {
        self.pairs
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| if b { acc | (1 << i) } else { acc })
    }
}

fn check_sets(sets: &[NamedFiniteSet], cap: usize) -> Result<(), BuildError> {
    for (i, s) in sets.iter().enumerate() {
        s.check()?;
        if s.len() > cap {
            return Err(BuildError::CapExceeded {
                name: s.name.clone(),
                size: s.len(),
                cap,
            });
        }
        if sets[..i].iter().any(|t| t.name == s.name) {
            return Err(BuildError::InvalidSet(format!(
                "duplicate set name `{}`",
                s.name
            )));
        }
    }
    Ok(())
}

fn check_budget(needed: u128, budget: usize) -> Result<(), BuildError> {
    if needed > budget as u128 {
        Err(CategoryError::EnumerationBudgetExceeded { needed, budget }.into())
    } else {
        Ok(())
    }
}

/// The full subcategory of finite sets on the given objects: every function
/// between every pair of sets.
#[derive(Clone, Debug)]
pub struct FinSet {
    sets: Vec<Arc<NamedFiniteSet>>,
    category: FiniteCategory,
    functions: Vec<FiniteFunction>,
    /// First arrow index of `hom(X, Y)`, indexed `X * n + Y`.
    base: Vec<usize>,
}

pub fn build_finset(sets: Vec<NamedFiniteSet>, limits: &Limits) -> Result<FinSet, BuildError> {
    check_sets(&sets, limits.cap_or(FINSET_CAP))?;
    let n = sets.len();
    let needed: u128 = sets
        .iter()
        .flat_map(|x| {
            sets.iter()
                .map(move |y| (y.len() as u128).pow(x.len() as u32))
        })
        .sum();
    check_budget(needed, limits.budget)?;

    let sets: Vec<Arc<NamedFiniteSet>> = sets.into_iter().map(Arc::new).collect();
    let mut functions = Vec::with_capacity(needed as usize);
    let mut arrows = Vec::with_capacity(needed as usize);
    let mut base = Vec::with_capacity(n * n);
    for (i, x) in sets.iter().enumerate() {
        for (j, y) in sets.iter().enumerate() {
            base.push(functions.len());
            for graph in all_tuples(x.len(), y.len()) {
                let f = FiniteFunction {
                    dom: x.clone(),
                    cod: y.clone(),
                    graph,
                };
                arrows.push((ArrowId(f.canonical_name()), i, j));
                functions.push(f);
            }
        }
    }
    // The identity graph 0,1,..,k-1 is the tuple with mixed-radix code Σ i·k^(k-1-i).
    let identities = sets
        .iter()
        .enumerate()
        .map(|(i, s)| base[i * n + i] + encode(&(0..s.len()).collect::<Vec<_>>(), s.len()))
        .collect();
    let set_index = |a: usize| {
        let f = &functions[a];
        (
            sets.iter().position(|s| Arc::ptr_eq(s, &f.dom)).unwrap(),
            sets.iter().position(|s| Arc::ptr_eq(s, &f.cod)).unwrap(),
        )
    };
    let category = FiniteCategory::from_fn(
        sets.iter().map(|s| ObjectId(s.name.clone())).collect(),
        arrows,
        identities,
        |after, then| {
            let (x, _) = set_index(then);
            let (_, z) = set_index(after);
            let g = &functions[after];
            let composite: Vec<usize> = functions[then].graph.iter().map(|&y| g.graph[y]).collect();
            Some(base[x * n + z] + encode(&composite, g.cod.len()))
        },
    )?;
    Ok(FinSet {
        sets,
        category,
        functions,
        base,
    })
}

impl FinSet {
    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    pub fn sets(&self) -> &[Arc<NamedFiniteSet>] {
        &self.sets
    }

    pub fn set(&self, o: crate::category::Obj) -> &Arc<NamedFiniteSet> {
        &self.sets[o.index()]
    }

    pub fn function(&self, a: Arr) -> &FiniteFunction {
        &self.functions[a.index()]
    }

    /// The arrow realizing `f`, if its domain and codomain are objects here.
    pub fn arrow_for(&self, f: &FiniteFunction) -> Option<Arr> {
        let x = self.sets.iter().position(|s| same_set(s, &f.dom))?;
        let y = self.sets.iter().position(|s| same_set(s, &f.cod))?;
        let n = self.sets.len();
        Some(Arr(self.base[x * n + y] + encode(&f.graph, f.cod.len())))
    }
}

/// The category of the given finite sets and all relations between them.
#[derive(Clone, Debug)]
pub struct FinRel {
    sets: Vec<Arc<NamedFiniteSet>>,
    category: FiniteCategory,
    relations: Vec<FiniteRelation>,
    base: Vec<usize>,
}

pub fn build_finrel(sets: Vec<NamedFiniteSet>, limits: &Limits) -> Result<FinRel, BuildError> {
    check_sets(&sets, limits.cap_or(FINREL_CAP))?;
    let n = sets.len();
    let mut needed: u128 = 0;
    for x in &sets {
        for y in &sets {
            let bits = x.len() * y.len();
            if bits >= 64 {
                return Err(CategoryError::EnumerationBudgetExceeded {
                    needed: u128::MAX,
                    budget: limits.budget,
                }
                .into());
            }
            needed += 1u128 << bits;
        }
    }
    check_budget(needed, limits.budget)?;

    let sets: Vec<Arc<NamedFiniteSet>> = sets.into_iter().map(Arc::new).collect();
    let mut relations = Vec::with_capacity(needed as usize);
    let mut arrows = Vec::with_capacity(needed as usize);
    let mut base = Vec::with_capacity(n * n);
    let mut ends = Vec::with_capacity(needed as usize);
    for (i, x) in sets.iter().enumerate() {
        for (j, y) in sets.iter().enumerate() {
            base.push(relations.len());
            let bits = x.len() * y.len();
            for code in 0u64..(1u64 << bits) {
                let r = FiniteRelation::from_fn(x.clone(), y.clone(), |a, b| {
                    code >> (a * y.len() + b) & 1 == 1
                });
                arrows.push((ArrowId(r.canonical_name()), i, j));
                relations.push(r);
                ends.push((i, j));
            }
        }
    }
    let identities = sets
        .iter()
        .enumerate()
        .map(|(i, s)| base[i * n + i] + FiniteRelation::diagonal(s.clone()).bits() as usize)
        .collect();
    let category = FiniteCategory::from_fn(
        sets.iter().map(|s| ObjectId(s.name.clone())).collect(),
        arrows,
        identities,
        |after, then| {
            let composite = relations[then].then(&relations[after]).ok()?;
            let (x, _) = ends[then];
            let (_, z) = ends[after];
            Some(base[x * n + z] + composite.bits() as usize)
        },
    )?;
    Ok(FinRel {
        sets,
        category,
        relations,
        base,
    })
}

impl FinRel {
    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    pub fn sets(&self) -> &[Arc<NamedFiniteSet>] {
        &self.sets
    }

    pub fn relation(&self, a: Arr) -> &FiniteRelation {
        &self.relations[a.index()]
    }

    pub fn arrow_for(&self, r: &FiniteRelation) -> Option<Arr> {
        let x = self.sets.iter().position(|s| same_set(s, &r.dom))?;
        let y = self.sets.iter().position(|s| same_set(s, &r.cod))?;
        Some(Arr(self.base[x * self.sets.len() + y] + r.bits() as usize))
    }
}

/// All tuples of length `len` over `0..radix`, lexicographically (first
/// coordinate most significant).
pub(crate) fn all_tuples(len: usize, radix: usize) -> impl Iterator<Item = Vec<usize>> {
    let count = if len == 0 { 1 } else { radix.pow(len as u32) };
    (0..count).map(move |mut code| {
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = code % radix;
            code /= radix;
        }
        t
    })
}

pub(crate) fn encode(tuple: &[usize], radix: usize) -> usize {
    tuple.iter().fold(0, |acc, &d| acc * radix + d)
}
