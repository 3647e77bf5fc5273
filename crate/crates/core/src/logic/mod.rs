//! Logical operations as adjoints: images along functions and relations,
//! implication, modal necessity and first-order quantifiers.

mod modal;
mod syntax;
mod tarski;

pub use modal::{eval_modal, FrameFile, KripkeFrame, ModalFormula};
pub use syntax::{parse_fo, parse_modal};
pub use tarski::{
    denotation_routes, projection_adjoints, tarski_denotation, tarski_denotation_within,
    tuple_universe, verify_generalization_rule, AssignmentSet, FoFormula, FoStructure,
    ProjectionAdjoints, RelationDecl, StructureFile,
};

pub use crate::builders::Universe;
use crate::builders::{BuildError, FiniteFunction, FiniteRelation};
use crate::category::CategoryError;
use crate::galois::{FinitePoset, GaloisError};
use serde::Serialize;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error("subsets live in different universes: `{0}` and `{1}`")]
    UniverseMismatch(String, String),
    #[error("`{element}` is not an element of `{universe}`")]
    UnknownElement { element: String, universe: String },
    #[error("atom `{0}` has no valuation")]
    UnknownAtom(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("relation `{name}` has arity {arity}, used with {used} arguments")]
    ArityMismatch {
        name: String,
        arity: usize,
        used: usize,
    },
    #[error("subset is not down-closed")]
    NotDownClosed,
    #[error("variable v{var} is outside the context of size {context}")]
    ContextOverflow { var: usize, context: usize },
    #[error("quantifier binds v{var} in a context of size {context}; only v{} may be bound", context + 1)]
    BadBinder { var: usize, context: usize },
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("universe `{name}` has {size} elements, cap is {cap}")]
    CapExceeded {
        name: String,
        size: usize,
        cap: usize,
    },
    #[error("evaluation routes disagree: {0}")]
    RouteMismatch(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unexpected connective: {0}")]
    WrongLogic(String),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Galois(#[from] GaloisError),
}

/// Default bound on universe sizes for exhaustive subset checks.
pub const SUBSET_CAP: usize = 4;

/// A subset of a finite universe, as a characteristic vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubsetOf {
    universe: Arc<Universe>,
    members: Vec<bool>,
}

impl SubsetOf {
    pub fn empty(universe: Arc<Universe>) -> Self {
        let members = vec![false; universe.len()];
        SubsetOf { universe, members }
    }

    pub fn full(universe: Arc<Universe>) -> Self {
        let members = vec![true; universe.len()];
        SubsetOf { universe, members }
    }

    pub fn from_fn(universe: Arc<Universe>, member: impl Fn(usize) -> bool) -> Self {
        let members = (0..universe.len()).map(member).collect();
        SubsetOf { universe, members }
    }

    /// The subset whose members are the set bits of `mask`.
    pub fn from_mask(universe: Arc<Universe>, mask: u64) -> Self {
        SubsetOf::from_fn(universe, |i| mask >> i & 1 == 1)
    }

    pub fn from_labels<S: AsRef<str>>(
        universe: Arc<Universe>,
        labels: &[S],
    ) -> Result<Self, LogicError> {
        let mut s = SubsetOf::empty(universe);
        for l in labels {
            let i = s
                .universe
                .index_of(l.as_ref())
                .ok_or_else(|| LogicError::UnknownElement {
                    element: l.as_ref().to_string(),
                    universe: s.universe.name.clone(),
                })?;
            s.members[i] = true;
        }
        Ok(s)
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members[i]
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.members.len()).filter(|&i| self.members[i])
    }

    pub fn labels(&self) -> Vec<String> {
        self.indices()
            .map(|i| self.universe.label(i).to_string())
            .collect()
    }

    pub fn count(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn complement(&self) -> Self {
        SubsetOf::from_fn(self.universe.clone(), |i| !self.members[i])
    }

    fn check_same(&self, other: &SubsetOf) -> Result<(), LogicError> {
        check_universe(&self.universe, &other.universe)
    }

    fn zip(&self, other: &SubsetOf, op: impl Fn(bool, bool) -> bool) -> Result<Self, LogicError> {
        self.check_same(other)?;
        Ok(SubsetOf::from_fn(self.universe.clone(), |i| {
            op(self.members[i], other.members[i])
        }))
    }

    pub fn union(&self, other: &SubsetOf) -> Result<Self, LogicError> {
        self.zip(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &SubsetOf) -> Result<Self, LogicError> {
        self.zip(other, |a, b| a && b)
    }

    pub fn is_subset_of(&self, other: &SubsetOf) -> Result<bool, LogicError> {
        self.check_same(other)?;
        Ok(self
            .members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b))
    }
}

impl fmt::Display for SubsetOf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(","))
    }
}

impl Serialize for SubsetOf {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

fn check_universe(a: &Arc<Universe>, b: &Arc<Universe>) -> Result<(), LogicError> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(LogicError::UniverseMismatch(a.name.clone(), b.name.clone()))
    }
}

/// Every subset of the universe, in bitmask order.
pub fn all_subsets(universe: &Arc<Universe>) -> impl Iterator<Item = SubsetOf> + '_ {
    assert!(universe.len() < 32, "subset enumeration is exponential");
    (0u64..1 << universe.len()).map(move |m| SubsetOf::from_mask(universe.clone(), m))
}

fn check_cap(u: &Universe, cap: usize) -> Result<(), LogicError> {
    if u.len() > cap {
        Err(LogicError::CapExceeded {
            name: u.name.clone(),
            size: u.len(),
            cap,
        })
    } else {
        Ok(())
    }
}

/// `∃(f)(S) = { y | ∃x. f(x) = y ∧ x ∈ S }`.
pub fn direct_image(f: &FiniteFunction, s: &SubsetOf) -> Result<SubsetOf, LogicError> {
    check_universe(f.dom(), &s.universe)?;
    let mut out = SubsetOf::empty(f.cod().clone());
    for x in s.indices() {
        out.members[f.apply(x)] = true;
    }
    Ok(out)
}

/// `f⁻¹(T) = { x | f(x) ∈ T }`.
pub fn inverse_image(f: &FiniteFunction, t: &SubsetOf) -> Result<SubsetOf, LogicError> {
    check_universe(f.cod(), &t.universe)?;
    Ok(SubsetOf::from_fn(f.dom().clone(), |x| {
        t.members[f.apply(x)]
    }))
}

/// `∀(f)(S) = { y | ∀x. f(x) = y ⇒ x ∈ S }`.
pub fn universal_image(f: &FiniteFunction, s: &SubsetOf) -> Result<SubsetOf, LogicError> {
    check_universe(f.dom(), &s.universe)?;
    let mut out = SubsetOf::full(f.cod().clone());
    for x in 0..f.dom().len() {
        if !s.members[x] {
            out.members[f.apply(x)] = false;
        }
    }
    Ok(out)
}

/// Outcome of an exhaustive adjunction check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionCheck {
    pub instances: usize,
    pub failures: Vec<String>,
}

impl AdjunctionCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(describe());
        }
    }
}

/// `∃(f)(S) ⊆ T ⟺ S ⊆ f⁻¹(T)` and `f⁻¹(T) ⊆ S ⟺ T ⊆ ∀(f)(S)` for every
/// `S ⊆ dom f` and `T ⊆ cod f`.
pub fn check_quantifier_adjunctions(
    f: &FiniteFunction,
    cap: usize,
) -> Result<AdjunctionCheck, LogicError> {
    check_cap(f.dom(), cap)?;
    check_cap(f.cod(), cap)?;
    let mut report = AdjunctionCheck {
        instances: 0,
        failures: Vec::new(),
    };
    for s in all_subsets(f.dom()) {
        let (ex, all) = (direct_image(f, &s)?, universal_image(f, &s)?);
        for t in all_subsets(f.cod()) {
            let pre = inverse_image(f, &t)?;
            let left = ex.is_subset_of(&t)? == s.is_subset_of(&pre)?;
            report.record(left, || format!("∃ ⊣ f⁻¹ fails at S={s}, T={t}"));
            let right = pre.is_subset_of(&s)? == t.is_subset_of(&all)?;
            report.record(right, || format!("f⁻¹ ⊣ ∀ fails at S={s}, T={t}"));
        }
    }
    Ok(report)
}

/// `[R]T = { x | ∀y. x R y ⇒ y ∈ T }`: the weakest precondition for landing
/// in `T`.
pub fn box_image(r: &FiniteRelation, t: &SubsetOf) -> Result<SubsetOf, LogicError> {
    check_universe(r.cod(), &t.universe)?;
    Ok(SubsetOf::from_fn(r.dom().clone(), |x| {
        (0..r.cod().len()).all(|y| !r.relates(x, y) || t.members[y])
    }))
}

/// Alias of [`box_image`].
pub fn weakest_precondition(r: &FiniteRelation, t: &SubsetOf) -> Result<SubsetOf, LogicError> {
    box_image(r, t)
}

/// `f_R(S) = { y | ∃x ∈ S. x R y }`.
pub fn relation_post_image(r: &FiniteRelation, s: &SubsetOf) -> Result<SubsetOf, LogicError> {
    check_universe(r.dom(), &s.universe)?;
    Ok(SubsetOf::from_fn(r.cod().clone(), |y| {
        s.indices().any(|x| r.relates(x, y))
    }))
}

/// `f_R(S) ⊆ T ⟺ S ⊆ [R]T` for every `S` and `T`.
pub fn check_box_adjunction(r: &FiniteRelation, cap: usize) -> Result<AdjunctionCheck, LogicError> {
    check_cap(r.dom(), cap)?;
    check_cap(r.cod(), cap)?;
    let mut report = AdjunctionCheck {
        instances: 0,
        failures: Vec::new(),
    };
    for s in all_subsets(r.dom()) {
        let post = relation_post_image(r, &s)?;
        for t in all_subsets(r.cod()) {
            let ok = post.is_subset_of(&t)? == s.is_subset_of(&box_image(r, &t)?)?;
            report.record(ok, || format!("f_R ⊣ [R] fails at S={s}, T={t}"));
        }
    }
    Ok(report)
}

/// `X ⇒ Y = Xᶜ ∪ Y`.
pub fn boolean_implication(x: &SubsetOf, y: &SubsetOf) -> Result<SubsetOf, LogicError> {
    x.complement().union(y)
}

/// `X ∩ Y ⊆ Z ⟺ X ⊆ (Y ⇒ Z)` for every triple of subsets.
pub fn check_implication_adjunction(
    universe: &Arc<Universe>,
    cap: usize,
) -> Result<AdjunctionCheck, LogicError> {
    check_cap(universe, cap)?;
    let mut report = AdjunctionCheck {
        instances: 0,
        failures: Vec::new(),
    };
    for x in all_subsets(universe) {
        for y in all_subsets(universe) {
            let meet = x.intersection(&y)?;
            for z in all_subsets(universe) {
                let ok = meet.is_subset_of(&z)? == x.is_subset_of(&boolean_implication(&y, &z)?)?;
                report.record(ok, || format!("∧ ⊣ ⇒ fails at X={x}, Y={y}, Z={z}"));
            }
        }
    }
    Ok(report)
}

fn included(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

fn meet(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(&x, &y)| x && y).collect()
}

/// Relative pseudocomplement in the lattice of down-sets: the largest
/// down-set `Z` with `Z ∩ X ⊆ Y`, found by scanning every down-set.
pub fn heyting_implication(
    p: &FinitePoset,
    x: &[bool],
    y: &[bool],
) -> Result<Vec<bool>, LogicError> {
    if x.len() != p.len() || y.len() != p.len() || !p.is_down_closed(x) || !p.is_down_closed(y) {
        return Err(LogicError::NotDownClosed);
    }
    let candidates: Vec<Vec<bool>> = p
        .down_sets()
        .into_iter()
        .filter(|z| included(&meet(z, x), y))
        .collect();
    let top = candidates
        .iter()
        .find(|z| candidates.iter().all(|w| included(w, z)))
        .expect("down-sets are closed under unions");
    Ok(top.clone())
}

/// `Z ∩ X ⊆ Y ⟺ Z ⊆ (X ⇒ Y)` over all down-set triples.
pub fn check_heyting_adjunction(p: &FinitePoset) -> Result<AdjunctionCheck, LogicError> {
    let downs = p.down_sets();
    let mut report = AdjunctionCheck {
        instances: 0,
        failures: Vec::new(),
    };
    for x in &downs {
        for y in &downs {
            let imp = heyting_implication(p, x, y)?;
            for z in &downs {
                let ok = included(&meet(z, x), y) == included(z, &imp);
                report.record(ok, || {
                    format!("Heyting adjunction fails at X={x:?}, Y={y:?}, Z={z:?}")
                });
            }
        }
    }
    Ok(report)
}

/// The subsets of a universe ordered by inclusion, labelled as in
/// [`SubsetOf`]'s display form.
pub fn powerset_poset(universe: &Arc<Universe>) -> FinitePoset {
    let subsets: Vec<SubsetOf> = all_subsets(universe).collect();
    FinitePoset::from_fn(subsets.iter().map(|s| s.to_string()).collect(), |a, b| {
        included(&subsets[a].members, &subsets[b].members)
    })
    .expect("inclusion is a partial order")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{verify_adjunction, MonotoneMap};

    fn uni(name: &str, labels: &[&str]) -> Arc<Universe> {
        Arc::new(Universe::new(name, labels.to_vec()).unwrap())
    }

    fn sub(u: &Arc<Universe>, labels: &[&str]) -> SubsetOf {
        SubsetOf::from_labels(u.clone(), labels).unwrap()
    }

    #[test]
    fn images_of_a_constant_map() {
        let (x, y) = (uni("X", &["a", "b"]), uni("Y", &["0"]));
        let f = FiniteFunction::new(x.clone(), y.clone(), vec![0, 0]).unwrap();
        assert_eq!(direct_image(&f, &sub(&x, &[])).unwrap(), sub(&y, &[]));
        assert_eq!(direct_image(&f, &sub(&x, &["a"])).unwrap(), sub(&y, &["0"]));
        assert_eq!(universal_image(&f, &sub(&x, &["a"])).unwrap(), sub(&y, &[]));
        assert_eq!(
            universal_image(&f, &sub(&x, &["a", "b"])).unwrap(),
            sub(&y, &["0"])
        );
        assert_eq!(
            inverse_image(&f, &sub(&y, &["0"])).unwrap(),
            sub(&x, &["a", "b"])
        );
        assert_eq!(inverse_image(&f, &sub(&y, &[])).unwrap(), sub(&x, &[]));
        let r = check_quantifier_adjunctions(&f, SUBSET_CAP).unwrap();
        assert!(r.holds());
        assert_eq!(r.instances, 2 * 4 * 2);
    }

    #[test]
    fn identity_images_are_trivial() {
        let x = uni("X", &["a", "b"]);
        let id = FiniteFunction::identity(x.clone());
        for s in all_subsets(&x) {
            assert_eq!(direct_image(&id, &s).unwrap(), s);
            assert_eq!(universal_image(&id, &s).unwrap(), s);
        }
        assert!(check_quantifier_adjunctions(&id, SUBSET_CAP)
            .unwrap()
            .holds());
        let swap = FiniteFunction::new(x.clone(), x, vec![1, 0]).unwrap();
        assert!(check_quantifier_adjunctions(&swap, SUBSET_CAP)
            .unwrap()
            .holds());
    }

    #[test]
    fn points_outside_the_image_are_vacuously_universal() {
        let (x, y) = (uni("X", &["a"]), uni("Y", &["0", "1"]));
        let f = FiniteFunction::new(x.clone(), y.clone(), vec![0]).unwrap();
        assert_eq!(universal_image(&f, &sub(&x, &[])).unwrap(), sub(&y, &["1"]));
    }

    #[test]
    fn mismatched_universes_are_rejected() {
        let (x, y) = (uni("X", &["a"]), uni("Y", &["0"]));
        let f = FiniteFunction::new(x, y.clone(), vec![0]).unwrap();
        assert!(matches!(
            direct_image(&f, &sub(&y, &[])),
            Err(LogicError::UniverseMismatch(..))
        ));
    }

    #[test]
    fn box_examples() {
        let w = uni("W", &["1", "2"]);
        let empty = FiniteRelation::from_fn(w.clone(), w.clone(), |_, _| false);
        assert_eq!(
            box_image(&empty, &sub(&w, &[])).unwrap(),
            SubsetOf::full(w.clone())
        );
        let diag = FiniteRelation::diagonal(w.clone());
        assert_eq!(box_image(&diag, &sub(&w, &["2"])).unwrap(), sub(&w, &["2"]));
        let r =
            FiniteRelation::from_labels(w.clone(), w.clone(), &[("1", "2"), ("2", "2")]).unwrap();
        assert_eq!(
            weakest_precondition(&r, &sub(&w, &["2"])).unwrap(),
            sub(&w, &["1", "2"])
        );
        let one_two = FiniteRelation::from_labels(w.clone(), w.clone(), &[("1", "2")]).unwrap();
        assert_eq!(
            relation_post_image(&one_two, &sub(&w, &["1"])).unwrap(),
            sub(&w, &["2"])
        );
        assert_eq!(
            relation_post_image(&diag, &sub(&w, &["1"])).unwrap(),
            sub(&w, &["1"])
        );
        assert!(check_box_adjunction(&r, SUBSET_CAP).unwrap().holds());
    }

    #[test]
    fn box_pair_is_a_galois_connection() {
        let w = uni("W", &["1", "2"]);
        let r =
            FiniteRelation::from_labels(w.clone(), w.clone(), &[("1", "2"), ("2", "2")]).unwrap();
        let p = Arc::new(powerset_poset(&w));
        let subsets: Vec<SubsetOf> = all_subsets(&w).collect();
        let index = |s: &SubsetOf| subsets.iter().position(|t| t == s).unwrap();
        let post = subsets
            .iter()
            .map(|s| index(&relation_post_image(&r, s).unwrap()))
            .collect();
        let bx = subsets
            .iter()
            .map(|s| index(&box_image(&r, s).unwrap()))
            .collect();
        let f = MonotoneMap::new(p.clone(), p.clone(), post).unwrap();
        let g = MonotoneMap::new(p.clone(), p, bx).unwrap();
        assert!(verify_adjunction(&f, &g).unwrap().laws.all());
    }

    #[test]
    fn boolean_implication_laws() {
        let u = uni("U", &["a", "b"]);
        for x in all_subsets(&u) {
            assert_eq!(
                boolean_implication(&x, &x).unwrap(),
                SubsetOf::full(u.clone())
            );
            assert_eq!(
                boolean_implication(&SubsetOf::full(u.clone()), &x).unwrap(),
                x
            );
        }
        let r = check_implication_adjunction(&u, SUBSET_CAP).unwrap();
        assert!(r.holds());
        assert_eq!(r.instances, 64);
    }

    #[test]
    fn heyting_on_chain_and_antichain() {
        let chain = FinitePoset::chain(&["bot", "top"]);
        assert_eq!(
            heyting_implication(&chain, &[true, true], &[true, false]).unwrap(),
            [true, false]
        );
        assert_eq!(
            heyting_implication(&chain, &[true, false], &[true, true]).unwrap(),
            [true, true]
        );
        assert_eq!(
            heyting_implication(&chain, &[false, true], &[false, false]),
            Err(LogicError::NotDownClosed)
        );
        assert!(check_heyting_adjunction(&chain).unwrap().holds());
        assert!(check_heyting_adjunction(&FinitePoset::diamond())
            .unwrap()
            .holds());

        let anti = FinitePoset::antichain(&["a", "b"]);
        let u = uni("U", &["a", "b"]);
        for x in all_subsets(&u) {
            for y in all_subsets(&u) {
                let h = heyting_implication(&anti, x.members(), y.members()).unwrap();
                assert_eq!(h, boolean_implication(&x, &y).unwrap().members());
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let u = uni("U", &["a", "b", "c"]);
        assert!(matches!(
            check_implication_adjunction(&u, 2),
            Err(LogicError::CapExceeded {
                size: 3,
                cap: 2,
                ..
            })
        ));
    }
}
