//! Arrow-theoretic predicates, decided by exhaustive search over hom-sets.
//!
//! Witnesses are reported in enumeration order: objects in view order, then
//! arrows in hom-set order, first component varying slowest.

use super::{CategoryError, CategoryView, FiniteCategory};

/// Two distinct arrows that a cancellation law fails to separate.
pub type Witness<A> = Option<(A, A)>;

fn require<V: CategoryView>(view: &V, f: &V::Arrow) -> Result<(), CategoryError> {
    if view.contains_arrow(f) {
        Ok(())
    } else {
        Err(CategoryError::UnknownArrow(format!("{f:?}")))
    }
}

/// A pair `g ≠ h` with `f ∘ g = f ∘ h`, if one exists.
pub fn monic_witness<V: CategoryView>(
    view: &V,
    f: &V::Arrow,
) -> Result<Witness<V::Arrow>, CategoryError> {
    require(view, f)?;
    let target = view.dom(f);
    for z in view.objects() {
        let hom = view.hom(&z, &target)?;
        let composites: Vec<_> = hom.iter().map(|g| view.compose(f, g)).collect();
        for i in 0..hom.len() {
            for j in i + 1..hom.len() {
                if composites[i] == composites[j] {
                    return Ok(Some((hom[i].clone(), hom[j].clone())));
                }
            }
        }
    }
    Ok(None)
}

/// A pair `g ≠ h` with `g ∘ f = h ∘ f`, if one exists.
pub fn epic_witness<V: CategoryView>(
    view: &V,
    f: &V::Arrow,
) -> Result<Witness<V::Arrow>, CategoryError> {
    require(view, f)?;
    let source = view.cod(f);
    for z in view.objects() {
        let hom = view.hom(&source, &z)?;
        let composites: Vec<_> = hom.iter().map(|g| view.compose(g, f)).collect();
        for i in 0..hom.len() {
            for j in i + 1..hom.len() {
                if composites[i] == composites[j] {
                    return Ok(Some((hom[i].clone(), hom[j].clone())));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_monic<V: CategoryView>(view: &V, f: &V::Arrow) -> Result<bool, CategoryError> {
    Ok(monic_witness(view, f)?.is_none())
}

pub fn is_epic<V: CategoryView>(view: &V, f: &V::Arrow) -> Result<bool, CategoryError> {
    Ok(epic_witness(view, f)?.is_none())
}

/// Every two-sided inverse of `f`. In a category this has at most one element.
pub fn inverses<V: CategoryView>(view: &V, f: &V::Arrow) -> Result<Vec<V::Arrow>, CategoryError> {
    require(view, f)?;
    let (a, b) = (view.dom(f), view.cod(f));
    let (id_a, id_b) = (view.identity(&a), view.identity(&b));
    Ok(view
        .hom(&b, &a)?
        .iter()
        .filter(|g| view.compose(g, f) == id_a && view.compose(f, g) == id_b)
        .cloned()
        .collect())
}

pub fn find_inverse<V: CategoryView>(
    view: &V,
    f: &V::Arrow,
) -> Result<Option<V::Arrow>, CategoryError> {
    Ok(inverses(view, f)?.into_iter().next())
}

/// Whether every arrow is an isomorphism.
pub fn is_groupoid(cat: &FiniteCategory) -> bool {
    cat.arrows()
        .all(|f| matches!(find_inverse(cat, &f), Ok(Some(_))))
}
