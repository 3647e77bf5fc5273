use super::{Arr, CategoryError, FiniteCategory, Obj};
use std::borrow::Cow;
use std::fmt::Debug;

/// Default cap on the number of arrows a single enumeration may produce.
pub const DEFAULT_BUDGET: usize = 100_000;

/// A category whose hom-sets can be enumerated on demand.
///
/// Every [`FiniteCategory`] is a view. Lazily enumerated categories such as
/// matrices over `Z_p` implement this directly so that predicates only ever
/// touch the hom-sets they need.
pub trait CategoryView {
    type Object: Clone + Eq + Debug;
    type Arrow: Clone + Eq + Debug;

    fn objects(&self) -> Vec<Self::Object>;

    /// All arrows `dom → cod`, or `EnumerationBudgetExceeded` when the
    /// hom-set is larger than the view's budget.
    fn hom(
        &self,
        dom: &Self::Object,
        cod: &Self::Object,
    ) -> Result<Cow<'_, [Self::Arrow]>, CategoryError>;

    fn dom(&self, f: &Self::Arrow) -> Self::Object;
    fn cod(&self, f: &Self::Arrow) -> Self::Object;

    /// `after ∘ then`. Callers guarantee `dom(after) = cod(then)`.
    fn compose(&self, after: &Self::Arrow, then: &Self::Arrow) -> Self::Arrow;

    fn identity(&self, obj: &Self::Object) -> Self::Arrow;

    fn contains_arrow(&self, f: &Self::Arrow) -> bool;

    fn arrow_label(&self, f: &Self::Arrow) -> String;
    fn object_label(&self, o: &Self::Object) -> String;
}

impl CategoryView for FiniteCategory {
    type Object = Obj;
    type Arrow = Arr;

    fn objects(&self) -> Vec<Obj> {
        FiniteCategory::objects(self).collect()
    }

    fn hom(&self, dom: &Obj, cod: &Obj) -> Result<Cow<'_, [Arr]>, CategoryError> {
        Ok(Cow::Borrowed(FiniteCategory::hom(self, *dom, *cod)))
    }

    fn dom(&self, f: &Arr) -> Obj {
        FiniteCategory::dom(self, *f)
    }

    fn cod(&self, f: &Arr) -> Obj {
        FiniteCategory::cod(self, *f)
    }

    fn compose(&self, after: &Arr, then: &Arr) -> Arr {
        FiniteCategory::compose(self, *after, *then).expect("composable pair")
    }

    fn identity(&self, obj: &Obj) -> Arr {
        FiniteCategory::identity(self, *obj)
    }

    fn contains_arrow(&self, f: &Arr) -> bool {
        self.contains(*f)
    }

    fn arrow_label(&self, f: &Arr) -> String {
        self.arrow_name(*f).0.clone()
    }

    fn object_label(&self, o: &Obj) -> String {
        self.object_name(*o).0.clone()
    }
}
