//! Functors between finite categories.

use crate::builders::{
    build_finset, category_to_poset, monoid_as_category, poset_arrow, poset_as_category,
    BuildError, FinSet, FiniteFunction, FiniteMonoid, Limits, MonoidHom, NamedFiniteSet,
};
use crate::category::{find_inverse, Arr, AxiomReport, FiniteCategory, Obj, Violation};
use crate::galois::{GaloisError, MonotoneMap};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FunctorError {
    #[error("malformed functor map: {0}")]
    MalformedMap(String),
    #[error("target of the first functor is not the source of the second")]
    SourceTargetMismatch,
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Galois(#[from] GaloisError),
}

/// Object and arrow tables between two categories. Only totality is checked
/// on construction; the laws are checked by [`check_functoriality`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
    object_map: Vec<Obj>,
    arrow_map: Vec<Arr>,
}

fn same_category(a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Functor {
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        object_map: Vec<Obj>,
        arrow_map: Vec<Arr>,
    ) -> Result<Self, FunctorError> {
        if object_map.len() != source.object_count() || arrow_map.len() != source.arrow_count() {
            return Err(FunctorError::MalformedMap(
                "maps must be total on the source".into(),
            ));
        }
        if object_map
            .iter()
            .any(|o| o.index() >= target.object_count())
            || arrow_map.iter().any(|a| a.index() >= target.arrow_count())
        {
            return Err(FunctorError::MalformedMap(
                "image outside the target".into(),
            ));
        }
        Ok(Functor {
            source,
            target,
            object_map,
            arrow_map,
        })
    }

    /// Builds a functor from name tables, which must cover every object and
    /// arrow of the source.
    pub fn from_names(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        object_map: &BTreeMap<String, String>,
        arrow_map: &BTreeMap<String, String>,
    ) -> Result<Self, FunctorError> {
        let malformed = |m: String| FunctorError::MalformedMap(m);
        for k in object_map.keys() {
            source
                .object(k)
                .map_err(|_| malformed(format!("object_map: unknown source object `{k}`")))?;
        }
        for k in arrow_map.keys() {
            source
                .arrow(k)
                .map_err(|_| malformed(format!("arrow_map: unknown source arrow `{k}`")))?;
        }
        let objects = source
            .objects()
            .map(|o| {
                let name = &source.object_name(o).0;
                let image = object_map
                    .get(name)
                    .ok_or_else(|| malformed(format!("object_map: no image for `{name}`")))?;
                target
                    .object(image)
                    .map_err(|_| malformed(format!("object_map: unknown target object `{image}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let arrows = source
            .arrows()
            .map(|a| {
                let name = &source.arrow_name(a).0;
                let image = arrow_map
                    .get(name)
                    .ok_or_else(|| malformed(format!("arrow_map: no image for `{name}`")))?;
                target
                    .arrow(image)
                    .map_err(|_| malformed(format!("arrow_map: unknown target arrow `{image}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Functor::new(source, target, objects, arrows)
    }

    /// The identity functor.
    pub fn identity(cat: Arc<FiniteCategory>) -> Self {
        Functor {
            object_map: cat.objects().collect(),
            arrow_map: cat.arrows().collect(),
            source: cat.clone(),
            target: cat,
        }
    }

    pub fn source(&self) -> &Arc<FiniteCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        &self.target
    }

    pub fn on_object(&self, o: Obj) -> Obj {
        self.object_map[o.index()]
    }

    pub fn on_arrow(&self, a: Arr) -> Arr {
        self.arrow_map[a.index()]
    }

    pub fn object_names(&self) -> BTreeMap<String, String> {
        self.source
            .objects()
            .map(|o| {
                (
                    self.source.object_name(o).0.clone(),
                    self.target.object_name(self.on_object(o)).0.clone(),
                )
            })
            .collect()
    }

    pub fn arrow_names(&self) -> BTreeMap<String, String> {
        self.source
            .arrows()
            .map(|a| {
                (
                    self.source.arrow_name(a).0.clone(),
                    self.target.arrow_name(self.on_arrow(a)).0.clone(),
                )
            })
            .collect()
    }

    /// Same source and target, with a different arrow table. Used to build
    /// negative controls.
    pub fn with_arrow_map(&self, arrow_map: Vec<Arr>) -> Result<Self, FunctorError> {
        Functor::new(
            self.source.clone(),
            self.target.clone(),
            self.object_map.clone(),
            arrow_map,
        )
    }
}

/// Checks typing, preservation of composites and preservation of identities,
/// reporting every violation.
pub fn check_functoriality(f: &Functor) -> AxiomReport {
    let (s, t) = (&*f.source, &*f.target);
    let an = |a: Arr| s.arrow_name(a).0.clone();
    let mut violations = Vec::new();
    for a in s.arrows() {
        let fa = f.on_arrow(a);
        if t.dom(fa) != f.on_object(s.dom(a)) || t.cod(fa) != f.on_object(s.cod(a)) {
            violations.push(Violation::new("typing", vec![an(a)]));
        }
    }
    for o in s.objects() {
        if f.on_arrow(s.identity(o)) != t.identity(f.on_object(o)) {
            violations.push(Violation::new("identity", vec![an(s.identity(o))]));
        }
    }
    for then in s.arrows() {
        for after in s.arrows_from(s.cod(then)) {
            let gf = s.compose(after, then).expect("composable");
            if t.compose(f.on_arrow(after), f.on_arrow(then)) != Some(f.on_arrow(gf)) {
                violations.push(Violation::new("composition", vec![an(after), an(then)]));
            }
        }
    }
    AxiomReport::from_violations(violations)
}

/// `G ∘ F`, applying `F` first.
pub fn compose_functors(g: &Functor, f: &Functor) -> Result<Functor, FunctorError> {
    if !same_category(&f.target, &g.source) {
        return Err(FunctorError::SourceTargetMismatch);
    }
    Ok(Functor {
        source: f.source.clone(),
        target: g.target.clone(),
        object_map: f.object_map.iter().map(|&o| g.on_object(o)).collect(),
        arrow_map: f.arrow_map.iter().map(|&a| g.on_arrow(a)).collect(),
    })
}

/// Whether every isomorphism of the source goes to an isomorphism. Always
/// true for a functor, so this is a cross-check; non-functors are refused.
pub fn check_iso_preservation(f: &Functor) -> Result<bool, FunctorError> {
    let report = check_functoriality(f);
    if let Some(v) = report.violations.first() {
        return Err(FunctorError::NotAFunctor(format!(
            "{} law fails at {}",
            v.law,
            v.witnesses.join(", ")
        )));
    }
    Ok(f.source.arrows().all(|a| {
        let iso = find_inverse(&*f.source, &a).expect("own arrow").is_some();
        !iso || find_inverse(&*f.target, &f.on_arrow(a))
            .expect("own arrow")
            .is_some()
    }))
}

/// Subsets of a finite set named by their sorted member lists, e.g. `{0,1}`,
/// enumerated in bitmask order.
pub fn powerset(x: &NamedFiniteSet) -> NamedFiniteSet {
    let n = x.len();
    let labels: Vec<String> = (0..1usize << n)
        .map(|mask| {
            let members: Vec<&str> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| x.label(i))
                .collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    NamedFiniteSet::new(format!("P({})", x.name), labels).expect("subset labels are distinct")
}

/// The covariant powerset functor together with its synthesized target.
#[derive(Clone, Debug)]
pub struct PowersetFunctor {
    pub functor: Functor,
    pub target: FinSet,
}

/// `X ↦ P(X)` and `f ↦ (S ↦ { f(x) | x ∈ S })`, landing in the FinSet
/// category on the powersets.
pub fn powerset_functor(source: &FinSet, budget: usize) -> Result<PowersetFunctor, FunctorError> {
    let sets: Vec<NamedFiniteSet> = source.sets().iter().map(|s| powerset(s)).collect();
    let cap = sets.iter().map(|s| s.len()).max().unwrap_or(0);
    let target = build_finset(
        sets,
        &Limits {
            cap: Some(cap),
            budget,
        },
    )?;
    let src = source.category();
    let arrow_map = src
        .arrows()
        .map(|a| {
            let f = source.function(a);
            let (px, py) = (
                target.set(Obj(src.dom(a).index())).clone(),
                target.set(Obj(src.cod(a).index())).clone(),
            );
            let graph = (0..px.len())
                .map(|mask| {
                    (0..f.dom().len())
                        .filter(|x| mask >> x & 1 == 1)
                        .fold(0usize, |acc, x| acc | 1 << f.apply(x))
                })
                .collect();
            let image = FiniteFunction::new(px, py, graph)?;
            Ok(target
                .arrow_for(&image)
                .expect("powerset image is in the target"))
        })
        .collect::<Result<Vec<_>, FunctorError>>()?;
    let functor = Functor::new(
        Arc::new(src.clone()),
        Arc::new(target.category().clone()),
        src.objects().collect(),
        arrow_map,
    )?;
    Ok(PowersetFunctor { functor, target })
}

/// The functor between posets-as-categories induced by a monotone map.
pub fn monotone_as_functor(m: &MonotoneMap) -> Functor {
    let source = Arc::new(poset_as_category(m.dom()));
    let target = Arc::new(poset_as_category(m.cod()));
    let arrow_map = source
        .arrows()
        .map(|a| {
            let (x, y) = (source.dom(a).index(), source.cod(a).index());
            poset_arrow(
                &target,
                m.cod().label(m.apply(x)),
                m.cod().label(m.apply(y)),
            )
            .expect("monotone maps preserve ≤")
        })
        .collect();
    let object_map = (0..m.dom().len()).map(|x| Obj(m.apply(x))).collect();
    Functor::new(source, target, object_map, arrow_map).expect("total by construction")
}

/// Reads a functor between thin categories back as a monotone map.
pub fn functor_to_monotone(f: &Functor) -> Result<MonotoneMap, FunctorError> {
    let report = check_functoriality(f);
    if !report.ok {
        return Err(FunctorError::NotAFunctor(report.violations[0].law.clone()));
    }
    let dom = Arc::new(category_to_poset(&f.source)?);
    let cod = Arc::new(category_to_poset(&f.target)?);
    let graph = f.source.objects().map(|o| f.on_object(o).index()).collect();
    Ok(MonotoneMap::new(dom, cod, graph)?)
}

/// The functor between one-object categories induced by a homomorphism.
pub fn monoid_hom_as_functor(h: &MonoidHom) -> Functor {
    let source = Arc::new(monoid_as_category(h.dom()));
    let target = Arc::new(monoid_as_category(h.cod()));
    let arrow_map = (0..h.dom().len()).map(|a| Arr(h.apply(a))).collect();
    Functor::new(source, target, vec![Obj(0)], arrow_map).expect("total by construction")
}

/// Reads a functor between one-object categories back as a homomorphism.
pub fn functor_to_monoid_hom(
    f: &Functor,
    dom: Arc<FiniteMonoid>,
    cod: Arc<FiniteMonoid>,
) -> Result<MonoidHom, FunctorError> {
    let map = f.source.arrows().map(|a| f.on_arrow(a).index()).collect();
    Ok(MonoidHom::new(dom, cod, map)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::FinitePoset;

    fn set(name: &str, labels: &[&str]) -> NamedFiniteSet {
        NamedFiniteSet::new(name, labels.to_vec()).unwrap()
    }

    fn chain2() -> Arc<FinitePoset> {
        Arc::new(FinitePoset::chain(&["0", "1"]))
    }

    #[test]
    fn identity_functor_is_functorial() {
        let c = Arc::new(poset_as_category(&FinitePoset::diamond()));
        let id = Functor::identity(c);
        assert!(check_functoriality(&id).ok);
        assert_eq!(check_iso_preservation(&id), Ok(true));
    }

    #[test]
    fn monotone_maps_round_trip() {
        let p = chain2();
        let m = MonotoneMap::new(p.clone(), p.clone(), vec![1, 1]).unwrap();
        let f = monotone_as_functor(&m);
        assert!(check_functoriality(&f).ok);
        assert!(functor_to_monotone(&f).unwrap().same_graph(&m));
        let id = monotone_as_functor(&MonotoneMap::identity(p.clone()));
        assert_eq!(id, Functor::identity(id.source().clone()));
        assert!(matches!(
            MonotoneMap::new(p.clone(), p, vec![1, 0]),
            Err(GaloisError::NotMonotone { .. })
        ));
    }

    #[test]
    fn composites_and_identities() {
        let p = chain2();
        let up = MonotoneMap::new(p.clone(), p.clone(), vec![1, 1]).unwrap();
        let down = MonotoneMap::new(p.clone(), p.clone(), vec![0, 0]).unwrap();
        let (fu, fd) = (monotone_as_functor(&up), monotone_as_functor(&down));
        let composite = compose_functors(&fd, &fu).unwrap();
        assert_eq!(composite, monotone_as_functor(&up.then(&down).unwrap()));
        let id = Functor::identity(fu.source().clone());
        assert_eq!(compose_functors(&fu, &id).unwrap(), fu);

        let other = Functor::identity(Arc::new(poset_as_category(&FinitePoset::diamond())));
        assert_eq!(
            compose_functors(&other, &fu),
            Err(FunctorError::SourceTargetMismatch)
        );
    }

    #[test]
    fn broken_arrow_map_is_reported() {
        let c = Arc::new(poset_as_category(&FinitePoset::chain(&["a", "b", "c"])));
        let id = Functor::identity(c.clone());
        let mut arrows: Vec<Arr> = c.arrows().collect();
        // send a<=c to a<=b: typing and composition both break
        let (ac, ab) = (c.arrow("a<=c").unwrap(), c.arrow("a<=b").unwrap());
        arrows[ac.index()] = ab;
        let broken = id.with_arrow_map(arrows).unwrap();
        let report = check_functoriality(&broken);
        assert!(!report.ok);
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "composition" && v.witnesses == ["b<=c", "a<=b"]));
        assert!(matches!(
            check_iso_preservation(&broken),
            Err(FunctorError::NotAFunctor(_))
        ));
    }

    #[test]
    fn parity_homomorphism_is_a_functor() {
        let z4 = Arc::new(FiniteMonoid::cyclic(4));
        let z2 = Arc::new(FiniteMonoid::cyclic(2));
        let h = MonoidHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let f = monoid_hom_as_functor(&h);
        assert!(check_functoriality(&f).ok);
        assert_eq!(check_iso_preservation(&f), Ok(true));
        assert_eq!(functor_to_monoid_hom(&f, z4, z2).unwrap(), h);
    }

    #[test]
    fn powerset_on_small_sets() {
        let fs = build_finset(
            vec![set("A", &["a"]), set("2", &["0", "1"])],
            &Limits::default(),
        )
        .unwrap();
        let p = powerset_functor(&fs, crate::category::DEFAULT_BUDGET).unwrap();
        assert!(check_functoriality(&p.functor).ok);
        assert_eq!(p.target.sets()[1].len(), 4);
        assert_eq!(p.target.sets()[1].elements, ["{}", "{0}", "{1}", "{0,1}"]);
        let src = fs.category();
        let f = src.arrow("A->2:[0]").unwrap();
        let pf = p.target.function(p.functor.on_arrow(f));
        assert_eq!(pf.canonical_name(), "P(A)->P(2):[{},{0}]");
    }

    #[test]
    fn powerset_of_three_exceeds_budget() {
        let fs = build_finset(vec![set("3", &["0", "1", "2"])], &Limits::default()).unwrap();
        assert!(matches!(
            powerset_functor(&fs, crate::category::DEFAULT_BUDGET),
            Err(FunctorError::Build(BuildError::Category(_)))
        ));
    }
}
