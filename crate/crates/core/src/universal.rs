//! Terminal objects, binary and finite products, and the isomorphisms that
//! make them unique.

use crate::category::{Arr, FiniteCategory, Obj};
use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UniversalError {
    #[error("`{0}` is not a terminal object")]
    NotTerminal(String),
    #[error("not a product: {0}")]
    NotAProduct(String),
}

/// A span `A ← apex → B`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    pub apex: Obj,
    pub left: Arr,
    pub right: Arr,
}

/// A product of `a` and `b` with its complete mediator table, one entry per
/// cone over `(a, b)`, in object and hom order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductCertificate {
    pub a: Obj,
    pub b: Obj,
    pub cone: Cone,
    pub mediators: Vec<(Cone, Arr)>,
}

impl ProductCertificate {
    pub fn apex(&self) -> Obj {
        self.cone.apex
    }

    pub fn pi1(&self) -> Arr {
        self.cone.left
    }

    pub fn pi2(&self) -> Arr {
        self.cone.right
    }

    /// The mediator `⟨f, g⟩` recorded for a cone.
    pub fn mediator(&self, cone: &Cone) -> Option<Arr> {
        self.mediators
            .iter()
            .find(|(c, _)| c == cone)
            .map(|&(_, h)| h)
    }

    pub fn report(&self, cat: &FiniteCategory) -> ProductReport {
        let name = |a: Arr| cat.arrow_name(a).0.clone();
        ProductReport {
            apex: cat.object_name(self.apex()).0.clone(),
            pi1: name(self.pi1()),
            pi2: name(self.pi2()),
            mediators: self
                .mediators
                .iter()
                .map(|(c, h)| MediatorEntry {
                    cone: ConeReport {
                        apex: cat.object_name(c.apex).0.clone(),
                        left: name(c.left),
                        right: name(c.right),
                    },
                    mediator: name(*h),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    pub apex: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MediatorEntry {
    pub cone: ConeReport,
    pub mediator: String,
}

/// Named form of a [`ProductCertificate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductReport {
    pub apex: String,
    pub pi1: String,
    pub pi2: String,
    pub mediators: Vec<MediatorEntry>,
}

/// An isomorphism together with the equations that were checked for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoCertificate {
    pub forward: String,
    pub backward: String,
    /// Number of arrows between the two objects that satisfy the defining
    /// constraints. Always 1 for a genuine universal object.
    pub connecting_arrows: usize,
    pub checks: Vec<String>,
}

/// Objects `T` with exactly one arrow from every object.
pub fn find_terminals(cat: &FiniteCategory) -> Vec<Obj> {
    cat.objects()
        .filter(|&t| cat.objects().all(|a| cat.hom(a, t).len() == 1))
        .collect()
}

fn is_terminal(cat: &FiniteCategory, t: Obj) -> bool {
    cat.objects().all(|a| cat.hom(a, t).len() == 1)
}

/// The unique isomorphism between two terminal objects: the unique arrows each
/// way, with both composites checked against the identities.
pub fn terminal_iso_certificate(
    cat: &FiniteCategory,
    t: Obj,
    t2: Obj,
) -> Result<IsoCertificate, UniversalError> {
    for o in [t, t2] {
        if !is_terminal(cat, o) {
            return Err(UniversalError::NotTerminal(cat.object_name(o).0.clone()));
        }
    }
    let forward = cat.hom(t, t2)[0];
    let backward = cat.hom(t2, t)[0];
    let name = |a: Arr| cat.arrow_name(a).0.clone();
    let mut checks = Vec::new();
    for (g, f, id) in [
        (backward, forward, cat.identity(t)),
        (forward, backward, cat.identity(t2)),
    ] {
        let c = cat.compose(g, f).expect("composable");
        assert_eq!(c, id, "composite of terminal arrows must be an identity");
        checks.push(format!("{} ∘ {} = {}", name(g), name(f), name(id)));
    }
    Ok(IsoCertificate {
        forward: name(forward),
        backward: name(backward),
        connecting_arrows: cat.hom(t, t2).len(),
        checks,
    })
}

/// Every cone over `(a, b)` with apex `z`.
fn cones_from(cat: &FiniteCategory, z: Obj, a: Obj, b: Obj) -> impl Iterator<Item = Cone> + '_ {
    let rights = cat.hom(z, b);
    cat.hom(z, a).iter().flat_map(move |&left| {
        rights.iter().map(move |&right| Cone {
            apex: z,
            left,
            right,
        })
    })
}

/// `(π1 ∘ h, π2 ∘ h)` as a cone.
fn restrict(cat: &FiniteCategory, cone: &Cone, h: Arr) -> Cone {
    Cone {
        apex: cat.dom(h),
        left: cat.compose(cone.left, h).expect("h lands in the apex"),
        right: cat.compose(cone.right, h).expect("h lands in the apex"),
    }
}

/// Mediating-arrow form: every cone over `(a, b)` factors through `cone` by
/// exactly one arrow.
pub fn is_product_universal(cat: &FiniteCategory, a: Obj, b: Obj, cone: &Cone) -> bool {
    cat.objects().all(|z| {
        let mut count: HashMap<Cone, usize> = HashMap::new();
        for &h in cat.hom(z, cone.apex) {
            *count.entry(restrict(cat, cone, h)).or_default() += 1;
        }
        cones_from(cat, z, a, b).all(|c| count.get(&c) == Some(&1))
    })
}

/// Equational form: every cone has some mediator, and every `h` into the apex
/// equals `⟨π1 ∘ h, π2 ∘ h⟩`.
pub fn is_product_equational(cat: &FiniteCategory, a: Obj, b: Obj, cone: &Cone) -> bool {
    cat.objects().all(|z| {
        let hom = cat.hom(z, cone.apex);
        let pairing = |c: &Cone| hom.iter().copied().find(|&h| restrict(cat, cone, h) == *c);
        cones_from(cat, z, a, b).all(|c| pairing(&c).is_some())
            && hom
                .iter()
                .all(|&h| pairing(&restrict(cat, cone, h)) == Some(h))
    })
}

fn mediator_table(cat: &FiniteCategory, a: Obj, b: Obj, cone: &Cone) -> Vec<(Cone, Arr)> {
    cat.objects()
        .flat_map(|z| {
            let hom = cat.hom(z, cone.apex);
            cones_from(cat, z, a, b)
                .map(|c| {
                    let h = hom
                        .iter()
                        .copied()
                        .find(|&h| restrict(cat, cone, h) == c)
                        .expect("product has a mediator for every cone");
                    (c, h)
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// All products of `a` and `b`: every apex and projection pair with the
/// universal property, each with its mediator table.
pub fn find_products(cat: &FiniteCategory, a: Obj, b: Obj) -> Vec<ProductCertificate> {
    cat.objects()
        .flat_map(|p| cones_from(cat, p, a, b).collect::<Vec<_>>())
        .filter(|cone| is_product_universal(cat, a, b, cone))
        .map(|cone| ProductCertificate {
            a,
            b,
            cone,
            mediators: mediator_table(cat, a, b, &cone),
        })
        .collect()
}

/// Checks a certificate against `h = ⟨π1 ∘ h, π2 ∘ h⟩` for every arrow `h`
/// into the apex, using the certificate's own mediator table, after checking
/// the projection equations of every recorded mediator.
pub fn verify_equational_product(cat: &FiniteCategory, cert: &ProductCertificate) -> bool {
    let table: HashMap<Cone, Arr> = cert.mediators.iter().copied().collect();
    let projections_hold = cert.mediators.iter().all(|(c, h)| {
        cat.dom(*h) == c.apex && cat.cod(*h) == cert.apex() && restrict(cat, &cert.cone, *h) == *c
    });
    projections_hold
        && cat.objects().all(|z| {
            cones_from(cat, z, cert.a, cert.b).all(|c| table.contains_key(&c))
                && cat
                    .hom(z, cert.apex())
                    .iter()
                    .all(|&h| table.get(&restrict(cat, &cert.cone, h)) == Some(&h))
        })
}

/// The unique isomorphism between two products of the same pair that commutes
/// with both projection pairs.
pub fn product_iso_certificate(
    cat: &FiniteCategory,
    first: &ProductCertificate,
    second: &ProductCertificate,
) -> Result<IsoCertificate, UniversalError> {
    let oname = |o: Obj| cat.object_name(o).0.clone();
    if (first.a, first.b) != (second.a, second.b) {
        return Err(UniversalError::NotAProduct(format!(
            "certificates are for ({}, {}) and ({}, {})",
            oname(first.a),
            oname(first.b),
            oname(second.a),
            oname(second.b)
        )));
    }
    for c in [first, second] {
        if !is_product_universal(cat, c.a, c.b, &c.cone) {
            return Err(UniversalError::NotAProduct(format!(
                "apex `{}` lacks the universal property",
                oname(c.apex())
            )));
        }
    }
    let forward = second
        .mediator(&first.cone)
        .ok_or_else(|| UniversalError::NotAProduct("incomplete mediator table".into()))?;
    let backward = first
        .mediator(&second.cone)
        .ok_or_else(|| UniversalError::NotAProduct("incomplete mediator table".into()))?;
    let name = |a: Arr| cat.arrow_name(a).0.clone();
    let connecting_arrows = cat
        .hom(first.apex(), second.apex())
        .iter()
        .filter(|&&h| restrict(cat, &second.cone, h) == first.cone)
        .count();
    let mut checks = Vec::new();
    for (g, f, id) in [
        (backward, forward, cat.identity(first.apex())),
        (forward, backward, cat.identity(second.apex())),
    ] {
        if cat.compose(g, f) != Some(id) {
            return Err(UniversalError::NotAProduct(format!(
                "{} ∘ {} is not an identity",
                name(g),
                name(f)
            )));
        }
        checks.push(format!("{} ∘ {} = {}", name(g), name(f), name(id)));
    }
    for (p2, p1) in [(second.pi1(), first.pi1()), (second.pi2(), first.pi2())] {
        checks.push(format!("{} ∘ {} = {}", name(p2), name(forward), name(p1)));
    }
    Ok(IsoCertificate {
        forward: name(forward),
        backward: name(backward),
        connecting_arrows,
        checks,
    })
}

/// A product of a finite family: the apex and one projection per factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteProduct {
    pub apex: Obj,
    pub projections: Vec<Arr>,
}

/// Products of lists, associated to the left. The empty product is the first
/// terminal object.
pub fn finite_product(cat: &FiniteCategory, objects: &[Obj]) -> Option<FiniteProduct> {
    let (&first, rest) = match objects.split_first() {
        None => {
            return find_terminals(cat).first().map(|&t| FiniteProduct {
                apex: t,
                projections: Vec::new(),
            })
        }
        Some(split) => split,
    };
    let mut acc = FiniteProduct {
        apex: first,
        projections: vec![cat.identity(first)],
    };
    for &next in rest {
        let cert = find_products(cat, acc.apex, next).into_iter().next()?;
        let mut projections: Vec<Arr> = acc
            .projections
            .iter()
            .map(|&p| cat.compose(p, cert.pi1()).expect("composable"))
            .collect();
        projections.push(cert.pi2());
        acc = FiniteProduct {
            apex: cert.apex(),
            projections,
        };
    }
    Some(acc)
}
