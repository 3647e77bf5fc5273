//! Adjunctions between finite posets.
//!
//! For a monotone `g: Q → P`, a best `g`-approximation of `x ∈ P` is the
//! least `y ∈ Q` with `x ≤ g(y)`. When every `x` has one, the resulting
//! `f: P → Q` is the left adjoint of `g`:
//!
//! ```text
//! x ≤ g(z)  ⟺  f(x) ≤ z        for all x ∈ P, z ∈ Q
//! ```
//!
//! Adjoints are searched for exhaustively and the resulting maps are rebuilt
//! through [`MonotoneMap::new`], so monotonicity is checked again rather than
//! taken on trust.

mod floor_ceiling;
mod poset;

pub use floor_ceiling::{
    floor_ceiling_demo, integer_chain, rational_grid, FloorCeilingReport, FloorCeilingRow,
};
pub(crate) use poset::same_poset;
pub use poset::{FinitePoset, MonotoneMap, PosetFile};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error("not a poset: {0}")]
    NotAPoset(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("malformed map: {0}")]
    MalformedMap(String),
    #[error("not monotone: {lower} ≤ {upper} but their images are not ordered")]
    NotMonotone { lower: String, upper: String },
    #[error("maps do not compose: posets differ")]
    PosetMismatch,
    #[error("adjunction fails at x = {x}, z = {z}")]
    AdjunctionFails { x: String, z: String },
    #[error("adjunction equivalence and unit/counit laws disagree")]
    LawMismatch,
}

/// Result of searching for a best approximation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Approximation {
    Best(usize),
    /// No `y` satisfies the approximation condition at all.
    NoApproximants,
    /// Approximants exist but none of them is below all the others.
    NoLeast {
        approximants: Vec<usize>,
    },
}

impl Approximation {
    pub fn best(&self) -> Option<usize> {
        match self {
            Approximation::Best(y) => Some(*y),
            _ => None,
        }
    }
}

/// Best `g`-approximation (from above) of `x`, for `g: Q → P` and `x ∈ P`.
pub fn best_approximation(g: &MonotoneMap, x: usize) -> Result<Approximation, GaloisError> {
    let (q, p) = (g.dom(), g.cod());
    if x >= p.len() {
        return Err(GaloisError::UnknownElement(format!("#{x}")));
    }
    let approximants: Vec<usize> = (0..q.len()).filter(|&y| p.leq(x, g.apply(y))).collect();
    Ok(classify(approximants, |c| q.least_of(c)))
}

/// Best approximation from below of `z ∈ Q` along `f: P → Q`: the greatest
/// `x ∈ P` with `f(x) ≤ z`.
pub fn best_lower_approximation(f: &MonotoneMap, z: usize) -> Result<Approximation, GaloisError> {
    let (p, q) = (f.dom(), f.cod());
    if z >= q.len() {
        return Err(GaloisError::UnknownElement(format!("#{z}")));
    }
    let approximants: Vec<usize> = (0..p.len()).filter(|&x| q.leq(f.apply(x), z)).collect();
    Ok(classify(approximants, |c| p.greatest_of(c)))
}

fn classify(
    approximants: Vec<usize>,
    extremal: impl Fn(&[usize]) -> Option<usize>,
) -> Approximation {
    if approximants.is_empty() {
        Approximation::NoApproximants
    } else if let Some(y) = extremal(&approximants) {
        Approximation::Best(y)
    } else {
        Approximation::NoLeast { approximants }
    }
}

/// The left adjoint of `g`, if every element has a best approximation.
pub fn left_adjoint(g: &MonotoneMap) -> Option<MonotoneMap> {
    let graph = (0..g.cod().len())
        .map(|x| best_approximation(g, x).ok()?.best())
        .collect::<Option<Vec<_>>>()?;
    Some(
        MonotoneMap::new(g.cod().clone(), g.dom().clone(), graph)
            .expect("a left adjoint is monotone"),
    )
}

/// The right adjoint of `f`: `g(z)` is the greatest `x` with `f(x) ≤ z`.
pub fn right_adjoint(f: &MonotoneMap) -> Option<MonotoneMap> {
    let graph = (0..f.cod().len())
        .map(|z| best_lower_approximation(f, z).ok()?.best())
        .collect::<Option<Vec<_>>>()?;
    Some(
        MonotoneMap::new(f.cod().clone(), f.dom().clone(), graph)
            .expect("a right adjoint is monotone"),
    )
}

fn check_shapes(f: &MonotoneMap, g: &MonotoneMap) -> Result<(), GaloisError> {
    if same_poset(f.dom(), g.cod()) && same_poset(f.cod(), g.dom()) {
        Ok(())
    } else {
        Err(GaloisError::PosetMismatch)
    }
}

/// First `(x, z)` at which `x ≤ g(z) ⟺ f(x) ≤ z` fails, scanning `x`
/// slowest.
pub fn equivalence_witness(
    f: &MonotoneMap,
    g: &MonotoneMap,
) -> Result<Option<(usize, usize)>, GaloisError> {
    check_shapes(f, g)?;
    let (p, q) = (f.dom(), f.cod());
    for x in 0..p.len() {
        for z in 0..q.len() {
            if p.leq(x, g.apply(z)) != q.leq(f.apply(x), z) {
                return Ok(Some((x, z)));
            }
        }
    }
    Ok(None)
}

/// Unit, counit and the two triangle equations, under the pointwise order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    /// `id_P ≤ g ∘ f`
    pub unit: bool,
    /// `f ∘ g ≤ id_Q`
    pub counit: bool,
    /// `f ∘ g ∘ f = f`
    pub left_triangle: bool,
    /// `g ∘ f ∘ g = g`
    pub right_triangle: bool,
}

impl LawReport {
    pub fn all(&self) -> bool {
        self.unit && self.counit && self.left_triangle && self.right_triangle
    }
}

pub fn adjunction_laws(f: &MonotoneMap, g: &MonotoneMap) -> Result<LawReport, GaloisError> {
    check_shapes(f, g)?;
    let gf = f.then(g)?;
    let fg = g.then(f)?;
    let fgf = gf.then(f)?;
    let gfg = fg.then(g)?;
    Ok(LawReport {
        unit: MonotoneMap::identity(f.dom().clone()).pointwise_leq(&gf),
        counit: fg.pointwise_leq(&MonotoneMap::identity(f.cod().clone())),
        left_triangle: fgf.graph() == f.graph(),
        right_triangle: gfg.graph() == g.graph(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionCertificate {
    pub left: MonotoneMap,
    pub right: MonotoneMap,
    /// Number of `(x, z)` pairs on which the equivalence was checked.
    pub verified_on: usize,
    pub laws: LawReport,
}

/// Checks `f ⊣ g` both through the defining equivalence and through the
/// unit/counit laws; the two verdicts must agree.
pub fn verify_adjunction(
    f: &MonotoneMap,
    g: &MonotoneMap,
) -> Result<AdjunctionCertificate, GaloisError> {
    let witness = equivalence_witness(f, g)?;
    let laws = adjunction_laws(f, g)?;
    match (witness, laws.all()) {
        (None, true) => Ok(AdjunctionCertificate {
            left: f.clone(),
            right: g.clone(),
            verified_on: f.dom().len() * f.cod().len(),
            laws,
        }),
        (Some((x, z)), false) => Err(GaloisError::AdjunctionFails {
            x: f.dom().label(x).to_string(),
            z: f.cod().label(z).to_string(),
        }),
        _ => Err(GaloisError::LawMismatch),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn chain(labels: &[&str]) -> Arc<FinitePoset> {
        Arc::new(FinitePoset::chain(labels))
    }

    #[test]
    fn identity_is_its_own_adjoint() {
        let p = chain(&["0", "1", "2"]);
        let id = MonotoneMap::identity(p);
        assert_eq!(best_approximation(&id, 1).unwrap(), Approximation::Best(1));
        assert!(left_adjoint(&id).unwrap().same_graph(&id));
        assert!(right_adjoint(&id).unwrap().same_graph(&id));
        assert!(verify_adjunction(&id, &id).is_ok());
    }

    #[test]
    fn surjection_without_best_approximation() {
        let q = Arc::new(FinitePoset::antichain(&["y1", "y2"]));
        let p = Arc::new(FinitePoset::antichain(&["x"]));
        let g = MonotoneMap::new(q, p, vec![0, 0]).unwrap();
        assert_eq!(
            best_approximation(&g, 0).unwrap(),
            Approximation::NoLeast {
                approximants: vec![0, 1]
            }
        );
        assert!(left_adjoint(&g).is_none());
    }

    #[test]
    fn inclusion_of_two_chain_into_three_chain() {
        let q = chain(&["0", "2"]);
        let p = chain(&["0", "1", "2"]);
        let g = MonotoneMap::new(q, p, vec![0, 2]).unwrap();
        // least y with 1 ≤ g(y) is the element labelled 2
        assert_eq!(best_approximation(&g, 1).unwrap(), Approximation::Best(1));
        let f = left_adjoint(&g).unwrap();
        assert_eq!(f.graph(), &[0, 1, 1]);
        let r = right_adjoint(&g).unwrap();
        assert_eq!(r.graph(), &[0, 0, 1]);
    }

    #[test]
    fn no_approximants_is_distinguished() {
        let q = chain(&["0"]);
        let p = chain(&["0", "1"]);
        let g = MonotoneMap::new(q, p, vec![0]).unwrap();
        assert_eq!(
            best_approximation(&g, 1).unwrap(),
            Approximation::NoApproximants
        );
        assert_eq!(
            best_approximation(&g, 2),
            Err(GaloisError::UnknownElement("#2".into()))
        );
    }

    #[test]
    fn meet_with_a_has_a_right_adjoint_but_no_left_adjoint() {
        let l = Arc::new(FinitePoset::diamond());
        let a = l.index_of("a").unwrap();
        let meet_a: Vec<usize> = (0..4).map(|z| l.glb(z, a).unwrap()).collect();
        let g = MonotoneMap::new(l.clone(), l.clone(), meet_a).unwrap();
        // b has no upper approximant: b ≤ z ∧ a never holds
        assert_eq!(
            best_approximation(&g, l.index_of("b").unwrap()).unwrap(),
            Approximation::NoApproximants
        );
        assert!(left_adjoint(&g).is_none());
        // a ⇒ z in the Boolean diamond: ⊥↦b, a↦⊤, b↦b, ⊤↦⊤
        let r = right_adjoint(&g).unwrap();
        let label = |i: usize| l.label(r.apply(i)).to_string();
        assert_eq!(
            (0..4).map(label).collect::<Vec<_>>(),
            vec!["b", "top", "b", "top"]
        );
        verify_adjunction(&g, &r).unwrap();
    }

    #[test]
    fn wrong_sidedness_is_reported_with_witness() {
        let z = chain(&["0", "1"]);
        let grid = chain(&["0", "1/2", "1"]);
        let incl = MonotoneMap::new(z.clone(), grid.clone(), vec![0, 2]).unwrap();
        let floor = MonotoneMap::new(grid.clone(), z.clone(), vec![0, 0, 1]).unwrap();
        let ceil = MonotoneMap::new(grid, z, vec![0, 1, 1]).unwrap();
        verify_adjunction(&ceil, &incl).unwrap();
        verify_adjunction(&incl, &floor).unwrap();
        let err = verify_adjunction(&floor, &incl).unwrap_err();
        assert_eq!(
            err,
            GaloisError::AdjunctionFails {
                x: "1/2".into(),
                z: "0".into()
            }
        );
    }

    #[test]
    fn mismatched_posets_are_rejected() {
        let a = chain(&["0", "1"]);
        let b = chain(&["0", "1", "2"]);
        let f = MonotoneMap::identity(a);
        let g = MonotoneMap::identity(b);
        assert_eq!(verify_adjunction(&f, &g), Err(GaloisError::PosetMismatch));
    }
}
