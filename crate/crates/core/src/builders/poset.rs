use super::BuildError;
use crate::category::{Arr, ArrowId, FiniteCategory, ObjectId};
use crate::galois::FinitePoset;

fn arrow_name(a: &str, b: &str) -> String {
    format!("{a}<={b}")
}

/// The thin category of a poset: one arrow `a<=b` exactly when `a ≤ b`.
pub fn poset_as_category(p: &FinitePoset) -> FiniteCategory {
    let n = p.len();
    let mut index = vec![usize::MAX; n * n];
    let mut arrows = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if p.leq(a, b) {
                index[a * n + b] = arrows.len();
                arrows.push((ArrowId(arrow_name(p.label(a), p.label(b))), a, b));
            }
        }
    }
    let ends: Vec<(usize, usize)> = arrows.iter().map(|&(_, a, b)| (a, b)).collect();
    FiniteCategory::from_fn(
        p.elements().iter().cloned().map(ObjectId).collect(),
        arrows,
        (0..n).map(|a| index[a * n + a]).collect(),
        |after, then| {
            let (a, _) = ends[then];
            let (_, c) = ends[after];
            Some(index[a * n + c])
        },
    )
    .expect("a poset yields well-formed tables")
}

/// The arrow `a<=b` of a poset category, if `a ≤ b`.
pub fn poset_arrow(cat: &FiniteCategory, a: &str, b: &str) -> Option<Arr> {
    cat.arrow(&arrow_name(a, b)).ok()
}

/// Reads a thin, skeletal category back as a poset.
pub fn category_to_poset(cat: &FiniteCategory) -> Result<FinitePoset, BuildError> {
    for a in cat.objects() {
        for b in cat.objects() {
            let k = cat.hom(a, b).len();
            if k > 1 {
                return Err(BuildError::NotAPoset(format!(
                    "hom({}, {}) has {k} arrows",
                    cat.object_name(a),
                    cat.object_name(b)
                )));
            }
        }
    }
    let objects: Vec<_> = cat.objects().collect();
    FinitePoset::from_fn(
        objects
            .iter()
            .map(|&o| cat.object_name(o).0.clone())
            .collect(),
        |i, j| !cat.hom(objects[i], objects[j]).is_empty(),
    )
    .map_err(|e| BuildError::NotAPoset(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrow_counts() {
        assert_eq!(
            poset_as_category(&FinitePoset::antichain(&["a", "b"])).arrow_count(),
            2
        );
        assert_eq!(
            poset_as_category(&FinitePoset::chain(&["bot", "top"])).arrow_count(),
            3
        );
        // 4 identities + 4 edges to/from the middle + bot ≤ top
        assert_eq!(poset_as_category(&FinitePoset::diamond()).arrow_count(), 9);
        // 5 identities + 3 + 3 + bot ≤ top
        assert_eq!(poset_as_category(&FinitePoset::m3()).arrow_count(), 12);
    }

    #[test]
    fn poset_categories_validate_and_read_back() {
        for p in [
            FinitePoset::chain(&["0", "1", "2"]),
            FinitePoset::diamond(),
            FinitePoset::m3(),
            FinitePoset::divisibility(&[1, 2, 3, 6, 12]),
        ] {
            let c = poset_as_category(&p);
            assert!(c.validate().ok);
            assert_eq!(category_to_poset(&c).unwrap(), p);
        }
    }

    #[test]
    fn non_thin_category_is_not_a_poset() {
        let fs = crate::builders::build_finset(
            vec![crate::builders::NamedFiniteSet::new("2", ["0", "1"]).unwrap()],
            &Default::default(),
        )
        .unwrap();
        assert!(matches!(
            category_to_poset(fs.category()),
            Err(BuildError::NotAPoset(_))
        ));
    }
}
