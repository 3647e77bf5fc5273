use super::BuildError;
use crate::category::{ArrowId, FiniteCategory, ObjectId};
use std::sync::Arc;

/// A finite monoid given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    elements: Vec<String>,
    table: Vec<usize>,
    unit: usize,
}

impl FiniteMonoid {
    /// `table[a][b] = a · b`. Associativity and both unit laws are checked
    /// exhaustively.
    pub fn new(
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
        unit: usize,
    ) -> Result<Self, BuildError> {
        let n = elements.len();
        let invalid = |law: &str, witness: String| BuildError::InvalidMonoid {
            law: law.into(),
            witness,
        };
        if n == 0 || unit >= n {
            return Err(invalid("unit", "no unit element".into()));
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(invalid("table", format!("duplicate element `{e}`")));
            }
        }
        if table.len() != n
            || table
                .iter()
                .any(|row| row.len() != n || row.iter().any(|&v| v >= n))
        {
            return Err(invalid(
                "table",
                format!("table must be {n}×{n} over the elements"),
            ));
        }
        let m = FiniteMonoid {
            elements,
            table: table.into_iter().flatten().collect(),
            unit,
        };
        let l = |i: usize| m.elements[i].clone();
        for a in 0..n {
            if m.mult(unit, a) != a || m.mult(a, unit) != a {
                return Err(invalid("unit", l(a)));
            }
            for b in 0..n {
                for c in 0..n {
                    if m.mult(m.mult(a, b), c) != m.mult(a, m.mult(b, c)) {
                        return Err(invalid(
                            "associativity",
                            format!("({}, {}, {})", l(a), l(b), l(c)),
                        ));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn from_labels(
        elements: Vec<String>,
        table: &[Vec<String>],
        unit: &str,
    ) -> Result<Self, BuildError> {
        let pos = |x: &str| {
            elements
                .iter()
                .position(|e| e == x)
                .ok_or_else(|| BuildError::InvalidMonoid {
                    law: "table".into(),
                    witness: format!("unknown element `{x}`"),
                })
        };
        let table = table
            .iter()
            .map(|row| row.iter().map(|v| pos(v)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let unit = pos(unit)?;
        FiniteMonoid::new(elements, table, unit)
    }

    /// `(Z_n, +)` with elements labelled `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let elements = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteMonoid::new(elements, table, 0).expect("Z_n is a monoid")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, a: usize) -> &str {
        &self.elements[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mult(&self, a: usize, b: usize) -> usize {
        self.table[a * self.elements.len() + b]
    }

    pub fn table(&self) -> Vec<Vec<String>> {
        let n = self.len();
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| self.elements[self.mult(a, b)].clone())
                    .collect()
            })
            .collect()
    }
}

/// A map of monoids preserving unit and multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidHom {
    dom: Arc<FiniteMonoid>,
    cod: Arc<FiniteMonoid>,
    map: Vec<usize>,
}

impl MonoidHom {
    pub fn new(
        dom: Arc<FiniteMonoid>,
        cod: Arc<FiniteMonoid>,
        map: Vec<usize>,
    ) -> Result<Self, BuildError> {
        if map.len() != dom.len() || map.iter().any(|&v| v >= cod.len()) {
            return Err(BuildError::NotAHomomorphism("map is not total".into()));
        }
        if map[dom.unit()] != cod.unit() {
            return Err(BuildError::NotAHomomorphism(format!(
                "unit `{}` goes to `{}`",
                dom.label(dom.unit()),
                cod.label(map[dom.unit()])
            )));
        }
        for a in 0..dom.len() {
            for b in 0..dom.len() {
                if map[dom.mult(a, b)] != cod.mult(map[a], map[b]) {
                    return Err(BuildError::NotAHomomorphism(format!(
                        "h({}·{}) ≠ h({})·h({})",
                        dom.label(a),
                        dom.label(b),
                        dom.label(a),
                        dom.label(b)
                    )));
                }
            }
        }
        Ok(MonoidHom { dom, cod, map })
    }

    pub fn dom(&self) -> &Arc<FiniteMonoid> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteMonoid> {
        &self.cod
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }
}

/// One object `*`, one arrow per element; `g ∘ f = g · f`.
pub fn monoid_as_category(m: &FiniteMonoid) -> FiniteCategory {
    FiniteCategory::from_fn(
        vec![ObjectId("*".into())],
        m.elements
            .iter()
            .map(|e| (ArrowId(e.clone()), 0, 0))
            .collect(),
        vec![m.unit],
        |after, then| Some(m.mult(after, then)),
    )
    .expect("a monoid yields well-formed tables")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{find_inverse, is_groupoid};

    #[test]
    fn trivial_monoid_has_one_arrow() {
        let c = monoid_as_category(&FiniteMonoid::cyclic(1));
        assert_eq!(c.arrow_count(), 1);
        assert!(c.validate().ok);
    }

    #[test]
    fn z2_is_a_groupoid() {
        let c = monoid_as_category(&FiniteMonoid::cyclic(2));
        assert!(c.validate().ok);
        assert!(is_groupoid(&c));
    }

    #[test]
    fn idempotent_is_not_invertible() {
        let m = FiniteMonoid::from_labels(
            vec!["1".into(), "e".into()],
            &[vec!["1".into(), "e".into()], vec!["e".into(), "e".into()]],
            "1",
        )
        .unwrap();
        let c = monoid_as_category(&m);
        assert!(c.validate().ok);
        let e = c.arrow("e").unwrap();
        assert_eq!(find_inverse(&c, &e).unwrap(), None);
        assert!(!is_groupoid(&c));
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // a·a = 1, but (a·b)·b ≠ a·(b·b) for the table below
        let err = FiniteMonoid::from_labels(
            vec!["1".into(), "a".into(), "b".into()],
            &[
                vec!["1".into(), "a".into(), "b".into()],
                vec!["a".into(), "1".into(), "1".into()],
                vec!["b".into(), "a".into(), "a".into()],
            ],
            "1",
        )
        .unwrap_err();
        assert!(matches!(err, BuildError::InvalidMonoid { ref law, .. } if law == "associativity"));
    }

    #[test]
    fn bad_unit_is_rejected() {
        let err = FiniteMonoid::new(
            vec!["0".into(), "1".into()],
            vec![vec![0, 0], vec![0, 0]],
            0,
        )
        .unwrap_err();
        assert!(matches!(err, BuildError::InvalidMonoid { ref law, .. } if law == "unit"));
    }

    #[test]
    fn parity_is_a_homomorphism() {
        let z4 = Arc::new(FiniteMonoid::cyclic(4));
        let z2 = Arc::new(FiniteMonoid::cyclic(2));
        assert!(MonoidHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).is_ok());
        assert!(matches!(
            MonoidHom::new(z4, z2, vec![0, 1, 1, 0]),
            Err(BuildError::NotAHomomorphism(_))
        ));
    }
}
