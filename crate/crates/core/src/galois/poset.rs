use super::GaloisError;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

/// A finite partial order, stored as its full `≤` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    elements: Vec<String>,
    leq: Vec<bool>,
    index: HashMap<String, usize>,
}

/// On-disk form: `{"elements": [...], "leq": [["a","b"], ...]}`. Reflexive
/// pairs may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
}

impl FinitePoset {
    /// Takes the reflexive closure of `related`, then checks transitivity and
    /// antisymmetry.
    pub fn from_fn(
        elements: Vec<String>,
        related: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, GaloisError> {
        let n = elements.len();
        let mut index = HashMap::with_capacity(n);
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(GaloisError::NotAPoset(format!("duplicate element `{e}`")));
            }
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = i == j || related(i, j);
            }
        }
        let p = FinitePoset {
            elements,
            leq,
            index,
        };
        p.check_laws()?;
        Ok(p)
    }

    pub fn new(elements: Vec<String>, pairs: &[(String, String)]) -> Result<Self, GaloisError> {
        let n = elements.len();
        let mut rel = vec![false; n * n];
        for (a, b) in pairs {
            let pos = |x: &str| {
                elements
                    .iter()
                    .position(|e| e == x)
                    .ok_or_else(|| GaloisError::UnknownElement(x.to_string()))
            };
            let (i, j) = (pos(a)?, pos(b)?);
            rel[i * n + j] = true;
        }
        FinitePoset::from_fn(elements, |i, j| rel[i * n + j])
    }

    /// From covering pairs: reflexive-transitive closure is applied.
    pub fn from_covers(
        elements: Vec<String>,
        covers: &[(String, String)],
    ) -> Result<Self, GaloisError> {
        let base = Self::new(elements.clone(), &[])?;
        let n = elements.len();
        let mut rel = base.leq.clone();
        for (a, b) in covers {
            let i = base
                .index_of(a)
                .ok_or_else(|| GaloisError::UnknownElement(a.clone()))?;
            let j = base
                .index_of(b)
                .ok_or_else(|| GaloisError::UnknownElement(b.clone()))?;
            rel[i * n + j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if rel[i * n + k] && rel[k * n + j] {
                        rel[i * n + j] = true;
                    }
                }
            }
        }
        FinitePoset::from_fn(elements, |i, j| rel[i * n + j])
    }

    pub fn from_file(file: &PosetFile) -> Result<Self, GaloisError> {
        FinitePoset::new(file.elements.clone(), &file.leq)
    }

    /// The file form, listing only non-reflexive pairs.
    pub fn to_file(&self) -> PosetFile {
        let mut leq = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if i != j && self.leq(i, j) {
                    leq.push((self.elements[i].clone(), self.elements[j].clone()));
                }
            }
        }
        PosetFile {
            elements: self.elements.clone(),
            leq,
        }
    }

    fn check_laws(&self) -> Result<(), GaloisError> {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return Err(GaloisError::NotAPoset(format!(
                        "antisymmetry fails: {} ≤ {} ≤ {}",
                        self.elements[i], self.elements[j], self.elements[i]
                    )));
                }
                for k in 0..n {
                    if self.leq(i, j) && self.leq(j, k) && !self.leq(i, k) {
                        return Err(GaloisError::NotAPoset(format!(
                            "transitivity fails: {} ≤ {} ≤ {}",
                            self.elements[i], self.elements[j], self.elements[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn chain<S: ToString>(labels: &[S]) -> Self {
        let elements = labels.iter().map(ToString::to_string).collect();
        FinitePoset::from_fn(elements, |i, j| i <= j).expect("a chain is a poset")
    }

    pub fn antichain<S: ToString>(labels: &[S]) -> Self {
        let elements = labels.iter().map(ToString::to_string).collect();
        FinitePoset::from_fn(elements, |_, _| false).expect("an antichain is a poset")
    }

    /// Positive integers ordered by divisibility.
    pub fn divisibility(values: &[u64]) -> Self {
        let elements = values.iter().map(u64::to_string).collect();
        FinitePoset::from_fn(elements, |i, j| values[j].is_multiple_of(values[i]))
            .expect("divisibility is a partial order on distinct positive integers")
    }

    /// The four-element lattice `⊥ < a, b < ⊤` with `a`, `b` incomparable.
    pub fn diamond() -> Self {
        let elements = ["bot", "a", "b", "top"].map(String::from).to_vec();
        FinitePoset::from_fn(elements, |i, j| i == 0 || j == 3 || i == j)
            .expect("the diamond is a poset")
    }

    /// The five-element lattice `⊥ < a, b, c < ⊤` with three incomparable
    /// atoms. Not distributive.
    pub fn m3() -> Self {
        let elements = ["bot", "a", "b", "c", "top"].map(String::from).to_vec();
        FinitePoset::from_fn(elements, |i, j| i == 0 || j == 4 || i == j).expect("M3 is a poset")
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

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.elements.len() + j]
    }

    /// The least element of `candidates`, if it has one.
    pub fn least_of(&self, candidates: &[usize]) -> Option<usize> {
        candidates
            .iter()
            .copied()
            .find(|&y| candidates.iter().all(|&z| self.leq(y, z)))
    }

    pub fn greatest_of(&self, candidates: &[usize]) -> Option<usize> {
        candidates
            .iter()
            .copied()
            .find(|&y| candidates.iter().all(|&z| self.leq(z, y)))
    }

    pub fn glb(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len())
            .filter(|&c| self.leq(c, a) && self.leq(c, b))
            .collect();
        self.greatest_of(&lower)
    }

    pub fn lub(&self, a: usize, b: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len())
            .filter(|&c| self.leq(a, c) && self.leq(b, c))
            .collect();
        self.least_of(&upper)
    }

    pub fn is_down_closed(&self, members: &[bool]) -> bool {
        (0..self.len())
            .all(|y| !members[y] || (0..self.len()).all(|x| !self.leq(x, y) || members[x]))
    }

    /// Every down-closed subset, in increasing bitmask order.
    pub fn down_sets(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        assert!(n < 24, "down-set enumeration is exponential");
        (0u32..1 << n)
            .map(|mask| (0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|m| self.is_down_closed(m))
            .collect()
    }
}

/// An order-preserving map between finite posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    dom: Arc<FinitePoset>,
    cod: Arc<FinitePoset>,
    graph: Vec<usize>,
}

impl MonotoneMap {
    /// Checks totality and `x ≤ x′ ⟹ g(x) ≤ g(x′)`.
    pub fn new(
        dom: Arc<FinitePoset>,
        cod: Arc<FinitePoset>,
        graph: Vec<usize>,
    ) -> Result<Self, GaloisError> {
        if graph.len() != dom.len() || graph.iter().any(|&y| y >= cod.len()) {
            return Err(GaloisError::MalformedMap(format!(
                "graph must send each of the {} elements into {} elements",
                dom.len(),
                cod.len()
            )));
        }
        for a in 0..dom.len() {
            for b in 0..dom.len() {
                if dom.leq(a, b) && !cod.leq(graph[a], graph[b]) {
                    return Err(GaloisError::NotMonotone {
                        lower: dom.label(a).to_string(),
                        upper: dom.label(b).to_string(),
                    });
                }
            }
        }
        Ok(MonotoneMap { dom, cod, graph })
    }

    pub fn from_labels(
        dom: Arc<FinitePoset>,
        cod: Arc<FinitePoset>,
        pairs: &[(&str, &str)],
    ) -> Result<Self, GaloisError> {
        let mut graph = vec![usize::MAX; dom.len()];
        for (x, y) in pairs {
            let i = dom
                .index_of(x)
                .ok_or_else(|| GaloisError::UnknownElement(x.to_string()))?;
            let j = cod
                .index_of(y)
                .ok_or_else(|| GaloisError::UnknownElement(y.to_string()))?;
            graph[i] = j;
        }
        MonotoneMap::new(dom, cod, graph)
    }

    pub fn identity(p: Arc<FinitePoset>) -> Self {
        let graph = (0..p.len()).collect();
        MonotoneMap {
            dom: p.clone(),
            cod: p,
            graph,
        }
    }

    pub fn dom(&self) -> &Arc<FinitePoset> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinitePoset> {
        &self.cod
    }

    pub fn graph(&self) -> &[usize] {
        &self.graph
    }

    pub fn apply(&self, x: usize) -> usize {
        self.graph[x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &MonotoneMap) -> Result<MonotoneMap, GaloisError> {
        if !same_poset(&self.cod, &next.dom) {
            return Err(GaloisError::PosetMismatch);
        }
        Ok(MonotoneMap {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            graph: self.graph.iter().map(|&y| next.graph[y]).collect(),
        })
    }

    /// Pointwise order: `self(x) ≤ other(x)` for all `x`.
    pub fn pointwise_leq(&self, other: &MonotoneMap) -> bool {
        self.graph
            .iter()
            .zip(&other.graph)
            .all(|(&a, &b)| self.cod.leq(a, b))
    }

    /// Same table, ignoring which `Arc` holds the posets.
    pub fn same_graph(&self, other: &MonotoneMap) -> bool {
        same_poset(&self.dom, &other.dom)
            && same_poset(&self.cod, &other.cod)
            && self.graph == other.graph
    }
}

pub(crate) fn same_poset(a: &Arc<FinitePoset>, b: &Arc<FinitePoset>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflexive_pairs_are_optional() {
        let p =
            FinitePoset::new(vec!["a".into(), "b".into()], &[("a".into(), "b".into())]).unwrap();
        assert!(p.leq(0, 0) && p.leq(0, 1) && !p.leq(1, 0));
    }

    #[test]
    fn cycles_are_rejected() {
        let err = FinitePoset::new(
            vec!["a".into(), "b".into()],
            &[("a".into(), "b".into()), ("b".into(), "a".into())],
        );
        assert!(matches!(err, Err(GaloisError::NotAPoset(_))));
    }

    #[test]
    fn missing_transitive_pair_is_rejected() {
        let err = FinitePoset::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[("a".into(), "b".into()), ("b".into(), "c".into())],
        );
        assert!(matches!(err, Err(GaloisError::NotAPoset(_))));
        let ok = FinitePoset::from_covers(
            vec!["a".into(), "b".into(), "c".into()],
            &[("a".into(), "b".into()), ("b".into(), "c".into())],
        )
        .unwrap();
        assert!(ok.leq(0, 2));
    }

    #[test]
    fn divisibility_glbs_are_gcds() {
        let p = FinitePoset::divisibility(&[1, 2, 3, 6, 12]);
        let ix = |v: &str| p.index_of(v).unwrap();
        assert_eq!(p.glb(ix("2"), ix("3")), Some(ix("1")));
        assert_eq!(p.glb(ix("6"), ix("12")), Some(ix("6")));
        assert_eq!(p.lub(ix("2"), ix("3")), Some(ix("6")));
    }

    #[test]
    fn non_monotone_map_reports_pair() {
        let c = Arc::new(FinitePoset::chain(&["0", "1"]));
        let err = MonotoneMap::new(c.clone(), c, vec![1, 0]).unwrap_err();
        assert_eq!(
            err,
            GaloisError::NotMonotone {
                lower: "0".into(),
                upper: "1".into()
            }
        );
    }

    #[test]
    fn down_sets_of_two_chain() {
        let p = FinitePoset::chain(&["bot", "top"]);
        assert_eq!(
            p.down_sets(),
            vec![vec![false, false], vec![true, false], vec![true, true]]
        );
    }
}
