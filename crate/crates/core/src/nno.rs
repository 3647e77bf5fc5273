//! Natural numbers at desk scale: numerals below a bound, primitive
//! recursion, mediation checks, and exhaustive search for natural numbers
//! objects in finite categories.

use crate::builders::NamedFiniteSet;
use crate::category::{Arr, FiniteCategory, Obj};
use crate::universal::find_terminals;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NnoError {
    #[error("numeral {n} exceeds the bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("invalid recursion data: {0}")]
    InvalidData(String),
}

/// Numerals `0..=bound` with a successor defined below the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedNaturalSystem {
    bound: usize,
    /// `succ[i] = s(i)` for `i < bound`; `s(bound)` is left undefined.
    succ: Vec<usize>,
}

impl BoundedNaturalSystem {
    /// `s(n) = n + 1`.
    pub fn standard(bound: usize) -> Self {
        assert!(bound > 0, "bound must be positive");
        BoundedNaturalSystem {
            bound,
            succ: (1..=bound).collect(),
        }
    }

    /// A system with an arbitrary successor table on `0..bound`.
    pub fn with_successor(bound: usize, succ: Vec<usize>) -> Result<Self, NnoError> {
        if bound == 0 || succ.len() != bound || succ.iter().any(|&v| v > bound) {
            return Err(NnoError::InvalidData(format!(
                "successor must map 0..{bound} into 0..={bound}"
            )));
        }
        Ok(BoundedNaturalSystem { bound, succ })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }
}

/// The composite `s ∘ … ∘ s ∘ z` naming a numeral.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct NumeralTerm {
    pub n: usize,
}

impl fmt::Display for NumeralTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for _ in 0..self.n {
            f.write_str("s∘")?;
        }
        f.write_str("z")
    }
}

/// `n̄ = sⁿ ∘ z`.
pub fn numeral(sys: &BoundedNaturalSystem, n: usize) -> Result<NumeralTerm, NnoError> {
    if n > sys.bound {
        return Err(NnoError::BoundExceeded {
            n,
            bound: sys.bound,
        });
    }
    Ok(NumeralTerm { n })
}

/// A point `c` of a finite set and an endomap `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionData {
    carrier: Arc<NamedFiniteSet>,
    c: usize,
    f: Vec<usize>,
}

/// `{"carrier": [...], "c": "...", "f": {"x": "y", ...}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecursionFile {
    pub carrier: Vec<String>,
    pub c: String,
    pub f: BTreeMap<String, String>,
}

impl RecursionData {
    pub fn new(carrier: Arc<NamedFiniteSet>, c: usize, f: Vec<usize>) -> Result<Self, NnoError> {
        let k = carrier.len();
        if c >= k || f.len() != k || f.iter().any(|&y| y >= k) {
            return Err(NnoError::InvalidData(
                "c and f must live in the carrier, f total".into(),
            ));
        }
        Ok(RecursionData { carrier, c, f })
    }

    /// `Z_k` with `c = 0` and `f = +1`.
    pub fn cyclic(k: usize) -> Self {
        let carrier =
            NamedFiniteSet::new(format!("Z{k}"), (0..k).map(|i| i.to_string())).expect("distinct");
        RecursionData::new(Arc::new(carrier), 0, (0..k).map(|i| (i + 1) % k).collect())
            .expect("valid")
    }

    pub fn from_file(file: &RecursionFile) -> Result<Self, NnoError> {
        let carrier = NamedFiniteSet::new("A", file.carrier.clone())
            .map_err(|e| NnoError::InvalidData(e.to_string()))?;
        let idx = |l: &str| {
            carrier
                .index_of(l)
                .ok_or_else(|| NnoError::InvalidData(format!("`{l}` is not in the carrier")))
        };
        let c = idx(&file.c)?;
        for k in file.f.keys() {
            idx(k)?;
        }
        let f = carrier
            .elements
            .iter()
            .map(|x| {
                let y = file
                    .f
                    .get(x)
                    .ok_or_else(|| NnoError::InvalidData(format!("f is undefined at `{x}`")))?;
                idx(y)
            })
            .collect::<Result<Vec<_>, _>>()?;
        RecursionData::new(Arc::new(carrier), c, f)
    }

    pub fn to_file(&self) -> RecursionFile {
        let l = |i: usize| self.carrier.label(i).to_string();
        RecursionFile {
            carrier: self.carrier.elements.clone(),
            c: l(self.c),
            f: (0..self.f.len()).map(|x| (l(x), l(self.f[x]))).collect(),
        }
    }

    pub fn carrier(&self) -> &Arc<NamedFiniteSet> {
        &self.carrier
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn f(&self, x: usize) -> usize {
        self.f[x]
    }
}

/// `h(n̄) = fⁿ(c)`.
pub fn primrec_eval(data: &RecursionData, n: usize) -> usize {
    (0..n).fold(data.c, |x, _| data.f[x])
}

/// `h(0), …, h(k)`.
pub fn primrec_trace(data: &RecursionData, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k + 1);
    let mut x = data.c;
    out.push(x);
    for _ in 0..k {
        x = data.f[x];
        out.push(x);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MediationReport {
    pub checked_up_to: usize,
    pub equations_hold: bool,
    /// First `n` where `h ∘ z = c` (for 0) or `h ∘ s = f ∘ h` fails.
    pub witness: Option<usize>,
}

/// Checks `h(0) = c` and `h(n + 1) = f(h(n))` for `n < up_to`.
pub fn check_mediation(
    data: &RecursionData,
    h: &[usize],
    up_to: usize,
) -> Result<MediationReport, NnoError> {
    if h.len() <= up_to || h.iter().any(|&x| x >= data.carrier.len()) {
        return Err(NnoError::InvalidData(format!(
            "h must map 0..={up_to} into the carrier"
        )));
    }
    let witness = if h[0] != data.c {
        Some(0)
    } else {
        (0..up_to)
            .find(|&n| h[n + 1] != data.f[h[n]])
            .map(|n| n + 1)
    };
    Ok(MediationReport {
        checked_up_to: up_to,
        equations_hold: witness.is_none(),
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DedekindReport {
    pub holds: bool,
    /// The top numeral, whose successor lies beyond the prefix.
    pub boundary: usize,
    pub witness: Option<String>,
}

/// On `0..bound`: `s` is injective and its image is everything but zero.
pub fn dedekind_prefix_check(sys: &BoundedNaturalSystem) -> DedekindReport {
    let mut seen = vec![None; sys.bound + 1];
    let mut witness = None;
    for (i, &v) in sys.succ.iter().enumerate() {
        if v == 0 {
            witness = Some(format!("s({i}) = 0"));
            break;
        }
        if let Some(j) = seen[v].replace(i) {
            witness = Some(format!("s({j}) = s({i}) = {v}"));
            break;
        }
    }
    DedekindReport {
        holds: witness.is_none(),
        boundary: sys.bound,
        witness,
    }
}

/// A candidate `1 →z N →s N`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct NnoTriple {
    pub n: Obj,
    pub z: Arr,
    pub s: Arr,
}

/// Why a candidate failed: the datum `(A, c, f)` and how many mediators it has.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub candidate: NnoTriple,
    pub a: Obj,
    pub c: Arr,
    pub f: Arr,
    pub mediators: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NnoSearch {
    /// Set when the category has no terminal object.
    pub note: Option<String>,
    pub triples: Vec<NnoTriple>,
    pub refutations: Vec<Refutation>,
}

fn mediators(cat: &FiniteCategory, t: &NnoTriple, a: Obj, c: Arr, f: Arr) -> usize {
    cat.hom(t.n, a)
        .iter()
        .filter(|&&h| cat.compose(h, t.z) == Some(c) && cat.compose(h, t.s) == cat.compose(f, h))
        .count()
}

/// Tests every `(N, z, s)` against every `(A, c, f)`, keeping the candidates
/// with exactly one mediator each time. The terminal object is the first one
/// found; any other is uniquely isomorphic to it.
pub fn nno_search(cat: &FiniteCategory) -> NnoSearch {
    let Some(&one) = find_terminals(cat).first() else {
        return NnoSearch {
            note: Some("NoTerminal".into()),
            triples: Vec::new(),
            refutations: Vec::new(),
        };
    };
    let data: Vec<(Obj, Arr, Arr)> = cat
        .objects()
        .flat_map(|a| {
            cat.hom(one, a)
                .iter()
                .flat_map(move |&c| cat.hom(a, a).iter().map(move |&f| (a, c, f)))
        })
        .collect();
    let mut triples = Vec::new();
    let mut refutations = Vec::new();
    for n in cat.objects() {
        for &z in cat.hom(one, n) {
            for &s in cat.hom(n, n) {
                let t = NnoTriple { n, z, s };
                let failure = data.iter().find_map(|&(a, c, f)| {
                    let m = mediators(cat, &t, a, c, f);
                    (m != 1).then_some(Refutation {
                        candidate: t,
                        a,
                        c,
                        f,
                        mediators: m,
                    })
                });
                match failure {
                    None => triples.push(t),
                    Some(r) => refutations.push(r),
                }
            }
        }
    }
    NnoSearch {
        note: None,
        triples,
        refutations,
    }
}
