use super::{
    check_universe, direct_image, inverse_image, universal_image, AdjunctionCheck, LogicError,
    SubsetOf,
};
use crate::builders::{FiniteFunction, Universe};
use crate::category::{CategoryError, DEFAULT_BUDGET};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A carrier with named relations of fixed arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoStructure {
    carrier: Arc<Universe>,
    /// Characteristic vector over `A^arity`, indexed as in [`AssignmentSet`].
    relations: BTreeMap<String, (usize, Vec<bool>)>,
}

/// `{"carrier": [...], "relations": {"E": {"arity": 2, "tuples": [["a","b"]]}}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub carrier: Vec<String>,
    pub relations: BTreeMap<String, RelationDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDecl {
    pub arity: usize,
    pub tuples: Vec<Vec<String>>,
}

fn power(base: usize, exp: usize) -> usize {
    base.checked_pow(exp as u32).unwrap_or(usize::MAX)
}

/// Tuple index with the first coordinate most significant, so dropping the
/// last coordinate is division by `|A|`.
fn encode(tuple: &[usize], k: usize) -> usize {
    tuple.iter().fold(0, |acc, &a| acc * k + a)
}

fn decode(mut idx: usize, k: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = idx % k;
        idx /= k;
    }
    out
}

impl FoStructure {
    pub fn new(carrier: Arc<Universe>) -> Self {
        FoStructure {
            carrier,
            relations: BTreeMap::new(),
        }
    }

    /// Adds a relation from index tuples.
    pub fn with_relation(
        mut self,
        name: &str,
        arity: usize,
        tuples: &[Vec<usize>],
    ) -> Result<Self, LogicError> {
        let k = self.carrier.len();
        let mut members = vec![false; power(k, arity)];
        for t in tuples {
            if t.len() != arity {
                return Err(LogicError::ArityMismatch {
                    name: name.into(),
                    arity,
                    used: t.len(),
                });
            }
            if let Some(&bad) = t.iter().find(|&&a| a >= k) {
                return Err(LogicError::UnknownElement {
                    element: format!("#{bad}"),
                    universe: self.carrier.name.clone(),
                });
            }
            members[encode(t, k)] = true;
        }
        self.relations.insert(name.into(), (arity, members));
        Ok(self)
    }

    pub fn from_file(file: &StructureFile) -> Result<Self, LogicError> {
        let carrier = Arc::new(Universe::new("A", file.carrier.clone())?);
        let mut m = FoStructure::new(carrier.clone());
        for (name, decl) in &file.relations {
            let tuples = decl
                .tuples
                .iter()
                .map(|t| {
                    t.iter()
                        .map(|l| {
                            carrier
                                .index_of(l)
                                .ok_or_else(|| LogicError::UnknownElement {
                                    element: l.clone(),
                                    universe: carrier.name.clone(),
                                })
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            m = m.with_relation(name, decl.arity, &tuples)?;
        }
        Ok(m)
    }

    pub fn to_file(&self) -> StructureFile {
        let k = self.carrier.len();
        StructureFile {
            carrier: self.carrier.elements.clone(),
            relations: self
                .relations
                .iter()
                .map(|(name, (arity, members))| {
                    let tuples = (0..members.len())
                        .filter(|&i| members[i])
                        .map(|i| {
                            decode(i, k, *arity)
                                .iter()
                                .map(|&a| self.carrier.label(a).to_string())
                                .collect()
                        })
                        .collect();
                    (
                        name.clone(),
                        RelationDecl {
                            arity: *arity,
                            tuples,
                        },
                    )
                })
                .collect(),
        }
    }

    pub fn carrier(&self) -> &Arc<Universe> {
        &self.carrier
    }

    fn holds(&self, name: &str, args: &[usize]) -> bool {
        self.relations[name].1[encode(args, self.carrier.len())]
    }
}

/// First-order formulas over variables `v1, v2, ...` (stored 1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FoFormula {
    True,
    False,
    Atom { relation: String, args: Vec<usize> },
    Not(Box<FoFormula>),
    And(Box<FoFormula>, Box<FoFormula>),
    Or(Box<FoFormula>, Box<FoFormula>),
    Implies(Box<FoFormula>, Box<FoFormula>),
    Exists(usize, Box<FoFormula>),
    Forall(usize, Box<FoFormula>),
}

impl FoFormula {
    pub fn atom(relation: &str, args: &[usize]) -> Self {
        FoFormula::Atom {
            relation: relation.into(),
            args: args.to_vec(),
        }
    }

    /// Nesting depth; atoms have depth 1.
    pub fn depth(&self) -> usize {
        use FoFormula::*;
        match self {
            True | False | Atom { .. } => 1,
            Not(a) | Exists(_, a) | Forall(_, a) => 1 + a.depth(),
            And(a, b) | Or(a, b) | Implies(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Checks relations, arities, variable scope and binders in a context of
    /// size `n`, returning the largest context reached.
    fn check(&self, m: &FoStructure, n: usize) -> Result<usize, LogicError> {
        use FoFormula::*;
        match self {
            True | False => Ok(n),
            Atom { relation, args } => {
                let (arity, _) = m
                    .relations
                    .get(relation)
                    .ok_or_else(|| LogicError::UnknownRelation(relation.clone()))?;
                if *arity != args.len() {
                    return Err(LogicError::ArityMismatch {
                        name: relation.clone(),
                        arity: *arity,
                        used: args.len(),
                    });
                }
                match args.iter().find(|&&v| v == 0 || v > n) {
                    Some(&var) => Err(LogicError::ContextOverflow { var, context: n }),
                    None => Ok(n),
                }
            }
            Not(a) => a.check(m, n),
            And(a, b) | Or(a, b) | Implies(a, b) => Ok(a.check(m, n)?.max(b.check(m, n)?)),
            Exists(v, a) | Forall(v, a) => {
                if *v != n + 1 {
                    return Err(LogicError::BadBinder {
                        var: *v,
                        context: n,
                    });
                }
                a.check(m, n + 1)
            }
        }
    }
}

impl fmt::Display for FoFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FoFormula::*;
        match self {
            True => f.write_str("true"),
            False => f.write_str("false"),
            Atom { relation, args } => {
                let vars: Vec<String> = args.iter().map(|v| format!("v{v}")).collect();
                write!(f, "{relation}({})", vars.join(","))
            }
            Not(a) => write!(f, "!{a}"),
            And(a, b) => write!(f, "({a} & {b})"),
            Or(a, b) => write!(f, "({a} | {b})"),
            Implies(a, b) => write!(f, "({a} -> {b})"),
            Exists(v, a) => write!(f, "(exists v{v}. {a})"),
            Forall(v, a) => write!(f, "(forall v{v}. {a})"),
        }
    }
}

/// A set of assignments `A^n`, tuples ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssignmentSet {
    carrier: Arc<Universe>,
    n: usize,
    members: Vec<bool>,
}

impl AssignmentSet {
    pub fn from_fn(carrier: Arc<Universe>, n: usize, member: impl Fn(&[usize]) -> bool) -> Self {
        let k = carrier.len();
        let members = (0..power(k, n)).map(|i| member(&decode(i, k, n))).collect();
        AssignmentSet {
            carrier,
            n,
            members,
        }
    }

    pub fn from_subset(carrier: Arc<Universe>, n: usize, s: &SubsetOf) -> Result<Self, LogicError> {
        check_universe(&tuple_universe(&carrier, n), s.universe())?;
        Ok(AssignmentSet {
            carrier,
            n,
            members: s.members().to_vec(),
        })
    }

    pub fn context(&self) -> usize {
        self.n
    }

    pub fn carrier(&self) -> &Arc<Universe> {
        &self.carrier
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        self.members[encode(tuple, self.carrier.len())]
    }

    pub fn tuples(&self) -> Vec<Vec<usize>> {
        let k = self.carrier.len();
        (0..self.members.len())
            .filter(|&i| self.members[i])
            .map(|i| decode(i, k, self.n))
            .collect()
    }

    pub fn labels(&self) -> Vec<Vec<String>> {
        self.tuples()
            .iter()
            .map(|t| {
                t.iter()
                    .map(|&a| self.carrier.label(a).to_string())
                    .collect()
            })
            .collect()
    }

    pub fn as_subset(&self) -> SubsetOf {
        SubsetOf::from_fn(tuple_universe(&self.carrier, self.n), |i| self.members[i])
    }

    pub fn is_subset_of(&self, other: &AssignmentSet) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b)
    }
}

impl Serialize for AssignmentSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

/// `A^n` as a universe of tuple labels such as `(a,b)`.
pub fn tuple_universe(carrier: &Universe, n: usize) -> Arc<Universe> {
    let k = carrier.len();
    let labels = (0..power(k, n)).map(|i| {
        let parts: Vec<&str> = decode(i, k, n)
            .into_iter()
            .map(|a| carrier.label(a))
            .collect();
        format!("({})", parts.join(","))
    });
    Arc::new(
        Universe::new(format!("{}^{n}", carrier.name), labels).expect("tuple labels are distinct"),
    )
}

fn budget_check(k: usize, n: usize, budget: usize) -> Result<(), LogicError> {
    let needed = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(CategoryError::EnumerationBudgetExceeded { needed, budget }.into());
    }
    Ok(())
}

/// The projection `π: A^{n+1} → A^n` and the three operators it induces.
#[derive(Clone, Debug)]
pub struct ProjectionAdjoints {
    carrier: Arc<Universe>,
    n: usize,
    projection: FiniteFunction,
}

pub fn projection_adjoints(
    carrier: &Arc<Universe>,
    n: usize,
    budget: usize,
) -> Result<ProjectionAdjoints, LogicError> {
    budget_check(carrier.len(), n + 1, budget)?;
    let (upper, lower) = (tuple_universe(carrier, n + 1), tuple_universe(carrier, n));
    let k = carrier.len();
    let graph = (0..upper.len()).map(|i| i / k).collect();
    Ok(ProjectionAdjoints {
        carrier: carrier.clone(),
        n,
        projection: FiniteFunction::new(upper, lower, graph)?,
    })
}

impl ProjectionAdjoints {
    pub fn projection(&self) -> &FiniteFunction {
        &self.projection
    }

    fn check_level(&self, s: &AssignmentSet, n: usize) -> Result<(), LogicError> {
        check_universe(&self.carrier, &s.carrier)?;
        if s.n != n {
            return Err(LogicError::ContextMismatch(format!(
                "expected context {n}, got {}",
                s.n
            )));
        }
        Ok(())
    }

    /// `∃(π)(S) = { s ∈ A^n | ∃a. s[v_{n+1} ↦ a] ∈ S }`
    pub fn exists(&self, s: &AssignmentSet) -> Result<AssignmentSet, LogicError> {
        self.check_level(s, self.n + 1)?;
        let k = self.carrier.len();
        Ok(AssignmentSet::from_fn(self.carrier.clone(), self.n, |t| {
            (0..k).any(|a| s.members[encode(t, k) * k + a])
        }))
    }

    /// `∀(π)(S) = { s ∈ A^n | ∀a. s[v_{n+1} ↦ a] ∈ S }`
    pub fn forall(&self, s: &AssignmentSet) -> Result<AssignmentSet, LogicError> {
        self.check_level(s, self.n + 1)?;
        let k = self.carrier.len();
        Ok(AssignmentSet::from_fn(self.carrier.clone(), self.n, |t| {
            (0..k).all(|a| s.members[encode(t, k) * k + a])
        }))
    }

    /// `π⁻¹(T)`: weakening to a context with one more variable.
    pub fn pullback(&self, t: &AssignmentSet) -> Result<AssignmentSet, LogicError> {
        self.check_level(t, self.n)?;
        let k = self.carrier.len();
        Ok(AssignmentSet::from_fn(
            self.carrier.clone(),
            self.n + 1,
            |s| t.members[encode(s, k) / k],
        ))
    }

    /// Both adjunctions over every pair of assignment sets, plus agreement of
    /// the explicit formulas with the image operators of the projection.
    /// Limited to `|A|^{n+1} ≤ 10`.
    pub fn check(&self) -> Result<AdjunctionCheck, LogicError> {
        let upper = self.projection.dom().clone();
        if upper.len() > 10 {
            return Err(LogicError::CapExceeded {
                name: upper.name.clone(),
                size: upper.len(),
                cap: 10,
            });
        }
        let lower = self.projection.cod().clone();
        let mut report = AdjunctionCheck {
            instances: 0,
            failures: Vec::new(),
        };
        let lift = |s: SubsetOf, n| AssignmentSet::from_subset(self.carrier.clone(), n, &s);
        for s in super::all_subsets(&upper) {
            let sa = lift(s.clone(), self.n + 1)?;
            let (ex, all) = (self.exists(&sa)?, self.forall(&sa)?);
            report.record(
                ex.as_subset() == direct_image(&self.projection, &s)?,
                || format!("∃(π) disagrees with the direct image at {s}"),
            );
            report.record(
                all.as_subset() == universal_image(&self.projection, &s)?,
                || format!("∀(π) disagrees with the universal image at {s}"),
            );
            for t in super::all_subsets(&lower) {
                let ta = lift(t.clone(), self.n)?;
                let pb = self.pullback(&ta)?;
                report.record(
                    pb.as_subset() == inverse_image(&self.projection, &t)?,
                    || format!("π⁻¹ disagrees with the inverse image at {t}"),
                );
                report.record(ex.is_subset_of(&ta) == sa.is_subset_of(&pb), || {
                    format!("∃(π) ⊣ π⁻¹ fails at S={s}, T={t}")
                });
                report.record(pb.is_subset_of(&sa) == ta.is_subset_of(&all), || {
                    format!("π⁻¹ ⊣ ∀(π) fails at S={s}, T={t}")
                });
            }
        }
        Ok(report)
    }
}

fn satisfies(m: &FoStructure, phi: &FoFormula, s: &mut Vec<usize>) -> bool {
    use FoFormula::*;
    match phi {
        True => true,
        False => false,
        Atom { relation, args } => {
            let vals: Vec<usize> = args.iter().map(|&v| s[v - 1]).collect();
            m.holds(relation, &vals)
        }
        Not(a) => !satisfies(m, a, s),
        And(a, b) => satisfies(m, a, s) && satisfies(m, b, s),
        Or(a, b) => satisfies(m, a, s) || satisfies(m, b, s),
        Implies(a, b) => !satisfies(m, a, s) || satisfies(m, b, s),
        Exists(_, a) | Forall(_, a) => {
            let exists = matches!(phi, Exists(..));
            let mut hit = !exists;
            for x in 0..m.carrier.len() {
                s.push(x);
                let sat = satisfies(m, a, s);
                s.pop();
                if sat == exists {
                    hit = exists;
                    break;
                }
            }
            hit
        }
    }
}

/// Compositional denotation where quantifiers are the direct and universal
/// images along the projection.
fn denote(m: &FoStructure, phi: &FoFormula, n: usize) -> Result<SubsetOf, LogicError> {
    use FoFormula::*;
    let k = m.carrier.len();
    let u = tuple_universe(&m.carrier, n);
    Ok(match phi {
        True => SubsetOf::full(u),
        False => SubsetOf::empty(u),
        Atom { relation, args } => SubsetOf::from_fn(u, |i| {
            let t = decode(i, k, n);
            let vals: Vec<usize> = args.iter().map(|&v| t[v - 1]).collect();
            m.holds(relation, &vals)
        }),
        Not(a) => denote(m, a, n)?.complement(),
        And(a, b) => denote(m, a, n)?.intersection(&denote(m, b, n)?)?,
        Or(a, b) => denote(m, a, n)?.union(&denote(m, b, n)?)?,
        Implies(a, b) => denote(m, a, n)?.complement().union(&denote(m, b, n)?)?,
        Exists(_, a) | Forall(_, a) => {
            let body = denote(m, a, n + 1)?;
            let pi = projection_adjoints(&m.carrier, n, usize::MAX)?;
            if matches!(phi, Exists(..)) {
                direct_image(pi.projection(), &body)?
            } else {
                universal_image(pi.projection(), &body)?
            }
        }
    })
}

/// `⟦φ⟧ ⊆ A^n`, computed by the Tarski clauses and again through the image
/// operators of the projections. The two must agree.
pub fn tarski_denotation(
    m: &FoStructure,
    phi: &FoFormula,
    n: usize,
) -> Result<AssignmentSet, LogicError> {
    tarski_denotation_within(m, phi, n, DEFAULT_BUDGET)
}

/// [`tarski_denotation`] with an explicit bound on the largest `|A|^k`.
pub fn tarski_denotation_within(
    m: &FoStructure,
    phi: &FoFormula,
    n: usize,
    budget: usize,
) -> Result<AssignmentSet, LogicError> {
    let (direct, adjoint) = denotation_routes(m, phi, n, budget)?;
    if direct != adjoint {
        return Err(LogicError::RouteMismatch(format!(
            "{phi}: direct {:?}, adjoint {:?}",
            direct.labels(),
            adjoint.labels()
        )));
    }
    Ok(direct)
}

/// Both denotations, unchecked: the Tarski clauses first, then the
/// compositional route through the projection adjoints.
pub fn denotation_routes(
    m: &FoStructure,
    phi: &FoFormula,
    n: usize,
    budget: usize,
) -> Result<(AssignmentSet, AssignmentSet), LogicError> {
    let deepest = phi.check(m, n)?;
    budget_check(m.carrier.len(), deepest, budget)?;
    let direct =
        AssignmentSet::from_fn(m.carrier.clone(), n, |t| satisfies(m, phi, &mut t.to_vec()));
    let adjoint = AssignmentSet::from_subset(m.carrier.clone(), n, &denote(m, phi, n)?)?;
    Ok((direct, adjoint))
}

/// `Γ ⊢ ∀v_{n+1}.φ` iff `π⁻¹Γ ⊢ φ`, with entailment read as inclusion of
/// denotations. Returns the common truth value.
pub fn verify_generalization_rule(
    gamma: &AssignmentSet,
    phi: &FoFormula,
    m: &FoStructure,
) -> Result<bool, LogicError> {
    if gamma.carrier != m.carrier {
        return Err(LogicError::ContextMismatch(
            "Γ is over a different carrier".into(),
        ));
    }
    let n = gamma.n;
    let d = tarski_denotation(m, phi, n + 1)?;
    let pi = projection_adjoints(&m.carrier, n, DEFAULT_BUDGET)?;
    let upper = gamma.is_subset_of(&pi.forall(&d)?);
    let lower = pi.pullback(gamma)?.is_subset_of(&d);
    if upper != lower {
        return Err(LogicError::RouteMismatch(format!(
            "generalization rule splits on {phi}"
        )));
    }
    Ok(upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_fo;

    fn ab() -> Arc<Universe> {
        Arc::new(Universe::new("A", ["a", "b"]).unwrap())
    }

    fn structure() -> FoStructure {
        FoStructure::new(ab())
            .with_relation("R", 1, &[vec![0]])
            .unwrap()
            .with_relation("E", 2, &[vec![0, 1]])
            .unwrap()
    }

    fn den(text: &str, n: usize) -> Vec<Vec<String>> {
        tarski_denotation(&structure(), &parse_fo(text).unwrap(), n)
            .unwrap()
            .labels()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(den("R(v1)", 1), [["a"]]);
        assert_eq!(den("exists v2. E(v1,v2)", 1), [["a"]]);
        assert!(den("forall v2. E(v1,v2)", 1).is_empty());
        assert_eq!(den("exists v1. R(v1)", 0), [Vec::<String>::new()]);
    }

    #[test]
    fn scope_errors() {
        let m = structure();
        assert_eq!(
            tarski_denotation(&m, &parse_fo("E(v1,v2)").unwrap(), 1),
            Err(LogicError::ContextOverflow { var: 2, context: 1 })
        );
        assert_eq!(
            tarski_denotation(&m, &parse_fo("exists v3. R(v1)").unwrap(), 1),
            Err(LogicError::BadBinder { var: 3, context: 1 })
        );
        assert!(matches!(
            tarski_denotation(&m, &parse_fo("R(v1,v1)").unwrap(), 1),
            Err(LogicError::ArityMismatch { .. })
        ));
        assert_eq!(
            tarski_denotation(&m, &parse_fo("Q(v1)").unwrap(), 1),
            Err(LogicError::UnknownRelation("Q".into()))
        );
    }

    #[test]
    fn projection_examples() {
        let a = ab();
        let pi = projection_adjoints(&a, 1, DEFAULT_BUDGET).unwrap();
        let s = AssignmentSet::from_fn(a.clone(), 2, |t| t == [0, 0]);
        assert_eq!(pi.exists(&s).unwrap().labels(), [["a"]]);
        assert!(pi.forall(&s).unwrap().labels().is_empty());
        let full = AssignmentSet::from_fn(a.clone(), 2, |_| true);
        assert_eq!(
            pi.exists(&full).unwrap(),
            AssignmentSet::from_fn(a.clone(), 1, |_| true)
        );
        assert_eq!(
            pi.forall(&full).unwrap(),
            AssignmentSet::from_fn(a.clone(), 1, |_| true)
        );
        assert!(pi.check().unwrap().holds());
        assert!(projection_adjoints(&a, 2, DEFAULT_BUDGET)
            .unwrap()
            .check()
            .unwrap()
            .holds());
        assert!(matches!(
            projection_adjoints(&a, 40, DEFAULT_BUDGET),
            Err(LogicError::Category(
                CategoryError::EnumerationBudgetExceeded { .. }
            ))
        ));
    }

    #[test]
    fn generalization_rule() {
        let a = ab();
        let reflexive = FoStructure::new(a.clone())
            .with_relation("E", 2, &[vec![0, 0], vec![1, 1], vec![0, 1]])
            .unwrap();
        let empty = AssignmentSet::from_fn(a.clone(), 1, |_| false);
        let phi = parse_fo("E(v1,v2)").unwrap();
        assert!(verify_generalization_rule(&empty, &phi, &reflexive).unwrap());
        let loops = tarski_denotation(&reflexive, &parse_fo("E(v1,v1)").unwrap(), 1).unwrap();
        assert!(
            verify_generalization_rule(&loops, &parse_fo("E(v1,v1)").unwrap(), &reflexive).unwrap()
        );
        let full = AssignmentSet::from_fn(a, 1, |_| true);
        assert!(!verify_generalization_rule(&full, &phi, &reflexive).unwrap());
    }

    #[test]
    fn structure_file_round_trips() {
        let m = structure();
        assert_eq!(FoStructure::from_file(&m.to_file()).unwrap(), m);
    }
}
