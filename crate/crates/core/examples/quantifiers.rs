//! Quantifiers as adjoints to substitution: both routes to a denotation, and
//! the generalization rule.

use fincat::builders::Universe;
use fincat::category::DEFAULT_BUDGET;
use fincat::logic::{
    denotation_routes, parse_fo, verify_generalization_rule, AssignmentSet, FoStructure,
};
use std::sync::Arc;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = Arc::new(Universe::new("A", ["a", "b", "c"])?);
    let m = FoStructure::new(a.clone())
        .with_relation("E", 2, &[vec![0, 1], vec![1, 2], vec![2, 2]])?
        .with_relation("P", 1, &[vec![2]])?;
    for (text, n) in [
        ("exists v2. E(v1,v2) & P(v2)", 1),
        ("forall v1. exists v2. E(v1,v2)", 0),
    ] {
        let phi = parse_fo(text)?;
        let (direct, adjoint) = denotation_routes(&m, &phi, n, DEFAULT_BUDGET)?;
        println!(
            "{phi}: Tarski {:?}, adjoints {:?}",
            direct.labels(),
            adjoint.labels()
        );
    }
    let gamma = AssignmentSet::from_fn(a, 1, |t| t[0] == 1);
    let phi = parse_fo("E(v1,v2) -> P(v2)")?;
    println!(
        "generalization rule for {phi}: {}",
        verify_generalization_rule(&gamma, &phi, &m)?
    );
    Ok(())
}
