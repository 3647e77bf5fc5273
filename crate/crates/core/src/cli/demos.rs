//! Packaged walkthroughs. Output is deterministic for a fixed seed.

use super::{CliError, Report};
use crate::builders::{FiniteRelation, Universe};
use crate::category::DEFAULT_BUDGET;
use crate::galois::floor_ceiling_demo;
use crate::logic::{
    box_image, check_box_adjunction, denotation_routes, parse_fo, relation_post_image,
    verify_generalization_rule, AssignmentSet, FoStructure, SubsetOf, SUBSET_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::sync::Arc;

pub const DEMOS: [&str; 3] = ["floor-ceiling", "wp", "quantifiers"];

pub fn run(name: &str, seed: u64) -> Result<Report, CliError> {
    match name {
        "floor-ceiling" => floor_ceiling(),
        "wp" => wp(),
        "quantifiers" => quantifiers(seed),
        other => Err(CliError::UnknownDemo(other.into())),
    }
}

fn floor_ceiling() -> Result<Report, CliError> {
    let r = floor_ceiling_demo(3, 2)?;
    let mut lines = vec![
        "inclusion i of the integers -3..3 into the half-integer grid on [-3, 3]".to_string(),
        "right adjoint of i (greatest n with n <= r) and left adjoint (least n with r <= n):"
            .to_string(),
        format!(
            "{:>6} {:>6} {:>6} {:>6} {:>6}",
            "r", "right", "floor", "left", "ceil"
        ),
    ];
    let mut witnesses = Vec::new();
    for row in &r.rows {
        lines.push(format!(
            "{:>6} {:>6} {:>6} {:>6} {:>6}",
            row.value, row.floor, row.arithmetic_floor, row.ceiling, row.arithmetic_ceiling
        ));
        if row.floor != row.arithmetic_floor || row.ceiling != row.arithmetic_ceiling {
            witnesses.push(format!("mismatch at {}", row.value));
        }
    }
    lines.push(format!(
        "both adjunctions verified: {}",
        r.adjunctions_verified
    ));
    lines.push(format!(
        "right adjoint = floor, left adjoint = ceiling: {}",
        r.matches_arithmetic()
    ));
    Ok(Report::new(
        "demo",
        json!({"demo": "floor-ceiling", "report": r}),
        lines,
        witnesses,
    ))
}

fn wp() -> Result<Report, CliError> {
    let w = Arc::new(Universe::new("W", ["1", "2", "3"])?);
    let r = FiniteRelation::from_labels(
        w.clone(),
        w.clone(),
        &[("1", "2"), ("1", "3"), ("2", "2"), ("3", "1")],
    )?;
    let mut lines = vec![format!("worlds {{1,2,3}}, R = {}", r.canonical_name())];
    let mut steps = Vec::new();
    for target in [vec!["2"], vec!["2", "3"], vec![], vec!["1", "2", "3"]] {
        let t = SubsetOf::from_labels(w.clone(), &target)?;
        let pre = box_image(&r, &t)?;
        let post = relation_post_image(&r, &pre)?;
        lines.push(format!("[R]{t} = {pre}; f_R({pre}) = {post} ⊆ {t}"));
        steps.push(json!({"target": t, "wp": pre, "post_of_wp": post}));
    }
    let check = check_box_adjunction(&r, SUBSET_CAP)?;
    lines.push(format!(
        "f_R(S) ⊆ T ⟺ S ⊆ [R]T on all {} pairs: {}",
        check.instances,
        check.holds()
    ));
    Ok(Report::new(
        "demo",
        json!({"demo": "wp", "steps": steps, "pairs_checked": check.instances}),
        lines,
        check.failures,
    ))
}

fn quantifiers(seed: u64) -> Result<Report, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = Arc::new(Universe::new("A", ["a", "b", "c"])?);
    let edges: Vec<Vec<usize>> = (0..9)
        .filter(|_| rng.gen_bool(0.5))
        .map(|i| vec![i / 3, i % 3])
        .collect();
    let p: Vec<Vec<usize>> = (0..3)
        .filter(|_| rng.gen_bool(0.5))
        .map(|i| vec![i])
        .collect();
    let m = FoStructure::new(a.clone())
        .with_relation("E", 2, &edges)?
        .with_relation("P", 1, &p)?;
    let file = m.to_file();
    let show = |tuples: &[Vec<String>]| {
        tuples
            .iter()
            .map(|t| format!("({})", t.join(",")))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut lines = vec![
        format!("seed {seed}, A = {{a,b,c}}"),
        format!("E = {}", show(&file.relations["E"].tuples)),
        format!("P = {}", show(&file.relations["P"].tuples)),
    ];
    let mut witnesses = Vec::new();
    let mut rows = Vec::new();
    for (text, n) in [
        ("E(v1,v2)", 2),
        ("exists v2. E(v1,v2)", 1),
        ("forall v2. E(v1,v2)", 1),
        ("exists v2. E(v1,v2) & P(v2)", 1),
        ("forall v1. exists v2. E(v1,v2)", 0),
        ("exists v1. forall v2. E(v2,v1) -> P(v2)", 0),
    ] {
        let phi = parse_fo(text)?;
        let (direct, adjoint) = denotation_routes(&m, &phi, n, DEFAULT_BUDGET)?;
        lines.push(format!("{phi}  [context {n}]"));
        lines.push(format!("  Tarski:   {{{}}}", show(&direct.labels())));
        lines.push(format!("  adjoints: {{{}}}", show(&adjoint.labels())));
        if direct != adjoint {
            witnesses.push(format!("routes disagree on {phi}"));
        }
        rows.push(
            json!({"formula": phi.to_string(), "context": n, "tarski": direct, "adjoint": adjoint}),
        );
    }
    let phi = parse_fo("E(v1,v2)")?;
    let gamma = AssignmentSet::from_fn(a, 1, |t| t == [0]);
    let rule = verify_generalization_rule(&gamma, &phi, &m)?;
    lines.push(format!(
        "Γ = {{(a)}}: Γ ⊢ forall v2. E(v1,v2) iff π⁻¹Γ ⊢ E(v1,v2), both sides {rule}"
    ));
    let payload = json!({"demo": "quantifiers", "seed": seed, "structure": file, "formulas": rows, "generalization": rule});
    Ok(Report::new("demo", payload, lines, witnesses))
}
