use super::inputs::{load, load_category, CategoryInput, FunctorFile, MonotoneMapFile};
use super::{CliError, Report};
use crate::builders::Limits;
use crate::category::{
    epic_witness, find_inverse, is_groupoid, monic_witness, CategoryFile, FiniteCategory,
};
use crate::functor::{check_functoriality, check_iso_preservation, Functor};
use crate::galois::{
    best_approximation, left_adjoint, right_adjoint, verify_adjunction, Approximation, MonotoneMap,
};
use crate::logic::{
    box_image, check_box_adjunction, eval_modal, parse_fo, parse_modal, relation_post_image,
    tarski_denotation_within, FoStructure, FrameFile, KripkeFrame, LogicError, StructureFile,
};
use crate::nno::{
    check_mediation, nno_search, numeral, primrec_trace, BoundedNaturalSystem, RecursionData,
};
use crate::universal::{
    find_products, find_terminals, product_iso_certificate, terminal_iso_certificate,
};
use serde_json::{json, Value};
use std::path::Path;
use std::sync::Arc;

pub fn validate(file: &Path, limits: &Limits) -> Result<Report, CliError> {
    let cat = load_category(file, limits)?;
    let r = cat.validate();
    let mut lines = vec![format!(
        "{} objects, {} arrows",
        cat.object_count(),
        cat.arrow_count()
    )];
    if r.ok {
        lines.push("identity, unit and associativity laws hold".into());
    }
    let witnesses = r
        .violations
        .iter()
        .map(|v| format!("{}: {}", v.law, v.witnesses.join(", ")))
        .collect();
    let payload = json!({
        "objects": cat.object_count(),
        "arrows": cat.arrow_count(),
        "ok": r.ok,
        "violations": r.violations,
    });
    Ok(Report::new("validate", payload, lines, witnesses))
}

pub fn predicates(file: &Path, only: Option<&str>, limits: &Limits) -> Result<Report, CliError> {
    let cat = load_category(file, limits)?;
    let arrows: Vec<_> = match only {
        Some(name) => vec![cat.arrow(name)?],
        None => cat.arrows().collect(),
    };
    let name = |a| cat.arrow_name(a).0.clone();
    let pair = |p: Option<(_, _)>| p.map(|(g, h)| vec![name(g), name(h)]);
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for a in arrows {
        let monic = monic_witness(&cat, &a)?;
        let epic = epic_witness(&cat, &a)?;
        let inverse = find_inverse(&cat, &a)?;
        let flags: Vec<&str> = [
            (monic.is_none(), "monic"),
            (epic.is_none(), "epic"),
            (inverse.is_some(), "iso"),
        ]
        .into_iter()
        .filter_map(|(b, l)| b.then_some(l))
        .collect();
        lines.push(format!(
            "{}: {} -> {} [{}]",
            name(a),
            cat.object_name(cat.dom(a)),
            cat.object_name(cat.cod(a)),
            flags.join(", ")
        ));
        rows.push(json!({
            "arrow": name(a),
            "dom": cat.object_name(cat.dom(a)),
            "cod": cat.object_name(cat.cod(a)),
            "monic": monic.is_none(),
            "epic": epic.is_none(),
            "iso": inverse.is_some(),
            "inverse": inverse.map(name),
            "not_monic_witness": pair(monic),
            "not_epic_witness": pair(epic),
        }));
    }
    let groupoid = is_groupoid(&cat);
    lines.push(format!("groupoid: {groupoid}"));
    Ok(Report::new(
        "predicates",
        json!({"arrows": rows, "groupoid": groupoid}),
        lines,
        Vec::new(),
    ))
}

pub fn products(file: &Path, a: &str, b: &str, limits: &Limits) -> Result<Report, CliError> {
    let cat = load_category(file, limits)?;
    let (oa, ob) = (cat.object(a)?, cat.object(b)?);
    let prods = find_products(&cat, oa, ob);
    let mut lines = Vec::new();
    let mut isos = Vec::new();
    for p in &prods {
        lines.push(format!(
            "product {} with pi1 = {}, pi2 = {} ({} cones mediated)",
            cat.object_name(p.apex()),
            cat.arrow_name(p.pi1()),
            cat.arrow_name(p.pi2()),
            p.mediators.len()
        ));
    }
    if let Some(first) = prods.first() {
        for other in &prods[1..] {
            let iso = product_iso_certificate(&cat, first, other)?;
            lines.push(format!(
                "iso {} / {} ({} connecting)",
                iso.forward, iso.backward, iso.connecting_arrows
            ));
            isos.push(iso);
        }
    }
    let witnesses = if prods.is_empty() {
        vec![format!("no product of {a} and {b}")]
    } else {
        Vec::new()
    };
    let reports: Vec<_> = prods.iter().map(|p| p.report(&cat)).collect();
    let payload = json!({"pair": [a, b], "products": reports, "isos": isos});
    Ok(Report::new("products", payload, lines, witnesses))
}

pub fn terminal(file: &Path, limits: &Limits) -> Result<Report, CliError> {
    let cat = load_category(file, limits)?;
    let ts = find_terminals(&cat);
    let names: Vec<String> = ts.iter().map(|&t| cat.object_name(t).0.clone()).collect();
    let mut lines = vec![format!("terminal objects: [{}]", names.join(", "))];
    let mut isos = Vec::new();
    if let Some(&first) = ts.first() {
        for &t in &ts[1..] {
            let iso = terminal_iso_certificate(&cat, first, t)?;
            lines.push(format!("{}: {}", iso.forward, iso.checks.join("; ")));
            isos.push(iso);
        }
    }
    let witnesses = if ts.is_empty() {
        vec!["no terminal object".to_string()]
    } else {
        Vec::new()
    };
    Ok(Report::new(
        "terminal",
        json!({"terminals": names, "isos": isos}),
        lines,
        witnesses,
    ))
}

pub fn load_functor(file: &Path, limits: &Limits) -> Result<Functor, CliError> {
    functor_from_file(&load(file)?, file, limits)
}

pub fn functor_from_file(
    desc: &FunctorFile,
    file: &Path,
    limits: &Limits,
) -> Result<Functor, CliError> {
    let source = Arc::new(desc.source.category(file, "source")?.build(limits)?);
    let target = Arc::new(desc.target.category(file, "target")?.build(limits)?);
    Ok(Functor::from_names(
        source,
        target,
        &desc.object_map,
        &desc.arrow_map,
    )?)
}

pub fn functor_check(file: &Path, limits: &Limits) -> Result<Report, CliError> {
    let f = load_functor(file, limits)?;
    let report = check_functoriality(&f);
    let preserves = if report.ok {
        Some(check_iso_preservation(&f)?)
    } else {
        None
    };
    let mut lines = vec![format!(
        "{} objects and {} arrows mapped",
        f.source().object_count(),
        f.source().arrow_count()
    )];
    if report.ok {
        lines.push("typing, identities and composites preserved".into());
    }
    if let Some(p) = preserves {
        lines.push(format!("isomorphisms preserved: {p}"));
    }
    let mut witnesses: Vec<String> = report
        .violations
        .iter()
        .map(|v| format!("{}: {}", v.law, v.witnesses.join(", ")))
        .collect();
    if preserves == Some(false) {
        witnesses.push("an isomorphism maps to a non-isomorphism".into());
    }
    let payload = json!({
        "functorial": report.ok,
        "violations": report.violations,
        "preserves_isos": preserves,
    });
    Ok(Report::new("functor-check", payload, lines, witnesses))
}

fn graph_labels(m: &MonotoneMap) -> Value {
    let map: serde_json::Map<String, Value> = (0..m.dom().len())
        .map(|x| {
            (
                m.dom().label(x).to_string(),
                Value::from(m.cod().label(m.apply(x))),
            )
        })
        .collect();
    Value::Object(map)
}

/// Treats the map as `g: Q → P` and looks for both of its adjoints.
pub fn adjoints(file: &Path) -> Result<Report, CliError> {
    let desc: MonotoneMapFile = load(file)?;
    let g = desc.to_map(file)?;
    let (q, p) = (g.dom(), g.cod());
    let mut lines = Vec::new();
    let mut witnesses = Vec::new();
    let mut approximations = Vec::new();
    for x in 0..p.len() {
        let label = p.label(x);
        let (kind, detail) = match best_approximation(&g, x)? {
            Approximation::Best(y) => ("best", json!(q.label(y))),
            Approximation::NoApproximants => ("none", Value::Null),
            Approximation::NoLeast { approximants } => (
                "no-least",
                json!(approximants.iter().map(|&y| q.label(y)).collect::<Vec<_>>()),
            ),
        };
        match kind {
            "best" => lines.push(format!(
                "best approximation of {label}: {}",
                detail.as_str().unwrap_or_default()
            )),
            "none" => witnesses.push(format!(
                "{label} has no best approximation (no approximants)"
            )),
            _ => witnesses.push(format!(
                "{label} has no best approximation (approximants {detail} have no least element)"
            )),
        }
        approximations.push(json!({"x": label, "kind": kind, "value": detail}));
    }
    let left = left_adjoint(&g);
    let right = right_adjoint(&g);
    if let Some(f) = &left {
        let cert = verify_adjunction(f, &g)?;
        lines.push(format!(
            "left adjoint verified on {} pairs",
            cert.verified_on
        ));
    }
    match &right {
        Some(h) => {
            let cert = verify_adjunction(&g, h)?;
            lines.push(format!(
                "right adjoint verified on {} pairs",
                cert.verified_on
            ));
        }
        None => lines.push("no right adjoint".into()),
    }
    let payload = json!({
        "best_approximations": approximations,
        "left_adjoint": left.as_ref().map(graph_labels),
        "right_adjoint": right.as_ref().map(graph_labels),
    });
    Ok(Report::new("adjoints", payload, lines, witnesses))
}

fn load_frame(path: &Path) -> Result<KripkeFrame, CliError> {
    let file: FrameFile = load(path)?;
    Ok(KripkeFrame::from_file(&file)?)
}

pub fn wp(frame: &Path, post: &str, limits: &Limits) -> Result<Report, CliError> {
    let k = load_frame(frame)?;
    let phi = parse_modal(post)?;
    let t = eval_modal(&k, &phi)?;
    let pre = box_image(k.access(), &t)?;
    let w = k.worlds();
    let mut lines = vec![format!("T = ⟦{phi}⟧ = {t}")];
    let mut trace = Vec::new();
    for x in 0..w.len() {
        let single = crate::logic::SubsetOf::from_fn(w.clone(), |i| i == x);
        let succ = relation_post_image(k.access(), &single)?;
        let inside = pre.contains(x);
        lines.push(format!(
            "world {}: successors {succ} {} T",
            w.label(x),
            if inside { "⊆" } else { "⊄" }
        ));
        trace.push(json!({"world": w.label(x), "successors": succ, "in_wp": inside}));
    }
    lines.push(format!("[R]T = {pre}"));
    let cap = limits.cap.unwrap_or(crate::logic::SUBSET_CAP);
    let check = check_box_adjunction(k.access(), cap)
        .map(Some)
        .or_else(|e| match e {
            LogicError::CapExceeded { .. } => Ok(None),
            e => Err(e),
        })?;
    let mut witnesses = Vec::new();
    if let Some(c) = &check {
        lines.push(format!("f_R ⊣ [R] checked on {} subset pairs", c.instances));
        witnesses.extend(c.failures.iter().cloned());
    }
    let payload = json!({
        "post": phi.to_string(),
        "target": t,
        "wp": pre,
        "trace": trace,
        "adjunction_pairs_checked": check.map(|c| c.instances),
    });
    Ok(Report::new("wp", payload, lines, witnesses))
}

pub fn modal_eval(frame: &Path, formula: &str) -> Result<Report, CliError> {
    let k = load_frame(frame)?;
    let phi = parse_modal(formula)?;
    let s = eval_modal(&k, &phi)?;
    let lines = vec![format!("⟦{phi}⟧ = {s}")];
    Ok(Report::new(
        "modal-eval",
        json!({"formula": phi.to_string(), "worlds": s}),
        lines,
        Vec::new(),
    ))
}

pub fn fo_eval(
    structure: &Path,
    formula: &str,
    n: usize,
    limits: &Limits,
) -> Result<Report, CliError> {
    let file: StructureFile = load(structure)?;
    let m = FoStructure::from_file(&file)?;
    let phi = parse_fo(formula)?;
    let d = match tarski_denotation_within(&m, &phi, n, limits.budget) {
        Err(LogicError::RouteMismatch(w)) => {
            return Ok(Report::new("fo-eval", Value::Null, Vec::new(), vec![w]));
        }
        other => other?,
    };
    let tuples: Vec<String> = d
        .labels()
        .iter()
        .map(|t| format!("({})", t.join(",")))
        .collect();
    let lines = vec![
        format!("context v1..v{n}, formula {phi}"),
        format!(
            "⟦φ⟧ = {{{}}} (Tarski clauses and projection adjoints agree)",
            tuples.join(", ")
        ),
    ];
    let payload = json!({"formula": phi.to_string(), "context": n, "denotation": d});
    Ok(Report::new("fo-eval", payload, lines, Vec::new()))
}

pub fn nno_demo(file: Option<&Path>, k: usize) -> Result<Report, CliError> {
    let data = match file {
        Some(path) => RecursionData::from_file(&load(path)?)?,
        None => RecursionData::cyclic(3),
    };
    let carrier = data.carrier().clone();
    let trace = primrec_trace(&data, k);
    let sys = BoundedNaturalSystem::standard(k.max(1));
    let mut lines = vec![format!(
        "carrier {{{}}}, c = {}, f = [{}]",
        carrier.elements.join(","),
        carrier.label(data.c()),
        (0..carrier.len())
            .map(|x| carrier.label(data.f(x)))
            .collect::<Vec<_>>()
            .join(",")
    )];
    let mut rows = Vec::new();
    for (n, &v) in trace.iter().enumerate() {
        let term = numeral(&sys, n)?.to_string();
        lines.push(format!("h({term}) = {}", carrier.label(v)));
        rows.push(json!({"n": n, "numeral": term, "value": carrier.label(v)}));
    }
    let med = check_mediation(&data, &trace, k)?;
    lines.push(format!(
        "h ∘ z = c and h ∘ s = f ∘ h hold up to {}: {}",
        med.checked_up_to, med.equations_hold
    ));

    let mut searches = Vec::new();
    for sets in [
        vec![("1", vec!["*"])],
        vec![("1", vec!["*"]), ("2", vec!["0", "1"])],
    ] {
        let named: Vec<_> = sets
            .iter()
            .map(|(n, e)| crate::builders::NamedFiniteSet::new(*n, e.clone()))
            .collect::<Result<_, _>>()?;
        let fs = crate::builders::build_finset(named, &Limits::default())?;
        let r = nno_search(fs.category());
        let label = format!(
            "FinSet on {{{}}}",
            sets.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
        );
        lines.push(format!(
            "{label}: {} natural numbers object candidates survive",
            r.triples.len()
        ));
        searches.push(json!({"category": label, "survivors": r.triples.len(), "refuted": r.refutations.len()}));
    }
    let witnesses = med
        .witness
        .map(|n| vec![format!("mediation fails at n = {n}")])
        .unwrap_or_default();
    let payload = json!({"trace": rows, "mediation": med, "searches": searches});
    Ok(Report::new("nno-demo", payload, lines, witnesses))
}

pub fn builders(file: &Path, limits: &Limits) -> Result<Report, CliError> {
    let input = CategoryInput::load(file)?;
    let cat: FiniteCategory = input.build(limits)?;
    let dump = CategoryFile::from_category(&cat);
    let lines = vec![
        format!(
            "{} objects, {} arrows",
            cat.object_count(),
            cat.arrow_count()
        ),
        format!("objects: [{}]", dump.objects.join(", ")),
    ];
    Ok(Report::new(
        "builders",
        json!({"category": dump}),
        lines,
        Vec::new(),
    ))
}
