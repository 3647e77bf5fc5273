//! Primitive recursion by a bounded natural numbers system, and the search that
//! shows small FinSet categories have no natural numbers object.

use fincat::builders::{build_finset, Limits, NamedFiniteSet};
use fincat::nno::{
    check_mediation, nno_search, numeral, primrec_trace, BoundedNaturalSystem, RecursionData,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sys = BoundedNaturalSystem::standard(6);
    let data = RecursionData::cyclic(3);
    let h = primrec_trace(&data, 6);
    for (n, v) in h.iter().enumerate() {
        println!("h({}) = {v}", numeral(&sys, n)?);
    }
    println!(
        "mediation equations hold: {}",
        check_mediation(&data, &h, 6)?.equations_hold
    );

    let fs = build_finset(
        vec![
            NamedFiniteSet::new("1", ["*"])?,
            NamedFiniteSet::new("2", ["0", "1"])?,
        ],
        &Limits::default(),
    )?;
    let search = nno_search(fs.category());
    println!(
        "{} candidates survive, {} refuted",
        search.triples.len(),
        search.refutations.len()
    );
    for r in search.refutations.iter().take(3) {
        let c = fs.category();
        println!(
            "  N = {} refuted by A = {} with {} mediators",
            c.object_name(r.candidate.n).0,
            c.object_name(r.a).0,
            r.mediators
        );
    }
    Ok(())
}
