//! Functor checks: a parity homomorphism, a monotone map, and the powerset
//! functor on small sets.

use fincat::builders::{build_finset, FiniteMonoid, Limits, MonoidHom, NamedFiniteSet};
use fincat::functor::{
    check_functoriality, check_iso_preservation, monoid_hom_as_functor, monotone_as_functor,
    powerset_functor,
};
use fincat::galois::{FinitePoset, MonotoneMap};
use std::sync::Arc;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let z4 = Arc::new(FiniteMonoid::cyclic(4));
    let z2 = Arc::new(FiniteMonoid::cyclic(2));
    let parity = MonoidHom::new(z4, z2, vec![0, 1, 0, 1])?;
    let f = monoid_hom_as_functor(&parity);
    println!(
        "parity Z4 -> Z2 is a functor: {}",
        check_functoriality(&f).ok
    );

    let chain = Arc::new(FinitePoset::chain(&["0", "1", "2"]));
    let collapse = MonotoneMap::new(chain.clone(), chain, vec![0, 0, 2])?;
    let g = monotone_as_functor(&collapse);
    println!(
        "collapse on a 3-chain is a functor: {}, preserves isos: {}",
        check_functoriality(&g).ok,
        check_iso_preservation(&g)?
    );

    let fs = build_finset(
        vec![
            NamedFiniteSet::new("1", ["a"])?,
            NamedFiniteSet::new("2", ["0", "1"])?,
        ],
        &Limits::default(),
    )?;
    let p = powerset_functor(&fs, 100_000)?;
    println!(
        "powerset functor on {} arrows lands in {} arrows; functorial: {}",
        fs.category().arrow_count(),
        p.target.category().arrow_count(),
        check_functoriality(&p.functor).ok
    );
    Ok(())
}
