//! Monic and epic arrows in FinSet, compared with injectivity and surjectivity.

use fincat::builders::{build_finset, Limits, NamedFiniteSet};
use fincat::category::{find_inverse, is_epic, is_monic};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sets = vec![
        NamedFiniteSet::new("2", ["a", "b"])?,
        NamedFiniteSet::new("3", ["x", "y", "z"])?,
    ];
    let fs = build_finset(sets, &Limits::default())?;
    let cat = fs.category();
    println!("{:<16} {:>6} {:>6} {:>6}", "arrow", "monic", "epic", "iso");
    for a in cat.arrows().filter(|&a| cat.dom(a) != cat.cod(a)) {
        let f = fs.function(a);
        assert_eq!(is_monic(cat, &a)?, f.is_injective());
        assert_eq!(is_epic(cat, &a)?, f.is_surjective());
        println!(
            "{:<16} {:>6} {:>6} {:>6}",
            cat.arrow_name(a).0,
            is_monic(cat, &a)?,
            is_epic(cat, &a)?,
            find_inverse(cat, &a)?.is_some()
        );
    }
    Ok(())
}
