//! Products and terminal objects by exhaustive search, in FinSet and in a
//! divisibility order where the product is the gcd.

use fincat::builders::{build_finset, poset_as_category, Limits, NamedFiniteSet};
use fincat::galois::FinitePoset;
use fincat::universal::{
    find_products, find_terminals, product_iso_certificate, terminal_iso_certificate,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sets = vec![
        NamedFiniteSet::new("1", ["*"])?,
        NamedFiniteSet::new("1'", ["+"])?,
        NamedFiniteSet::new("2", ["0", "1"])?,
        NamedFiniteSet::new("4", ["a", "b", "c", "d"])?,
    ];
    let fs = build_finset(sets, &Limits::default())?;
    let cat = fs.category();

    let ts = find_terminals(cat);
    let cert = terminal_iso_certificate(cat, ts[0], ts[1])?;
    println!(
        "terminals {} and {}: {:?}",
        cat.object_name(ts[0]).0,
        cat.object_name(ts[1]).0,
        cert.checks
    );

    let two = cat.object("2")?;
    let products = find_products(cat, two, two);
    println!(
        "2 x 2 has {} product cones, all with apex 4",
        products.len()
    );
    let iso = product_iso_certificate(cat, &products[0], &products[1])?;
    println!(
        "two of them are related by {} / {}",
        iso.forward, iso.backward
    );

    let div = FinitePoset::divisibility(&[1, 2, 3, 6, 12]);
    let pc = poset_as_category(&div);
    let (a, b) = (pc.object("6")?, pc.object("12")?);
    let p = &find_products(&pc, a, b)[0];
    println!(
        "in the divisibility order, 6 x 12 = {}",
        pc.object_name(p.apex()).0
    );
    Ok(())
}
