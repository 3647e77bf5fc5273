//! The box modality as a weakest precondition, and its left adjoint.

use fincat::builders::{FiniteRelation, Universe};
use fincat::logic::{check_box_adjunction, relation_post_image, weakest_precondition, SubsetOf};
use std::sync::Arc;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = Arc::new(Universe::new("W", ["1", "2", "3"])?);
    let r = FiniteRelation::from_labels(
        w.clone(),
        w.clone(),
        &[("1", "2"), ("1", "3"), ("2", "2"), ("3", "1")],
    )?;
    for target in [vec!["2"], vec!["2", "3"], vec![]] {
        let t = SubsetOf::from_labels(w.clone(), &target)?;
        let pre = weakest_precondition(&r, &t)?;
        println!(
            "[R]{t} = {pre}; its image under R is {}",
            relation_post_image(&r, &pre)?
        );
    }
    let check = check_box_adjunction(&r, 4)?;
    println!(
        "adjunction checked on {} pairs: {}",
        check.instances,
        check.holds()
    );
    Ok(())
}
