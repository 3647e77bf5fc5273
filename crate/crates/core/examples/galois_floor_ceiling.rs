//! Floor and ceiling as the two adjoints of the inclusion of integers into a
//! grid of halves.

use fincat::galois::floor_ceiling_demo;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = floor_ceiling_demo(2, 2)?;
    println!("{:>6} {:>6} {:>6}", "r", "floor", "ceil");
    for row in &report.rows {
        println!("{:>6} {:>6} {:>6}", row.value, row.floor, row.ceiling);
    }
    println!("matches arithmetic: {}", report.matches_arithmetic());
    Ok(())
}
