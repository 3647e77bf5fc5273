use super::{
    left_adjoint, right_adjoint, verify_adjunction, FinitePoset, GaloisError, MonotoneMap,
};
use serde::Serialize;
use std::sync::Arc;

/// Integers `-k..=k` as a chain.
pub fn integer_chain(k: u32) -> FinitePoset {
    let k = k as i64;
    FinitePoset::chain(&(-k..=k).collect::<Vec<_>>())
}

/// Multiples of `1/denominator` in `[-k, k]` as a chain, labelled by reduced
/// fractions (`-1/2`, `0`, `5/2`, ...).
pub fn rational_grid(k: u32, denominator: u32) -> FinitePoset {
    let (k, d) = (k as i64, denominator as i64);
    let labels: Vec<String> = (-k * d..=k * d).map(|n| fraction_label(n, d)).collect();
    FinitePoset::chain(&labels)
}

fn fraction_label(n: i64, d: i64) -> String {
    let g = gcd(n.unsigned_abs(), d.unsigned_abs()).max(1) as i64;
    let (n, d) = (n / g, d / g);
    if d == 1 {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FloorCeilingRow {
    pub value: String,
    pub numerator: i64,
    /// Right adjoint of the inclusion at this point.
    pub floor: i64,
    /// Left adjoint of the inclusion at this point.
    pub ceiling: i64,
    pub arithmetic_floor: i64,
    pub arithmetic_ceiling: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FloorCeilingReport {
    pub k: u32,
    pub denominator: u32,
    pub rows: Vec<FloorCeilingRow>,
    pub adjunctions_verified: bool,
}

impl FloorCeilingReport {
    pub fn matches_arithmetic(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.floor == r.arithmetic_floor && r.ceiling == r.arithmetic_ceiling)
    }

    pub fn row(&self, value: &str) -> Option<&FloorCeilingRow> {
        self.rows.iter().find(|r| r.value == value)
    }
}

/// Computes both adjoints of the inclusion `[-k, k] ∩ Z ↪ grid` by search and
/// compares them with integer floor/ceiling.
pub fn floor_ceiling_demo(k: u32, denominator: u32) -> Result<FloorCeilingReport, GaloisError> {
    assert!(
        k > 0 && denominator > 0,
        "k and denominator must be positive"
    );
    let d = denominator as i64;
    let ints = Arc::new(integer_chain(k));
    let grid = Arc::new(rational_grid(k, denominator));
    let inclusion = MonotoneMap::new(
        ints.clone(),
        grid.clone(),
        (0..ints.len()).map(|i| i * denominator as usize).collect(),
    )?;
    // Endpoints are integers, so both adjoints are total.
    let floor = right_adjoint(&inclusion).expect("grid endpoints are integers");
    let ceiling = left_adjoint(&inclusion).expect("grid endpoints are integers");
    verify_adjunction(&inclusion, &floor)?;
    verify_adjunction(&ceiling, &inclusion)?;

    let offset = k as i64;
    let rows = (0..grid.len())
        .map(|i| {
            let numerator = i as i64 - offset * d;
            FloorCeilingRow {
                value: grid.label(i).to_string(),
                numerator,
                floor: floor.apply(i) as i64 - offset,
                ceiling: ceiling.apply(i) as i64 - offset,
                arithmetic_floor: numerator.div_euclid(d),
                arithmetic_ceiling: -(-numerator).div_euclid(d),
            }
        })
        .collect();
    Ok(FloorCeilingReport {
        k,
        denominator,
        rows,
        adjunctions_verified: true,
    })
}
