use super::{all_tuples, BuildError};
use crate::category::{CategoryError, CategoryView};
use std::borrow::Cow;

/// An `rows × cols` matrix with entries in `Z_p`. As an arrow it goes from
/// object `rows` to object `cols`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatrixOverZp {
    p: u32,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl MatrixOverZp {
    pub fn new(p: u32, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self, BuildError> {
        if entries.len() != rows * cols || entries.iter().any(|&e| e >= p) {
            return Err(BuildError::InvalidFunction(format!(
                "a {rows}×{cols} matrix over Z_{p} needs {} entries in [0, {p})",
                rows * cols
            )));
        }
        Ok(MatrixOverZp {
            p,
            rows,
            cols,
            entries,
        })
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let entries = (0..n * n).map(|i| u32::from(i / n == i % n)).collect();
        MatrixOverZp {
            p,
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    /// The product `self · other`; requires `self.cols == other.rows`.
    pub fn mul(&self, other: &MatrixOverZp) -> MatrixOverZp {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let p = self.p as u64;
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let s: u64 = (0..self.cols)
                    .map(|k| self.entry(r, k) as u64 * other.entry(k, c) as u64)
                    .sum();
                entries.push((s % p) as u32);
            }
        }
        MatrixOverZp {
            p: self.p,
            rows: self.rows,
            cols: other.cols,
            entries,
        }
    }

    /// E.g. `2x2[1,0;0,1]`.
    pub fn label(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.entry(r, c).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        format!("{}x{}[{}]", self.rows, self.cols, rows.join(";"))
    }
}

/// Matrices over `Z_p` on objects `0..=max_dim`. An arrow `n → m` is an
/// `n × m` matrix and `N ∘ M` is the product `M · N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatView {
    p: u32,
    max_dim: usize,
    budget: usize,
}

fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

pub fn build_mat(p: u32, max_dim: usize, budget: usize) -> Result<MatView, BuildError> {
    if !is_prime(p) {
        return Err(BuildError::NotPrime(p));
    }
    let largest = (p as u128)
        .checked_pow((max_dim * max_dim) as u32)
        .unwrap_or(u128::MAX);
    if largest > budget as u128 {
        return Err(CategoryError::EnumerationBudgetExceeded {
            needed: largest,
            budget,
        }
        .into());
    }
    Ok(MatView { p, max_dim, budget })
}

impl MatView {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }
}

impl CategoryView for MatView {
    type Object = usize;
    type Arrow = MatrixOverZp;

    fn objects(&self) -> Vec<usize> {
        (0..=self.max_dim).collect()
    }

    fn hom(&self, dom: &usize, cod: &usize) -> Result<Cow<'_, [MatrixOverZp]>, CategoryError> {
        let cells = dom * cod;
        let count = (self.p as u128).pow(cells as u32);
        if count > self.budget as u128 {
            return Err(CategoryError::EnumerationBudgetExceeded {
                needed: count,
                budget: self.budget,
            });
        }
        Ok(Cow::Owned(
            all_tuples(cells, self.p as usize)
                .map(|t| MatrixOverZp {
                    p: self.p,
                    rows: *dom,
                    cols: *cod,
                    entries: t.into_iter().map(|e| e as u32).collect(),
                })
                .collect(),
        ))
    }

    fn dom(&self, f: &MatrixOverZp) -> usize {
        f.rows
    }

    fn cod(&self, f: &MatrixOverZp) -> usize {
        f.cols
    }

    fn compose(&self, after: &MatrixOverZp, then: &MatrixOverZp) -> MatrixOverZp {
        then.mul(after)
    }

    fn identity(&self, n: &usize) -> MatrixOverZp {
        MatrixOverZp::identity(self.p, *n)
    }

    fn contains_arrow(&self, f: &MatrixOverZp) -> bool {
        f.p == self.p
            && f.rows <= self.max_dim
            && f.cols <= self.max_dim
            && f.entries.len() == f.rows * f.cols
            && f.entries.iter().all(|&e| e < self.p)
    }

    fn arrow_label(&self, f: &MatrixOverZp) -> String {
        f.label()
    }

    fn object_label(&self, n: &usize) -> String {
        n.to_string()
    }
}
