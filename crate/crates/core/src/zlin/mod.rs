//! Exact integer linear algebra over `Z`.

mod lattice;
mod poset;
mod presented;
mod snf;

use num_bigint::BigInt;
use num_traits::Zero;

pub use lattice::{integer_kernel, sub_quotient_invariants, Lattice};
pub use poset::FinitePoset;
pub use presented::{AbMap, MapCalculus, PresentedAb};
pub use snf::{invariants_of_relations, smith_invariants};

/// Row-major integer matrix; rows are the vectors.
pub type Matrix = Vec<Vec<BigInt>>;

pub fn to_matrix(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn zero_matrix(rows: usize, cols: usize) -> Matrix {
    vec![vec![BigInt::zero(); cols]; rows]
}

/// `v m` for a row vector `v`.
pub fn vec_mat(v: &[BigInt], m: &Matrix, cols: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); cols];
    for (x, row) in v.iter().zip(m) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(row) {
            if !y.is_zero() {
                *o += x * y;
            }
        }
    }
    out
}

pub fn mat_mul(a: &Matrix, b: &Matrix, cols: usize) -> Matrix {
    a.iter().map(|r| vec_mat(r, b, cols)).collect()
}

/// Canonical row HNF of the span of `rows`.
pub fn hnf_basis(rows: &Matrix, cols: usize) -> Lattice {
    Lattice::from_rows(cols, rows)
}
