use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Matrix;

/// Diagonal of the Smith normal form (length `min(rows, cols)`, nonnegative,
/// each entry dividing the next, zeros last).
pub fn smith_invariants(m: &Matrix, cols: usize) -> Vec<BigInt> {
    let mut a: Matrix = m.clone();
    let rows = a.len();
    let n = rows.min(cols);
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        // smallest nonzero entry of the remaining block becomes the pivot
        let Some((pi, pj)) = min_entry(&a, t, cols) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (top, rest) = a.split_at_mut(i);
                for (x, y) in rest[0].iter_mut().zip(top[t].iter()) {
                    *x -= &q * y;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility: fold an offending row into row t
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in top[t].iter_mut().zip(rest[0].iter()) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag.resize(n, BigInt::zero());
    diag
}

fn min_entry(a: &Matrix, t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for j in t..cols {
            if !row[j].is_zero() && best.is_none_or(|(bi, bj)| row[j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Invariant factors of `Z^ngens / <rels>`: torsion factors greater than 1,
/// then one `0` per free summand.
pub fn invariants_of_relations(rels: &Matrix, ngens: usize) -> Vec<BigInt> {
    let d = smith_invariants(rels, ngens);
    let nonzero = d.iter().filter(|x| !x.is_zero()).count();
    let mut out: Vec<BigInt> = d.into_iter().filter(|x| *x > BigInt::from(1)).collect();
    out.extend(std::iter::repeat_n(BigInt::zero(), ngens - nonzero));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlin::to_matrix;

    #[test]
    fn small_cases() {
        assert_eq!(
            smith_invariants(&to_matrix(&[vec![2]]), 1),
            vec![BigInt::from(2)]
        );
        assert_eq!(
            smith_invariants(&to_matrix(&[vec![1, 0], vec![0, 2]]), 2),
            vec![BigInt::from(1), BigInt::from(2)]
        );
        assert_eq!(
            smith_invariants(&to_matrix(&[vec![2, 0], vec![0, 3]]), 2),
            vec![BigInt::from(1), BigInt::from(6)]
        );
        assert_eq!(
            smith_invariants(&to_matrix(&[vec![0, 0, 0]]), 3),
            vec![BigInt::zero()]
        );
        assert_eq!(
            invariants_of_relations(&to_matrix(&[vec![2, 4, 4], vec![-6, 6, 12]]), 3),
            vec![BigInt::from(2), BigInt::from(6), BigInt::zero()]
        );
    }
}
