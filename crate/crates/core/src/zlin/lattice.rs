use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Matrix;
use crate::error::{Error, Result};

/// A sublattice of `Z^n`, kept in row-style Hermite normal form: pivots
/// positive, entries above a pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    ambient: usize,
    /// `rows[c]` is the basis row with pivot in column `c`, if any.
    rows: Vec<Option<Vec<BigInt>>>,
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

impl Lattice {
    pub fn zero(ambient: usize) -> Lattice {
        Lattice {
            ambient,
            rows: vec![None; ambient],
        }
    }

    pub fn full(ambient: usize) -> Lattice {
        let mut l = Lattice::zero(ambient);
        for c in 0..ambient {
            let mut r = vec![BigInt::zero(); ambient];
            r[c] = BigInt::one();
            l.rows[c] = Some(r);
        }
        l
    }

    pub fn from_rows(ambient: usize, rows: &[Vec<BigInt>]) -> Lattice {
        let mut l = Lattice::zero(ambient);
        for r in rows {
            l.insert(r.clone());
        }
        l
    }

    pub fn from_i64_rows(ambient: usize, rows: &[Vec<i64>]) -> Lattice {
        let mut l = Lattice::zero(ambient);
        for r in rows {
            l.insert(r.iter().map(|&x| BigInt::from(x)).collect());
        }
        l
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.iter().filter(|r| r.is_some()).count()
    }

    /// Adds a vector to the spanning set.
    pub fn insert(&mut self, mut v: Vec<BigInt>) {
        assert_eq!(
            v.len(),
            self.ambient,
            "vector length differs from ambient rank"
        );
        let mut touched = Vec::new();
        for c in 0..self.ambient {
            if v[c].is_zero() {
                continue;
            }
            match self.rows[c].take() {
                None => {
                    if v[c].is_negative() {
                        for x in v.iter_mut() {
                            *x = -&*x;
                        }
                    }
                    self.rows[c] = Some(v);
                    touched.push(c);
                    break;
                }
                Some(row) => {
                    let a = row[c].clone();
                    let b = v[c].clone();
                    if b.is_multiple_of(&a) {
                        let q = &b / &a;
                        for (x, y) in v.iter_mut().zip(row.iter()) {
                            *x -= &q * y;
                        }
                        self.rows[c] = Some(row);
                        continue;
                    }
                    let eg = a.extended_gcd(&b);
                    let (g, x, y) = (eg.gcd, eg.x, eg.y);
                    let (ag, bg) = (&a / &g, &b / &g);
                    let mut new_row = Vec::with_capacity(self.ambient);
                    let mut rest = Vec::with_capacity(self.ambient);
                    for (r, w) in row.iter().zip(v.iter()) {
                        new_row.push(&x * r + &y * w);
                        rest.push(&ag * w - &bg * r);
                    }
                    if new_row[c].is_negative() {
                        for x in new_row.iter_mut() {
                            *x = -&*x;
                        }
                    }
                    self.rows[c] = Some(new_row);
                    touched.push(c);
                    v = rest;
                }
            }
        }
        let Some(&last) = touched.last() else {
            return;
        };
        for d in 0..=last {
            let stale = touched.contains(&d)
                || self.rows[d]
                    .as_ref()
                    .is_some_and(|r| touched.iter().any(|&c| c > d && !r[c].is_zero()));
            if stale {
                self.reduce_row(d);
            }
        }
    }

    /// Reduces row `c` modulo the pivots to its right.
    fn reduce_row(&mut self, c: usize) {
        let Some(mut row) = self.rows[c].take() else {
            return;
        };
        for d in c + 1..self.ambient {
            if let Some(p) = &self.rows[d] {
                if !row[d].is_zero() {
                    let q = floor_div(&row[d], &p[d]);
                    if !q.is_zero() {
                        for (x, y) in row.iter_mut().zip(p.iter()) {
                            *x -= &q * y;
                        }
                    }
                }
            }
        }
        self.rows[c] = Some(row);
    }

    /// The HNF basis, ordered by pivot column.
    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().flatten().cloned().collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|&c| self.rows[c].is_some())
            .collect()
    }

    /// Coordinates of `v` in [`Lattice::basis`], or `None` if `v` is not in the lattice.
    pub fn coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut v = v.to_vec();
        let mut out = Vec::new();
        for c in 0..self.ambient {
            match &self.rows[c] {
                Some(row) => {
                    let (q, r) = v[c].div_rem(&row[c]);
                    if !r.is_zero() {
                        return None;
                    }
                    if !q.is_zero() {
                        for (x, y) in v.iter_mut().zip(row.iter()) {
                            *x -= &q * y;
                        }
                    }
                    out.push(q);
                }
                None => {
                    if !v[c].is_zero() {
                        return None;
                    }
                }
            }
        }
        Some(out)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coords(v).is_some()
    }

    /// Canonical representative of `v` modulo the lattice.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        for c in 0..self.ambient {
            if let Some(row) = &self.rows[c] {
                let q = floor_div(&v[c], &row[c]);
                if !q.is_zero() {
                    for (x, y) in v.iter_mut().zip(row.iter()) {
                        *x -= &q * y;
                    }
                }
            }
        }
        v
    }

    pub fn is_subset(&self, other: &Lattice) -> bool {
        self.rows.iter().flatten().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut l = self.clone();
        for r in other.rows.iter().flatten() {
            l.insert(r.clone());
        }
        l
    }

    pub fn is_full(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(c, r)| r.as_ref().is_some_and(|r| r[c].is_one()))
    }

    pub fn intersection(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient, other.ambient);
        let (a, b) = (self.basis(), other.basis());
        let mut stacked = a.clone();
        stacked.extend(b.iter().cloned());
        let ker = integer_kernel(&stacked, stacked.len(), self.ambient);
        let rows: Vec<Vec<BigInt>> = ker
            .basis()
            .iter()
            .map(|k| super::vec_mat(&k[..a.len()], &a, self.ambient))
            .collect();
        Lattice::from_rows(self.ambient, &rows)
    }

    /// Image of the lattice under `x -> x m`.
    pub fn map(&self, m: &Matrix, target_rank: usize) -> Lattice {
        Lattice::from_rows(
            target_rank,
            &self
                .basis()
                .iter()
                .map(|r| super::vec_mat(r, m, target_rank))
                .collect::<Vec<_>>(),
        )
    }
}

/// Basis of `{x : x a = 0}` for an `m x n` matrix `a` (rows are vectors).
pub fn integer_kernel(a: &Matrix, m: usize, n: usize) -> Lattice {
    let mut aug = Lattice::zero(n + m);
    for (i, row) in a.iter().enumerate() {
        let mut v = row.clone();
        v.extend((0..m).map(|j| {
            if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        }));
        aug.insert(v);
    }
    let rows: Vec<Vec<BigInt>> = aug
        .rows
        .iter()
        .enumerate()
        .filter(|(c, r)| *c >= n && r.is_some())
        .map(|(_, r)| r.as_ref().expect("checked")[n..].to_vec())
        .collect();
    Lattice::from_rows(m, &rows)
}

/// Invariant factors of `b / a` (torsion factors greater than 1, then one
/// `0` per free summand).
pub fn sub_quotient_invariants(a: &Lattice, b: &Lattice) -> Result<Vec<BigInt>> {
    let mut rel = Vec::new();
    for r in a.basis() {
        rel.push(b.coords(&r).ok_or_else(|| {
            Error::NotContained("first lattice is not contained in the second".into())
        })?);
    }
    Ok(super::invariants_of_relations(&rel, b.rank()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn hnf_example() {
        let l = Lattice::from_i64_rows(2, &[vec![2, 0], vec![0, 2], vec![1, 1]]);
        assert_eq!(l.basis(), big(&[vec![1, 1], vec![0, 2]]));
        assert_eq!(Lattice::from_i64_rows(3, &[]).rank(), 0);
        let id = Lattice::from_i64_rows(2, &[vec![1, 0], vec![0, 1]]);
        assert!(id.is_full());
    }

    #[test]
    fn kernel_and_quotients() {
        let a = big(&[vec![1, 2], vec![2, 4], vec![0, 1]]);
        let k = integer_kernel(&a, 3, 2);
        assert_eq!(k.rank(), 1);
        assert_eq!(k.basis(), big(&[vec![2, -1, 0]]));
        let two = Lattice::from_i64_rows(2, &[vec![2, 0], vec![0, 2]]);
        let full = Lattice::full(2);
        let inv = sub_quotient_invariants(&two, &full).unwrap();
        assert_eq!(inv, vec![BigInt::from(2), BigInt::from(2)]);
        assert!(sub_quotient_invariants(&full, &full).unwrap().is_empty());
        assert!(sub_quotient_invariants(&full, &two).is_err());
        let line = Lattice::from_i64_rows(2, &[vec![1, 0]]);
        let diag = Lattice::from_i64_rows(2, &[vec![2, 2]]);
        assert_eq!(two.intersection(&diag), diag);
        assert_eq!(line.intersection(&diag).rank(), 0);
        let evens = Lattice::from_i64_rows(2, &[vec![2, 0], vec![0, 1]]);
        let odds = Lattice::from_i64_rows(2, &[vec![1, 0], vec![0, 3]]);
        assert_eq!(
            evens.intersection(&odds),
            Lattice::from_i64_rows(2, &[vec![2, 0], vec![0, 3]])
        );
        assert_eq!(
            sub_quotient_invariants(&line, &full).unwrap(),
            vec![BigInt::zero()]
        );
    }
}
