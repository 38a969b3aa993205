//! Units of the Burnside ring, found through marks, and a sign-exponential probe.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::burnside::{marks_matrix, BurnsideElement};
use crate::error::{Error, Result};
use crate::groups::Group;
use crate::rational::k_mod_delta;

pub const CLASS_BOUND: usize = 24;

/// A unit of `B(P)`: every mark is `+1` or `-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitElement {
    pub element: BurnsideElement,
    /// Bit `r` set when the mark at class `r` is `-1`.
    pub signs: u32,
}

fn checked_marks(p: &Group) -> Result<Vec<Vec<i64>>> {
    let n = p.lattice().len();
    if n > CLASS_BOUND {
        return Err(Error::CapExceeded {
            order: n,
            cap: CLASS_BOUND,
        });
    }
    Ok(marks_matrix(p))
}

/// Coefficients `a` with `a * M = m` for a sign pattern `m`, if integral.
fn preimage(m: &[Vec<i64>], signs: u32) -> Option<Vec<i64>> {
    let n = m.len();
    let mut a = vec![0i64; n];
    for r in (0..n).rev() {
        let s: i64 = (r + 1..n).map(|q| a[q] * m[q][r]).sum();
        let target = if signs >> r & 1 == 1 { -1 } else { 1 };
        let rest = target - s;
        if rest % m[r][r] != 0 {
            return None;
        }
        a[r] = rest / m[r][r];
    }
    Some(a)
}

fn search(m: &[Vec<i64>], r: usize, a: &mut [i64], signs: u32, out: &mut Vec<(u32, Vec<i64>)>) {
    let n = m.len();
    let s: i64 = (r + 1..n).map(|q| a[q] * m[q][r]).sum();
    for (bit, target) in [(0u32, 1i64), (1, -1)] {
        let rest = target - s;
        if rest % m[r][r] != 0 {
            continue;
        }
        a[r] = rest / m[r][r];
        let signs = signs | bit << r;
        if r == 0 {
            out.push((signs, a.to_vec()));
        } else {
            search(m, r - 1, a, signs, out);
        }
    }
    a[r] = 0;
}

fn to_element(p: &Arc<Group>, a: &[i64]) -> Result<BurnsideElement> {
    let v: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
    BurnsideElement::from_vector(p, &v)
}

/// All units of `B(P)`, by exhaustive search over sign patterns with pruning
/// on the triangular table of marks.
pub fn units(p: &Arc<Group>) -> Result<Vec<UnitElement>> {
    let m = checked_marks(p)?;
    let mut found = Vec::new();
    let mut a = vec![0i64; m.len()];
    search(&m, m.len() - 1, &mut a, 0, &mut found);
    found.sort();
    found
        .into_iter()
        .map(|(signs, a)| {
            Ok(UnitElement {
                element: to_element(p, &a)?,
                signs,
            })
        })
        .collect()
}

/// Whether a set of sign patterns is closed under componentwise product.
pub fn is_group(units: &[UnitElement]) -> bool {
    let set: HashSet<u32> = units.iter().map(|u| u.signs).collect();
    set.contains(&0)
        && set
            .iter()
            .all(|&x| set.iter().all(|&y| set.contains(&(x ^ y))))
}

fn f2_rank(mut rows: Vec<u32>) -> usize {
    let mut rank = 0;
    for bit in 0..32 {
        let Some(i) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else {
            continue;
        };
        rows.swap(rank, i);
        let pivot = rows[rank];
        for (j, r) in rows.iter_mut().enumerate() {
            if j != rank && *r >> bit & 1 == 1 {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Clone, Debug, Serialize)]
pub struct SignExpImage {
    pub group: String,
    pub unit_count: usize,
    /// `log2` of the unit group order.
    pub unit_rank: usize,
    /// `F_2`-rank of the span of the candidate images.
    pub image_rank: usize,
    pub coker_dim: usize,
    /// Every candidate image has an integral preimage.
    pub candidates_are_units: bool,
}

/// Subgroup generated by the candidate `G/Q -> ((-1)^{|(G/Q)^R|})_R`.
pub fn sign_exp_image(p: &Arc<Group>) -> Result<SignExpImage> {
    let m = checked_marks(p)?;
    let us = units(p)?;
    if !is_group(&us) {
        return Err(Error::Internal(format!(
            "units of B({}) are not closed",
            p.name()
        )));
    }
    let unit_rank = f2_rank(us.iter().map(|u| u.signs).collect());
    let candidates: Vec<u32> = m
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .fold(0u32, |acc, (r, &x)| acc | ((x & 1) as u32) << r)
        })
        .collect();
    let candidates_are_units = candidates.iter().all(|&s| preimage(&m, s).is_some());
    let image_rank = f2_rank(candidates);
    Ok(SignExpImage {
        group: p.name().to_string(),
        unit_count: us.len(),
        unit_rank,
        image_rank,
        coker_dim: unit_rank.saturating_sub(image_rank),
        candidates_are_units,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CokerRow {
    pub group: String,
    /// `|B^x(P)|`, absent past the class bound.
    pub units: Option<usize>,
    pub image: Option<usize>,
    pub d: usize,
    pub kmod_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CokerReport {
    pub rows: Vec<CokerRow>,
    /// `dim K/B_delta = d` on every row; the probe columns are not asserted.
    pub passed: bool,
}

pub fn coker_row(p: &Arc<Group>) -> Result<CokerRow> {
    let k = k_mod_delta(p)?;
    let two = BigInt::from(2);
    let kmod_dim = k
        .invariants
        .iter()
        .filter(|x| (*x % &two) == BigInt::from(0))
        .count();
    let probe = match sign_exp_image(p) {
        Ok(s) => Some(s),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(CokerRow {
        group: p.name().to_string(),
        units: probe.as_ref().map(|s| s.unit_count),
        image: probe.as_ref().map(|s| 1 << s.image_rank),
        d: k.d,
        kmod_dim,
    })
}

pub fn coker_report(universe: &[Arc<Group>]) -> Result<CokerReport> {
    let rows = universe.iter().map(coker_row).collect::<Result<Vec<_>>>()?;
    let passed = rows.iter().all(|r| r.d == r.kmod_dim);
    Ok(CokerReport { rows, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_group, standard_two_groups};

    fn g(name: &str) -> Arc<Group> {
        build_group(name).unwrap()
    }

    #[test]
    fn small_unit_groups() {
        assert_eq!(units(&Group::trivial()).unwrap().len(), 2);
        assert_eq!(units(&g("C2")).unwrap().len(), 4);
        assert_eq!(units(&g("C3")).unwrap().len(), 2);
    }

    /// For abelian `G`, `|B(G)^x| = 2^(1 + number of index-2 subgroups)`.
    #[test]
    fn abelian_unit_counts() {
        for name in ["C4", "E4", "C8", "C4xC2", "E8", "C4xC4", "C8xC2"] {
            let p = g(name);
            let index_two = p
                .lattice()
                .classes()
                .iter()
                .filter(|c| 2 * c.rep.order() == p.order())
                .count();
            assert_eq!(units(&p).unwrap().len(), 1 << (1 + index_two), "{name}");
        }
    }

    #[test]
    fn unit_marks_are_signs() {
        for name in ["C4", "E4", "D8", "Q8"] {
            let p = g(name);
            for u in units(&p).unwrap() {
                assert!(u
                    .element
                    .marks()
                    .iter()
                    .all(|m| *m == BigInt::from(1) || *m == BigInt::from(-1)));
            }
        }
    }

    #[test]
    fn candidate_exp_on_small_groups() {
        let t = sign_exp_image(&Group::trivial()).unwrap();
        assert_eq!((t.image_rank, t.coker_dim), (1, 0));
        let c2 = sign_exp_image(&g("C2")).unwrap();
        assert_eq!((c2.unit_count, c2.image_rank, c2.coker_dim), (4, 1, 1));
        assert!(c2.candidates_are_units);
    }

    #[test]
    fn units_form_groups_over_small_two_groups() {
        for name in standard_two_groups(16) {
            let p = g(name);
            if p.lattice().len() > CLASS_BOUND {
                assert!(matches!(units(&p), Err(Error::CapExceeded { .. })));
                continue;
            }
            assert!(is_group(&units(&p).unwrap()), "{name}");
            assert!(sign_exp_image(&p).unwrap().candidates_are_units, "{name}");
        }
    }

    #[test]
    fn coker_rows() {
        let r = coker_report(&[g("C4"), g("D16"), g("D32")]).unwrap();
        let dims: Vec<(usize, usize)> = r.rows.iter().map(|x| (x.d, x.kmod_dim)).collect();
        assert_eq!(dims, vec![(0, 0), (1, 1), (2, 2)]);
        assert!(r.passed);
    }
}
