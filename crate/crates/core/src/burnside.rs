//! The Burnside group `B(G)`: transitive-set basis, marks, and the kernel `K(G)`
//! of linearization.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::groups::{Group, Subgroup};
use crate::zlin::{integer_kernel, Lattice};

/// A virtual `G`-set: integer combination of `G/H` over canonical class
/// representatives `H`.
#[derive(Clone)]
pub struct BurnsideElement {
    pub group: Arc<Group>,
    terms: BTreeMap<Subgroup, BigInt>,
}

impl PartialEq for BurnsideElement {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_as(&other.group) && self.terms == other.terms
    }
}

impl Eq for BurnsideElement {}

impl fmt::Debug for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({})[", self.group.name())?;
        for (i, (h, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*G/{h:?}")?;
        }
        write!(f, "]")
    }
}

impl BurnsideElement {
    pub fn zero(group: &Arc<Group>) -> Self {
        BurnsideElement {
            group: group.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The transitive set `G/H`.
    pub fn transitive(group: &Arc<Group>, h: &Subgroup) -> Self {
        let mut x = Self::zero(group);
        x.add_term(h, BigInt::one());
        x
    }

    pub fn add_term(&mut self, h: &Subgroup, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let rep = self.group.canonical(h);
        self.add_canonical(rep, c);
    }

    /// Adds `c * G/rep` where `rep` is already canonical.
    pub(crate) fn add_canonical(&mut self, rep: Subgroup, c: BigInt) {
        match self.terms.entry(rep) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Subgroup, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, h: &Subgroup) -> BigInt {
        self.terms
            .get(&self.group.canonical(h))
            .cloned()
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_group(&self, other: &Self) {
        assert!(
            self.group.same_as(&other.group),
            "Burnside elements over different groups: {} and {}",
            self.group.name(),
            other.group.name()
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_group(other);
        let mut r = self.clone();
        for (h, c) in &other.terms {
            r.add_canonical(h.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut r = Self::zero(&self.group);
        if !k.is_zero() {
            for (h, c) in &self.terms {
                r.terms.insert(h.clone(), c * k);
            }
        }
        r
    }

    /// Virtual cardinality.
    pub fn cardinality(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(h, c)| c * BigInt::from(self.group.order() / h.order()))
            .sum()
    }

    /// Coefficient vector over the class list of the group.
    pub fn to_vector(&self) -> Vec<BigInt> {
        let lat = self.group.lattice();
        let mut v = vec![BigInt::zero(); lat.len()];
        for (h, c) in &self.terms {
            v[lat.class_of(h).expect("canonical subgroup")] = c.clone();
        }
        v
    }

    pub fn from_vector(group: &Arc<Group>, v: &[BigInt]) -> Result<Self> {
        let lat = group.lattice();
        if v.len() != lat.len() {
            return Err(Error::InvalidArgument(format!(
                "vector of length {} for {} classes of {}",
                v.len(),
                lat.len(),
                group.name()
            )));
        }
        let mut x = Self::zero(group);
        for (c, k) in lat.classes().iter().zip(v) {
            if !k.is_zero() {
                x.terms.insert(c.rep.clone(), k.clone());
            }
        }
        Ok(x)
    }

    /// Terms as `(class index, coefficient)`.
    pub fn class_terms(&self) -> Vec<(usize, BigInt)> {
        let lat = self.group.lattice();
        let mut v: Vec<(usize, BigInt)> = self
            .terms
            .iter()
            .map(|(h, c)| (lat.class_of(h).expect("canonical subgroup"), c.clone()))
            .collect();
        v.sort();
        v
    }

    /// Moves the element to another table for the same group.
    pub fn relabel(&self, group: &Arc<Group>) -> Self {
        assert!(self.group.same_as(group));
        let mut r = Self::zero(group);
        for (h, c) in &self.terms {
            r.add_term(h, c.clone());
        }
        r
    }

    /// Image under an isomorphism `f: G -> H` given as an element map.
    pub fn transport(&self, target: &Arc<Group>, f: &[usize]) -> Self {
        let mut r = Self::zero(target);
        for (h, c) in &self.terms {
            let img = Subgroup::from_elements(target.order(), h.iter().map(|x| f[x]));
            r.add_term(&img, c.clone());
        }
        r
    }

    pub fn marks(&self) -> Vec<BigInt> {
        let lat = self.group.lattice();
        lat.classes()
            .iter()
            .map(|r| {
                self.terms
                    .iter()
                    .map(|(h, c)| c * BigInt::from(mark(&self.group, h, &r.rep)))
                    .sum()
            })
            .collect()
    }

    /// Marks restricted to cyclic classes; zero exactly when the element
    /// vanishes in `R_Q(G)`.
    pub fn cyclic_marks(&self) -> Vec<BigInt> {
        let lat = self.group.lattice();
        lat.cyclic_classes()
            .into_iter()
            .map(|i| {
                self.terms
                    .iter()
                    .map(|(h, c)| c * BigInt::from(mark(&self.group, h, &lat.classes()[i].rep)))
                    .sum()
            })
            .collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

/// Number of fixed points of `K` on `G/H`.
pub fn mark(g: &Group, h: &Subgroup, k: &Subgroup) -> usize {
    if k.order() > h.order() || !h.order().is_multiple_of(k.order()) {
        return 0;
    }
    let kg = g.small_generating_set(k);
    let count = (0..g.order())
        .filter(|&x| {
            let xi = g.inv(x);
            kg.iter().all(|&y| h.contains(g.mul(g.mul(xi, y), x)))
        })
        .count();
    count / h.order()
}

/// Table of marks: row `G/Q`, column `R`, both in class order.
pub fn marks_matrix(g: &Group) -> Vec<Vec<i64>> {
    let lat = g.lattice();
    lat.classes()
        .iter()
        .map(|q| {
            lat.classes()
                .iter()
                .map(|r| mark(g, &q.rep, &r.rep) as i64)
                .collect()
        })
        .collect()
}

/// Decomposes a permutation action (`act[g][x]`) into orbits.
pub fn decompose_action(g: &Arc<Group>, act: &[Vec<usize>]) -> Result<BurnsideElement> {
    if act.len() != g.order() {
        return Err(Error::NotAnAction(format!(
            "{} permutations for a group of order {}",
            act.len(),
            g.order()
        )));
    }
    let n = act[0].len();
    if act
        .iter()
        .any(|p| p.len() != n || p.iter().any(|&x| x >= n))
    {
        return Err(Error::NotAnAction("permutations of unequal size".into()));
    }
    if (0..n).any(|x| act[0][x] != x) {
        return Err(Error::NotAnAction("identity does not act trivially".into()));
    }
    for a in 0..g.order() {
        for b in 0..g.order() {
            if (0..n).any(|x| act[g.mul(a, b)][x] != act[a][act[b][x]]) {
                return Err(Error::NotAnAction(format!(
                    "composition fails for ({a}, {b})"
                )));
            }
        }
    }
    let mut seen = vec![false; n];
    let mut out = BurnsideElement::zero(g);
    for x in 0..n {
        if seen[x] {
            continue;
        }
        for p in act {
            seen[p[x]] = true;
        }
        let stab = Subgroup::from_elements(g.order(), (0..g.order()).filter(|&a| act[a][x] == x));
        out.add_term(&stab, BigInt::one());
    }
    Ok(out)
}

/// `K(G)`: kernel of the cyclic-marks map, as a lattice in class coordinates.
pub fn kernel_k(g: &Group) -> Lattice {
    let lat = g.lattice();
    let cyc = lat.cyclic_classes();
    let m: Vec<Vec<BigInt>> = lat
        .classes()
        .iter()
        .map(|q| {
            cyc.iter()
                .map(|&r| BigInt::from(mark(g, &q.rep, &lat.classes()[r].rep)))
                .collect()
        })
        .collect();
    integer_kernel(&m, lat.len(), cyc.len())
}

/// `E/1 - sum_{|F| = p} E/F + p E/E` for `E` elementary abelian of rank 2.
pub fn epsilon(e: &Arc<Group>) -> Result<BurnsideElement> {
    let p = e.prime() as usize;
    if e.order() != p * p || !e.is_abelian() || e.exponent() != p {
        return Err(Error::InvalidArgument(format!(
            "{} is not elementary abelian of rank 2",
            e.name()
        )));
    }
    let mut x = BurnsideElement::transitive(e, &e.trivial_subgroup());
    for c in e.lattice().classes() {
        if c.rep.order() == p {
            x.add_term(&c.rep, BigInt::from(-1));
        }
    }
    x.add_term(&e.whole(), BigInt::from(p));
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_group;

    #[test]
    fn marks_small() {
        let c2 = build_group("C2").unwrap();
        assert_eq!(marks_matrix(&c2), vec![vec![2, 0], vec![1, 1]]);
        assert_eq!(marks_matrix(&Group::trivial()), vec![vec![1]]);
        let d8 = build_group("D8").unwrap();
        let z = d8.class_index(&d8.center());
        assert_eq!(marks_matrix(&d8)[z][z], 4);
        // lower triangular with nonzero diagonal
        let m = marks_matrix(&d8);
        for i in 0..m.len() {
            assert!(m[i][i] > 0);
            for j in i + 1..m.len() {
                assert_eq!(m[i][j], 0);
            }
        }
    }

    #[test]
    fn regular_action_and_conjugation() {
        let c2 = build_group("C2").unwrap();
        let reg: Vec<Vec<usize>> = (0..2)
            .map(|a| (0..2).map(|x| c2.mul(a, x)).collect())
            .collect();
        let x = decompose_action(&c2, &reg).unwrap();
        assert_eq!(x, BurnsideElement::transitive(&c2, &c2.trivial_subgroup()));

        let d8 = build_group("D8").unwrap();
        let invols: Vec<usize> = (0..8).filter(|&a| d8.elem_order(a) == 2).collect();
        let act: Vec<Vec<usize>> = (0..8)
            .map(|g| {
                invols
                    .iter()
                    .map(|&x| invols.iter().position(|&y| y == d8.conj(g, x)).unwrap())
                    .collect()
            })
            .collect();
        let x = decompose_action(&d8, &act).unwrap();
        // the two orbits of size 2 have non-conjugate Klein stabilizers
        assert_eq!(x.num_terms(), 3);
        assert_eq!(x.coeff(&d8.whole()), BigInt::from(1));
        let klein_terms: BigInt = x
            .terms()
            .filter(|(h, _)| h.order() == 4)
            .map(|(_, c)| c.clone())
            .sum();
        assert_eq!(klein_terms, BigInt::from(2));
        assert!(decompose_action(&d8, &act[..4]).is_err());
    }

    #[test]
    fn kernel_ranks() {
        assert_eq!(kernel_k(&build_group("C8").unwrap()).rank(), 0);
        assert_eq!(kernel_k(&build_group("D8").unwrap()).rank(), 3);
        // Q8: six classes, five of them cyclic
        assert_eq!(kernel_k(&build_group("Q8").unwrap()).rank(), 1);
    }

    #[test]
    fn epsilon_in_k() {
        let e = build_group("E4").unwrap();
        let eps = epsilon(&e).unwrap();
        let v: Vec<i64> = eps
            .to_vector()
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(v, vec![1, -1, -1, -1, 2]);
        assert!(eps.cyclic_marks().iter().all(|x| x.is_zero()));
        assert!(kernel_k(&e).contains(&eps.to_vector()));
        assert!(epsilon(&build_group("C4").unwrap()).is_err());
    }
}
