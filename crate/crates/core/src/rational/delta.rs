use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::bisets::ind;
use crate::burnside::{epsilon, BurnsideElement};
use crate::error::{Error, Result};
use crate::groups::{build_group, is_isomorphic, section, Group, Subgroup};

/// `X` with two non-conjugate noncentral subgroups `I`, `J` of order `p`
/// and `delta = (X/I - X/IZ) - (X/J - X/JZ)`.
#[derive(Clone, Debug)]
pub struct DeltaContext {
    pub p: u32,
    pub x: Arc<Group>,
    pub i: Subgroup,
    pub j: Subgroup,
    pub z: Subgroup,
    pub iz: Subgroup,
    pub jz: Subgroup,
    pub delta: BurnsideElement,
}

/// Noncentral subgroups of order `k`, one per conjugacy class.
pub fn noncentral_classes(g: &Group, k: usize) -> Vec<Subgroup> {
    let z = g.center();
    g.classes()
        .into_iter()
        .filter(|c| c.rep.order() == k && !c.rep.is_subset(&z))
        .map(|c| c.rep)
        .collect()
}

/// `(G/A - G/AZ) - (G/B - G/BZ)`.
pub fn delta_element(g: &Arc<Group>, a: &Subgroup, b: &Subgroup, z: &Subgroup) -> BurnsideElement {
    let one = BigInt::one();
    let mut d = BurnsideElement::zero(g);
    d.add_term(a, one.clone());
    d.add_term(&g.product_set(a, z), -one.clone());
    d.add_term(b, -one.clone());
    d.add_term(&g.product_set(b, z), one);
    d
}

pub fn delta_context(p: u32) -> Result<DeltaContext> {
    let x = build_group(&format!("X{p}"))?;
    let z = x.center();
    let cands = noncentral_classes(&x, p as usize);
    let (i, j) = match cands.as_slice() {
        [i, j, ..] => (i.clone(), j.clone()),
        _ => {
            return Err(Error::Internal(format!(
                "{} has fewer than two noncentral classes of order {p}",
                x.name()
            )))
        }
    };
    let (iz, jz) = (x.product_set(&i, &z), x.product_set(&j, &z));
    let delta = delta_element(&x, &i, &j, &z);
    Ok(DeltaContext {
        p,
        x,
        i,
        j,
        z,
        iz,
        jz,
        delta,
    })
}

/// Whether `r` is dihedral of order at least 8.
pub fn is_dihedral(r: &Group) -> bool {
    let n = r.order();
    n >= 8
        && r.prime() == 2
        && build_group(&format!("D{n}")).is_ok_and(|d| is_isomorphic(r, &d).is_some())
}

/// `delta_R = (R/W - R/WZ) - (R/W' - R/W'Z)` for `R` dihedral, with `W`,
/// `W'` the two classes of noncentral reflections.
pub fn delta_r(r: &Arc<Group>) -> Result<BurnsideElement> {
    if !is_dihedral(r) {
        return Err(Error::InvalidArgument(format!(
            "{} is not dihedral",
            r.name()
        )));
    }
    let w = noncentral_classes(r, 2);
    if w.len() != 2 {
        return Err(Error::Internal(format!(
            "{} has {} reflection classes",
            r.name(),
            w.len()
        )));
    }
    Ok(delta_element(r, &w[0], &w[1], &r.center()))
}

/// `Ind_E^G eps_E` for a subgroup `E` elementary abelian of rank 2.
pub fn induced_epsilon(g: &Arc<Group>, e: &Subgroup) -> Result<BurnsideElement> {
    let sec = section(g, e, &g.trivial_subgroup())?;
    let eps = epsilon(&sec.quotient)?;
    ind(g, e)?.apply(&eps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_invariants() {
        for p in [2, 3] {
            let c = delta_context(p).unwrap();
            assert!(!c.x.are_conjugate(&c.i, &c.j));
            assert!(c.i.intersection(&c.z).is_trivial());
            assert_eq!(c.delta.num_terms(), 4);
            assert_eq!(c.delta.cardinality(), BigInt::from(0));
            assert!(c.delta.cyclic_marks().iter().all(|m| *m == BigInt::from(0)));
            let coeffs: Vec<BigInt> = [&c.i, &c.iz, &c.j, &c.jz]
                .iter()
                .map(|h| c.delta.coeff(h))
                .collect();
            assert_eq!(coeffs, [1, -1, -1, 1].map(BigInt::from).to_vec());
        }
    }

    #[test]
    fn delta_of_d8_matches_up_to_labels() {
        let c = delta_context(2).unwrap();
        let d = delta_r(&c.x).unwrap();
        assert!(d == c.delta || d == c.delta.scale(&BigInt::from(-1)));
        assert!(delta_r(&build_group("SD16").unwrap()).is_err());
        let d16 = build_group("D16").unwrap();
        assert!(delta_r(&d16)
            .unwrap()
            .cyclic_marks()
            .iter()
            .all(|m| *m == BigInt::from(0)));
    }

    #[test]
    fn epsilon_is_a_restriction_of_delta() {
        let c = delta_context(2).unwrap();
        let sec = section(&c.x, &c.jz, &c.x.trivial_subgroup()).unwrap();
        let r = crate::bisets::defres(&c.x, &sec)
            .unwrap()
            .apply(&c.delta)
            .unwrap();
        assert_eq!(r, epsilon(&sec.quotient).unwrap());
    }
}
