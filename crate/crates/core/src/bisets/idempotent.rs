use std::sync::Arc;

use num_bigint::BigInt;

use super::elementary::inf_def;
use super::morphism::BisetMorphism;
use crate::error::{Error, Result};
use crate::groups::{Group, Subgroup};
use crate::zlin::FinitePoset;

/// `f_N^G = sum_{N <= M normal} mu(N, M) Inf_{G/M}^G Def_{G/M}^G`, with `mu`
/// the Moebius function of the poset of normal subgroups.
pub fn faithful_idempotent(g: &Arc<Group>, n: &Subgroup) -> Result<BisetMorphism> {
    if !g.is_subgroup(n) || !g.is_normal(n) {
        return Err(Error::NotNormal(format!("{n:?} in {}", g.name())));
    }
    let normals = g.normal_subgroups();
    let poset = FinitePoset::from_fn(normals.len(), |a, b| normals[a].is_subset(&normals[b]))?;
    let i = normals
        .iter()
        .position(|m| m == n)
        .expect("listed normal subgroup");
    let mu = poset.mobius_from(i);
    let mut f = BisetMorphism::zero(g, g)?;
    for (m, c) in normals.iter().zip(mu) {
        if c != 0 {
            f = f.add(&inf_def(g, m)?.scale(&BigInt::from(c)))?;
        }
    }
    Ok(f)
}

/// `f_1^P` from the subgroups of `Omega_1 Z(P)` only.
pub fn faithful_idempotent_center(g: &Arc<Group>) -> Result<BisetMorphism> {
    let z = g.center();
    let omega = g.omega1(&z);
    let subs: Vec<Subgroup> = g
        .lattice()
        .classes()
        .iter()
        .filter(|c| c.rep.is_subset(&omega))
        .map(|c| c.rep.clone())
        .collect();
    let poset = FinitePoset::from_fn(subs.len(), |a, b| subs[a].is_subset(&subs[b]))?;
    let mu = poset.mobius_from(0);
    let mut f = BisetMorphism::zero(g, g)?;
    for (m, c) in subs.iter().zip(mu) {
        if c != 0 {
            f = f.add(&inf_def(g, m)?.scale(&BigInt::from(c)))?;
        }
    }
    Ok(f)
}
