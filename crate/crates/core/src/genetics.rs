//! Genetic subgroups, linkage and genetic bases.

use std::sync::Arc;

use crate::bisets::{defres, indinf, inf, one_point, twisted_diagonal, BisetMorphism};
use crate::error::{Error, Result};
use crate::groups::{local_data, section, Group, LocalData, Rank1Type, Subgroup};

#[derive(Clone, Debug)]
pub struct GeneticEntry {
    pub q: Subgroup,
    pub local: LocalData,
}

/// Representatives of the linkage classes of genetic subgroups.
#[derive(Clone, Debug)]
pub struct GeneticBasis {
    pub group: Arc<Group>,
    pub entries: Vec<GeneticEntry>,
    /// Number of entries with dihedral `N_P(Q)/Q`.
    pub d: usize,
}

fn genetic_with(p: &Group, ld: &LocalData) -> bool {
    if ld.quotient_type == Rank1Type::NotRank1 {
        return false;
    }
    (0..p.order()).all(|x| {
        let qx = p.conjugate(&ld.q, x);
        qx.intersection(&ld.zpq).is_subset(&ld.q) == (qx == ld.q)
    })
}

pub fn is_genetic(p: &Arc<Group>, q: &Subgroup) -> Result<bool> {
    Ok(genetic_with(p, &local_data(p, q)?))
}

fn half_link(p: &Group, q: &Subgroup, r: &LocalData) -> bool {
    (0..p.order()).any(|x| p.conjugate(q, x).intersection(&r.zpq).is_subset(&r.q))
}

fn linked_with(p: &Group, q: &LocalData, r: &LocalData) -> bool {
    half_link(p, &q.q, r) && half_link(p, &r.q, q)
}

fn genetic_local(p: &Arc<Group>, q: &Subgroup) -> Result<LocalData> {
    let ld = local_data(p, q)?;
    if genetic_with(p, &ld) {
        Ok(ld)
    } else {
        Err(Error::NotGenetic(format!("{q:?} in {}", p.name())))
    }
}

/// Whether two genetic subgroups are linked modulo `P`.
pub fn linked(p: &Arc<Group>, q: &Subgroup, r: &Subgroup) -> Result<bool> {
    let (lq, lr) = (genetic_local(p, q)?, genetic_local(p, r)?);
    Ok(linked_with(p, &lq, &lr))
}

/// Genetic subgroups of `P` up to conjugacy, in canonical class order.
pub fn genetic_classes(p: &Arc<Group>) -> Result<Vec<LocalData>> {
    let mut out = Vec::new();
    for c in p.lattice().classes() {
        let ld = local_data(p, &c.rep)?;
        if genetic_with(p, &ld) {
            out.push(ld);
        }
    }
    Ok(out)
}

/// Genetic classes grouped by linkage. Conjugate subgroups are linked, so
/// class representatives suffice.
pub fn linkage_classes(p: &Arc<Group>) -> Result<Vec<Vec<LocalData>>> {
    let mut groups: Vec<Vec<LocalData>> = Vec::new();
    for ld in genetic_classes(p)? {
        match groups.iter_mut().find(|g| linked_with(p, &g[0], &ld)) {
            Some(g) => g.push(ld),
            None => groups.push(vec![ld]),
        }
    }
    Ok(groups)
}

/// The genetic basis built from the minimal canonical representative of each
/// linkage class.
pub fn genetic_basis(p: &Arc<Group>) -> Result<GeneticBasis> {
    basis_choosing(p, |class| class[0].clone())
}

/// A genetic basis built from a chosen member of each linkage class.
pub fn basis_choosing(
    p: &Arc<Group>,
    mut choose: impl FnMut(&[LocalData]) -> LocalData,
) -> Result<GeneticBasis> {
    let mut entries: Vec<GeneticEntry> = linkage_classes(p)?
        .iter()
        .map(|class| {
            let local = choose(class);
            GeneticEntry {
                q: local.q.clone(),
                local,
            }
        })
        .collect();
    entries.sort_by(|a, b| a.q.cmp(&b.q));
    let d = entries
        .iter()
        .filter(|e| e.local.quotient_type == Rank1Type::Dihedral)
        .count();
    Ok(GeneticBasis {
        group: p.clone(),
        entries,
        d,
    })
}

/// The subgroup `Q^` of a genetic `Q`.
fn qhat(p: &Group, ld: &LocalData) -> Result<Subgroup> {
    ld.qhat
        .clone()
        .ok_or_else(|| Error::Internal(format!("no Q^ for a genetic subgroup of {}", p.name())))
}

/// `b_Q^P : P -> N_P(Q)/Q`, i.e. `Defres_{N/Q} - Inf_{N/Q^}^{N/Q} Defres_{N/Q^}`,
/// and `Def_{P/P}` when `Q = P`.
pub fn b_map(p: &Arc<Group>, q: &Subgroup) -> Result<BisetMorphism> {
    let ld = genetic_local(p, q)?;
    let sec = &ld.section;
    if q.order() == p.order() {
        return defres(p, sec);
    }
    let hat = qhat(p, &ld)?;
    let top = defres(p, sec)?;
    let hat_sec = section(p, &ld.n, &hat)?;
    let down = defres(p, &hat_sec)?;
    // N/Q^ = (N/Q)/(Q^/Q), transported onto the quotient built for `down`
    let z = sec.image(&hat);
    let zsec = section(&sec.quotient, &sec.quotient.whole(), &z)?;
    let up = inf(&sec.quotient, &z)?;
    let relabel: Vec<usize> = (0..hat_sec.quotient.order())
        .map(|c| zsec.proj[sec.proj[hat_sec.lift[c]]])
        .collect();
    let iso = crate::bisets::iso(&hat_sec.quotient, &zsec.quotient, &relabel)?;
    top.sub(&up.after(&iso.after(&down)?)?)
}

/// `Indinf_{N_P(Q)/Q}^P`, the `(P, N_P(Q)/Q)`-biset `P/Q`.
pub fn indinf_map(p: &Arc<Group>, q: &Subgroup) -> Result<BisetMorphism> {
    let ld = genetic_local(p, q)?;
    indinf(p, &ld.section)
}

/// `gamma_Q = (R x R)/Delta_{N,Q} - (R x R)/Delta_{N,Q^}`, and the one-point
/// biset when `Q = R`.
pub fn gamma(r: &Arc<Group>, q: &Subgroup) -> Result<BisetMorphism> {
    let ld = genetic_local(r, q)?;
    if q.order() == r.order() {
        return one_point(r, r);
    }
    let hat = qhat(r, &ld)?;
    let a = BisetMorphism::transitive(r, r, &twisted_diagonal(r, &ld.n, q)?)?;
    let b = BisetMorphism::transitive(r, r, &twisted_diagonal(r, &ld.n, &hat)?)?;
    a.sub(&b)
}
