use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{build_group, is_isomorphic, section, Group, Section, Subgroup};
use crate::error::{Error, Result};

/// Isomorphism type of a group of normal p-rank 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rank1Type {
    Cyclic,
    Quaternion,
    Dihedral,
    Semidihedral,
    NotRank1,
}

/// Cyclic, generalized quaternion (order >= 8), dihedral or semidihedral
/// (order >= 16), or `NotRank1`.
pub fn classify_rank1(g: &Group) -> Rank1Type {
    if g.is_cyclic() {
        return Rank1Type::Cyclic;
    }
    let n = g.order();
    if g.prime() != 2 || n < 8 {
        return Rank1Type::NotRank1;
    }
    let matches = |name: String| build_group(&name).is_ok_and(|t| is_isomorphic(g, &t).is_some());
    if matches(format!("Q{n}")) {
        return Rank1Type::Quaternion;
    }
    if n >= 16 {
        if matches(format!("D{n}")) {
            return Rank1Type::Dihedral;
        }
        if matches(format!("SD{n}")) {
            return Rank1Type::Semidihedral;
        }
    }
    Rank1Type::NotRank1
}

#[derive(Clone)]
pub struct LocalData {
    pub q: Subgroup,
    /// `N_P(Q)`
    pub n: Subgroup,
    /// `C_P(Q)`
    pub c: Subgroup,
    /// `Z_P(Q)`, with `Z_P(Q)/Q = Z(N_P(Q)/Q)`.
    pub zpq: Subgroup,
    /// `Q^`, with `Q^/Q = Omega_1 Z(N_P(Q)/Q)`; only when that group is cyclic.
    pub qhat: Option<Subgroup>,
    pub quotient_type: Rank1Type,
    /// The section `N_P(Q)/Q`.
    pub section: Arc<Section>,
}

impl std::fmt::Debug for LocalData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LocalData")
            .field("q", &self.q)
            .field("n", &self.n)
            .field("zpq", &self.zpq)
            .field("qhat", &self.qhat)
            .field("quotient_type", &self.quotient_type)
            .finish()
    }
}

pub fn local_data(p: &Arc<Group>, q: &Subgroup) -> Result<LocalData> {
    if !p.is_subgroup(q) {
        return Err(Error::InvalidArgument(format!(
            "{q:?} is not a subgroup of {}",
            p.name()
        )));
    }
    let n = p.normalizer(q);
    let c = p.centralizer(q);
    let ngens = p.small_generating_set(&n);
    let comm = |a: usize, b: usize| p.mul(p.mul(a, b), p.inv(p.mul(b, a)));
    let zpq = Subgroup::from_elements(
        p.order(),
        n.iter()
            .filter(|&x| ngens.iter().all(|&y| q.contains(comm(x, y)))),
    );
    let prime = p.prime().max(2) as usize;
    let omega = Subgroup::from_elements(
        p.order(),
        zpq.iter().filter(|&x| q.contains(p.pow(x, prime))),
    );
    let qhat = (omega.order() <= q.order() * prime).then_some(omega);
    let sec = section(p, &n, q)?;
    Ok(LocalData {
        quotient_type: classify_rank1(&sec.quotient),
        q: q.clone(),
        n,
        c,
        zpq,
        qhat,
        section: sec,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        let t = |s: &str| classify_rank1(&build_group(s).unwrap());
        assert_eq!(t("C9"), Rank1Type::Cyclic);
        assert_eq!(t("1"), Rank1Type::Cyclic);
        assert_eq!(t("D8"), Rank1Type::NotRank1);
        assert_eq!(t("E4"), Rank1Type::NotRank1);
        assert_eq!(t("Q8"), Rank1Type::Quaternion);
        assert_eq!(t("SD16"), Rank1Type::Semidihedral);
        assert_eq!(t("D16"), Rank1Type::Dihedral);
        assert_eq!(t("M16"), Rank1Type::NotRank1);
        assert_eq!(t("X3"), Rank1Type::NotRank1);
    }

    #[test]
    fn local_data_examples() {
        let c4 = build_group("C4").unwrap();
        let ld = local_data(&c4, &c4.trivial_subgroup()).unwrap();
        assert_eq!(ld.n.order(), 4);
        assert_eq!(ld.zpq.order(), 4);
        assert_eq!(ld.qhat.as_ref().unwrap().order(), 2);

        let d16 = build_group("D16").unwrap();
        let ld = local_data(&d16, &d16.trivial_subgroup()).unwrap();
        assert_eq!(ld.qhat.unwrap(), d16.center());
        assert_eq!(ld.quotient_type, Rank1Type::Dihedral);

        let e4 = build_group("E4").unwrap();
        assert!(local_data(&e4, &e4.trivial_subgroup())
            .unwrap()
            .qhat
            .is_none());

        let x3 = build_group("X3").unwrap();
        let z = x3.center();
        let i = x3
            .classes()
            .into_iter()
            .find(|c| c.rep.order() == 3 && c.rep != z)
            .unwrap()
            .rep;
        let iz = x3.product_set(&i, &z);
        let ld = local_data(&x3, &i).unwrap();
        assert_eq!(ld.n, iz);
        assert_eq!(ld.zpq, iz);
        assert_eq!(ld.qhat.unwrap(), iz);
    }
}
