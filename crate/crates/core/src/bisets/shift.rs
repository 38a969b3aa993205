use std::sync::Arc;

use super::morphism::BisetMorphism;
use crate::error::{Error, Result};
use crate::groups::{direct_product, pair, unpair, Group, Subgroup};

/// `pi_H(U) = U x H` as a `(K x H, G x H)`-biset: `L` becomes
/// `{((y, l), (x, l)) : (y, x) in L, l in H}`.
pub fn shift(u: &BisetMorphism, h: &Arc<Group>) -> Result<BisetMorphism> {
    let gh = direct_product(&u.source, h)?;
    let kh = direct_product(&u.target, h)?;
    let mut out = BisetMorphism::zero(&gh, &kh)?;
    let (ng, nh) = (u.source.order(), h.order());
    let ngh = gh.order();
    let total = kh.order() * ngh;
    for (l, c) in u.terms() {
        let mut s = Subgroup::empty(total);
        for z in l.iter() {
            let (y, x) = unpair(z, ng);
            for t in 0..nh {
                s.insert(pair(pair(y, t, nh), pair(x, t, nh), ngh));
            }
        }
        out.element.add_term(&s, c.clone());
    }
    Ok(out)
}

/// For `U` a `(Q, P x X)`-biset, the `(X x Q, P)`-biset `U~` on the same set
/// with `(x, q) . u . g = q u (g, x^-1)`.
pub fn tilde(u: &BisetMorphism, p: &Arc<Group>, x: &Arc<Group>) -> Result<BisetMorphism> {
    let px = direct_product(p, x)?;
    if !u.source.same_as(&px) {
        return Err(Error::GroupMismatch(format!(
            "source {} is not {} x {}",
            u.source.name(),
            p.name(),
            x.name()
        )));
    }
    let q = &u.target;
    let xq = direct_product(x, q)?;
    let mut out = BisetMorphism::zero(p, &xq)?;
    let (np, nx, nq) = (p.order(), x.order(), q.order());
    let total = xq.order() * np;
    for (l, c) in u.terms() {
        let s = Subgroup::from_elements(
            total,
            l.iter().map(|z| {
                let (qq, gx) = unpair(z, np * nx);
                let (g, xx) = unpair(gx, nx);
                pair(pair(xx, qq, nq), g, np)
            }),
        );
        out.element.add_term(&s, c.clone());
    }
    Ok(out)
}

/// Reads a `(Q, P x X)`-biset as a `(Q x P, X)`-biset; the stabilizers keep
/// their element indices.
pub fn regroup(u: &BisetMorphism, p: &Arc<Group>, x: &Arc<Group>) -> Result<BisetMorphism> {
    let px = direct_product(p, x)?;
    if !u.source.same_as(&px) {
        return Err(Error::GroupMismatch(format!(
            "source {} is not {} x {}",
            u.source.name(),
            p.name(),
            x.name()
        )));
    }
    let qp = direct_product(&u.target, p)?;
    let mut out = BisetMorphism::zero(x, &qp)?;
    for (l, c) in u.terms() {
        out.element.add_term(l, c.clone());
    }
    Ok(out)
}

/// An element of `B(Q x P)` read as a morphism `P -> Q`.
pub fn as_morphism(x: &BisetMorphism, q: &Arc<Group>, p: &Arc<Group>) -> Result<BisetMorphism> {
    let mut out = BisetMorphism::zero(p, q)?;
    if !out.element.group.same_as(&x.target) || !x.source.is_trivial() {
        return Err(Error::GroupMismatch(format!(
            "{} is not B({} x {})",
            x.target.name(),
            q.name(),
            p.name()
        )));
    }
    for (l, c) in x.terms() {
        out.element.add_term(l, c.clone());
    }
    Ok(out)
}
