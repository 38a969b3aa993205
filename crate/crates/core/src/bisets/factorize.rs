use std::sync::Arc;

use super::elementary::{def, ind, inf, iso, res};
use super::morphism::{projections, BisetMorphism};
use crate::error::Result;
use crate::groups::{section, unpair, Group, Section, Subgroup};

/// Data of the factorization of `(H x G)/L` as
/// `Ind o Inf o Iso o Def o Res`.
pub struct FactorizationData {
    pub l: Subgroup,
    pub p1: Subgroup,
    pub p2: Subgroup,
    pub k1: Subgroup,
    pub k2: Subgroup,
    /// `p1(L)/k1(L)` as a section of `H`.
    pub top: Arc<Section>,
    /// `p2(L)/k2(L)` as a section of `G`.
    pub bottom: Arc<Section>,
    /// `phi(g k2) = h k1` for `(h, g)` in `L`, on quotient elements.
    pub phi: Vec<usize>,
}

pub fn factorize(h: &Arc<Group>, g: &Arc<Group>, l: &Subgroup) -> Result<FactorizationData> {
    let pr = projections(h, g, l);
    let top = section(h, &pr.p1, &pr.k1)?;
    let bottom = section(g, &pr.p2, &pr.k2)?;
    let mut phi = vec![usize::MAX; bottom.quotient.order()];
    for z in l.iter() {
        let (a, b) = unpair(z, g.order());
        phi[bottom.proj[b]] = top.proj[a];
    }
    Ok(FactorizationData {
        l: l.clone(),
        p1: pr.p1,
        p2: pr.p2,
        k1: pr.k1,
        k2: pr.k2,
        top,
        bottom,
        phi,
    })
}

impl FactorizationData {
    /// The five factors, in order of application: `Res, Def, Iso, Inf, Ind`.
    pub fn factors(&self, h: &Arc<Group>, g: &Arc<Group>) -> Result<Vec<BisetMorphism>> {
        let p2 = section(g, &self.p2, &g.trivial_subgroup())?;
        let p1 = section(h, &self.p1, &h.trivial_subgroup())?;
        let k2 = p2.image(&self.k2);
        let k1 = p1.image(&self.k1);
        let d = def(&p2.quotient, &k2)?;
        let i = inf(&p1.quotient, &k1)?;
        // the quotients built by def/inf are sections of the subgroup groups;
        // transport phi onto them
        let dq = d.target.clone();
        let iq = i.source.clone();
        let dsec = section(&p2.quotient, &p2.quotient.whole(), &k2)?;
        let isec = section(&p1.quotient, &p1.quotient.whole(), &k1)?;
        let phi: Vec<usize> = (0..dq.order())
            .map(|c| {
                let x = p2.lift[dsec.lift[c]];
                let y = self.phi[self.bottom.proj[x]];
                isec.proj[p1.proj[self.top.lift[y]]]
            })
            .collect();
        Ok(vec![
            res(g, &self.p2)?,
            d,
            iso(&dq, &iq, &phi)?,
            i,
            ind(h, &self.p1)?,
        ])
    }

    /// Composes the five factors.
    pub fn recompose(&self, h: &Arc<Group>, g: &Arc<Group>) -> Result<BisetMorphism> {
        let mut fs = self.factors(h, g)?.into_iter();
        let mut acc = fs.next().expect("five factors");
        for f in fs {
            acc = f.after(&acc)?;
        }
        Ok(acc)
    }
}
