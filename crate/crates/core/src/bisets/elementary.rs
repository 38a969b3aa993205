use std::sync::Arc;

use super::morphism::{hom_group, BisetMorphism};
use crate::error::{Error, Result};
use crate::groups::{is_homomorphism, pair, section, Group, Section, Subgroup};

/// The class of `Delta(G)`.
pub fn identity(g: &Arc<Group>) -> Result<BisetMorphism> {
    BisetMorphism::from_pairs(g, g, g.generators().iter().map(|&x| (x, x)))
}

/// `Indinf_{T/S}^G`: the `(G, T/S)`-biset `G/S`.
pub fn indinf(g: &Arc<Group>, sec: &Section) -> Result<BisetMorphism> {
    let q = &sec.quotient;
    let hg = hom_group(q, g)?;
    let l = Subgroup::from_elements(
        hg.order(),
        sec.t.iter().map(|t| pair(t, sec.proj[t], q.order())),
    );
    BisetMorphism::transitive(q, g, &l)
}

/// `Defres_{T/S}^G`: the `(T/S, G)`-biset `S\G`.
pub fn defres(g: &Arc<Group>, sec: &Section) -> Result<BisetMorphism> {
    let q = &sec.quotient;
    let hg = hom_group(g, q)?;
    let l = Subgroup::from_elements(
        hg.order(),
        sec.t.iter().map(|t| pair(sec.proj[t], t, g.order())),
    );
    BisetMorphism::transitive(g, q, &l)
}

/// `Ind_T^G`, with `T` realized as the section `T/1`.
pub fn ind(g: &Arc<Group>, t: &Subgroup) -> Result<BisetMorphism> {
    indinf(g, &*section(g, t, &g.trivial_subgroup())?)
}

pub fn res(g: &Arc<Group>, t: &Subgroup) -> Result<BisetMorphism> {
    defres(g, &*section(g, t, &g.trivial_subgroup())?)
}

pub fn inf(g: &Arc<Group>, n: &Subgroup) -> Result<BisetMorphism> {
    indinf(g, &*section(g, &g.whole(), n)?)
}

pub fn def(g: &Arc<Group>, n: &Subgroup) -> Result<BisetMorphism> {
    defres(g, &*section(g, &g.whole(), n)?)
}

/// `Iso(phi)` for an isomorphism `phi: G -> H` given on all elements.
pub fn iso(g: &Arc<Group>, h: &Arc<Group>, phi: &[usize]) -> Result<BisetMorphism> {
    let bijective = {
        let mut seen = vec![false; h.order()];
        phi.len() == g.order()
            && phi
                .iter()
                .all(|&y| y < h.order() && !std::mem::replace(&mut seen[y], true))
    };
    if g.order() != h.order() || !bijective || !is_homomorphism(g, h, phi) {
        return Err(Error::InvalidArgument(format!(
            "map {} -> {} is not an isomorphism",
            g.name(),
            h.name()
        )));
    }
    BisetMorphism::from_pairs(g, h, g.generators().iter().map(|&x| (phi[x], x)))
}

/// The one-point `(H, G)`-biset.
pub fn one_point(g: &Arc<Group>, h: &Arc<Group>) -> Result<BisetMorphism> {
    let hg = hom_group(g, h)?;
    BisetMorphism::transitive(g, h, &hg.whole())
}

/// `Delta_{B,A} = {(u, v) in B x B : u v^-1 in A}` inside `G x G`.
pub fn twisted_diagonal(g: &Arc<Group>, b: &Subgroup, a: &Subgroup) -> Result<Subgroup> {
    if !a.is_subset(b) || !g.normalizes(b, a) {
        return Err(Error::NotNormal(format!("{a:?} in {b:?} of {}", g.name())));
    }
    let n = g.order();
    let mut s = Subgroup::empty(n * n);
    for u in b.iter() {
        for x in a.iter() {
            // v = x^-1 u
            s.insert(pair(u, g.mul(g.inv(x), u), n));
        }
    }
    Ok(s)
}

/// `Inf_{G/N}^G o Def_{G/N}^G`, i.e. `(G x G)/Delta_{G,N}`.
pub fn inf_def(g: &Arc<Group>, n: &Subgroup) -> Result<BisetMorphism> {
    let d = twisted_diagonal(g, &g.whole(), n)?;
    if !g.is_normal(n) {
        return Err(Error::NotNormal(format!("{n:?} in {}", g.name())));
    }
    BisetMorphism::transitive(g, g, &d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisets::{compose, Method};
    use crate::groups::build_group;

    #[test]
    fn res_then_ind_on_c4() {
        let c4 = build_group("C4").unwrap();
        let c2 = c4.generated(&[c4.pow(c4.generators()[0], 2)]);
        let r = res(&c4, &c2).unwrap();
        let i = ind(&c4, &c2).unwrap();
        let ir = compose(&i, &r, Method::Both).unwrap();
        let pt = crate::burnside::BurnsideElement::transitive(&c4, &c4.whole());
        let img = ir.apply(&pt).unwrap();
        assert_eq!(img, crate::burnside::BurnsideElement::transitive(&c4, &c2));
        // Ind o Res through C2 is (C4 x C4)/Delta(C2)
        let diag = BisetMorphism::from_pairs(&c4, &c4, c2.iter().map(|x| (x, x))).unwrap();
        assert_eq!(ir, diag);
    }

    #[test]
    fn inf_def_matches_composite() {
        let d8 = build_group("D8").unwrap();
        for n in d8.normal_subgroups() {
            let a = compose(&inf(&d8, &n).unwrap(), &def(&d8, &n).unwrap(), Method::Both).unwrap();
            assert_eq!(a, inf_def(&d8, &n).unwrap());
        }
        assert_eq!(
            inf_def(&d8, &d8.trivial_subgroup()).unwrap(),
            identity(&d8).unwrap()
        );
    }

    #[test]
    fn twisted_diagonal_trivial_kernel_is_diagonal() {
        let g = build_group("Q8").unwrap();
        let d = twisted_diagonal(&g, &g.whole(), &g.trivial_subgroup()).unwrap();
        let diag = Subgroup::from_elements(64, (0..8).map(|x| pair(x, x, 8)));
        assert_eq!(d, diag);
    }
}
