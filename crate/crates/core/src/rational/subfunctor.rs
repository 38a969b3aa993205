use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use super::delta::delta_context;
use crate::bisets::{defres, hom_group, BisetMorphism};
use crate::burnside::{epsilon, BurnsideElement};
use crate::error::{Error, Result};
use crate::groups::{all_isomorphisms, build_group, section, Group};
use crate::zlin::Lattice;

/// Nonzero `Defres_{B/A} g` over sections `(B, A)` of `G0`, `B` up to conjugacy.
fn section_images(g0: &Arc<Group>, gen: &BurnsideElement) -> Result<Vec<BurnsideElement>> {
    let all = g0.lattice().all_subgroups();
    let mut out = Vec::new();
    for c in g0.lattice().classes() {
        for a in all
            .iter()
            .filter(|a| a.is_subset(&c.rep) && g0.normalizes(&c.rep, a))
        {
            let sec = section(g0, &c.rep, a)?;
            let d = defres(g0, &sec)?.apply(gen)?;
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    Ok(out)
}

/// Span of `phi(gen)` over transitive `phi: G0 -> P`, through the factorized
/// spanning set `Indinf_{T/S}^P Iso Defres_{B/A}^{G0}`.
pub fn subfunctor_eval(g0: &Arc<Group>, gen: &BurnsideElement, p: &Arc<Group>) -> Result<Lattice> {
    if !gen.group.same_as(g0) {
        return Err(Error::GroupMismatch(format!(
            "generator is not in B({})",
            g0.name()
        )));
    }
    let images = section_images(g0, gen)?;
    let lat = p.lattice();
    let all = lat.all_subgroups();
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    for t in lat.classes() {
        for s in all
            .iter()
            .filter(|s| s.is_subset(&t.rep) && p.normalizes(&t.rep, s))
        {
            let quotient_order = t.rep.order() / s.order();
            if !images.iter().any(|d| d.group.order() == quotient_order) {
                continue;
            }
            let sec = section(p, &t.rep, s)?;
            for d in images.iter().filter(|d| d.group.order() == quotient_order) {
                for psi in all_isomorphisms(&d.group, &sec.quotient) {
                    let moved = d.transport(&sec.quotient, &psi);
                    let mut v = vec![BigInt::from(0); lat.len()];
                    for (h, c) in moved.terms() {
                        let pre = sec.preimage(p.order(), h);
                        v[lat.class_of(&p.canonical(&pre)).expect("class")] += c;
                    }
                    seen.insert(v);
                }
            }
        }
    }
    let mut l = Lattice::zero(lat.len());
    for v in seen {
        l.insert(v);
    }
    Ok(l)
}

/// The same span by enumerating every transitive `(P, G0)`-biset.
pub fn subfunctor_eval_full(
    g0: &Arc<Group>,
    gen: &BurnsideElement,
    p: &Arc<Group>,
) -> Result<Lattice> {
    if !gen.group.same_as(g0) {
        return Err(Error::GroupMismatch(format!(
            "generator is not in B({})",
            g0.name()
        )));
    }
    let hg = hom_group(g0, p)?;
    let mut l = Lattice::zero(p.lattice().len());
    for c in hg.classes() {
        let img = BisetMorphism::transitive(g0, p, &c.rep)?.apply(gen)?;
        l.insert(img.to_vector());
    }
    Ok(l)
}

type LatticeCache = Mutex<HashMap<(u32, u64), Arc<Lattice>>>;

fn delta_cache() -> &'static LatticeCache {
    static CACHE: OnceLock<LatticeCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `B_delta(P)` for the prime of `P`.
pub fn b_delta(p: &Arc<Group>) -> Result<Arc<Lattice>> {
    b_delta_at(p.prime().max(2), p)
}

/// `B_delta(P)` for the `delta` of the prime `prime`.
pub fn b_delta_at(prime: u32, p: &Arc<Group>) -> Result<Arc<Lattice>> {
    if !p.is_trivial() && p.prime() != prime {
        return Err(Error::InvalidArgument(format!(
            "{} is not a {prime}-group",
            p.name()
        )));
    }
    let key = (prime, p.id());
    if let Some(l) = delta_cache().lock().expect("delta cache").get(&key) {
        return Ok(l.clone());
    }
    let ctx = delta_context(prime)?;
    let l = Arc::new(subfunctor_eval(&ctx.x, &ctx.delta, p)?);
    log::debug!("B_delta({}) has rank {}", p.name(), l.rank());
    delta_cache()
        .lock()
        .expect("delta cache")
        .insert(key, l.clone());
    Ok(l)
}

/// `B_epsilon(P)` for the prime of `P`.
pub fn b_epsilon(p: &Arc<Group>) -> Result<Lattice> {
    let prime = p.prime().max(2);
    let e = build_group(&format!("E{prime}_2"))?;
    subfunctor_eval(&e, &epsilon(&e)?, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::kernel_k;

    #[test]
    fn b_delta_of_c4_is_zero() {
        let c4 = build_group("C4").unwrap();
        assert_eq!(b_delta(&c4).unwrap().rank(), 0);
        let ctx = delta_context(2).unwrap();
        assert_eq!(
            subfunctor_eval_full(&ctx.x, &ctx.delta, &c4)
                .unwrap()
                .rank(),
            0
        );
    }

    #[test]
    fn fast_path_matches_full_enumeration() {
        let ctx = delta_context(2).unwrap();
        for name in ["1", "C2", "E4", "D8", "Q8", "C4xC2", "E8"] {
            let p = build_group(name).unwrap();
            let fast = subfunctor_eval(&ctx.x, &ctx.delta, &p).unwrap();
            let full = subfunctor_eval_full(&ctx.x, &ctx.delta, &p).unwrap();
            assert_eq!(fast, full, "{name}");
        }
    }

    #[test]
    fn epsilon_lattice_sits_inside_delta_lattice() {
        for name in ["E4", "D8", "C4xC2", "E8"] {
            let p = build_group(name).unwrap();
            assert!(
                b_epsilon(&p).unwrap().is_subset(&b_delta(&p).unwrap()),
                "{name}"
            );
        }
    }

    #[test]
    fn odd_prime_kernel_is_generated_by_delta() {
        let x3 = build_group("X3").unwrap();
        assert_eq!(*b_delta(&x3).unwrap(), kernel_k(&x3));
        let c9 = build_group("C9").unwrap();
        assert_eq!(b_delta(&c9).unwrap().rank(), 0);
    }
}
