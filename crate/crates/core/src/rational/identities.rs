use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::checks::faithful_kernel_lattice;
use super::delta::{
    delta_context, delta_element, delta_r, induced_epsilon, noncentral_classes, DeltaContext,
};
use super::functor::ComputableFunctor;
use super::subfunctor::b_delta;
use crate::bisets::{compose, hom_group, twisted_diagonal, BisetMorphism, Method};
use crate::burnside::{decompose_action, BurnsideElement};
use crate::error::{Error, Result};
use crate::genetics::{gamma, genetic_basis};
use crate::groups::{
    build_group, direct_product, pair, projective_plane_data, quotient, Group, Subgroup,
};
use crate::zlin::Lattice;

#[derive(Clone, Debug, Serialize)]
pub struct MackeyLine {
    pub left: String,
    pub expected: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaNulReport {
    pub p: u32,
    /// `delta^op o gamma_Y = 0`, one entry per genetic basis element of `X`.
    pub gamma_products_vanish: Vec<bool>,
    pub mackey: Vec<MackeyLine>,
    pub passed: bool,
}

/// `delta^op o gamma_Y = 0` on the genetic basis of `X`, and the four products
/// `T\X x_X (X x X)/Delta_{IZ,I}` for `T = I, IZ, J, JZ`.
pub fn delta_nul_check(p: u32) -> Result<DeltaNulReport> {
    let ctx = delta_context(p)?;
    let x = &ctx.x;
    let one = Group::trivial();
    let dop = BisetMorphism::from_burnside(&ctx.delta).opposite()?;
    let mut gamma_products_vanish = Vec::new();
    for e in genetic_basis(x)?.entries {
        gamma_products_vanish.push(compose(&dop, &gamma(x, &e.q)?, Method::Both)?.is_zero());
    }
    let diag = BisetMorphism::transitive(x, x, &twisted_diagonal(x, &ctx.iz, &ctx.i)?)?;
    let orbit = |t: &Subgroup| BisetMorphism::transitive(x, &one, t);
    let combo = |parts: &[(&Subgroup, i64)]| -> Result<BisetMorphism> {
        let mut m = BisetMorphism::zero(x, &one)?;
        for (t, c) in parts {
            m = m.add(&orbit(t)?.scale(&BigInt::from(*c)))?;
        }
        Ok(m)
    };
    let q = p as i64;
    let cases: [(&str, &Subgroup, Vec<(&Subgroup, i64)>, String); 4] = [
        (
            "I\\X",
            &ctx.i,
            vec![(&ctx.i, 1), (&ctx.iz, q - 1)],
            format!("I\\X + {} IZ\\X", q - 1),
        ),
        ("IZ\\X", &ctx.iz, vec![(&ctx.iz, q)], format!("{q} IZ\\X")),
        ("J\\X", &ctx.j, vec![(&ctx.i, 1)], "I\\X".into()),
        ("JZ\\X", &ctx.jz, vec![(&ctx.iz, 1)], "IZ\\X".into()),
    ];
    let mut mackey = Vec::new();
    for (name, t, rhs, text) in cases {
        let lhs = compose(&orbit(t)?, &diag, Method::Both)?;
        mackey.push(MackeyLine {
            left: format!("{name} x (X x X)/Delta"),
            expected: text,
            holds: lhs == combo(&rhs)?,
        });
    }
    let passed = gamma_products_vanish.iter().all(|&b| b) && mackey.iter().all(|m| m.holds);
    Ok(DeltaNulReport {
        p,
        gamma_products_vanish,
        mackey,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GeometricReport {
    pub p: u32,
    pub points: usize,
    pub lines: usize,
    pub fixed_points: usize,
    pub fixed_lines: usize,
    /// Orbit patterns `S/S + S/AZ + S/B` on points and `S/S + S/BZ + S/A` on
    /// lines for non-conjugate noncentral `A`, `B` of order `p`.
    pub patterns_found: bool,
    /// `P - L` equals `(S/A' - S/A'Z) - (S/B' - S/B'Z)` for some labeling.
    pub difference_is_delta: bool,
    /// For the pattern labels, `P - L` is `delta` with `I = B`, `J = A`.
    pub difference_for_pattern: bool,
    pub passed: bool,
}

fn fixed_count(act: &[Vec<usize>]) -> usize {
    (0..act[0].len())
        .filter(|&x| act.iter().all(|g| g[x] == x))
        .count()
}

pub fn geometric_check(p: u32) -> Result<GeometricReport> {
    let plane = projective_plane_data(p as usize)?;
    let s = &plane.s;
    let pts = decompose_action(s, &plane.points)?;
    let lns = decompose_action(s, &plane.lines)?;
    let z = s.center();
    let cands = noncentral_classes(s, p as usize);
    let one = BigInt::one();
    let pattern = |a: &Subgroup, b: &Subgroup| {
        let mut x = BurnsideElement::transitive(s, &s.whole());
        x.add_term(&s.product_set(a, &z), one.clone());
        x.add_term(b, one.clone());
        x
    };
    let diff = pts.sub(&lns);
    let mut patterns_found = false;
    let mut difference_for_pattern = true;
    let mut difference_is_delta = false;
    for a in &cands {
        for b in &cands {
            if s.are_conjugate(a, b) {
                continue;
            }
            if diff == delta_element(s, a, b, &z) {
                difference_is_delta = true;
            }
            if pts == pattern(a, b) && lns == pattern(b, a) {
                patterns_found = true;
                difference_for_pattern &= diff == delta_element(s, b, a, &z);
            }
        }
    }
    let (np, nl) = (plane.points[0].len(), plane.lines[0].len());
    let (fp, fl) = (fixed_count(&plane.points), fixed_count(&plane.lines));
    let q = p as usize;
    let passed = np == q * q + q + 1
        && nl == np
        && fp == 1
        && fl == 1
        && patterns_found
        && difference_for_pattern
        && difference_is_delta;
    Ok(GeometricReport {
        p,
        points: np,
        lines: nl,
        fixed_points: fp,
        fixed_lines: fl,
        patterns_found,
        difference_is_delta,
        difference_for_pattern: patterns_found && difference_for_pattern,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct YIdentityReport {
    pub p: u32,
    /// `composition` (tables for `X^3`) or `enumeration` (orbits on pairs).
    pub method: String,
    pub y_order: usize,
    pub expected_order: usize,
    pub y_is_subgroup: bool,
    /// `(class index, coefficient)` terms of `(X^3/Y) o (delta x delta)`.
    pub composite: Vec<(usize, String)>,
    pub equals_delta: bool,
    pub equals_minus_delta: bool,
    /// The same composite with `I` and `J` exchanged in `Y` (not in `delta`).
    pub swapped_equals_delta: bool,
    pub passed: bool,
}

/// External product `a x b` in `B(G x H)`.
pub fn external_product(a: &BurnsideElement, b: &BurnsideElement) -> Result<BurnsideElement> {
    let gh = direct_product(&a.group, &b.group)?;
    let nb = b.group.order();
    let mut out = BurnsideElement::zero(&gh);
    for (s, c) in a.terms() {
        for (t, d) in b.terms() {
            let st = Subgroup::from_elements(
                gh.order(),
                s.iter().flat_map(|x| t.iter().map(move |y| pair(x, y, nb))),
            );
            out.add_term(&st, c * d);
        }
    }
    Ok(out)
}

/// `{(x y^-1 phi(x), x, y) : x y^-1 in AZ}` with `phi: X -> B` onto, kernel `AZ`;
/// `(A, B) = (I, J)`, or `(J, I)` when `swap`.
fn y_triples(ctx: &DeltaContext, swap: bool) -> Result<Vec<[usize; 3]>> {
    let x = &ctx.x;
    let n = x.order();
    let (az, b) = if swap {
        (&ctx.jz, &ctx.i)
    } else {
        (&ctx.iz, &ctx.j)
    };
    let sec = quotient(x, az)?;
    let g = (0..n).find(|&a| !az.contains(a)).expect("AZ is proper");
    let h = (0..n)
        .find(|&a| a != 0 && b.contains(a))
        .expect("B is nontrivial");
    let mut phi = vec![usize::MAX; n];
    let (mut gk, mut hk) = (0, 0);
    for _ in 0..ctx.p {
        for y in 0..n {
            if sec.proj[y] == sec.proj[gk] {
                phi[y] = hk;
            }
        }
        gk = x.mul(gk, g);
        hk = x.mul(hk, h);
    }
    let mut out = Vec::new();
    for a in 0..n {
        for c in 0..n {
            let ac = x.mul(a, x.inv(c));
            if az.contains(ac) {
                out.push([x.mul(ac, phi[a]), a, c]);
            }
        }
    }
    Ok(out)
}

fn is_closed(x: &Group, triples: &[[usize; 3]]) -> bool {
    let set: HashSet<[usize; 3]> = triples.iter().copied().collect();
    set.contains(&[0, 0, 0])
        && triples.iter().all(|s| {
            triples
                .iter()
                .all(|t| set.contains(&[x.mul(s[0], t[0]), x.mul(s[1], t[1]), x.mul(s[2], t[2])]))
        })
}

fn composite_by_composition(ctx: &DeltaContext, triples: &[[usize; 3]]) -> Result<BurnsideElement> {
    let x = &ctx.x;
    let n = x.order();
    let xx = direct_product(x, x)?;
    let hg = hom_group(&xx, x)?;
    let y = Subgroup::from_elements(
        hg.order(),
        triples
            .iter()
            .map(|t| pair(t[0], pair(t[1], t[2], n), n * n)),
    );
    let u = BisetMorphism::transitive(&xx, x, &y)?;
    let dd = BisetMorphism::from_burnside(&external_product(&ctx.delta, &ctx.delta)?);
    Ok(compose(&u, &dd, Method::Both)?.element.relabel(x))
}

/// `V x_{X^2} U` as `X`-orbits on `X^2`-orbits of pairs, with `V = X^3/Y`
/// and `U = X^2/(A x B)`, without a table for `X^3`.
fn composite_by_enumeration(ctx: &DeltaContext, triples: &[[usize; 3]]) -> Result<BurnsideElement> {
    let x = &ctx.x;
    let n = x.order();
    let mul3 =
        |s: [usize; 3], t: &[usize; 3]| [x.mul(s[0], t[0]), x.mul(s[1], t[1]), x.mul(s[2], t[2])];
    let mut vlabel: HashMap<[usize; 3], usize> = HashMap::new();
    let mut vreps = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if vlabel.contains_key(&[a, b, c]) {
                    continue;
                }
                for t in triples {
                    vlabel.insert(mul3([a, b, c], t), vreps.len());
                }
                vreps.push([a, b, c]);
            }
        }
    }
    let nv = vreps.len();
    let mut total = BurnsideElement::zero(x);
    for (a, ca) in ctx.delta.terms() {
        for (b, cb) in ctx.delta.terms() {
            let mut ulabel: HashMap<[usize; 2], usize> = HashMap::new();
            let mut ureps = Vec::new();
            for s in 0..n {
                for t in 0..n {
                    if ulabel.contains_key(&[s, t]) {
                        continue;
                    }
                    for u in a.iter() {
                        for w in b.iter() {
                            ulabel.insert([x.mul(s, u), x.mul(t, w)], ureps.len());
                        }
                    }
                    ureps.push([s, t]);
                }
            }
            let nu = ureps.len();
            // (v, u) ~ ((1, g) v, g u) for g in X^2
            let mut orbit = vec![usize::MAX; nv * nu];
            let mut k = 0;
            for start in 0..nv * nu {
                if orbit[start] != usize::MAX {
                    continue;
                }
                orbit[start] = k;
                let mut stack = vec![start];
                while let Some(cur) = stack.pop() {
                    let (v, u) = (vreps[cur / nu], ureps[cur % nu]);
                    for &gen in x.generators() {
                        for g in [[gen, 0], [0, gen]] {
                            let nv2 = vlabel[&[v[0], x.mul(g[0], v[1]), x.mul(g[1], v[2])]];
                            let nu2 = ulabel[&[x.mul(g[0], u[0]), x.mul(g[1], u[1])]];
                            let t = nv2 * nu + nu2;
                            if orbit[t] == usize::MAX {
                                orbit[t] = k;
                                stack.push(t);
                            }
                        }
                    }
                }
                k += 1;
            }
            let act: Vec<Vec<usize>> = (0..n)
                .map(|h| {
                    let mut m = vec![0; k];
                    for st in 0..nv * nu {
                        let v = vreps[st / nu];
                        let hv = vlabel[&[x.mul(h, v[0]), v[1], v[2]]];
                        m[orbit[st]] = orbit[hv * nu + st % nu];
                    }
                    m
                })
                .collect();
            total = total.add(&decompose_action(x, &act)?.scale(&(ca * cb)));
        }
    }
    Ok(total)
}

fn y_report(
    p: u32,
    method: &str,
    composite: impl Fn(&DeltaContext, &[[usize; 3]]) -> Result<BurnsideElement>,
) -> Result<YIdentityReport> {
    let ctx = delta_context(p)?;
    let triples = y_triples(&ctx, false)?;
    let expected_order = ctx.x.order() * ctx.iz.order();
    let y_is_subgroup = is_closed(&ctx.x, &triples);
    if !y_is_subgroup {
        return Ok(YIdentityReport {
            p,
            method: method.into(),
            y_order: triples.len(),
            expected_order,
            y_is_subgroup,
            composite: Vec::new(),
            equals_delta: false,
            equals_minus_delta: false,
            swapped_equals_delta: false,
            passed: false,
        });
    }
    let lhs = composite(&ctx, &triples)?;
    let swapped = composite(&ctx, &y_triples(&ctx, true)?)?;
    let equals_delta = lhs == ctx.delta;
    Ok(YIdentityReport {
        p,
        method: method.into(),
        y_order: triples.len(),
        expected_order,
        y_is_subgroup,
        composite: lhs
            .class_terms()
            .into_iter()
            .map(|(i, c)| (i, c.to_string()))
            .collect(),
        equals_delta,
        equals_minus_delta: lhs == ctx.delta.scale(&BigInt::from(-1)),
        swapped_equals_delta: swapped == ctx.delta,
        passed: equals_delta && triples.len() == expected_order,
    })
}

/// `(X^3/Y) o (delta x delta)` against `delta`, with
/// `Y = {(x y^-1 phi(x), x, y) : x y^-1 in IZ}` and `phi: X -> J` onto with
/// kernel `IZ`. Needs `X x X^2` under the product cap.
pub fn y_identity_check(p: u32) -> Result<YIdentityReport> {
    let ctx = delta_context(p)?;
    let x3 = ctx.x.order().pow(3);
    if x3 > crate::groups::product_cap() {
        return Err(Error::CapExceeded {
            order: x3,
            cap: crate::groups::product_cap(),
        });
    }
    y_report(p, "composition", composite_by_composition)
}

/// The same identity computed on orbits of pairs, without building `X^3`.
pub fn y_identity_by_enumeration(p: u32) -> Result<YIdentityReport> {
    y_report(p, "enumeration", composite_by_enumeration)
}

#[derive(Clone, Debug, Serialize)]
pub struct MurReport {
    pub functor: String,
    pub source: String,
    pub target: String,
    pub generators: usize,
    pub acting_nonzero: usize,
}

/// Acts by every HNF generator of `B_delta(Q x P)`, read as a morphism
/// `P -> Q`, and counts those acting nonzero.
pub fn mur_kill_check(f: &ComputableFunctor, p: &Arc<Group>, q: &Arc<Group>) -> Result<MurReport> {
    let qp = hom_group(p, q)?;
    let bd = b_delta(&qp)?;
    let mut acting_nonzero = 0;
    for v in bd.basis() {
        let phi = BisetMorphism::from_element(p, q, BurnsideElement::from_vector(&qp, &v)?)?;
        if !f.act(&phi)?.is_zero() {
            acting_nonzero += 1;
        }
    }
    Ok(MurReport {
        functor: f.label(),
        source: p.name().to_string(),
        target: q.name().to_string(),
        generators: bd.rank(),
        acting_nonzero,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Rank1Row {
    pub group: String,
    pub rank: usize,
    pub expected_rank: usize,
    /// The faithful part equals the span of the listed generators.
    pub generators_match: bool,
}

/// `dK(R)` for `R` of normal p-rank 1, against
/// `0` (cyclic, quaternion), `<Ind_{WZ} eps>` (semidihedral) and
/// `<Ind_{WZ} eps, delta_R>` (dihedral).
pub fn rank1_faithful_kernel(name: &str) -> Result<Rank1Row> {
    let r = build_group(name)?;
    let l = faithful_kernel_lattice(&r)?;
    let width = r.lattice().len();
    let mut expected = Lattice::zero(width);
    let ty = crate::groups::classify_rank1(&r);
    use crate::groups::Rank1Type::*;
    match ty {
        Cyclic | Quaternion => {}
        Semidihedral | Dihedral => {
            let z = r.center();
            let w = noncentral_classes(&r, 2)
                .into_iter()
                .next()
                .ok_or_else(|| Error::Internal(format!("no noncentral involution in {name}")))?;
            expected.insert(induced_epsilon(&r, &r.product_set(&w, &z))?.to_vector());
            if ty == Dihedral {
                expected.insert(delta_r(&r)?.to_vector());
            }
        }
        NotRank1 => {
            return Err(Error::InvalidArgument(format!(
                "{name} does not have normal p-rank 1"
            )))
        }
    }
    Ok(Rank1Row {
        group: name.to_string(),
        rank: l.rank(),
        expected_rank: expected.rank(),
        generators_match: l == expected,
    })
}

/// Whether `delta_R` lies in `B_delta(R)`.
pub fn delta_r_in_b_delta(r: &Arc<Group>) -> Result<bool> {
    Ok(b_delta(r)?.contains(&delta_r(r)?.to_vector()))
}

/// The SD16 generator written out: `-2(R/W - R/WZ) + (R/1 - R/Z)`.
pub fn semidihedral_generator(r: &Arc<Group>) -> Result<BurnsideElement> {
    let z = r.center();
    let w = noncentral_classes(r, 2)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal(format!("no noncentral involution in {}", r.name())))?;
    let mut x = BurnsideElement::zero(r);
    x.add_term(&w, BigInt::from(-2));
    x.add_term(&r.product_set(&w, &z), BigInt::from(2));
    x.add_term(&r.trivial_subgroup(), BigInt::one());
    x.add_term(&z, -BigInt::one());
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::functor::{make_b, make_quotient_bmod_bdelta};

    #[test]
    fn delta_nul_at_two() {
        let r = delta_nul_check(2).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn geometric_at_two() {
        let r = geometric_check(2).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn y_identity_at_two_and_cap_at_three() {
        let r = y_identity_check(2).unwrap();
        assert_eq!(r.y_order, 32);
        assert!(r.y_is_subgroup);
        // the literal Y yields -delta; exchanging I and J in Y yields delta
        assert!(r.equals_minus_delta && !r.passed, "{r:?}");
        assert!(r.swapped_equals_delta);
        let e = y_identity_by_enumeration(2).unwrap();
        assert_eq!(e.composite, r.composite);
        assert!(matches!(
            y_identity_check(3),
            Err(Error::CapExceeded { .. })
        ));
        let t = y_identity_by_enumeration(3).unwrap();
        assert!(t.y_is_subgroup && t.y_order == 243);
        assert!(t.equals_minus_delta && t.swapped_equals_delta, "{t:?}");
    }

    #[test]
    fn mur_on_c2() {
        let c2 = build_group("C2").unwrap();
        let r = mur_kill_check(&make_quotient_bmod_bdelta(2), &c2, &c2).unwrap();
        assert!(r.generators > 0);
        assert_eq!(r.acting_nonzero, 0);
        let x = build_group("D8").unwrap();
        let one = Group::trivial();
        assert!(mur_kill_check(&make_b(), &one, &x).unwrap().acting_nonzero > 0);
    }

    #[test]
    fn semidihedral_generator_is_induced_epsilon() {
        let r = build_group("SD16").unwrap();
        let z = r.center();
        let w = noncentral_classes(&r, 2)[0].clone();
        assert_eq!(
            semidihedral_generator(&r).unwrap(),
            induced_epsilon(&r, &r.product_set(&w, &z)).unwrap()
        );
    }

    #[test]
    fn rank1_rows() {
        for (name, rank) in [("C8", 0), ("Q8", 0), ("SD16", 1), ("D16", 2)] {
            let row = rank1_faithful_kernel(name).unwrap();
            assert_eq!(row.rank, rank, "{name}");
            assert!(row.generators_match, "{name}");
        }
        assert!(!delta_r_in_b_delta(&build_group("D16").unwrap()).unwrap());
    }
}
