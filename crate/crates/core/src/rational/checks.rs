use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use super::delta::{delta_context, delta_r, is_dihedral};
use super::functor::ComputableFunctor;
use super::subfunctor::b_delta;
use crate::bisets::{def, faithful_idempotent, indinf, res, shift, BisetMorphism};
use crate::burnside::{kernel_k, BurnsideElement};
use crate::error::{Error, Result};
use crate::genetics::{basis_choosing, genetic_basis, indinf_map, GeneticBasis};
use crate::groups::{Group, Subgroup};
use crate::zlin::{sub_quotient_invariants, vec_mat, AbMap, Lattice, Matrix, PresentedAb};

/// `dF(P)` with its inclusion into `F(P)`.
#[derive(Clone, Debug)]
pub struct FaithfulPart {
    pub module: PresentedAb,
    pub inclusion: AbMap,
    /// The faithful part plus the relations, in the generators of `F(P)`.
    pub lattice: Lattice,
}

/// Image of `F(f_1^P)`, compared with the intersection of the kernels of
/// all deflations `Def_{P/N}`, `N != 1` normal.
pub fn faithful_part(f: &ComputableFunctor, p: &Arc<Group>) -> Result<FaithfulPart> {
    let fp = f.eval(p)?;
    let e = f.act(&faithful_idempotent(p, &p.trivial_subgroup())?)?;
    if !e.after(&e).same_map(&e) {
        return Err(Error::Internal(format!(
            "{} of f_1 is not idempotent at {}",
            f.label(),
            p.name()
        )));
    }
    let (module, inclusion) = fp.module.subgroup(&e.matrix);
    let lattice = Lattice::from_rows(fp.module.gens, &inclusion.matrix).sum(&fp.module.rels);
    let mut meet = Lattice::full(fp.module.gens);
    for n in p.normal_subgroups().iter().filter(|n| !n.is_trivial()) {
        meet = meet.intersection(&f.act(&def(p, n)?)?.kernel_lattice());
    }
    if meet != lattice {
        return Err(Error::Internal(format!(
            "faithful part of {} at {}: idempotent image and deflation kernels differ",
            f.label(),
            p.name()
        )));
    }
    Ok(FaithfulPart {
        module,
        inclusion,
        lattice,
    })
}

#[derive(Clone, Debug)]
pub struct RationalityReport {
    pub group: String,
    pub functor: String,
    pub is_rational: bool,
    pub kernel: PresentedAb,
    pub cokernel: PresentedAb,
    /// Generator labels of the source of `I_G`, by genetic subgroup.
    pub source_labels: Vec<String>,
    /// Whether a second genetic basis gives the same verdict, when the group
    /// has more than one.
    pub other_basis_agrees: Option<bool>,
}

/// `I_G = (+) Indinf_{N_P(Q)/Q}^P` from the faithful parts, for one basis.
pub fn indinf_sum(f: &ComputableFunctor, basis: &GeneticBasis) -> Result<(AbMap, Vec<String>)> {
    let p = &basis.group;
    let mut parts = Vec::new();
    let mut rows: Matrix = Vec::new();
    let mut labels = Vec::new();
    for (k, e) in basis.entries.iter().enumerate() {
        let nq = &e.local.section.quotient;
        let part = faithful_part(f, nq)?;
        let a = f.act(&indinf_map(p, &e.q)?)?;
        let ev = f.eval(nq)?;
        for (j, r) in part.inclusion.matrix.iter().enumerate() {
            rows.push(a.apply(r));
            let nonzero: Vec<String> = r
                .iter()
                .zip(&ev.labels)
                .filter(|(c, _)| **c != BigInt::from(0))
                .map(|(c, l)| format!("{c}*{l}"))
                .collect();
            labels.push(format!("Q{k}.{j}: {}", nonzero.join(" + ")));
        }
        parts.push(part.module);
    }
    let src = PresentedAb::direct_sum(&parts);
    Ok((AbMap::new(src, f.eval(p)?.module.clone(), rows)?, labels))
}

pub fn rationality_check_with(
    f: &ComputableFunctor,
    basis: &GeneticBasis,
) -> Result<RationalityReport> {
    let (map, source_labels) = indinf_sum(f, basis)?;
    let c = map.calculus();
    Ok(RationalityReport {
        group: basis.group.name().to_string(),
        functor: f.label(),
        is_rational: c.is_iso,
        kernel: c.kernel,
        cokernel: c.cokernel,
        source_labels,
        other_basis_agrees: None,
    })
}

/// Whether `I_G` is an isomorphism at `P`, for the default genetic basis and
/// for the basis using the last member of each linkage class.
pub fn rationality_check(f: &ComputableFunctor, p: &Arc<Group>) -> Result<RationalityReport> {
    let first = genetic_basis(p)?;
    let mut report = rationality_check_with(f, &first)?;
    let other = basis_choosing(p, |class| class[class.len() - 1].clone())?;
    if other
        .entries
        .iter()
        .zip(&first.entries)
        .any(|(a, b)| a.q != b.q)
    {
        report.other_basis_agrees =
            Some(rationality_check_with(f, &other)?.is_rational == report.is_rational);
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct CaractRow {
    pub group: String,
    /// `None` when the center is cyclic.
    pub condition_i: Option<bool>,
    /// One entry per pair `(E, Z)`.
    pub condition_ii: Vec<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaractReport {
    pub functor: String,
    pub rows: Vec<CaractRow>,
    pub passed: bool,
}

fn is_elementary_rank2(p: &Group, e: &Subgroup) -> bool {
    let q = p.prime() as usize;
    e.order() == q * q && p.is_abelian_subgroup(e) && e.iter().all(|x| p.pow(x, q) == 0)
}

/// `Res_{C_P(E)} (+) Def_{P/Z}` as one map into the direct sum.
fn res_def(f: &ComputableFunctor, p: &Arc<Group>, c: &Subgroup, z: &Subgroup) -> Result<AbMap> {
    let r = f.act(&res(p, c)?)?;
    let d = f.act(&def(p, z)?)?;
    let target = PresentedAb::direct_sum(&[r.target.clone(), d.target.clone()]);
    let rows: Matrix = r
        .matrix
        .iter()
        .zip(&d.matrix)
        .map(|(a, b)| a.iter().chain(b).cloned().collect())
        .collect();
    AbMap::new(r.source.clone(), target, rows)
}

pub fn caract_row(f: &ComputableFunctor, p: &Arc<Group>) -> Result<CaractRow> {
    let center = p.center();
    let condition_i = if p.is_cyclic_subgroup(&center) {
        None
    } else {
        Some(faithful_part(f, p)?.module.is_zero())
    };
    let q = p.prime() as usize;
    let mut condition_ii = Vec::new();
    for e in p.lattice().all_subgroups() {
        if !is_elementary_rank2(p, &e) || !p.is_normal(&e) {
            continue;
        }
        let c = p.centralizer(&e);
        let central = e.intersection(&center);
        let mut zs: Vec<Subgroup> = central
            .iter()
            .filter(|&x| x != 0)
            .map(|x| p.generated(&[x]))
            .collect();
        zs.sort();
        zs.dedup();
        for z in zs.iter().filter(|z| z.order() == q) {
            condition_ii.push(res_def(f, p, &c, z)?.kernel().is_zero());
        }
    }
    Ok(CaractRow {
        group: p.name().to_string(),
        condition_i,
        condition_ii,
    })
}

/// Both conditions of the characterization of rational functors over a
/// universe of groups.
pub fn caract_check(f: &ComputableFunctor, universe: &[Arc<Group>]) -> Result<CaractReport> {
    let rows = universe
        .iter()
        .map(|p| caract_row(f, p))
        .collect::<Result<Vec<_>>>()?;
    let passed = rows
        .iter()
        .all(|r| r.condition_i != Some(false) && r.condition_ii.iter().all(|&b| b));
    Ok(CaractReport {
        functor: f.label(),
        rows,
        passed,
    })
}

#[derive(Clone, Debug)]
pub struct RatBounds {
    /// `F(P) / Im F_P(delta^op)`
    pub rat_quotient: PresentedAb,
    /// `Ker F_P(delta)`
    pub rat_sub: PresentedAb,
}

fn delta_morphism(prime: u32) -> Result<BisetMorphism> {
    Ok(BisetMorphism::from_burnside(&delta_context(prime)?.delta))
}

pub fn rat_quotient(f: &ComputableFunctor, p: &Arc<Group>, prime: u32) -> Result<PresentedAb> {
    let dop = delta_morphism(prime)?.opposite()?;
    Ok(f.act(&shift(&dop, p)?)?.cokernel())
}

pub fn rat_sub(f: &ComputableFunctor, p: &Arc<Group>, prime: u32) -> Result<PresentedAb> {
    Ok(f.act(&shift(&delta_morphism(prime)?, p)?)?.kernel())
}

pub fn rat_bounds(f: &ComputableFunctor, p: &Arc<Group>) -> Result<RatBounds> {
    let prime = f.delta_prime().unwrap_or(p.prime().max(2));
    Ok(RatBounds {
        rat_quotient: rat_quotient(f, p, prime)?,
        rat_sub: rat_sub(f, p, prime)?,
    })
}

#[derive(Clone, Debug)]
pub struct KModDelta {
    pub group: String,
    pub invariants: Vec<BigInt>,
    /// `Indinf_{N_P(Q)/Q}^P delta_{N_P(Q)/Q}` over the dihedral entries of the
    /// genetic basis.
    pub basis_images: Vec<BurnsideElement>,
    /// `d(P)`
    pub d: usize,
    /// The images together with `B_delta(P)` span `K(P)` and are independent
    /// modulo `B_delta(P)`.
    pub images_form_basis: bool,
}

pub fn k_mod_delta(p: &Arc<Group>) -> Result<KModDelta> {
    let k = kernel_k(p);
    let bd = b_delta(p)?;
    let invariants = sub_quotient_invariants(&bd, &k)?;
    let basis = genetic_basis(p)?;
    let mut basis_images = Vec::new();
    for e in &basis.entries {
        let nq = &e.local.section.quotient;
        if is_dihedral(nq) && nq.order() >= 16 {
            basis_images.push(indinf(p, &e.local.section)?.apply(&delta_r(nq)?)?);
        }
    }
    let mut span = (*bd).clone();
    for x in &basis_images {
        span.insert(x.to_vector());
    }
    let two = BigInt::from(2);
    let images_form_basis =
        span == k && invariants.len() == basis_images.len() && invariants.iter().all(|x| *x == two);
    Ok(KModDelta {
        group: p.name().to_string(),
        invariants,
        basis_images,
        d: basis.d,
        images_form_basis,
    })
}

/// `dK(R)` as a lattice in `B(R)`.
pub fn faithful_kernel_lattice(r: &Arc<Group>) -> Result<Lattice> {
    let f = super::functor::make_k();
    let part = faithful_part(&f, r)?;
    let ev = f.eval(r)?;
    let width = r.lattice().len();
    let rows: Matrix = part
        .inclusion
        .matrix
        .iter()
        .map(|x| vec_mat(x, &ev.embedding, width))
        .collect();
    Ok(Lattice::from_rows(width, &rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genetics::gamma;
    use crate::groups::build_group;
    use crate::rational::functor::{make_b, make_k, make_quotient_bmod_bdelta, make_shift};

    #[test]
    fn burnside_is_not_rational_at_klein() {
        let e = build_group("E4").unwrap();
        let r = rationality_check(&make_b(), &e).unwrap();
        assert!(!r.is_rational);
        assert_eq!(r.cokernel.invariants(), vec![BigInt::from(0)]);
        let row = caract_row(&make_b(), &e).unwrap();
        assert_eq!(row.condition_i, Some(false));
        let k = faithful_part(&make_k(), &e).unwrap();
        assert_eq!(k.module.free_rank(), 1);
    }

    #[test]
    fn quotient_is_rational_on_small_groups() {
        let f = make_quotient_bmod_bdelta(2);
        for name in ["1", "C2", "C4", "E4", "D8", "Q8"] {
            let p = build_group(name).unwrap();
            let r = rationality_check(&f, &p).unwrap();
            assert!(r.is_rational, "{name}");
            assert_ne!(r.other_basis_agrees, Some(false));
        }
    }

    #[test]
    fn shifted_quotient_at_d8() {
        let f = make_shift(&make_quotient_bmod_bdelta(2), &build_group("C2").unwrap());
        assert!(
            rationality_check(&f, &build_group("D8").unwrap())
                .unwrap()
                .is_rational
        );
    }

    #[test]
    fn rat_quotient_of_burnside_at_one_and_x() {
        let b = make_b();
        let one = Group::trivial();
        let q = rat_bounds(&b, &one).unwrap();
        assert_eq!(q.rat_quotient.invariants(), vec![BigInt::from(0)]);
        let x = build_group("D8").unwrap();
        let qx = rat_quotient(&b, &x, 2).unwrap();
        let direct = PresentedAb::new(x.lattice().len(), (*b_delta(&x).unwrap()).clone());
        assert_eq!(qx.invariants(), direct.invariants());
        let f = make_quotient_bmod_bdelta(2);
        let c2 = build_group("C2").unwrap();
        let qf = rat_quotient(&f, &c2, 2).unwrap();
        assert_eq!(qf.invariants(), f.eval(&c2).unwrap().module.invariants());
    }

    #[test]
    fn k_mod_delta_examples() {
        let d8 = k_mod_delta(&build_group("D8").unwrap()).unwrap();
        assert!(d8.invariants.is_empty());
        let d16 = k_mod_delta(&build_group("D16").unwrap()).unwrap();
        assert_eq!(d16.invariants, vec![BigInt::from(2)]);
        assert!(d16.images_form_basis);
        let sd16 = k_mod_delta(&build_group("SD16").unwrap()).unwrap();
        assert!(sd16.invariants.is_empty());
    }

    #[test]
    fn gamma_idempotents_sum_to_identity_on_the_quotient() {
        let f = make_quotient_bmod_bdelta(2);
        let d8 = build_group("D8").unwrap();
        let mut sum = BisetMorphism::zero(&d8, &d8).unwrap();
        for e in genetic_basis(&d8).unwrap().entries {
            sum = sum.add(&gamma(&d8, &e.q).unwrap()).unwrap();
        }
        let m = f.act(&sum).unwrap();
        assert!(m.same_map(&AbMap::identity(&f.eval(&d8).unwrap().module)));
    }
}
