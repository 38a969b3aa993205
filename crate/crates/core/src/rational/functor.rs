use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::subfunctor::b_delta_at;
use crate::bisets::{shift, BisetMorphism};
use crate::burnside::{kernel_k, BurnsideElement};
use crate::error::{Error, Result};
use crate::groups::{build_group, Group};
use crate::zlin::{vec_mat, AbMap, Lattice, Matrix, PresentedAb};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Burnside,
    /// `K`, the kernel of linearization `B -> R_Q`.
    Kernel,
}

#[derive(Clone)]
enum Kind {
    Plain {
        base: Base,
        mod_delta: Option<u32>,
    },
    Shift {
        inner: Arc<ComputableFunctor>,
        h: Arc<Group>,
    },
}

/// `F(P)` with generator labels and each generator written in `B(P)`.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub group: Arc<Group>,
    pub module: PresentedAb,
    pub labels: Vec<String>,
    pub embedding: Matrix,
    kernel: Option<Lattice>,
}

impl Evaluation {
    /// Coordinates of an element of `B(P)` in the generators, if it lies in
    /// their span.
    pub fn coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        match &self.kernel {
            Some(k) => k.coords(v),
            None => Some(v.to_vec()),
        }
    }
}

/// A p-biset functor given by its evaluations and its action on morphisms.
pub struct ComputableFunctor {
    kind: Kind,
    cache: Mutex<HashMap<u64, Arc<Evaluation>>>,
}

impl fmt::Debug for ComputableFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

fn new_functor(kind: Kind) -> Arc<ComputableFunctor> {
    Arc::new(ComputableFunctor {
        kind,
        cache: Mutex::new(HashMap::new()),
    })
}

pub fn make_b() -> Arc<ComputableFunctor> {
    new_functor(Kind::Plain {
        base: Base::Burnside,
        mod_delta: None,
    })
}

pub fn make_k() -> Arc<ComputableFunctor> {
    new_functor(Kind::Plain {
        base: Base::Kernel,
        mod_delta: None,
    })
}

/// `B/B_delta` for the `delta` of the prime `p`.
pub fn make_quotient_bmod_bdelta(p: u32) -> Arc<ComputableFunctor> {
    new_functor(Kind::Plain {
        base: Base::Burnside,
        mod_delta: Some(p),
    })
}

/// `K/B_delta` for the prime `p`.
pub fn make_quotient_kmod_bdelta(p: u32) -> Arc<ComputableFunctor> {
    new_functor(Kind::Plain {
        base: Base::Kernel,
        mod_delta: Some(p),
    })
}

/// The Yoneda-Dress shift `F_H: P -> F(P x H)`.
pub fn make_shift(f: &Arc<ComputableFunctor>, h: &Arc<Group>) -> Arc<ComputableFunctor> {
    new_functor(Kind::Shift {
        inner: f.clone(),
        h: h.clone(),
    })
}

/// Parses `B`, `K`, `BmodBdelta`, `KmodBdelta` or `shift:H` (the shift of
/// `B/B_delta`); `p` fixes the `delta` used by the quotients.
pub fn parse_functor(s: &str, p: u32) -> Result<Arc<ComputableFunctor>> {
    match s {
        "B" => Ok(make_b()),
        "K" => Ok(make_k()),
        "BmodBdelta" => Ok(make_quotient_bmod_bdelta(p)),
        "KmodBdelta" => Ok(make_quotient_kmod_bdelta(p)),
        _ => match s.strip_prefix("shift:") {
            Some(h) => Ok(make_shift(&make_quotient_bmod_bdelta(p), &build_group(h)?)),
            None => Err(Error::InvalidArgument(format!("unknown functor `{s}`"))),
        },
    }
}

/// The matrix of `phi` on transitive bases: row `i` is `phi(G/Q_i)`.
pub fn b_matrix(phi: &BisetMorphism) -> Result<Matrix> {
    phi.source
        .lattice()
        .classes()
        .iter()
        .map(|c| {
            Ok(phi
                .apply(&BurnsideElement::transitive(&phi.source, &c.rep))?
                .to_vector())
        })
        .collect()
}

fn unit_rows(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

impl ComputableFunctor {
    pub fn label(&self) -> String {
        match &self.kind {
            Kind::Plain { base, mod_delta } => {
                let b = match base {
                    Base::Burnside => "B",
                    Base::Kernel => "K",
                };
                match mod_delta {
                    Some(_) => format!("{b}/B_delta"),
                    None => b.to_string(),
                }
            }
            Kind::Shift { inner, h } => format!("({})_{}", inner.label(), h.name()),
        }
    }

    /// The prime fixing `delta` for quotient functors.
    pub fn delta_prime(&self) -> Option<u32> {
        match &self.kind {
            Kind::Plain { mod_delta, .. } => *mod_delta,
            Kind::Shift { inner, .. } => inner.delta_prime(),
        }
    }

    pub fn eval(&self, p: &Arc<Group>) -> Result<Arc<Evaluation>> {
        if let Some(e) = self.cache.lock().expect("evaluation cache").get(&p.id()) {
            return Ok(e.clone());
        }
        let e = Arc::new(match &self.kind {
            Kind::Plain { base, mod_delta } => plain_eval(*base, *mod_delta, p)?,
            Kind::Shift { inner, h } => {
                let ph = crate::groups::direct_product(p, h)?;
                (*inner.eval(&ph)?).clone()
            }
        });
        self.cache
            .lock()
            .expect("evaluation cache")
            .insert(p.id(), e.clone());
        Ok(e)
    }

    pub fn act(&self, phi: &BisetMorphism) -> Result<AbMap> {
        match &self.kind {
            Kind::Plain { .. } => {
                let src = self.eval(&phi.source)?;
                let tgt = self.eval(&phi.target)?;
                let m = b_matrix(phi)?;
                let width = phi.target.lattice().len();
                let rows = src
                    .embedding
                    .iter()
                    .map(|e| {
                        tgt.coords(&vec_mat(e, &m, width)).ok_or_else(|| {
                            Error::IllDefinedMap(format!(
                                "{} does not preserve {}",
                                self.label(),
                                phi.target.name()
                            ))
                        })
                    })
                    .collect::<Result<Matrix>>()?;
                AbMap::new(src.module.clone(), tgt.module.clone(), rows)
            }
            Kind::Shift { inner, h } => inner.act(&shift(phi, h)?),
        }
    }
}

fn plain_eval(base: Base, mod_delta: Option<u32>, p: &Arc<Group>) -> Result<Evaluation> {
    let lat = p.lattice();
    let n = lat.len();
    let (embedding, kernel) = match base {
        Base::Burnside => (unit_rows(n), None),
        Base::Kernel => {
            let k = kernel_k(p);
            (k.basis(), Some(k))
        }
    };
    let labels: Vec<String> = match base {
        Base::Burnside => lat
            .classes()
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{}/H{i}[{}]", p.name(), c.rep.order()))
            .collect(),
        Base::Kernel => (0..embedding.len()).map(|i| format!("k{i}")).collect(),
    };
    let rels = match mod_delta {
        None => Lattice::zero(embedding.len()),
        Some(prime) => {
            let bd = b_delta_at(prime, p)?;
            let rows = bd
                .basis()
                .iter()
                .map(|r| match &kernel {
                    Some(k) => k.coords(r).ok_or_else(|| {
                        Error::NotContained(format!("B_delta({}) is not inside K", p.name()))
                    }),
                    None => Ok(r.clone()),
                })
                .collect::<Result<Matrix>>()?;
            Lattice::from_rows(embedding.len(), &rows)
        }
    };
    Ok(Evaluation {
        group: p.clone(),
        module: PresentedAb::new(embedding.len(), rels),
        labels,
        embedding,
        kernel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisets::{compose, identity, ind, res, Method};

    #[test]
    fn small_evaluations() {
        let c2 = build_group("C2").unwrap();
        assert_eq!(make_b().eval(&c2).unwrap().module.free_rank(), 2);
        let x3 = build_group("X3").unwrap();
        let q = make_quotient_bmod_bdelta(3).eval(&x3).unwrap();
        assert_eq!(q.module.free_rank(), 6);
        assert!(q.module.torsion().is_empty());
        let s = make_shift(&make_b(), &c2).eval(&c2).unwrap();
        assert_eq!(s.module.gens, 5);
        assert_eq!(
            make_k()
                .eval(&build_group("E4").unwrap())
                .unwrap()
                .module
                .gens,
            1
        );
    }

    #[test]
    fn action_is_functorial() {
        let d8 = build_group("D8").unwrap();
        let c4 = d8
            .classes()
            .into_iter()
            .find(|c| c.rep.order() == 4 && d8.is_cyclic_subgroup(&c.rep))
            .unwrap()
            .rep;
        let r = res(&d8, &c4).unwrap();
        let i = ind(&d8, &c4).unwrap();
        for f in [
            make_b(),
            make_k(),
            make_quotient_bmod_bdelta(2),
            make_quotient_kmod_bdelta(2),
        ] {
            let id = f.act(&identity(&d8).unwrap()).unwrap();
            assert!(
                id.same_map(&AbMap::identity(&f.eval(&d8).unwrap().module)),
                "{}",
                f.label()
            );
            let both = f.act(&compose(&i, &r, Method::Both).unwrap()).unwrap();
            let split = f.act(&i).unwrap().after(&f.act(&r).unwrap());
            assert!(both.same_map(&split), "{}", f.label());
        }
    }

    #[test]
    fn parse_names() {
        assert_eq!(parse_functor("BmodBdelta", 2).unwrap().label(), "B/B_delta");
        assert_eq!(
            parse_functor("shift:C2", 2).unwrap().label(),
            "(B/B_delta)_C2"
        );
        assert!(parse_functor("R", 2).is_err());
    }
}
