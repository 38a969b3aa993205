use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::burnside::BurnsideElement;
use crate::error::{Error, Result};
use crate::groups::{direct_product, pair, unpair, Group, Subgroup};

/// An element of `Hom(G, H) = B(H x G^op)`, written on the transitive bisets
/// `(H x G)/L` with `(h, g) . u = h u g^-1`.
#[derive(Clone)]
pub struct BisetMorphism {
    pub source: Arc<Group>,
    pub target: Arc<Group>,
    pub element: BurnsideElement,
}

impl PartialEq for BisetMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.source.same_as(&other.source)
            && self.target.same_as(&other.target)
            && self.element == other.element
    }
}

impl Eq for BisetMorphism {}

impl fmt::Debug for BisetMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Hom({} -> {}) {:?}",
            self.source.name(),
            self.target.name(),
            self.element
        )
    }
}

/// The group `H x G` carrying `Hom(G, H)`.
pub fn hom_group(source: &Arc<Group>, target: &Arc<Group>) -> Result<Arc<Group>> {
    direct_product(target, source)
}

impl BisetMorphism {
    pub fn zero(source: &Arc<Group>, target: &Arc<Group>) -> Result<Self> {
        Ok(BisetMorphism {
            source: source.clone(),
            target: target.clone(),
            element: BurnsideElement::zero(&hom_group(source, target)?),
        })
    }

    /// The class of `(H x G)/L`.
    pub fn transitive(source: &Arc<Group>, target: &Arc<Group>, l: &Subgroup) -> Result<Self> {
        let mut m = Self::zero(source, target)?;
        if !m.element.group.is_subgroup(l) {
            return Err(Error::InvalidArgument(format!(
                "{l:?} is not a subgroup of {} x {}",
                target.name(),
                source.name()
            )));
        }
        m.element.add_term(l, BigInt::one());
        Ok(m)
    }

    /// Builds `(H x G)/L` from the pairs `(h, g)` generating `L`.
    pub fn from_pairs(
        source: &Arc<Group>,
        target: &Arc<Group>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let hg = hom_group(source, target)?;
        let elems: Vec<usize> = pairs
            .into_iter()
            .map(|(h, g)| pair(h, g, source.order()))
            .collect();
        let l = hg.generated(&elems);
        Self::transitive(source, target, &l)
    }

    pub fn from_element(
        source: &Arc<Group>,
        target: &Arc<Group>,
        element: BurnsideElement,
    ) -> Result<Self> {
        let hg = hom_group(source, target)?;
        if !element.group.same_as(&hg) {
            return Err(Error::GroupMismatch(format!(
                "element over {} is not in Hom({}, {})",
                element.group.name(),
                source.name(),
                target.name()
            )));
        }
        Ok(BisetMorphism {
            source: source.clone(),
            target: target.clone(),
            element: element.relabel(&hg),
        })
    }

    /// `B(G) = Hom(1, G)`.
    pub fn from_burnside(x: &BurnsideElement) -> Self {
        BisetMorphism {
            source: Group::trivial(),
            target: x.group.clone(),
            element: x.clone(),
        }
    }

    pub fn hom_group(&self) -> &Arc<Group> {
        &self.element.group
    }

    pub fn is_zero(&self) -> bool {
        self.element.is_zero()
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.source.same_as(&other.source) && self.target.same_as(&other.target) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!(
                "Hom({}, {}) vs Hom({}, {})",
                self.source.name(),
                self.target.name(),
                other.source.name(),
                other.target.name()
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(BisetMorphism {
            element: self
                .element
                .add(&other.element.relabel(&self.element.group)),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        BisetMorphism {
            element: self.element.scale(k),
            ..self.clone()
        }
    }

    /// Swaps the two factors of every stabilizer.
    pub fn opposite(&self) -> Result<Self> {
        let mut out = Self::zero(&self.target, &self.source)?;
        let (ns, nt) = (self.source.order(), self.target.order());
        for (l, c) in self.element.terms() {
            let swapped = Subgroup::from_elements(
                ns * nt,
                l.iter().map(|z| {
                    let (h, g) = unpair(z, ns);
                    pair(g, h, nt)
                }),
            );
            out.element.add_term(&swapped, c.clone());
        }
        Ok(out)
    }

    /// Terms as `(L, coefficient)` with `L <= target x source`.
    pub fn terms(&self) -> impl Iterator<Item = (&Subgroup, &BigInt)> {
        self.element.terms()
    }
}

/// First and second projections and kernels of `L <= H x G`.
pub struct Projections {
    pub p1: Subgroup,
    pub p2: Subgroup,
    pub k1: Subgroup,
    pub k2: Subgroup,
}

pub fn projections(h: &Group, g: &Group, l: &Subgroup) -> Projections {
    let ng = g.order();
    let mut p1 = Subgroup::empty(h.order());
    let mut p2 = Subgroup::empty(ng);
    let mut k1 = Subgroup::empty(h.order());
    let mut k2 = Subgroup::empty(ng);
    for z in l.iter() {
        let (a, b) = unpair(z, ng);
        p1.insert(a);
        p2.insert(b);
        if b == 0 {
            k1.insert(a);
        }
        if a == 0 {
            k2.insert(b);
        }
    }
    Projections { p1, p2, k1, k2 }
}
