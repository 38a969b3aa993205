use num_bigint::BigInt;
use num_traits::Zero;

use super::{
    integer_kernel, invariants_of_relations, mat_mul, vec_mat, zero_matrix, Lattice, Matrix,
};
use crate::error::{Error, Result};

/// `Z^gens / rels`, elements written as row vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedAb {
    pub gens: usize,
    pub rels: Lattice,
}

impl PresentedAb {
    pub fn free(gens: usize) -> PresentedAb {
        PresentedAb {
            gens,
            rels: Lattice::zero(gens),
        }
    }

    pub fn new(gens: usize, rels: Lattice) -> PresentedAb {
        assert_eq!(rels.ambient_rank(), gens);
        PresentedAb { gens, rels }
    }

    pub fn invariants(&self) -> Vec<BigInt> {
        invariants_of_relations(&self.rels.basis(), self.gens)
    }

    /// Torsion factors only.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariants()
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn free_rank(&self) -> usize {
        self.gens - self.rels.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.rels.is_full()
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        self.rels.contains(v)
    }

    /// The subgroup generated by the images of `rows`, presented on an HNF
    /// basis of `span(rows) + rels`, with its inclusion map.
    pub fn subgroup(&self, rows: &[Vec<BigInt>]) -> (PresentedAb, AbMap) {
        let mut span = self.rels.clone();
        for r in rows {
            span.insert(r.clone());
        }
        let basis = span.basis();
        let rel_rows: Vec<Vec<BigInt>> = self
            .rels
            .basis()
            .iter()
            .map(|r| span.coords(r).expect("relations lie in the span"))
            .collect();
        let sub = PresentedAb::new(basis.len(), Lattice::from_rows(basis.len(), &rel_rows));
        let inc = AbMap {
            source: sub.clone(),
            target: self.clone(),
            matrix: basis,
        };
        (sub, inc)
    }

    pub fn direct_sum(parts: &[PresentedAb]) -> PresentedAb {
        let gens = parts.iter().map(|p| p.gens).sum();
        let mut rels = Lattice::zero(gens);
        let mut off = 0;
        for p in parts {
            for r in p.rels.basis() {
                let mut v = vec![BigInt::zero(); gens];
                v[off..off + p.gens].clone_from_slice(&r);
                rels.insert(v);
            }
            off += p.gens;
        }
        PresentedAb::new(gens, rels)
    }
}

/// A homomorphism `x -> x M` between presented groups.
#[derive(Clone, Debug)]
pub struct AbMap {
    pub source: PresentedAb,
    pub target: PresentedAb,
    pub matrix: Matrix,
}

pub struct MapCalculus {
    pub kernel: PresentedAb,
    pub image: PresentedAb,
    pub cokernel: PresentedAb,
    pub is_iso: bool,
}

impl AbMap {
    pub fn new(source: PresentedAb, target: PresentedAb, matrix: Matrix) -> Result<AbMap> {
        let f = AbMap {
            source,
            target,
            matrix,
        };
        f.check()?;
        Ok(f)
    }

    pub fn identity(a: &PresentedAb) -> AbMap {
        let mut m = zero_matrix(a.gens, a.gens);
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = BigInt::from(1);
        }
        AbMap {
            source: a.clone(),
            target: a.clone(),
            matrix: m,
        }
    }

    /// Relations of the source must land in the relations of the target.
    pub fn check(&self) -> Result<()> {
        if self.matrix.len() != self.source.gens
            || self.matrix.iter().any(|r| r.len() != self.target.gens)
        {
            return Err(Error::IllDefinedMap("matrix shape does not match".into()));
        }
        for r in self.source.rels.basis() {
            if !self.target.rels.contains(&self.apply(&r)) {
                return Err(Error::IllDefinedMap(
                    "a source relation does not map into the target relations".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        vec_mat(v, &self.matrix, self.target.gens)
    }

    /// `self` after `first`.
    pub fn after(&self, first: &AbMap) -> AbMap {
        AbMap {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: mat_mul(&first.matrix, &self.matrix, self.target.gens),
        }
    }

    /// Equality as maps of groups.
    pub fn same_map(&self, other: &AbMap) -> bool {
        self.matrix.iter().zip(&other.matrix).all(|(a, b)| {
            let d: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
            self.target.rels.contains(&d)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|r| self.target.rels.contains(r))
    }

    /// The kernel as a lattice in source coordinates; it contains the source
    /// relations.
    pub fn kernel_lattice(&self) -> Lattice {
        let (s, t) = (self.source.gens, self.target.gens);
        // x M in rels(T)  <=>  (x, y) in ker [M; R_T]
        let mut stacked = self.matrix.clone();
        stacked.extend(self.target.rels.basis());
        let ker = integer_kernel(&stacked, stacked.len(), t);
        let mut l = self.source.rels.clone();
        for r in ker.basis() {
            l.insert(r[..s].to_vec());
        }
        l
    }

    pub fn kernel(&self) -> PresentedAb {
        self.source.subgroup(&self.kernel_lattice().basis()).0
    }

    pub fn image(&self) -> PresentedAb {
        self.target.subgroup(&self.matrix).0
    }

    pub fn cokernel(&self) -> PresentedAb {
        let mut co = self.target.rels.clone();
        for r in &self.matrix {
            co.insert(r.clone());
        }
        PresentedAb::new(self.target.gens, co)
    }

    pub fn calculus(&self) -> MapCalculus {
        let kernel = self.kernel();
        let image = self.image();
        let cokernel = self.cokernel();
        let is_iso = kernel.is_zero() && cokernel.is_zero();
        MapCalculus {
            kernel,
            image,
            cokernel,
            is_iso,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlin::to_matrix;

    #[test]
    fn identity_on_z2_is_iso() {
        let z2 = PresentedAb::new(1, Lattice::from_i64_rows(1, &[vec![2]]));
        assert_eq!(z2.invariants(), vec![BigInt::from(2)]);
        assert!(AbMap::identity(&z2).calculus().is_iso);
    }

    #[test]
    fn doubling_on_z() {
        let z = PresentedAb::free(1);
        let f = AbMap::new(z.clone(), z.clone(), to_matrix(&[vec![2]])).unwrap();
        let c = f.calculus();
        assert!(c.kernel.is_zero());
        assert_eq!(c.cokernel.invariants(), vec![BigInt::from(2)]);
        assert!(!c.is_iso);
    }

    #[test]
    fn ill_defined_and_kernel() {
        let z2 = PresentedAb::new(1, Lattice::from_i64_rows(1, &[vec![2]]));
        let z = PresentedAb::free(1);
        assert!(AbMap::new(z2.clone(), z.clone(), to_matrix(&[vec![1]])).is_err());
        // Z -> Z/2 reduction has kernel 2Z (free of rank 1)
        let f = AbMap::new(z.clone(), z2.clone(), to_matrix(&[vec![1]])).unwrap();
        let c = f.calculus();
        assert_eq!(c.kernel.invariants(), vec![BigInt::zero()]);
        assert!(c.cokernel.is_zero());
        // Z/4 -> Z/2 reduction: kernel Z/2
        let z4 = PresentedAb::new(1, Lattice::from_i64_rows(1, &[vec![4]]));
        let g = AbMap::new(z4, z2, to_matrix(&[vec![1]])).unwrap();
        assert_eq!(g.calculus().kernel.invariants(), vec![BigInt::from(2)]);
    }
}
