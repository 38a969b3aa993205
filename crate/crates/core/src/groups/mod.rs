//! Finite p-groups given by explicit multiplication tables.

mod catalog;
mod iso;
mod lattice;
mod local;
mod projective;
mod section;
mod subgroup;

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

pub use catalog::{build_group, catalog_names, standard_two_groups};
pub use iso::{all_isomorphisms, automorphisms, is_isomorphic};
pub use lattice::{SubgroupClass, SubgroupLattice};
pub use local::{classify_rank1, local_data, LocalData, Rank1Type};
pub use projective::{projective_plane_data, ProjectivePlane};
pub use section::{quotient, section, Section};
pub use subgroup::Subgroup;

/// Default cap on the order of catalog groups.
pub const DEFAULT_GROUP_CAP: usize = 256;
/// Default cap on internally built direct products (hom-spaces `H x G`).
pub const DEFAULT_PRODUCT_CAP: usize = 1024;
/// Tables are stored as `u16`; beyond this the quadratic table is not built at all.
pub const HARD_TABLE_LIMIT: usize = 4096;

static GROUP_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_GROUP_CAP);
static PRODUCT_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_PRODUCT_CAP);
static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub fn group_cap() -> usize {
    GROUP_CAP.load(Ordering::Relaxed)
}

pub fn product_cap() -> usize {
    PRODUCT_CAP.load(Ordering::Relaxed)
}

/// Raises or lowers both caps. Values above [`HARD_TABLE_LIMIT`] are clamped.
pub fn set_caps(group: usize, product: usize) {
    GROUP_CAP.store(group.min(HARD_TABLE_LIMIT), Ordering::Relaxed);
    PRODUCT_CAP.store(product.min(HARD_TABLE_LIMIT), Ordering::Relaxed);
}

pub(crate) fn check_cap(order: usize, cap: usize) -> Result<()> {
    if order > cap || order > HARD_TABLE_LIMIT {
        Err(Error::CapExceeded {
            order,
            cap: cap.min(HARD_TABLE_LIMIT),
        })
    } else {
        Ok(())
    }
}

pub struct Group {
    id: u64,
    name: String,
    prime: u32,
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    elem_orders: Vec<u32>,
    gens: Vec<usize>,
    lattice: OnceLock<Arc<SubgroupLattice>>,
    canon: Mutex<HashMap<Subgroup, Subgroup>>,
    abelian: bool,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Group({}, order {})", self.name, self.order)
    }
}

fn prime_of(order: usize) -> Option<u32> {
    if order == 1 {
        return Some(1);
    }
    let p = (2..=order).find(|d| order.is_multiple_of(*d))?;
    let mut n = order;
    while n.is_multiple_of(p) {
        n /= p;
    }
    (n == 1).then_some(p as u32)
}

impl Group {
    /// Builds a group from a row-major multiplication table with identity at 0.
    pub fn from_table(name: impl Into<String>, mul: Vec<u16>) -> Result<Group> {
        let name = name.into();
        let n = (mul.len() as f64).sqrt().round() as usize;
        if n * n != mul.len() || n == 0 {
            return Err(Error::NotAGroup(format!("{name}: table is not square")));
        }
        if n > HARD_TABLE_LIMIT {
            return Err(Error::CapExceeded {
                order: n,
                cap: HARD_TABLE_LIMIT,
            });
        }
        let prime = prime_of(n).ok_or_else(|| {
            Error::InvalidParameters(format!("{name}: order {n} is not a prime power"))
        })?;
        for a in 0..n {
            if mul[a] as usize != a || mul[a * n] as usize != a {
                return Err(Error::NotAGroup(format!("{name}: 0 is not the identity")));
            }
        }
        let mut inv = vec![u16::MAX; n];
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                let c = mul[a * n + b] as usize;
                if c >= n || seen[c] {
                    return Err(Error::NotAGroup(format!(
                        "{name}: row {a} is not a permutation"
                    )));
                }
                seen[c] = true;
                if c == 0 {
                    inv[a] = b as u16;
                }
            }
        }
        let at = |a: usize, b: usize| mul[a * n + b] as usize;
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    let ab = at(a, b);
                    for c in 0..n {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(Error::NotAGroup(format!("{name}: not associative")));
                        }
                    }
                }
            }
        } else {
            // deterministic sample
            let mut state: u64 = 0x9e37_79b9_7f4a_7c15 ^ n as u64;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % n as u64) as usize
            };
            for _ in 0..20_000 {
                let (a, b, c) = (next(), next(), next());
                if at(at(a, b), c) != at(a, at(b, c)) {
                    return Err(Error::NotAGroup(format!("{name}: not associative")));
                }
            }
        }
        let mut elem_orders = vec![0u32; n];
        for a in 0..n {
            let mut k = 1;
            let mut x = a;
            while x != 0 {
                x = at(x, a);
                k += 1;
            }
            elem_orders[a] = k;
        }
        let mut g = Group {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name,
            prime,
            order: n,
            mul,
            inv,
            elem_orders,
            gens: Vec::new(),
            lattice: OnceLock::new(),
            canon: Mutex::new(HashMap::new()),
            abelian: false,
        };
        g.gens = g.greedy_generators();
        g.abelian = g.is_abelian_subgroup(&g.whole());
        Ok(g)
    }

    /// Enumerates the closure of `gens` under `mul` and builds its table.
    pub fn from_generators<T, F>(
        name: impl Into<String>,
        identity: T,
        gens: &[T],
        mul: F,
    ) -> Result<Group>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let name = name.into();
        let mut index: HashMap<T, usize> = HashMap::new();
        let mut elems = vec![identity.clone()];
        index.insert(identity, 0);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let x = mul(&elems[i], g);
                if !index.contains_key(&x) {
                    if elems.len() >= HARD_TABLE_LIMIT {
                        return Err(Error::CapExceeded {
                            order: elems.len() + 1,
                            cap: HARD_TABLE_LIMIT,
                        });
                    }
                    index.insert(x.clone(), elems.len());
                    elems.push(x);
                }
            }
            i += 1;
        }
        let n = elems.len();
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&mul(&elems[a], &elems[b])] as u16;
            }
        }
        Group::from_table(name, table)
    }

    pub fn trivial() -> Arc<Group> {
        static TRIVIAL: OnceLock<Arc<Group>> = OnceLock::new();
        TRIVIAL
            .get_or_init(|| Arc::new(Group::from_table("1", vec![0]).expect("trivial group")))
            .clone()
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The prime `p` with `|G| = p^k`; 1 for the trivial group.
    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn elem_order(&self, a: usize) -> usize {
        self.elem_orders[a] as usize
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut r = 0;
        for _ in 0..k % self.elem_order(a) {
            r = self.mul(r, a);
        }
        r
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    /// Same multiplication table (possibly distinct objects).
    pub fn same_as(&self, other: &Group) -> bool {
        self.id == other.id || (self.order == other.order && self.mul == other.mul)
    }

    pub fn table(&self) -> &[u16] {
        &self.mul
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::full(self.order)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::trivial(self.order)
    }

    /// Subgroup generated by `elems`.
    pub fn generated(&self, elems: &[usize]) -> Subgroup {
        self.extend(&self.trivial_subgroup(), elems)
    }

    /// Subgroup generated by `h` together with `elems`.
    pub fn extend(&self, h: &Subgroup, elems: &[usize]) -> Subgroup {
        let mut s = h.clone();
        let mut queue: VecDeque<usize> = s.iter().collect();
        let mut gens: Vec<usize> = elems.to_vec();
        gens.extend(self.small_generating_set(h));
        for &g in elems {
            if s.insert(g) {
                queue.push_back(g);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if s.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        s
    }

    /// A generating set for a subgroup, built greedily from elements of maximal order.
    pub fn small_generating_set(&self, h: &Subgroup) -> Vec<usize> {
        let mut current = self.trivial_subgroup();
        let mut gens = Vec::new();
        let mut members: Vec<usize> = h.iter().collect();
        members.sort_by_key(|&x| (std::cmp::Reverse(self.elem_order(x)), x));
        while current.order() < h.order() {
            let g = *members
                .iter()
                .find(|&&x| !current.contains(x))
                .expect("element outside the current span");
            gens.push(g);
            current = self.closure_of(&gens);
        }
        gens
    }

    fn closure_of(&self, gens: &[usize]) -> Subgroup {
        let mut s = self.trivial_subgroup();
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if s.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        s
    }

    fn greedy_generators(&self) -> Vec<usize> {
        self.small_generating_set(&self.whole())
    }

    /// `g H g^-1`.
    pub fn conjugate(&self, h: &Subgroup, g: usize) -> Subgroup {
        let gi = self.inv(g);
        Subgroup::from_elements(self.order, h.iter().map(|x| self.mul(self.mul(g, x), gi)))
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let hg = self.small_generating_set(h);
        Subgroup::from_elements(
            self.order,
            (0..self.order).filter(|&g| hg.iter().all(|&x| h.contains(self.conj(g, x)))),
        )
    }

    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        let hg = self.small_generating_set(h);
        Subgroup::from_elements(
            self.order,
            (0..self.order).filter(|&g| hg.iter().all(|&x| self.mul(g, x) == self.mul(x, g))),
        )
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.whole())
    }

    /// Is `h` normalized by every element of `k`?
    pub fn normalizes(&self, k: &Subgroup, h: &Subgroup) -> bool {
        let hg = self.small_generating_set(h);
        let kg = self.small_generating_set(k);
        kg.iter()
            .all(|&g| hg.iter().all(|&x| h.contains(self.conj(g, x))))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.normalizes(&self.whole(), h)
    }

    pub fn is_subgroup(&self, s: &Subgroup) -> bool {
        s.contains(0) && {
            let gens = self.small_generating_set_unchecked(s);
            gens.iter()
                .all(|&g| s.iter().all(|x| s.contains(self.mul(x, g))))
        }
    }

    fn small_generating_set_unchecked(&self, s: &Subgroup) -> Vec<usize> {
        // every element: fine for a closure test on small sets
        s.iter().collect()
    }

    pub fn is_abelian_subgroup(&self, h: &Subgroup) -> bool {
        let gens = self.small_generating_set(h);
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn is_cyclic_subgroup(&self, h: &Subgroup) -> bool {
        h.iter().any(|x| self.elem_order(x) == h.order())
    }

    pub fn is_cyclic(&self) -> bool {
        self.is_cyclic_subgroup(&self.whole())
    }

    pub fn exponent(&self) -> usize {
        self.elem_orders.iter().copied().max().unwrap_or(1) as usize
    }

    /// Sorted list of element orders.
    pub fn order_profile(&self) -> Vec<u32> {
        let mut v = self.elem_orders.clone();
        v.sort_unstable();
        v
    }

    /// Elements of `h` of order dividing `p` (a subgroup when `h` is abelian).
    pub fn omega1(&self, h: &Subgroup) -> Subgroup {
        let p = self.prime as usize;
        Subgroup::from_elements(
            self.order,
            h.iter()
                .filter(|&x| self.elem_order(x) == 1 || self.elem_order(x) == p),
        )
    }

    /// The set product `AB`.
    pub fn product_set(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut s = Subgroup::empty(self.order);
        for x in a.iter() {
            for y in b.iter() {
                s.insert(self.mul(x, y));
            }
        }
        s
    }

    /// Orbit of `h` under conjugation.
    pub fn conjugacy_orbit(&self, h: &Subgroup) -> Vec<Subgroup> {
        let mut seen = vec![h.clone()];
        let mut set: std::collections::HashSet<Subgroup> = [h.clone()].into_iter().collect();
        let mut i = 0;
        while i < seen.len() {
            for &g in &self.gens {
                let c = self.conjugate(&seen[i], g);
                if set.insert(c.clone()) {
                    seen.push(c);
                }
            }
            i += 1;
        }
        seen
    }

    /// Canonical representative (minimal key) of the conjugacy class of `h`.
    pub fn canonical(&self, h: &Subgroup) -> Subgroup {
        if self.abelian {
            return h.clone();
        }
        if let Some(lat) = self.lattice.get() {
            if let Some(c) = lat.class_of(h) {
                return lat.classes()[c].rep.clone();
            }
        }
        if let Some(c) = self.canon.lock().expect("canon cache").get(h) {
            return c.clone();
        }
        let orbit = self.conjugacy_orbit(h);
        let rep = orbit.iter().min().expect("nonempty orbit").clone();
        let mut cache = self.canon.lock().expect("canon cache");
        for s in orbit {
            cache.insert(s, rep.clone());
        }
        rep
    }

    pub fn are_conjugate(&self, a: &Subgroup, b: &Subgroup) -> bool {
        a.order() == b.order() && self.canonical(a) == self.canonical(b)
    }

    /// Some `g` with `g a g^-1 = b`.
    pub fn conjugator(&self, a: &Subgroup, b: &Subgroup) -> Option<usize> {
        (0..self.order).find(|&g| &self.conjugate(a, g) == b)
    }

    /// The subgroup lattice, built on first use.
    pub fn lattice(&self) -> Arc<SubgroupLattice> {
        self.lattice
            .get_or_init(|| Arc::new(SubgroupLattice::build(self)))
            .clone()
    }

    pub fn lattice_if_built(&self) -> Option<Arc<SubgroupLattice>> {
        self.lattice.get().cloned()
    }

    pub fn classes(&self) -> Vec<SubgroupClass> {
        self.lattice().classes().to_vec()
    }

    pub fn class_index(&self, h: &Subgroup) -> usize {
        self.lattice()
            .class_of(h)
            .expect("argument is a subgroup of this group")
    }

    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        self.lattice()
            .classes()
            .iter()
            .filter(|c| c.size == 1)
            .map(|c| c.rep.clone())
            .collect()
    }
}

/// Index of `(a, b)` in `A x B` where `|B| = right_order`.
#[inline]
pub fn pair(a: usize, b: usize, right_order: usize) -> usize {
    a * right_order + b
}

#[inline]
pub fn unpair(x: usize, right_order: usize) -> (usize, usize) {
    (x / right_order, x % right_order)
}

type ProductCache = Mutex<HashMap<(u64, u64), Arc<Group>>>;

fn product_cache() -> &'static ProductCache {
    static CACHE: OnceLock<ProductCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `A x B` with `(a, b)` at index `a |B| + b`. A trivial factor returns the
/// other factor itself, which keeps `B(G) = Hom(1, G)` on the same table.
pub fn direct_product(a: &Arc<Group>, b: &Arc<Group>) -> Result<Arc<Group>> {
    direct_product_capped(a, b, product_cap())
}

pub(crate) fn direct_product_capped(
    a: &Arc<Group>,
    b: &Arc<Group>,
    cap: usize,
) -> Result<Arc<Group>> {
    if b.is_trivial() {
        return Ok(a.clone());
    }
    if a.is_trivial() {
        return Ok(b.clone());
    }
    if let Some(g) = product_cache()
        .lock()
        .expect("product cache")
        .get(&(a.id, b.id))
    {
        return Ok(g.clone());
    }
    let n = a.order * b.order;
    check_cap(n, cap)?;
    if a.prime != b.prime {
        return Err(Error::InvalidParameters(format!(
            "{} x {} mixes primes {} and {}",
            a.name, b.name, a.prime, b.prime
        )));
    }
    let (na, nb) = (a.order, b.order);
    let mut table = vec![0u16; n * n];
    for x in 0..n {
        let (x1, x2) = unpair(x, nb);
        for y in 0..n {
            let (y1, y2) = unpair(y, nb);
            table[x * n + y] = pair(a.mul(x1, y1), b.mul(x2, y2), nb) as u16;
        }
    }
    let _ = na;
    let g = Arc::new(Group::from_table(format!("{}x{}", a.name, b.name), table)?);
    product_cache()
        .lock()
        .expect("product cache")
        .insert((a.id, b.id), g.clone());
    Ok(g)
}

/// Embeddings and projections of `A x B` as element maps.
pub struct ProductMaps {
    pub embed_left: Vec<usize>,
    pub embed_right: Vec<usize>,
    pub proj_left: Vec<usize>,
    pub proj_right: Vec<usize>,
}

pub fn product_maps(a: &Group, b: &Group) -> ProductMaps {
    let nb = b.order();
    let n = a.order() * nb;
    ProductMaps {
        embed_left: (0..a.order()).map(|x| pair(x, 0, nb)).collect(),
        embed_right: (0..nb).map(|y| pair(0, y, nb)).collect(),
        proj_left: (0..n).map(|z| unpair(z, nb).0).collect(),
        proj_right: (0..n).map(|z| unpair(z, nb).1).collect(),
    }
}

/// Is `f: G -> H` (given on all elements) a homomorphism?
pub fn is_homomorphism(g: &Group, h: &Group, f: &[usize]) -> bool {
    f.len() == g.order()
        && (0..g.order()).all(|a| (0..g.order()).all(|b| f[g.mul(a, b)] == h.mul(f[a], f[b])))
}
