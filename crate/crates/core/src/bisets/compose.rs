use std::sync::Arc;

use num_bigint::BigInt;

use super::morphism::{hom_group, BisetMorphism};
use crate::burnside::BurnsideElement;
use crate::error::{Error, Result};
use crate::groups::{direct_product, pair, unpair, Group, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    /// Materialize `V x_H U` and decompose it into orbits.
    Orbit,
    /// Double cosets and star products of stabilizers.
    #[default]
    Mackey,
    /// Run both and fail if they differ.
    Both,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s {
            "orbit" => Ok(Method::Orbit),
            "mackey" => Ok(Method::Mackey),
            "both" => Ok(Method::Both),
            _ => Err(Error::InvalidArgument(format!(
                "unknown composition method `{s}`"
            ))),
        }
    }
}

/// `v o u` for `u: G -> H` and `v: H -> K`.
pub fn compose(v: &BisetMorphism, u: &BisetMorphism, method: Method) -> Result<BisetMorphism> {
    if !v.source.same_as(&u.target) {
        return Err(Error::GroupMismatch(format!(
            "cannot compose Hom({}, {}) after Hom({}, {})",
            v.source.name(),
            v.target.name(),
            u.source.name(),
            u.target.name()
        )));
    }
    let (k, h, g) = (&v.target, &v.source, &u.source);
    let kg = hom_group(g, k)?;
    let mut out = BurnsideElement::zero(&kg);
    let vp: Vec<(PreparedBiset, &BigInt)> = v
        .terms()
        .map(|(m, a)| Ok((PreparedBiset::new(k, h, m)?, a)))
        .collect::<Result<_>>()?;
    for (l, b) in u.terms() {
        let up = PreparedBiset::new(h, g, l)?;
        for (vm, a) in &vp {
            let terms = match method {
                Method::Orbit => orbit_terms(vm, &up)?,
                Method::Mackey => mackey_terms(vm, &up)?,
                Method::Both => {
                    let x = orbit_terms(vm, &up)?;
                    let y = mackey_terms(vm, &up)?;
                    if sorted_classes(&kg, x.clone()) != sorted_classes(&kg, y) {
                        return Err(Error::MethodDisagreement(format!(
                            "({} x {})/{:?} o ({} x {})/{l:?}",
                            k.name(),
                            h.name(),
                            vm.stabilizer,
                            h.name(),
                            g.name()
                        )));
                    }
                    x
                }
            };
            let coeff = *a * b;
            for s in terms {
                out.add_term(&s, coeff.clone());
            }
        }
    }
    Ok(BisetMorphism {
        source: g.clone(),
        target: k.clone(),
        element: out,
    })
}

impl BisetMorphism {
    /// `self o u`, by the Mackey method.
    pub fn after(&self, u: &BisetMorphism) -> Result<BisetMorphism> {
        compose(self, u, Method::Mackey)
    }

    /// Applies the morphism to an element of `B(G)`.
    pub fn apply(&self, x: &BurnsideElement) -> Result<BurnsideElement> {
        Ok(self.after(&BisetMorphism::from_burnside(x))?.element)
    }
}

/// A transitive biset `(A x B)/L` with its coset table and the actions of
/// `A x 1` and `1 x B` on it, ready for repeated composition.
pub struct PreparedBiset {
    pub left: Arc<Group>,
    pub right: Arc<Group>,
    pub stabilizer: Subgroup,
    len: usize,
    /// `act_left[a * len + c]` is the coset `(a, 1) c`.
    act_left: Vec<u32>,
    /// `act_right[b * len + c]` is the coset `(1, b) c`.
    act_right: Vec<u32>,
    pairs: Vec<(usize, usize)>,
    /// `fiber[a]` lists the `b` with `(a, b)` in `L`.
    fiber: Vec<Vec<usize>>,
    p1: Subgroup,
    p2: Subgroup,
    /// Orbits of `A x 1`: one representative coset per orbit, and for each
    /// coset `c` its orbit and some `a` with `(a, 1) rep = c`.
    left_reps: Vec<usize>,
    left_orbit: Vec<u32>,
    left_transversal: Vec<u32>,
    /// Generators of the stabilizer in `A` of each representative.
    left_stab: Vec<Vec<usize>>,
}

impl PreparedBiset {
    pub fn new(left: &Arc<Group>, right: &Arc<Group>, l: &Subgroup) -> Result<PreparedBiset> {
        let ab = direct_product(left, right)?;
        if !ab.is_subgroup(l) {
            return Err(Error::InvalidArgument(format!(
                "{l:?} is not a subgroup of {} x {}",
                left.name(),
                right.name()
            )));
        }
        let (na, nb) = (left.order(), right.order());
        let mut of = vec![u32::MAX; ab.order()];
        let mut reps = Vec::new();
        for x in 0..ab.order() {
            if of[x] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for y in l.iter() {
                of[ab.mul(x, y)] = c;
            }
        }
        let len = reps.len();
        let table = |z: &dyn Fn(usize) -> usize, count: usize| -> Vec<u32> {
            let mut t = Vec::with_capacity(count * len);
            for e in 0..count {
                let e = z(e);
                t.extend(reps.iter().map(|&r| of[ab.mul(e, r)]));
            }
            t
        };
        let act_left = table(&|a| pair(a, 0, nb), na);
        let act_right = table(&|b| pair(0, b, nb), nb);
        let mut fiber = vec![Vec::new(); na];
        let mut pairs = Vec::with_capacity(l.order());
        let (mut p1, mut p2) = (Subgroup::empty(na), Subgroup::empty(nb));
        for z in l.iter() {
            let (a, b) = unpair(z, nb);
            fiber[a].push(b);
            pairs.push((a, b));
            p1.insert(a);
            p2.insert(b);
        }
        let mut left_orbit = vec![u32::MAX; len];
        let mut left_transversal = vec![0u32; len];
        let (mut left_reps, mut left_stab) = (Vec::new(), Vec::new());
        for c in 0..len {
            if left_orbit[c] != u32::MAX {
                continue;
            }
            let r = left_reps.len() as u32;
            left_reps.push(c);
            let mut stab = Subgroup::empty(na);
            for a in 0..na {
                let d = act_left[a * len + c] as usize;
                if left_orbit[d] == u32::MAX {
                    left_orbit[d] = r;
                    left_transversal[d] = a as u32;
                }
                if d == c {
                    stab.insert(a);
                }
            }
            left_stab.push(left.small_generating_set(&stab));
        }
        Ok(PreparedBiset {
            left: left.clone(),
            right: right.clone(),
            stabilizer: l.clone(),
            len,
            act_left,
            act_right,
            pairs,
            fiber,
            p1,
            p2,
            left_reps,
            left_orbit,
            left_transversal,
            left_stab,
        })
    }

    /// Number of elements of the biset.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    fn on_left(&self, a: usize, c: usize) -> usize {
        self.act_left[a * self.len + c] as usize
    }

    #[inline]
    fn on_right(&self, b: usize, c: usize) -> usize {
        self.act_right[b * self.len + c] as usize
    }
}

fn check_middle(v: &PreparedBiset, u: &PreparedBiset) -> Result<()> {
    if v.right.same_as(&u.left) {
        Ok(())
    } else {
        Err(Error::GroupMismatch(format!(
            "middle groups {} and {} differ",
            v.right.name(),
            u.left.name()
        )))
    }
}

#[derive(Default)]
struct Scratch {
    state_of: Vec<u32>,
    states: Vec<(usize, usize)>,
    done: Vec<bool>,
    queue: Vec<usize>,
    k_image: Vec<u32>,
}

thread_local! {
    static SCRATCH: std::cell::RefCell<Scratch> = std::cell::RefCell::new(Scratch::default());
}

/// Point stabilizers in `K x G`, one per orbit of `V x_H U`, computed by
/// materializing the product and splitting it into orbits.
///
/// Elements of `V x_H U` are listed as `[a, b0]` with `b0` running over
/// representatives of the `H`-orbits on `U` and `a` over the orbits of
/// `Stab_H(b0)` on `V`, using `[a, y b0] = [a y, b0]`.
pub fn orbit_terms(v: &PreparedBiset, u: &PreparedBiset) -> Result<Vec<Subgroup>> {
    check_middle(v, u)?;
    let (k, h, g) = (&v.left, &v.right, &u.right);
    let nv = v.len;
    SCRATCH.with(|cell| {
        let mut scratch = cell.borrow_mut();
        let Scratch {
            state_of,
            states,
            done,
            queue,
            k_image,
        } = &mut *scratch;
        state_of.clear();
        state_of.resize(u.left_reps.len() * nv, u32::MAX);
        states.clear();
        for (ri, stab) in u.left_stab.iter().enumerate() {
            for a in 0..nv {
                if state_of[ri * nv + a] != u32::MAX {
                    continue;
                }
                let id = states.len() as u32;
                states.push((ri, a));
                state_of[ri * nv + a] = id;
                queue.clear();
                queue.push(a);
                while let Some(x) = queue.pop() {
                    for &y in stab {
                        // [x, b0] = [x, y b0] = [x y, b0]
                        let z = v.on_right(h.inv(y), x);
                        if state_of[ri * nv + z] == u32::MAX {
                            state_of[ri * nv + z] = id;
                            queue.push(z);
                        }
                    }
                }
            }
        }
        let (state_of, states) = (&*state_of, &*states);
        // (k, g) . [a, b0] = [(k, 1) a, (1, g) b0] = [(k, 1) a y, b1] where (1, g) b0 = y b1
        let ng = g.order();
        let n = states.len();
        done.clear();
        done.resize(n, false);
        let mut out = Vec::new();
        for start in 0..n {
            if done[start] {
                continue;
            }
            // one pass over K x G yields both the orbit and the stabilizer
            let (ri, a) = states[start];
            let b0 = u.left_reps[ri];
            let mut stab = Subgroup::empty(k.order() * ng);
            k_image.clear();
            k_image.extend((0..k.order()).map(|kk| v.on_left(kk, a) as u32));
            for gg in 0..ng {
                let c = u.on_right(gg, b0);
                let row = &v.act_right[h.inv(u.left_transversal[c] as usize) * nv..][..nv];
                let base = &state_of[u.left_orbit[c] as usize * nv..][..nv];
                for (kk, &a1) in k_image.iter().enumerate() {
                    let d = base[row[a1 as usize] as usize] as usize;
                    done[d] = true;
                    if d == start {
                        stab.insert(pair(kk, gg, ng));
                    }
                }
            }
            out.push(stab);
        }
        Ok(out)
    })
}

/// `M * (t,1)L` for `t` running over `p2(M)\H/p1(L)`.
pub fn mackey_terms(v: &PreparedBiset, u: &PreparedBiset) -> Result<Vec<Subgroup>> {
    check_middle(v, u)?;
    let (k, h, g) = (&v.left, &v.right, &u.right);
    let ng = g.order();
    let mut covered = vec![false; h.order()];
    let mut out = Vec::new();
    for t in 0..h.order() {
        if covered[t] {
            continue;
        }
        for a in v.p2.iter() {
            let at = h.mul(a, t);
            for b in u.p1.iter() {
                covered[h.mul(at, b)] = true;
            }
        }
        let ti = h.inv(t);
        let mut star = Subgroup::empty(k.order() * ng);
        for &(a, y) in &v.pairs {
            // (y, x) in (t,1)L  <=>  (t^-1 y t, x) in L
            for &x in &u.fiber[h.mul(h.mul(ti, y), t)] {
                star.insert(pair(a, x, ng));
            }
        }
        out.push(star);
    }
    Ok(out)
}

/// Outcome of comparing the two composition routes on every pair of
/// transitive bisets `(G x H)/M` and `(H x G)/L`.
#[derive(Clone, Debug, Default)]
pub struct RefereeReport {
    pub pairs: usize,
    /// Class indices `(M, L)` in the lattices of `G x H` and `H x G` where
    /// the routes differ.
    pub disagreements: Vec<(usize, usize)>,
}

fn sorted_classes(kg: &Group, terms: Vec<Subgroup>) -> Vec<Subgroup> {
    let mut out = terms;
    if !kg.is_abelian() {
        for s in out.iter_mut() {
            *s = kg.canonical(s);
        }
    }
    out.sort_unstable();
    out
}

/// Runs both routes on all transitive `(G, H)`- and `(H, G)`-biset pairs.
pub fn referee_pair(g: &Arc<Group>, h: &Arc<Group>) -> Result<RefereeReport> {
    let us = prepared_classes(h, g)?;
    let vs = prepared_classes(g, h)?;
    let kg = direct_product(g, g)?;
    referee_prepared(&kg, &vs, &us, |_, _| true)
}

/// Prepared transitive `(A, B)`-bisets, one per subgroup class of `A x B`.
pub fn prepared_classes(a: &Arc<Group>, b: &Arc<Group>) -> Result<Vec<PreparedBiset>> {
    let ab = direct_product(a, b)?;
    ab.lattice()
        .classes()
        .iter()
        .map(|c| PreparedBiset::new(a, b, &c.rep))
        .collect()
}

/// Compares the routes on the pairs `(vs[i], us[j])` selected by `keep`.
pub fn referee_prepared(
    kg: &Group,
    vs: &[PreparedBiset],
    us: &[PreparedBiset],
    mut keep: impl FnMut(usize, usize) -> bool,
) -> Result<RefereeReport> {
    let mut report = RefereeReport::default();
    for (i, v) in vs.iter().enumerate() {
        for (j, u) in us.iter().enumerate() {
            if !keep(i, j) {
                continue;
            }
            report.pairs += 1;
            let a = sorted_classes(kg, orbit_terms(v, u)?);
            let b = sorted_classes(kg, mackey_terms(v, u)?);
            if a != b {
                report.disagreements.push((i, j));
            }
        }
    }
    Ok(report)
}
